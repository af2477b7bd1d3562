//! JSON file formats and certificate documents.
//!
//! Exact values are canonical strings (`"-3/2"`, `"1/2*sqrt(6)"`); every scalar
//! in a certificate also carries an advisory 17-significant-digit float.
//! Object keys are emitted in sorted order so output is byte-stable.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::discretize::{
    Gram, GridHit, Infeasibility, LowerBoundCertificate, MinCertificate, ReduceReport, Refinement, Rule, Subspace,
    SumConstraint, VerifyReport, MERGE_JUSTIFICATION,
};
use crate::error::{Error, Result};
use crate::exactnum::{fmt_rat, parse_rat, Radical};
use crate::piecewise::{Piece, PieceForm, PiecewiseFn, Poly};

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct SubspaceDoc {
    pub domain: [String; 2],
    pub functions: Vec<FunctionDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub flags: Vec<String>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct FunctionDoc {
    pub name: String,
    pub pieces: Vec<PieceDoc>,
}

/// `poly` holds ascending coefficients; `sqrt` multiplies by `√(alpha·x + beta)`.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct PieceDoc {
    pub lo: String,
    pub hi: String,
    pub poly: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sqrt: Option<SqrtDoc>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct SqrtDoc {
    pub alpha: String,
    pub beta: String,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct RuleDoc {
    pub nodes: Vec<String>,
    pub weights: Vec<String>,
}

fn poly_strings(p: &Poly) -> Vec<String> {
    if p.is_zero() {
        return vec!["0".to_string()];
    }
    p.coeffs().iter().map(fmt_rat).collect()
}

fn parse_poly(cs: &[String]) -> Result<Poly> {
    Ok(Poly::new(cs.iter().map(|c| parse_rat(c)).collect::<Result<_>>()?))
}

pub fn function_doc(name: &str, f: &PiecewiseFn) -> FunctionDoc {
    let pieces = f
        .pieces()
        .iter()
        .map(|p| {
            let (poly, sqrt) = match &p.form {
                PieceForm::Poly(q) => (q, None),
                PieceForm::SqrtAffine { poly, alpha, beta } => {
                    (poly, Some(SqrtDoc { alpha: fmt_rat(alpha), beta: fmt_rat(beta) }))
                }
            };
            PieceDoc { lo: fmt_rat(&p.lo), hi: fmt_rat(&p.hi), poly: poly_strings(poly), sqrt }
        })
        .collect();
    FunctionDoc { name: name.to_string(), pieces }
}

pub fn subspace_doc(s: &Subspace) -> SubspaceDoc {
    let (lo, hi) = s.domain();
    SubspaceDoc {
        domain: [fmt_rat(lo), fmt_rat(hi)],
        functions: s.basis().iter().map(|f| function_doc(&f.name, &f.func)).collect(),
        flags: s.flags().to_vec(),
    }
}

pub fn subspace_from_doc(doc: &SubspaceDoc) -> Result<Subspace> {
    let lo = parse_rat(&doc.domain[0])?;
    let hi = parse_rat(&doc.domain[1])?;
    let mut items = Vec::with_capacity(doc.functions.len());
    for f in &doc.functions {
        let pieces = f
            .pieces
            .iter()
            .map(|p| {
                let poly = parse_poly(&p.poly)?;
                let form = match &p.sqrt {
                    None => PieceForm::Poly(poly),
                    Some(s) => PieceForm::SqrtAffine { poly, alpha: parse_rat(&s.alpha)?, beta: parse_rat(&s.beta)? }
                        .canonical()?,
                };
                Piece::new(parse_rat(&p.lo)?, parse_rat(&p.hi)?, form)
            })
            .collect::<Result<Vec<_>>>()?;
        let func = PiecewiseFn::new(pieces)?;
        if func.domain() != (&lo, &hi) {
            return Err(Error::Parse(format!("function {} does not span the declared domain", f.name)));
        }
        items.push((f.name.clone(), func));
    }
    let mut s = Subspace::from_named(items)?;
    for flag in &doc.flags {
        s = s.with_flag(flag.clone());
    }
    Ok(s)
}

pub fn subspace_to_json(s: &Subspace) -> String {
    pretty(&serde_json::to_value(subspace_doc(s)).expect("plain data"))
}

pub fn subspace_from_json(text: &str) -> Result<Subspace> {
    let doc: SubspaceDoc = serde_json::from_str(text).map_err(|e| Error::Parse(format!("subspace: {e}")))?;
    subspace_from_doc(&doc)
}

pub fn rule_doc(r: &Rule) -> RuleDoc {
    RuleDoc {
        nodes: r.nodes().iter().map(fmt_rat).collect(),
        weights: r.weights().iter().map(Radical::render).collect(),
    }
}

pub fn rule_to_json(r: &Rule) -> String {
    pretty(&serde_json::to_value(rule_doc(r)).expect("plain data"))
}

pub fn rule_from_json(text: &str) -> Result<Rule> {
    let doc: RuleDoc = serde_json::from_str(text).map_err(|e| Error::Parse(format!("rule: {e}")))?;
    Rule::new(
        doc.nodes.iter().map(|s| parse_rat(s)).collect::<Result<_>>()?,
        doc.weights.iter().map(|s| Radical::parse(s)).collect::<Result<_>>()?,
    )
}

/// Pretty JSON with a trailing newline.
pub fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("plain data");
    s.push('\n');
    s
}

pub fn scalar(r: &Radical) -> Value {
    json!({ "exact": r.render(), "float": r.float_string() })
}

fn exact_list(v: &[Radical]) -> Value {
    Value::from(v.iter().map(Radical::render).collect::<Vec<_>>())
}

fn rule_value(r: &Rule) -> Value {
    json!({
        "nodes": r.nodes().iter().map(fmt_rat).collect::<Vec<_>>(),
        "weights": r.weights().iter().map(scalar).collect::<Vec<_>>(),
    })
}

fn pair_names(s: &Subspace, (i, j): (usize, usize)) -> Value {
    json!([s.name(i), s.name(j)])
}

pub fn verify_json(s: &Subspace, rep: &VerifyReport) -> Value {
    json!({
        "kind": "verify",
        "pass": rep.pass,
        "flags": rep.flags,
        "failing": rep.failing.iter().map(|&p| pair_names(s, p)).collect::<Vec<_>>(),
        "pairs": rep.residuals.iter().map(|p| json!({
            "pair": pair_names(s, p.pair),
            "lhs": scalar(&p.lhs),
            "target": scalar(&p.target),
            "residual": scalar(&p.residual),
        })).collect::<Vec<_>>(),
    })
}

pub fn gram_json(s: &Subspace, g: &Gram) -> Value {
    json!({
        "kind": "gram",
        "names": s.basis().iter().map(|f| f.name.clone()).collect::<Vec<_>>(),
        "rank": g.rank,
        "matrix": g.matrix.iter().map(|row| row.iter().map(scalar).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "flags": s.flags(),
    })
}

fn reason_value(s: &Subspace, reason: &Infeasibility) -> Value {
    match reason {
        Infeasibility::RankDeficient { nodes, gram_rank } => json!({
            "kind": reason.tag(), "nodes": nodes, "gram_rank": gram_rank,
        }),
        Infeasibility::Inconsistent { pair, certificate } => json!({
            "kind": reason.tag(), "pair": pair_names(s, *pair), "certificate": exact_list(certificate),
        }),
        Infeasibility::PositivityInfeasible { certificate, combination } => json!({
            "kind": reason.tag(), "certificate": exact_list(certificate), "combination": exact_list(combination),
        }),
    }
}

pub fn min_json(s: &Subspace, c: &MinCertificate) -> Value {
    json!({
        "kind": "min",
        "mode": c.mode.as_str(),
        "m_min": c.m_min,
        "gram_rank": c.gram_rank,
        "justification": MERGE_JUSTIFICATION,
        "flags": c.flags,
        "witness": rule_value(&c.witness),
        "witness_pattern": c.witness_pattern,
        "fallback": rule_value(&c.fallback),
        "classes": c.classes.iter().enumerate().map(|(k, cl)| json!({
            "index": k,
            "representative": fmt_rat(&cl.representative),
            "measure": fmt_rat(&cl.measure),
            "regions": cl.regions.iter().map(|(a, b)| [fmt_rat(a), fmt_rat(b)]).collect::<Vec<_>>(),
            "moments": exact_list(&cl.moments.0),
        })).collect::<Vec<_>>(),
        "exhaustion": c.exhaustion.iter().map(|lvl| json!({
            "m": lvl.m,
            "count": lvl.count,
            "patterns": lvl.patterns.iter().map(|p| json!({
                "pattern": p.pattern,
                "reason": reason_value(s, &p.reason),
            })).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
    })
}

fn sum_value(s: &Subspace, c: &SumConstraint) -> Value {
    json!({
        "function": s.name(c.function),
        "norm_sq": scalar(&c.norm_sq),
        "square_on_region": scalar(&c.square),
        "forced_sum": scalar(&c.forced_sum),
    })
}

pub fn lower_bound_json(s: &Subspace, c: &LowerBoundCertificate, refinement: Option<&Refinement>) -> Value {
    let refined = refinement.map(|r| match r {
        Refinement::Improved { bound, first, second } => json!({
            "status": "improved",
            "bound": bound,
            "first": sum_value(s, first),
            "second": sum_value(s, second),
        }),
        Refinement::NotApplicable { reason } => json!({ "status": "not-applicable", "reason": reason }),
    });
    json!({
        "kind": "lowerbound",
        "witness": s.name(c.witness),
        "bound": c.bound,
        "final_bound": refinement.and_then(Refinement::improved_bound).unwrap_or(c.bound),
        "region": c.region.to_string(),
        "flags": c.flags,
        "targets": c.targets.iter().map(|t| json!({
            "name": s.name(t.target),
            "support": t.support.to_string(),
            "isolated_zeros": t.support.isolated_zeros.iter().map(fmt_rat).collect::<Vec<_>>(),
            "norm_sq": scalar(&t.norm_sq),
            "cross": scalar(&t.cross),
            "witness_nonvanishing": t.witness_nonvanishing,
            "min_nodes": t.min_nodes,
            "reason": t.reason,
        })).collect::<Vec<_>>(),
        "refinement": refined,
    })
}

pub fn reduce_json(c: &ReduceReport) -> Value {
    json!({
        "kind": "reduce",
        "mode": c.mode.as_str(),
        "input_nodes": c.input_nodes,
        "output_nodes": c.rule.len(),
        "rank": c.rank,
        "flags": c.flags,
        "rule": rule_value(&c.rule),
        "steps": c.steps.iter().map(|st| json!({
            "direction": exact_list(&st.direction),
            "step": scalar(&st.step),
            "dropped": st.dropped.iter().map(fmt_rat).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
    })
}

pub fn grid_json(s: &Subspace, m: usize, hits: &[GridHit], excluded: &[(usize, usize)]) -> Value {
    json!({
        "kind": "grid",
        "m": m,
        "excluded_pairs": excluded.iter().map(|&p| pair_names(s, p)).collect::<Vec<_>>(),
        "flags": s.flags(),
        "rules": hits.iter().map(|h| json!({
            "rule": rule_value(&h.rule),
            "null_basis": h.null_basis.iter().map(|v| exact_list(v)).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
    })
}
