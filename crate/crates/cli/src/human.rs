//! Plain-text reports.

use std::fmt::Write;

use disq_core::discretize::{
    GridHit, Gram, Infeasibility, LowerBoundCertificate, MinCertificate, ReduceReport, Refinement, Rule, Subspace,
    VerifyReport,
};
use disq_core::exactnum::{fmt_rat, Radical};

fn val(r: &Radical) -> String {
    if r.is_rational() {
        r.render()
    } else {
        format!("{} (≈ {})", r.render(), r.float_string())
    }
}

fn pair(s: &Subspace, (i, j): (usize, usize)) -> String {
    format!("({},{})", s.name(i), s.name(j))
}

fn rule_lines(out: &mut String, r: &Rule) {
    for (x, w) in r.nodes().iter().zip(r.weights()) {
        let _ = writeln!(out, "  node {:>10}  weight {}", fmt_rat(x), val(w));
    }
}

fn flags(out: &mut String, flags: &[String]) {
    if !flags.is_empty() {
        let _ = writeln!(out, "flags: {}", flags.join(", "));
    }
}

pub fn verify(s: &Subspace, rep: &VerifyReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "verify: {}", if rep.pass { "PASS" } else { "FAIL" });
    flags(&mut out, &rep.flags);
    for p in &rep.residuals {
        let _ = writeln!(
            out,
            "  {:<10} sum {}  integral {}  residual {}",
            pair(s, p.pair),
            val(&p.lhs),
            val(&p.target),
            val(&p.residual)
        );
    }
    if !rep.failing.is_empty() {
        let names: Vec<_> = rep.failing.iter().map(|&p| pair(s, p)).collect();
        let _ = writeln!(out, "failing pairs: {}", names.join(" "));
    }
    out
}

pub fn gram(s: &Subspace, g: &Gram) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "gram matrix (rank {}):", g.rank);
    flags(&mut out, s.flags());
    for (i, row) in g.matrix.iter().enumerate() {
        let cells: Vec<_> = row.iter().map(Radical::render).collect();
        let _ = writeln!(out, "  {:<6} [{}]", s.name(i), cells.join(", "));
    }
    out
}

pub fn min(s: &Subspace, c: &MinCertificate) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "minimal node count ({}): {}", c.mode, c.m_min);
    flags(&mut out, &c.flags);
    let _ = writeln!(out, "gram rank {}, {} region classes", c.gram_rank, c.classes.len());
    for (k, cl) in c.classes.iter().enumerate() {
        let regions: Vec<_> = cl
            .regions
            .iter()
            .map(|(a, b)| {
                let close = if b == s.domain().1 { "]" } else { ")" };
                format!("[{}, {}{close}", fmt_rat(a), fmt_rat(b))
            })
            .collect();
        let _ = writeln!(
            out,
            "  class {k}: representative {}, measure {}, {}",
            fmt_rat(&cl.representative),
            fmt_rat(&cl.measure),
            regions.join(" ")
        );
    }
    let _ = writeln!(out, "witness (classes {:?}):", c.witness_pattern);
    rule_lines(&mut out, &c.witness);
    for lvl in &c.exhaustion {
        let _ = writeln!(out, "m = {}: {} patterns, none feasible", lvl.m, lvl.count);
        for p in &lvl.patterns {
            let _ = writeln!(out, "  {:?} {}", p.pattern, reason(s, &p.reason));
        }
    }
    out
}

fn reason(s: &Subspace, r: &Infeasibility) -> String {
    match r {
        Infeasibility::RankDeficient { nodes, gram_rank } => {
            format!("rank-deficient: {nodes} node(s) below gram rank {gram_rank}")
        }
        Infeasibility::Inconsistent { pair: p, .. } => format!("inconsistent at pair {}", pair(s, *p)),
        Infeasibility::PositivityInfeasible { combination, .. } => {
            let w: Vec<_> = combination.iter().map(Radical::render).collect();
            format!("positivity-infeasible: nonnegative combination [{}] of the weights is fixed at a nonpositive value", w.join(", "))
        }
    }
}

pub fn grid(s: &Subspace, m: usize, hits: &[GridHit], excluded: &[(usize, usize)]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "grid search, m = {m}: {} rule(s)", hits.len());
    flags(&mut out, s.flags());
    if !excluded.is_empty() {
        let names: Vec<_> = excluded.iter().map(|&p| pair(s, p)).collect();
        let _ = writeln!(out, "excluded pairs: {}", names.join(" "));
    }
    for (k, h) in hits.iter().enumerate() {
        let _ = writeln!(out, "rule {k} ({} free direction(s)):", h.null_basis.len());
        rule_lines(&mut out, &h.rule);
    }
    out
}

pub fn reduce(rep: &ReduceReport) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "reduced {} -> {} nodes ({}), {} step(s)",
        rep.input_nodes,
        rep.rule.len(),
        rep.mode,
        rep.steps.len()
    );
    flags(&mut out, &rep.flags);
    rule_lines(&mut out, &rep.rule);
    out
}

pub fn bound(s: &Subspace, c: &LowerBoundCertificate, refinement: Option<&Refinement>) -> String {
    let mut out = String::new();
    let final_bound = refinement.and_then(Refinement::improved_bound).unwrap_or(c.bound);
    let _ = writeln!(out, "lower bound: {final_bound}");
    flags(&mut out, &c.flags);
    let _ = writeln!(out, "support bound {} with witness {}", c.bound, s.name(c.witness));
    for t in &c.targets {
        let _ = writeln!(out, "  {}: {} node(s) on {}; {}", s.name(t.target), t.min_nodes, t.support, t.reason);
    }
    match refinement {
        Some(Refinement::Improved { bound, first, second }) => {
            let _ = writeln!(
                out,
                "refined to {bound}: the {} equation forces total weight {} but the {} equation forces {}",
                s.name(first.function),
                first.forced_sum.render(),
                s.name(second.function),
                second.forced_sum.render()
            );
        }
        Some(Refinement::NotApplicable { reason }) => {
            let _ = writeln!(out, "refinement not applicable: {reason}");
        }
        None => {}
    }
    out
}
