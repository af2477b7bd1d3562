//! Exact constructions of the two reference subspaces and their rules.
//!
//! `ex1`: two piecewise-constant functions on `[-1, 1]` where the minimal exact
//! rule has three nodes and one of its weights can be forced negative.
//! `ex2`: eight continuous functions in four levels built from trapezoidal waves.

use num_traits::{One, Signed, Zero};

use crate::discretize::{Rule, Subspace};
use crate::error::{Error, Result};
use crate::exactnum::{int, rat, Radical, Rat};
use crate::piecewise::{Piece, PieceForm, PiecewiseFn, Poly};

/// Stamped into every subspace built from parameters that skip the strict check.
pub const OUTSIDE_RANGE_FLAG: &str = "params-outside-paper";

pub const SUBSPACE_NAMES: [&str; 2] = ["ex1", "ex2"];
pub const GOLDEN_NAMES: [&str; 3] = ["ex1-negative", "ex1-positive", "ex2-nine"];

/// Step heights of `f2`: `a` on the left half, `±A` then `±B` on the right.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Example1Params {
    pub a: Rat,
    pub big_a: Rat,
    pub big_b: Rat,
    outside: bool,
}

impl Example1Params {
    /// Requires `a > 0`, `A > B > 0` and `A² > 2a² + B²`.
    pub fn new(a: Rat, big_a: Rat, big_b: Rat) -> Result<Self> {
        if !a.is_positive() {
            return Err(Error::InvalidParams(format!("a = {a} must be positive")));
        }
        if !(big_b.is_positive() && big_a > big_b) {
            return Err(Error::InvalidParams(format!("need A > B > 0, got A = {big_a}, B = {big_b}")));
        }
        if &big_a * &big_a <= int(2) * &a * &a + &big_b * &big_b {
            return Err(Error::InvalidParams(format!(
                "need A² > 2a² + B², got a = {a}, A = {big_a}, B = {big_b}"
            )));
        }
        Ok(Example1Params { a, big_a, big_b, outside: false })
    }

    /// Skips every check; subspaces built from the result carry [`OUTSIDE_RANGE_FLAG`].
    pub fn unchecked(a: Rat, big_a: Rat, big_b: Rat) -> Self {
        let outside = Example1Params::new(a.clone(), big_a.clone(), big_b.clone()).is_err();
        Example1Params { a, big_a, big_b, outside }
    }

    pub fn is_flagged_outside(&self) -> bool {
        self.outside
    }

    fn a_sq(&self) -> Rat {
        &self.a * &self.a
    }
}

impl Default for Example1Params {
    fn default() -> Self {
        Example1Params::new(int(1), int(3), int(2)).expect("defaults satisfy the strict inequality")
    }
}

fn consts(breaks: &[Rat], values: &[Rat]) -> Result<PiecewiseFn> {
    PiecewiseFn::from_breaks(breaks, values.iter().cloned().map(PieceForm::constant).collect())
}

pub fn build_f1() -> PiecewiseFn {
    consts(&[int(-1), int(0), int(1)], &[int(0), int(1)]).expect("valid pieces")
}

pub fn build_f2(p: &Example1Params) -> PiecewiseFn {
    let breaks = [int(-1), int(0), rat(1, 4), rat(1, 2), rat(3, 4), int(1)];
    let values = [p.a.clone(), p.big_a.clone(), -&p.big_a, p.big_b.clone(), -&p.big_b];
    consts(&breaks, &values).expect("valid pieces")
}

pub fn build_x2(p: &Example1Params) -> Subspace {
    let s = Subspace::from_named(vec![("f1", build_f1()), ("f2", build_f2(p))]).expect("common domain");
    if p.outside {
        s.with_flag(OUTSIDE_RANGE_FLAG)
    } else {
        s
    }
}

/// Support interval `[a, b]` of a trapezoidal wave.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GSpec {
    pub a: Rat,
    pub b: Rat,
}

impl GSpec {
    pub fn new(a: Rat, b: Rat) -> Result<Self> {
        if a < int(-1) || b > int(1) || a >= b {
            return Err(Error::InvalidParams(format!("need -1 ≤ a < b ≤ 1, got [{a}, {b}]")));
        }
        Ok(GSpec { a, b })
    }

    pub fn l(&self) -> Rat {
        (&self.b - &self.a) / int(8)
    }

    /// Pieces on `[a, b]`, each multiplied by `√d` (`d = 1` for none).
    fn segments(&self, d: i64) -> Result<Vec<(Rat, Rat, PieceForm)>> {
        let (a, l) = (&self.a, self.l());
        let at = |k: i64| a + &l * int(k);
        let inv = Rat::one() / &l;
        let polys = [
            Poly::linear(inv.clone(), -a / &l),
            Poly::constant(int(1)),
            Poly::linear(-&inv, (a + &l * int(4)) / &l),
            Poly::constant(int(-1)),
            Poly::linear(inv, -&self.b / &l),
        ];
        let cuts = [at(0), at(1), at(3), at(5), at(7), self.b.clone()];
        polys
            .into_iter()
            .enumerate()
            .map(|(k, p)| {
                let form = if d == 1 {
                    PieceForm::Poly(p)
                } else {
                    PieceForm::SqrtAffine { poly: p, alpha: Rat::zero(), beta: int(d) }.canonical()?
                };
                Ok((cuts[k].clone(), cuts[k + 1].clone(), form))
            })
            .collect()
    }
}

/// Sorted, non-overlapping segments padded with zero pieces to cover `[-1, 1]`.
fn assemble(mut segments: Vec<(Rat, Rat, PieceForm)>) -> Result<PiecewiseFn> {
    segments.sort_by(|x, y| x.0.cmp(&y.0));
    let mut pieces = Vec::new();
    let mut cur = int(-1);
    for (lo, hi, form) in segments {
        if lo > cur {
            pieces.push(Piece::new(cur.clone(), lo.clone(), PieceForm::zero())?);
        }
        cur = hi.clone();
        pieces.push(Piece::new(lo, hi, form)?);
    }
    if cur < int(1) {
        pieces.push(Piece::new(cur, int(1), PieceForm::zero())?);
    }
    Ok(PiecewiseFn::new(pieces)?.simplify())
}

pub fn build_g(spec: &GSpec) -> Result<PiecewiseFn> {
    assemble(spec.segments(1)?)
}

fn wave_pair(a: Rat, mid: Rat, b: Rat, d: i64) -> Result<PiecewiseFn> {
    let mut segs = GSpec::new(a, mid.clone())?.segments(1)?;
    segs.extend(GSpec::new(mid, b)?.segments(d)?);
    assemble(segs)
}

/// `h0 … h7`. Indices above 7 are rejected.
pub fn build_h(i: usize) -> Result<PiecewiseFn> {
    let root = |alpha: i64, beta: i64| PieceForm::SqrtAffine {
        poly: Poly::constant(int(1)),
        alpha: int(alpha),
        beta: int(beta),
    };
    match i {
        0 => assemble(vec![
            (int(0), rat(1, 16), root(24, 0)),
            (rat(1, 16), rat(1, 8), root(-8, 2)),
            (rat(1, 8), int(1), PieceForm::constant(int(1))),
        ]),
        1 => {
            let mut segs = vec![(int(-1), int(0), PieceForm::Poly(Poly::linear(rat(-1, 2), int(0))))];
            segs.extend(GSpec::new(int(0), int(1))?.segments(1)?);
            assemble(segs)
        }
        2 => wave_pair(rat(1, 8), rat(1, 4), rat(3, 8), 5),
        3 => wave_pair(rat(5, 8), rat(3, 4), rat(7, 8), 5),
        4 => wave_pair(rat(9, 64), rat(5, 32), rat(11, 64), 23),
        5 => wave_pair(rat(13, 64), rat(7, 32), rat(15, 64), 23),
        6 => wave_pair(rat(41, 64), rat(21, 32), rat(43, 64), 23),
        7 => wave_pair(rat(45, 64), rat(23, 32), rat(47, 64), 23),
        _ => Err(Error::InvalidParams(format!("no function h{i}"))),
    }
}

pub fn build_x8() -> Subspace {
    let items = (0..8)
        .map(|i| (format!("h{i}"), build_h(i).expect("fixed construction")))
        .collect();
    Subspace::from_named(items).expect("common domain")
}

/// Named corpus subspace at default parameters.
pub fn subspace(name: &str) -> Option<Subspace> {
    match name {
        "ex1" => Some(build_x2(&Example1Params::default())),
        "ex2" => Some(build_x8()),
        _ => None,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoldenRule {
    pub name: &'static str,
    pub subspace: &'static str,
    pub rule: Rule,
}

fn rule_of(nodes: Vec<Rat>, weights: Vec<Rat>) -> Rule {
    Rule::new(nodes, weights.into_iter().map(Radical::from_rat).collect()).expect("distinct nodes")
}

/// The three reference rules, `ex1` weights from the closed forms at `p`.
pub fn golden_rules(p: &Example1Params) -> Vec<GoldenRule> {
    let two_a_sq = int(2) * p.a_sq();
    let a2 = &p.big_a * &p.big_a;
    let b2 = &p.big_b * &p.big_b;
    let neg = (&two_a_sq - &a2 + &b2) / &two_a_sq;
    let pos = (&two_a_sq + &a2 - &b2) / &two_a_sq;
    let half = rat(1, 2);
    let mut nine_nodes = vec![rat(-1, 2)];
    nine_nodes.extend([37, 39, 53, 55, 165, 167, 181, 183].iter().map(|&k| rat(k, 256)));
    let mut nine_weights = vec![int(-4)];
    nine_weights.extend(std::iter::repeat_n(rat(1, 8), 8));
    vec![
        GoldenRule {
            name: "ex1-negative",
            subspace: "ex1",
            rule: rule_of(vec![rat(-1, 2), rat(1, 8), rat(3, 8)], vec![neg, half.clone(), half.clone()]),
        },
        GoldenRule {
            name: "ex1-positive",
            subspace: "ex1",
            rule: rule_of(vec![rat(-1, 2), rat(5, 8), rat(7, 8)], vec![pos, half.clone(), half]),
        },
        GoldenRule { name: "ex2-nine", subspace: "ex2", rule: rule_of(nine_nodes, nine_weights) },
    ]
}

pub fn golden_rule(name: &str) -> Option<GoldenRule> {
    golden_rules(&Example1Params::default()).into_iter().find(|g| g.name == name)
}

/// One node per constancy region of `X2`, weighted by the region's length.
pub fn x2_measure_rule() -> Rule {
    rule_of(
        vec![rat(-1, 2), rat(1, 8), rat(3, 8), rat(5, 8), rat(7, 8)],
        vec![int(1), rat(1, 4), rat(1, 4), rat(1, 4), rat(1, 4)],
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Radical {
        Radical::from_rat(rat(n, d))
    }

    #[test]
    fn params_enforce_strict_inequality() {
        assert!(Example1Params::new(int(1), int(3), int(2)).is_ok());
        // 9 = 8 + 1 is not strictly larger
        assert!(Example1Params::new(int(2), int(3), int(1)).is_err());
        assert!(Example1Params::new(int(0), int(3), int(2)).is_err());
        assert!(Example1Params::new(int(1), int(2), int(3)).is_err());
        let p = Example1Params::unchecked(int(2), int(3), int(2));
        assert!(p.is_flagged_outside());
        assert_eq!(build_x2(&p).flags(), &[OUTSIDE_RANGE_FLAG.to_string()]);
        assert!(build_x2(&Example1Params::default()).flags().is_empty());
    }

    #[test]
    fn step_function_norms() {
        let x2 = build_x2(&Example1Params::default());
        let g = x2.gram().unwrap();
        assert_eq!(g.matrix, vec![vec![r(1, 1), r(0, 1)], vec![r(0, 1), r(15, 2)]]);
        assert_eq!(g.rank, 2);
    }

    #[test]
    fn wave_integrals() {
        let g01 = build_g(&GSpec::new(int(0), int(1)).unwrap()).unwrap();
        assert!(g01.integrate().unwrap().is_zero());
        assert_eq!(g01.inner(&g01).unwrap(), r(2, 3));
        let small = build_g(&GSpec::new(rat(1, 8), rat(1, 4)).unwrap()).unwrap();
        assert_eq!(small.inner(&small).unwrap(), r(1, 12));
        assert!(GSpec::new(int(1), int(0)).is_err());
        assert!(GSpec::new(int(-2), int(0)).is_err());
    }

    #[test]
    fn h_norms_and_values() {
        let norms = [(0, r(1, 1)), (1, r(3, 4)), (2, r(1, 2)), (3, r(1, 2)), (4, r(1, 4)), (7, r(1, 4))];
        for (i, want) in norms {
            let h = build_h(i).unwrap();
            assert_eq!(h.inner(&h).unwrap(), want, "h{i}");
        }
        let h4 = build_h(4).unwrap();
        assert!(h4.eval(&rat(37, 256)).unwrap().is_one());
        assert_eq!(h4.eval(&rat(39, 256)).unwrap(), r(-1, 1));
        assert!(build_h(8).is_err());
    }

    #[test]
    fn golden_weights_at_defaults() {
        let g = golden_rules(&Example1Params::default());
        assert_eq!(g[0].rule.weights(), &[r(-3, 2), r(1, 2), r(1, 2)]);
        assert_eq!(g[1].rule.weights(), &[r(7, 2), r(1, 2), r(1, 2)]);
        assert_eq!(g[2].rule.len(), 9);
        assert!(golden_rule("nope").is_none());
    }
}
