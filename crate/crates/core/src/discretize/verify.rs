use super::space::{Rule, Subspace};
use crate::error::Result;
use crate::exactnum::Radical;

/// Residual `Σ_j λ_j·f_i(ξ_j)·f_s(ξ_j) − ⟨f_i, f_s⟩` for every pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairResidual {
    pub pair: (usize, usize),
    pub lhs: Radical,
    pub target: Radical,
    pub residual: Radical,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub residuals: Vec<PairResidual>,
    pub pass: bool,
    pub failing: Vec<(usize, usize)>,
    pub flags: Vec<String>,
}

impl VerifyReport {
    pub fn residual(&self, pair: (usize, usize)) -> Option<&PairResidual> {
        let pair = if pair.0 <= pair.1 { pair } else { (pair.1, pair.0) };
        self.residuals.iter().find(|r| r.pair == pair)
    }
}

/// Checks the full pair system against the actual Gram matrix. By polarization
/// this is equivalent to `∫ f² = Σ λ_j f(ξ_j)²` for every `f` in the span.
/// Nodes may sit on breakpoints; the half-open convention fixes their values.
pub fn verify_rule(space: &Subspace, rule: &Rule) -> Result<VerifyReport> {
    rule.check_domain(space)?;
    let target = space.gram()?.target();
    let moments = rule
        .nodes()
        .iter()
        .map(|x| space.moment_vector(x))
        .collect::<Result<Vec<_>>>()?;
    let mut residuals = Vec::with_capacity(target.len());
    let mut failing = Vec::new();
    for (k, (pair, b)) in space.pairs().into_iter().zip(target).enumerate() {
        let lhs = moments
            .iter()
            .zip(rule.weights())
            .fold(Radical::zero(), |acc, (mv, w)| acc + w * &mv.0[k]);
        let residual = &lhs - &b;
        if !residual.is_zero() {
            failing.push(pair);
        }
        residuals.push(PairResidual { pair, lhs, target: b, residual });
    }
    Ok(VerifyReport { pass: failing.is_empty(), residuals, failing, flags: space.flags().to_vec() })
}
