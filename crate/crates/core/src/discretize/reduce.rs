//! Support reduction along null combinations of node moment vectors.

use std::cmp::Ordering;

use log::debug;

use super::linalg;
use super::space::{MomentVec, Rule, Subspace};
use super::verify::verify_rule;
use super::Mode;
use crate::error::{Error, Result};
use crate::exactnum::Radical;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReduceStep {
    /// Null combination `μ` of the current nodes' moment vectors.
    pub direction: Vec<Radical>,
    /// Step length in `λ ← λ − t·μ`.
    pub step: Radical,
    /// Nodes whose weight reached zero.
    pub dropped: Vec<crate::exactnum::Rat>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReduceReport {
    pub mode: Mode,
    pub input_nodes: usize,
    pub rule: Rule,
    /// Rank of the final moment vectors, equal to the final node count.
    pub rank: usize,
    pub steps: Vec<ReduceStep>,
    pub flags: Vec<String>,
}

/// Repeatedly moves the weights along a null combination until one weight hits
/// zero, then drops it. Exactness is kept at every step because `M·μ = 0`.
pub fn caratheodory_reduce(space: &Subspace, rule: &Rule, mode: Mode) -> Result<ReduceReport> {
    if !verify_rule(space, rule)?.pass {
        return Err(Error::PreconditionFailed("the input rule does not verify".into()));
    }
    if mode == Mode::Positive && !rule.all_positive() {
        return Err(Error::PreconditionFailed("positive reduction needs all weights positive".into()));
    }
    let mut nodes = rule.nodes().to_vec();
    let mut weights = rule.weights().to_vec();
    let mut moments: Vec<MomentVec> = nodes.iter().map(|x| space.moment_vector(x)).collect::<Result<_>>()?;
    let mut steps = Vec::new();
    // Zero weights are dead nodes from the start.
    drop_zero(&mut nodes, &mut weights, &mut moments);
    loop {
        let cols: Vec<&MomentVec> = moments.iter().collect();
        let m = super::solve::moment_matrix(&cols);
        let null = linalg::null_space(&m);
        let Some(mut mu) = null.into_iter().next() else { break };
        let step = match mode {
            Mode::Signed => {
                let j = mu.iter().position(|v| !v.is_zero()).expect("null vector is nonzero");
                &weights[j] * &mu[j].inv()?
            }
            Mode::Positive => {
                if !mu.iter().any(Radical::is_positive) {
                    mu = mu.iter().map(|v| -v).collect();
                }
                let mut best: Option<Radical> = None;
                for (w, v) in weights.iter().zip(&mu) {
                    if v.is_positive() {
                        let r = w * &v.inv()?;
                        if best.as_ref().is_none_or(|b| r.cmp_value(b) == Ordering::Less) {
                            best = Some(r);
                        }
                    }
                }
                best.expect("some entry is positive")
            }
        };
        for (w, v) in weights.iter_mut().zip(&mu) {
            if !v.is_zero() {
                *w = &*w - &(&step * v);
            }
        }
        let before: Vec<_> = nodes.clone();
        drop_zero(&mut nodes, &mut weights, &mut moments);
        let dropped = before.into_iter().filter(|x| !nodes.contains(x)).collect::<Vec<_>>();
        debug!("reduction step dropped {} node(s)", dropped.len());
        steps.push(ReduceStep { direction: mu, step, dropped });
    }
    let out = Rule::new(nodes, weights)?;
    debug_assert!(verify_rule(space, &out)?.pass);
    Ok(ReduceReport {
        mode,
        input_nodes: rule.len(),
        rank: out.len(),
        rule: out,
        steps,
        flags: space.flags().to_vec(),
    })
}

fn drop_zero(nodes: &mut Vec<crate::exactnum::Rat>, weights: &mut Vec<Radical>, moments: &mut Vec<MomentVec>) {
    let keep: Vec<bool> = weights.iter().map(|w| !w.is_zero()).collect();
    let mut k = 0;
    nodes.retain(|_| {
        k += 1;
        keep[k - 1]
    });
    let mut k = 0;
    moments.retain(|_| {
        k += 1;
        keep[k - 1]
    });
    weights.retain(|w| !w.is_zero());
}
