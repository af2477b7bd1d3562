//! Exploratory search over node subsets drawn from a candidate list.
//! Finding nothing proves nothing.

use rayon::prelude::*;

use super::minimality::thread_pool;
use super::positivity::{positive_feasible, Positivity};
use super::solve::{solve_moments, WeightSolution};
use super::space::{pair_index, MomentVec, Rule, Subspace};
use super::Mode;
use crate::error::{Error, Result};
use crate::exactnum::{Radical, Rat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridOptions {
    pub mode: Mode,
    /// Maximum number of rules returned.
    pub cap: usize,
    /// Pair equations left out of every system.
    pub excluded_pairs: Vec<(usize, usize)>,
    pub jobs: usize,
    /// Upper limit on the number of subsets examined.
    pub max_subsets: Option<u64>,
}

impl GridOptions {
    pub fn new(mode: Mode) -> Self {
        GridOptions { mode, cap: 100, excluded_pairs: Vec::new(), jobs: 1, max_subsets: None }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridHit {
    /// Signed mode: the particular solution (free weights zero). Positive mode: a positive witness.
    pub rule: Rule,
    /// Directions along which the weights may move.
    pub null_basis: Vec<Vec<Radical>>,
}

/// Subset indices, weights and free directions of one feasible subset.
type Found = (Vec<usize>, Vec<Radical>, Vec<Vec<Radical>>);

/// Size-`m` subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if m == 0 || m > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..m).collect();
    loop {
        out.push(cur.clone());
        let Some(k) = (0..m).rev().find(|&k| cur[k] < n - m + k) else { break };
        cur[k] += 1;
        for j in k + 1..m {
            cur[j] = cur[j - 1] + 1;
        }
    }
    out
}

fn binomial(n: usize, m: usize) -> u64 {
    if m > n {
        return 0;
    }
    let mut acc: u128 = 1;
    for k in 0..m as u128 {
        acc = acc * (n as u128 - k) / (k + 1);
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

pub fn search_grid(space: &Subspace, candidates: &[Rat], m: usize, opts: &GridOptions) -> Result<Vec<GridHit>> {
    for (k, x) in candidates.iter().enumerate() {
        if !space.in_domain(x) {
            return Err(Error::Domain(format!("candidate {x} lies outside the domain")));
        }
        if candidates[..k].contains(x) {
            return Err(Error::PreconditionFailed(format!("candidate {x} is repeated")));
        }
    }
    let n = space.dim();
    for &(i, s) in &opts.excluded_pairs {
        if i >= n || s >= n {
            return Err(Error::InvalidParams(format!("excluded pair ({i},{s}) is out of range")));
        }
    }
    if let Some(cap) = opts.max_subsets {
        if binomial(candidates.len(), m) > cap {
            return Err(Error::CapExceeded { cap: cap as usize });
        }
    }
    let mut excluded: Vec<(usize, usize)> = opts.excluded_pairs.iter().map(|&(i, s)| (i.min(s), i.max(s))).collect();
    excluded.sort_by_key(|&(i, s)| pair_index(n, i, s));
    excluded.dedup();
    let target = space.gram()?.target();
    let moments = candidates
        .iter()
        .map(|x| space.moment_vector(x))
        .collect::<Result<Vec<_>>>()?;
    let pool = thread_pool(opts.jobs)?;
    let found: Vec<Option<Found>> = pool.install(|| {
        subsets(candidates.len(), m)
            .into_par_iter()
            .map(|sub| {
                let cols: Vec<&MomentVec> = sub.iter().map(|&k| &moments[k]).collect();
                match solve_moments(n, &cols, &target, &excluded) {
                    WeightSolution::Infeasible { .. } => None,
                    WeightSolution::Solved { particular, null_basis } => match opts.mode {
                        Mode::Signed => Some((sub, particular, null_basis)),
                        Mode::Positive => match positive_feasible(&particular, &null_basis) {
                            Positivity::Witness { weights } => Some((sub, weights, null_basis)),
                            Positivity::NoPositive { .. } => None,
                        },
                    },
                }
            })
            .collect()
    });
    found
        .into_iter()
        .flatten()
        .take(opts.cap)
        .map(|(sub, weights, null_basis)| {
            let rule = Rule::new(sub.iter().map(|&k| candidates[k].clone()).collect(), weights)?;
            Ok(GridHit { rule, null_basis })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subset_enumeration() {
        assert_eq!(subsets(4, 2), vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]);
        assert_eq!(subsets(3, 3), vec![vec![0, 1, 2]]);
        assert!(subsets(2, 3).is_empty());
        for n in 0..7 {
            for m in 1..5 {
                assert_eq!(subsets(n, m).len() as u64, binomial(n, m));
            }
        }
    }
}
