use super::linalg::{self, LinearSolution};
use super::space::{pair_index, MomentVec, Subspace};
use crate::error::{Error, Result};
use crate::exactnum::{Radical, Rat};

/// The affine set of weight vectors solving `M·λ = b`, or proof that it is empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WeightSolution {
    Solved {
        particular: Vec<Radical>,
        null_basis: Vec<Vec<Radical>>,
    },
    /// `yᵀM = 0` and `yᵀb ≠ 0`; `y` is indexed by pair and has `y[pair] = 1`.
    Infeasible {
        pair: (usize, usize),
        certificate: Vec<Radical>,
    },
}

impl WeightSolution {
    pub fn is_solved(&self) -> bool {
        matches!(self, WeightSolution::Solved { .. })
    }
}

/// Solves for weights at the given nodes. Nodes must be distinct and in the domain.
pub fn solve_weights(space: &Subspace, nodes: &[Rat]) -> Result<WeightSolution> {
    solve_weights_excluding(space, nodes, &[])
}

/// As [`solve_weights`] with some pair equations dropped from the system.
pub fn solve_weights_excluding(
    space: &Subspace,
    nodes: &[Rat],
    excluded: &[(usize, usize)],
) -> Result<WeightSolution> {
    for (k, x) in nodes.iter().enumerate() {
        if !space.in_domain(x) {
            return Err(Error::Domain(format!("node {x} lies outside the domain")));
        }
        if nodes[..k].contains(x) {
            return Err(Error::PreconditionFailed(format!("node {x} is repeated")));
        }
    }
    let target = space.gram()?.target();
    let moments = nodes
        .iter()
        .map(|x| space.moment_vector(x))
        .collect::<Result<Vec<_>>>()?;
    let cols: Vec<&MomentVec> = moments.iter().collect();
    Ok(solve_moments(space.dim(), &cols, &target, excluded))
}

/// Core solver on precomputed moment vectors (one per node).
pub fn solve_moments(
    dim: usize,
    columns: &[&MomentVec],
    target: &[Radical],
    excluded: &[(usize, usize)],
) -> WeightSolution {
    let all = super::space::pairs(dim);
    let skip: Vec<usize> = excluded.iter().map(|&(i, s)| pair_index(dim, i, s)).collect();
    let rows: Vec<usize> = (0..all.len()).filter(|k| !skip.contains(k)).collect();
    let a: Vec<Vec<Radical>> = rows
        .iter()
        .map(|&k| columns.iter().map(|c| c.0[k].clone()).collect())
        .collect();
    let b: Vec<Radical> = rows.iter().map(|&k| target[k].clone()).collect();
    match linalg::solve(&a, &b) {
        LinearSolution::Consistent { particular, null_basis, .. } => WeightSolution::Solved { particular, null_basis },
        LinearSolution::Inconsistent { row, certificate } => {
            let mut y = vec![Radical::zero(); all.len()];
            for (&k, v) in rows.iter().zip(certificate) {
                y[k] = v;
            }
            WeightSolution::Infeasible { pair: all[rows[row]], certificate: y }
        }
    }
}

/// Moment matrix with one column per node, rows in pair order.
pub fn moment_matrix(columns: &[&MomentVec]) -> Vec<Vec<Radical>> {
    let rows = columns.first().map_or(0, |c| c.0.len());
    (0..rows).map(|k| columns.iter().map(|c| c.0[k].clone()).collect()).collect()
}

/// Re-checks an inconsistency certificate: `yᵀM = 0` and `yᵀb ≠ 0`.
pub fn check_inconsistency(columns: &[&MomentVec], target: &[Radical], y: &[Radical]) -> bool {
    let m = moment_matrix(columns);
    y.len() == target.len()
        && linalg::mat_vec(&linalg::transpose(&m), y).iter().all(Radical::is_zero)
        && !linalg::dot(y, target).is_zero()
}
