//! Structural lower bounds on the node count of any exact rule.

use super::space::Subspace;
use crate::error::{Error, Result};
use crate::exactnum::Radical;
use crate::piecewise::Support;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TargetBound {
    pub target: usize,
    pub support: Support,
    pub norm_sq: Radical,
    /// `⟨u, h⟩` for the witness `u`.
    pub cross: Radical,
    pub witness_nonvanishing: bool,
    /// Nodes any exact rule must place inside `support`.
    pub min_nodes: usize,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LowerBoundCertificate {
    pub witness: usize,
    pub targets: Vec<TargetBound>,
    pub bound: usize,
    /// Union of the supports that must hold a node.
    pub region: Support,
    pub flags: Vec<String>,
}

/// Counts nodes forced into pairwise disjoint target supports.
///
/// A target with `∥h∥² ≠ 0` needs a node in its support. If moreover
/// `⟨u, h⟩ = 0` and `u` never vanishes there, a single node `ξ` would give
/// `λ·h(ξ)² ≠ 0` from the `(h,h)` equation and `λ·u(ξ)·h(ξ) = 0` from the `(u,h)`
/// equation, so at least two are needed.
pub fn support_lower_bound(space: &Subspace, witness: usize, targets: &[usize]) -> Result<LowerBoundCertificate> {
    let n = space.dim();
    if witness >= n {
        return Err(Error::InvalidParams(format!("witness index {witness} out of range")));
    }
    if targets.is_empty() {
        return Err(Error::InvalidParams("at least one target is required".into()));
    }
    let u = space.func(witness);
    let mut out: Vec<TargetBound> = Vec::with_capacity(targets.len());
    let mut region = Support::default();
    for &t in targets {
        if t >= n {
            return Err(Error::InvalidParams(format!("target index {t} out of range")));
        }
        let h = space.func(t);
        let support = h.support()?;
        if let Some(prev) = out.iter().find(|p| p.target == t || p.support.intersects(&support)) {
            return Err(Error::PreconditionFailed(format!(
                "supports of {} and {} overlap",
                space.name(prev.target),
                space.name(t)
            )));
        }
        let norm_sq = h.inner(h)?;
        let cross = u.inner(h)?;
        let nonvanishing = u.nonvanishing_on(&support)?;
        let (min_nodes, reason) = if norm_sq.is_zero() {
            (0, format!("∥{}∥² = 0", space.name(t)))
        } else if cross.is_zero() && nonvanishing {
            (
                2,
                format!(
                    "∥{h}∥² ≠ 0 and ⟨{u},{h}⟩ = 0 with {u} nonvanishing on supp {h}: one node would violate the ({u},{h}) equation",
                    h = space.name(t),
                    u = space.name(witness)
                ),
            )
        } else {
            (1, format!("∥{}∥² ≠ 0", space.name(t)))
        };
        if min_nodes > 0 {
            region = region.union(&support);
        }
        out.push(TargetBound {
            target: t,
            support,
            norm_sq,
            cross,
            witness_nonvanishing: nonvanishing,
            min_nodes,
            reason,
        });
    }
    let bound = out.iter().map(|t| t.min_nodes).sum();
    Ok(LowerBoundCertificate { witness, targets: out, bound, region, flags: space.flags().to_vec() })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SumConstraint {
    pub function: usize,
    pub norm_sq: Radical,
    /// Constant value of `u²` on the region.
    pub square: Radical,
    /// `∥u∥² / c`: the total weight a rule confined to the region must carry.
    pub forced_sum: Radical,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Refinement {
    Improved {
        bound: usize,
        first: SumConstraint,
        second: SumConstraint,
    },
    NotApplicable {
        reason: String,
    },
}

/// With exactly `bound.bound` nodes, all of them lie in the target region. If
/// `u1²` and `u2²` are positive constants there, the `(u1,u1)` and `(u2,u2)`
/// equations each fix `Σ λ_j`; two different values force one more node.
pub fn forced_region_contradiction(
    space: &Subspace,
    bound: &LowerBoundCertificate,
    u1: usize,
    u2: usize,
) -> Result<Refinement> {
    let first = match forced_sum(space, &bound.region, u1)? {
        Ok(c) => c,
        Err(reason) => return Ok(Refinement::NotApplicable { reason }),
    };
    let second = match forced_sum(space, &bound.region, u2)? {
        Ok(c) => c,
        Err(reason) => return Ok(Refinement::NotApplicable { reason }),
    };
    if first.forced_sum == second.forced_sum {
        return Ok(Refinement::NotApplicable {
            reason: format!("both equations force Σλ = {}", first.forced_sum),
        });
    }
    Ok(Refinement::Improved { bound: bound.bound + 1, first, second })
}

fn forced_sum(space: &Subspace, region: &Support, k: usize) -> Result<std::result::Result<SumConstraint, String>> {
    if k >= space.dim() {
        return Err(Error::InvalidParams(format!("function index {k} out of range")));
    }
    let u = space.func(k);
    let sq = u.mul(u)?;
    let Some(c) = sq.constant_on(region)? else {
        return Ok(Err(format!("{}² is not constant on the region", space.name(k))));
    };
    if !c.is_positive() {
        return Ok(Err(format!("{}² vanishes on the region", space.name(k))));
    }
    let norm_sq = sq.integrate()?;
    let forced = &norm_sq * &c.inv()?;
    Ok(Ok(SumConstraint { function: k, norm_sq, square: c, forced_sum: forced }))
}

impl Refinement {
    pub fn improved_bound(&self) -> Option<usize> {
        match self {
            Refinement::Improved { bound, .. } => Some(*bound),
            Refinement::NotApplicable { .. } => None,
        }
    }
}

