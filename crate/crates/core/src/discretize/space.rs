use std::collections::HashMap;

use log::warn;

use crate::error::{Error, Result};
use crate::exactnum::{Radical, Rat};
use crate::piecewise::PiecewiseFn;

/// A named basis function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedFn {
    pub name: String,
    pub func: PiecewiseFn,
}

/// The span of a basis of piecewise functions over a common domain.
/// Linear independence is not required; [`Subspace::gram`] reports the rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    basis: Vec<NamedFn>,
    flags: Vec<String>,
}

impl Subspace {
    pub fn new(basis: Vec<NamedFn>) -> Result<Self> {
        let first = basis
            .first()
            .ok_or_else(|| Error::PreconditionFailed("a subspace needs at least one basis function".into()))?;
        let dom = first.func.domain();
        for f in &basis {
            if f.func.domain() != dom {
                return Err(Error::Domain(format!("basis function {} has a different domain", f.name)));
            }
        }
        let mut seen = HashMap::new();
        for (i, f) in basis.iter().enumerate() {
            if let Some(j) = seen.insert(f.name.clone(), i) {
                return Err(Error::PreconditionFailed(format!(
                    "basis names must be unique: {:?} at {j} and {i}",
                    f.name
                )));
            }
        }
        Ok(Subspace { basis, flags: Vec::new() })
    }

    pub fn from_named<S: Into<String>>(items: Vec<(S, PiecewiseFn)>) -> Result<Self> {
        Subspace::new(
            items
                .into_iter()
                .map(|(name, func)| NamedFn { name: name.into(), func })
                .collect(),
        )
    }

    /// Provenance markers propagated into every certificate.
    pub fn flags(&self) -> &[String] {
        &self.flags
    }

    pub fn with_flag(mut self, flag: impl Into<String>) -> Self {
        let flag = flag.into();
        if !self.flags.contains(&flag) {
            self.flags.push(flag);
        }
        self
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[NamedFn] {
        &self.basis
    }

    pub fn func(&self, i: usize) -> &PiecewiseFn {
        &self.basis[i].func
    }

    pub fn name(&self, i: usize) -> &str {
        &self.basis[i].name
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.basis
            .iter()
            .position(|f| f.name == name)
            .ok_or_else(|| Error::PreconditionFailed(format!("no basis function named {name:?}")))
    }

    pub fn domain(&self) -> (&Rat, &Rat) {
        self.basis[0].func.domain()
    }

    pub fn in_domain(&self, x: &Rat) -> bool {
        self.basis[0].func.in_domain(x)
    }

    /// Index pairs `(i, s)` with `i ≤ s` in lexicographic order:
    /// `(0,0), (0,1), …, (0,N-1), (1,1), …, (N-1,N-1)`.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        pairs(self.dim())
    }

    pub fn pair_label(&self, (i, s): (usize, usize)) -> String {
        format!("({},{})", self.name(i), self.name(s))
    }

    /// Exact Gram matrix `⟨f_i, f_s⟩` and its rank.
    pub fn gram(&self) -> Result<Gram> {
        let n = self.dim();
        let mut matrix = vec![vec![Radical::zero(); n]; n];
        for (i, s) in self.pairs() {
            let v = self.func(i).inner(self.func(s))?;
            matrix[s][i] = v.clone();
            matrix[i][s] = v;
        }
        let rank = super::linalg::rank(&matrix);
        Ok(Gram { matrix, rank })
    }

    /// `(f_i(x)·f_s(x))` over [`Subspace::pairs`].
    pub fn moment_vector(&self, x: &Rat) -> Result<MomentVec> {
        let values = self
            .basis
            .iter()
            .map(|f| f.func.eval(x))
            .collect::<Result<Vec<_>>>()?;
        Ok(MomentVec(
            self.pairs()
                .into_iter()
                .map(|(i, s)| &values[i] * &values[s])
                .collect(),
        ))
    }
}

pub fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (i..n).map(move |s| (i, s))).collect()
}

/// Position of `(i, s)`, `i ≤ s`, in the lexicographic pair order for dimension `n`.
pub fn pair_index(n: usize, i: usize, s: usize) -> usize {
    let (i, s) = if i <= s { (i, s) } else { (s, i) };
    i * n + s - i - i * i.saturating_sub(1) / 2
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gram {
    pub matrix: Vec<Vec<Radical>>,
    pub rank: usize,
}

impl Gram {
    /// Upper triangle flattened in pair order: the right-hand side `b` of every rule system.
    pub fn target(&self) -> Vec<Radical> {
        pairs(self.matrix.len())
            .into_iter()
            .map(|(i, s)| self.matrix[i][s].clone())
            .collect()
    }
}

/// Entry `(i, s)` of the vector is `f_i(x)·f_s(x)`, in [`Subspace::pairs`] order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MomentVec(pub Vec<Radical>);

impl MomentVec {
    pub fn entries(&self) -> &[Radical] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Radical::is_zero)
    }
}

/// Nodes `ξ_j` and weights `λ_j` of a discretization rule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rule {
    nodes: Vec<Rat>,
    weights: Vec<Radical>,
}

impl Rule {
    /// Repeated nodes are merged into the first occurrence with summed weights.
    pub fn new(nodes: Vec<Rat>, weights: Vec<Radical>) -> Result<Self> {
        if nodes.len() != weights.len() {
            return Err(Error::PreconditionFailed(format!(
                "{} nodes but {} weights",
                nodes.len(),
                weights.len()
            )));
        }
        let mut out_nodes: Vec<Rat> = Vec::with_capacity(nodes.len());
        let mut out_weights: Vec<Radical> = Vec::with_capacity(nodes.len());
        for (x, w) in nodes.into_iter().zip(weights) {
            match out_nodes.iter().position(|y| y == &x) {
                Some(k) => {
                    warn!("duplicate node {x} merged, weights summed");
                    out_weights[k] = &out_weights[k] + &w;
                }
                None => {
                    out_nodes.push(x);
                    out_weights.push(w);
                }
            }
        }
        Ok(Rule { nodes: out_nodes, weights: out_weights })
    }

    pub fn nodes(&self) -> &[Rat] {
        &self.nodes
    }

    pub fn weights(&self) -> &[Radical] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn all_positive(&self) -> bool {
        self.weights.iter().all(Radical::is_positive)
    }

    pub fn check_domain(&self, space: &Subspace) -> Result<()> {
        match self.nodes.iter().find(|x| !space.in_domain(x)) {
            Some(x) => Err(Error::Domain(format!("node {x} lies outside the domain"))),
            None => Ok(()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_order_and_index() {
        assert_eq!(pairs(3), vec![(0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2)]);
        for n in 1..7 {
            for (k, (i, s)) in pairs(n).into_iter().enumerate() {
                assert_eq!(pair_index(n, i, s), k);
                assert_eq!(pair_index(n, s, i), k);
            }
        }
    }

    #[test]
    fn duplicate_nodes_merge() {
        use crate::exactnum::rat;
        let r = Rule::new(
            vec![rat(1, 2), rat(1, 4), rat(1, 2)],
            vec![Radical::one(), Radical::one(), Radical::from_rat(rat(1, 3))],
        )
        .unwrap();
        assert_eq!(r.nodes(), &[rat(1, 2), rat(1, 4)]);
        assert_eq!(r.weights()[0], Radical::from_rat(rat(4, 3)));
        assert!(Rule::new(vec![rat(0, 1)], vec![]).is_err());
    }
}
