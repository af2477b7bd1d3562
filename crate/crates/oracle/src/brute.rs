//! Brute-force minimal rules for piecewise-constant subspaces with rational values.
//!
//! Works directly on the region table, without any of the library's solvers.
//! A minimal rule can always be taken on linearly independent moment vectors
//! (otherwise a null combination removes a node while keeping the weight signs
//! allowed), so only such subsets are tried.

use disq_core::discretize::Subspace;
use disq_core::piecewise::{PieceForm, PiecewiseFn};
use num_traits::{Signed, Zero};

use crate::ratlin::{self, Q};

#[derive(Clone, Debug)]
pub struct PcSpace {
    /// Region boundaries, strictly increasing.
    pub breaks: Vec<Q>,
    /// `values[i][r]`: value of basis function `i` on region `r`.
    pub values: Vec<Vec<Q>>,
}

impl PcSpace {
    pub fn dim(&self) -> usize {
        self.values.len()
    }

    pub fn regions(&self) -> usize {
        self.breaks.len() - 1
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let n = self.dim();
        (0..n).flat_map(|i| (i..n).map(move |s| (i, s))).collect()
    }

    pub fn moment(&self, r: usize) -> Vec<Q> {
        self.pairs().iter().map(|&(i, s)| &self.values[i][r] * &self.values[s][r]).collect()
    }

    /// Upper triangle of the Gram matrix in pair order.
    pub fn target(&self) -> Vec<Q> {
        let mut t = vec![Q::zero(); self.pairs().len()];
        for r in 0..self.regions() {
            let len = &self.breaks[r + 1] - &self.breaks[r];
            for (acc, v) in t.iter_mut().zip(self.moment(r)) {
                *acc += &len * v;
            }
        }
        t
    }

    pub fn gram_rank(&self) -> usize {
        let n = self.dim();
        let g: Vec<Vec<Q>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|s| {
                        (0..self.regions())
                            .map(|r| (&self.breaks[r + 1] - &self.breaks[r]) * &self.values[i][r] * &self.values[s][r])
                            .fold(Q::zero(), |a, b| a + b)
                    })
                    .collect()
            })
            .collect();
        ratlin::rank(&g)
    }

    /// Region containing `x`, half-open with the last region closed.
    pub fn region_of(&self, x: &Q) -> Option<usize> {
        let last = self.regions() - 1;
        (0..self.regions()).find(|&r| {
            &self.breaks[r] <= x && (x < &self.breaks[r + 1] || (r == last && x == &self.breaks[r + 1]))
        })
    }

    pub fn to_subspace(&self) -> Subspace {
        let funcs = self.values.iter().enumerate().map(|(i, vals)| {
            let forms = vals.iter().map(|v| PieceForm::constant(v.clone())).collect();
            (format!("p{i}"), PiecewiseFn::from_breaks(&self.breaks, forms).expect("valid regions"))
        });
        Subspace::from_named(funcs.collect()).expect("valid subspace")
    }
}

fn subsets(n: usize, m: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, m: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        for k in start..n {
            cur.push(k);
            go(k + 1, n, m, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, m, &mut Vec::new(), &mut out);
    out
}

/// Smallest node count of an exact rule, with one such rule as `(regions, weights)`.
pub fn brute_min(space: &PcSpace, positive: bool) -> (usize, Vec<usize>, Vec<Q>) {
    let b = space.target();
    let cols: Vec<Vec<Q>> = (0..space.regions()).map(|r| space.moment(r)).collect();
    for m in 1..=space.regions() {
        for s in subsets(space.regions(), m) {
            let sub: Vec<Vec<Q>> = s.iter().map(|&r| cols[r].clone()).collect();
            if let Some(w) = ratlin::unique_solution(&sub, &b) {
                let ok = if positive { w.iter().all(Signed::is_positive) } else { w.iter().all(|v| !v.is_zero()) };
                if ok {
                    return (m, s, w);
                }
            }
        }
    }
    unreachable!("weighting every region by its length is exact")
}

/// Whether some rule with exactly these columns (repeats allowed) is exact,
/// with every weight strictly positive in positive mode.
///
/// Positive case: the polyhedron `{λ ≥ 0 : Mλ = b}` contains a strictly positive
/// point iff it is nonempty and every coordinate is positive at some vertex or
/// along some extreme ray; vertices come from independent column subsets and
/// rays from one-signed circuits.
pub fn pattern_feasible(cols: &[Vec<Q>], b: &[Q], positive: bool) -> bool {
    if !positive {
        return ratlin::in_span(cols, b);
    }
    let m = cols.len();
    let mut covered = vec![false; m];
    let mut any_vertex = false;
    for size in 0..=m {
        for s in subsets(m, size) {
            let sub: Vec<Vec<Q>> = s.iter().map(|&j| cols[j].clone()).collect();
            if size > 0 && ratlin::rank(&sub) == size {
                if let Some(w) = ratlin::unique_solution(&sub, b) {
                    if w.iter().all(|v| !v.is_negative()) {
                        any_vertex = true;
                        for (k, v) in s.iter().zip(&w) {
                            covered[*k] |= v.is_positive();
                        }
                    }
                }
            } else if size == 0 && b.iter().all(Zero::is_zero) {
                any_vertex = true;
            }
            let null = ratlin::null_space(&sub);
            if null.len() == 1 && null[0].iter().all(|v| !v.is_zero()) {
                let pos = null[0].iter().all(Signed::is_positive);
                let neg = null[0].iter().all(Signed::is_negative);
                if pos || neg {
                    for k in &s {
                        covered[*k] = true;
                    }
                }
            }
        }
    }
    any_vertex && covered.iter().all(|&c| c)
}
