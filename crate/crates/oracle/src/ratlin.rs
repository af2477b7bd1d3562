//! Textbook row reduction over the rationals with row swaps.

use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Q = BigRational;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(n.into(), d.into())
}

/// Row echelon form in place; returns pivot columns.
fn echelon(m: &mut [Vec<Q>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = Q::one() / &m[r][c];
        for v in m[r].iter_mut() {
            *v = &*v * &inv;
        }
        let prow = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (v, pv) in row.iter_mut().zip(&prow) {
                    *v = &*v - &f * pv;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &[Vec<Q>]) -> usize {
    echelon(&mut m.to_vec()).len()
}

/// Columns given as vectors; true when `b` is a combination of them.
pub fn in_span(cols: &[Vec<Q>], b: &[Q]) -> bool {
    let rows: Vec<Vec<Q>> = (0..b.len()).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect();
    let aug: Vec<Vec<Q>> = rows
        .iter()
        .zip(b)
        .map(|(r, v)| {
            let mut r = r.clone();
            r.push(v.clone());
            r
        })
        .collect();
    rank(&rows) == rank(&aug)
}

/// The unique solution of `Σ x_j cols[j] = b`, if the columns are independent and `b` is in their span.
pub fn unique_solution(cols: &[Vec<Q>], b: &[Q]) -> Option<Vec<Q>> {
    let n = cols.len();
    let mut aug: Vec<Vec<Q>> = (0..b.len())
        .map(|i| {
            let mut r: Vec<Q> = cols.iter().map(|c| c[i].clone()).collect();
            r.push(b[i].clone());
            r
        })
        .collect();
    let pivots = echelon(&mut aug);
    if pivots.len() != n || pivots.contains(&n) {
        return None;
    }
    Some((0..n).map(|k| aug[k][n].clone()).collect())
}

/// Basis of `{x : Σ x_j cols[j] = 0}`.
pub fn null_space(cols: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let n = cols.len();
    let rows = cols.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<Q>> = (0..rows).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect();
    let pivots = echelon(&mut m);
    (0..n)
        .filter(|c| !pivots.contains(c))
        .map(|f| {
            let mut v = vec![Q::zero(); n];
            v[f] = Q::one();
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = -m[r][f].clone();
            }
            v
        })
        .collect()
}
