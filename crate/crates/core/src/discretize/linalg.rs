//! Exact Gauss–Jordan elimination over the radical field.
//!
//! Rows are scanned in their original order for pivots and never swapped, so
//! the first row left over with a nonzero right-hand side is the earliest
//! equation that no solution can satisfy. Every row carries the combination
//! of original rows it equals, which becomes the inconsistency certificate.

use crate::exactnum::Radical;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinearSolution {
    /// Free variables are zero in `particular`; `null_basis` spans `{x : A·x = 0}`.
    Consistent {
        particular: Vec<Radical>,
        null_basis: Vec<Vec<Radical>>,
        rank: usize,
    },
    /// `yᵀA = 0` and `yᵀb ≠ 0`, with `y[row] = 1`.
    Inconsistent { row: usize, certificate: Vec<Radical> },
}

struct Row {
    coeffs: Vec<Radical>,
    rhs: Radical,
    combo: Vec<Radical>,
}

/// Reduced row echelon form of `[A | b]` with provenance.
struct Reduced {
    rows: Vec<Row>,
    /// `(row, column)` of each pivot, in column order.
    pivots: Vec<(usize, usize)>,
}

fn reduce(a: &[Vec<Radical>], b: &[Radical], track: bool) -> Reduced {
    let nrows = a.len();
    let ncols = a.first().map_or(0, Vec::len);
    let mut rows: Vec<Row> = a
        .iter()
        .zip(b)
        .enumerate()
        .map(|(r, (coeffs, rhs))| {
            let mut combo = Vec::new();
            if track {
                combo = vec![Radical::zero(); nrows];
                combo[r] = Radical::one();
            }
            Row { coeffs: coeffs.clone(), rhs: rhs.clone(), combo }
        })
        .collect();
    let mut is_pivot = vec![false; nrows];
    let mut pivots = Vec::new();
    for c in 0..ncols {
        let Some(p) = (0..nrows).find(|&r| !is_pivot[r] && !rows[r].coeffs[c].is_zero()) else {
            continue;
        };
        is_pivot[p] = true;
        pivots.push((p, c));
        let inv = rows[p].coeffs[c].inv().expect("pivot is nonzero");
        let prow = &mut rows[p];
        for v in prow.coeffs.iter_mut().chain(prow.combo.iter_mut()) {
            if !v.is_zero() {
                *v = &*v * &inv;
            }
        }
        prow.rhs = &prow.rhs * &inv;
        let pivot_coeffs = rows[p].coeffs.clone();
        let pivot_rhs = rows[p].rhs.clone();
        let pivot_combo = rows[p].combo.clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == p || row.coeffs[c].is_zero() {
                continue;
            }
            let f = row.coeffs[c].clone();
            let sub = |dst: &mut Vec<Radical>, src: &[Radical]| {
                for (d, s) in dst.iter_mut().zip(src) {
                    if !s.is_zero() {
                        *d = &*d - &(&f * s);
                    }
                }
            };
            sub(&mut row.coeffs, &pivot_coeffs);
            sub(&mut row.combo, &pivot_combo);
            row.rhs = &row.rhs - &(&f * &pivot_rhs);
        }
    }
    Reduced { rows, pivots }
}

/// Solves `A·x = b` for an `r × c` matrix given as rows.
pub fn solve(a: &[Vec<Radical>], b: &[Radical]) -> LinearSolution {
    assert_eq!(a.len(), b.len(), "row count mismatch");
    let ncols = a.first().map_or(0, Vec::len);
    let red = reduce(a, b, true);
    let pivot_rows: Vec<usize> = red.pivots.iter().map(|&(r, _)| r).collect();
    for (r, row) in red.rows.iter().enumerate() {
        if !pivot_rows.contains(&r) && !row.rhs.is_zero() {
            return LinearSolution::Inconsistent { row: r, certificate: row.combo.clone() };
        }
    }
    let mut particular = vec![Radical::zero(); ncols];
    for &(r, c) in &red.pivots {
        particular[c] = red.rows[r].rhs.clone();
    }
    let null_basis = null_from(&red, ncols);
    LinearSolution::Consistent { particular, null_basis, rank: red.pivots.len() }
}

fn null_from(red: &Reduced, ncols: usize) -> Vec<Vec<Radical>> {
    let pivot_cols: Vec<usize> = red.pivots.iter().map(|&(_, c)| c).collect();
    (0..ncols)
        .filter(|c| !pivot_cols.contains(c))
        .map(|f| {
            let mut v = vec![Radical::zero(); ncols];
            v[f] = Radical::one();
            for &(r, c) in &red.pivots {
                v[c] = -&red.rows[r].coeffs[f];
            }
            v
        })
        .collect()
}

/// Basis of `{x : A·x = 0}`.
pub fn null_space(a: &[Vec<Radical>]) -> Vec<Vec<Radical>> {
    let ncols = a.first().map_or(0, Vec::len);
    let zeros = vec![Radical::zero(); a.len()];
    null_from(&reduce(a, &zeros, false), ncols)
}

pub fn rank(a: &[Vec<Radical>]) -> usize {
    let zeros = vec![Radical::zero(); a.len()];
    reduce(a, &zeros, false).pivots.len()
}

pub fn transpose(a: &[Vec<Radical>]) -> Vec<Vec<Radical>> {
    let ncols = a.first().map_or(0, Vec::len);
    (0..ncols).map(|c| a.iter().map(|row| row[c].clone()).collect()).collect()
}

pub fn mat_vec(a: &[Vec<Radical>], x: &[Radical]) -> Vec<Radical> {
    a.iter().map(|row| dot(row, x)).collect()
}

pub fn dot(u: &[Radical], v: &[Radical]) -> Radical {
    u.iter()
        .zip(v)
        .filter(|(a, b)| !a.is_zero() && !b.is_zero())
        .fold(Radical::zero(), |acc, (a, b)| acc + a * b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(v: i64) -> Radical {
        Radical::from_int(v)
    }

    fn m(rows: &[&[i64]]) -> Vec<Vec<Radical>> {
        rows.iter().map(|row| row.iter().map(|&v| r(v)).collect()).collect()
    }

    #[test]
    fn unique_solution() {
        let a = m(&[&[2, 1], &[1, 3]]);
        let b = vec![r(3), r(4)];
        match solve(&a, &b) {
            LinearSolution::Consistent { particular, null_basis, rank } => {
                assert_eq!(particular, vec![r(1), r(1)]);
                assert!(null_basis.is_empty());
                assert_eq!(rank, 2);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn inconsistent_certificate() {
        let a = m(&[&[1, 1], &[2, 2], &[1, 0]]);
        let b = vec![r(1), r(3), r(0)];
        match solve(&a, &b) {
            LinearSolution::Inconsistent { row, certificate } => {
                assert_eq!(row, 1);
                assert!(certificate[1].is_one());
                assert!(mat_vec(&transpose(&a), &certificate).iter().all(Radical::is_zero));
                assert!(!dot(&certificate, &b).is_zero());
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn null_space_and_rank() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6]]);
        assert_eq!(rank(&a), 1);
        let ns = null_space(&a);
        assert_eq!(ns.len(), 2);
        for v in ns {
            assert!(mat_vec(&a, &v).iter().all(Radical::is_zero));
        }
    }

    #[test]
    fn irrational_pivots() {
        let s2 = Radical::sqrt(&crate::exactnum::int(2)).unwrap();
        let a = vec![vec![s2.clone(), r(1)], vec![r(1), s2.clone()]];
        let b = vec![r(1), r(0)];
        let LinearSolution::Consistent { particular, .. } = solve(&a, &b) else { panic!() };
        assert_eq!(mat_vec(&a, &particular), b);
    }
}
