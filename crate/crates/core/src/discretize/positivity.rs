//! Strict positivity of an affine weight family by Fourier–Motzkin elimination.
//!
//! Constraints `c + a·t > 0` are combined with nonnegative multipliers only, so
//! strictness survives every step. Each derived constraint remembers its
//! multipliers on the original `λ_j > 0`; a derived `c > 0` with `c ≤ 0` and no
//! variables left is then a certificate.

use std::cmp::Ordering;

use crate::exactnum::{int, Radical};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Positivity {
    Witness { weights: Vec<Radical> },
    /// `w ≥ 0`, `w ≠ 0`, `Σ_j w_j ν_kj = 0` for every null vector and
    /// `value = Σ_j w_j λ0_j ≤ 0`. Then `Σ w_j λ_j = value` on the whole
    /// family, which is impossible when every `λ_j > 0`.
    NoPositive { combination: Vec<Radical>, value: Radical },
}

impl Positivity {
    pub fn is_witness(&self) -> bool {
        matches!(self, Positivity::Witness { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Constraint {
    a: Vec<Radical>,
    c: Radical,
    w: Vec<Radical>,
}

impl Constraint {
    /// Divides by a positive scalar so equal half-spaces compare equal.
    fn normalized(self) -> Constraint {
        let lead = self.a.iter().find(|v| !v.is_zero()).cloned().or_else(|| {
            (!self.c.is_zero()).then(|| self.c.clone())
        });
        let Some(lead) = lead else { return self };
        let s = lead.abs().inv().expect("nonzero");
        if s.is_one() {
            return self;
        }
        Constraint {
            a: self.a.iter().map(|v| v * &s).collect(),
            c: &self.c * &s,
            w: self.w.iter().map(|v| v * &s).collect(),
        }
    }

    fn vars_free(&self) -> bool {
        self.a.iter().all(Radical::is_zero)
    }
}

fn combine(p: &Constraint, n: &Constraint, k: usize) -> Constraint {
    let fp = -&n.a[k];
    let fn_ = p.a[k].clone();
    let lin = |x: &[Radical], y: &[Radical]| -> Vec<Radical> {
        x.iter().zip(y).map(|(u, v)| &(&fp * u) + &(&fn_ * v)).collect()
    };
    let mut a = lin(&p.a, &n.a);
    a[k] = Radical::zero();
    Constraint { a, c: &(&fp * &p.c) + &(&fn_ * &n.c), w: lin(&p.w, &n.w) }.normalized()
}

fn push_unique(set: &mut Vec<Constraint>, c: Constraint) {
    if !set.iter().any(|d| d.a == c.a && d.c == c.c) {
        set.push(c);
    }
}

/// Decides whether `{λ0 + Σ_k t_k·ν_k}` meets the open positive orthant.
pub fn positive_feasible(particular: &[Radical], null_basis: &[Vec<Radical>]) -> Positivity {
    let m = particular.len();
    let kdim = null_basis.len();
    let mut level: Vec<Constraint> = Vec::new();
    for j in 0..m {
        let mut w = vec![Radical::zero(); m];
        w[j] = Radical::one();
        let c = Constraint {
            a: null_basis.iter().map(|v| v[j].clone()).collect(),
            c: particular[j].clone(),
            w,
        }
        .normalized();
        push_unique(&mut level, c);
    }
    // levels[k] holds the system over t_0..t_{k-1}.
    let mut levels: Vec<Vec<Constraint>> = vec![Vec::new(); kdim + 1];
    for k in (0..=kdim).rev() {
        if let Some(bad) = level.iter().find(|c| c.vars_free() && !c.c.is_positive()) {
            return Positivity::NoPositive { combination: bad.w.clone(), value: bad.c.clone() };
        }
        if k == 0 {
            levels[0] = level;
            break;
        }
        let var = k - 1;
        let mut next = Vec::new();
        let (mut pos, mut neg) = (Vec::new(), Vec::new());
        for c in &level {
            match c.a[var].sign() {
                crate::exactnum::RadSign::Positive => pos.push(c),
                crate::exactnum::RadSign::Negative => neg.push(c),
                crate::exactnum::RadSign::Zero => push_unique(&mut next, c.clone()),
            }
        }
        for p in &pos {
            for n in &neg {
                push_unique(&mut next, combine(p, n, var));
            }
        }
        levels[k] = std::mem::replace(&mut level, next);
    }
    let t = back_substitute(&levels, kdim);
    let weights: Vec<Radical> = (0..m)
        .map(|j| {
            null_basis
                .iter()
                .zip(&t)
                .fold(particular[j].clone(), |acc, (v, tk)| acc + &v[j] * tk)
        })
        .collect();
    debug_assert!(weights.iter().all(Radical::is_positive));
    Positivity::Witness { weights }
}

fn back_substitute(levels: &[Vec<Constraint>], kdim: usize) -> Vec<Radical> {
    let mut t: Vec<Radical> = Vec::with_capacity(kdim);
    for k in 0..kdim {
        let mut lower: Option<Radical> = None;
        let mut upper: Option<Radical> = None;
        for c in &levels[k + 1] {
            let ak = &c.a[k];
            if ak.is_zero() {
                continue;
            }
            let rest = t.iter().zip(&c.a).fold(c.c.clone(), |acc, (x, a)| acc + a * x);
            let bound = -&(&rest * &ak.inv().expect("nonzero"));
            if ak.is_positive() {
                if lower.as_ref().is_none_or(|l| bound.cmp_value(l) == Ordering::Greater) {
                    lower = Some(bound);
                }
            } else if upper.as_ref().is_none_or(|u| bound.cmp_value(u) == Ordering::Less) {
                upper = Some(bound);
            }
        }
        let one = Radical::one();
        let v = match (lower, upper) {
            (Some(l), Some(u)) => (&l + &u).scale(&(int(1) / int(2))),
            (Some(l), None) => &l + &one,
            (None, Some(u)) => &u - &one,
            (None, None) => Radical::zero(),
        };
        t.push(v);
    }
    t
}

/// Re-checks a [`Positivity::NoPositive`] certificate against the family.
pub fn check_no_positive(
    particular: &[Radical],
    null_basis: &[Vec<Radical>],
    combination: &[Radical],
) -> bool {
    use super::linalg::dot;
    combination.len() == particular.len()
        && combination.iter().all(|w| !w.is_negative())
        && combination.iter().any(|w| !w.is_zero())
        && null_basis.iter().all(|v| dot(combination, v).is_zero())
        && !dot(combination, particular).is_positive()
}
