//! Tanh–sinh quadrature at [`PREC`] bits.
//!
//! Nodes `x = mid + half·tanh(sinh t)`; the endpoint distance `1 - tanh(s)` is
//! formed as `2/(e^{2s}+1)` so points close to either end keep full precision.

use disq_core::piecewise::{PieceForm, PiecewiseFn};

use crate::hp::{self, F, PREC};

/// Integral of `f` over `[a, b]` with step `2^-level`.
pub fn tanh_sinh(f: &dyn Fn(&F) -> F, a: &F, b: &F, level: u32) -> F {
    let half = (b.clone() - a.clone()) / hp::int(2);
    let mid = (a.clone() + b.clone()) / hp::int(2);
    let h = hp::int(1) / hp::int(1i64 << level);
    let tiny = hp::int(1) / hp::int(2).powi(dashu_int::IBig::from(PREC + 40));
    let mut sum = f(&mid);
    let mut k: i64 = 1;
    loop {
        let t = h.clone() * hp::int(k);
        let et = t.exp();
        let cosh_t = (et.clone() + hp::int(1) / et.clone()) / hp::int(2);
        let s = (et.clone() - hp::int(1) / et) / hp::int(2);
        let e2s = (s * hp::int(2)).exp();
        let denom = e2s.clone() + hp::int(1);
        let w = cosh_t * hp::int(4) * e2s / (denom.clone() * denom.clone());
        if w < tiny {
            break;
        }
        let d = half.clone() * hp::int(2) / denom;
        let left = a.clone() + d.clone();
        let right = b.clone() - d;
        sum += w * (f(&left) + f(&right));
        k += 1;
    }
    sum * h * half
}

/// Value of one piece formula at `x`, in floating point.
pub fn eval_form(form: &PieceForm, x: &F) -> F {
    let poly = |cs: &[disq_core::exactnum::Rat]| cs.iter().rev().fold(hp::int(0), |acc, c| acc * x.clone() + hp::rat(c));
    match form {
        PieceForm::Poly(p) => poly(p.coeffs()),
        PieceForm::SqrtAffine { poly: p, alpha, beta } => {
            poly(p.coeffs()) * hp::sqrt(&(hp::rat(alpha) * x.clone() + hp::rat(beta)))
        }
    }
}

/// `∫ f·g` by quadrature on every cell of the merged breakpoints.
pub fn inner(f: &PiecewiseFn, g: &PiecewiseFn, level: u32) -> F {
    let mut cuts = f.breakpoints();
    cuts.extend(g.breakpoints());
    cuts.sort();
    cuts.dedup();
    let mut acc = hp::int(0);
    for w in cuts.windows(2) {
        let fi = f.pieces().iter().find(|p| p.lo <= w[0] && w[1] <= p.hi).expect("cell inside a piece");
        let gi = g.pieces().iter().find(|p| p.lo <= w[0] && w[1] <= p.hi).expect("cell inside a piece");
        let integrand = |x: &F| eval_form(&fi.form, x) * eval_form(&gi.form, x);
        acc += tanh_sinh(&integrand, &hp::rat(&w[0]), &hp::rat(&w[1]), level);
    }
    acc
}

/// `∫ h0·h1` straight from the defining formulas:
/// `h0 = √(24x)` on `[0,1/16)`, `√(2-8x)` on `[1/16,1/8)`, `1` after; `h1 = 8x` on `[0,1/8)`
/// and the unit trapezoidal wave on `[1/8, 1]`; `h0` vanishes for `x < 0`.
pub fn h0_h1_inner(level: u32) -> F {
    let q = |f: &dyn Fn(&F) -> F, a: (i64, i64), b: (i64, i64)| {
        tanh_sinh(f, &hp::frac(a.0, a.1), &hp::frac(b.0, b.1), level)
    };
    let left = q(&|x| hp::sqrt(&(hp::int(24) * x.clone())) * hp::int(8) * x.clone(), (0, 1), (1, 16));
    let right = q(&|x| hp::sqrt(&(hp::int(2) - hp::int(8) * x.clone())) * hp::int(8) * x.clone(), (1, 16), (1, 8));
    let plateau_up = q(&|_| hp::int(1), (1, 8), (3, 8));
    let ramp_down = q(&|x| (hp::frac(1, 2) - x.clone()) * hp::int(8), (3, 8), (5, 8));
    let plateau_down = q(&|_| hp::int(-1), (5, 8), (7, 8));
    let ramp_up = q(&|x| (x.clone() - hp::int(1)) * hp::int(8), (7, 8), (1, 1));
    left + right + plateau_up + ramp_down + plateau_down + ramp_up
}
