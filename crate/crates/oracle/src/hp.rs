//! High-precision binary floats.

use dashu_float::round::mode::HalfEven;
use dashu_float::FBig;
use dashu_int::IBig;
use disq_core::exactnum::Radical;
use num_bigint::BigInt;
use num_rational::BigRational;

pub type F = FBig<HalfEven, 2>;

/// Working precision in bits (about 96 decimal digits).
pub const PREC: usize = 320;

fn ibig(n: &BigInt) -> IBig {
    IBig::from_str_radix(&n.to_str_radix(16), 16).expect("hex digits")
}

pub fn int(n: i64) -> F {
    F::from(n).with_precision(PREC).value()
}

pub fn rat(q: &BigRational) -> F {
    let n = F::from(ibig(q.numer())).with_precision(PREC).value();
    let d = F::from(ibig(q.denom())).with_precision(PREC).value();
    n / d
}

pub fn frac(n: i64, d: i64) -> F {
    int(n) / int(d)
}

/// Square root of a nonnegative value.
pub fn sqrt(x: &F) -> F {
    if *x <= int(0) {
        return int(0);
    }
    x.sqrt()
}

/// `Σ c_d·√d` evaluated at working precision, without the core sign machinery.
pub fn radical(r: &Radical) -> F {
    r.terms().fold(int(0), |acc, (d, c)| {
        let d = F::from(dashu_int::UBig::from_str_radix(&d.to_str_radix(16), 16).expect("hex"))
            .with_precision(PREC)
            .value();
        acc + rat(c) * d.sqrt()
    })
}

pub fn abs(x: &F) -> F {
    if *x < int(0) {
        -x.clone()
    } else {
        x.clone()
    }
}

pub fn to_f64(x: &F) -> f64 {
    x.to_f64().value()
}

/// `10^-k` at working precision.
pub fn ten_pow_neg(k: u32) -> F {
    int(1) / int(10).powi(IBig::from(k))
}
