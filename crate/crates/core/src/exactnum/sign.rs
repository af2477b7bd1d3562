//! Exact sign decision by interval refinement.
//!
//! `√d` is enclosed in `[s/2^k, (s+1)/2^k]` with `s = isqrt(d·4^k)`, so every
//! enclosure is a pair of exact rationals. Precision doubles from the
//! configured start until the enclosure excludes zero. Termination is forced
//! by a separation bound: for nonzero `x` with `k` radicands,
//! `|x| ≥ |N| / B^(2^k - 1)` where `N` is the conjugate norm and `B` bounds
//! every conjugate in absolute value. Once the precision reaches the bits
//! that bound demands, the enclosure is provably narrower than `|x|`.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::radical::Radical;
use super::rat::{log2_magnitude, rat_to_f64, Rat};
use super::start_precision_bits;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RadSign {
    Negative,
    Zero,
    Positive,
}

impl RadSign {
    pub fn as_str(self) -> &'static str {
        match self {
            RadSign::Negative => "negative",
            RadSign::Zero => "zero",
            RadSign::Positive => "positive",
        }
    }
}

/// Beyond this many bits of plain doubling the separation bound is consulted.
const CONSULT_BOUND_AFTER: u64 = 512;

impl Radical {
    /// Rational enclosure `[lo, hi]` of the value using `bits` bits per square root.
    pub fn enclose(&self, bits: u64) -> (Rat, Rat) {
        let scale = BigInt::one() << bits;
        let mut lo = Rat::zero();
        let mut hi = Rat::zero();
        for (d, c) in self.terms() {
            if d.is_one() {
                lo += c;
                hi += c;
                continue;
            }
            let shifted = BigInt::from(d.clone()) << (2 * bits);
            let s = shifted.sqrt();
            let root_lo = Rat::new(s.clone(), scale.clone());
            let root_hi = Rat::new(s + 1, scale.clone());
            if c.is_positive() {
                lo += c * root_lo;
                hi += c * root_hi;
            } else {
                lo += c * root_hi;
                hi += c * root_lo;
            }
        }
        (lo, hi)
    }

    /// Precision (bits per root) at which an enclosure is guaranteed to exclude zero.
    pub(crate) fn separation_bits(&self) -> u64 {
        let k = self.radicands().len() as u32;
        let mut width_coeff = Rat::zero();
        let mut conj_bound = Rat::zero();
        for (d, c) in self.terms() {
            let root_ub = BigInt::from(d.clone()).sqrt() + 1;
            conj_bound += c.abs() * Rat::from_integer(root_ub);
            if !d.is_one() {
                width_coeff += c.abs();
            }
        }
        let (_, norm) = self.conjugate_product();
        let conj_log = log2_magnitude(&conj_bound).max(0) + 1;
        let copies = (1i64 << k) - 1;
        let need = log2_magnitude(&width_coeff) + 1 + copies * conj_log - (log2_magnitude(&norm) - 1) + 2;
        need.max(1) as u64
    }

    pub fn sign(&self) -> RadSign {
        if self.is_zero() {
            return RadSign::Zero;
        }
        if let Some(q) = self.as_rat() {
            return if q.is_positive() {
                RadSign::Positive
            } else {
                RadSign::Negative
            };
        }
        let mut bits = start_precision_bits().max(1);
        let mut cap: Option<u64> = None;
        loop {
            let (lo, hi) = self.enclose(bits);
            if lo.is_positive() {
                return RadSign::Positive;
            }
            if hi.is_negative() {
                return RadSign::Negative;
            }
            if bits >= CONSULT_BOUND_AFTER && cap.is_none() {
                cap = Some(self.separation_bits());
            }
            match cap {
                Some(c) if bits >= c => {
                    // At the cap the enclosure is narrower than |x| and cannot
                    // straddle zero; reaching here means the bound is wrong.
                    unreachable!("sign refinement exceeded separation bound for {self}");
                }
                Some(c) => bits = (bits * 2).min(c),
                None => bits *= 2,
            }
        }
    }

    pub fn is_positive(&self) -> bool {
        self.sign() == RadSign::Positive
    }

    pub fn is_negative(&self) -> bool {
        self.sign() == RadSign::Negative
    }

    pub fn cmp_value(&self, other: &Radical) -> Ordering {
        match (self - other).sign() {
            RadSign::Negative => Ordering::Less,
            RadSign::Zero => Ordering::Equal,
            RadSign::Positive => Ordering::Greater,
        }
    }

    pub fn abs(&self) -> Radical {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// Nearest-ish `f64`; advisory only.
    pub fn to_f64(&self) -> f64 {
        if let Some(q) = self.as_rat() {
            return rat_to_f64(&q);
        }
        let (lo, hi) = self.enclose(96);
        rat_to_f64(&((lo + hi) / Rat::from_integer(BigInt::from(2))))
    }

    /// 17-significant-digit rendering used in reports.
    pub fn float_string(&self) -> String {
        format!("{:.16e}", self.to_f64())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat::rat;

    fn r(s: &str) -> Radical {
        s.parse().unwrap()
    }

    #[test]
    fn sign_examples() {
        assert_eq!(Radical::zero().sign(), RadSign::Zero);
        assert_eq!(r("sqrt(2) - 1").sign(), RadSign::Positive);
        // (2·1² − 3² + 2²)/(2·1²)
        let lambda1 = Radical::from_rat(rat(2 - 9 + 4, 2));
        assert_eq!(lambda1, r("-3/2"));
        assert_eq!(lambda1.sign(), RadSign::Negative);
    }

    #[test]
    fn sign_of_tiny_difference() {
        // 3√6/40 − 43/240 ≈ 4.5e−3
        assert_eq!(r("3/40*sqrt(6) - 43/240").sign(), RadSign::Positive);
        // 99/70 and √2 differ by ~7.2e−5
        assert_eq!(r("sqrt(2) - 99/70").sign(), RadSign::Negative);
        // 665857/470832 − √2 ≈ 1.6e−12
        assert_eq!(r("665857/470832 - sqrt(2)").sign(), RadSign::Positive);
    }

    #[test]
    fn separation_cap_decides() {
        let x = r("665857/470832 - sqrt(2)");
        let bits = x.separation_bits();
        let (lo, hi) = x.enclose(bits);
        assert!(lo.is_positive() || hi.is_negative());
        let y = r("sqrt(2) + sqrt(3) - sqrt(5) - 1/1000*sqrt(7)");
        let (lo, hi) = y.enclose(y.separation_bits());
        assert!(lo.is_positive() || hi.is_negative());
    }

    #[test]
    fn enclosure_contains_value() {
        let x = r("1/3 - 2*sqrt(6) + 5/7*sqrt(23)");
        let (lo, hi) = x.enclose(64);
        let v = x.to_f64();
        assert!(rat_to_f64(&lo) <= v && v <= rat_to_f64(&hi));
        assert!((v - (1.0 / 3.0 - 2.0 * 6f64.sqrt() + 5.0 / 7.0 * 23f64.sqrt())).abs() < 1e-14);
    }

    #[test]
    fn float_rendering_has_17_digits() {
        assert_eq!(r("-3/2").float_string(), "-1.5000000000000000e0");
    }
}
