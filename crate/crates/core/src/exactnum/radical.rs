//! The field of finite sums `Σ c_d·√d` with rational `c_d` and distinct
//! squarefree radicands `d` (the key `1` holds the rational part).
//!
//! Square roots of distinct squarefree integers are linearly independent over
//! the rationals, so the normalized term map is a unique representation and
//! equality is structural.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rat::{fmt_rat, parse_rat, Rat};
use super::squarefree::split_square;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Radical {
    terms: BTreeMap<BigUint, Rat>,
}

impl Radical {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_rat(Rat::one())
    }

    pub fn from_rat(q: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !q.is_zero() {
            terms.insert(BigUint::one(), q);
        }
        Radical { terms }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rat(Rat::from_integer(BigInt::from(n)))
    }

    /// `c·√d` for a squarefree `d`; callers outside this module go through [`Radical::sqrt`].
    pub(crate) fn monomial(coeff: Rat, radicand: BigUint) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(radicand, coeff);
        }
        Radical { terms }
    }

    /// Exact square root of a nonnegative rational: `√(p/r) = (s/r)·√d` where `p·r = s²·d`.
    pub fn sqrt(q: &Rat) -> Result<Self> {
        if q.is_negative() {
            return Err(Error::Domain(format!("square root of negative value {q}")));
        }
        if q.is_zero() {
            return Ok(Self::zero());
        }
        let pr = (q.numer() * q.denom()).to_biguint().expect("nonnegative");
        let (s, d) = split_square(&pr)?;
        let coeff = Rat::new(BigInt::from(s), q.denom().clone());
        Ok(Self::monomial(coeff, d))
    }

    /// Builds a value from arbitrary (possibly non-squarefree, repeated) radicands.
    pub fn from_terms<I>(terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (BigUint, Rat)>,
    {
        let mut out = Radical::zero();
        for (d, c) in terms {
            if d.is_zero() || c.is_zero() {
                continue;
            }
            let (s, free) = split_square(&d)?;
            out.add_term(free, c * Rat::from_integer(BigInt::from(s)));
        }
        Ok(out)
    }

    fn add_term(&mut self, d: BigUint, c: Rat) {
        if c.is_zero() {
            return;
        }
        let remove = match self.terms.get_mut(&d) {
            Some(v) => {
                *v += c;
                v.is_zero()
            }
            None => {
                self.terms.insert(d.clone(), c);
                false
            }
        };
        if remove {
            self.terms.remove(&d);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_rat().is_some_and(|q| q.is_one())
    }

    pub fn is_rational(&self) -> bool {
        self.terms.keys().all(|d| d.is_one())
    }

    /// The rational value, if there are no irrational terms.
    pub fn as_rat(&self) -> Option<Rat> {
        match self.terms.len() {
            0 => Some(Rat::zero()),
            1 => self.terms.get(&BigUint::one()).cloned(),
            _ => None,
        }
    }

    pub fn rational_part(&self) -> Rat {
        self.terms.get(&BigUint::one()).cloned().unwrap_or_else(Rat::zero)
    }

    /// Coefficient of `√d` (zero when absent).
    pub fn coeff(&self, d: u64) -> Rat {
        self.terms.get(&BigUint::from(d)).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BigUint, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Radicands other than 1, ascending.
    pub fn radicands(&self) -> Vec<BigUint> {
        self.terms.keys().filter(|d| !d.is_one()).cloned().collect()
    }

    pub fn scale(&self, q: &Rat) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        Radical {
            terms: self.terms.iter().map(|(d, c)| (d.clone(), c * q)).collect(),
        }
    }

    pub fn square(&self) -> Self {
        self * self
    }

    /// The image under the automorphism-like map flipping the sign of every
    /// `√d` with `d` in `flipped`.
    fn flip(&self, flipped: &[BigUint]) -> Self {
        Radical {
            terms: self
                .terms
                .iter()
                .map(|(d, c)| {
                    if flipped.contains(d) {
                        (d.clone(), -c)
                    } else {
                        (d.clone(), c.clone())
                    }
                })
                .collect(),
        }
    }

    /// Product of the `2^k - 1` nontrivial sign-flip conjugates over the
    /// radicands of `self`, and the rational norm `self · conj`.
    ///
    /// Viewed as a polynomial in independent symbols `s_i = √d_i`, the full
    /// product over all sign patterns is even in every `s_i`, so it reduces to
    /// a rational. It is nonzero because each factor is a nonzero element.
    pub(crate) fn conjugate_product(&self) -> (Radical, Rat) {
        let rads = self.radicands();
        let k = rads.len();
        let mut acc = Radical::one();
        for mask in 1u64..(1u64 << k) {
            let flipped: Vec<BigUint> = (0..k)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| rads[i].clone())
                .collect();
            acc = &acc * &self.flip(&flipped);
        }
        let norm = (self * &acc)
            .as_rat()
            .expect("conjugate norm is rational");
        (acc, norm)
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(q) = self.as_rat() {
            return Ok(Self::from_rat(q.recip()));
        }
        if self.terms.len() == 1 {
            // c·√d → √d / (c·d)
            let (d, c) = self.terms.iter().next().unwrap();
            let denom = c * Rat::from_integer(BigInt::from_biguint(Sign::Plus, d.clone()));
            return Ok(Self::monomial(denom.recip(), d.clone()));
        }
        let (conj, norm) = self.conjugate_product();
        Ok(conj.scale(&norm.recip()))
    }

    pub fn checked_div(&self, other: &Radical) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    /// Canonical text form, e.g. `"-3/2"`, `"1/2*sqrt(6)"`, `"1 - sqrt(2)"`.
    pub fn render(&self) -> String {
        self.to_string()
    }

    pub fn parse(s: &str) -> Result<Self> {
        parse_radical(s)
    }
}

impl From<Rat> for Radical {
    fn from(q: Rat) -> Self {
        Radical::from_rat(q)
    }
}

impl From<&Rat> for Radical {
    fn from(q: &Rat) -> Self {
        Radical::from_rat(q.clone())
    }
}

impl From<i64> for Radical {
    fn from(n: i64) -> Self {
        Radical::from_int(n)
    }
}

impl Neg for &Radical {
    type Output = Radical;
    fn neg(self) -> Radical {
        Radical {
            terms: self.terms.iter().map(|(d, c)| (d.clone(), -c)).collect(),
        }
    }
}

impl Neg for Radical {
    type Output = Radical;
    fn neg(self) -> Radical {
        -&self
    }
}

impl Add for &Radical {
    type Output = Radical;
    fn add(self, rhs: &Radical) -> Radical {
        let mut out = self.clone();
        for (d, c) in &rhs.terms {
            out.add_term(d.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Radical {
    type Output = Radical;
    fn sub(self, rhs: &Radical) -> Radical {
        let mut out = self.clone();
        for (d, c) in &rhs.terms {
            out.add_term(d.clone(), -c);
        }
        out
    }
}

impl Mul for &Radical {
    type Output = Radical;
    fn mul(self, rhs: &Radical) -> Radical {
        let mut out = Radical::zero();
        for (d, c) in &self.terms {
            for (e, k) in &rhs.terms {
                // d = g·d', e = g·e' with d'·e' squarefree, so √d·√e = g·√(d'e').
                let g = d.gcd(e);
                let f = (d / &g) * (e / &g);
                let coeff = c * k * Rat::from_integer(BigInt::from_biguint(Sign::Plus, g));
                out.add_term(f, coeff);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Radical {
            type Output = Radical;
            fn $m(self, rhs: Radical) -> Radical {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Radical> for Radical {
            type Output = Radical;
            fn $m(self, rhs: &Radical) -> Radical {
                (&self).$m(rhs)
            }
        }
        impl $tr<Radical> for &Radical {
            type Output = Radical;
            fn $m(self, rhs: Radical) -> Radical {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// Panics on division by zero; use [`Radical::checked_div`] to get an error instead.
impl Div for &Radical {
    type Output = Radical;
    fn div(self, rhs: &Radical) -> Radical {
        self.checked_div(rhs).expect("division by zero")
    }
}

forward_owned!(Div, div);

impl fmt::Display for Radical {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (d, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if d.is_one() {
                write!(f, "{}", fmt_rat(&mag))?;
            } else if mag.is_one() {
                write!(f, "sqrt({d})")?;
            } else {
                write!(f, "{}*sqrt({d})", fmt_rat(&mag))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Radical {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Radical({self})")
    }
}

impl FromStr for Radical {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_radical(s)
    }
}

fn parse_radical(input: &str) -> Result<Radical> {
    let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(Error::Parse("empty radical".into()));
    }
    // Split into signed terms at top-level '+' / '-' (never inside parentheses,
    // never directly after '/', '*' or '(').
    let mut terms = Vec::new();
    let mut start = 0;
    let mut depth = 0i32;
    let bytes = s.as_bytes();
    for (i, &b) in bytes.iter().enumerate() {
        match b {
            b'(' => depth += 1,
            b')' => depth -= 1,
            b'+' | b'-' if depth == 0 && i > 0 => {
                let prev = bytes[i - 1];
                if !matches!(prev, b'/' | b'*' | b'(' | b'+' | b'-') {
                    terms.push(&s[start..i]);
                    start = i;
                }
            }
            _ => {}
        }
    }
    terms.push(&s[start..]);

    let mut out = Vec::new();
    for t in terms {
        let (neg, body) = match t.as_bytes().first() {
            Some(b'-') => (true, &t[1..]),
            Some(b'+') => (false, &t[1..]),
            _ => (false, t),
        };
        let bad = || Error::Parse(format!("bad radical term {t:?} in {input:?}"));
        let (coeff, radicand) = if let Some(idx) = body.find("sqrt(") {
            let coeff_str = &body[..idx];
            let close = body.rfind(')').ok_or_else(bad)?;
            if close != body.len() - 1 {
                return Err(bad());
            }
            let rad_str = &body[idx + 5..close];
            let radicand: BigUint = rad_str.parse().map_err(|_| bad())?;
            let coeff = if coeff_str.is_empty() {
                Rat::one()
            } else {
                let c = coeff_str.strip_suffix('*').ok_or_else(bad)?;
                parse_rat(c)?
            };
            (coeff, radicand)
        } else {
            (parse_rat(body)?, BigUint::one())
        };
        out.push((radicand, if neg { -coeff } else { coeff }));
    }
    Radical::from_terms(out)
}
