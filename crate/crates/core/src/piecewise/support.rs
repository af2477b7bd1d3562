//! Pointwise support `{x : f(x) ≠ 0}` as a finite union of intervals.
//!
//! Zeros strictly inside a stretch where the function is otherwise nonzero
//! (the midpoint of a trapezoidal wave, say) are removed from the support and
//! listed separately as isolated zeros.

use std::fmt;

use num_traits::Zero;

use super::function::PiecewiseFn;
use super::piece::PieceForm;
use crate::error::{Error, Result};
use crate::exactnum::{Radical, Rat};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Interval {
    pub lo: Rat,
    pub hi: Rat,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl Interval {
    pub fn contains(&self, x: &Rat) -> bool {
        let left = if self.lo_closed { &self.lo <= x } else { &self.lo < x };
        let right = if self.hi_closed { x <= &self.hi } else { x < &self.hi };
        left && right
    }

    /// Whether `other ⊆ self`.
    pub fn covers(&self, other: &Interval) -> bool {
        let left = self.lo < other.lo || (self.lo == other.lo && (self.lo_closed || !other.lo_closed));
        let right = other.hi < self.hi || (self.hi == other.hi && (self.hi_closed || !other.hi_closed));
        left && right
    }

    pub fn intersects(&self, other: &Interval) -> bool {
        if self.hi < other.lo || other.hi < self.lo {
            return false;
        }
        if self.hi == other.lo {
            return self.hi_closed && other.lo_closed;
        }
        if other.hi == self.lo {
            return other.hi_closed && self.lo_closed;
        }
        true
    }

    /// Overlap of positive length with the half-open `[lo, hi)`.
    fn overlaps_open(&self, lo: &Rat, hi: &Rat) -> bool {
        lo < &self.hi && &self.lo < hi
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{}, {}{}",
            if self.lo_closed { '[' } else { '(' },
            self.lo,
            self.hi,
            if self.hi_closed { ']' } else { ')' }
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Support {
    /// Disjoint, sorted, maximal.
    pub intervals: Vec<Interval>,
    /// Points where the function vanishes with nonzero values on both sides.
    pub isolated_zeros: Vec<Rat>,
}

impl Support {
    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn contains(&self, x: &Rat) -> bool {
        self.intervals.iter().any(|i| i.contains(x))
    }

    pub fn intersects(&self, other: &Support) -> bool {
        self.intervals
            .iter()
            .any(|a| other.intervals.iter().any(|b| a.intersects(b)))
    }

    /// Whether `other ⊆ self`. Each component of `other` is connected, so it
    /// must sit inside a single component of `self`.
    pub fn covers(&self, other: &Support) -> bool {
        other
            .intervals
            .iter()
            .all(|b| self.intervals.iter().any(|a| a.covers(b)))
    }

    pub fn union(&self, other: &Support) -> Support {
        let mut intervals: Vec<Interval> = self.intervals.iter().chain(&other.intervals).cloned().collect();
        intervals.sort_by(|a, b| a.lo.cmp(&b.lo).then(b.lo_closed.cmp(&a.lo_closed)));
        let mut zeros: Vec<Rat> = self.isolated_zeros.iter().chain(&other.isolated_zeros).cloned().collect();
        zeros.sort();
        zeros.dedup();
        Support { intervals: merge(intervals, &mut Vec::new()), isolated_zeros: zeros }
    }

    pub fn measure(&self) -> Rat {
        self.intervals.iter().map(|i| &i.hi - &i.lo).fold(Rat::zero(), |a, b| a + b)
    }
}

impl fmt::Display for Support {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.intervals.is_empty() {
            return write!(f, "∅");
        }
        let parts: Vec<String> = self.intervals.iter().map(|i| i.to_string()).collect();
        write!(f, "{}", parts.join(" ∪ "))
    }
}

/// Merges sorted intervals that touch at a covered point; records zero-width gaps.
fn merge(intervals: Vec<Interval>, gaps: &mut Vec<Rat>) -> Vec<Interval> {
    let mut out: Vec<Interval> = Vec::new();
    for iv in intervals {
        if let Some(last) = out.last_mut() {
            let touching = last.hi == iv.lo;
            if last.hi > iv.lo || (touching && (last.hi_closed || iv.lo_closed)) {
                if iv.hi > last.hi || (iv.hi == last.hi && iv.hi_closed) {
                    last.hi = iv.hi.clone();
                    last.hi_closed = iv.hi_closed;
                }
                continue;
            }
            if touching {
                gaps.push(iv.lo.clone());
            }
        }
        out.push(iv);
    }
    out
}

/// Sorted zeros of a nonzero form on `[lo, hi]`. Only linear factors are
/// solved exactly; higher-degree polynomials must be root-free on the open piece.
fn zeros_of(form: &PieceForm, lo: &Rat, hi: &Rat) -> Result<Vec<Rat>> {
    let mut zeros = Vec::new();
    let poly = form.poly();
    match poly.degree() {
        None | Some(0) => {}
        Some(1) => {
            let c = poly.coeffs();
            let r = -&c[0] / &c[1];
            if lo <= &r && &r <= hi {
                zeros.push(r);
            }
        }
        Some(d) => {
            if poly.count_roots_open(lo, hi) > 0 {
                return Err(Error::UnsupportedSupport(format!(
                    "degree-{d} piece on [{lo}, {hi}] has interior roots"
                )));
            }
            for x in [lo, hi] {
                if poly.eval(x).is_zero() {
                    zeros.push(x.clone());
                }
            }
        }
    }
    if let PieceForm::SqrtAffine { alpha, beta, .. } = form {
        if !alpha.is_zero() {
            let r = -beta / alpha;
            if lo <= &r && &r <= hi {
                zeros.push(r);
            }
        }
    }
    zeros.sort();
    zeros.dedup();
    Ok(zeros)
}

impl PiecewiseFn {
    pub fn support(&self) -> Result<Support> {
        let n = self.pieces().len();
        let mut parts = Vec::new();
        for (k, p) in self.pieces().iter().enumerate() {
            if p.form.is_zero() {
                continue;
            }
            let last = k + 1 == n;
            let zeros = zeros_of(&p.form, &p.lo, &p.hi)?;
            // Walk [lo, hi) (or [lo, hi] for the last piece) cutting at zeros.
            let mut cur_lo = p.lo.clone();
            let mut cur_closed = true;
            for z in zeros.iter().filter(|z| *z < &p.hi) {
                if z == &cur_lo {
                    cur_closed = false;
                    continue;
                }
                parts.push(Interval { lo: cur_lo, hi: z.clone(), lo_closed: cur_closed, hi_closed: false });
                cur_lo = z.clone();
                cur_closed = false;
            }
            let hi_closed = last && !zeros.contains(&p.hi);
            parts.push(Interval { lo: cur_lo, hi: p.hi.clone(), lo_closed: cur_closed, hi_closed });
        }
        let mut gaps = Vec::new();
        let intervals = merge(parts, &mut gaps);
        Ok(Support { intervals, isolated_zeros: gaps })
    }

    /// The common value of `f` on `set` if `f` is constant there.
    pub fn constant_on(&self, set: &Support) -> Result<Option<Radical>> {
        let mut value: Option<Radical> = None;
        let mut consider = |form: &PieceForm, at: Option<&Rat>| -> Result<bool> {
            let v = match at {
                Some(x) => form.eval(x)?,
                None => match form.constant_value() {
                    Some(v) => v,
                    None => return Ok(false),
                },
            };
            match &value {
                Some(prev) if prev != &v => Ok(false),
                Some(_) => Ok(true),
                None => {
                    value = Some(v);
                    Ok(true)
                }
            }
        };
        for iv in &set.intervals {
            for p in self.pieces() {
                if iv.overlaps_open(&p.lo, &p.hi) && !consider(&p.form, None)? {
                    return Ok(None);
                }
            }
            for (x, closed) in [(&iv.lo, iv.lo_closed), (&iv.hi, iv.hi_closed)] {
                if closed {
                    let idx = self.piece_index_at(x)?;
                    if !consider(&self.pieces()[idx].form, Some(x))? {
                        return Ok(None);
                    }
                }
            }
        }
        Ok(value)
    }

    /// Whether `f(x) ≠ 0` for every `x` in `set`.
    pub fn nonvanishing_on(&self, set: &Support) -> Result<bool> {
        Ok(self.support()?.covers(set))
    }
}
