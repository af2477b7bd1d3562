use super::piece::{Piece, PieceForm};
use super::poly::Poly;
use crate::error::{Error, Result};
use crate::exactnum::{Radical, Rat};

/// A function on `[lo, hi]` given by contiguous pieces.
///
/// Each piece owns `[piece.lo, piece.hi)`; the last piece also owns `hi`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PiecewiseFn {
    lo: Rat,
    hi: Rat,
    pieces: Vec<Piece>,
}

/// Left and right values at an interior breakpoint, for documentation of jumps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BreakpointLimits {
    pub x: Rat,
    pub left: Radical,
    pub right: Radical,
}

impl PiecewiseFn {
    pub fn new(pieces: Vec<Piece>) -> Result<Self> {
        let first = pieces
            .first()
            .ok_or_else(|| Error::InvalidPiece("a piecewise function needs at least one piece".into()))?;
        for w in pieces.windows(2) {
            if w[0].hi != w[1].lo {
                return Err(Error::InvalidPiece(format!(
                    "pieces are not contiguous: [{}, {}) then [{}, {})",
                    w[0].lo, w[0].hi, w[1].lo, w[1].hi
                )));
            }
        }
        let lo = first.lo.clone();
        let hi = pieces.last().unwrap().hi.clone();
        Ok(PiecewiseFn { lo, hi, pieces })
    }

    /// Pieces `forms[k]` on `[breaks[k], breaks[k+1])`.
    pub fn from_breaks(breaks: &[Rat], forms: Vec<PieceForm>) -> Result<Self> {
        if breaks.len() != forms.len() + 1 {
            return Err(Error::InvalidPiece(format!(
                "{} breakpoints cannot bound {} pieces",
                breaks.len(),
                forms.len()
            )));
        }
        let pieces = forms
            .into_iter()
            .enumerate()
            .map(|(k, f)| Piece::new(breaks[k].clone(), breaks[k + 1].clone(), f))
            .collect::<Result<Vec<_>>>()?;
        PiecewiseFn::new(pieces)
    }

    pub fn constant(lo: Rat, hi: Rat, c: Rat) -> Result<Self> {
        PiecewiseFn::new(vec![Piece::constant(lo, hi, c)?])
    }

    pub fn domain(&self) -> (&Rat, &Rat) {
        (&self.lo, &self.hi)
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    /// Every piece boundary including the domain endpoints.
    pub fn breakpoints(&self) -> Vec<Rat> {
        let mut out: Vec<Rat> = self.pieces.iter().map(|p| p.lo.clone()).collect();
        out.push(self.hi.clone());
        out
    }

    pub fn in_domain(&self, x: &Rat) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    /// Index of the piece owning `x` under the half-open convention.
    pub fn piece_index_at(&self, x: &Rat) -> Result<usize> {
        if !self.in_domain(x) {
            return Err(Error::Domain(format!("{x} lies outside [{}, {}]", self.lo, self.hi)));
        }
        let idx = self.pieces.partition_point(|p| &p.lo <= x);
        Ok(idx.saturating_sub(1))
    }

    pub fn eval(&self, x: &Rat) -> Result<Radical> {
        let idx = self.piece_index_at(x)?;
        self.pieces[idx].form.eval(x)
    }

    pub fn has_sqrt_pieces(&self) -> bool {
        self.pieces.iter().any(|p| p.form.has_sqrt())
    }

    /// True when every piece is a constant (possibly irrational) value.
    pub fn is_piecewise_constant(&self) -> bool {
        self.pieces.iter().all(|p| p.form.constant_value().is_some())
    }

    fn check_same_domain(&self, other: &PiecewiseFn) -> Result<()> {
        if self.lo != other.lo || self.hi != other.hi {
            return Err(Error::Domain(format!(
                "domains differ: [{}, {}] vs [{}, {}]",
                self.lo, self.hi, other.lo, other.hi
            )));
        }
        Ok(())
    }

    /// Common refinement of two functions' breakpoints, with the owning piece of each.
    fn refine<'a>(&'a self, other: &'a PiecewiseFn) -> Vec<(Rat, Rat, &'a PieceForm, &'a PieceForm)> {
        let mut cuts = self.breakpoints();
        cuts.extend(other.breakpoints());
        cuts.sort();
        cuts.dedup();
        cuts.windows(2)
            .map(|w| {
                let i = self.piece_index_at(&w[0]).expect("cut inside domain");
                let j = other.piece_index_at(&w[0]).expect("cut inside domain");
                (w[0].clone(), w[1].clone(), &self.pieces[i].form, &other.pieces[j].form)
            })
            .collect()
    }

    /// Merges neighbouring pieces with identical formulas.
    pub fn simplify(self) -> PiecewiseFn {
        let mut out: Vec<Piece> = Vec::with_capacity(self.pieces.len());
        for p in self.pieces {
            match out.last_mut() {
                Some(last) if last.form == p.form => last.hi = p.hi,
                _ => out.push(p),
            }
        }
        PiecewiseFn { lo: self.lo, hi: self.hi, pieces: out }
    }

    /// Pointwise product on the refined breakpoint set.
    pub fn mul(&self, other: &PiecewiseFn) -> Result<PiecewiseFn> {
        self.check_same_domain(other)?;
        let pieces = self
            .refine(other)
            .into_iter()
            .map(|(lo, hi, a, b)| Piece::new(lo, hi, a.mul(b)?))
            .collect::<Result<Vec<_>>>()?;
        Ok(PiecewiseFn::new(pieces)?.simplify())
    }

    /// `c1·f + c2·g`. Fails when a piece would need two distinct radicands.
    pub fn scale_add(c1: &Radical, f: &PiecewiseFn, c2: &Radical, g: &PiecewiseFn) -> Result<PiecewiseFn> {
        f.check_same_domain(g)?;
        let pieces = f
            .refine(g)
            .into_iter()
            .map(|(lo, hi, a, b)| Piece::new(lo, hi, PieceForm::scale_add(c1, a, c2, b)?))
            .collect::<Result<Vec<_>>>()?;
        Ok(PiecewiseFn::new(pieces)?.simplify())
    }

    pub fn scale(&self, c: &Radical) -> Result<PiecewiseFn> {
        PiecewiseFn::scale_add(c, self, &Radical::zero(), self)
    }

    /// Exact Lebesgue integral over the whole domain.
    pub fn integrate(&self) -> Result<Radical> {
        let mut acc = Radical::zero();
        for p in &self.pieces {
            acc = acc + p.integrate()?;
        }
        Ok(acc)
    }

    /// Exact `∫ f·g`.
    pub fn inner(&self, other: &PiecewiseFn) -> Result<Radical> {
        self.mul(other)?.integrate()
    }

    /// One-sided values at each interior breakpoint.
    pub fn one_sided_limits(&self) -> Result<Vec<BreakpointLimits>> {
        self.pieces
            .windows(2)
            .map(|w| {
                let x = w[1].lo.clone();
                Ok(BreakpointLimits { left: w[0].form.eval(&x)?, right: w[1].form.eval(&x)?, x })
            })
            .collect()
    }

    /// Zero function on `[lo, hi]`.
    pub fn zero(lo: Rat, hi: Rat) -> Result<Self> {
        PiecewiseFn::new(vec![Piece::poly(lo, hi, Poly::zero())?])
    }

    pub fn is_identically_zero(&self) -> bool {
        self.pieces.iter().all(|p| p.form.is_zero())
    }
}
