use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::poly::Poly;
use crate::error::{Error, Result};
use crate::exactnum::{int, Radical, Rat};

/// Formula of a single piece.
///
/// `SqrtAffine` means `poly(x)·√(alpha·x + beta)`. Canonical forms never carry a
/// zero polynomial under a root, and a constant radicand (`alpha = 0`) is always
/// a squarefree integer greater than one.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum PieceForm {
    Poly(Poly),
    SqrtAffine { poly: Poly, alpha: Rat, beta: Rat },
}

impl PieceForm {
    pub fn zero() -> Self {
        PieceForm::Poly(Poly::zero())
    }

    pub fn constant(c: Rat) -> Self {
        PieceForm::Poly(Poly::constant(c))
    }

    /// `c·√d` as a constant piece, canonicalized.
    pub fn constant_sqrt(c: Rat, d: Rat) -> Result<Self> {
        PieceForm::SqrtAffine { poly: Poly::constant(c), alpha: Rat::zero(), beta: d }.canonical()
    }

    pub fn poly(&self) -> &Poly {
        match self {
            PieceForm::Poly(p) | PieceForm::SqrtAffine { poly: p, .. } => p,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.poly().is_zero()
    }

    pub fn has_sqrt(&self) -> bool {
        matches!(self, PieceForm::SqrtAffine { .. })
    }

    /// Constant value if the form does not depend on `x`.
    pub fn constant_value(&self) -> Option<Radical> {
        match self {
            PieceForm::Poly(p) if p.is_constant() => Some(Radical::from_rat(p.constant_term())),
            PieceForm::SqrtAffine { poly, alpha, beta } if poly.is_constant() && alpha.is_zero() => {
                Radical::sqrt(beta).ok().map(|r| r.scale(&poly.constant_term()))
            }
            _ => None,
        }
    }

    pub(crate) fn line(&self) -> (Rat, Rat) {
        match self {
            PieceForm::Poly(_) => (Rat::zero(), Rat::one()),
            PieceForm::SqrtAffine { alpha, beta, .. } => (alpha.clone(), beta.clone()),
        }
    }

    fn from_parts(poly: Poly, alpha: Rat, beta: Rat) -> Result<Self> {
        PieceForm::SqrtAffine { poly, alpha, beta }.canonical()
    }

    pub fn canonical(self) -> Result<Self> {
        match self {
            PieceForm::Poly(_) => Ok(self),
            PieceForm::SqrtAffine { poly, alpha, beta } => {
                if poly.is_zero() {
                    return Ok(PieceForm::zero());
                }
                if !alpha.is_zero() {
                    return Ok(PieceForm::SqrtAffine { poly, alpha, beta });
                }
                if beta.is_negative() {
                    return Err(Error::InvalidPiece(format!("negative constant radicand {beta}")));
                }
                let root = Radical::sqrt(&beta)?;
                let Some((d, c)) = root.terms().next() else {
                    return Ok(PieceForm::zero());
                };
                let poly = poly.scale(c);
                if d.is_one() {
                    Ok(PieceForm::Poly(poly))
                } else {
                    let d = Rat::from_integer(BigInt::from(d.clone()));
                    Ok(PieceForm::SqrtAffine { poly, alpha: Rat::zero(), beta: d })
                }
            }
        }
    }

    pub fn eval(&self, x: &Rat) -> Result<Radical> {
        match self {
            PieceForm::Poly(p) => Ok(Radical::from_rat(p.eval(x))),
            PieceForm::SqrtAffine { poly, alpha, beta } => {
                let v = poly.eval(x);
                if v.is_zero() {
                    return Ok(Radical::zero());
                }
                Ok(Radical::sqrt(&(alpha * x + beta))?.scale(&v))
            }
        }
    }

    pub fn mul(&self, other: &PieceForm) -> Result<PieceForm> {
        use PieceForm::*;
        match (self, other) {
            (Poly(p), Poly(q)) => Ok(Poly(p * q)),
            (Poly(p), SqrtAffine { poly, alpha, beta }) | (SqrtAffine { poly, alpha, beta }, Poly(p)) => {
                Self::from_parts(p * poly, alpha.clone(), beta.clone())
            }
            (
                SqrtAffine { poly: p, alpha: a1, beta: b1 },
                SqrtAffine { poly: q, alpha: a2, beta: b2 },
            ) => {
                let pq = p * q;
                if let Some(k) = line_ratio((a1, b1), (a2, b2)) {
                    // √L·√(kL) = √k·L
                    let line = super::poly::Poly::linear(a1.clone(), b1.clone());
                    return Self::from_parts(&pq * &line, Rat::zero(), k);
                }
                if a1.is_zero() {
                    return Self::from_parts(pq, b1 * a2, b1 * b2);
                }
                if a2.is_zero() {
                    return Self::from_parts(pq, b2 * a1, b2 * b1);
                }
                Err(Error::UnsupportedProduct(format!(
                    "√({a1}x + {b1}) · √({a2}x + {b2}) has distinct radicand lines"
                )))
            }
        }
    }

    /// `c·form`, as a list of terms that may carry different radicands.
    fn scaled_terms(&self, c: &Radical) -> Result<Vec<PieceForm>> {
        let (alpha, beta) = self.line();
        let poly = self.poly();
        let mut out = Vec::new();
        for (d, cd) in c.terms() {
            let p = poly.scale(cd);
            if d.is_one() {
                out.push(Self::from_parts(p, alpha.clone(), beta.clone())?);
                continue;
            }
            let dq = Rat::from_integer(BigInt::from(d.clone()));
            let term = if alpha.is_zero() {
                // beta is 1 (plain poly) or a squarefree integer: √d·√e = g·√(d'e')
                let e = beta.to_integer().to_biguint().expect("canonical radicand");
                let g: BigUint = d.gcd(&e);
                let f = (d / &g) * (&e / &g);
                Self::from_parts(
                    p.scale(&Rat::from_integer(BigInt::from(g))),
                    Rat::zero(),
                    Rat::from_integer(BigInt::from(f)),
                )?
            } else {
                Self::from_parts(p, &alpha * &dq, &beta * &dq)?
            };
            out.push(term);
        }
        Ok(out)
    }

    /// Collapses a sum of forms into a single form, if they share one radicand up to rational squares.
    fn sum(terms: Vec<PieceForm>) -> Result<PieceForm> {
        let mut groups: Vec<((Rat, Rat), Poly)> = Vec::new();
        for t in terms {
            if t.is_zero() {
                continue;
            }
            let line = t.line();
            let mut placed = false;
            for (gl, gp) in groups.iter_mut() {
                if let Some(k) = line_ratio((&gl.0, &gl.1), (&line.0, &line.1)) {
                    let root = Radical::sqrt(&k)?;
                    if let Some(r) = root.as_rat() {
                        *gp = &*gp + &t.poly().scale(&r);
                        placed = true;
                        break;
                    }
                }
            }
            if !placed {
                groups.push((line, t.poly().clone()));
            }
        }
        groups.retain(|(_, p)| !p.is_zero());
        match groups.len() {
            0 => Ok(PieceForm::zero()),
            1 => {
                let ((alpha, beta), poly) = groups.pop().unwrap();
                if alpha.is_zero() && beta.is_one() {
                    Ok(PieceForm::Poly(poly))
                } else {
                    Self::from_parts(poly, alpha, beta)
                }
            }
            n => Err(Error::UnsupportedCombination(format!(
                "linear combination mixes {n} distinct radicands on one piece"
            ))),
        }
    }

    pub fn scale_add(c1: &Radical, f: &PieceForm, c2: &Radical, g: &PieceForm) -> Result<PieceForm> {
        let mut terms = f.scaled_terms(c1)?;
        terms.extend(g.scaled_terms(c2)?);
        Self::sum(terms)
    }

    /// Exact `∫_lo^hi form(x) dx`.
    pub fn integrate(&self, lo: &Rat, hi: &Rat) -> Result<Radical> {
        match self {
            PieceForm::Poly(p) => Ok(Radical::from_rat(p.integrate(lo, hi))),
            PieceForm::SqrtAffine { poly, alpha, beta } if alpha.is_zero() => {
                Ok(Radical::sqrt(beta)?.scale(&poly.integrate(lo, hi)))
            }
            PieceForm::SqrtAffine { poly, alpha, beta } => {
                // u = αx + β, dx = du/α, poly(x) = P(u).
                // ∫ u^j √u du = 2/(2j+3) · u^(j+1) √u, so the antiderivative is G(u)·√u.
                let inv_alpha = alpha.recip();
                let in_u = poly.compose_affine(&inv_alpha, &(-beta * &inv_alpha));
                let mut g = vec![Rat::zero()];
                for (j, c) in in_u.coeffs().iter().enumerate() {
                    g.push(c * int(2) / int(2 * j as i64 + 3));
                }
                let g = Poly::new(g);
                let at = |x: &Rat| -> Result<Radical> {
                    let u = alpha * x + beta;
                    Ok(Radical::sqrt(&u)?.scale(&g.eval(&u)))
                };
                Ok((at(hi)? - at(lo)?).scale(&inv_alpha))
            }
        }
    }
}

/// `Some(k)` with `k > 0` when line2 = k·line1.
fn line_ratio(l1: (&Rat, &Rat), l2: (&Rat, &Rat)) -> Option<Rat> {
    let k = if !l1.0.is_zero() {
        l2.0 / l1.0
    } else if l2.0.is_zero() && !l1.1.is_zero() {
        l2.1 / l1.1
    } else {
        return None;
    };
    (k.is_positive() && &(l1.0 * &k) == l2.0 && &(l1.1 * &k) == l2.1).then_some(k)
}

/// A formula on `[lo, hi)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Piece {
    pub lo: Rat,
    pub hi: Rat,
    pub form: PieceForm,
}

impl Piece {
    pub fn new(lo: Rat, hi: Rat, form: PieceForm) -> Result<Self> {
        if lo >= hi {
            return Err(Error::InvalidPiece(format!("empty or reversed piece [{lo}, {hi})")));
        }
        let form = form.canonical()?;
        if let PieceForm::SqrtAffine { alpha, beta, .. } = &form {
            for x in [&lo, &hi] {
                if (alpha * x + beta).is_negative() {
                    return Err(Error::InvalidPiece(format!(
                        "radicand {alpha}x + {beta} is negative at {x}"
                    )));
                }
            }
        }
        Ok(Piece { lo, hi, form })
    }

    pub fn poly(lo: Rat, hi: Rat, p: Poly) -> Result<Self> {
        Piece::new(lo, hi, PieceForm::Poly(p))
    }

    pub fn constant(lo: Rat, hi: Rat, c: Rat) -> Result<Self> {
        Piece::new(lo, hi, PieceForm::constant(c))
    }

    pub fn integrate(&self) -> Result<Radical> {
        self.form.integrate(&self.lo, &self.hi)
    }
}
