//! Exact piecewise functions on a rational interval: pieces are polynomials
//! or polynomial·√(affine), evaluated, multiplied and integrated in closed
//! form against Lebesgue measure.

mod function;
mod piece;
mod poly;
mod support;

pub use function::{BreakpointLimits, PiecewiseFn};
pub use piece::{Piece, PieceForm};
pub use poly::Poly;
pub use support::{Interval, Support};
