//! Exact weighted L2 discretization for subspaces of piecewise functions on
//! a real interval with Lebesgue measure.
//!
//! A rule with nodes `ξ_j` and weights `λ_j` discretizes a subspace exactly
//! when `∫ f² = Σ λ_j f(ξ_j)²` for every `f` in the span. By polarization this
//! is equivalent to matching every basis product, `Σ λ_j f_i(ξ_j) f_s(ξ_j) = ⟨f_i, f_s⟩`
//! for all `i ≤ s`, which is what every routine here checks, solves, or
//! certifies. All arithmetic is exact.

pub mod corpus;
pub mod discretize;
pub mod error;
pub mod exactnum;
pub mod format;
pub mod piecewise;

pub use error::{Error, Result};
pub use exactnum::{Radical, RadSign, Rat};
