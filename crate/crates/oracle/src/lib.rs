//! Reference computations kept apart from the main implementation, for tests:
//! floating-point quadrature at a few hundred bits, rational elimination, and a
//! brute-force minimal rule search over raw step-function data.

pub mod brute;
pub mod hp;
pub mod quad;
pub mod ratlin;
