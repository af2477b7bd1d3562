//! Exact scalars: rationals and rational combinations of square roots of
//! squarefree integers, with decidable equality and sign.

use std::sync::atomic::{AtomicU64, Ordering};

mod radical;
mod rat;
mod sign;
mod squarefree;

pub use radical::Radical;
pub use rat::{fmt_rat, int, is_integer, midpoint, parse_rat, rat, rat_to_f64, Rat};
pub use sign::RadSign;
pub use squarefree::{is_squarefree, split_square};

pub const DEFAULT_START_PRECISION_BITS: u64 = 64;
pub const DEFAULT_TRIAL_DIVISION_BOUND: u64 = 1_000_000;

static START_PRECISION_BITS: AtomicU64 = AtomicU64::new(DEFAULT_START_PRECISION_BITS);
static TRIAL_DIVISION_BOUND: AtomicU64 = AtomicU64::new(DEFAULT_TRIAL_DIVISION_BOUND);

/// Starting precision (bits per square root) for sign refinement.
pub fn start_precision_bits() -> u64 {
    START_PRECISION_BITS.load(Ordering::Relaxed)
}

pub fn set_start_precision_bits(bits: u64) {
    START_PRECISION_BITS.store(bits.max(1), Ordering::Relaxed);
}

pub fn trial_division_bound() -> u64 {
    TRIAL_DIVISION_BOUND.load(Ordering::Relaxed)
}

pub fn set_trial_division_bound(bound: u64) {
    TRIAL_DIVISION_BOUND.store(bound.max(2), Ordering::Relaxed);
}
