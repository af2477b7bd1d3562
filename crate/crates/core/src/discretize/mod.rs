//! Rule verification, weight solving, minimality and support reduction.

use std::fmt;
use std::str::FromStr;

use crate::error::Error;

mod bounds;
pub mod linalg;
mod grid;
mod minimality;
mod positivity;
mod reduce;
mod solve;
mod space;
mod verify;

pub use bounds::{
    forced_region_contradiction, support_lower_bound, LowerBoundCertificate, Refinement, SumConstraint, TargetBound,
};
pub use grid::{search_grid, subsets, GridHit, GridOptions};
pub use minimality::{
    decide_min, multiset_count, multisets, recheck_min, region_classes, ExhaustionLevel, Infeasibility,
    MinCertificate, MinOptions, PatternRecord, RegionClass, MERGE_JUSTIFICATION,
};
pub use positivity::{check_no_positive, positive_feasible, Positivity};
pub use reduce::{caratheodory_reduce, ReduceReport, ReduceStep};
pub use solve::{check_inconsistency, moment_matrix, solve_moments, solve_weights, solve_weights_excluding, WeightSolution};
pub use space::{pair_index, pairs, Gram, MomentVec, NamedFn, Rule, Subspace};
pub use verify::{verify_rule, PairResidual, VerifyReport};

/// Whether weights may take any sign or must all be positive.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    Signed,
    Positive,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Signed => "signed",
            Mode::Positive => "positive",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "signed" => Ok(Mode::Signed),
            "positive" => Ok(Mode::Positive),
            other => Err(Error::Parse(format!("unknown mode {other:?}"))),
        }
    }
}
