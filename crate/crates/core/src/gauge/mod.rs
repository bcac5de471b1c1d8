//! Gauge actions.
//!
//! The classical action lets `z in K^x` scale a degree-`n` element by `z^n`.
//! Over small fields it forgets most of the grading. The schematic action
//! instead lets the units of every commutative test algebra `R` act on
//! `A (x) R`; a degree-`n` term `a (x) r` becomes `a (x) z^n r`. The whole
//! action is determined by its value at the universal unit `x` of
//! `K[x, x^-1]`, and from that value the grading is read off directly.

mod action;
mod comodule;
mod extension;

use thiserror::Error;

use crate::lpa::LpaError;
use crate::scalars::{AlgebraError, TestAlgebra};

pub use action::{
    classical_apply, classical_eigenspace, classical_eigenspace_with_units, recover_component, GaugeAction, GaugeSpace,
};
pub use comodule::{
    comodule_to_idempotents, grading_to_comodule, ComoduleJson, ComoduleMap, IdempotentSystem, RepresentationDefect,
};
pub use extension::{Extension, LpaTensor};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GaugeError {
    #[error("the classical action is only defined for nonzero scalars")]
    ZeroScalar,
    #[error("{0} is not a unit of its test algebra")]
    NotAUnit(String),
    #[error("{element} is not in the group of {group}-points over {algebra}")]
    NotInGroup {
        element: String,
        group: GradingGroup,
        algebra: TestAlgebra,
    },
    #[error("{0}")]
    InvalidGroup(String),
    #[error("the unit group of the field is infinite; supply a sampling bound")]
    InfiniteUnitGroup,
    #[error("the comodule map is not a representation: {0}")]
    NotARepresentation(RepresentationDefect),
    #[error("expected {expected} coordinates, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("coefficients must live in {expected}, found {found}")]
    WrongTestAlgebra { expected: TestAlgebra, found: TestAlgebra },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Lpa(#[from] LpaError),
}

/// The grading group: `Z`, or `Z_n` for a coarsened grading.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GradingGroup {
    Integers,
    Cyclic(u64),
}

impl GradingGroup {
    pub fn cyclic(n: u64) -> Result<Self, GaugeError> {
        if n == 0 {
            return Err(AlgebraError::InvalidOrder.into());
        }
        Ok(GradingGroup::Cyclic(n))
    }

    /// The group algebra `K Lambda` that represents the diagonalizable group.
    pub fn representing_algebra(&self) -> TestAlgebra {
        match *self {
            GradingGroup::Integers => TestAlgebra::Laurent,
            GradingGroup::Cyclic(n) => TestAlgebra::Cyclic(n),
        }
    }

    /// Canonical representative of `d` in the group.
    pub fn reduce(&self, d: i64) -> i64 {
        match *self {
            GradingGroup::Integers => d,
            GradingGroup::Cyclic(n) => d.rem_euclid(n as i64),
        }
    }
}

impl std::fmt::Display for GradingGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GradingGroup::Integers => write!(f, "Z"),
            GradingGroup::Cyclic(n) => write!(f, "Z{n}"),
        }
    }
}

impl std::str::FromStr for GradingGroup {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let t = s.trim();
        if t == "Z" {
            return Ok(GradingGroup::Integers);
        }
        let n = t
            .strip_prefix("Z")
            .and_then(|r| r.strip_prefix('_').or(Some(r)))
            .and_then(|r| r.parse::<u64>().ok())
            .filter(|&n| n >= 1)
            .ok_or_else(|| format!("unknown grading group `{s}` (expected Z or Z<n>)"))?;
        Ok(GradingGroup::Cyclic(n))
    }
}
