//! Bounded three-valued solvers for energy games and simulation games.

pub(crate) mod arena;
mod energy;
mod refine;
mod simulation;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::models::{ModelError, Violation};

pub use energy::{solve_energy_bounded, solve_energy_many, EnergySolution, EnergyStrategy};
pub use refine::{refine_energy, refine_simulation};
pub use simulation::{
    solve_simulation_bounded, solve_simulation_many, DuplicatorStrategy, Response, SimPair,
    SimSolution, SpoilerStrategy,
};

pub const DEFAULT_POSITION_BUDGET: usize = 5_000_000;

/// Truncation parameters of a bounded solve.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Bounds {
    pub counter_cap: usize,
    pub energy_cap: usize,
    pub round_cap: usize,
}

impl Bounds {
    pub fn new(counter_cap: usize, energy_cap: usize, round_cap: usize) -> Self {
        Bounds {
            counter_cap,
            energy_cap,
            round_cap,
        }
    }

    pub fn is_valid(&self) -> bool {
        self.counter_cap >= 1 && self.energy_cap >= 1 && self.round_cap >= 1
    }

    /// Coordinatewise `self <= other`.
    pub fn dominated_by(&self, other: &Bounds) -> bool {
        self.counter_cap <= other.counter_cap
            && self.energy_cap <= other.energy_cap
            && self.round_cap <= other.round_cap
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict<S0, S1> {
    Win0(Option<S0>),
    Win1(Option<S1>),
    Unknown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Outcome {
    Win0,
    Win1,
    Unknown,
}

impl Outcome {
    pub fn is_definite(self) -> bool {
        self != Outcome::Unknown
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Outcome::Win0 => "Win0",
            Outcome::Win1 => "Win1",
            Outcome::Unknown => "Unknown",
        }
    }
}

impl<S0, S1> Verdict<S0, S1> {
    pub fn outcome(&self) -> Outcome {
        match self {
            Verdict::Win0(_) => Outcome::Win0,
            Verdict::Win1(_) => Outcome::Win1,
            Verdict::Unknown => Outcome::Unknown,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolveOptions {
    pub position_budget: usize,
    pub strategies: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            position_budget: DEFAULT_POSITION_BUDGET,
            strategies: true,
        }
    }
}

impl SolveOptions {
    pub fn without_strategies(self) -> Self {
        SolveOptions {
            strategies: false,
            ..self
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolveError {
    #[error("invalid model: {0:?}")]
    InvalidModel(Vec<Violation>),
    #[error("arena exceeds the position budget of {budget}")]
    CapacityExceeded { budget: usize },
    #[error("kind mismatch: {0}")]
    KindMismatch(String),
    #[error("bounds must be at least 1 in every coordinate")]
    InvalidBounds,
    #[error("initial position is not valid: {0}")]
    InvalidPosition(String),
    #[error("new bounds do not dominate the previous ones")]
    BoundsNotLarger,
    #[error("refinement contradicts a definite verdict: {before:?} became {after:?}")]
    RefinementContradiction { before: Outcome, after: Outcome },
}

impl From<ModelError> for SolveError {
    fn from(e: ModelError) -> Self {
        match e {
            ModelError::InvalidModel(v) => SolveError::InvalidModel(v),
            ModelError::KindMismatch => {
                SolveError::KindMismatch("configuration does not match machine".into())
            }
        }
    }
}

pub(crate) fn check_model(violations: Vec<Violation>) -> Result<(), SolveError> {
    if violations.is_empty() {
        Ok(())
    } else {
        Err(SolveError::InvalidModel(violations))
    }
}
