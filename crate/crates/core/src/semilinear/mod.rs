//! Ultimately periodic colorings as finite candidates for simulation
//! relations, their closure check, and the combined decision procedure.

mod check;
mod decide;
mod distill;
mod upc;

pub use check::{check_simulation_candidate, CheckResult, RejectReason, SimPoint};
pub use decide::{enumerate_and_decide, refine_shape, shapes, DecideBudget, Decision, Shape};
pub use distill::{coloring_to_upc, NotDistillable};
pub use upc::{Upc, UpcError};
