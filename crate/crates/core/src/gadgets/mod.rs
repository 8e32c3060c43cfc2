//! Compilers from two-counter machines to pushdown energy games and to
//! OCN/VASS simulation instances.

pub mod corpus;
mod ocn_vass;
mod pushdown;

use serde::{Deserialize, Serialize};

pub use ocn_vass::{mcm_to_ocn_vs_vass, SimulationGadget, ACTIONS};
pub use pushdown::{mcm_to_pushdown_energy, pop_cost, PushdownGadget, RecordKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ExpectedRelation {
    HaltsIffP0Wins,
    HaltsIffNotSimulates,
}
