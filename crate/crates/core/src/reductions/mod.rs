//! Executable versions of the constructions relating energy games,
//! simulation games, and one-counter nets.

mod energy_to_sim;
mod oca_to_ocn;
mod provenance;
mod sim_to_energy;

pub use energy_to_sim::{energy_to_simulation, one_counter_energy_to_simulation, EnergyToSim};
pub use oca_to_ocn::{oca_ocn_to_ocn_ocn, OcaToOcn, OcaToOcnParams, OcnReductionError, ParamsError};
pub use provenance::{Clause, Reduction};
pub use sim_to_energy::{oca_simulation_to_energy, simulation_to_energy, SimToEnergy};
