//! Energy games and simulation games over pushdown, one-counter and vector
//! addition systems: models, bounded solvers, reductions between the two
//! game types, colorings of one-counter simulation, and undecidability
//! gadgets.

pub mod models;
pub mod solvers;
pub mod reductions;
pub mod coloring;
pub mod semilinear;
pub mod gadgets;
pub mod io;
pub mod gen;
pub mod batch;
