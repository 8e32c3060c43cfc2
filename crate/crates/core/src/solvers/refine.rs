use crate::models::{EnergyArena, EnergyPos, Lts};

use super::{
    solve_energy_many, solve_simulation_many, Bounds, EnergySolution, Outcome, SimPair,
    SimSolution, SolveError, SolveOptions,
};

fn check(prev_bounds: &Bounds, larger: &Bounds) -> Result<(), SolveError> {
    if !prev_bounds.dominated_by(larger) {
        return Err(SolveError::BoundsNotLarger);
    }
    Ok(())
}

fn keep(before: Outcome, after: Outcome) -> Result<(), SolveError> {
    if before.is_definite() && before != after {
        return Err(SolveError::RefinementContradiction { before, after });
    }
    Ok(())
}

/// Re-solve an energy game at larger bounds.
pub fn refine_energy<G: EnergyArena>(
    previous: &EnergySolution<G::Node>,
    game: &G,
    init: &EnergyPos<G::Node>,
    larger: Bounds,
    opts: SolveOptions,
) -> Result<EnergySolution<G::Node>, SolveError> {
    let before = previous.verdict.outcome();
    check(&previous.bounds, &larger)?;
    let next = solve_energy_many(game, std::slice::from_ref(init), larger, opts)?
        .pop()
        .expect("one root");
    keep(before, next.verdict.outcome())?;
    Ok(next)
}

/// Re-solve a simulation game at larger bounds.
pub fn refine_simulation<A: Lts, B: Lts>(
    previous: &SimSolution<A::Conf, B::Conf>,
    left: &A,
    right: &B,
    pair: &SimPair<A::Conf, B::Conf>,
    larger: Bounds,
    opts: SolveOptions,
) -> Result<SimSolution<A::Conf, B::Conf>, SolveError> {
    let before = previous.verdict.outcome();
    check(&previous.bounds, &larger)?;
    let next = solve_simulation_many(left, right, std::slice::from_ref(pair), larger, opts)?
        .pop()
        .expect("one root");
    keep(before, next.verdict.outcome())?;
    Ok(next)
}
