use indexmap::IndexMap;

use crate::models::{EnergyArena, EnergyPos, Player};

use super::arena::{Arena, Expansion, Kind, UNREACHED};
use super::{check_model, Bounds, SolveError, SolveOptions, Verdict};

/// For each position of the winner reached under the strategy: the chosen
/// transition id and the resulting position.
pub type EnergyStrategy<N> = IndexMap<EnergyPos<N>, (usize, EnergyPos<N>)>;

#[derive(Clone, Debug)]
pub struct EnergySolution<N> {
    pub verdict: Verdict<EnergyStrategy<N>, EnergyStrategy<N>>,
    pub bounds: Bounds,
    pub positions_explored: usize,
    /// Number of steps within which Player 0 forces bankruptcy.
    pub steps_to_win: Option<u32>,
}

pub fn solve_energy_bounded<G: EnergyArena>(
    game: &G,
    init: &EnergyPos<G::Node>,
    bounds: Bounds,
) -> Result<EnergySolution<G::Node>, SolveError> {
    let mut out = solve_energy_many(game, std::slice::from_ref(init), bounds, SolveOptions::default())?;
    Ok(out.pop().expect("one root"))
}

/// Solve several initial positions sharing one pair of arenas.
pub fn solve_energy_many<G: EnergyArena>(
    game: &G,
    inits: &[EnergyPos<G::Node>],
    bounds: Bounds,
    opts: SolveOptions,
) -> Result<Vec<EnergySolution<G::Node>>, SolveError> {
    check_model(game.violations())?;
    if !bounds.is_valid() {
        return Err(SolveError::InvalidBounds);
    }
    for p in inits {
        if p.energy.len() != game.dimension() || p.bankrupt() {
            return Err(SolveError::InvalidPosition(game.describe(p)));
        }
    }
    let (cap_h, cap_e) = (bounds.counter_cap, bounds.energy_cap as i32);

    let exact = Arena::explore(inits, opts.position_budget, |p: &EnergyPos<G::Node>| {
        if p.bankrupt() {
            return Expansion::Goal;
        }
        if game.height(&p.node) > cap_h || p.energy.iter().any(|&e| e > cap_e) {
            return Expansion::Frontier;
        }
        let (owner, succ) = game.game_moves(p);
        if succ.is_empty() {
            return Expansion::Frontier;
        }
        Expansion::Inner {
            owner,
            cost: 1,
            succ,
        }
    })?;
    let rank = exact.attractor();

    let clamp = |p: &EnergyPos<G::Node>| EnergyPos {
        node: p.node.clone(),
        energy: p.energy.iter().map(|&e| e.min(cap_e)).collect(),
    };
    let clamped_roots: Vec<_> = inits.iter().map(clamp).collect();
    let budget = opts.position_budget.saturating_sub(exact.len()).max(1);
    let clamped = Arena::explore(&clamped_roots, budget, |p: &EnergyPos<G::Node>| {
        if p.bankrupt() {
            return Expansion::Goal;
        }
        if game.height(&p.node) > cap_h {
            return Expansion::Frontier;
        }
        let (owner, succ) = game.game_moves(p);
        if succ.is_empty() {
            return Expansion::Frontier;
        }
        Expansion::Inner {
            owner,
            cost: 1,
            succ: succ.into_iter().map(|(t, q)| (t, clamp(&q))).collect(),
        }
    })?;
    let safe = clamped.safe_set();
    let explored = exact.len() + clamped.len();

    let mut out = Vec::with_capacity(inits.len());
    for (init, croot) in inits.iter().zip(&clamped_roots) {
        let root = exact.index[init];
        let r = rank[root as usize];
        let (verdict, steps_to_win) = if r != UNREACHED {
            let strat = opts.strategies.then(|| {
                collect(&exact, exact.strategy_region(root, Player::P0, |v| exact.attractor_choice(&rank, v)))
            });
            (Verdict::Win0(strat), Some(r))
        } else {
            let croot = clamped.index[croot];
            if safe[croot as usize] {
                let strat = opts.strategies.then(|| {
                    collect(&clamped, clamped.strategy_region(croot, Player::P1, |v| clamped.safe_choice(&safe, v)))
                });
                (Verdict::Win1(strat), None)
            } else {
                (Verdict::Unknown, None)
            }
        };
        out.push(EnergySolution {
            verdict,
            bounds,
            positions_explored: explored,
            steps_to_win,
        });
    }
    Ok(out)
}

fn collect<N: Clone + Eq + std::hash::Hash>(
    arena: &Arena<EnergyPos<N>>,
    region: Vec<(u32, usize, u32)>,
) -> EnergyStrategy<N> {
    region
        .into_iter()
        .filter(|&(v, _, _)| matches!(arena.kind[v as usize], Kind::Inner(_)))
        .map(|(v, label, t)| {
            (
                arena.positions[v as usize].clone(),
                (label, arena.positions[t as usize].clone()),
            )
        })
        .collect()
}
