use std::any::Any;
use std::hash::Hash;

use indexmap::IndexMap;

use crate::models::{ActionId, Lts, Player};

use super::arena::{Arena, Expansion, Kind, UNREACHED};
use super::{check_model, Bounds, SolveError, SolveOptions, Verdict};

/// A position of the simulation game: Spoiler plays on the left system,
/// Duplicator on the right.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimPair<L, R> {
    pub left: L,
    pub right: R,
}

impl<L, R> SimPair<L, R> {
    pub fn new(left: L, right: R) -> Self {
        SimPair { left, right }
    }
}

/// Duplicator to move: Spoiler has played `action` and reached `left`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Response<L, R> {
    pub left: L,
    pub right: R,
    pub action: ActionId,
}

/// Spoiler's move at each pair: the action (of the left system) and the
/// resulting left configuration.
pub type SpoilerStrategy<L, R> = IndexMap<SimPair<L, R>, (ActionId, L)>;

/// Duplicator's answer to each challenge, taken in the game where a right
/// configuration of a monotone system stands for all configurations
/// covering it and a widened left configuration for all it merges.
pub type DuplicatorStrategy<L, R> = IndexMap<Response<L, R>, R>;

#[derive(Clone, Debug)]
pub struct SimSolution<L, R> {
    pub verdict: Verdict<SpoilerStrategy<L, R>, DuplicatorStrategy<L, R>>,
    pub bounds: Bounds,
    pub positions_explored: usize,
    /// Rounds within which Spoiler wins.
    pub rounds: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Node<L, R> {
    Pair(SimPair<L, R>),
    Resp(Response<L, R>),
}

pub fn solve_simulation_bounded<A: Lts, B: Lts>(
    left: &A,
    right: &B,
    pair: &SimPair<A::Conf, B::Conf>,
    bounds: Bounds,
) -> Result<SimSolution<A::Conf, B::Conf>, SolveError> {
    let mut out = solve_simulation_many(left, right, std::slice::from_ref(pair), bounds, SolveOptions::default())?;
    Ok(out.pop().expect("one root"))
}

/// Solve several pairs sharing one pair of arenas.
pub fn solve_simulation_many<A: Lts, B: Lts>(
    left: &A,
    right: &B,
    pairs: &[SimPair<A::Conf, B::Conf>],
    bounds: Bounds,
    opts: SolveOptions,
) -> Result<Vec<SimSolution<A::Conf, B::Conf>>, SolveError> {
    check_model(left.violations())?;
    check_model(right.violations())?;
    if !bounds.is_valid() {
        return Err(SolveError::InvalidBounds);
    }
    // Right action ids translated to left ones by name.
    let lnames = left.action_names();
    let to_left: Vec<Option<ActionId>> = right
        .action_names()
        .iter()
        .map(|n| lnames.iter().position(|m| m == n))
        .collect();
    let same = (left as &dyn Any).downcast_ref::<B>().is_some_and(|l| l == right);
    // With identical systems, a pair whose right side covers its left side is
    // won by Duplicator, who copies Spoiler.
    let covered = |p: &SimPair<A::Conf, B::Conf>| {
        same && (&p.left as &dyn Any)
            .downcast_ref::<B::Conf>()
            .is_some_and(|l| right.covers(&p.right, l))
    };

    let expand = |node: &Node<A::Conf, B::Conf>, saturate: bool| -> Expansion<Node<A::Conf, B::Conf>> {
        match node {
            Node::Pair(p) => {
                if covered(p) {
                    return Expansion::Inner {
                        owner: Player::P0,
                        cost: 1,
                        succ: Vec::new(),
                    };
                }
                let widened = if saturate { left.widened_successors(&p.left, &bounds) } else { None };
                if (widened.is_none() && !left.within(&p.left, &bounds)) || !right.within(&p.right, &bounds) {
                    return Expansion::Frontier;
                }
                let succ = widened
                    .unwrap_or_else(|| left.successors(&p.left))
                    .into_iter()
                    .enumerate()
                    .map(|(i, (a, l))| {
                        (
                            i,
                            Node::Resp(Response {
                                left: l,
                                right: p.right.clone(),
                                action: a,
                            }),
                        )
                    })
                    .collect();
                Expansion::Inner {
                    owner: Player::P0,
                    cost: 1,
                    succ,
                }
            }
            Node::Resp(c) => {
                let succ = right
                    .successors(&c.right)
                    .into_iter()
                    .enumerate()
                    .filter(|(_, (b, _))| to_left[*b] == Some(c.action))
                    .map(|(i, (_, r))| {
                        let r = if saturate {
                            right.saturate(&r, &bounds).unwrap_or(r)
                        } else {
                            r
                        };
                        (i, Node::Pair(SimPair::new(c.left.clone(), r)))
                    })
                    .collect();
                Expansion::Inner {
                    owner: Player::P1,
                    cost: 0,
                    succ,
                }
            }
        }
    };

    let roots: Vec<_> = pairs.iter().cloned().map(Node::Pair).collect();
    let exact = Arena::explore(&roots, opts.position_budget, |n| expand(n, false))?;
    let rank = exact.attractor();

    let sat_roots: Vec<_> = pairs
        .iter()
        .map(|p| {
            let l = left.widen(&p.left, &bounds).unwrap_or_else(|| p.left.clone());
            let r = right.saturate(&p.right, &bounds).unwrap_or_else(|| p.right.clone());
            Node::Pair(SimPair::new(l, r))
        })
        .collect();
    let budget = opts.position_budget.saturating_sub(exact.len()).max(1);
    let sat = Arena::explore(&sat_roots, budget, |n| expand(n, true))?;
    let safe = sat.safe_set();
    let explored = exact.len() + sat.len();

    let round_cap = bounds.round_cap as u32;
    let mut out = Vec::with_capacity(pairs.len());
    for (root, sroot) in roots.iter().zip(&sat_roots) {
        let v = exact.index[root];
        let r = rank[v as usize];
        let (verdict, rounds) = if r != UNREACHED && r <= round_cap {
            let strat = opts.strategies.then(|| {
                let region = exact.strategy_region(v, Player::P0, |u| exact.attractor_choice(&rank, u));
                spoiler_strategy(&exact, region)
            });
            (Verdict::Win0(strat), Some(r))
        } else {
            let sv = sat.index[sroot];
            if safe[sv as usize] {
                let strat = opts.strategies.then(|| {
                    let region = sat.strategy_region(sv, Player::P1, |u| sat.safe_choice(&safe, u));
                    duplicator_strategy(&sat, region)
                });
                (Verdict::Win1(strat), None)
            } else {
                (Verdict::Unknown, None)
            }
        };
        out.push(SimSolution {
            verdict,
            bounds,
            positions_explored: explored,
            rounds,
        });
    }
    Ok(out)
}

fn spoiler_strategy<L: Clone + Eq + Hash, R: Clone + Eq + Hash>(
    arena: &Arena<Node<L, R>>,
    region: Vec<(u32, usize, u32)>,
) -> SpoilerStrategy<L, R> {
    let mut out = IndexMap::new();
    for (v, _, t) in region {
        if let (Node::Pair(p), Node::Resp(c)) = (&arena.positions[v as usize], &arena.positions[t as usize]) {
            out.insert(p.clone(), (c.action, c.left.clone()));
        }
    }
    out
}

fn duplicator_strategy<L: Clone + Eq + Hash, R: Clone + Eq + Hash>(
    arena: &Arena<Node<L, R>>,
    region: Vec<(u32, usize, u32)>,
) -> DuplicatorStrategy<L, R> {
    let mut out = IndexMap::new();
    for (v, _, t) in region {
        debug_assert!(matches!(arena.kind[v as usize], Kind::Inner(Player::P1)));
        if let (Node::Resp(c), Node::Pair(p)) = (&arena.positions[v as usize], &arena.positions[t as usize]) {
            out.insert(c.clone(), p.right.clone());
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{Oca, OcaConf, OcaRule};
    use crate::solvers::Outcome;

    fn loop_net(actions: &[&str], deltas: &[(usize, i8)]) -> Oca {
        Oca::net(
            vec!["s".into()],
            actions.iter().map(|s| s.to_string()).collect(),
            deltas
                .iter()
                .map(|&(a, d)| OcaRule {
                    src: 0,
                    action: a,
                    delta: d,
                    dst: 0,
                })
                .collect(),
        )
    }

    fn pair(l: u32, r: u32) -> SimPair<OcaConf, OcaConf> {
        SimPair::new(OcaConf::new(0, l), OcaConf::new(0, r))
    }

    #[test]
    fn identical_nets_are_similar() {
        let n = loop_net(&["a"], &[(0, 1), (0, -1)]);
        let s = solve_simulation_bounded(&n, &n, &pair(0, 0), Bounds::new(5, 5, 5)).unwrap();
        assert_eq!(s.verdict.outcome(), Outcome::Win1);
    }

    #[test]
    fn extra_action_wins_in_one_round() {
        let l = loop_net(&["a", "b"], &[(0, 0), (1, 0)]);
        let r = loop_net(&["a"], &[(0, 0)]);
        let s = solve_simulation_bounded(&l, &r, &pair(0, 0), Bounds::new(5, 5, 5)).unwrap();
        assert_eq!(s.verdict.outcome(), Outcome::Win0);
        assert_eq!(s.rounds, Some(1));
    }

    #[test]
    fn decrement_loop_against_neutral_loop() {
        let p = loop_net(&["a"], &[(0, -1)]);
        let q = loop_net(&["a"], &[(0, 0)]);
        let b = Bounds::new(10, 10, 10);
        let s = solve_simulation_bounded(&p, &q, &pair(3, 0), b).unwrap();
        assert_eq!(s.verdict.outcome(), Outcome::Win1);
        let s = solve_simulation_bounded(&q, &p, &pair(0, 3), b).unwrap();
        assert_eq!(s.verdict.outcome(), Outcome::Win0);
        assert_eq!(s.rounds, Some(4));
    }

    /// Brute-force approximants: `k` rounds suffice for Spoiler iff
    /// `table[k][l][r]`, on the single-state nets above with counters ≤ 10.
    #[test]
    fn rounds_match_brute_force_approximants() {
        let q = loop_net(&["a"], &[(0, 0)]);
        let p = loop_net(&["a"], &[(0, -1)]);
        // Spoiler on q at any counter, Duplicator on p at counter r: Spoiler
        // wins in exactly r + 1 rounds.
        let mut wins = vec![vec![false; 11]; 12];
        for k in 1..12 {
            for r in 0..11 {
                wins[k][r] = r == 0 || wins[k - 1][r - 1];
            }
        }
        for r in 0..=6u32 {
            let s = solve_simulation_bounded(&q, &p, &pair(0, r), Bounds::new(10, 10, 20)).unwrap();
            let least = (1..12).find(|&k| wins[k][r as usize]).unwrap() as u32;
            assert_eq!(s.rounds, Some(least));
        }
    }

    #[test]
    fn round_cap_limits_spoiler() {
        let q = loop_net(&["a"], &[(0, 0)]);
        let p = loop_net(&["a"], &[(0, -1)]);
        let s = solve_simulation_bounded(&q, &p, &pair(0, 3), Bounds::new(10, 10, 3)).unwrap();
        assert_eq!(s.verdict.outcome(), Outcome::Unknown);
    }
}
