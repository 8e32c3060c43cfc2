use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coloring::{compute_coloring_with, detect_periodic_parameters, Fill};
use crate::models::{Oca, OcaConf};
use crate::solvers::{solve_simulation_many, Bounds, SimPair, SolveOptions, SpoilerStrategy, Verdict};

use super::check::{check_simulation_candidate, window_violations, SimPoint};
use super::distill::coloring_to_upc;
use super::upc::{Upc, UpcError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct DecideBudget {
    /// Largest window threshold `M`, `M'` tried by the enumeration.
    pub max_window: usize,
    /// Largest period `P`, `P'` and shift tried by the enumeration.
    pub max_period: usize,
    /// Bounds of the first negative round; later rounds double them.
    pub solver_bounds: Bounds,
    #[serde(with = "millis")]
    pub wall_clock: Duration,
    pub max_stages: usize,
}

mod millis {
    use std::time::Duration;

    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_u64(d.as_millis() as u64)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Duration, D::Error> {
        u64::deserialize(d).map(Duration::from_millis)
    }
}

impl Default for DecideBudget {
    fn default() -> Self {
        DecideBudget {
            max_window: 6,
            max_period: 2,
            solver_bounds: Bounds::new(8, 8, 16),
            wall_clock: Duration::from_secs(20),
            max_stages: 4,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Decision {
    Win1(Upc),
    Win0 {
        strategy: Option<SpoilerStrategy<OcaConf, OcaConf>>,
        rounds: u32,
        bounds: Bounds,
    },
    BudgetExhausted {
        stages: usize,
    },
}

impl Decision {
    pub fn as_str(&self) -> &'static str {
        match self {
            Decision::Win1(_) => "Win1",
            Decision::Win0 { .. } => "Win0",
            Decision::BudgetExhausted { .. } => "BudgetExhausted",
        }
    }
}

/// `(M, P, M', P', shift)`.
pub type Shape = (usize, usize, usize, usize, usize);

/// Shapes within the budget, by description size then lexicographically.
pub fn shapes(pairs: usize, max_window: usize, max_period: usize) -> Vec<Shape> {
    let mut out = Vec::new();
    for m in 0..=max_window {
        for p in 1..=max_period.min(m + 1) {
            for m2 in 0..=max_window {
                for p2 in 1..=max_period.min(m2 + 1) {
                    for shift in 0..=max_period {
                        out.push((m, p, m2, p2, shift));
                    }
                }
            }
        }
    }
    let size = |&(m, p, m2, p2, shift): &Shape| pairs * (m + 1) * (m2 + 1) + p + p2 + shift;
    out.sort_by_key(|s| (size(s), *s));
    out
}

/// The largest coloring of the given shape reached by blackening violating
/// representatives, starting from all White; `None` once `pair` turns Black.
pub fn refine_shape(a: &Oca, a_prime: &Oca, shape: Shape, pair: SimPoint) -> Option<Upc> {
    let mut u = Upc::from_fn(a.states.clone(), a_prime.states.clone(), shape, |_, _, _, _| true).ok()?;
    loop {
        if !u.white(pair.left, pair.right, pair.m as usize, pair.m2 as usize) {
            return None;
        }
        let bad = window_violations(a, a_prime, &u, false);
        if bad.is_empty() {
            return Some(u);
        }
        for (pt, _) in bad {
            if let Some((i, j)) = u.representative(pt.m as usize, pt.m2 as usize) {
                // A Black cell in the vertical period recurs arbitrarily high,
                // so the whole column goes.
                let top = if j + u.p2 > u.m2 { u.m2 } else { j };
                for jj in 0..=top {
                    u.set_window_cell(pt.left, pt.right, i, jj, false);
                }
            }
        }
    }
}

/// Two semi-decision procedures run in stages: bounded solving with growing
/// bounds for non-simulation, and candidate colorings for simulation (small
/// shapes by enumeration, larger ones distilled from grids). Only certified
/// answers are returned.
pub fn enumerate_and_decide(a: &Oca, a_prime: &Oca, pair: SimPoint, budget: &DecideBudget) -> Result<Decision, UpcError> {
    // Reject malformed inputs up front.
    check_simulation_candidate(a, a_prime, &Upc::all_black(a.states.clone(), a_prime.states.clone()), &[pair])?;
    let start = Instant::now();
    let out_of_time = || start.elapsed() >= budget.wall_clock;
    let root = SimPair::new(OcaConf::new(pair.left, pair.m), OcaConf::new(pair.right, pair.m2));
    let all_shapes = shapes(a.states.len() * a_prime.states.len(), budget.max_window, budget.max_period);
    let mut next_shape = 0;
    let mut solver_ok = true;

    for stage in 0..budget.max_stages {
        if out_of_time() {
            return Ok(Decision::BudgetExhausted { stages: stage });
        }
        let b = budget.solver_bounds;
        let bounds = Bounds::new(b.counter_cap << stage, b.energy_cap << stage, b.round_cap << stage);
        if solver_ok {
            match solve_simulation_many(a, a_prime, std::slice::from_ref(&root), bounds, SolveOptions::default()) {
                Ok(mut sols) => {
                    let s = sols.pop().expect("one root");
                    if let Verdict::Win0(strategy) = s.verdict {
                        return Ok(Decision::Win0 {
                            strategy,
                            rounds: s.rounds.unwrap_or(0),
                            bounds,
                        });
                    }
                }
                Err(_) => solver_ok = false,
            }
        }
        if out_of_time() {
            return Ok(Decision::BudgetExhausted { stages: stage });
        }

        let chunk = 32usize << stage;
        let end = (next_shape + chunk).min(all_shapes.len());
        let found = all_shapes[next_shape..end]
            .par_iter()
            .find_map_first(|&s| refine_shape(a, a_prime, s, pair));
        next_shape = end;
        if let Some(u) = found {
            if check_simulation_candidate(a, a_prime, &u, &[pair])?.is_accepted() {
                return Ok(Decision::Win1(u));
            }
        }

        let g = 6 + 6 * stage;
        let grid_bounds = Bounds::new(bounds.counter_cap.max(g + 4), bounds.energy_cap.max(g + 4), bounds.round_cap);
        let opts = SolveOptions::default().without_strategies();
        if let Ok(grid) = compute_coloring_with(a, a_prime, g, g, grid_bounds, Fill::Shortcut, opts) {
            if let Ok(params) = detect_periodic_parameters(&grid) {
                if let Ok(u) = coloring_to_upc(&grid, &params) {
                    if check_simulation_candidate(a, a_prime, &u, &[pair])?.is_accepted() {
                        return Ok(Decision::Win1(u));
                    }
                }
            }
        }
    }
    Ok(Decision::BudgetExhausted {
        stages: budget.max_stages,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::OcaRule;

    fn single(actions: &[&str], rules: &[(usize, i8)]) -> Oca {
        Oca::net(
            vec!["s".into()],
            actions.iter().map(|s| s.to_string()).collect(),
            rules
                .iter()
                .map(|&(action, delta)| OcaRule {
                    src: 0,
                    action,
                    delta,
                    dst: 0,
                })
                .collect(),
        )
    }

    #[test]
    fn action_mismatch_is_won_by_spoiler_at_once() {
        let a = single(&["a", "b"], &[(0, 0), (1, 0)]);
        let b = single(&["a"], &[(0, 0)]);
        let d = enumerate_and_decide(&a, &b, SimPoint::new(0, 0, 0, 0), &DecideBudget::default()).unwrap();
        assert!(matches!(d, Decision::Win0 { rounds: 1, .. }), "{d:?}");
    }

    #[test]
    fn identical_machines_get_the_all_white_coloring() {
        let a = single(&["a"], &[(0, 1), (0, 0)]);
        let d = enumerate_and_decide(&a, &a, SimPoint::new(0, 2, 0, 0), &DecideBudget::default()).unwrap();
        assert_eq!(d, Decision::Win1(Upc::all_white(a.states.clone(), a.states.clone())));
    }

    #[test]
    fn staircase_is_certified() {
        let a = single(&["a"], &[(0, -1)]);
        let d = enumerate_and_decide(&a, &a, SimPoint::new(0, 4, 0, 6), &DecideBudget::default()).unwrap();
        let Decision::Win1(u) = d else { panic!("{d:?}") };
        assert!(u.white(0, 0, 4, 6));
        let d = enumerate_and_decide(&a, &a, SimPoint::new(0, 5, 0, 3), &DecideBudget::default()).unwrap();
        assert!(matches!(d, Decision::Win0 { .. }));
    }

    #[test]
    fn shapes_are_ordered_by_size() {
        let s = shapes(1, 2, 2);
        assert_eq!(s[0], (0, 1, 0, 1, 0));
        let size = |&(m, p, m2, p2, d): &Shape| (m + 1) * (m2 + 1) + p + p2 + d;
        assert!(s.windows(2).all(|w| size(&w[0]) <= size(&w[1])));
    }
}
