//! Verdicts of single solves in the JSON form printed by the CLI.

use serde::{Deserialize, Serialize};

use crate::models::{EnergyArena, Lts};
use crate::solvers::{Bounds, EnergySolution, Outcome, SimSolution, Verdict};

/// One strategy entry. Simulation pairs are written `(left, right)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct StrategyMove {
    pub at: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub action: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub transition: Option<usize>,
    pub to: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct VerdictReport {
    pub verdict: Outcome,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub strategy: Option<Vec<StrategyMove>>,
    pub bounds_used: Bounds,
    pub positions_explored: usize,
    /// Steps or rounds within which Player 0 wins.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rounds: Option<u32>,
}

pub fn energy_report<G: EnergyArena>(game: &G, sol: &EnergySolution<G::Node>) -> VerdictReport {
    let strategy = match &sol.verdict {
        Verdict::Win0(Some(s)) | Verdict::Win1(Some(s)) => Some(
            s.iter()
                .map(|(p, (tid, q))| StrategyMove {
                    at: game.describe(p),
                    action: None,
                    transition: Some(*tid),
                    to: game.describe(q),
                })
                .collect(),
        ),
        _ => None,
    };
    VerdictReport {
        verdict: sol.verdict.outcome(),
        strategy,
        bounds_used: sol.bounds,
        positions_explored: sol.positions_explored,
        rounds: sol.steps_to_win,
    }
}

pub fn simulation_report<A: Lts, B: Lts>(left: &A, right: &B, sol: &SimSolution<A::Conf, B::Conf>) -> VerdictReport {
    let pair = |l: &A::Conf, r: &B::Conf| format!("({}, {})", left.describe(l), right.describe(r));
    let strategy = match &sol.verdict {
        Verdict::Win0(Some(s)) => Some(
            s.iter()
                .map(|(p, (a, l))| StrategyMove {
                    at: pair(&p.left, &p.right),
                    action: Some(left.action_names()[*a].clone()),
                    transition: None,
                    to: left.describe(l),
                })
                .collect(),
        ),
        Verdict::Win1(Some(s)) => Some(
            s.iter()
                .map(|(resp, r)| StrategyMove {
                    at: pair(&resp.left, &resp.right),
                    action: Some(left.action_names()[resp.action].clone()),
                    transition: None,
                    to: right.describe(r),
                })
                .collect(),
        ),
        _ => None,
    };
    VerdictReport {
        verdict: sol.verdict.outcome(),
        strategy,
        bounds_used: sol.bounds,
        positions_explored: sol.positions_explored,
        rounds: sol.rounds,
    }
}
