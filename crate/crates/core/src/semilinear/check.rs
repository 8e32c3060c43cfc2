use serde::{Deserialize, Serialize};

use crate::models::{Lts, Oca, OcaConf, StateId};

use super::upc::{Upc, UpcError};

/// A point `(p m, p' m')` of the coloring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SimPoint {
    pub left: StateId,
    pub m: u32,
    pub right: StateId,
    pub m2: u32,
}

impl SimPoint {
    pub fn new(left: StateId, m: u32, right: StateId, m2: u32) -> Self {
        SimPoint { left, m, right, m2 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum RejectReason {
    /// Spoiler's step to `target` under `action` has no answer landing White.
    #[serde(rename_all = "camelCase")]
    UnmatchedStep { action: String, target_state: StateId, target_counter: u32 },
    RequiredPairNotIncluded,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CheckResult {
    Accepted,
    Rejected { point: SimPoint, reason: RejectReason },
}

impl CheckResult {
    pub fn is_accepted(&self) -> bool {
        matches!(self, CheckResult::Accepted)
    }
}

/// The first Spoiler step from a point with no White answer, if any.
pub(crate) fn unmatched_step(a: &Oca, a_prime: &Oca, u: &Upc, pt: SimPoint) -> Option<RejectReason> {
    let answers = a_prime.successors(&OcaConf::new(pt.right, pt.m2));
    for (act, l) in a.successors(&OcaConf::new(pt.left, pt.m)) {
        let name = &a.actions[act];
        let matched = answers.iter().any(|(b, r)| {
            &a_prime.actions[*b] == name && u.white(l.state, r.state, l.counter as usize, r.counter as usize)
        });
        if !matched {
            return Some(RejectReason::UnmatchedStep {
                action: name.clone(),
                target_state: l.state,
                target_counter: l.counter,
            });
        }
    }
    None
}

fn check_inputs(a: &Oca, a_prime: &Oca, u: &Upc) -> Result<(), UpcError> {
    if !a_prime.is_net {
        return Err(UpcError::NotANet);
    }
    if u.left_states.len() != a.states.len() || u.right_states.len() != a_prime.states.len() {
        return Err(UpcError::InvalidUpc("state sets differ from the machines".into()));
    }
    u.validate()
}

/// Points of the test window that violate closure, in scan order.
pub(crate) fn window_violations(a: &Oca, a_prime: &Oca, u: &Upc, first_only: bool) -> Vec<(SimPoint, RejectReason)> {
    let (wm, wm2) = u.test_window();
    let mut out = Vec::new();
    for p in 0..a.states.len() {
        for q in 0..a_prime.states.len() {
            for m in 0..=wm {
                for m2 in 0..=wm2 {
                    if !u.white(p, q, m, m2) {
                        continue;
                    }
                    let pt = SimPoint::new(p, m as u32, q, m2 as u32);
                    if let Some(r) = unmatched_step(a, a_prime, u, pt) {
                        out.push((pt, r));
                        if first_only {
                            return out;
                        }
                    }
                }
            }
        }
    }
    out
}

/// Whether `u` is a simulation between the OCA `a` and the OCN `a_prime`
/// containing every point of `must_contain`.
///
/// Closure is checked on the test window only. Steps move counters by at
/// most one and Spoiler's zero tests fire only at `m = 0`, so every point
/// outside the window has the same obligations as a representative inside
/// it, up to Duplicator gaining moves when its counter is larger.
pub fn check_simulation_candidate(
    a: &Oca,
    a_prime: &Oca,
    u: &Upc,
    must_contain: &[SimPoint],
) -> Result<CheckResult, UpcError> {
    check_inputs(a, a_prime, u)?;
    for &pt in must_contain {
        if pt.left >= a.states.len() || pt.right >= a_prime.states.len() {
            return Err(UpcError::UnknownPair(pt.left, pt.right));
        }
    }
    for &pt in must_contain {
        if !u.white(pt.left, pt.right, pt.m as usize, pt.m2 as usize) {
            return Ok(CheckResult::Rejected {
                point: pt,
                reason: RejectReason::RequiredPairNotIncluded,
            });
        }
    }
    Ok(match window_violations(a, a_prime, u, true).pop() {
        Some((point, reason)) => CheckResult::Rejected { point, reason },
        None => CheckResult::Accepted,
    })
}
