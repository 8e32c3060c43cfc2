//! Seeded random machines. The defaults give small dense instances where
//! every state has moves for every action; lowering `density` gives
//! sparser ones.

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::models::{Oca, OcaRule, OcegRule, OneCounterEnergyGame, Player, Vass, VassRule};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct GenConfig {
    pub min_states: usize,
    pub max_states: usize,
    pub actions: usize,
    /// Most transitions per state and action.
    pub max_branch: usize,
    /// Chance that a state and action pair gets any transitions at all.
    pub density: f64,
    /// Chance of an extra zero-test rule per state of an automaton.
    pub zero_tests: f64,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig {
            min_states: 2,
            max_states: 4,
            actions: 2,
            max_branch: 2,
            density: 0.9,
            zero_tests: 0.3,
        }
    }
}

/// The generator for instance `index` of a campaign seeded by `seed`.
pub fn instance_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

fn names(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

fn unit(rng: &mut ChaCha8Rng) -> i8 {
    rng.random_range(-1..=1)
}

/// `(src, action, dst)` triples with at least one per state.
fn skeleton(rng: &mut ChaCha8Rng, states: usize, cfg: &GenConfig) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for s in 0..states {
        let before = out.len();
        for a in 0..cfg.actions {
            if rng.random_bool(cfg.density) {
                for _ in 0..rng.random_range(1..=cfg.max_branch) {
                    out.push((s, a, rng.random_range(0..states)));
                }
            }
        }
        if out.len() == before {
            out.push((s, rng.random_range(0..cfg.actions), rng.random_range(0..states)));
        }
    }
    out
}

fn state_count(rng: &mut ChaCha8Rng, cfg: &GenConfig) -> usize {
    rng.random_range(cfg.min_states..=cfg.max_states)
}

pub fn random_oca(rng: &mut ChaCha8Rng, cfg: &GenConfig, is_net: bool) -> Oca {
    let n = state_count(rng, cfg);
    let delta_plus = skeleton(rng, n, cfg)
        .into_iter()
        .map(|(src, action, dst)| OcaRule {
            src,
            action,
            delta: unit(rng),
            dst,
        })
        .collect();
    let mut delta_zero = Vec::new();
    if !is_net {
        for src in 0..n {
            if rng.random_bool(cfg.zero_tests) {
                delta_zero.push(OcaRule {
                    src,
                    action: rng.random_range(0..cfg.actions),
                    delta: rng.random_range(0..=1),
                    dst: rng.random_range(0..n),
                });
            }
        }
    }
    Oca {
        states: names("p", n),
        actions: names("a", cfg.actions),
        delta_plus,
        delta_zero,
        is_net,
    }
}

pub fn random_vass(rng: &mut ChaCha8Rng, cfg: &GenConfig, dimension: usize) -> Vass {
    let n = state_count(rng, cfg);
    let transitions = skeleton(rng, n, cfg)
        .into_iter()
        .map(|(src, action, dst)| VassRule {
            src,
            action,
            dst,
            effect: (0..dimension).map(|_| unit(rng)).collect(),
        })
        .collect();
    Vass {
        dimension,
        states: names("q", n),
        actions: names("a", cfg.actions),
        transitions,
    }
}

/// A one-dimensional one-counter energy game with `min_states..=max_states`
/// states per player, repaired to be deadlock free.
pub fn random_oceg(rng: &mut ChaCha8Rng, cfg: &GenConfig) -> OneCounterEnergyGame {
    let n0 = state_count(rng, cfg);
    let n1 = state_count(rng, cfg);
    let mut states: Vec<(String, Player)> = names("u", n0).into_iter().map(|s| (s, Player::P0)).collect();
    states.extend(names("v", n1).into_iter().map(|s| (s, Player::P1)));
    let n = n0 + n1;
    let one_action = GenConfig { actions: 1, ..*cfg };
    let delta_plus = skeleton(rng, n, &one_action)
        .into_iter()
        .map(|(src, _, dst)| OcegRule {
            src,
            delta: unit(rng),
            dst,
            effect: vec![unit(rng)],
        })
        .collect();
    let mut delta_zero = Vec::new();
    for src in 0..n {
        if rng.random_bool(cfg.zero_tests) {
            delta_zero.push(OcegRule {
                src,
                delta: rng.random_range(0..=1),
                dst: rng.random_range(0..n),
                effect: vec![unit(rng)],
            });
        }
    }
    OneCounterEnergyGame::new(states, 1, delta_plus, delta_zero).complete_with_self_loops()
}
