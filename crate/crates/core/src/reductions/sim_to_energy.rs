//! Simulation games as energy games: `(q0, γ)` is simulated by `(q1, E)` iff
//! player 1 wins from `((q0, q1, 0), γ, E)`.

use crate::models::{
    EnergyPos, Lts, Oca, OcaConf, OcegRule, OneCounterEnergyGame, Pda, PdaConf, PegRule, Player,
    PushdownEnergyGame, StateId, Vass, VassConf, DEFAULT_MAX_PUSH,
};
use crate::solvers::{check_model, SimPair, SolveError};

use super::provenance::{fresh, Clause};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimToEnergy<G> {
    pub game: G,
    /// Clause of every transition, in transition-id order.
    pub provenance: Vec<Clause>,
    left_states: usize,
    right_states: usize,
    actions: usize,
}

impl<G> SimToEnergy<G> {
    /// Id of the player 0 state `(q0, q1, 0)`.
    pub fn spoiler_state(&self, q0: StateId, q1: StateId) -> StateId {
        q0 * self.right_states + q1
    }

    /// Id of the player 1 state `(q0, q1, a)`.
    pub fn duplicator_state(&self, q0: StateId, q1: StateId, a: usize) -> StateId {
        self.left_states * self.right_states + (q0 * self.right_states + q1) * self.actions + a
    }
}

impl SimToEnergy<PushdownEnergyGame> {
    pub fn map(&self, pair: &SimPair<PdaConf, VassConf>) -> EnergyPos<PdaConf> {
        let node = PdaConf {
            state: self.spoiler_state(pair.left.state, pair.right.state),
            stack: pair.left.stack.clone(),
        };
        EnergyPos::new(node, pair.right.vector.iter().map(|&c| c as i32).collect())
    }
}

impl SimToEnergy<OneCounterEnergyGame> {
    pub fn map(&self, pair: &SimPair<OcaConf, VassConf>) -> EnergyPos<OcaConf> {
        let node = OcaConf::new(self.spoiler_state(pair.left.state, pair.right.state), pair.left.counter);
        EnergyPos::new(node, pair.right.vector.iter().map(|&c| c as i32).collect())
    }
}

/// Player 1 actions are the left actions; VASS actions are matched by name.
fn product_states<A: Lts>(a: &A, left_states: &[String], v: &Vass) -> Vec<(String, Player)> {
    let mut names: Vec<String> = Vec::new();
    let mut out = Vec::new();
    for q0 in left_states {
        for q1 in &v.states {
            let n = fresh(&names, format!("{q0}|{q1}|0"));
            names.push(n.clone());
            out.push((n, Player::P0));
        }
    }
    for q0 in left_states {
        for q1 in &v.states {
            for act in a.action_names() {
                let n = fresh(&names, format!("{q0}|{q1}|{act}"));
                names.push(n.clone());
                out.push((n, Player::P1));
            }
        }
    }
    out
}

fn right_to_left(left: &[String], v: &Vass) -> Vec<Option<usize>> {
    v.actions.iter().map(|n| left.iter().position(|m| m == n)).collect()
}

pub fn simulation_to_energy(a: &Pda, v: &Vass) -> Result<SimToEnergy<PushdownEnergyGame>, SolveError> {
    check_model(a.validate())?;
    check_model(v.validate())?;
    let mut out = SimToEnergy {
        game: PushdownEnergyGame::new(product_states(a, &a.states, v), a.stack_alphabet.clone(), v.dimension, Vec::new()),
        provenance: Vec::new(),
        left_states: a.states.len(),
        right_states: v.states.len(),
        actions: a.actions.len(),
    };
    out.game.max_push = a.max_push.max(DEFAULT_MAX_PUSH);
    let zero = vec![0i8; v.dimension];
    let mut rules = Vec::new();
    let mut prov = Vec::new();
    for t in &a.transitions {
        for q1 in 0..v.states.len() {
            rules.push(PegRule {
                src: out.spoiler_state(t.src, q1),
                top: t.top,
                dst: out.duplicator_state(t.dst, q1, t.action),
                push: t.push.clone(),
                effect: zero.clone(),
            });
            prov.push(Clause::SpoilerStep);
        }
    }
    let to_left = right_to_left(&a.actions, v);
    for t in &v.transitions {
        let Some(act) = to_left[t.action] else { continue };
        for q0 in 0..a.states.len() {
            for x in 0..a.stack_alphabet.len() {
                rules.push(PegRule {
                    src: out.duplicator_state(q0, t.src, act),
                    top: x,
                    dst: out.spoiler_state(q0, t.dst),
                    push: vec![x],
                    effect: t.effect.clone(),
                });
                prov.push(Clause::DuplicatorStep);
            }
        }
    }
    for q in 0..out.game.states.len() {
        let (effect, clause) = match out.game.owner[q] {
            Player::P0 => (zero.clone(), Clause::IdleLoop),
            Player::P1 => (vec![-1; v.dimension], Clause::DrainLoop),
        };
        for x in 0..a.stack_alphabet.len() {
            rules.push(PegRule {
                src: q,
                top: x,
                dst: q,
                push: vec![x],
                effect: effect.clone(),
            });
            prov.push(clause);
        }
    }
    out.game.transitions = rules;
    out.provenance = prov;
    Ok(out)
}

/// The one-counter case: an OCA against a VASS gives a one-counter energy
/// game.
pub fn oca_simulation_to_energy(a: &Oca, v: &Vass) -> Result<SimToEnergy<OneCounterEnergyGame>, SolveError> {
    check_model(a.validate())?;
    check_model(v.validate())?;
    let mut out = SimToEnergy {
        game: OneCounterEnergyGame::new(product_states(a, &a.states, v), v.dimension, Vec::new(), Vec::new()),
        provenance: Vec::new(),
        left_states: a.states.len(),
        right_states: v.states.len(),
        actions: a.actions.len(),
    };
    let zero = vec![0i8; v.dimension];
    let (mut dz, mut dp) = (Vec::new(), Vec::new());
    let (mut pz, mut pp) = (Vec::new(), Vec::new());
    for (_, t, is_zero) in a.rules() {
        for q1 in 0..v.states.len() {
            let rule = OcegRule {
                src: out.spoiler_state(t.src, q1),
                delta: t.delta,
                dst: out.duplicator_state(t.dst, q1, t.action),
                effect: zero.clone(),
            };
            if is_zero {
                dz.push(rule);
                pz.push(Clause::SpoilerStep);
            } else {
                dp.push(rule);
                pp.push(Clause::SpoilerStep);
            }
        }
    }
    let to_left = right_to_left(&a.actions, v);
    for t in &v.transitions {
        let Some(act) = to_left[t.action] else { continue };
        for q0 in 0..a.states.len() {
            dp.push(OcegRule {
                src: out.duplicator_state(q0, t.src, act),
                delta: 0,
                dst: out.spoiler_state(q0, t.dst),
                effect: t.effect.clone(),
            });
            pp.push(Clause::DuplicatorStep);
        }
    }
    for q in 0..out.game.states.len() {
        let (effect, clause) = match out.game.owner[q] {
            Player::P0 => (zero.clone(), Clause::IdleLoop),
            Player::P1 => (vec![-1; v.dimension], Clause::DrainLoop),
        };
        dp.push(OcegRule {
            src: q,
            delta: 0,
            dst: q,
            effect,
        });
        pp.push(clause);
    }
    out.game.delta_plus = dp;
    out.game.delta_zero = dz;
    pz.extend(pp);
    out.provenance = pz;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{OcaRule, VassRule};
    use crate::solvers::{solve_energy_bounded, Bounds, Outcome};

    fn one_state_net(actions: &[&str]) -> Oca {
        Oca::net(
            vec!["s".into()],
            actions.iter().map(|s| s.to_string()).collect(),
            (0..actions.len())
                .map(|a| OcaRule {
                    src: 0,
                    action: a,
                    delta: 0,
                    dst: 0,
                })
                .collect(),
        )
    }

    #[test]
    fn identical_systems_give_player1_wins() {
        let a = one_state_net(&["a"]);
        let v = a.to_vass().unwrap();
        let r = oca_simulation_to_energy(&a, &v).unwrap();
        assert!(r.game.validate().is_empty());
        for e in 0..=3 {
            let pair = SimPair::new(OcaConf::new(0, 0), VassConf::new(0, vec![e]));
            let s = solve_energy_bounded(&r.game, &r.map(&pair), Bounds::new(3, 5, 3)).unwrap();
            assert_eq!(s.verdict.outcome(), Outcome::Win1);
        }
    }

    #[test]
    fn extra_spoiler_action_drains_the_energy() {
        let a = one_state_net(&["a", "b"]);
        let v = Vass {
            dimension: 1,
            states: vec!["s".into()],
            actions: vec!["a".into()],
            transitions: vec![VassRule {
                src: 0,
                action: 0,
                dst: 0,
                effect: vec![0],
            }],
        };
        let r = oca_simulation_to_energy(&a, &v).unwrap();
        let pair = SimPair::new(OcaConf::new(0, 0), VassConf::new(0, vec![2]));
        let s = solve_energy_bounded(&r.game, &r.map(&pair), Bounds::new(3, 5, 3)).unwrap();
        assert_eq!(s.verdict.outcome(), Outcome::Win0);
    }

    #[test]
    fn pushdown_version_validates() {
        let a = Pda::new(
            vec!["p".into()],
            vec!["X".into()],
            vec!["a".into()],
            vec![crate::models::PdaRule {
                src: 0,
                top: 0,
                action: 0,
                dst: 0,
                push: vec![0, 0],
            }],
        );
        let v = one_state_net(&["a"]).to_vass().unwrap();
        let r = simulation_to_energy(&a, &v).unwrap();
        assert!(r.game.validate().is_empty());
        assert_eq!(r.provenance.len(), r.game.transitions.len());
    }
}
