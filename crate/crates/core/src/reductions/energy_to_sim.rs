//! Energy games as simulation games: player 1 wins from `(q, γ, E)` iff
//! `(q, γ)` is simulated by `(q, E)`.

use crate::models::{
    ActionId, EnergyPos, Oca, OcaConf, OcaRule, OneCounterEnergyGame, Pda, PdaConf, PdaRule, Player,
    PushdownEnergyGame, StateId, Vass, VassConf, VassRule,
};
use crate::solvers::{check_model, SimPair, SolveError};

use super::provenance::{fresh, Clause};

/// The automaton on Spoiler's side, the VASS on Duplicator's side, and the
/// clause behind every generated transition (in transition-id order).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnergyToSim<A> {
    pub spoiler: A,
    pub duplicator: Vass,
    pub spoiler_provenance: Vec<Clause>,
    pub duplicator_provenance: Vec<Clause>,
}

impl EnergyToSim<Pda> {
    pub fn map(&self, pos: &EnergyPos<PdaConf>) -> SimPair<PdaConf, VassConf> {
        SimPair::new(pos.node.clone(), energy_conf(pos.node.state, &pos.energy))
    }
}

impl EnergyToSim<Oca> {
    pub fn map(&self, pos: &EnergyPos<OcaConf>) -> SimPair<OcaConf, VassConf> {
        SimPair::new(pos.node, energy_conf(pos.node.state, &pos.energy))
    }
}

fn energy_conf(state: StateId, energy: &[i32]) -> VassConf {
    VassConf::new(state, energy.iter().map(|&e| e.max(0) as u32).collect())
}

/// A transition as seen by the Duplicator-side builder.
struct Move<'a> {
    src: StateId,
    dst: StateId,
    effect: &'a [i8],
    /// Labels to which player 1 may answer with this move; empty for moves
    /// of player 0.
    answers: Vec<ActionId>,
}

/// Duplicator's VASS: the original states, one choice state per player 1
/// transition, and the universal state. Action `t` is `a_t`.
fn duplicator_side(
    states: &[String],
    actions: &[String],
    moves: &[Move],
    dimension: usize,
    extra: &[(ActionId, Clause)],
) -> (Vass, Vec<Clause>) {
    let mut names = states.to_vec();
    let mut choice = vec![None; moves.len()];
    for (t, m) in moves.iter().enumerate() {
        if !m.answers.is_empty() {
            choice[t] = Some(names.len());
            let name = fresh(&names, format!("{}''t{t}", states[m.src]));
            names.push(name);
        }
    }
    let u = names.len();
    names.push(fresh(&names, "u".into()));
    let zero = vec![0i8; dimension];
    let mut rules = Vec::new();
    let mut prov = Vec::new();
    let mut add = |src, action, dst, effect: Vec<i8>, c| {
        rules.push(VassRule {
            src,
            action,
            dst,
            effect,
        });
        prov.push(c);
    };
    for (t, m) in moves.iter().enumerate() {
        match choice[t] {
            None => add(m.src, t, m.dst, m.effect.to_vec(), Clause::OwnMoveDuplicator),
            Some(c) => {
                for &x in &m.answers {
                    add(m.src, x, c, m.effect.to_vec(), Clause::ChooseTransition);
                }
                add(c, t, m.dst, zero.clone(), Clause::ConfirmChoice);
                for &(x, clause) in extra {
                    add(c, x, c, zero.clone(), clause);
                }
                for b in 0..actions.len() {
                    if b != t && !extra.iter().any(|&(x, _)| x == b) {
                        add(c, b, u, zero.clone(), Clause::MismatchToUniversal);
                    }
                }
            }
        }
    }
    for c in 0..actions.len() {
        add(u, c, u, zero.clone(), Clause::UniversalLoop);
    }
    let vass = Vass {
        dimension,
        states: names,
        actions: actions.to_vec(),
        transitions: rules,
    };
    (vass, prov)
}

fn hats(states: &[String], owner: &[Player]) -> (Vec<String>, Vec<Option<StateId>>) {
    let mut names = states.to_vec();
    let mut hat = vec![None; states.len()];
    for q in 0..states.len() {
        if owner[q] == Player::P1 {
            hat[q] = Some(names.len());
            let name = fresh(&names, format!("^{}", states[q]));
            names.push(name);
        }
    }
    (names, hat)
}

pub fn energy_to_simulation(g: &PushdownEnergyGame) -> Result<EnergyToSim<Pda>, SolveError> {
    check_model(g.validate())?;
    let nt = g.transitions.len();
    let mut actions: Vec<String> = (0..nt).map(|t| format!("t{t}")).collect();
    let top_action = |x: usize| nt + x;
    actions.extend(g.stack_alphabet.iter().map(|x| format!("top:{x}")));
    actions.push("a".into());

    let (states, hat) = hats(&g.states, &g.owner);
    let mut rules = Vec::new();
    let mut prov = Vec::new();
    for (t, r) in g.transitions.iter().enumerate() {
        let (src, clause) = match hat[r.src] {
            None => (r.src, Clause::OwnMoveSpoiler),
            Some(h) => (h, Clause::ImplementChoice),
        };
        rules.push(PdaRule {
            src,
            top: r.top,
            action: t,
            dst: r.dst,
            push: r.push.clone(),
        });
        prov.push(clause);
    }
    for q in 0..g.states.len() {
        if let Some(h) = hat[q] {
            for x in 0..g.stack_alphabet.len() {
                rules.push(PdaRule {
                    src: q,
                    top: x,
                    action: top_action(x),
                    dst: h,
                    push: vec![x],
                });
                prov.push(Clause::AnnounceTop);
            }
        }
    }
    let spoiler = Pda {
        states,
        stack_alphabet: g.stack_alphabet.clone(),
        actions: actions.clone(),
        transitions: rules,
        max_push: g.max_push,
    };

    let moves: Vec<Move> = g
        .transitions
        .iter()
        .map(|r| Move {
            src: r.src,
            dst: r.dst,
            effect: &r.effect,
            answers: match g.owner[r.src] {
                Player::P0 => Vec::new(),
                Player::P1 => vec![top_action(r.top)],
            },
        })
        .collect();
    let (duplicator, dprov) = duplicator_side(&g.states, &actions, &moves, g.dimension, &[]);
    Ok(EnergyToSim {
        spoiler,
        duplicator,
        spoiler_provenance: prov,
        duplicator_provenance: dprov,
    })
}

/// The one-counter case, producing a one-counter automaton. Announcing a
/// positive counter takes a round that decrements and a round that restores
/// the counter, so that the announcement cannot be made at zero.
pub fn one_counter_energy_to_simulation(
    g: &OneCounterEnergyGame,
) -> Result<EnergyToSim<Oca>, SolveError> {
    check_model(g.validate())?;
    let rules: Vec<_> = g.rules().collect();
    let nt = rules.len();
    let mut actions: Vec<String> = (0..nt).map(|t| format!("t{t}")).collect();
    let (a_bot, a_one, a_fix) = (nt, nt + 1, nt + 3);
    actions.extend(["top:bot", "top:one", "a", "restore"].map(String::from));

    let (mut states, hat) = hats(&g.states, &g.owner);
    let mut pending = vec![None; g.states.len()];
    for q in 0..g.states.len() {
        if hat[q].is_some() {
            pending[q] = Some(states.len());
            let name = fresh(&states, format!("^{}-", g.states[q]));
            states.push(name);
        }
    }
    let mut zero = Vec::new();
    let mut plus = Vec::new();
    let mut zprov = Vec::new();
    let mut pprov = Vec::new();
    for &(t, r, is_zero) in &rules {
        let (src, clause) = match hat[r.src] {
            None => (r.src, Clause::OwnMoveSpoiler),
            Some(h) => (h, Clause::ImplementChoice),
        };
        let rule = OcaRule {
            src,
            action: t,
            delta: r.delta,
            dst: r.dst,
        };
        if is_zero {
            zero.push(rule);
            zprov.push(clause);
        } else {
            plus.push(rule);
            pprov.push(clause);
        }
    }
    for q in 0..g.states.len() {
        if let (Some(h), Some(p)) = (hat[q], pending[q]) {
            zero.push(OcaRule {
                src: q,
                action: a_bot,
                delta: 0,
                dst: h,
            });
            zprov.push(Clause::AnnounceTop);
            plus.push(OcaRule {
                src: q,
                action: a_one,
                delta: -1,
                dst: p,
            });
            pprov.push(Clause::AnnounceTop);
            plus.push(OcaRule {
                src: p,
                action: a_fix,
                delta: 1,
                dst: h,
            });
            pprov.push(Clause::ImplementChoice);
        }
    }
    zprov.extend(pprov);
    let spoiler = Oca {
        states,
        actions: actions.clone(),
        delta_plus: plus,
        delta_zero: zero,
        is_net: false,
    };

    let moves: Vec<Move> = rules
        .iter()
        .map(|&(_, r, is_zero)| Move {
            src: r.src,
            dst: r.dst,
            effect: &r.effect,
            answers: match g.owner[r.src] {
                Player::P0 => Vec::new(),
                Player::P1 if is_zero => vec![a_bot],
                Player::P1 if r.delta >= 0 => vec![a_bot, a_one],
                Player::P1 => vec![a_one],
            },
        })
        .collect();
    let (duplicator, dprov) = duplicator_side(
        &g.states,
        &actions,
        &moves,
        g.dimension,
        &[(a_fix, Clause::ConfirmChoice)],
    );
    Ok(EnergyToSim {
        spoiler,
        duplicator,
        spoiler_provenance: zprov,
        duplicator_provenance: dprov,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{Lts, PegRule};
    use crate::solvers::{solve_energy_bounded, solve_simulation_bounded, Bounds, Outcome};

    fn self_loop(effect: i8) -> PushdownEnergyGame {
        PushdownEnergyGame::new(
            vec![("q".into(), Player::P1)],
            vec!["X".into()],
            1,
            vec![PegRule {
                src: 0,
                top: 0,
                dst: 0,
                push: vec![0],
                effect: vec![effect],
            }],
        )
    }

    #[test]
    fn neutral_loop_shapes_and_verdicts() {
        let g = self_loop(0);
        let r = energy_to_simulation(&g).unwrap();
        assert_eq!(r.spoiler.states, ["q", "^q"]);
        assert_eq!(r.duplicator.states, ["q", "q''t0", "u"]);
        assert!(r.spoiler.validate().is_empty());
        assert!(r.duplicator.validate().is_empty());
        let b = Bounds::new(4, 6, 12);
        for e in 0..=3 {
            let pos = g.initial(0, &[0], vec![e]);
            let ev = solve_energy_bounded(&g, &pos, b).unwrap().verdict.outcome();
            let sv = solve_simulation_bounded(&r.spoiler, &r.duplicator, &r.map(&pos), b)
                .unwrap()
                .verdict
                .outcome();
            assert_eq!(ev, Outcome::Win1);
            assert_eq!(sv, Outcome::Win1);
        }
    }

    #[test]
    fn blocked_step_at_zero_energy() {
        let g = self_loop(-1);
        let r = energy_to_simulation(&g).unwrap();
        let pos = g.initial(0, &[0], vec![0]);
        let s = solve_simulation_bounded(&r.spoiler, &r.duplicator, &r.map(&pos), Bounds::new(3, 3, 5)).unwrap();
        assert_eq!(s.verdict.outcome(), Outcome::Win0);
        assert_eq!(s.rounds, Some(1));
    }

    #[test]
    fn one_counter_output_is_an_oca() {
        let g = OneCounterEnergyGame::new(
            vec![("q".into(), Player::P1)],
            1,
            vec![crate::models::OcegRule {
                src: 0,
                delta: 1,
                dst: 0,
                effect: vec![0],
            }],
            vec![],
        );
        let r = one_counter_energy_to_simulation(&g).unwrap();
        assert!(r.spoiler.validate().is_empty());
        assert!(!r.spoiler.is_net || r.spoiler.delta_zero.is_empty());
        assert_eq!(r.spoiler_provenance.len(), r.spoiler.delta_plus.len() + r.spoiler.delta_zero.len());
        assert_eq!(r.duplicator_provenance.len(), r.duplicator.transitions.len());
        let pos = EnergyPos::new(OcaConf::new(0, 0), vec![0]);
        let left = r.map(&pos).left;
        assert!(!r.spoiler.successors(&left).is_empty());
    }
}
