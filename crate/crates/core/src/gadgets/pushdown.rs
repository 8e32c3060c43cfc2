//! Player 1 writes a run of the counter machine on the stack; Player 0 may
//! challenge any test step with a gadget that pops the record and settles
//! the claim through the energy.

use crate::models::{
    EnergyPos, Mcm, McmRule, ModelError, PdaConf, PegRule, Player, PushdownEnergyGame, StateId, SymbolId,
};

use super::ExpectedRelation;

/// How a stack record bears on counter `c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RecordKind {
    Increments(u8),
    Decrements(u8),
    /// Zero-branch of a test, which leaves the counter unchanged.
    Keeps,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PushdownGadget {
    pub game: PushdownEnergyGame,
    pub expected: ExpectedRelation,
    /// One note per transition.
    pub provenance: Vec<String>,
    /// Record symbols, with the bottom symbol at index 0.
    pub records: Vec<(String, RecordKind)>,
    pub init: StateId,
    pub bottom: SymbolId,
}

impl PushdownGadget {
    pub fn initial(&self, credit: i32) -> EnergyPos<PdaConf> {
        self.game.initial(self.init, &[self.bottom], vec![credit])
    }

    /// Gadget state for `kind` (1 or 2) and counter `c`.
    pub fn gadget_state(&self, kind: u8, c: u8) -> StateId {
        let name = format!("gadget{kind}:c{c}");
        self.game.states.iter().position(|s| *s == name).expect("gadget state")
    }
}

/// Energy change when the gadget of `kind` for counter `c` pops a record.
pub fn pop_cost(kind: u8, c: u8, record: RecordKind) -> i8 {
    match (kind, record) {
        (1, RecordKind::Increments(i)) if i == c => -2,
        (1, RecordKind::Decrements(i)) if i == c => 0,
        (2, RecordKind::Increments(i)) if i == c => 0,
        (2, RecordKind::Decrements(i)) if i == c => -2,
        _ => -1,
    }
}

/// Edges of the machine's transition graph: `(src, label, kind, dst,
/// challenge)` where `challenge` is the gadget `(type, counter)` a record
/// of this edge may be challenged with.
type Edge = (StateId, String, RecordKind, StateId, Option<(u8, u8)>);

fn edges(m: &Mcm) -> Vec<Edge> {
    let mut out = Vec::new();
    for (l, e) in m.rules.iter().enumerate() {
        match e.rule {
            McmRule::Inc { counter, dst } => {
                out.push((e.state, format!("t{l}:c{counter}"), RecordKind::Increments(counter), dst, None));
            }
            McmRule::Test {
                counter,
                if_zero,
                if_pos,
            } => {
                // A zero claim is refuted if the counter is positive (type 1),
                // a positive claim if the counter is zero (type 2).
                out.push((e.state, format!("t{l}=0:c{counter}"), RecordKind::Keeps, if_zero, Some((1, counter))));
                out.push((
                    e.state,
                    format!("t{l}>0:c{counter}"),
                    RecordKind::Decrements(counter),
                    if_pos,
                    Some((2, counter)),
                ));
            }
        }
    }
    out
}

pub fn mcm_to_pushdown_energy(m: &Mcm) -> Result<PushdownGadget, ModelError> {
    let v = m.validate();
    if !v.is_empty() {
        return Err(ModelError::InvalidModel(v));
    }
    let edges = edges(m);
    let mut states: Vec<(String, Player)> = m.states.iter().map(|s| (s.clone(), Player::P1)).collect();
    let inter: Vec<StateId> = edges
        .iter()
        .map(|(_, label, ..)| {
            states.push((format!("s[{label}]"), Player::P0));
            states.len() - 1
        })
        .collect();
    // Each gadget has a second state finishing its -2 pops, since effects
    // are limited to one unit per step.
    let mut gadget = [[0; 2]; 2];
    let mut second = [[0; 2]; 2];
    for kind in 0..2 {
        for c in 0..2 {
            states.push((format!("gadget{}:c{}", kind + 1, c + 1), Player::P0));
            gadget[kind][c] = states.len() - 1;
            states.push((format!("gadget{}:c{}-2", kind + 1, c + 1), Player::P0));
            second[kind][c] = states.len() - 1;
        }
    }

    let mut records = vec![("bot".to_string(), RecordKind::Keeps)];
    records.extend(edges.iter().map(|(_, label, kind, ..)| (label.clone(), *kind)));
    let alphabet: Vec<String> = records.iter().map(|(n, _)| n.clone()).collect();
    let ng = alphabet.len();
    let bottom = 0;
    let record = |i: usize| i + 1;

    let mut rules = Vec::new();
    let mut prov = Vec::new();
    let mut add = |rule: PegRule, note: String| {
        rules.push(rule);
        prov.push(note);
    };
    for (i, (src, label, _, dst, challenge)) in edges.iter().enumerate() {
        for y in 0..ng {
            add(
                PegRule {
                    src: *src,
                    top: y,
                    dst: inter[i],
                    push: vec![record(i), y],
                    effect: vec![1],
                },
                format!("player 1 pushes {label}"),
            );
        }
        for y in 0..ng {
            add(
                PegRule {
                    src: inter[i],
                    top: y,
                    dst: *dst,
                    push: vec![y],
                    effect: vec![0],
                },
                format!("player 0 accepts {label}"),
            );
        }
        if let Some((kind, c)) = challenge {
            add(
                PegRule {
                    src: inter[i],
                    top: record(i),
                    dst: gadget[*kind as usize - 1][*c as usize - 1],
                    push: vec![record(i)],
                    effect: vec![0],
                },
                format!("player 0 challenges {label} with gadget {kind} for c{c}"),
            );
        }
    }
    for kind in 1..=2u8 {
        for c in 1..=2u8 {
            let g = gadget[kind as usize - 1][c as usize - 1];
            let g2 = second[kind as usize - 1][c as usize - 1];
            for (y, (name, rk)) in records.iter().enumerate().skip(1) {
                let cost = pop_cost(kind, c, *rk);
                add(
                    PegRule {
                        src: g,
                        top: y,
                        dst: if cost == -2 { g2 } else { g },
                        push: Vec::new(),
                        effect: vec![cost.max(-1)],
                    },
                    format!("gadget {kind} for c{c} pops {name} at {cost}"),
                );
            }
            for y in 0..ng {
                add(
                    PegRule {
                        src: g2,
                        top: y,
                        dst: g,
                        push: vec![y],
                        effect: vec![-1],
                    },
                    format!("gadget {kind} for c{c} completes a pop at -2"),
                );
            }
            add(
                PegRule {
                    src: g,
                    top: bottom,
                    dst: m.init,
                    push: vec![bottom],
                    effect: vec![0],
                },
                format!("gadget {kind} for c{c} returns to the initial state"),
            );
        }
    }
    for y in 0..ng {
        add(
            PegRule {
                src: m.halt,
                top: y,
                dst: m.halt,
                push: vec![y],
                effect: vec![-1],
            },
            "halting state drains the energy".into(),
        );
    }

    let mut game = PushdownEnergyGame::new(states, alphabet, 1, rules);
    game.max_push = 2;
    Ok(PushdownGadget {
        game,
        expected: ExpectedRelation::HaltsIffP0Wins,
        provenance: prov,
        records,
        init: m.init,
        bottom,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gadgets::corpus;
    use crate::models::{McmEntry, Violation};
    use crate::solvers::{solve_energy_bounded, Bounds, Outcome};

    #[test]
    fn outputs_validate() {
        for (name, m) in corpus::all() {
            let g = mcm_to_pushdown_energy(&m).unwrap();
            assert_eq!(g.game.validate(), Vec::<Violation>::new(), "{name}");
            assert_eq!(g.provenance.len(), g.game.transitions.len());
        }
    }

    #[test]
    fn halting_initial_state_drains_at_once() {
        let m = Mcm {
            states: vec!["h".into(), "x".into()],
            init: 0,
            halt: 0,
            rules: vec![McmEntry {
                state: 1,
                rule: McmRule::Inc { counter: 1, dst: 0 },
            }],
        };
        let g = mcm_to_pushdown_energy(&m).unwrap();
        let s = solve_energy_bounded(&g.game, &g.initial(0), Bounds::new(12, 12, 12)).unwrap();
        assert_eq!(s.verdict.outcome(), Outcome::Win0);
        assert!(s.steps_to_win.unwrap() <= 2);
    }

    #[test]
    fn pop_costs_follow_the_gadget_types() {
        assert_eq!(pop_cost(1, 1, RecordKind::Increments(1)), -2);
        assert_eq!(pop_cost(1, 1, RecordKind::Decrements(1)), 0);
        assert_eq!(pop_cost(2, 1, RecordKind::Increments(1)), 0);
        assert_eq!(pop_cost(2, 1, RecordKind::Decrements(1)), -2);
        assert_eq!(pop_cost(2, 1, RecordKind::Increments(2)), -1);
        assert_eq!(pop_cost(1, 2, RecordKind::Keeps), -1);
    }

    #[test]
    fn invalid_machine_is_rejected() {
        let mut m = corpus::halt3();
        m.rules.clear();
        assert!(matches!(mcm_to_pushdown_energy(&m), Err(ModelError::InvalidModel(_))));
    }
}
