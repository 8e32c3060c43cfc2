//! Spoiler's net keeps `z = x + y` while Duplicator's VASS keeps the two
//! machine counters; Duplicator picks the branch of every test and Spoiler
//! may challenge a zero claim by racing `z` against the other counter.

use crate::models::{Mcm, McmRule, ModelError, Oca, OcaConf, OcaRule, StateId, Vass, VassConf, VassRule};
use crate::solvers::SimPair;

use super::ExpectedRelation;

pub const ACTIONS: [&str; 5] = ["a", "z", "nz", "c", "h"];
const A: usize = 0;
const Z: usize = 1;
const NZ: usize = 2;
const C: usize = 3;
const H: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimulationGadget {
    pub spoiler: Oca,
    pub duplicator: Vass,
    pub initial: SimPair<OcaConf, VassConf>,
    pub expected: ExpectedRelation,
    pub spoiler_provenance: Vec<String>,
    pub duplicator_provenance: Vec<String>,
}

fn unit(counter: u8, d: i8) -> Vec<i8> {
    if counter == 1 {
        vec![d, 0]
    } else {
        vec![0, d]
    }
}

pub fn mcm_to_ocn_vs_vass(m: &Mcm) -> Result<SimulationGadget, ModelError> {
    let v = m.validate();
    if !v.is_empty() {
        return Err(ModelError::InvalidModel(v));
    }
    let actions: Vec<String> = ACTIONS.iter().map(|s| s.to_string()).collect();
    let mut sa: Vec<String> = m.states.clone();
    let mut sv: Vec<String> = m.states.clone();
    let mut ra: Vec<(OcaRule, String)> = Vec::new();
    let mut rv: Vec<(VassRule, String)> = Vec::new();
    let push = |names: &mut Vec<String>, n: String| -> StateId {
        names.push(n);
        names.len() - 1
    };
    let check_a = [push(&mut sa, "check:c1".into()), push(&mut sa, "check:c2".into())];
    let check_v = [push(&mut sv, "check:c1".into()), push(&mut sv, "check:c2".into())];
    let u = push(&mut sv, "U".into());
    let oca = |src, action, delta, dst| OcaRule {
        src,
        action,
        delta,
        dst,
    };
    let vass = |src, action, dst, effect| VassRule {
        src,
        action,
        dst,
        effect,
    };

    for e in &m.rules {
        let q = e.state;
        let name = &m.states[q];
        match e.rule {
            McmRule::Inc { counter, dst } => {
                ra.push((oca(q, A, 1, dst), format!("increment c{counter} at {name}")));
                rv.push((vass(q, A, dst, unit(counter, 1)), format!("increment c{counter} at {name}")));
            }
            McmRule::Test {
                counter,
                if_zero,
                if_pos,
            } => {
                let hat = push(&mut sa, format!("^{name}"));
                let q1 = push(&mut sv, format!("{name}#zero"));
                let q2 = push(&mut sv, format!("{name}#pos"));
                let k = counter as usize - 1;
                ra.push((oca(q, A, 0, hat), format!("test c{counter} at {name}")));
                rv.push((vass(q, A, q1, vec![0, 0]), format!("zero claim for c{counter} at {name}")));
                rv.push((vass(q, A, q2, unit(counter, -1)), format!("nonzero claim for c{counter} at {name}")));
                ra.push((oca(hat, NZ, -1, if_pos), format!("accept nonzero claim at {name}")));
                rv.push((vass(q2, NZ, if_pos, vec![0, 0]), format!("nonzero claim accepted at {name}")));
                ra.push((oca(hat, Z, 0, if_zero), format!("accept zero claim at {name}")));
                rv.push((vass(q1, Z, if_zero, vec![0, 0]), format!("zero claim accepted at {name}")));
                rv.push((vass(q2, Z, u, vec![0, 0]), format!("spurious zero acceptance at {name}")));
                rv.push((vass(q1, NZ, u, vec![0, 0]), format!("spurious nonzero acceptance at {name}")));
                ra.push((oca(hat, C, 0, check_a[k]), format!("challenge zero claim at {name}")));
                rv.push((vass(q1, C, check_v[k], vec![0, 0]), format!("zero claim challenged at {name}")));
                rv.push((vass(q2, C, u, vec![0, 0]), format!("spurious challenge at {name}")));
            }
        }
    }
    for c in 1..=2u8 {
        let k = c as usize - 1;
        ra.push((oca(check_a[k], C, -1, check_a[k]), format!("challenge for c{c} counts down z")));
        // A zero claim on c1 is checked by racing z against y, and vice versa.
        rv.push((
            vass(check_v[k], C, check_v[k], unit(3 - c, -1)),
            format!("challenge for c{c} counts down the other counter"),
        ));
    }
    for (i, a) in actions.iter().enumerate() {
        rv.push((vass(u, i, u, vec![0, 0]), format!("universal state answers {a}")));
    }
    ra.push((oca(m.halt, H, 0, m.halt), "halt detector".into()));

    let (rules_a, spoiler_provenance): (Vec<_>, Vec<_>) = ra.into_iter().unzip();
    let (rules_v, duplicator_provenance): (Vec<_>, Vec<_>) = rv.into_iter().unzip();
    Ok(SimulationGadget {
        spoiler: Oca::net(sa, actions.clone(), rules_a),
        duplicator: Vass {
            dimension: 2,
            states: sv,
            actions,
            transitions: rules_v,
        },
        initial: SimPair::new(OcaConf::new(m.init, 0), VassConf::new(m.init, vec![0, 0])),
        expected: ExpectedRelation::HaltsIffNotSimulates,
        spoiler_provenance,
        duplicator_provenance,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gadgets::corpus;
    use crate::models::{McmEntry, Violation};
    use crate::solvers::{solve_simulation_bounded, Bounds, Outcome};

    #[test]
    fn outputs_validate() {
        for (name, m) in corpus::all() {
            let g = mcm_to_ocn_vs_vass(&m).unwrap();
            assert_eq!(g.spoiler.validate(), Vec::<Violation>::new(), "{name}");
            assert_eq!(g.duplicator.validate(), Vec::<Violation>::new(), "{name}");
            assert_eq!(g.spoiler_provenance.len(), g.spoiler.delta_plus.len());
            assert_eq!(g.duplicator_provenance.len(), g.duplicator.transitions.len());
        }
    }

    #[test]
    fn honest_zero_claim_survives_the_challenge() {
        // First rule tests c1 at (0, 0); the zero claim is true.
        let m = Mcm {
            states: vec!["q".into(), "r".into(), "h".into()],
            init: 0,
            halt: 2,
            rules: vec![
                McmEntry {
                    state: 0,
                    rule: McmRule::Test {
                        counter: 1,
                        if_zero: 1,
                        if_pos: 0,
                    },
                },
                McmEntry {
                    state: 1,
                    rule: McmRule::Inc { counter: 2, dst: 1 },
                },
            ],
        };
        let g = mcm_to_ocn_vs_vass(&m).unwrap();
        let check = g.spoiler.states.iter().position(|s| s == "check:c1").unwrap();
        let check_v = g.duplicator.states.iter().position(|s| s == "check:c1").unwrap();
        let pair = SimPair::new(OcaConf::new(check, 0), VassConf::new(check_v, vec![0, 0]));
        let s = solve_simulation_bounded(&g.spoiler, &g.duplicator, &pair, Bounds::new(10, 10, 40)).unwrap();
        assert_eq!(s.verdict.outcome(), Outcome::Win1);
    }

    #[test]
    fn halt3_is_not_simulated() {
        let g = mcm_to_ocn_vs_vass(&corpus::halt3()).unwrap();
        let s = solve_simulation_bounded(&g.spoiler, &g.duplicator, &g.initial, Bounds::new(10, 10, 40)).unwrap();
        assert_eq!(s.verdict.outcome(), Outcome::Win0);
    }
}
