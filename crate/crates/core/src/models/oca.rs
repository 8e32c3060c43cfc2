use super::{
    check_index, check_names, undeclared_action, undeclared_state, ActionId, Lts, StateId, Vass,
    VassConf, VassRule, Violation,
};
use crate::solvers::Bounds;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OcaRule {
    pub src: StateId,
    pub action: ActionId,
    pub delta: i8,
    pub dst: StateId,
}

/// One-counter automaton; a one-counter net when `is_net` is set.
///
/// Transition ids number the zero-test rules first, then the rules of
/// `delta_plus`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Oca {
    pub states: Vec<String>,
    pub actions: Vec<String>,
    pub delta_plus: Vec<OcaRule>,
    pub delta_zero: Vec<OcaRule>,
    pub is_net: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OcaConf {
    pub state: StateId,
    pub counter: u32,
}

impl OcaConf {
    pub fn new(state: StateId, counter: u32) -> Self {
        OcaConf { state, counter }
    }
}

impl Oca {
    pub fn net(states: Vec<String>, actions: Vec<String>, delta_plus: Vec<OcaRule>) -> Self {
        Oca {
            states,
            actions,
            delta_plus,
            delta_zero: Vec::new(),
            is_net: true,
        }
    }

    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        check_names(&self.states, &mut out);
        check_names(&self.actions, &mut out);
        if self.is_net && !self.delta_zero.is_empty() {
            out.push(Violation::NetHasZeroTest);
        }
        let (ns, na) = (self.states.len(), self.actions.len());
        let zero = self.delta_zero.iter().map(|t| (t, 0..=1));
        let plus = self.delta_plus.iter().map(|t| (t, -1..=1));
        for (i, (t, range)) in zero.chain(plus).enumerate() {
            let ctx = || format!("transition {i}");
            check_index(undeclared_state, ns, t.src, ctx, &mut out);
            check_index(undeclared_state, ns, t.dst, ctx, &mut out);
            check_index(undeclared_action, na, t.action, ctx, &mut out);
            if !range.contains(&t.delta) {
                out.push(Violation::DeltaOutOfRange {
                    transition: i,
                    delta: t.delta,
                });
            }
        }
        out
    }

    /// `(transition id, rule, is_zero_test)` in id order.
    pub fn rules(&self) -> impl Iterator<Item = (usize, &OcaRule, bool)> {
        let nz = self.delta_zero.len();
        self.delta_zero
            .iter()
            .enumerate()
            .map(|(i, t)| (i, t, true))
            .chain(self.delta_plus.iter().enumerate().map(move |(i, t)| (nz + i, t, false)))
    }

    /// The equivalent one-dimensional VASS of a net.
    pub fn to_vass(&self) -> Option<Vass> {
        if !self.is_net {
            return None;
        }
        Some(Vass {
            dimension: 1,
            states: self.states.clone(),
            actions: self.actions.clone(),
            transitions: self
                .delta_plus
                .iter()
                .map(|t| VassRule {
                    src: t.src,
                    action: t.action,
                    dst: t.dst,
                    effect: vec![t.delta],
                })
                .collect(),
        })
    }

    pub fn conf_to_vass(conf: &OcaConf) -> VassConf {
        VassConf {
            state: conf.state,
            vector: vec![conf.counter],
        }
    }
}

impl Lts for Oca {
    type Conf = OcaConf;

    fn action_names(&self) -> &[String] {
        &self.actions
    }

    fn successors(&self, conf: &OcaConf) -> Vec<(ActionId, OcaConf)> {
        let mut out = Vec::new();
        for (_, t, zero) in self.rules() {
            if t.src != conf.state {
                continue;
            }
            if zero {
                if conf.counter == 0 {
                    out.push((t.action, OcaConf::new(t.dst, t.delta as u32)));
                }
            } else {
                let next = conf.counter as i64 + t.delta as i64;
                if next >= 0 {
                    out.push((t.action, OcaConf::new(t.dst, next as u32)));
                }
            }
        }
        out
    }

    fn within(&self, conf: &OcaConf, bounds: &Bounds) -> bool {
        conf.counter as usize <= bounds.counter_cap
    }

    fn saturate(&self, conf: &OcaConf, bounds: &Bounds) -> Option<OcaConf> {
        self.is_net.then(|| OcaConf {
            state: conf.state,
            counter: conf.counter.min(bounds.counter_cap as u32),
        })
    }

    /// Counters above the cap collapse to `cap + 1`, read as "more than
    /// the cap".
    fn widen(&self, conf: &OcaConf, bounds: &Bounds) -> Option<OcaConf> {
        let top = bounds.counter_cap as u32 + 1;
        Some(OcaConf::new(conf.state, conf.counter.min(top)))
    }

    fn widened_successors(&self, conf: &OcaConf, bounds: &Bounds) -> Option<Vec<(ActionId, OcaConf)>> {
        let top = bounds.counter_cap as u32 + 1;
        if conf.counter < top {
            let succ = self.successors(conf);
            return Some(succ.into_iter().map(|(a, c)| (a, OcaConf::new(c.state, c.counter.min(top)))).collect());
        }
        let mut out = Vec::new();
        for (_, t, zero) in self.rules() {
            if t.src != conf.state || zero {
                continue;
            }
            if t.delta < 0 {
                out.push((t.action, OcaConf::new(t.dst, top - 1)));
            }
            out.push((t.action, OcaConf::new(t.dst, top)));
        }
        Some(out)
    }

    fn covers(&self, big: &OcaConf, small: &OcaConf) -> bool {
        if self.is_net {
            big.state == small.state && big.counter >= small.counter
        } else {
            big == small
        }
    }

    fn violations(&self) -> Vec<Violation> {
        self.validate()
    }

    fn describe(&self, conf: &OcaConf) -> String {
        format!("{}:{}", self.states[conf.state], conf.counter)
    }
}
