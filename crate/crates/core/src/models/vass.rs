use super::{
    check_effect, check_index, check_names, undeclared_action, undeclared_state, ActionId, Lts,
    Oca, OcaConf, OcaRule, StateId, Violation,
};
use crate::solvers::Bounds;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VassRule {
    pub src: StateId,
    pub action: ActionId,
    pub dst: StateId,
    pub effect: Vec<i8>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vass {
    pub dimension: usize,
    pub states: Vec<String>,
    pub actions: Vec<String>,
    pub transitions: Vec<VassRule>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VassConf {
    pub state: StateId,
    pub vector: Vec<u32>,
}

impl VassConf {
    pub fn new(state: StateId, vector: Vec<u32>) -> Self {
        VassConf { state, vector }
    }
}

impl Vass {
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        if self.dimension == 0 {
            out.push(Violation::ZeroDimension);
        }
        check_names(&self.states, &mut out);
        check_names(&self.actions, &mut out);
        let (ns, na) = (self.states.len(), self.actions.len());
        for (i, t) in self.transitions.iter().enumerate() {
            let ctx = || format!("transition {i}");
            check_index(undeclared_state, ns, t.src, ctx, &mut out);
            check_index(undeclared_state, ns, t.dst, ctx, &mut out);
            check_index(undeclared_action, na, t.action, ctx, &mut out);
            check_effect(i, &t.effect, self.dimension, &mut out);
        }
        out
    }

    /// The equivalent one-counter net of a one-dimensional VASS.
    pub fn to_ocn(&self) -> Option<Oca> {
        if self.dimension != 1 {
            return None;
        }
        Some(Oca::net(
            self.states.clone(),
            self.actions.clone(),
            self.transitions
                .iter()
                .map(|t| OcaRule {
                    src: t.src,
                    action: t.action,
                    delta: t.effect[0],
                    dst: t.dst,
                })
                .collect(),
        ))
    }

    pub fn conf_to_ocn(conf: &VassConf) -> OcaConf {
        OcaConf::new(conf.state, conf.vector[0])
    }
}

impl Lts for Vass {
    type Conf = VassConf;

    fn action_names(&self) -> &[String] {
        &self.actions
    }

    fn successors(&self, conf: &VassConf) -> Vec<(ActionId, VassConf)> {
        self.transitions
            .iter()
            .filter(|t| t.src == conf.state)
            .filter_map(|t| {
                let vector = conf
                    .vector
                    .iter()
                    .zip(&t.effect)
                    .map(|(&c, &d)| u32::try_from(c as i64 + d as i64).ok())
                    .collect::<Option<Vec<u32>>>()?;
                Some((t.action, VassConf::new(t.dst, vector)))
            })
            .collect()
    }

    fn within(&self, conf: &VassConf, bounds: &Bounds) -> bool {
        conf.vector.iter().all(|&c| c as usize <= bounds.energy_cap)
    }

    fn saturate(&self, conf: &VassConf, bounds: &Bounds) -> Option<VassConf> {
        let cap = bounds.energy_cap as u32;
        Some(VassConf::new(
            conf.state,
            conf.vector.iter().map(|&c| c.min(cap)).collect(),
        ))
    }

    fn covers(&self, big: &VassConf, small: &VassConf) -> bool {
        big.state == small.state && big.vector.iter().zip(&small.vector).all(|(b, s)| b >= s)
    }

    fn violations(&self) -> Vec<Violation> {
        self.validate()
    }

    fn describe(&self, conf: &VassConf) -> String {
        let v: Vec<String> = conf.vector.iter().map(|c| c.to_string()).collect();
        format!("{}:{}", self.states[conf.state], v.join(","))
    }
}
