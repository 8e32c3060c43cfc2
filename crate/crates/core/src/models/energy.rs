use std::fmt::Debug;
use std::hash::Hash;

use super::pda::describe_stack;
use super::{
    check_effect, check_index, check_names, undeclared_state, undeclared_symbol, OcaConf,
    PdaConf, Player, StateId, SymbolId, Violation, DEFAULT_MAX_PUSH,
};

/// A game node together with the current energy vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EnergyPos<N> {
    pub node: N,
    pub energy: Vec<i32>,
}

impl<N> EnergyPos<N> {
    pub fn new(node: N, energy: Vec<i32>) -> Self {
        EnergyPos { node, energy }
    }

    pub fn bankrupt(&self) -> bool {
        self.energy.iter().any(|&e| e < 0)
    }
}

/// The game graph of an energy game, abstracted over how the control part
/// (stack or counter) is represented.
pub trait EnergyArena {
    type Node: Clone + Eq + Hash + Debug + Send + Sync;

    fn dimension(&self) -> usize;
    fn owner(&self, node: &Self::Node) -> Player;
    /// `(transition id, successor node, energy effect)` in id order.
    fn moves(&self, node: &Self::Node) -> Vec<(usize, Self::Node, &[i8])>;
    /// Stack height above the bottom, or the counter value.
    fn height(&self, node: &Self::Node) -> usize;
    fn describe_node(&self, node: &Self::Node) -> String;
    fn violations(&self) -> Vec<Violation>;

    fn game_moves(
        &self,
        pos: &EnergyPos<Self::Node>,
    ) -> (Player, Vec<(usize, EnergyPos<Self::Node>)>) {
        let succ = self
            .moves(&pos.node)
            .into_iter()
            .map(|(tid, node, effect)| {
                let energy = pos
                    .energy
                    .iter()
                    .zip(effect)
                    .map(|(&e, &c)| e + c as i32)
                    .collect();
                (tid, EnergyPos { node, energy })
            })
            .collect();
        (self.owner(&pos.node), succ)
    }

    fn describe(&self, pos: &EnergyPos<Self::Node>) -> String {
        let e: Vec<String> = pos.energy.iter().map(|x| x.to_string()).collect();
        format!("{}|{}", self.describe_node(&pos.node), e.join(","))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PegRule {
    pub src: StateId,
    pub top: SymbolId,
    pub dst: StateId,
    /// Replacement for the top symbol, written top first.
    pub push: Vec<SymbolId>,
    pub effect: Vec<i8>,
}

/// Pushdown energy game. Transition labels play no role in energy games and
/// are omitted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PushdownEnergyGame {
    pub states: Vec<String>,
    pub owner: Vec<Player>,
    pub stack_alphabet: Vec<String>,
    pub dimension: usize,
    pub transitions: Vec<PegRule>,
    pub max_push: usize,
}

impl PushdownEnergyGame {
    pub fn new(
        states: Vec<(String, Player)>,
        stack_alphabet: Vec<String>,
        dimension: usize,
        transitions: Vec<PegRule>,
    ) -> Self {
        let (states, owner) = states.into_iter().unzip();
        PushdownEnergyGame {
            states,
            owner,
            stack_alphabet,
            dimension,
            transitions,
            max_push: DEFAULT_MAX_PUSH,
        }
    }

    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        if self.dimension == 0 {
            out.push(Violation::ZeroDimension);
        }
        check_ownership(&self.states, &self.owner, &mut out);
        check_names(&self.stack_alphabet, &mut out);
        let (ns, ng) = (self.states.len(), self.stack_alphabet.len());
        for (i, t) in self.transitions.iter().enumerate() {
            let ctx = || format!("transition {i}");
            check_index(undeclared_state, ns, t.src, ctx, &mut out);
            check_index(undeclared_state, ns, t.dst, ctx, &mut out);
            check_index(undeclared_symbol, ng, t.top, ctx, &mut out);
            for &s in &t.push {
                check_index(undeclared_symbol, ng, s, ctx, &mut out);
            }
            if t.push.len() > self.max_push {
                out.push(Violation::PushTooLong {
                    transition: i,
                    len: t.push.len(),
                    max: self.max_push,
                });
            }
            check_effect(i, &t.effect, self.dimension, &mut out);
        }
        if out.is_empty() {
            for (state, symbol) in self.deadlocks() {
                out.push(Violation::DeadlockAt {
                    state: self.states[state].clone(),
                    symbol: self.stack_alphabet[symbol].clone(),
                });
            }
        }
        out
    }

    /// `(state, symbol)` pairs without an outgoing transition.
    pub fn deadlocks(&self) -> Vec<(StateId, SymbolId)> {
        let mut out = Vec::new();
        for q in 0..self.states.len() {
            for x in 0..self.stack_alphabet.len() {
                if !self.transitions.iter().any(|t| t.src == q && t.top == x) {
                    out.push((q, x));
                }
            }
        }
        out
    }

    /// Add a neutral self-loop for every deadlocked Player 0 pair and a loop
    /// decreasing every energy coordinate for every deadlocked Player 1 pair.
    pub fn complete_with_self_loops(&self) -> PushdownEnergyGame {
        let mut g = self.clone();
        for (q, x) in self.deadlocks() {
            let c = loop_effect(self.owner[q], self.dimension);
            g.transitions.push(PegRule {
                src: q,
                top: x,
                dst: q,
                push: vec![x],
                effect: c,
            });
        }
        g
    }

    pub fn initial(&self, state: StateId, stack_top_first: &[SymbolId], energy: Vec<i32>) -> EnergyPos<PdaConf> {
        EnergyPos::new(PdaConf::new(state, stack_top_first), energy)
    }
}

impl EnergyArena for PushdownEnergyGame {
    type Node = PdaConf;

    fn dimension(&self) -> usize {
        self.dimension
    }

    fn owner(&self, node: &PdaConf) -> Player {
        self.owner[node.state]
    }

    fn moves(&self, node: &PdaConf) -> Vec<(usize, PdaConf, &[i8])> {
        let top = node.top();
        self.transitions
            .iter()
            .enumerate()
            .filter(|(_, t)| t.src == node.state && t.top == top)
            .filter_map(|(i, t)| {
                node.replace_top(&t.push).map(|stack| {
                    (
                        i,
                        PdaConf {
                            state: t.dst,
                            stack,
                        },
                        t.effect.as_slice(),
                    )
                })
            })
            .collect()
    }

    fn height(&self, node: &PdaConf) -> usize {
        node.height()
    }

    fn describe_node(&self, node: &PdaConf) -> String {
        describe_stack(&self.states[node.state], &self.stack_alphabet, &node.stack)
    }

    fn violations(&self) -> Vec<Violation> {
        self.validate()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OcegRule {
    pub src: StateId,
    pub delta: i8,
    pub dst: StateId,
    pub effect: Vec<i8>,
}

/// One-counter energy game. Transition ids number the zero-test rules
/// first, then the rules of `delta_plus`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneCounterEnergyGame {
    pub states: Vec<String>,
    pub owner: Vec<Player>,
    pub dimension: usize,
    pub delta_plus: Vec<OcegRule>,
    pub delta_zero: Vec<OcegRule>,
}

impl OneCounterEnergyGame {
    pub fn new(
        states: Vec<(String, Player)>,
        dimension: usize,
        delta_plus: Vec<OcegRule>,
        delta_zero: Vec<OcegRule>,
    ) -> Self {
        let (states, owner) = states.into_iter().unzip();
        OneCounterEnergyGame {
            states,
            owner,
            dimension,
            delta_plus,
            delta_zero,
        }
    }

    /// `(transition id, rule, is_zero_test)` in id order.
    pub fn rules(&self) -> impl Iterator<Item = (usize, &OcegRule, bool)> {
        let nz = self.delta_zero.len();
        self.delta_zero
            .iter()
            .enumerate()
            .map(|(i, t)| (i, t, true))
            .chain(self.delta_plus.iter().enumerate().map(move |(i, t)| (nz + i, t, false)))
    }

    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        if self.dimension == 0 {
            out.push(Violation::ZeroDimension);
        }
        check_ownership(&self.states, &self.owner, &mut out);
        let ns = self.states.len();
        for (i, t, zero) in self.rules() {
            let ctx = || format!("transition {i}");
            check_index(undeclared_state, ns, t.src, ctx, &mut out);
            check_index(undeclared_state, ns, t.dst, ctx, &mut out);
            let ok = if zero { (0..=1).contains(&t.delta) } else { (-1..=1).contains(&t.delta) };
            if !ok {
                out.push(Violation::DeltaOutOfRange {
                    transition: i,
                    delta: t.delta,
                });
            }
            check_effect(i, &t.effect, self.dimension, &mut out);
        }
        if out.is_empty() {
            for (state, zero) in self.deadlocks() {
                out.push(Violation::DeadlockAtCounter {
                    state: self.states[state].clone(),
                    zero,
                });
            }
        }
        out
    }

    /// `(state, at_zero)` for every state without a move at counter zero
    /// (`at_zero = true`) or at positive counters.
    pub fn deadlocks(&self) -> Vec<(StateId, bool)> {
        let mut out = Vec::new();
        for q in 0..self.states.len() {
            let zero_ok = self.delta_zero.iter().any(|t| t.src == q)
                || self.delta_plus.iter().any(|t| t.src == q && t.delta >= 0);
            let pos_ok = self.delta_plus.iter().any(|t| t.src == q);
            if !zero_ok {
                out.push((q, true));
            }
            if !pos_ok {
                out.push((q, false));
            }
        }
        out
    }

    /// Deadlock repair as for pushdown games. A state deadlocked at positive
    /// counters receives a counter-neutral loop, which is also enabled at zero.
    pub fn complete_with_self_loops(&self) -> OneCounterEnergyGame {
        let mut g = self.clone();
        let dead = self.deadlocks();
        for &(q, zero) in &dead {
            let effect = loop_effect(self.owner[q], self.dimension);
            let rule = OcegRule {
                src: q,
                delta: 0,
                dst: q,
                effect,
            };
            if !zero {
                g.delta_plus.push(rule);
            } else if !dead.contains(&(q, false)) {
                g.delta_zero.push(rule);
            }
        }
        g
    }

    /// The same game as a pushdown game over `{bot, one}`.
    pub fn to_pushdown(&self) -> PushdownEnergyGame {
        const BOT: SymbolId = 0;
        const ONE: SymbolId = 1;
        let mut transitions = Vec::new();
        for (_, t, zero) in self.rules() {
            let mut add = |top, push: Vec<SymbolId>| {
                transitions.push(PegRule {
                    src: t.src,
                    top,
                    dst: t.dst,
                    push,
                    effect: t.effect.clone(),
                })
            };
            if zero {
                add(BOT, if t.delta == 1 { vec![ONE, BOT] } else { vec![BOT] });
            } else {
                match t.delta {
                    1 => {
                        add(BOT, vec![ONE, BOT]);
                        add(ONE, vec![ONE, ONE]);
                    }
                    0 => {
                        add(BOT, vec![BOT]);
                        add(ONE, vec![ONE]);
                    }
                    _ => add(ONE, vec![]),
                }
            }
        }
        PushdownEnergyGame {
            states: self.states.clone(),
            owner: self.owner.clone(),
            stack_alphabet: vec!["bot".into(), "one".into()],
            dimension: self.dimension,
            transitions,
            max_push: DEFAULT_MAX_PUSH,
        }
    }

    /// Position of [`Self::to_pushdown`] corresponding to `pos`.
    pub fn pos_to_pushdown(pos: &EnergyPos<OcaConf>) -> EnergyPos<PdaConf> {
        let mut stack = vec![0];
        stack.extend(std::iter::repeat_n(1, pos.node.counter as usize));
        EnergyPos::new(
            PdaConf {
                state: pos.node.state,
                stack,
            },
            pos.energy.clone(),
        )
    }
}

impl EnergyArena for OneCounterEnergyGame {
    type Node = OcaConf;

    fn dimension(&self) -> usize {
        self.dimension
    }

    fn owner(&self, node: &OcaConf) -> Player {
        self.owner[node.state]
    }

    fn moves(&self, node: &OcaConf) -> Vec<(usize, OcaConf, &[i8])> {
        let mut out = Vec::new();
        for (i, t, zero) in self.rules() {
            if t.src != node.state {
                continue;
            }
            let next = if zero {
                (node.counter == 0).then_some(t.delta as i64)
            } else {
                Some(node.counter as i64 + t.delta as i64).filter(|&n| n >= 0)
            };
            if let Some(n) = next {
                out.push((i, OcaConf::new(t.dst, n as u32), t.effect.as_slice()));
            }
        }
        out
    }

    fn height(&self, node: &OcaConf) -> usize {
        node.counter as usize
    }

    fn describe_node(&self, node: &OcaConf) -> String {
        format!("{}:{}", self.states[node.state], node.counter)
    }

    fn violations(&self) -> Vec<Violation> {
        self.validate()
    }
}

fn loop_effect(owner: Player, dimension: usize) -> Vec<i8> {
    match owner {
        Player::P0 => vec![0; dimension],
        Player::P1 => vec![-1; dimension],
    }
}

fn check_ownership(states: &[String], owner: &[Player], out: &mut Vec<Violation>) {
    let mut seen: std::collections::HashMap<&str, Player> = std::collections::HashMap::new();
    for (name, &p) in states.iter().zip(owner) {
        match seen.insert(name.as_str(), p) {
            Some(prev) if prev != p => out.push(Violation::OwnershipOverlap(name.clone())),
            Some(_) => out.push(Violation::DuplicateName(name.clone())),
            None => {}
        }
    }
}
