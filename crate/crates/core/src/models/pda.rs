use super::{
    check_index, check_names, undeclared_action, undeclared_state, undeclared_symbol, ActionId,
    Lts, StateId, SymbolId, Violation, DEFAULT_MAX_PUSH,
};
use crate::solvers::Bounds;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PdaRule {
    pub src: StateId,
    pub top: SymbolId,
    pub action: ActionId,
    pub dst: StateId,
    /// Replacement for the top symbol, written top first.
    pub push: Vec<SymbolId>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pda {
    pub states: Vec<String>,
    pub stack_alphabet: Vec<String>,
    pub actions: Vec<String>,
    pub transitions: Vec<PdaRule>,
    pub max_push: usize,
}

/// A control state with a nonempty stack, stored bottom first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PdaConf {
    pub state: StateId,
    pub stack: Vec<SymbolId>,
}

impl PdaConf {
    pub fn new(state: StateId, stack_top_first: &[SymbolId]) -> Self {
        PdaConf {
            state,
            stack: stack_top_first.iter().rev().copied().collect(),
        }
    }

    pub fn top(&self) -> SymbolId {
        *self.stack.last().expect("stack is nonempty")
    }

    /// Number of symbols above the bottom one.
    pub fn height(&self) -> usize {
        self.stack.len().saturating_sub(1)
    }

    /// Replace the top symbol by `push` (top first). `None` if the stack
    /// would become empty.
    pub(crate) fn replace_top(&self, push: &[SymbolId]) -> Option<Vec<SymbolId>> {
        let mut stack = self.stack.clone();
        stack.pop();
        stack.extend(push.iter().rev());
        (!stack.is_empty()).then_some(stack)
    }
}

impl Pda {
    pub fn new(
        states: Vec<String>,
        stack_alphabet: Vec<String>,
        actions: Vec<String>,
        transitions: Vec<PdaRule>,
    ) -> Self {
        Pda {
            states,
            stack_alphabet,
            actions,
            transitions,
            max_push: DEFAULT_MAX_PUSH,
        }
    }

    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        check_names(&self.states, &mut out);
        check_names(&self.stack_alphabet, &mut out);
        check_names(&self.actions, &mut out);
        let (ns, ng, na) = (self.states.len(), self.stack_alphabet.len(), self.actions.len());
        for (i, t) in self.transitions.iter().enumerate() {
            let ctx = || format!("transition {i}");
            check_index(undeclared_state, ns, t.src, ctx, &mut out);
            check_index(undeclared_state, ns, t.dst, ctx, &mut out);
            check_index(undeclared_symbol, ng, t.top, ctx, &mut out);
            check_index(undeclared_action, na, t.action, ctx, &mut out);
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
        }
        out
    }

    /// If the automaton only uses a single stack symbol above a
    /// non-removable bottom symbol, return `(bottom, unit)`.
    pub fn one_counter_shape(&self) -> Option<(SymbolId, SymbolId)> {
        if self.stack_alphabet.len() != 2 {
            return None;
        }
        [(0, 1), (1, 0)].into_iter().find(|&(bot, one)| {
            self.transitions.iter().all(|t| {
                if t.top == bot {
                    matches!(t.push.as_slice(), [b] if *b == bot)
                        || matches!(t.push.as_slice(), [o, b] if *o == one && *b == bot)
                } else {
                    t.push.len() <= 2 && t.push.iter().all(|&s| s == one)
                }
            })
        })
    }
}

impl Lts for Pda {
    type Conf = PdaConf;

    fn action_names(&self) -> &[String] {
        &self.actions
    }

    fn successors(&self, conf: &PdaConf) -> Vec<(ActionId, PdaConf)> {
        let top = conf.top();
        self.transitions
            .iter()
            .filter(|t| t.src == conf.state && t.top == top)
            .filter_map(|t| {
                conf.replace_top(&t.push).map(|stack| {
                    (
                        t.action,
                        PdaConf {
                            state: t.dst,
                            stack,
                        },
                    )
                })
            })
            .collect()
    }

    fn within(&self, conf: &PdaConf, bounds: &Bounds) -> bool {
        conf.height() <= bounds.counter_cap
    }

    fn violations(&self) -> Vec<Violation> {
        self.validate()
    }

    fn describe(&self, conf: &PdaConf) -> String {
        describe_stack(&self.states[conf.state], &self.stack_alphabet, &conf.stack)
    }
}

pub(crate) fn describe_stack(state: &str, alphabet: &[String], stack: &[SymbolId]) -> String {
    let word: Vec<&str> = stack.iter().rev().map(|&s| alphabet[s].as_str()).collect();
    format!("{state}:{}", word.join("."))
}
