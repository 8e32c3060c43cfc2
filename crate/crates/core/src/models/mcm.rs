use super::{check_index, check_names, undeclared_state, StateId, Violation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum McmRule {
    /// Increment counter `counter` (1 or 2) and move to `dst`.
    Inc { counter: u8, dst: StateId },
    /// Go to `if_zero` if the counter is 0, otherwise decrement it and go to
    /// `if_pos`.
    Test {
        counter: u8,
        if_zero: StateId,
        if_pos: StateId,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct McmEntry {
    pub state: StateId,
    pub rule: McmRule,
}

/// Deterministic Minsky machine with two counters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mcm {
    pub states: Vec<String>,
    pub init: StateId,
    pub halt: StateId,
    pub rules: Vec<McmEntry>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct McmConf {
    pub state: StateId,
    pub counters: [u64; 2],
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum McmStep {
    Next(McmConf),
    Halted,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RunOutcome {
    HaltedAfter(u64),
    StillRunning,
}

impl Mcm {
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        check_names(&self.states, &mut out);
        let ns = self.states.len();
        check_index(undeclared_state, ns, self.init, || "initial state".into(), &mut out);
        check_index(undeclared_state, ns, self.halt, || "halting state".into(), &mut out);
        for (i, e) in self.rules.iter().enumerate() {
            let ctx = || format!("rule {i}");
            check_index(undeclared_state, ns, e.state, ctx, &mut out);
            let (counter, targets) = match e.rule {
                McmRule::Inc { counter, dst } => (counter, vec![dst]),
                McmRule::Test {
                    counter,
                    if_zero,
                    if_pos,
                } => (counter, vec![if_zero, if_pos]),
            };
            for t in targets {
                check_index(undeclared_state, ns, t, ctx, &mut out);
            }
            if !(1..=2).contains(&counter) {
                out.push(Violation::BadCounterIndex {
                    state: self.name(e.state),
                    counter,
                });
            }
        }
        if !out.is_empty() {
            return out;
        }
        for q in 0..ns {
            let n = self.rules.iter().filter(|e| e.state == q).count();
            if q == self.halt {
                if n > 0 {
                    out.push(Violation::HaltHasRule(self.name(q)));
                }
            } else if n == 0 {
                out.push(Violation::MissingRule(self.name(q)));
            } else if n > 1 {
                out.push(Violation::DuplicateRule(self.name(q)));
            }
        }
        out
    }

    fn name(&self, q: StateId) -> String {
        self.states.get(q).cloned().unwrap_or_else(|| format!("#{q}"))
    }

    pub fn rule(&self, state: StateId) -> Option<McmRule> {
        self.rules.iter().find(|e| e.state == state).map(|e| e.rule)
    }

    pub fn initial(&self) -> McmConf {
        McmConf {
            state: self.init,
            counters: [0, 0],
        }
    }

    pub fn step(&self, conf: &McmConf) -> McmStep {
        if conf.state == self.halt {
            return McmStep::Halted;
        }
        let mut next = *conf;
        match self.rule(conf.state) {
            Some(McmRule::Inc { counter, dst }) => {
                next.counters[counter as usize - 1] += 1;
                next.state = dst;
            }
            Some(McmRule::Test {
                counter,
                if_zero,
                if_pos,
            }) => {
                let c = &mut next.counters[counter as usize - 1];
                if *c == 0 {
                    next.state = if_zero;
                } else {
                    *c -= 1;
                    next.state = if_pos;
                }
            }
            // Only reachable for invalid machines.
            None => return McmStep::Halted,
        }
        McmStep::Next(next)
    }

    /// Run from the initial configuration for at most `max_steps` steps.
    pub fn run(&self, max_steps: u64) -> RunOutcome {
        let mut conf = self.initial();
        for k in 0..=max_steps {
            match self.step(&conf) {
                McmStep::Halted => return RunOutcome::HaltedAfter(k),
                McmStep::Next(c) if k < max_steps => conf = c,
                McmStep::Next(_) => break,
            }
        }
        RunOutcome::StillRunning
    }
}
