//! A few deterministic counter machines used as gadget inputs.

use crate::models::{Mcm, McmEntry, McmRule};

fn machine(states: &[&str], halt: usize, rules: Vec<(usize, McmRule)>) -> Mcm {
    Mcm {
        states: states.iter().map(|s| s.to_string()).collect(),
        init: 0,
        halt,
        rules: rules.into_iter().map(|(state, rule)| McmEntry { state, rule }).collect(),
    }
}

fn test(counter: u8, if_zero: usize, if_pos: usize) -> McmRule {
    McmRule::Test {
        counter,
        if_zero,
        if_pos,
    }
}

fn inc(counter: u8, dst: usize) -> McmRule {
    McmRule::Inc { counter, dst }
}

/// Three increments of c1, then a test whose positive branch halts.
pub fn halt3() -> Mcm {
    machine(
        &["q0", "q1", "q2", "q3", "halt"],
        4,
        vec![(0, inc(1, 1)), (1, inc(1, 2)), (2, inc(1, 3)), (3, test(1, 0, 4))],
    )
}

/// Increments c1 forever.
pub fn looping() -> Mcm {
    machine(&["q0", "halt"], 1, vec![(0, inc(1, 0))])
}

/// Sets c1 to 2, then halves it into c2 and halts.
pub fn halve6() -> Mcm {
    machine(
        &["s0", "s1", "s2", "s3", "s4", "halt"],
        5,
        vec![
            (0, inc(1, 1)),
            (1, inc(1, 2)),
            (2, test(1, 5, 3)),
            (3, test(1, 5, 4)),
            (4, inc(2, 2)),
        ],
    )
}

pub fn all() -> Vec<(&'static str, Mcm)> {
    vec![("HALT3", halt3()), ("LOOP", looping()), ("HALVE6", halve6())]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::RunOutcome;

    #[test]
    fn machines_validate_and_behave() {
        for (name, m) in all() {
            assert!(m.validate().is_empty(), "{name}");
        }
        assert_eq!(halt3().run(100), RunOutcome::HaltedAfter(4));
        assert_eq!(looping().run(1000), RunOutcome::StillRunning);
        assert!(matches!(halve6().run(100), RunOutcome::HaltedAfter(_)));
    }
}
