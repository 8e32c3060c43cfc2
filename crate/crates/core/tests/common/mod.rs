//! Test oracles written directly against the rule tables, independent of
//! the library's step semantics and solvers.
#![allow(dead_code)]

use energy_sim::models::{Mcm, McmRule, Oca};

/// Steps of an OCA configuration as `(action name, state, counter)`.
pub fn oca_steps(a: &Oca, s: usize, m: u32) -> Vec<(String, usize, u32)> {
    let mut out = Vec::new();
    if m == 0 {
        for t in a.delta_zero.iter().filter(|t| t.src == s) {
            out.push((a.actions[t.action].clone(), t.dst, t.delta as u32));
        }
    }
    for t in a.delta_plus.iter().filter(|t| t.src == s) {
        let n = m as i64 + t.delta as i64;
        if n >= 0 {
            out.push((a.actions[t.action].clone(), t.dst, n as u32));
        }
    }
    out
}

/// A Spoiler step from a White point with no White answer.
pub fn closure_violation(
    a: &Oca,
    b: &Oca,
    white: &dyn Fn(usize, u32, usize, u32) -> bool,
    p: usize,
    m: u32,
    q: usize,
    m2: u32,
) -> Option<(String, usize, u32)> {
    if !white(p, m, q, m2) {
        return None;
    }
    let answers = oca_steps(b, q, m2);
    oca_steps(a, p, m)
        .into_iter()
        .find(|(act, p2, n)| !answers.iter().any(|(b_act, q2, n2)| b_act == act && white(*p2, *n, *q2, *n2)))
}

/// Simulation approximants over the box of counters `<= n`. Entry
/// `[k][idx(p, m, q, m2)]` holds whether the pair is in the k-th
/// approximant; exact for pairs whose k-step neighbourhood stays in the box.
pub struct Approximants {
    pub n: u32,
    pub right_states: usize,
    pub levels: Vec<Vec<bool>>,
}

impl Approximants {
    pub fn idx(&self, p: usize, m: u32, q: usize, m2: u32) -> usize {
        let w = (self.n + 1) as usize;
        ((p * self.right_states + q) * w + m as usize) * w + m2 as usize
    }

    pub fn compute(a: &Oca, b: &Oca, n: u32, k: usize) -> Self {
        let (na, nb) = (a.states.len(), b.states.len());
        let w = (n + 1) as usize;
        let mut me = Approximants {
            n,
            right_states: nb,
            levels: vec![vec![true; na * nb * w * w]],
        };
        for _ in 0..k {
            let prev = me.levels.last().unwrap().clone();
            let mut next = prev.clone();
            for p in 0..na {
                for q in 0..nb {
                    for m in 0..=n {
                        for m2 in 0..=n {
                            let i = me.idx(p, m, q, m2);
                            if !prev[i] {
                                continue;
                            }
                            // Steps leaving the box are answered optimistically.
                            let answers = oca_steps(b, q, m2);
                            let ok = oca_steps(a, p, m).into_iter().all(|(act, p2, x)| {
                                x > n
                                    || answers.iter().any(|(ba, q2, y)| {
                                        ba == &act && (*y > n || prev[me.idx(p2, x, *q2, *y)])
                                    })
                            });
                            next[i] = ok;
                        }
                    }
                }
            }
            me.levels.push(next);
        }
        me
    }

    pub fn at(&self, k: usize, p: usize, m: u32, q: usize, m2: u32) -> bool {
        self.levels[k][self.idx(p, m, q, m2)]
    }
}

/// Counter effect of a pushdown-gadget record label `t{l}:c{i}`,
/// `t{l}=0:c{i}` or `t{l}>0:c{i}` on counter `c`.
pub fn record_effect(label: &str, c: u8) -> i64 {
    let Some((head, counter)) = label.rsplit_once(":c") else {
        return 0;
    };
    if counter.parse::<u8>().ok() != Some(c) {
        return 0;
    }
    if head.contains("=0") {
        0
    } else if head.contains(">0") {
        -1
    } else {
        1
    }
}

/// Edges of the MCM at `state`, labelled as the pushdown gadget labels its
/// records; a test contributes both branches.
pub fn mcm_edges(m: &Mcm, state: usize) -> Vec<(String, usize)> {
    let mut out = Vec::new();
    for (l, e) in m.rules.iter().enumerate().filter(|(_, e)| e.state == state) {
        match e.rule {
            McmRule::Inc { counter, dst } => out.push((format!("t{l}:c{counter}"), dst)),
            McmRule::Test {
                counter,
                if_zero,
                if_pos,
            } => {
                out.push((format!("t{l}=0:c{counter}"), if_zero));
                out.push((format!("t{l}>0:c{counter}"), if_pos));
            }
        }
    }
    out
}
