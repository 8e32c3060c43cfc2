//! The pair of one-counter nets `B`, `B'` encoding simulation between an OCA
//! and an OCN above a level `l`, given the values `W_{p,p'}(l)` and the
//! black lines for one period `K`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::models::{Oca, OcaConf, OcaRule, StateId};
use crate::solvers::{check_model, SimPair, SolveError};

use super::provenance::{fresh, Clause};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct OcaToOcnParams {
    pub l: usize,
    pub k: usize,
    /// `w_at_l[p][p']`; `None` stands for an infinite value.
    pub w_at_l: Vec<Vec<Option<u32>>>,
    /// `black_line[p][p'][r]`: whether the line at level `l + r` is black.
    pub black_line: Vec<Vec<Vec<bool>>>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParamsError {
    #[error("l and K must be at least 1")]
    ZeroParameter,
    #[error("tables do not cover {0} x {1} state pairs and K residues")]
    WrongShape(usize, usize),
    #[error("W at level l is infinite iff the line at level l is black, violated at ({0}, {1})")]
    Inconsistent(String, String),
    #[error("the Duplicator side must be a one-counter net")]
    NotANet,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OcnReductionError {
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error("inconsistent parameters: {0}")]
    InconsistentParams(#[from] ParamsError),
}

impl OcaToOcnParams {
    pub fn check(&self, a: &Oca, a_prime: &Oca) -> Result<(), ParamsError> {
        if self.l == 0 || self.k == 0 {
            return Err(ParamsError::ZeroParameter);
        }
        let (n, n2) = (a.states.len(), a_prime.states.len());
        let shape_ok = self.w_at_l.len() == n
            && self.black_line.len() == n
            && self.w_at_l.iter().all(|r| r.len() == n2)
            && self
                .black_line
                .iter()
                .all(|r| r.len() == n2 && r.iter().all(|c| c.len() == self.k));
        if !shape_ok {
            return Err(ParamsError::WrongShape(n, n2));
        }
        for p in 0..n {
            for q in 0..n2 {
                if self.w_at_l[p][q].is_none() != self.black_line[p][q][0] {
                    return Err(ParamsError::Inconsistent(a.states[p].clone(), a_prime.states[q].clone()));
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OcaToOcn {
    pub spoiler: Oca,
    pub duplicator: Oca,
    pub spoiler_provenance: Vec<Clause>,
    pub duplicator_provenance: Vec<Clause>,
    pub l: usize,
    pub k: usize,
    right_states: usize,
}

impl OcaToOcn {
    /// Pair state `(p, p', r)`, shared by both nets.
    pub fn pair_state(&self, p: StateId, p_prime: StateId, r: usize) -> StateId {
        (p * self.right_states + p_prime) * self.k + r
    }

    /// `F(p, p', m)`, at counter `m`.
    pub fn f(&self, p: StateId, p_prime: StateId, m: u32) -> OcaConf {
        OcaConf::new(self.pair_state(p, p_prime, m as usize % self.k), m)
    }

    /// `G(p, p', m)`, at Duplicator's counter `m_prime`.
    pub fn g(&self, p: StateId, p_prime: StateId, m: u32, m_prime: u32) -> OcaConf {
        OcaConf::new(self.pair_state(p, p_prime, m as usize % self.k), m_prime)
    }

    /// The position standing for `(p(m + l), p'm')`.
    pub fn map(&self, p: StateId, m: u32, p_prime: StateId, m_prime: u32) -> SimPair<OcaConf, OcaConf> {
        SimPair::new(self.f(p, p_prime, m), self.g(p, p_prime, m, m_prime))
    }
}

struct NetBuilder {
    states: Vec<String>,
    rules: Vec<OcaRule>,
    prov: Vec<Clause>,
}

impl NetBuilder {
    fn state(&mut self, name: String) -> StateId {
        let n = fresh(&self.states, name);
        self.states.push(n);
        self.states.len() - 1
    }

    fn add(&mut self, src: StateId, action: usize, delta: i8, dst: StateId, clause: Clause) {
        self.rules.push(OcaRule {
            src,
            action,
            delta,
            dst,
        });
        self.prov.push(clause);
    }
}

/// Spoiler's zero tests are dropped; the encoded counter never reaches the
/// level where they could fire since `l >= 1`.
pub fn oca_ocn_to_ocn_ocn(
    a: &Oca,
    a_prime: &Oca,
    params: &OcaToOcnParams,
) -> Result<OcaToOcn, OcnReductionError> {
    check_model(a.validate())?;
    check_model(a_prime.validate())?;
    if !a_prime.is_net {
        return Err(ParamsError::NotANet.into());
    }
    params.check(a, a_prime)?;
    let k = params.k;
    let (nq, nq2) = (a.states.len(), a_prime.states.len());
    let (delta, delta2) = (&a.delta_plus, &a_prime.delta_plus);

    // Actions: Spoiler's transitions, then Duplicator's, then `$`.
    let mut actions: Vec<String> = (0..delta.len()).map(|i| format!("t:{i}")).collect();
    actions.extend((0..delta2.len()).map(|j| format!("t':{j}")));
    actions.push("$".into());
    let act_t = |i: usize| i;
    let act_t2 = |j: usize| delta.len() + j;
    let dollar = actions.len() - 1;

    let pair_name = |p: usize, q: usize, r: usize| format!("({},{},{r})", a.states[p], a_prime.states[q]);
    let mut b = NetBuilder {
        states: Vec::new(),
        rules: Vec::new(),
        prov: Vec::new(),
    };
    let mut b2 = NetBuilder {
        states: Vec::new(),
        rules: Vec::new(),
        prov: Vec::new(),
    };
    for p in 0..nq {
        for q in 0..nq2 {
            for r in 0..k {
                b.state(pair_name(p, q, r));
                b2.state(pair_name(p, q, r));
            }
        }
    }
    let pair = |p: usize, q: usize, r: usize| (p * nq2 + q) * k + r;
    let residue = |m: usize, d: i8| (m as i64 + d as i64).rem_euclid(k as i64) as usize;

    // B: intermediate states (t, p', n).
    let mut mid = vec![vec![vec![0; k]; nq2]; delta.len()];
    for (i, row) in mid.iter_mut().enumerate() {
        for (q, cell) in row.iter_mut().enumerate() {
            for (n, st) in cell.iter_mut().enumerate() {
                *st = b.state(format!("[t:{i},{},{n}]", a_prime.states[q]));
            }
        }
    }
    // B': intermediate states (t, t', n).
    let mut mid2 = vec![vec![vec![None; k]; delta2.len()]; delta.len()];
    for (i, t) in delta.iter().enumerate() {
        for (j, t2) in delta2.iter().enumerate() {
            if a.actions[t.action] != a_prime.actions[t2.action] {
                continue;
            }
            for n in 0..k {
                mid2[i][j][n] = Some(b2.state(format!("[t:{i},t':{j},{n}]")));
            }
        }
    }
    let u = b2.state("u".into());

    for (i, t) in delta.iter().enumerate() {
        for q in 0..nq2 {
            for m in 0..k {
                let n = residue(m, t.delta);
                b.add(pair(t.src, q, m), act_t(i), t.delta, mid[i][q][n], Clause::AnnounceSpoilerMove);
            }
        }
        for (j, t2) in delta2.iter().enumerate() {
            if a.actions[t.action] != a_prime.actions[t2.action] {
                continue;
            }
            for n in 0..k {
                b.add(mid[i][t2.src][n], act_t2(j), 0, pair(t.dst, t2.dst, n), Clause::ReplayDuplicatorMove);
            }
        }
    }
    for (i, t) in delta.iter().enumerate() {
        for (j, t2) in delta2.iter().enumerate() {
            for m in 0..k {
                let n = residue(m, t.delta);
                let Some(st) = mid2[i][j][n] else { continue };
                b2.add(pair(t.src, t2.src, m), act_t(i), t2.delta, st, Clause::RecordResponse);
            }
            for n in 0..k {
                let Some(st) = mid2[i][j][n] else { continue };
                b2.add(st, act_t2(j), 0, pair(t.dst, t2.dst, n), Clause::CommitResponse);
                for s in 0..delta2.len() {
                    if s != j {
                        b2.add(st, act_t2(s), 0, u, Clause::EscapeToUniversal);
                    }
                }
            }
        }
    }
    for c in 0..actions.len() {
        b2.add(u, c, 0, u, Clause::UniversalSelfLoop);
    }
    for p in 0..nq {
        for q in 0..nq2 {
            for r in 0..k {
                b2.add(pair(p, q, r), dollar, -1, pair(p, q, r), Clause::DuplicatorDollarLoop);
                if params.black_line[p][q][r] {
                    b.add(pair(p, q, r), dollar, 0, pair(p, q, r), Clause::BlackLineLoop);
                }
            }
            // Exactly W decrementing steps for Duplicator, so that Spoiler
            // wins iff Duplicator's counter is below W.
            if let Some(w) = params.w_at_l[p][q] {
                let mut prev = pair(p, q, 0);
                for s in (0..w).rev() {
                    let st = b.state(format!("s{s}({},{})", a.states[p], a_prime.states[q]));
                    b.add(prev, dollar, 0, st, Clause::ThresholdChain);
                    prev = st;
                }
            }
        }
    }

    Ok(OcaToOcn {
        spoiler: Oca::net(b.states, actions.clone(), b.rules),
        duplicator: Oca::net(b2.states, actions, b2.rules),
        spoiler_provenance: b.prov,
        duplicator_provenance: b2.prov,
        l: params.l,
        k,
        right_states: nq2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solvers::{solve_simulation_bounded, Bounds, Outcome};

    fn single(delta: i8) -> Oca {
        Oca::net(
            vec!["p".into()],
            vec!["a".into()],
            vec![OcaRule {
                src: 0,
                action: 0,
                delta,
                dst: 0,
            }],
        )
    }

    fn params(w: Option<u32>, black: bool) -> OcaToOcnParams {
        OcaToOcnParams {
            l: 1,
            k: 1,
            w_at_l: vec![vec![w]],
            black_line: vec![vec![vec![black]]],
        }
    }

    #[test]
    fn black_line_loop_wins_for_spoiler() {
        let r = oca_ocn_to_ocn_ocn(&single(0), &single(0), &params(None, true)).unwrap();
        for m2 in 0..=5 {
            let s = solve_simulation_bounded(&r.spoiler, &r.duplicator, &r.map(0, 0, 0, m2), Bounds::new(8, 8, 20))
                .unwrap();
            assert_eq!(s.verdict.outcome(), Outcome::Win0, "counter {m2}");
        }
    }

    #[test]
    fn chain_wins_exactly_below_w() {
        // Play out the chain alone: Spoiler on the chain against the
        // decrementing loop of B'. With W = 3 Spoiler has 3 steps.
        let r = oca_ocn_to_ocn_ocn(&single(0), &single(0), &params(Some(3), false)).unwrap();
        let b = Bounds::new(8, 8, 20);
        let at = |m2| {
            solve_simulation_bounded(&r.spoiler, &r.duplicator, &r.map(0, 0, 0, m2), b)
                .unwrap()
                .verdict
                .outcome()
        };
        assert_eq!(at(2), Outcome::Win0);
        assert_ne!(at(3), Outcome::Win0);
    }

    #[test]
    fn inconsistent_tables_are_rejected() {
        let e = oca_ocn_to_ocn_ocn(&single(0), &single(0), &params(None, false)).unwrap_err();
        assert!(matches!(e, OcnReductionError::InconsistentParams(ParamsError::Inconsistent(..))));
    }
}
