//! Name-based JSON documents for every machine kind and their conversion
//! to and from the index-based models.

use serde::{Deserialize, Serialize};

use crate::models::{
    index_of, Mcm, McmEntry, McmRule, Oca, OcaRule, OcegRule, OneCounterEnergyGame, Pda, PdaRule, PegRule, Player,
    PushdownEnergyGame, Vass, VassRule, DEFAULT_MAX_PUSH,
};
use crate::coloring::{Color, ColorGrid};
use crate::semilinear::Upc;
use crate::solvers::Bounds;

use super::SchemaError;

fn default_max_push() -> usize {
    DEFAULT_MAX_PUSH
}

fn is_default_max_push(n: &usize) -> bool {
    *n == DEFAULT_MAX_PUSH
}

fn resolve(table: &[String], name: &str, what: &str, pointer: String) -> Result<usize, SchemaError> {
    index_of(table, name).ok_or_else(|| SchemaError::new(pointer, format!("undeclared {what} `{name}`")))
}

fn resolve_all(table: &[String], names: &[String], what: &str, pointer: &str) -> Result<Vec<usize>, SchemaError> {
    names
        .iter()
        .enumerate()
        .map(|(i, n)| resolve(table, n, what, format!("{pointer}/{i}")))
        .collect()
}

fn names_of(table: &[String], ids: &[usize]) -> Vec<String> {
    ids.iter().map(|&i| table[i].clone()).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct PdaDoc {
    pub states: Vec<String>,
    pub stack_alphabet: Vec<String>,
    pub actions: Vec<String>,
    pub transitions: Vec<PdaRuleDoc>,
    #[serde(default = "default_max_push", skip_serializing_if = "is_default_max_push")]
    pub max_push: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct PdaRuleDoc {
    pub src: String,
    pub top: String,
    pub action: String,
    pub dst: String,
    /// Top first.
    pub push: Vec<String>,
}

impl PdaDoc {
    pub fn to_model(&self) -> Result<Pda, SchemaError> {
        let mut transitions = Vec::new();
        for (i, t) in self.transitions.iter().enumerate() {
            let at = |f: &str| format!("/transitions/{i}/{f}");
            transitions.push(PdaRule {
                src: resolve(&self.states, &t.src, "state", at("src"))?,
                top: resolve(&self.stack_alphabet, &t.top, "stack symbol", at("top"))?,
                action: resolve(&self.actions, &t.action, "action", at("action"))?,
                dst: resolve(&self.states, &t.dst, "state", at("dst"))?,
                push: resolve_all(&self.stack_alphabet, &t.push, "stack symbol", &at("push"))?,
            });
        }
        let mut m = Pda::new(self.states.clone(), self.stack_alphabet.clone(), self.actions.clone(), transitions);
        m.max_push = self.max_push;
        Ok(m)
    }

    pub fn from_model(m: &Pda) -> Self {
        PdaDoc {
            states: m.states.clone(),
            stack_alphabet: m.stack_alphabet.clone(),
            actions: m.actions.clone(),
            transitions: m
                .transitions
                .iter()
                .map(|t| PdaRuleDoc {
                    src: m.states[t.src].clone(),
                    top: m.stack_alphabet[t.top].clone(),
                    action: m.actions[t.action].clone(),
                    dst: m.states[t.dst].clone(),
                    push: names_of(&m.stack_alphabet, &t.push),
                })
                .collect(),
            max_push: m.max_push,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct OcaDoc {
    pub states: Vec<String>,
    pub actions: Vec<String>,
    pub delta_plus: Vec<OcaRuleDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub delta_zero: Vec<OcaRuleDoc>,
    pub is_net: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct OcaRuleDoc {
    pub src: String,
    pub action: String,
    pub delta: i8,
    pub dst: String,
}

fn oca_rules(states: &[String], actions: &[String], rules: &[OcaRuleDoc], field: &str) -> Result<Vec<OcaRule>, SchemaError> {
    rules
        .iter()
        .enumerate()
        .map(|(i, t)| {
            let at = |f: &str| format!("/{field}/{i}/{f}");
            Ok(OcaRule {
                src: resolve(states, &t.src, "state", at("src"))?,
                action: resolve(actions, &t.action, "action", at("action"))?,
                delta: t.delta,
                dst: resolve(states, &t.dst, "state", at("dst"))?,
            })
        })
        .collect()
}

fn oca_rule_docs(m: &Oca, rules: &[OcaRule]) -> Vec<OcaRuleDoc> {
    rules
        .iter()
        .map(|t| OcaRuleDoc {
            src: m.states[t.src].clone(),
            action: m.actions[t.action].clone(),
            delta: t.delta,
            dst: m.states[t.dst].clone(),
        })
        .collect()
}

impl OcaDoc {
    pub fn to_model(&self) -> Result<Oca, SchemaError> {
        Ok(Oca {
            states: self.states.clone(),
            actions: self.actions.clone(),
            delta_plus: oca_rules(&self.states, &self.actions, &self.delta_plus, "deltaPlus")?,
            delta_zero: oca_rules(&self.states, &self.actions, &self.delta_zero, "deltaZero")?,
            is_net: self.is_net,
        })
    }

    pub fn from_model(m: &Oca) -> Self {
        OcaDoc {
            states: m.states.clone(),
            actions: m.actions.clone(),
            delta_plus: oca_rule_docs(m, &m.delta_plus),
            delta_zero: oca_rule_docs(m, &m.delta_zero),
            is_net: m.is_net,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct VassDoc {
    pub dimension: usize,
    pub states: Vec<String>,
    pub actions: Vec<String>,
    pub transitions: Vec<VassRuleDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct VassRuleDoc {
    pub src: String,
    pub action: String,
    pub dst: String,
    pub effect: Vec<i8>,
}

impl VassDoc {
    pub fn to_model(&self) -> Result<Vass, SchemaError> {
        let mut transitions = Vec::new();
        for (i, t) in self.transitions.iter().enumerate() {
            let at = |f: &str| format!("/transitions/{i}/{f}");
            transitions.push(VassRule {
                src: resolve(&self.states, &t.src, "state", at("src"))?,
                action: resolve(&self.actions, &t.action, "action", at("action"))?,
                dst: resolve(&self.states, &t.dst, "state", at("dst"))?,
                effect: t.effect.clone(),
            });
        }
        Ok(Vass {
            dimension: self.dimension,
            states: self.states.clone(),
            actions: self.actions.clone(),
            transitions,
        })
    }

    pub fn from_model(m: &Vass) -> Self {
        VassDoc {
            dimension: m.dimension,
            states: m.states.clone(),
            actions: m.actions.clone(),
            transitions: m
                .transitions
                .iter()
                .map(|t| VassRuleDoc {
                    src: m.states[t.src].clone(),
                    action: m.actions[t.action].clone(),
                    dst: m.states[t.dst].clone(),
                    effect: t.effect.clone(),
                })
                .collect(),
        }
    }
}

/// States of an energy game as listed in documents: Player 0 states first.
fn split_states(states: &[String], owner: &[Player]) -> (Vec<String>, Vec<String>) {
    let pick = |p: Player| {
        states
            .iter()
            .zip(owner)
            .filter(|(_, &o)| o == p)
            .map(|(s, _)| s.clone())
            .collect()
    };
    (pick(Player::P0), pick(Player::P1))
}

fn owned(p0: &[String], p1: &[String]) -> Vec<(String, Player)> {
    p0.iter()
        .map(|s| (s.clone(), Player::P0))
        .chain(p1.iter().map(|s| (s.clone(), Player::P1)))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct PegDoc {
    pub states_p0: Vec<String>,
    pub states_p1: Vec<String>,
    pub stack_alphabet: Vec<String>,
    pub dimension: usize,
    pub transitions: Vec<PegRuleDoc>,
    #[serde(default = "default_max_push", skip_serializing_if = "is_default_max_push")]
    pub max_push: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct PegRuleDoc {
    pub src: String,
    pub top: String,
    pub dst: String,
    pub push: Vec<String>,
    pub effect: Vec<i8>,
}

impl PegDoc {
    pub fn to_model(&self) -> Result<PushdownEnergyGame, SchemaError> {
        let states = owned(&self.states_p0, &self.states_p1);
        let names: Vec<String> = states.iter().map(|(s, _)| s.clone()).collect();
        let mut transitions = Vec::new();
        for (i, t) in self.transitions.iter().enumerate() {
            let at = |f: &str| format!("/transitions/{i}/{f}");
            transitions.push(PegRule {
                src: resolve(&names, &t.src, "state", at("src"))?,
                top: resolve(&self.stack_alphabet, &t.top, "stack symbol", at("top"))?,
                dst: resolve(&names, &t.dst, "state", at("dst"))?,
                push: resolve_all(&self.stack_alphabet, &t.push, "stack symbol", &at("push"))?,
                effect: t.effect.clone(),
            });
        }
        let mut g = PushdownEnergyGame::new(states, self.stack_alphabet.clone(), self.dimension, transitions);
        g.max_push = self.max_push;
        Ok(g)
    }

    pub fn from_model(g: &PushdownEnergyGame) -> Self {
        let (states_p0, states_p1) = split_states(&g.states, &g.owner);
        PegDoc {
            states_p0,
            states_p1,
            stack_alphabet: g.stack_alphabet.clone(),
            dimension: g.dimension,
            transitions: g
                .transitions
                .iter()
                .map(|t| PegRuleDoc {
                    src: g.states[t.src].clone(),
                    top: g.stack_alphabet[t.top].clone(),
                    dst: g.states[t.dst].clone(),
                    push: names_of(&g.stack_alphabet, &t.push),
                    effect: t.effect.clone(),
                })
                .collect(),
            max_push: g.max_push,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct OcegDoc {
    pub states_p0: Vec<String>,
    pub states_p1: Vec<String>,
    pub dimension: usize,
    pub delta_plus: Vec<OcegRuleDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub delta_zero: Vec<OcegRuleDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct OcegRuleDoc {
    pub src: String,
    pub delta: i8,
    pub dst: String,
    pub effect: Vec<i8>,
}

fn oceg_rules(names: &[String], rules: &[OcegRuleDoc], field: &str) -> Result<Vec<OcegRule>, SchemaError> {
    rules
        .iter()
        .enumerate()
        .map(|(i, t)| {
            let at = |f: &str| format!("/{field}/{i}/{f}");
            Ok(OcegRule {
                src: resolve(names, &t.src, "state", at("src"))?,
                delta: t.delta,
                dst: resolve(names, &t.dst, "state", at("dst"))?,
                effect: t.effect.clone(),
            })
        })
        .collect()
}

impl OcegDoc {
    pub fn to_model(&self) -> Result<OneCounterEnergyGame, SchemaError> {
        let states = owned(&self.states_p0, &self.states_p1);
        let names: Vec<String> = states.iter().map(|(s, _)| s.clone()).collect();
        let plus = oceg_rules(&names, &self.delta_plus, "deltaPlus")?;
        let zero = oceg_rules(&names, &self.delta_zero, "deltaZero")?;
        Ok(OneCounterEnergyGame::new(states, self.dimension, plus, zero))
    }

    pub fn from_model(g: &OneCounterEnergyGame) -> Self {
        let (states_p0, states_p1) = split_states(&g.states, &g.owner);
        let docs = |rules: &[OcegRule]| {
            rules
                .iter()
                .map(|t| OcegRuleDoc {
                    src: g.states[t.src].clone(),
                    delta: t.delta,
                    dst: g.states[t.dst].clone(),
                    effect: t.effect.clone(),
                })
                .collect()
        };
        OcegDoc {
            states_p0,
            states_p1,
            dimension: g.dimension,
            delta_plus: docs(&g.delta_plus),
            delta_zero: docs(&g.delta_zero),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct McmDoc {
    pub states: Vec<String>,
    pub init_state: String,
    pub halt_state: String,
    pub rules: Vec<McmRuleDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct McmRuleDoc {
    pub state: String,
    pub rule: McmOpDoc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum McmOpDoc {
    #[serde(rename_all = "camelCase")]
    Inc { counter: u8, dst: String },
    #[serde(rename_all = "camelCase")]
    Test {
        counter: u8,
        if_zero: String,
        if_positive: String,
    },
}

impl McmDoc {
    pub fn to_model(&self) -> Result<Mcm, SchemaError> {
        let s = &self.states;
        let mut rules = Vec::new();
        for (i, r) in self.rules.iter().enumerate() {
            let at = |f: &str| format!("/rules/{i}/{f}");
            let rule = match &r.rule {
                McmOpDoc::Inc { counter, dst } => McmRule::Inc {
                    counter: *counter,
                    dst: resolve(s, dst, "state", at("rule/inc/dst"))?,
                },
                McmOpDoc::Test {
                    counter,
                    if_zero,
                    if_positive,
                } => McmRule::Test {
                    counter: *counter,
                    if_zero: resolve(s, if_zero, "state", at("rule/test/ifZero"))?,
                    if_pos: resolve(s, if_positive, "state", at("rule/test/ifPositive"))?,
                },
            };
            rules.push(McmEntry {
                state: resolve(s, &r.state, "state", at("state"))?,
                rule,
            });
        }
        Ok(Mcm {
            states: s.clone(),
            init: resolve(s, &self.init_state, "state", "/initState".into())?,
            halt: resolve(s, &self.halt_state, "state", "/haltState".into())?,
            rules,
        })
    }

    pub fn from_model(m: &Mcm) -> Self {
        let n = |q: usize| m.states[q].clone();
        McmDoc {
            states: m.states.clone(),
            init_state: n(m.init),
            halt_state: n(m.halt),
            rules: m
                .rules
                .iter()
                .map(|e| McmRuleDoc {
                    state: n(e.state),
                    rule: match e.rule {
                        McmRule::Inc { counter, dst } => McmOpDoc::Inc { counter, dst: n(dst) },
                        McmRule::Test {
                            counter,
                            if_zero,
                            if_pos,
                        } => McmOpDoc::Test {
                            counter,
                            if_zero: n(if_zero),
                            if_positive: n(if_pos),
                        },
                    },
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct UpcDoc {
    pub left_states: Vec<String>,
    pub right_states: Vec<String>,
    pub m: usize,
    pub p: usize,
    pub m_prime: usize,
    pub p_prime: usize,
    #[serde(default)]
    pub shift: usize,
    pub windows: Vec<UpcWindowDoc>,
}

/// Rows `m = 0..=M` of one pair, each run-length encoded over `m'`, as in
/// `3B2W`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct UpcWindowDoc {
    pub left: String,
    pub right: String,
    pub rows: Vec<String>,
}

pub fn run_length(row: &str) -> String {
    let mut out = String::new();
    let chars: Vec<char> = row.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let j = (i..chars.len()).find(|&j| chars[j] != chars[i]).unwrap_or(chars.len());
        out.push_str(&format!("{}{}", j - i, chars[i]));
        i = j;
    }
    out
}

pub fn run_length_decode(s: &str) -> Option<String> {
    let mut out = String::new();
    let mut n = String::new();
    for c in s.chars() {
        if c.is_ascii_digit() {
            n.push(c);
        } else {
            let k: usize = if n.is_empty() { 1 } else { n.parse().ok()? };
            out.extend(std::iter::repeat_n(c, k));
            n.clear();
        }
    }
    n.is_empty().then_some(out)
}

impl UpcDoc {
    pub fn to_model(&self) -> Result<Upc, SchemaError> {
        let (nl, nr) = (self.left_states.len(), self.right_states.len());
        let mut cells = vec![None; nl * nr];
        for (w, win) in self.windows.iter().enumerate() {
            let p = resolve(&self.left_states, &win.left, "state", format!("/windows/{w}/left"))?;
            let q = resolve(&self.right_states, &win.right, "state", format!("/windows/{w}/right"))?;
            if win.rows.len() != self.m + 1 {
                return Err(SchemaError::new(format!("/windows/{w}/rows"), format!("expected {} rows", self.m + 1)));
            }
            let mut rows = Vec::new();
            for (i, r) in win.rows.iter().enumerate() {
                let at = format!("/windows/{w}/rows/{i}");
                let row = run_length_decode(r).ok_or_else(|| SchemaError::new(at.clone(), "bad run-length row".into()))?;
                if row.len() != self.m_prime + 1 || row.chars().any(|c| c != 'W' && c != 'B') {
                    return Err(SchemaError::new(at, format!("expected {} cells of W or B", self.m_prime + 1)));
                }
                rows.push(row.into_bytes());
            }
            cells[p * nr + q] = Some(rows);
        }
        if let Some(i) = cells.iter().position(Option::is_none) {
            return Err(SchemaError::new(
                "/windows".into(),
                format!("no window for ({}, {})", self.left_states[i / nr], self.right_states[i % nr]),
            ));
        }
        Upc::from_fn(
            self.left_states.clone(),
            self.right_states.clone(),
            (self.m, self.p, self.m_prime, self.p_prime, self.shift),
            |p, q, i, j| cells[p * nr + q].as_ref().expect("checked")[i][j] == b'W',
        )
        .map_err(|e| SchemaError::new(String::new(), e.to_string()))
    }

    pub fn from_model(u: &Upc) -> Self {
        let mut windows = Vec::new();
        for (p, l) in u.left_states.iter().enumerate() {
            for (q, r) in u.right_states.iter().enumerate() {
                windows.push(UpcWindowDoc {
                    left: l.clone(),
                    right: r.clone(),
                    rows: u.window_rows(p, q).iter().map(|r| run_length(r)).collect(),
                });
            }
        }
        UpcDoc {
            left_states: u.left_states.clone(),
            right_states: u.right_states.clone(),
            m: u.m,
            p: u.p,
            m_prime: u.m2,
            p_prime: u.p2,
            shift: u.shift,
            windows,
        }
    }
}

/// A computed coloring; rows as for UPC windows, with `?` for Unknown.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct GridDoc {
    pub left_states: Vec<String>,
    pub right_states: Vec<String>,
    pub m_max: usize,
    pub m_prime_max: usize,
    pub bounds: Bounds,
    pub windows: Vec<UpcWindowDoc>,
}

impl GridDoc {
    pub fn to_model(&self) -> Result<ColorGrid, SchemaError> {
        let mut grid = ColorGrid::new(
            self.left_states.clone(),
            self.right_states.clone(),
            self.m_max,
            self.m_prime_max,
            self.bounds,
        );
        let mut seen = vec![false; self.left_states.len() * self.right_states.len()];
        for (w, win) in self.windows.iter().enumerate() {
            let p = resolve(&self.left_states, &win.left, "state", format!("/windows/{w}/left"))?;
            let q = resolve(&self.right_states, &win.right, "state", format!("/windows/{w}/right"))?;
            if win.rows.len() != self.m_max + 1 {
                return Err(SchemaError::new(format!("/windows/{w}/rows"), format!("expected {} rows", self.m_max + 1)));
            }
            for (m, r) in win.rows.iter().enumerate() {
                let at = format!("/windows/{w}/rows/{m}");
                let row = run_length_decode(r).ok_or_else(|| SchemaError::new(at.clone(), "bad run-length row".into()))?;
                let cells: Option<Vec<Color>> = row.chars().map(Color::from_symbol).collect();
                match cells {
                    Some(cells) if cells.len() == self.m_prime_max + 1 => {
                        for (m2, c) in cells.into_iter().enumerate() {
                            grid.set(p, q, m, m2, c);
                        }
                    }
                    _ => {
                        return Err(SchemaError::new(at, format!("expected {} cells of W, B or ?", self.m_prime_max + 1)));
                    }
                }
            }
            seen[p * self.right_states.len() + q] = true;
        }
        if seen.iter().any(|s| !s) {
            return Err(SchemaError::new("/windows".into(), "a state pair has no rows".into()));
        }
        Ok(grid)
    }

    pub fn from_model(g: &ColorGrid) -> Self {
        let windows = g
            .pairs()
            .map(|(p, q)| UpcWindowDoc {
                left: g.left_states[p].clone(),
                right: g.right_states[q].clone(),
                rows: (0..=g.m_max)
                    .map(|m| run_length(&g.column(p, q, m).iter().map(|c| c.symbol()).collect::<String>()))
                    .collect(),
            })
            .collect();
        GridDoc {
            left_states: g.left_states.clone(),
            right_states: g.right_states.clone(),
            m_max: g.m_max,
            m_prime_max: g.m2_max,
            bounds: g.bounds,
            windows,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn run_length_round_trip() {
        for row in ["", "W", "BBBWW", "BWBW", "WWWWWWWWWWWW"] {
            assert_eq!(run_length_decode(&run_length(row)).unwrap(), row);
        }
        assert_eq!(run_length("BBBWW"), "3B2W");
        assert_eq!(run_length_decode("B2W").unwrap(), "BWW");
        assert!(run_length_decode("3").is_none());
    }
}
