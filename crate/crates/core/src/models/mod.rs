//! Syntactic machine descriptions and the step semantics they induce.
//!
//! Every machine stores its control states, stack symbols and actions as
//! name tables; transitions refer to entries of those tables by index.
//! Generated constructions derive composite names such as `hat(q)` so that
//! reduction outputs stay readable.

mod energy;
mod lts;
mod mcm;
mod oca;
mod pda;
mod vass;

use thiserror::Error;

pub use energy::{
    EnergyArena, EnergyPos, OcegRule, OneCounterEnergyGame, PegRule, PushdownEnergyGame,
};
pub use lts::Lts;
pub use mcm::{Mcm, McmConf, McmEntry, McmRule, McmStep, RunOutcome};
pub use oca::{Oca, OcaConf, OcaRule};
pub use pda::{Pda, PdaConf, PdaRule};
pub use vass::{Vass, VassConf, VassRule};

pub type StateId = usize;
pub type SymbolId = usize;
pub type ActionId = usize;

/// Default cap on the length of a pushed word.
pub const DEFAULT_MAX_PUSH: usize = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Player {
    P0,
    P1,
}

impl Player {
    pub fn opponent(self) -> Player {
        match self {
            Player::P0 => Player::P1,
            Player::P1 => Player::P0,
        }
    }
}

/// A broken invariant of a machine description.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("{context}: undeclared state index {index}")]
    UndeclaredState { context: String, index: usize },
    #[error("{context}: undeclared stack symbol index {index}")]
    UndeclaredSymbol { context: String, index: usize },
    #[error("{context}: undeclared action index {index}")]
    UndeclaredAction { context: String, index: usize },
    #[error("duplicate name `{0}`")]
    DuplicateName(String),
    #[error("state `{0}` is owned by both players")]
    OwnershipOverlap(String),
    #[error("transition {transition} pushes {len} symbols (maximum {max})")]
    PushTooLong {
        transition: usize,
        len: usize,
        max: usize,
    },
    #[error("one-counter net has zero-test transitions")]
    NetHasZeroTest,
    #[error("transition {transition}: counter delta {delta} outside the allowed range")]
    DeltaOutOfRange { transition: usize, delta: i8 },
    #[error("transition {transition}: effect has {found} coordinates, expected {expected}")]
    BadEffectDimension {
        transition: usize,
        expected: usize,
        found: usize,
    },
    #[error("transition {transition}: effect coordinate outside {{-1,0,1}}")]
    EffectOutOfRange { transition: usize },
    #[error("dimension must be at least 1")]
    ZeroDimension,
    #[error("no outgoing transition at state `{state}` with top symbol `{symbol}`")]
    DeadlockAt { state: String, symbol: String },
    #[error("no outgoing transition at state `{state}` with counter {}", if *.zero { "= 0" } else { "> 0" })]
    DeadlockAtCounter { state: String, zero: bool },
    #[error("state `{0}` has no rule")]
    MissingRule(String),
    #[error("state `{0}` has more than one rule")]
    DuplicateRule(String),
    #[error("halting state `{0}` has a rule")]
    HaltHasRule(String),
    #[error("rule of state `{state}` names counter {counter}")]
    BadCounterIndex { state: String, counter: u8 },
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("configuration kind does not match machine kind")]
    KindMismatch,
    #[error("invalid model: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    InvalidModel(Vec<Violation>),
}

/// Any machine description.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Machine {
    Pda(Pda),
    Oca(Oca),
    Vass(Vass),
    PushdownEnergyGame(PushdownEnergyGame),
    OneCounterEnergyGame(OneCounterEnergyGame),
    Mcm(Mcm),
}

impl Machine {
    pub fn validate(&self) -> Vec<Violation> {
        match self {
            Machine::Pda(m) => m.validate(),
            Machine::Oca(m) => m.validate(),
            Machine::Vass(m) => m.validate(),
            Machine::PushdownEnergyGame(m) => m.validate(),
            Machine::OneCounterEnergyGame(m) => m.validate(),
            Machine::Mcm(m) => m.validate(),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Machine::Pda(_) => "pda",
            Machine::Oca(_) => "oca",
            Machine::Vass(_) => "vass",
            Machine::PushdownEnergyGame(_) => "pushdown_energy_game",
            Machine::OneCounterEnergyGame(_) => "one_counter_energy_game",
            Machine::Mcm(_) => "mcm",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Configuration {
    Pda(PdaConf),
    Oca(OcaConf),
    Vass(VassConf),
    Peg(EnergyPos<PdaConf>),
    Oceg(EnergyPos<OcaConf>),
    Mcm(McmConf),
}

/// Labelled successors of a configuration of a PDA, OCA or VASS, in
/// transition-id order.
pub fn steps(
    machine: &Machine,
    conf: &Configuration,
) -> Result<Vec<(ActionId, Configuration)>, ModelError> {
    Ok(match (machine, conf) {
        (Machine::Pda(m), Configuration::Pda(c)) => wrap(m.successors(c), Configuration::Pda),
        (Machine::Oca(m), Configuration::Oca(c)) => wrap(m.successors(c), Configuration::Oca),
        (Machine::Vass(m), Configuration::Vass(c)) => wrap(m.successors(c), Configuration::Vass),
        _ => return Err(ModelError::KindMismatch),
    })
}

/// Owner and successors of an energy-game position. Successors may carry a
/// negative energy coordinate; such positions are terminal wins for Player 0.
pub fn game_moves(
    machine: &Machine,
    pos: &Configuration,
) -> Result<(Player, Vec<Configuration>), ModelError> {
    match (machine, pos) {
        (Machine::PushdownEnergyGame(g), Configuration::Peg(p)) => {
            let (owner, succ) = g.game_moves(p);
            Ok((owner, succ.into_iter().map(|(_, s)| Configuration::Peg(s)).collect()))
        }
        (Machine::OneCounterEnergyGame(g), Configuration::Oceg(p)) => {
            let (owner, succ) = g.game_moves(p);
            Ok((owner, succ.into_iter().map(|(_, s)| Configuration::Oceg(s)).collect()))
        }
        _ => Err(ModelError::KindMismatch),
    }
}

fn wrap<C>(succ: Vec<(ActionId, C)>, f: fn(C) -> Configuration) -> Vec<(ActionId, Configuration)> {
    succ.into_iter().map(|(a, c)| (a, f(c))).collect()
}

pub(crate) fn check_names(names: &[String], out: &mut Vec<Violation>) {
    let mut seen = std::collections::HashSet::new();
    for n in names {
        if !seen.insert(n.as_str()) {
            out.push(Violation::DuplicateName(n.clone()));
        }
    }
}

pub(crate) fn check_index(
    kind: fn(String, usize) -> Violation,
    len: usize,
    index: usize,
    context: impl FnOnce() -> String,
    out: &mut Vec<Violation>,
) {
    if index >= len {
        out.push(kind(context(), index));
    }
}

pub(crate) fn undeclared_state(context: String, index: usize) -> Violation {
    Violation::UndeclaredState { context, index }
}

pub(crate) fn undeclared_symbol(context: String, index: usize) -> Violation {
    Violation::UndeclaredSymbol { context, index }
}

pub(crate) fn undeclared_action(context: String, index: usize) -> Violation {
    Violation::UndeclaredAction { context, index }
}

pub(crate) fn check_effect(
    transition: usize,
    effect: &[i8],
    dimension: usize,
    out: &mut Vec<Violation>,
) {
    if effect.len() != dimension {
        out.push(Violation::BadEffectDimension {
            transition,
            expected: dimension,
            found: effect.len(),
        });
    }
    if effect.iter().any(|e| !(-1..=1).contains(e)) {
        out.push(Violation::EffectOutOfRange { transition });
    }
}

pub(crate) fn index_of(names: &[String], name: &str) -> Option<usize> {
    names.iter().position(|n| n == name)
}
