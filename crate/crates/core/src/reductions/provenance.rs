use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Reduction {
    EnergyToSimulation,
    SimulationToEnergy,
    OcaToOcn,
}

/// The construction clause a generated transition instantiates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Clause {
    /// Player 0 transition `t` as `(q_t, X_t, a_t, q'_t, β_t)` in the automaton.
    OwnMoveSpoiler,
    /// Player 0 transition `t` as `(q_t, a_t, q'_t, C_t)` in the VASS.
    OwnMoveDuplicator,
    /// `(q, X, a_X, q̂, X)`: Spoiler announces the top of stack.
    AnnounceTop,
    /// `(q_t, a_X, q''_t, C_t)`: Duplicator picks the transition.
    ChooseTransition,
    /// `(q̂, X_t, a_t, q'_t, β_t)`: Spoiler implements a transition.
    ImplementChoice,
    /// `(q''_t, a_t, q'_t, 0)`: Duplicator confirms the matching choice.
    ConfirmChoice,
    /// `(q''_t, b, u, 0)` for `b ≠ a_t`.
    MismatchToUniversal,
    /// `(u, c, u, 0)`.
    UniversalLoop,

    /// `((q0,q1,0), X, (q0',q1,a), β, 0)`.
    SpoilerStep,
    /// `((q0',q1,a), X, (q0',q1',0), X, D)`.
    DuplicatorStep,
    /// `(q, X, q, X, 0)` for Player 0 states.
    IdleLoop,
    /// `(q, X, q, X, (-1,…,-1))` for Player 1 states.
    DrainLoop,

    /// `(p,p',m) -t,d-> (t,p',n)` in B.
    AnnounceSpoilerMove,
    /// `(t,p',n) -t',0-> (q,q',n)` in B.
    ReplayDuplicatorMove,
    /// `(p,p',m) -t,d'-> (t,t',n)` in B'.
    RecordResponse,
    /// `(t,t',n) -t',0-> (q,q',n)` in B'.
    CommitResponse,
    /// `(t,t',n) -s,0-> u` for `s ≠ t'` in B'.
    EscapeToUniversal,
    /// `u -c,0-> u` in B'.
    UniversalSelfLoop,
    /// `$`-loop with effect −1 on every pair state of B'.
    DuplicatorDollarLoop,
    /// Neutral `$`-loop on pair states of B whose line is black.
    BlackLineLoop,
    /// `$`-chain from `(p,p',0)` of length `W_{p,p'}(l)` in B.
    ThresholdChain,
}

impl Clause {
    pub const ALL: [Clause; 21] = [
        Clause::OwnMoveSpoiler,
        Clause::OwnMoveDuplicator,
        Clause::AnnounceTop,
        Clause::ChooseTransition,
        Clause::ImplementChoice,
        Clause::ConfirmChoice,
        Clause::MismatchToUniversal,
        Clause::UniversalLoop,
        Clause::SpoilerStep,
        Clause::DuplicatorStep,
        Clause::IdleLoop,
        Clause::DrainLoop,
        Clause::AnnounceSpoilerMove,
        Clause::ReplayDuplicatorMove,
        Clause::RecordResponse,
        Clause::CommitResponse,
        Clause::EscapeToUniversal,
        Clause::UniversalSelfLoop,
        Clause::DuplicatorDollarLoop,
        Clause::BlackLineLoop,
        Clause::ThresholdChain,
    ];

    pub fn reduction(self) -> Reduction {
        use Clause::*;
        match self {
            OwnMoveSpoiler | OwnMoveDuplicator | AnnounceTop | ChooseTransition
            | ImplementChoice | ConfirmChoice | MismatchToUniversal | UniversalLoop => {
                Reduction::EnergyToSimulation
            }
            SpoilerStep | DuplicatorStep | IdleLoop | DrainLoop => Reduction::SimulationToEnergy,
            _ => Reduction::OcaToOcn,
        }
    }

    pub fn note(self) -> &'static str {
        use Clause::*;
        match self {
            OwnMoveSpoiler => "player 0 transition, automaton copy labelled a_t",
            OwnMoveDuplicator => "player 0 transition, VASS copy labelled a_t",
            AnnounceTop => "dummy move announcing the top symbol a_X",
            ChooseTransition => "player 1 chooses t, recorded in q''_t",
            ImplementChoice => "Spoiler implements t from the hatted state",
            ConfirmChoice => "Duplicator confirms the recorded choice",
            MismatchToUniversal => "wrong announcement leads to the universal state",
            UniversalLoop => "universal state loop",
            SpoilerStep => "automaton step recorded with its action, energy unchanged",
            DuplicatorStep => "VASS step applied to the energy",
            IdleLoop => "deadlock completion for player 0, neutral",
            DrainLoop => "deadlock completion for player 1, all coordinates -1",
            AnnounceSpoilerMove => "B announces Spoiler's transition",
            ReplayDuplicatorMove => "B replays Duplicator's recorded transition",
            RecordResponse => "B' records Duplicator's response",
            CommitResponse => "B' commits to the recorded response",
            EscapeToUniversal => "B' escapes to u on an unfaithful replay",
            UniversalSelfLoop => "universal state loop of B'",
            DuplicatorDollarLoop => "$-loop with effect -1 on pair states of B'",
            BlackLineLoop => "neutral $-loop on a black line",
            ThresholdChain => "$-chain of W steps from residue 0",
        }
    }

    pub fn of(reduction: Reduction) -> Vec<Clause> {
        Clause::ALL.into_iter().filter(|c| c.reduction() == reduction).collect()
    }
}

/// Extend `names` by a variant of `base` not yet present.
pub(crate) fn fresh(names: &[String], base: String) -> String {
    let mut name = base;
    while names.contains(&name) {
        name.push('\'');
    }
    name
}
