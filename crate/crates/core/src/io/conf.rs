//! Configuration strings as printed by the machines: `p:3` for a counter,
//! `q:1,2` for a vector, `q:X.Y.bot` for a stack (top first), and a
//! trailing `|e1,e2` for the energy of a game position.

use thiserror::Error;

use crate::models::{EnergyPos, OcaConf, OneCounterEnergyGame, PdaConf, PushdownEnergyGame, VassConf};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ConfError {
    #[error("`{0}`: expected `state:...`")]
    Syntax(String),
    #[error("unknown state `{0}`")]
    UnknownState(String),
    #[error("unknown stack symbol `{0}`")]
    UnknownSymbol(String),
    #[error("`{0}` is not a valid number")]
    Number(String),
    #[error("expected {expected} coordinates, found {found}")]
    Dimension { expected: usize, found: usize },
}

fn split_state<'a>(names: &[String], s: &'a str) -> Result<(usize, &'a str), ConfError> {
    let (state, rest) = s.rsplit_once(':').ok_or_else(|| ConfError::Syntax(s.to_string()))?;
    let id = names
        .iter()
        .position(|n| n == state)
        .ok_or_else(|| ConfError::UnknownState(state.to_string()))?;
    Ok((id, rest))
}

fn numbers<T: std::str::FromStr>(s: &str, dim: usize) -> Result<Vec<T>, ConfError> {
    let parts: Vec<&str> = if s.trim().is_empty() { Vec::new() } else { s.split(',').collect() };
    if parts.len() != dim {
        return Err(ConfError::Dimension {
            expected: dim,
            found: parts.len(),
        });
    }
    parts
        .iter()
        .map(|p| p.trim().parse().map_err(|_| ConfError::Number(p.to_string())))
        .collect()
}

pub fn parse_oca_conf(states: &[String], s: &str) -> Result<OcaConf, ConfError> {
    let (state, rest) = split_state(states, s.trim())?;
    let counter = rest.trim().parse().map_err(|_| ConfError::Number(rest.to_string()))?;
    Ok(OcaConf::new(state, counter))
}

pub fn parse_vass_conf(states: &[String], dim: usize, s: &str) -> Result<VassConf, ConfError> {
    let (state, rest) = split_state(states, s.trim())?;
    Ok(VassConf::new(state, numbers(rest, dim)?))
}

pub fn parse_pda_conf(states: &[String], alphabet: &[String], s: &str) -> Result<PdaConf, ConfError> {
    let (state, rest) = split_state(states, s.trim())?;
    let stack = rest
        .split('.')
        .map(|x| {
            alphabet
                .iter()
                .position(|a| a == x)
                .ok_or_else(|| ConfError::UnknownSymbol(x.to_string()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(PdaConf::new(state, &stack))
}

fn split_energy(s: &str, dim: usize) -> Result<(&str, Vec<i32>), ConfError> {
    let (node, e) = s.rsplit_once('|').ok_or_else(|| ConfError::Syntax(s.to_string()))?;
    Ok((node, numbers(e, dim)?))
}

pub fn parse_peg_pos(game: &PushdownEnergyGame, s: &str) -> Result<EnergyPos<PdaConf>, ConfError> {
    let (node, energy) = split_energy(s.trim(), game.dimension)?;
    Ok(EnergyPos::new(parse_pda_conf(&game.states, &game.stack_alphabet, node)?, energy))
}

pub fn parse_oceg_pos(game: &OneCounterEnergyGame, s: &str) -> Result<EnergyPos<OcaConf>, ConfError> {
    let (node, energy) = split_energy(s.trim(), game.dimension)?;
    Ok(EnergyPos::new(parse_oca_conf(&game.states, node)?, energy))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{EnergyArena, Lts, Oca, Player, Vass};

    fn names(xs: &[&str]) -> Vec<String> {
        xs.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn parses_what_describe_prints() {
        let oca = Oca::net(names(&["p", "q"]), names(&["a"]), Vec::new());
        let c = OcaConf::new(1, 7);
        assert_eq!(parse_oca_conf(&oca.states, &oca.describe(&c)).unwrap(), c);

        let vass = Vass {
            dimension: 2,
            states: names(&["s"]),
            actions: names(&["a"]),
            transitions: Vec::new(),
        };
        let v = VassConf::new(0, vec![1, 2]);
        assert_eq!(parse_vass_conf(&vass.states, 2, &vass.describe(&v)).unwrap(), v);

        let g = PushdownEnergyGame::new(
            vec![("p".into(), Player::P0)],
            names(&["bot", "X"]),
            2,
            Vec::new(),
        );
        let pos = g.initial(0, &[1, 1, 0], vec![3, -1]);
        assert_eq!(g.describe(&pos), "p:X.X.bot|3,-1");
        assert_eq!(parse_peg_pos(&g, "p:X.X.bot|3,-1").unwrap(), pos);
    }

    #[test]
    fn errors_are_specific() {
        let st = names(&["p"]);
        assert_eq!(parse_oca_conf(&st, "r:1"), Err(ConfError::UnknownState("r".into())));
        assert_eq!(parse_oca_conf(&st, "p"), Err(ConfError::Syntax("p".into())));
        assert!(matches!(parse_vass_conf(&st, 2, "p:1"), Err(ConfError::Dimension { .. })));
        assert!(matches!(parse_oca_conf(&st, "p:-1"), Err(ConfError::Number(_))));
    }
}
