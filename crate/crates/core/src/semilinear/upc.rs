use thiserror::Error;

use crate::coloring::Color;
use crate::models::StateId;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum UpcError {
    #[error("unknown state pair ({0}, {1})")]
    UnknownPair(usize, usize),
    #[error("invalid coloring: {0}")]
    InvalidUpc(String),
    #[error("the Duplicator side must be a one-counter net")]
    NotANet,
}

/// An ultimately periodic coloring of `Q × ℕ × Q' × ℕ`.
///
/// Each state pair has an explicit window over `[0, M] × [0, M']`. Beyond
/// `M`, columns repeat with period `P`, shifted up by `shift` per period
/// (cells pushed below zero are Black). Beyond `M'`, rows repeat with period
/// `P'`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Upc {
    pub left_states: Vec<String>,
    pub right_states: Vec<String>,
    pub m: usize,
    pub p: usize,
    pub m2: usize,
    pub p2: usize,
    pub shift: usize,
    /// `window[pair][m * (M' + 1) + m']`, with pairs in row-major order.
    window: Vec<Vec<bool>>,
}

impl Upc {
    /// A coloring with every window cell set by `white`.
    pub fn from_fn<F>(
        left_states: Vec<String>,
        right_states: Vec<String>,
        (m, p, m2, p2, shift): (usize, usize, usize, usize, usize),
        mut white: F,
    ) -> Result<Upc, UpcError>
    where
        F: FnMut(StateId, StateId, usize, usize) -> bool,
    {
        let mut window = Vec::new();
        for a in 0..left_states.len() {
            for b in 0..right_states.len() {
                let mut w = Vec::with_capacity((m + 1) * (m2 + 1));
                for i in 0..=m {
                    for j in 0..=m2 {
                        w.push(white(a, b, i, j));
                    }
                }
                window.push(w);
            }
        }
        let u = Upc {
            left_states,
            right_states,
            m,
            p,
            m2,
            p2,
            shift,
            window,
        };
        u.check_shape()?;
        Ok(u)
    }

    pub fn all_white(left_states: Vec<String>, right_states: Vec<String>) -> Upc {
        Upc::from_fn(left_states, right_states, (0, 1, 0, 1, 0), |_, _, _, _| true).expect("valid shape")
    }

    pub fn all_black(left_states: Vec<String>, right_states: Vec<String>) -> Upc {
        Upc::from_fn(left_states, right_states, (0, 1, 0, 1, 0), |_, _, _, _| false).expect("valid shape")
    }

    pub fn check_shape(&self) -> Result<(), UpcError> {
        if self.p == 0 || self.p2 == 0 {
            return Err(UpcError::InvalidUpc("periods must be at least 1".into()));
        }
        if self.p > self.m + 1 || self.p2 > self.m2 + 1 {
            return Err(UpcError::InvalidUpc("a period exceeds its window".into()));
        }
        let cells = (self.m + 1) * (self.m2 + 1);
        if self.window.len() != self.left_states.len() * self.right_states.len()
            || self.window.iter().any(|w| w.len() != cells)
        {
            return Err(UpcError::InvalidUpc("window has the wrong size".into()));
        }
        Ok(())
    }

    /// The invariants: shape, plus column monotonicity on the test window.
    pub fn validate(&self) -> Result<(), UpcError> {
        self.check_shape()?;
        let (wm, wm2) = self.test_window();
        for a in 0..self.left_states.len() {
            for b in 0..self.right_states.len() {
                for i in 0..=wm {
                    for j in 0..wm2 {
                        if self.white(a, b, i, j) && !self.white(a, b, i, j + 1) {
                            return Err(UpcError::InvalidUpc(format!(
                                "column {i} of ({}, {}) turns Black above {j}",
                                self.left_states[a], self.right_states[b]
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// The window on which closure is checked: `[0, M + 2P] × [0, M' + 2P' + 3·shift + 2]`.
    pub fn test_window(&self) -> (usize, usize) {
        (self.m + 2 * self.p, self.m2 + 2 * self.p2 + 3 * self.shift + 2)
    }

    /// The window cell representing `(m, m')`, or `None` if it folds below
    /// zero.
    pub fn representative(&self, m: usize, m2: usize) -> Option<(usize, usize)> {
        let (mut i, mut j) = (m, m2 as i64);
        if i > self.m {
            let periods = (i - self.m).div_ceil(self.p);
            i -= periods * self.p;
            j -= (periods * self.shift) as i64;
        }
        if j < 0 {
            return None;
        }
        let mut j = j as usize;
        if j > self.m2 {
            let base = self.m2 + 1 - self.p2;
            j = base + (j - base) % self.p2;
        }
        Some((i, j))
    }

    pub fn white(&self, a: StateId, b: StateId, m: usize, m2: usize) -> bool {
        match self.representative(m, m2) {
            Some((i, j)) => self.window[a * self.right_states.len() + b][i * (self.m2 + 1) + j],
            None => false,
        }
    }

    pub fn color(&self, a: StateId, b: StateId, m: usize, m2: usize) -> Result<Color, UpcError> {
        if a >= self.left_states.len() || b >= self.right_states.len() {
            return Err(UpcError::UnknownPair(a, b));
        }
        Ok(if self.white(a, b, m, m2) { Color::White } else { Color::Black })
    }

    pub fn window_cell(&self, a: StateId, b: StateId, i: usize, j: usize) -> bool {
        self.window[a * self.right_states.len() + b][i * (self.m2 + 1) + j]
    }

    pub fn set_window_cell(&mut self, a: StateId, b: StateId, i: usize, j: usize, white: bool) {
        let n = self.m2 + 1;
        self.window[a * self.right_states.len() + b][i * n + j] = white;
    }

    /// Window rows as strings of `W`/`B`, one per `m`.
    pub fn window_rows(&self, a: StateId, b: StateId) -> Vec<String> {
        (0..=self.m)
            .map(|i| {
                (0..=self.m2)
                    .map(|j| if self.window_cell(a, b, i, j) { 'W' } else { 'B' })
                    .collect()
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(n: &str) -> Vec<String> {
        vec![n.into()]
    }

    fn staircase() -> Upc {
        Upc::from_fn(names("p"), names("q"), (3, 1, 5, 1, 1), |_, _, i, j| j >= i).unwrap()
    }

    #[test]
    fn in_window_lookup() {
        let u = staircase();
        assert_eq!(u.color(0, 0, 2, 2).unwrap(), Color::White);
        assert_eq!(u.color(0, 0, 2, 1).unwrap(), Color::Black);
    }

    #[test]
    fn horizontal_fold_with_shift() {
        let u = staircase();
        for m in 0..40 {
            for m2 in 0..40 {
                assert_eq!(u.white(0, 0, m, m2), m2 >= m, "({m},{m2})");
            }
        }
    }

    #[test]
    fn periodic_tails() {
        let u = Upc::from_fn(names("p"), names("q"), (4, 2, 3, 2, 0), |_, _, i, j| (i + j) % 2 == 0).unwrap();
        for (m, m2) in [(u.m + u.p, 1), (u.m + 3 * u.p + 1, u.m2 + 2 * u.p2), (2, u.m2 + 1)] {
            let (i, j) = u.representative(m, m2).unwrap();
            assert_eq!(u.white(0, 0, m, m2), u.window_cell(0, 0, i, j));
        }
        for m in u.m + 1..30 {
            for m2 in 0..30 {
                assert_eq!(u.white(0, 0, m, m2), u.white(0, 0, m + u.p, m2));
            }
        }
        for m in 0..30 {
            for m2 in u.m2 + 1..30 {
                assert_eq!(u.white(0, 0, m, m2), u.white(0, 0, m, m2 + u.p2));
            }
        }
    }

    #[test]
    fn unknown_pair_is_reported() {
        assert_eq!(staircase().color(1, 0, 0, 0), Err(UpcError::UnknownPair(1, 0)));
    }

    #[test]
    fn nonmonotone_column_is_invalid() {
        let u = Upc::from_fn(names("p"), names("q"), (1, 1, 2, 1, 0), |_, _, _, j| j == 0).unwrap();
        assert!(u.validate().is_err());
        assert!(staircase().validate().is_ok());
    }
}
