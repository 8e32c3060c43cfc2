//! Colorings of simulation between an OCA and an OCN on finite grids, the
//! per-line summaries, and the search for periodicity parameters.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::models::{Lts, Oca, OcaConf, StateId};
use crate::reductions::OcaToOcnParams;
use crate::solvers::{solve_simulation_many, Bounds, Outcome, SimPair, SolveError, SolveOptions};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Color {
    White,
    Black,
    Unknown,
}

impl Color {
    pub fn from_outcome(o: Outcome) -> Color {
        match o {
            Outcome::Win1 => Color::White,
            Outcome::Win0 => Color::Black,
            Outcome::Unknown => Color::Unknown,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Color::White => 'W',
            Color::Black => 'B',
            Color::Unknown => '?',
        }
    }

    pub fn from_symbol(c: char) -> Option<Color> {
        match c {
            'W' => Some(Color::White),
            'B' => Some(Color::Black),
            '?' => Some(Color::Unknown),
            _ => None,
        }
    }
}

/// Cells `(p, p', m, m')` for `m <= m_max`, `m' <= m2_max`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColorGrid {
    pub left_states: Vec<String>,
    pub right_states: Vec<String>,
    pub m_max: usize,
    pub m2_max: usize,
    pub bounds: Bounds,
    cells: Vec<Color>,
}

impl ColorGrid {
    pub fn new(left_states: Vec<String>, right_states: Vec<String>, m_max: usize, m2_max: usize, bounds: Bounds) -> Self {
        let n = left_states.len() * right_states.len() * (m_max + 1) * (m2_max + 1);
        ColorGrid {
            left_states,
            right_states,
            m_max,
            m2_max,
            bounds,
            cells: vec![Color::Unknown; n],
        }
    }

    pub fn pairs(&self) -> impl Iterator<Item = (StateId, StateId)> + '_ {
        let n2 = self.right_states.len();
        (0..self.left_states.len()).flat_map(move |p| (0..n2).map(move |q| (p, q)))
    }

    fn at(&self, p: StateId, q: StateId, m: usize, m2: usize) -> usize {
        ((p * self.right_states.len() + q) * (self.m_max + 1) + m) * (self.m2_max + 1) + m2
    }

    pub fn get(&self, p: StateId, q: StateId, m: usize, m2: usize) -> Color {
        self.cells[self.at(p, q, m, m2)]
    }

    pub fn set(&mut self, p: StateId, q: StateId, m: usize, m2: usize, c: Color) {
        let i = self.at(p, q, m, m2);
        self.cells[i] = c;
    }

    pub fn column(&self, p: StateId, q: StateId, m: usize) -> &[Color] {
        let i = self.at(p, q, m, 0);
        &self.cells[i..i + self.m2_max + 1]
    }

    pub fn count(&self, c: Color) -> usize {
        self.cells.iter().filter(|&&x| x == c).count()
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fill {
    /// One solve per column top, then bottom-up until the first White.
    Shortcut,
    /// Every cell as a root of one shared solve.
    Batch,
}

pub fn compute_coloring(
    a: &Oca,
    a_prime: &Oca,
    m_max: usize,
    m2_max: usize,
    bounds: Bounds,
) -> Result<ColorGrid, SolveError> {
    compute_coloring_with(a, a_prime, m_max, m2_max, bounds, Fill::Shortcut, SolveOptions::default())
}

pub fn compute_coloring_with(
    a: &Oca,
    a_prime: &Oca,
    m_max: usize,
    m2_max: usize,
    bounds: Bounds,
    fill: Fill,
    opts: SolveOptions,
) -> Result<ColorGrid, SolveError> {
    let mut grid = ColorGrid::new(a.states.clone(), a_prime.states.clone(), m_max, m2_max, bounds);
    let opts = opts.without_strategies();
    let pair = |p, q, m: usize, m2: usize| SimPair::new(OcaConf::new(p, m as u32), OcaConf::new(q, m2 as u32));
    match fill {
        Fill::Batch => {
            let roots: Vec<_> = grid
                .pairs()
                .flat_map(|(p, q)| (0..=m_max).flat_map(move |m| (0..=m2_max).map(move |m2| pair(p, q, m, m2))))
                .collect();
            let sols = solve_simulation_many(a, a_prime, &roots, bounds, opts)?;
            for (r, s) in roots.iter().zip(sols) {
                grid.set(r.left.state, r.right.state, r.left.counter as usize, r.right.counter as usize, Color::from_outcome(s.verdict.outcome()));
            }
        }
        Fill::Shortcut => {
            let columns: Vec<(StateId, StateId, usize)> = grid
                .pairs()
                .flat_map(|(p, q)| (0..=m_max).map(move |m| (p, q, m)))
                .collect();
            let solve = |p, q, m, m2| -> Result<Color, SolveError> {
                let s = solve_simulation_many(a, a_prime, &[pair(p, q, m, m2)], bounds, opts)?;
                Ok(Color::from_outcome(s[0].verdict.outcome()))
            };
            let filled: Vec<Vec<Color>> = columns
                .par_iter()
                .map(|&(p, q, m)| -> Result<Vec<Color>, SolveError> {
                    let top = solve(p, q, m, m2_max)?;
                    if top == Color::Black {
                        return Ok(vec![Color::Black; m2_max + 1]);
                    }
                    let mut col = vec![Color::Unknown; m2_max + 1];
                    col[m2_max] = top;
                    for m2 in 0..m2_max {
                        let c = solve(p, q, m, m2)?;
                        col[m2] = c;
                        if c == Color::White {
                            col[m2..].fill(Color::White);
                            break;
                        }
                    }
                    Ok(col)
                })
                .collect::<Result<_, _>>()?;
            for (&(p, q, m), col) in columns.iter().zip(filled) {
                for (m2, c) in col.into_iter().enumerate() {
                    grid.set(p, q, m, m2, c);
                }
            }
        }
    }
    Ok(grid)
}

/// Column violations of monotonicity: a White cell with a definite Black
/// cell above it.
pub fn monotonicity_violations(grid: &ColorGrid) -> Vec<(StateId, StateId, usize, usize)> {
    let mut out = Vec::new();
    for (p, q) in grid.pairs() {
        for m in 0..=grid.m_max {
            let col = grid.column(p, q, m);
            for m2 in 0..grid.m2_max {
                if col[m2] == Color::White && col[m2 + 1..].contains(&Color::Black) {
                    out.push((p, q, m, m2));
                }
            }
        }
    }
    out
}

/// Whether a White cell's obligations are met one step out: for each
/// Spoiler step inside the grid, some Duplicator answer lands on a cell
/// that is not definitely Black.
pub fn locally_closed(grid: &ColorGrid, a: &Oca, a_prime: &Oca, p: StateId, q: StateId, m: usize, m2: usize) -> bool {
    let l = OcaConf::new(p, m as u32);
    let r = OcaConf::new(q, m2 as u32);
    let answers = a_prime.successors(&r);
    a.successors(&l).into_iter().all(|(act, l2)| {
        let name = &a.actions[act];
        if l2.counter as usize > grid.m_max {
            return true;
        }
        answers.iter().any(|(b, r2)| {
            &a_prime.actions[*b] == name
                && (r2.counter as usize > grid.m2_max
                    || grid.get(l2.state, r2.state, l2.counter as usize, r2.counter as usize) != Color::Black)
        })
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LineSummary {
    BlackWithinGrid,
    WhiteFrom(u32),
    Inconclusive,
}

impl LineSummary {
    pub fn of(col: &[Color]) -> LineSummary {
        if col.iter().all(|&c| c == Color::Black) {
            return LineSummary::BlackWithinGrid;
        }
        let Some(w) = col.iter().position(|&c| c != Color::Black) else {
            return LineSummary::BlackWithinGrid;
        };
        if col[w..].iter().all(|&c| c == Color::White) {
            LineSummary::WhiteFrom(w as u32)
        } else {
            LineSummary::Inconclusive
        }
    }

    pub fn is_black(self) -> Option<bool> {
        match self {
            LineSummary::BlackWithinGrid => Some(true),
            LineSummary::WhiteFrom(_) => Some(false),
            LineSummary::Inconclusive => None,
        }
    }
}

/// Summaries indexed by `[p][p'][i]`.
pub fn line_summaries(grid: &ColorGrid) -> Vec<Vec<Vec<LineSummary>>> {
    (0..grid.left_states.len())
        .map(|p| {
            (0..grid.right_states.len())
                .map(|q| (0..=grid.m_max).map(|i| LineSummary::of(grid.column(p, q, i))).collect())
                .collect()
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("no stable pattern in the grid")]
pub struct NoStablePattern;

/// The lexicographically least `(l, K)` whose pattern holds on the definite
/// part of the grid, with the tables read off at level `l`.
pub fn detect_periodic_parameters(grid: &ColorGrid) -> Result<OcaToOcnParams, NoStablePattern> {
    let lines = line_summaries(grid);
    let m_max = grid.m_max;
    for l in 1..=m_max / 2 {
        for k in 1..=m_max / 3 {
            if let Some(params) = try_params(&lines, m_max, l, k) {
                return Ok(params);
            }
        }
    }
    Err(NoStablePattern)
}

fn try_params(lines: &[Vec<Vec<LineSummary>>], m_max: usize, l: usize, k: usize) -> Option<OcaToOcnParams> {
    if l + k > m_max + 1 {
        return None;
    }
    let mut w_at_l = Vec::new();
    let mut black_line = Vec::new();
    for row in lines {
        let mut wrow = Vec::new();
        let mut brow = Vec::new();
        for line in row {
            for i in l..=m_max.saturating_sub(k) {
                let (x, y) = (line[i], line[i + k]);
                if let (Some(bx), Some(by)) = (x.is_black(), y.is_black()) {
                    if bx != by {
                        return None;
                    }
                }
                if let (LineSummary::WhiteFrom(wx), LineSummary::WhiteFrom(wy)) = (x, y) {
                    if wx > wy {
                        return None;
                    }
                }
            }
            let pattern: Option<Vec<bool>> = (l..l + k).map(|i| line[i].is_black()).collect();
            brow.push(pattern?);
            wrow.push(match line[l] {
                LineSummary::WhiteFrom(w) => Some(w),
                LineSummary::BlackWithinGrid => None,
                LineSummary::Inconclusive => return None,
            });
        }
        w_at_l.push(wrow);
        black_line.push(brow);
    }
    Some(OcaToOcnParams {
        l,
        k,
        w_at_l,
        black_line,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RenderFormat {
    Ascii,
    Pgm,
}

/// One row per Spoiler counter `m`, one character or pixel per `m'`. Grids
/// with several state pairs get one block per pair.
pub fn render_grid(grid: &ColorGrid, format: RenderFormat) -> Vec<u8> {
    let pairs: Vec<_> = grid.pairs().collect();
    match format {
        RenderFormat::Ascii => {
            let mut blocks = Vec::new();
            for &(p, q) in &pairs {
                let mut rows = Vec::new();
                if pairs.len() > 1 {
                    rows.push(format!("# {} {}", grid.left_states[p], grid.right_states[q]));
                }
                for m in 0..=grid.m_max {
                    rows.push(grid.column(p, q, m).iter().map(|c| c.symbol()).collect());
                }
                blocks.push(rows.join("\n"));
            }
            blocks.join("\n\n").into_bytes()
        }
        RenderFormat::Pgm => {
            let (w, h) = (grid.m2_max + 1, (grid.m_max + 1) * pairs.len());
            let mut out = format!("P5\n{w} {h}\n255\n").into_bytes();
            for &(p, q) in &pairs {
                for m in 0..=grid.m_max {
                    out.extend(grid.column(p, q, m).iter().map(|c| match c {
                        Color::White => 255u8,
                        Color::Black => 0,
                        Color::Unknown => 128,
                    }));
                }
            }
            out
        }
    }
}
