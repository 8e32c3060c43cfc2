use thiserror::Error;

use crate::coloring::{line_summaries, Color, ColorGrid, LineSummary};
use crate::reductions::OcaToOcnParams;

use super::upc::Upc;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("not distillable: {0}")]
pub struct NotDistillable(pub String);

/// Read a UPC off a grid: the window is the grid up to
/// `(l + 2K, max WhiteFrom + 2)`, horizontal period `K`, vertical period 1.
///
/// Columns one period apart have thresholds differing by a constant shift,
/// which must be the same for every state pair.
pub fn coloring_to_upc(grid: &ColorGrid, params: &OcaToOcnParams) -> Result<Upc, NotDistillable> {
    let fail = |s: String| Err(NotDistillable(s));
    let (l, k) = (params.l, params.k);
    if k == 0 {
        return fail("period must be at least 1".into());
    }
    let m = l + 2 * k;
    if m > grid.m_max {
        return fail(format!("window column {m} is outside the grid"));
    }
    let lines = line_summaries(grid);
    let mut max_w = 0;
    let mut shift: Option<u32> = None;
    for (p, q) in grid.pairs() {
        let line = &lines[p][q];
        for i in 0..=m {
            match line[i] {
                LineSummary::WhiteFrom(w) => max_w = max_w.max(w as usize),
                LineSummary::BlackWithinGrid => {}
                LineSummary::Inconclusive => return fail(format!("line {i} is inconclusive")),
            }
        }
        for i in l + k..=m {
            if let (LineSummary::WhiteFrom(lo), LineSummary::WhiteFrom(hi)) = (line[i - k], line[i]) {
                let Some(d) = hi.checked_sub(lo) else {
                    return fail(format!("thresholds decrease at line {i}"));
                };
                match shift {
                    None => shift = Some(d),
                    Some(s) if s == d => {}
                    Some(s) => return fail(format!("threshold shifts {s} and {d} differ")),
                }
            }
        }
    }
    let m2 = max_w + 2;
    if m2 > grid.m2_max {
        return fail(format!("window row {m2} is outside the grid"));
    }
    let mut unknown = false;
    let upc = Upc::from_fn(
        grid.left_states.clone(),
        grid.right_states.clone(),
        (m, k, m2, 1, shift.unwrap_or(0) as usize),
        |p, q, i, j| {
            let c = grid.get(p, q, i, j);
            unknown |= c == Color::Unknown;
            c == Color::White
        },
    )
    .map_err(|e| NotDistillable(e.to_string()))?;
    if unknown {
        return fail("Unknown cells inside the window".into());
    }
    upc.validate().map_err(|e| NotDistillable(e.to_string()))?;
    for (p, q) in grid.pairs() {
        for i in 0..=grid.m_max {
            for (j, &c) in grid.column(p, q, i).iter().enumerate() {
                if c != Color::Unknown && upc.white(p, q, i, j) != (c == Color::White) {
                    return fail(format!(
                        "tiling disagrees with the grid at ({}, {i}, {}, {j})",
                        grid.left_states[p], grid.right_states[q]
                    ));
                }
            }
        }
    }
    Ok(upc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::{compute_coloring, detect_periodic_parameters};
    use crate::models::{Oca, OcaRule};
    use crate::semilinear::{check_simulation_candidate, SimPoint};
    use crate::solvers::Bounds;

    fn grid_from(rows: &[&str]) -> ColorGrid {
        let mut g = ColorGrid::new(vec!["p".into()], vec!["q".into()], rows.len() - 1, rows[0].len() - 1, Bounds::new(1, 1, 1));
        for (m, row) in rows.iter().enumerate() {
            for (j, ch) in row.chars().enumerate() {
                g.set(0, 0, m, j, Color::from_symbol(ch).unwrap());
            }
        }
        g
    }

    #[test]
    fn constant_threshold_gives_unit_periods() {
        let g = grid_from(&["BWWWWW"; 8]);
        let params = detect_periodic_parameters(&g).unwrap();
        let u = coloring_to_upc(&g, &params).unwrap();
        assert_eq!((u.p, u.p2, u.shift), (1, 1, 0));
    }

    #[test]
    fn alternating_black_lines_give_period_two() {
        let rows = ["BBBBB", "BWWWW", "BBBBB", "BWWWW", "BBBBB", "BWWWW", "BBBBB", "BWWWW", "BBBBB"];
        let g = grid_from(&rows);
        let params = detect_periodic_parameters(&g).unwrap();
        let u = coloring_to_upc(&g, &params).unwrap();
        assert_eq!(u.p, 2);
    }

    #[test]
    fn unknown_cells_block_distillation() {
        let g = grid_from(&["B?WWWW"; 8]);
        let params = OcaToOcnParams {
            l: 1,
            k: 1,
            w_at_l: vec![vec![Some(2)]],
            black_line: vec![vec![vec![false]]],
        };
        assert!(coloring_to_upc(&g, &params).is_err());
    }

    #[test]
    fn staircase_pipeline_is_accepted() {
        let a = Oca::net(
            vec!["s".into()],
            vec!["a".into()],
            vec![OcaRule {
                src: 0,
                action: 0,
                delta: -1,
                dst: 0,
            }],
        );
        let g = compute_coloring(&a, &a, 10, 10, Bounds::new(16, 16, 40)).unwrap();
        assert_eq!(g.count(Color::Unknown), 0);
        let params = detect_periodic_parameters(&g).unwrap();
        let u = coloring_to_upc(&g, &params).unwrap();
        assert_eq!(u.shift, 1);
        let r = check_simulation_candidate(&a, &a, &u, &[SimPoint::new(0, 3, 0, 5)]).unwrap();
        assert!(r.is_accepted());
    }
}
