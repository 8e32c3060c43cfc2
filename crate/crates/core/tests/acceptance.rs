//! Acceptance campaign: one PASS/FAIL line per criterion. Run with
//! `cargo test --test acceptance`.

mod common;

use std::collections::HashSet;
use std::fmt::Write as _;
use std::time::{Duration, Instant};

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use energy_sim::batch::{run_batch, BatchOp, BatchSpec};
use energy_sim::coloring::{compute_coloring, detect_periodic_parameters, monotonicity_violations, Color, ColorGrid};
use energy_sim::gadgets::{corpus, mcm_to_ocn_vs_vass, mcm_to_pushdown_energy, PushdownGadget, SimulationGadget};
use energy_sim::gen::{instance_rng, random_oca, random_oceg, GenConfig};
use energy_sim::models::{EnergyArena, EnergyPos, Lts, Mcm, Oca, OcaConf, PdaConf, VassConf};
use energy_sim::reductions::{oca_ocn_to_ocn_ocn, OcaToOcnParams};
use energy_sim::semilinear::{
    check_simulation_candidate, coloring_to_upc, enumerate_and_decide, CheckResult, DecideBudget, Decision,
    RejectReason, SimPoint, Upc,
};
use energy_sim::solvers::{
    solve_energy_bounded, solve_energy_many, solve_simulation_bounded, solve_simulation_many, Bounds, Outcome,
    SolveOptions,
};

use common::{closure_violation, mcm_edges, oca_steps, record_effect, Approximants};

const SEED: u64 = 42;
const MIN_DEFINITE: f64 = 0.70;
const CAMPAIGN_LIMIT: Duration = Duration::from_secs(300);
const CHECKER_LIMIT: Duration = Duration::from_secs(180);
const GADGET_LIMIT: Duration = Duration::from_secs(180);
const MIN_MONOTONE_CELLS: usize = 10_000;
const BB_PAIRS: usize = 20;
const UPC_PAIRS: usize = 10;
const PERTURBATIONS: usize = 50;
const DECIDE_CORPUS: usize = 30;
const GRID: usize = 30;
const GRID_BOUNDS: Bounds = Bounds {
    counter_cap: 45,
    energy_cap: 1,
    round_cap: 90,
};
const PREFIX: usize = 8;

struct Verdict {
    pass: bool,
    detail: String,
}

/// Everything a run produces; two runs must agree on `transcript`.
struct Run {
    verdicts: Vec<Verdict>,
    transcript: String,
}

fn pair_config() -> GenConfig {
    GenConfig {
        min_states: 1,
        max_states: 2,
        actions: 2,
        max_branch: 2,
        density: 0.8,
        zero_tests: 0.5,
    }
}

fn campaign(op: BatchOp, count: usize, rate: bool, t: &mut String) -> Verdict {
    let start = Instant::now();
    let r = run_batch(&BatchSpec::new(op, SEED, count));
    let elapsed = start.elapsed();
    let s = &r.summary;
    let mut pass = s.disagree == 0 && s.errors == 0;
    if rate {
        pass &= s.definite_rate() >= MIN_DEFINITE && elapsed < CAMPAIGN_LIMIT;
    }
    t.push_str(&serde_json::to_string(&r).unwrap());
    let detail = format!("{} in {:.1}s", r.human_summary(), elapsed.as_secs_f64());
    Verdict { pass, detail }
}

/// A random OCA/OCN pair with a fully definite grid and detected
/// parameters.
struct GridPair {
    index: u64,
    a: Oca,
    b: Oca,
    grid: ColorGrid,
    params: OcaToOcnParams,
}

/// Pairs from the seeded stream until `want` have definite grids with a
/// candidate; also counts NoStablePattern and non-definite grids.
fn grid_pairs(want: usize) -> (Vec<GridPair>, Vec<ColorGrid>, usize, usize) {
    let cfg = pair_config();
    let mut found = Vec::new();
    let mut all = Vec::new();
    let (mut no_pattern, mut indefinite) = (0, 0);
    let mut i = 0;
    while found.len() < want && i < 200 {
        let mut rng = instance_rng(SEED, 10_000 + i);
        let a = random_oca(&mut rng, &cfg, false);
        let b = random_oca(&mut rng, &cfg, true);
        let grid = compute_coloring(&a, &b, GRID, GRID, GRID_BOUNDS).expect("grid");
        all.push(grid.clone());
        match detect_periodic_parameters(&grid) {
            Err(_) => no_pattern += 1,
            Ok(_) if grid.count(Color::Unknown) > 0 => indefinite += 1,
            Ok(params) => found.push(GridPair {
                index: i,
                a,
                b,
                grid,
                params,
            }),
        }
        i += 1;
    }
    (found, all, no_pattern, indefinite)
}

fn monotonicity(grids: &[ColorGrid], t: &mut String) -> Verdict {
    let mut cells = 0;
    let mut violations = 0;
    for g in grids {
        cells += g.len() - g.count(Color::Unknown);
        violations += monotonicity_violations(g).len();
    }
    let grid_cells = cells;
    // Upward closure in the energy: Win1 at e implies Win1 at e + 1.
    let cfg = GenConfig {
        min_states: 1,
        max_states: 3,
        ..GenConfig::default()
    };
    let bounds = Bounds::new(12, 12, 40);
    let max_e = 8;
    for i in 0..100 {
        let g = random_oceg(&mut instance_rng(SEED, 20_000 + i), &cfg);
        let mut inits = Vec::new();
        for s in 0..g.states.len() {
            for c in 0..=3 {
                for e in 0..=max_e {
                    inits.push(EnergyPos::new(OcaConf::new(s, c), vec![e]));
                }
            }
        }
        let sols = solve_energy_many(&g, &inits, bounds, SolveOptions::default().without_strategies()).expect("solve");
        let out: Vec<Outcome> = sols.iter().map(|s| s.verdict.outcome()).collect();
        for col in out.chunks((max_e + 1) as usize) {
            cells += col.iter().filter(|o| o.is_definite()).count();
            for e in 0..col.len() {
                for f in e + 1..col.len() {
                    if col[e] == Outcome::Win1 && col[f] == Outcome::Win0 {
                        violations += 1;
                    }
                }
            }
        }
    }
    let _ = write!(t, "|monotone {cells} {violations}");
    Verdict {
        pass: violations == 0 && cells >= MIN_MONOTONE_CELLS,
        detail: format!(
            "{cells} definite cells checked ({grid_cells} grid, {} energy), {violations} violations",
            cells - grid_cells
        ),
    }
}

fn bb_end_to_end(pairs: &[GridPair], no_pattern: usize, indefinite: usize, t: &mut String) -> Verdict {
    let mut points = 0;
    let mut violations = 0;
    for gp in pairs {
        let r = oca_ocn_to_ocn_ocn(&gp.a, &gp.b, &gp.params).expect("reduction");
        let l = gp.params.l;
        let mut roots = Vec::new();
        let mut left = Vec::new();
        for (p, q) in gp.grid.pairs() {
            for m in 0..=GRID - l {
                for m2 in 0..=GRID {
                    let c = gp.grid.get(p, q, m + l, m2);
                    roots.push(r.map(p, m as u32, q, m2 as u32));
                    left.push(c);
                }
            }
        }
        let sols = solve_simulation_many(&r.spoiler, &r.duplicator, &roots, GRID_BOUNDS, SolveOptions::default().without_strategies())
            .expect("solve");
        for (c, s) in left.iter().zip(&sols) {
            let right = Color::from_outcome(s.verdict.outcome());
            if *c != Color::Unknown && right != Color::Unknown {
                points += 1;
                if *c != right {
                    violations += 1;
                }
            }
        }
        let _ = write!(t, "|bb {} l={} k={} {points} {violations}", gp.index, l, gp.params.k);
    }
    Verdict {
        pass: pairs.len() >= BB_PAIRS && violations == 0,
        detail: format!(
            "{} pairs with candidates, {points} points definite on both sides, {violations} violations; {no_pattern} NoStablePattern and {indefinite} non-definite grids reported",
            pairs.len()
        ),
    }
}

/// Black window cells whose flip to White keeps every column monotone.
fn flippable(u: &Upc) -> Vec<(usize, usize, usize, usize)> {
    let mut out = Vec::new();
    for p in 0..u.left_states.len() {
        for q in 0..u.right_states.len() {
            for i in 0..=u.m {
                for j in 0..=u.m2 {
                    let top = j == u.m2 || u.window_cell(p, q, i, j + 1);
                    if !u.window_cell(p, q, i, j) && top {
                        out.push((p, q, i, j));
                    }
                }
            }
        }
    }
    out
}

fn sweep_violations(a: &Oca, b: &Oca, u: &Upc) -> usize {
    let white = |p: usize, m: u32, q: usize, m2: u32| u.white(p, q, m as usize, m2 as usize);
    let (mh, mv) = (u.m + 3 * u.p, u.m2 + 3 * u.p2 + 3 * u.shift + 2);
    let mut n = 0;
    for p in 0..a.states.len() {
        for q in 0..b.states.len() {
            for m in 0..=mh {
                for m2 in 0..=mv {
                    if closure_violation(a, b, &white, p, m as u32, q, m2 as u32).is_some() {
                        n += 1;
                    }
                }
            }
        }
    }
    n
}

fn witness_confirmed(a: &Oca, b: &Oca, u: &Upc, point: SimPoint, reason: &RejectReason) -> bool {
    let RejectReason::UnmatchedStep {
        action,
        target_state,
        target_counter,
    } = reason
    else {
        return false;
    };
    let white = |p: usize, m: u32, q: usize, m2: u32| u.white(p, q, m as usize, m2 as usize);
    if !white(point.left, point.m, point.right, point.m2) {
        return false;
    }
    let step = (action.clone(), *target_state, *target_counter);
    if !oca_steps(a, point.left, point.m).contains(&step) {
        return false;
    }
    !oca_steps(b, point.right, point.m2)
        .iter()
        .any(|(act, q2, n2)| act == action && white(*target_state, *target_counter, *q2, *n2))
}

fn semilinear(pairs: &[GridPair], t: &mut String) -> Verdict {
    let start = Instant::now();
    let mut accepted = 0;
    let mut rejected_ok = 0;
    let mut perturbations = 0;
    let mut sweep = 0;
    let mut perturbed = 0;
    let mut all_white = 0;
    let mut failures = Vec::new();
    for gp in pairs {
        let Ok(u) = coloring_to_upc(&gp.grid, &gp.params) else {
            continue;
        };
        match check_simulation_candidate(&gp.a, &gp.b, &u, &[]).expect("check") {
            CheckResult::Accepted => accepted += 1,
            r => {
                failures.push(format!("pair {} rejected: {r:?}", gp.index));
                continue;
            }
        }
        sweep += sweep_violations(&gp.a, &gp.b, &u);
        let cells = flippable(&u);
        if cells.is_empty() {
            all_white += 1;
            continue;
        }
        perturbed += 1;
        let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ gp.index);
        for _ in 0..PERTURBATIONS {
            let (p, q, i, j) = cells[rng.random_range(0..cells.len())];
            let mut v = u.clone();
            v.set_window_cell(p, q, i, j, true);
            perturbations += 1;
            match check_simulation_candidate(&gp.a, &gp.b, &v, &[]).expect("check") {
                CheckResult::Rejected { point, reason } if witness_confirmed(&gp.a, &gp.b, &v, point, &reason) => {
                    rejected_ok += 1
                }
                r => failures.push(format!("pair {} flip ({p},{q},{i},{j}): {r:?}", gp.index)),
            }
        }
        if perturbed >= UPC_PAIRS && start.elapsed() > CHECKER_LIMIT / 2 {
            break;
        }
    }
    let elapsed = start.elapsed();
    let _ = write!(t, "|upc {accepted} {perturbed} {rejected_ok}/{perturbations} {sweep}");
    for f in failures.iter().take(3) {
        println!("    {f}");
    }
    Verdict {
        pass: perturbed >= UPC_PAIRS && failures.is_empty() && sweep == 0 && elapsed < CHECKER_LIMIT,
        detail: format!(
            "{accepted} distilled UPCs accepted ({all_white} all White), {perturbed} perturbed: {rejected_ok}/{perturbations} perturbations rejected with confirmed witnesses, {sweep} closure violations in the +3 period sweep, {:.1}s",
            elapsed.as_secs_f64()
        ),
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Truth {
    Simulated,
    NotSimulated,
}

/// Approximants up to depth 8 over counters up to 12, exact for roots with
/// counters up to 4. A simulated label needs the last two approximants to
/// agree on that region.
fn brute_force(a: &Oca, b: &Oca, pt: SimPoint) -> Option<Truth> {
    let (n, k, exact) = (12, 8, 4);
    let ap = Approximants::compute(a, b, n, k);
    if !ap.at(k, pt.left, pt.m, pt.right, pt.m2) {
        return Some(Truth::NotSimulated);
    }
    for p in 0..a.states.len() {
        for q in 0..b.states.len() {
            for m in 0..=exact {
                for m2 in 0..=exact {
                    if ap.at(k, p, m, q, m2) != ap.at(k - 1, p, m, q, m2) {
                        return None;
                    }
                }
            }
        }
    }
    Some(Truth::Simulated)
}

fn decide_corpus() -> Vec<(u64, Oca, Oca, SimPoint, Truth)> {
    let cfg = pair_config();
    let mut out = Vec::new();
    let (mut sims, mut non) = (0, 0);
    let half = DECIDE_CORPUS / 2;
    let mut i = 0;
    while out.len() < DECIDE_CORPUS && i < 2000 {
        let mut rng = instance_rng(SEED, 30_000 + i);
        let a = random_oca(&mut rng, &cfg, false);
        let b = random_oca(&mut rng, &cfg, true);
        let pt = SimPoint::new(
            rng.random_range(0..a.states.len()),
            rng.random_range(0..=3),
            rng.random_range(0..b.states.len()),
            rng.random_range(0..=3),
        );
        match brute_force(&a, &b, pt) {
            Some(Truth::Simulated) if sims < half => {
                sims += 1;
                out.push((i, a, b, pt, Truth::Simulated));
            }
            Some(Truth::NotSimulated) if non < DECIDE_CORPUS - half => {
                non += 1;
                out.push((i, a, b, pt, Truth::NotSimulated));
            }
            _ => {}
        }
        i += 1;
    }
    out
}

fn decide(t: &mut String) -> Verdict {
    let corpus = decide_corpus();
    let budget = DecideBudget {
        wall_clock: Duration::from_secs(60),
        max_stages: 3,
        ..DecideBudget::default()
    };
    let (mut wrong, mut non_total, mut non_resolved, mut sim_total, mut sim_resolved) = (0, 0, 0, 0, 0);
    for (i, a, b, pt, truth) in &corpus {
        let d = enumerate_and_decide(a, b, *pt, &budget).expect("decide");
        let got = match &d {
            Decision::Win1(_) => Some(Truth::Simulated),
            Decision::Win0 { .. } => Some(Truth::NotSimulated),
            Decision::BudgetExhausted { .. } => None,
        };
        match truth {
            Truth::Simulated => sim_total += 1,
            Truth::NotSimulated => non_total += 1,
        }
        if let Some(g) = got {
            if g != *truth {
                wrong += 1;
                println!("    instance {i} {pt:?}: decided {g:?}, brute force says {truth:?}");
            } else if g == Truth::Simulated {
                sim_resolved += 1;
            } else {
                non_resolved += 1;
            }
        }
        let _ = write!(t, "|decide {i} {}", d.as_str());
    }
    Verdict {
        pass: corpus.len() == DECIDE_CORPUS && wrong == 0 && non_resolved == non_total,
        detail: format!(
            "{} instances, {wrong} wrong; non-simulation resolved {non_resolved}/{non_total}; simulation resolution rate {sim_resolved}/{sim_total} ({:.0}%)",
            corpus.len(),
            if sim_total == 0 { 0.0 } else { 100.0 * sim_resolved as f64 / sim_total as f64 }
        ),
    }
}

/// Gadget type and counter of a state named `gadget{k}:c{c}`.
fn gadget_of(name: &str) -> Option<(u8, u8)> {
    let rest = name.strip_prefix("gadget")?;
    let (k, c) = rest.split_once(":c")?;
    Some((k.parse().ok()?, c.parse().ok()?))
}

/// Walks every Player 1 prefix of up to `PREFIX` records and, at every
/// challengeable record, plays the gadget out. Returns (checked, wrong).
fn pushdown_classification(m: &Mcm, g: &PushdownGadget) -> (usize, usize) {
    let game = &g.game;
    let mut checked = 0;
    let mut wrong = 0;
    for credit in 0..=2 {
        let mut stack = vec![(g.initial(credit), 0usize)];
        while let Some((pos, pushes)) = stack.pop() {
            let state = pos.node.state;
            if state == m.halt {
                continue;
            }
            let (_, moves) = game.game_moves(&pos);
            if state < m.states.len() {
                // Player 1 writes the next record; the oracle's edges must
                // be exactly the game's.
                let labels: HashSet<String> = moves
                    .iter()
                    .map(|(_, p)| game.stack_alphabet[p.node.top()].clone())
                    .collect();
                let expected: HashSet<String> = mcm_edges(m, state).into_iter().map(|(l, _)| l).collect();
                if labels != expected {
                    wrong += 1;
                }
                if pushes < PREFIX {
                    stack.extend(moves.into_iter().map(|(_, p)| (p, pushes + 1)));
                }
                continue;
            }
            for (_, next) in moves {
                match gadget_of(&game.states[next.node.state]) {
                    None => stack.push((next, pushes)),
                    Some((kind, c)) => {
                        checked += 1;
                        let x: i64 = next.node.stack.iter().map(|&s| record_effect(&game.stack_alphabet[s], c)).sum();
                        let refuted = if kind == 1 { x > credit as i64 } else { x < -(credit as i64) };
                        if play_out(g, next) != refuted {
                            wrong += 1;
                        }
                    }
                }
            }
        }
    }
    (checked, wrong)
}

/// Follows the forced gadget moves down to the bottom; whether the energy
/// went negative on the way.
fn play_out(g: &PushdownGadget, mut pos: EnergyPos<PdaConf>) -> bool {
    loop {
        if pos.bankrupt() {
            return true;
        }
        if gadget_of(g.game.states[pos.node.state].trim_end_matches("-2")).is_none() {
            return false;
        }
        let (_, moves) = g.game.game_moves(&pos);
        assert_eq!(moves.len(), 1, "gadget moves are forced");
        pos = moves.into_iter().next().unwrap().1;
    }
}

/// Joint plays of up to `PREFIX` rounds in which Duplicator answers with
/// any move for the same action. Checks `z = x + y` at matching machine
/// states and classifies every challenged zero claim. Returns
/// (invariant checks, challenges, wrong).
fn ocn_vass_invariants(m: &Mcm, g: &SimulationGadget) -> (usize, usize, usize) {
    let (sp, du) = (&g.spoiler, &g.duplicator);
    let (mut checks, mut challenges, mut wrong) = (0, 0, 0);
    let mut stack = vec![(g.initial.left, g.initial.right.clone(), 0usize)];
    while let Some((l, r, depth)) = stack.pop() {
        let (ln, rn) = (&sp.states[l.state], &du.states[r.state]);
        if ln == rn && m.states.contains(ln) {
            checks += 1;
            if l.counter != r.vector[0] + r.vector[1] {
                wrong += 1;
            }
        }
        if let Some(q) = ln.strip_prefix('^') {
            if *rn == format!("{q}#zero") {
                let k = tested_counter(m, q);
                challenges += 1;
                let (z, other) = (l.counter, r.vector[1 - k]);
                let spoiler_wins = challenge_outcome(g, l, r.clone());
                if spoiler_wins != (z > other) || spoiler_wins != (r.vector[k] > 0) {
                    wrong += 1;
                }
            }
        }
        if depth == PREFIX || ln.starts_with("check") || rn == "U" {
            continue;
        }
        let answers = du.successors(&r);
        for (a, l2) in sp.successors(&l) {
            for (b, r2) in &answers {
                if sp.actions[a] == du.actions[*b] {
                    stack.push((l2, r2.clone(), depth + 1));
                }
            }
        }
    }
    (checks, challenges, wrong)
}

fn tested_counter(m: &Mcm, state: &str) -> usize {
    let s = m.states.iter().position(|n| n == state).unwrap();
    match m.rule(s) {
        Some(energy_sim::models::McmRule::Test { counter, .. }) => counter as usize - 1,
        _ => unreachable!("hat states belong to tests"),
    }
}

/// Spoiler issues the challenge and then races. They win iff at some point
/// they can move and Duplicator cannot.
fn challenge_outcome(g: &SimulationGadget, l: OcaConf, r: VassConf) -> bool {
    let (sp, du) = (&g.spoiler, &g.duplicator);
    let c = sp.actions.iter().position(|a| a == "c").unwrap();
    let mut cur: Vec<(OcaConf, VassConf)> = vec![(l, r)];
    while let Some((l, r)) = cur.pop() {
        for (a, l2) in sp.successors(&l).into_iter().filter(|(a, _)| *a == c) {
            let answers: Vec<VassConf> = du
                .successors(&r)
                .into_iter()
                .filter(|(b, _)| du.actions[*b] == sp.actions[a])
                .map(|(_, r2)| r2)
                .collect();
            if answers.is_empty() {
                return true;
            }
            cur.extend(answers.into_iter().map(|r2| (l2, r2)));
        }
    }
    false
}

fn gadgets(t: &mut String) -> Verdict {
    let start = Instant::now();
    let mut notes = Vec::new();
    let mut pass = true;
    let halt3 = corpus::halt3();
    let lp = corpus::looping();
    for (name, m, halts) in [("HALT3", &halt3, true), ("LOOP", &lp, false)] {
        let pg = mcm_to_pushdown_energy(m).expect("gadget");
        let credits: Vec<Outcome> = (0..=4)
            .map(|e| solve_energy_bounded(&pg.game, &pg.initial(e), Bounds::new(12, 12, 40)).unwrap().verdict.outcome())
            .collect();
        let sg = mcm_to_ocn_vs_vass(m).expect("gadget");
        let sim = solve_simulation_bounded(&sg.spoiler, &sg.duplicator, &sg.initial, Bounds::new(10, 10, 40))
            .unwrap()
            .verdict
            .outcome();
        let ok = if halts {
            credits.iter().all(|&o| o == Outcome::Win0) && sim == Outcome::Win0
        } else {
            credits.iter().all(|&o| o != Outcome::Win0) && sim != Outcome::Win0
        };
        pass &= ok;
        let strs: Vec<&str> = credits.iter().map(|o| o.as_str()).collect();
        notes.push(format!("{name} pushdown [{}] ocn-vass {}", strs.join(","), sim.as_str()));
    }
    let (mut pc, mut pw, mut zc, mut cc, mut zw) = (0, 0, 0, 0, 0);
    for (_, m) in corpus::all() {
        let (c, w) = pushdown_classification(&m, &mcm_to_pushdown_energy(&m).unwrap());
        pc += c;
        pw += w;
        let (z, ch, w2) = ocn_vass_invariants(&m, &mcm_to_ocn_vs_vass(&m).unwrap());
        zc += z;
        cc += ch;
        zw += w2;
    }
    pass &= pw == 0 && zw == 0 && pc > 0 && zc > 0 && cc > 0;
    let elapsed = start.elapsed();
    pass &= elapsed < GADGET_LIMIT;
    let _ = write!(t, "|gadgets {} {pc} {pw} {zc} {cc} {zw}", notes.join(";"));
    Verdict {
        pass,
        detail: format!(
            "{}; {pc} pushdown challenges classified ({pw} wrong), {zc} z = x + y checks and {cc} zero-claim challenges ({zw} wrong), {:.1}s",
            notes.join("; "),
            elapsed.as_secs_f64()
        ),
    }
}

fn run() -> Run {
    let mut t = String::new();
    let mut v = Vec::new();
    v.push(campaign(BatchOp::EnergyToSim, 200, true, &mut t));
    v.push(campaign(BatchOp::SimToEnergy, 200, true, &mut t));
    v.push(campaign(BatchOp::Composition, 100, false, &mut t));
    let (pairs, grids, no_pattern, indefinite) = grid_pairs(BB_PAIRS);
    v.push(monotonicity(&grids, &mut t));
    v.push(campaign(BatchOp::Refinement, 500, false, &mut t));
    v.push(bb_end_to_end(&pairs, no_pattern, indefinite, &mut t));
    v.push(semilinear(&pairs, &mut t));
    v.push(decide(&mut t));
    v.push(gadgets(&mut t));
    Run {
        verdicts: v,
        transcript: t,
    }
}

fn main() {
    let start = Instant::now();
    let first = run();
    let second = run();
    let same = first.transcript == second.transcript;
    let mut all = true;
    for (i, v) in first.verdicts.iter().enumerate() {
        all &= v.pass;
        println!("{} criterion {}: {}", if v.pass { "PASS" } else { "FAIL" }, i + 1, v.detail);
    }
    all &= same;
    println!(
        "{} criterion 10: second run transcript {} ({} bytes)",
        if same { "PASS" } else { "FAIL" },
        if same { "byte-identical" } else { "differs" },
        first.transcript.len()
    );
    println!("acceptance finished in {:.1}s", start.elapsed().as_secs_f64());
    if !all {
        std::process::exit(1);
    }
}
