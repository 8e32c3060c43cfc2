use std::error::Error;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use energy_sim::batch::{run_batch, BatchOp, BatchSpec};
use energy_sim::coloring::{compute_coloring_with, detect_periodic_parameters, render_grid, Color, Fill, RenderFormat};
use energy_sim::gadgets::{mcm_to_ocn_vs_vass, mcm_to_pushdown_energy};
use energy_sim::io::{
    self, canonical, energy_report, parse_oca_conf, parse_oceg_pos, parse_pda_conf, parse_peg_pos, parse_vass_conf,
    simulation_report, InstanceFile, Payload, VerdictReport,
};
use energy_sim::models::{EnergyArena, Lts, Machine, Oca, OcaConf};
use energy_sim::reductions::{
    energy_to_simulation, oca_ocn_to_ocn_ocn, oca_simulation_to_energy, one_counter_energy_to_simulation,
    simulation_to_energy,
};
use energy_sim::semilinear::{check_simulation_candidate, enumerate_and_decide, CheckResult, DecideBudget, Decision, SimPoint};
use energy_sim::solvers::{
    solve_energy_many, solve_simulation_many, Bounds, SimPair, SolveOptions, DEFAULT_POSITION_BUDGET,
};

/// Environment variable overriding the solver position budget.
const BUDGET_VAR: &str = "EGSIM_POSITION_BUDGET";

type CliResult = Result<ExitCode, Box<dyn Error>>;

#[derive(Parser)]
#[command(name = "egsim", version, about = "Bounded energy and simulation games, reductions and certificates")]
struct Cli {
    /// Seed for randomized commands.
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    /// Pretty-printed JSON output (implies --json).
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a document and check the machine invariants.
    Validate { file: PathBuf },
    /// Solve an energy game or a simulation game within bounds.
    #[command(subcommand)]
    Solve(SolveCmd),
    /// Apply one of the reductions and write the resulting instances.
    #[command(subcommand)]
    Reduce(ReduceCmd),
    /// Color a grid of OCA/OCN pairs by simulation.
    Coloring(ColoringArgs),
    /// Check a UPC candidate for being a simulation relation.
    CheckCandidate {
        oca: PathBuf,
        ocn: PathBuf,
        upc: PathBuf,
        /// A pair that must be White, as `LEFT RIGHT` configurations; repeatable.
        #[arg(long, num_args = 2, value_names = ["LEFT", "RIGHT"], action = clap::ArgAction::Append)]
        must_contain: Vec<String>,
    },
    /// Decide simulation of an OCA by an OCN within a budget.
    Decide(DecideArgs),
    /// Compile a Minsky machine into one of the undecidability gadgets.
    #[command(subcommand)]
    GenGadget(GadgetCmd),
    /// Run a seeded oracle-equivalence campaign.
    Batch(BatchArgs),
    /// Render a saved coloring.
    Render {
        grid: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Ascii)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Clone, Copy)]
struct BoundArgs {
    #[arg(long, default_value_t = 12)]
    counter_cap: usize,
    #[arg(long, default_value_t = 12)]
    energy_cap: usize,
    #[arg(long, default_value_t = 40)]
    round_cap: usize,
}

impl BoundArgs {
    fn bounds(self) -> Bounds {
        Bounds::new(self.counter_cap, self.energy_cap, self.round_cap)
    }
}

#[derive(Subcommand)]
enum SolveCmd {
    /// Solve a pushdown or one-counter energy game from one position.
    Energy {
        game: PathBuf,
        /// Initial position, e.g. `q:X.bot|3` or `q:2|3`.
        #[arg(long)]
        init: String,
        #[command(flatten)]
        bounds: BoundArgs,
        #[arg(long)]
        no_strategy: bool,
    },
    /// Solve the simulation game between two systems from one pair.
    Sim {
        left: PathBuf,
        right: PathBuf,
        #[arg(long, num_args = 2, value_names = ["LEFT", "RIGHT"], required = true)]
        pair: Vec<String>,
        #[command(flatten)]
        bounds: BoundArgs,
        #[arg(long)]
        no_strategy: bool,
    },
}

#[derive(Subcommand)]
enum ReduceCmd {
    /// Energy game to simulation game.
    EnergyToSim {
        game: PathBuf,
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
        /// Also map this position.
        #[arg(long)]
        init: Option<String>,
    },
    /// Simulation game (automaton against VASS) to energy game.
    SimToEnergy {
        left: PathBuf,
        right: PathBuf,
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
        #[arg(long, num_args = 2, value_names = ["LEFT", "RIGHT"])]
        pair: Vec<String>,
    },
    /// OCA against OCN to a pair of OCNs.
    OcaToOcn {
        oca: PathBuf,
        ocn: PathBuf,
        #[arg(long)]
        params: PathBuf,
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Ascii,
    Pgm,
}

impl From<Format> for RenderFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Ascii => RenderFormat::Ascii,
            Format::Pgm => RenderFormat::Pgm,
        }
    }
}

#[derive(Args)]
struct ColoringArgs {
    oca: PathBuf,
    ocn: PathBuf,
    #[arg(long, default_value_t = 30)]
    mmax: usize,
    #[arg(long, default_value_t = 30)]
    mpmax: usize,
    #[arg(long, default_value_t = 40)]
    counter_cap: usize,
    #[arg(long, default_value_t = 80)]
    round_cap: usize,
    #[arg(long, value_enum)]
    render: Option<Format>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write the detected (l, K) parameters here.
    #[arg(long)]
    emit_params: Option<PathBuf>,
    /// Write the grid itself here, for `render`.
    #[arg(long)]
    emit_grid: Option<PathBuf>,
}

#[derive(Args)]
struct DecideArgs {
    oca: PathBuf,
    ocn: PathBuf,
    #[arg(long, num_args = 2, value_names = ["LEFT", "RIGHT"], required = true)]
    pair: Vec<String>,
    /// JSON budget file; the flags below override single fields.
    #[arg(long)]
    budget: Option<PathBuf>,
    #[arg(long)]
    max_window: Option<usize>,
    #[arg(long)]
    max_period: Option<usize>,
    #[arg(long)]
    wall_clock_ms: Option<u64>,
    #[arg(long)]
    max_stages: Option<usize>,
    #[arg(long)]
    output_upc: Option<PathBuf>,
}

#[derive(Subcommand)]
enum GadgetCmd {
    /// Counter machine to a one-dimensional pushdown energy game.
    PushdownEnergy {
        mcm: PathBuf,
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
    },
    /// Counter machine to an OCN against a 2-dimensional VASS.
    OcnVass {
        mcm: PathBuf,
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum OpArg {
    EnergyToSim,
    SimToEnergy,
    Composition,
    Refinement,
}

#[derive(Args)]
struct BatchArgs {
    #[arg(long, value_enum, default_value_t = OpArg::EnergyToSim)]
    op: OpArg,
    #[arg(long, default_value_t = 50)]
    count: usize,
    /// Full campaign description as JSON; overrides --op, --count and --seed.
    #[arg(long)]
    spec: Option<PathBuf>,
    /// Write the machine-readable report here.
    #[arg(long)]
    report: Option<PathBuf>,
}

struct Out {
    json: bool,
    pretty: bool,
}

impl Out {
    fn value(&self, v: &Value) {
        if self.pretty {
            print!("{}", String::from_utf8_lossy(&canonical(v)));
        } else {
            println!("{v}");
        }
    }

    fn emit<T: Serialize>(&self, v: &T) -> Result<(), Box<dyn Error>> {
        self.value(&serde_json::to_value(v)?);
        Ok(())
    }
}

fn options() -> Result<SolveOptions, Box<dyn Error>> {
    let budget = match std::env::var(BUDGET_VAR) {
        Ok(s) => s.parse().map_err(|_| format!("{BUDGET_VAR} must be a number, got `{s}`"))?,
        Err(_) => DEFAULT_POSITION_BUDGET,
    };
    Ok(SolveOptions {
        position_budget: budget,
        strategies: true,
    })
}

fn read(path: &Path) -> Result<InstanceFile, Box<dyn Error>> {
    Ok(io::read_file(path)?)
}

fn machine(path: &Path) -> Result<Machine, Box<dyn Error>> {
    match read(path)?.payload {
        Payload::Machine(m) => Ok(m),
        other => Err(format!("{}: expected a machine, found `{}`", path.display(), other.kind()).into()),
    }
}

fn write(dir: &Path, name: &str, file: &InstanceFile) -> Result<PathBuf, Box<dyn Error>> {
    std::fs::create_dir_all(dir)?;
    let path = dir.join(name);
    io::write_file(&path, file)?;
    Ok(path)
}

fn write_value(dir: &Path, name: &str, v: &Value) -> Result<PathBuf, Box<dyn Error>> {
    std::fs::create_dir_all(dir)?;
    let path = dir.join(name);
    std::fs::write(&path, canonical(v))?;
    Ok(path)
}

fn derived(m: Machine, from: &Path, how: &str) -> InstanceFile {
    let mut f = InstanceFile::machine(m);
    f.metadata.provenance = Some(vec![format!("{how} {}", from.display())]);
    f
}

fn written(out: &Out, paths: &[PathBuf]) -> Result<(), Box<dyn Error>> {
    let names: Vec<String> = paths.iter().map(|p| p.display().to_string()).collect();
    if out.json {
        out.emit(&json!({ "written": names }))
    } else {
        for n in names {
            println!("wrote {n}");
        }
        Ok(())
    }
}

fn validate(out: &Out, path: &Path) -> CliResult {
    let f = read(path)?;
    let problems: Vec<String> = match &f.payload {
        Payload::Machine(m) => m.validate().iter().map(|v| v.to_string()).collect(),
        Payload::Upc(u) => u.validate().err().map(|e| e.to_string()).into_iter().collect(),
        Payload::OcaToOcnParams(_) | Payload::ColorGrid(_) => Vec::new(),
    };
    if out.json {
        out.emit(&json!({ "kind": f.payload.kind(), "valid": problems.is_empty(), "violations": problems }))?;
    } else if problems.is_empty() {
        println!("{}: valid {}", path.display(), f.payload.kind());
    } else {
        for p in &problems {
            println!("{}: {p}", path.display());
        }
    }
    Ok(if problems.is_empty() { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

fn solve_energy(out: &Out, game: &Path, init: &str, bounds: Bounds, strategies: bool) -> CliResult {
    let opts = SolveOptions {
        strategies,
        ..options()?
    };
    let report = match machine(game)? {
        Machine::PushdownEnergyGame(g) => {
            let pos = parse_peg_pos(&g, init)?;
            energy_report(&g, &solve_energy_many(&g, &[pos], bounds, opts)?[0])
        }
        Machine::OneCounterEnergyGame(g) => {
            let pos = parse_oceg_pos(&g, init)?;
            energy_report(&g, &solve_energy_many(&g, &[pos], bounds, opts)?[0])
        }
        other => return Err(format!("expected an energy game, found `{}`", other.kind()).into()),
    };
    out.emit(&report)?;
    Ok(ExitCode::SUCCESS)
}

fn sim_report<A: Lts, B: Lts>(
    a: &A,
    b: &B,
    l: A::Conf,
    r: B::Conf,
    bounds: Bounds,
    opts: SolveOptions,
) -> Result<VerdictReport, Box<dyn Error>> {
    let sols = solve_simulation_many(a, b, &[SimPair::new(l, r)], bounds, opts)?;
    Ok(simulation_report(a, b, &sols[0]))
}

fn solve_sim(out: &Out, left: &Path, right: &Path, pair: &[String], bounds: Bounds, strategies: bool) -> CliResult {
    let opts = SolveOptions {
        strategies,
        ..options()?
    };
    let (left, right) = (machine(left)?, machine(right)?);
    let (ls, rs) = (pair[0].as_str(), pair[1].as_str());
    macro_rules! against {
        ($a:expr, $l:expr) => {
            match &right {
                Machine::Pda(b) => sim_report($a, b, $l, parse_pda_conf(&b.states, &b.stack_alphabet, rs)?, bounds, opts),
                Machine::Oca(b) => sim_report($a, b, $l, parse_oca_conf(&b.states, rs)?, bounds, opts),
                Machine::Vass(b) => sim_report($a, b, $l, parse_vass_conf(&b.states, b.dimension, rs)?, bounds, opts),
                other => Err(format!("cannot simulate with `{}`", other.kind()).into()),
            }
        };
    }
    let report = match &left {
        Machine::Pda(a) => against!(a, parse_pda_conf(&a.states, &a.stack_alphabet, ls)?),
        Machine::Oca(a) => against!(a, parse_oca_conf(&a.states, ls)?),
        Machine::Vass(a) => against!(a, parse_vass_conf(&a.states, a.dimension, ls)?),
        other => Err(format!("cannot play Spoiler on `{}`", other.kind()).into()),
    }?;
    out.emit(&report)?;
    Ok(ExitCode::SUCCESS)
}

fn reduce_energy_to_sim(out: &Out, game: &Path, dir: &Path, init: Option<&str>) -> CliResult {
    let how = "reduce energy-to-sim";
    let (spoiler, duplicator, mut map) = match machine(game)? {
        Machine::PushdownEnergyGame(g) => {
            let r = energy_to_simulation(&g)?;
            let mut map = json!({
                "reduction": "energy-to-sim",
                "spoilerProvenance": r.spoiler_provenance,
                "duplicatorProvenance": r.duplicator_provenance,
            });
            if let Some(s) = init {
                let p = r.map(&parse_peg_pos(&g, s)?);
                map["position"] = json!({ "source": s, "left": r.spoiler.describe(&p.left), "right": r.duplicator.describe(&p.right) });
            }
            (Machine::Pda(r.spoiler), r.duplicator, map)
        }
        Machine::OneCounterEnergyGame(g) => {
            let r = one_counter_energy_to_simulation(&g)?;
            let mut map = json!({
                "reduction": "energy-to-sim",
                "spoilerProvenance": r.spoiler_provenance,
                "duplicatorProvenance": r.duplicator_provenance,
            });
            if let Some(s) = init {
                let p = r.map(&parse_oceg_pos(&g, s)?);
                map["position"] = json!({ "source": s, "left": r.spoiler.describe(&p.left), "right": r.duplicator.describe(&p.right) });
            }
            (Machine::Oca(r.spoiler), r.duplicator, map)
        }
        other => return Err(format!("expected an energy game, found `{}`", other.kind()).into()),
    };
    map["source"] = json!(game.display().to_string());
    let paths = [
        write(dir, "spoiler.json", &derived(spoiler, game, how))?,
        write(dir, "duplicator.json", &derived(Machine::Vass(duplicator), game, how))?,
        write_value(dir, "map.json", &map)?,
    ];
    written(out, &paths)?;
    Ok(ExitCode::SUCCESS)
}

fn reduce_sim_to_energy(out: &Out, left: &Path, right: &Path, dir: &Path, pair: &[String]) -> CliResult {
    let how = "reduce sim-to-energy";
    let Machine::Vass(v) = machine(right)? else {
        return Err("the Duplicator side must be a VASS".into());
    };
    let (game, mut map) = match machine(left)? {
        Machine::Pda(a) => {
            let r = simulation_to_energy(&a, &v)?;
            let mut map = json!({ "reduction": "sim-to-energy", "provenance": r.provenance });
            if let [l, rr] = pair {
                let p = SimPair::new(parse_pda_conf(&a.states, &a.stack_alphabet, l)?, parse_vass_conf(&v.states, v.dimension, rr)?);
                map["position"] = json!({ "left": l, "right": rr, "target": r.game.describe(&r.map(&p)) });
            }
            (Machine::PushdownEnergyGame(r.game), map)
        }
        Machine::Oca(a) => {
            let r = oca_simulation_to_energy(&a, &v)?;
            let mut map = json!({ "reduction": "sim-to-energy", "provenance": r.provenance });
            if let [l, rr] = pair {
                let p = SimPair::new(parse_oca_conf(&a.states, l)?, parse_vass_conf(&v.states, v.dimension, rr)?);
                map["position"] = json!({ "left": l, "right": rr, "target": r.game.describe(&r.map(&p)) });
            }
            (Machine::OneCounterEnergyGame(r.game), map)
        }
        other => return Err(format!("cannot play Spoiler on `{}`", other.kind()).into()),
    };
    map["source"] = json!([left.display().to_string(), right.display().to_string()]);
    let paths = [write(dir, "game.json", &derived(game, left, how))?, write_value(dir, "map.json", &map)?];
    written(out, &paths)?;
    Ok(ExitCode::SUCCESS)
}

fn oca_pair(oca: &Path, ocn: &Path) -> Result<(Oca, Oca), Box<dyn Error>> {
    let a = read(oca)?.into_oca()?;
    let b = read(ocn)?.into_oca()?;
    Ok((a, b))
}

fn reduce_oca_to_ocn(out: &Out, oca: &Path, ocn: &Path, params: &Path, dir: &Path) -> CliResult {
    let how = "reduce oca-to-ocn";
    let (a, b) = oca_pair(oca, ocn)?;
    let params = read(params)?.into_params()?;
    let r = oca_ocn_to_ocn_ocn(&a, &b, &params)?;
    let map = json!({
        "reduction": "oca-to-ocn",
        "l": r.l,
        "k": r.k,
        "pairStates": a.states.iter().enumerate().flat_map(|(p, pn)| {
            let r = &r;
            let b = &b;
            b.states.iter().enumerate().flat_map(move |(q, qn)| {
                (0..r.k).map(move |res| json!({ "left": pn, "right": qn, "residue": res, "state": r.spoiler.states[r.pair_state(p, q, res)] }))
            })
        }).collect::<Vec<_>>(),
        "spoilerProvenance": r.spoiler_provenance,
        "duplicatorProvenance": r.duplicator_provenance,
    });
    let paths = [
        write(dir, "spoiler.json", &derived(Machine::Oca(r.spoiler.clone()), oca, how))?,
        write(dir, "duplicator.json", &derived(Machine::Oca(r.duplicator.clone()), ocn, how))?,
        write_value(dir, "map.json", &map)?,
    ];
    written(out, &paths)?;
    Ok(ExitCode::SUCCESS)
}

fn coloring(out: &Out, args: &ColoringArgs) -> CliResult {
    let (a, b) = oca_pair(&args.oca, &args.ocn)?;
    let bounds = Bounds::new(args.counter_cap, 1, args.round_cap);
    let grid = compute_coloring_with(&a, &b, args.mmax, args.mpmax, bounds, Fill::Shortcut, options()?)?;
    let params = detect_periodic_parameters(&grid);
    if let Some(path) = &args.emit_grid {
        io::write_file(path, &InstanceFile::new(Payload::ColorGrid(grid.clone())))?;
    }
    if let (Some(path), Ok(p)) = (&args.emit_params, &params) {
        io::write_file(path, &InstanceFile::new(Payload::OcaToOcnParams(p.clone())))?;
    }
    if let Some(f) = args.render {
        let bytes = render_grid(&grid, f.into());
        match &args.out {
            Some(path) => std::fs::write(path, bytes)?,
            None => println!("{}", String::from_utf8_lossy(&bytes)),
        }
    }
    let summary = json!({
        "cells": grid.len(),
        "white": grid.count(Color::White),
        "black": grid.count(Color::Black),
        "unknown": grid.count(Color::Unknown),
        "params": params.as_ref().ok(),
    });
    if out.json {
        out.value(&summary);
    } else {
        let detected = match &params {
            Ok(p) => format!("candidate l = {}, K = {}", p.l, p.k),
            Err(e) => e.to_string(),
        };
        eprintln!(
            "{} cells: {} white, {} black, {} unknown; {detected}",
            summary["cells"], summary["white"], summary["black"], summary["unknown"]
        );
    }
    Ok(ExitCode::SUCCESS)
}

fn point(a: &Oca, b: &Oca, l: &str, r: &str) -> Result<SimPoint, Box<dyn Error>> {
    let (x, y) = (parse_oca_conf(&a.states, l)?, parse_oca_conf(&b.states, r)?);
    Ok(SimPoint::new(x.state, x.counter, y.state, y.counter))
}

fn check_candidate(out: &Out, oca: &Path, ocn: &Path, upc: &Path, must: &[String]) -> CliResult {
    let (a, b) = oca_pair(oca, ocn)?;
    let u = read(upc)?.into_upc()?;
    let pts = must
        .chunks(2)
        .map(|c| point(&a, &b, &c[0], &c[1]))
        .collect::<Result<Vec<_>, _>>()?;
    let v = match check_simulation_candidate(&a, &b, &u, &pts)? {
        CheckResult::Accepted => json!({ "result": "Accepted" }),
        CheckResult::Rejected { point, reason } => json!({
            "result": "Rejected",
            "point": { "left": a.describe(&OcaConf::new(point.left, point.m)),
                       "right": b.describe(&OcaConf::new(point.right, point.m2)) },
            "reason": reason,
        }),
    };
    out.value(&v);
    Ok(ExitCode::SUCCESS)
}

fn decide(out: &Out, args: &DecideArgs) -> CliResult {
    let (a, b) = oca_pair(&args.oca, &args.ocn)?;
    let mut budget = match &args.budget {
        Some(p) => serde_json::from_slice(&std::fs::read(p)?)?,
        None => DecideBudget::default(),
    };
    if let Some(w) = args.max_window {
        budget.max_window = w;
    }
    if let Some(p) = args.max_period {
        budget.max_period = p;
    }
    if let Some(ms) = args.wall_clock_ms {
        budget.wall_clock = Duration::from_millis(ms);
    }
    if let Some(s) = args.max_stages {
        budget.max_stages = s;
    }
    let pt = point(&a, &b, &args.pair[0], &args.pair[1])?;
    let d = enumerate_and_decide(&a, &b, pt, &budget)?;
    let mut v = json!({ "decision": d.as_str(), "budget": budget });
    match &d {
        Decision::Win1(u) => {
            let doc = io::to_value(&InstanceFile::new(Payload::Upc(u.clone())));
            if let Some(path) = &args.output_upc {
                std::fs::write(path, canonical(&doc))?;
            }
            v["upc"] = doc;
        }
        Decision::Win0 { rounds, bounds, .. } => {
            v["rounds"] = json!(rounds);
            v["boundsUsed"] = json!(bounds);
        }
        Decision::BudgetExhausted { stages } => v["stages"] = json!(stages),
    }
    out.value(&v);
    Ok(ExitCode::SUCCESS)
}

fn gadget(out: &Out, cmd: &GadgetCmd) -> CliResult {
    let paths = match cmd {
        GadgetCmd::PushdownEnergy { mcm, out_dir } => {
            let m = read(mcm)?.into_mcm()?;
            let g = mcm_to_pushdown_energy(&m)?;
            let map = json!({
                "gadget": "pushdown-energy",
                "expected": g.expected,
                "initial": g.game.describe(&g.initial(0)),
                "provenance": g.provenance,
            });
            vec![
                write(out_dir, "game.json", &derived(Machine::PushdownEnergyGame(g.game.clone()), mcm, "gen-gadget pushdown-energy"))?,
                write_value(out_dir, "map.json", &map)?,
            ]
        }
        GadgetCmd::OcnVass { mcm, out_dir } => {
            let m = read(mcm)?.into_mcm()?;
            let g = mcm_to_ocn_vs_vass(&m)?;
            let map = json!({
                "gadget": "ocn-vass",
                "expected": g.expected,
                "initial": { "left": g.spoiler.describe(&g.initial.left), "right": g.duplicator.describe(&g.initial.right) },
                "spoilerProvenance": g.spoiler_provenance,
                "duplicatorProvenance": g.duplicator_provenance,
            });
            let how = "gen-gadget ocn-vass";
            vec![
                write(out_dir, "spoiler.json", &derived(Machine::Oca(g.spoiler.clone()), mcm, how))?,
                write(out_dir, "duplicator.json", &derived(Machine::Vass(g.duplicator.clone()), mcm, how))?,
                write_value(out_dir, "map.json", &map)?,
            ]
        }
    };
    written(out, &paths)?;
    Ok(ExitCode::SUCCESS)
}

fn batch(out: &Out, seed: u64, args: &BatchArgs) -> CliResult {
    let spec = match &args.spec {
        Some(p) => serde_json::from_slice(&std::fs::read(p)?)?,
        None => {
            let op = match args.op {
                OpArg::EnergyToSim => BatchOp::EnergyToSim,
                OpArg::SimToEnergy => BatchOp::SimToEnergy,
                OpArg::Composition => BatchOp::Composition,
                OpArg::Refinement => BatchOp::Refinement,
            };
            let mut s = BatchSpec::new(op, seed, args.count);
            s.position_budget = options()?.position_budget;
            s
        }
    };
    let report = run_batch(&spec);
    let v = serde_json::to_value(&report)?;
    if let Some(p) = &args.report {
        std::fs::write(p, canonical(&v))?;
    }
    if out.json {
        out.value(&v);
    }
    eprintln!("{}", report.human_summary());
    Ok(if report.passed() { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

fn render(grid: &Path, format: Format, out_path: Option<&Path>) -> CliResult {
    let g = read(grid)?.into_grid()?;
    let bytes = render_grid(&g, format.into());
    match out_path {
        Some(p) => std::fs::write(p, bytes)?,
        None => println!("{}", String::from_utf8_lossy(&bytes)),
    }
    Ok(ExitCode::SUCCESS)
}

fn run(cli: Cli) -> CliResult {
    let out = Out {
        json: cli.json || cli.pretty,
        pretty: cli.pretty,
    };
    match &cli.command {
        Command::Validate { file } => validate(&out, file),
        Command::Solve(SolveCmd::Energy {
            game,
            init,
            bounds,
            no_strategy,
        }) => solve_energy(&out, game, init, bounds.bounds(), !no_strategy),
        Command::Solve(SolveCmd::Sim {
            left,
            right,
            pair,
            bounds,
            no_strategy,
        }) => solve_sim(&out, left, right, pair, bounds.bounds(), !no_strategy),
        Command::Reduce(ReduceCmd::EnergyToSim { game, out_dir, init }) => {
            reduce_energy_to_sim(&out, game, out_dir, init.as_deref())
        }
        Command::Reduce(ReduceCmd::SimToEnergy {
            left,
            right,
            out_dir,
            pair,
        }) => reduce_sim_to_energy(&out, left, right, out_dir, pair),
        Command::Reduce(ReduceCmd::OcaToOcn {
            oca,
            ocn,
            params,
            out_dir,
        }) => reduce_oca_to_ocn(&out, oca, ocn, params, out_dir),
        Command::Coloring(args) => coloring(&out, args),
        Command::CheckCandidate {
            oca,
            ocn,
            upc,
            must_contain,
        } => check_candidate(&out, oca, ocn, upc, must_contain),
        Command::Decide(args) => decide(&out, args),
        Command::GenGadget(cmd) => gadget(&out, cmd),
        Command::Batch(args) => batch(&out, cli.seed, args),
        Command::Render { grid, format, out: path } => render(grid, *format, path.as_deref()),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
