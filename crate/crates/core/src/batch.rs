//! Oracle-equivalence campaigns: random instances are solved on both sides
//! of a reduction (or at two bound levels) at every small initial position,
//! and the verdicts compared.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::gen::{instance_rng, random_oca, random_oceg, random_vass, GenConfig};
use crate::models::{EnergyArena, EnergyPos, Lts, OcaConf, VassConf};
use crate::reductions::{one_counter_energy_to_simulation, oca_simulation_to_energy};
use crate::solvers::{
    solve_energy_many, solve_simulation_many, Bounds, Outcome, SimPair, SolveError, SolveOptions,
    DEFAULT_POSITION_BUDGET,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BatchOp {
    /// One-counter energy game against its simulation game.
    EnergyToSim,
    /// OCA against 1-dim VASS, then the energy game of the pair.
    SimToEnergy,
    /// Simulation, energy, and simulation again.
    Composition,
    /// The same instances at `bounds` and at `larger_bounds`; even
    /// instances are energy games, odd ones simulation pairs.
    Refinement,
}

impl BatchOp {
    pub fn as_str(self) -> &'static str {
        match self {
            BatchOp::EnergyToSim => "energy-to-sim",
            BatchOp::SimToEnergy => "sim-to-energy",
            BatchOp::Composition => "composition",
            BatchOp::Refinement => "refinement",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct BatchSpec {
    pub seed: u64,
    pub count: usize,
    pub operation: BatchOp,
    pub bounds: Bounds,
    #[serde(default)]
    pub larger_bounds: Option<Bounds>,
    /// Initial positions range over counters and energies up to these.
    pub max_counter: u32,
    pub max_energy: u32,
    pub generator: GenConfig,
    pub position_budget: usize,
}

impl BatchSpec {
    /// The acceptance protocol for `op`: caps 12/12/40, initial counters and
    /// energies up to 3.
    pub fn new(op: BatchOp, seed: u64, count: usize) -> Self {
        let bounds = Bounds::new(12, 12, 40);
        let generator = match op {
            BatchOp::EnergyToSim | BatchOp::Refinement => GenConfig {
                min_states: 1,
                max_states: 3,
                ..GenConfig::default()
            },
            BatchOp::SimToEnergy | BatchOp::Composition => GenConfig {
                max_states: 3,
                ..GenConfig::default()
            },
        };
        BatchSpec {
            seed,
            count,
            operation: op,
            bounds,
            larger_bounds: (op == BatchOp::Refinement).then(|| Bounds::new(20, 20, 60)),
            max_counter: 3,
            max_energy: 3,
            generator,
            position_budget: DEFAULT_POSITION_BUDGET,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Agreement {
    Agree,
    LeftUnknown,
    RightUnknown,
    BothUnknown,
    #[serde(rename = "DISAGREE")]
    Disagree,
    /// The instance could not be solved, e.g. it exceeded the position
    /// budget.
    Error,
}

impl Agreement {
    pub fn of(left: Outcome, right: Outcome) -> Agreement {
        match (left.is_definite(), right.is_definite()) {
            (true, true) if left == right => Agreement::Agree,
            (true, true) => Agreement::Disagree,
            (false, true) => Agreement::LeftUnknown,
            (true, false) => Agreement::RightUnknown,
            (false, false) => Agreement::BothUnknown,
        }
    }

    /// Under refinement a definite verdict must survive the larger bounds.
    fn of_refinement(before: Outcome, after: Outcome) -> Agreement {
        if before.is_definite() && before != after {
            Agreement::Disagree
        } else {
            Agreement::of(before, after)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct BatchRow {
    pub instance: usize,
    pub operation: BatchOp,
    /// Initial position on the source side.
    pub position: String,
    pub bounds: Bounds,
    pub left: Option<Outcome>,
    pub right: Option<Outcome>,
    pub agreement: Agreement,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct BatchSummary {
    pub instances: usize,
    pub rows: usize,
    pub agree: usize,
    pub left_unknown: usize,
    pub right_unknown: usize,
    pub both_unknown: usize,
    pub disagree: usize,
    pub errors: usize,
}

impl BatchSummary {
    /// Share of rows with definite verdicts on both sides.
    pub fn definite_rate(&self) -> f64 {
        if self.rows == 0 {
            return 1.0;
        }
        (self.agree + self.disagree) as f64 / self.rows as f64
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct BatchReport {
    pub spec: BatchSpec,
    pub rows: Vec<BatchRow>,
    pub summary: BatchSummary,
}

impl BatchReport {
    pub fn passed(&self) -> bool {
        self.summary.disagree == 0 && self.summary.errors == 0
    }

    pub fn human_summary(&self) -> String {
        let s = &self.summary;
        format!(
            "{} seed {}: {} instances, {} rows: {} agree, {} left unknown, {} right unknown, {} both unknown, {} DISAGREE, {} errors ({:.1}% definite)",
            self.spec.operation.as_str(),
            self.spec.seed,
            s.instances,
            s.rows,
            s.agree,
            s.left_unknown,
            s.right_unknown,
            s.both_unknown,
            s.disagree,
            s.errors,
            100.0 * s.definite_rate()
        )
    }
}

struct Ctx<'a> {
    spec: &'a BatchSpec,
    instance: usize,
    opts: SolveOptions,
}

impl Ctx<'_> {
    fn row(&self, position: String, left: Outcome, right: Outcome, refinement: bool) -> BatchRow {
        let agreement = if refinement {
            Agreement::of_refinement(left, right)
        } else {
            Agreement::of(left, right)
        };
        BatchRow {
            instance: self.instance,
            operation: self.spec.operation,
            position,
            bounds: self.spec.bounds,
            left: Some(left),
            right: Some(right),
            agreement,
            error: None,
        }
    }

    fn error_row(&self, e: SolveError) -> BatchRow {
        BatchRow {
            instance: self.instance,
            operation: self.spec.operation,
            position: String::new(),
            bounds: self.spec.bounds,
            left: None,
            right: None,
            agreement: Agreement::Error,
            error: Some(e.to_string()),
        }
    }

    fn larger(&self) -> Bounds {
        self.spec.larger_bounds.unwrap_or(self.spec.bounds)
    }
}

fn energy_positions(states: usize, spec: &BatchSpec) -> Vec<EnergyPos<OcaConf>> {
    let mut out = Vec::new();
    for s in 0..states {
        for c in 0..=spec.max_counter {
            for e in 0..=spec.max_energy {
                out.push(EnergyPos::new(OcaConf::new(s, c), vec![e as i32]));
            }
        }
    }
    out
}

fn sim_pairs(left: usize, right: usize, spec: &BatchSpec) -> Vec<SimPair<OcaConf, VassConf>> {
    let mut out = Vec::new();
    for p in 0..left {
        for q in 0..right {
            for m in 0..=spec.max_counter {
                for n in 0..=spec.max_energy {
                    out.push(SimPair::new(OcaConf::new(p, m), VassConf::new(q, vec![n])));
                }
            }
        }
    }
    out
}

fn outcomes<T>(sols: &[T], f: impl Fn(&T) -> Outcome) -> Vec<Outcome> {
    sols.iter().map(f).collect()
}

fn run_instance(ctx: &Ctx) -> Result<Vec<BatchRow>, SolveError> {
    let spec = ctx.spec;
    let mut rng = instance_rng(spec.seed, ctx.instance as u64);
    let cfg = &spec.generator;
    let energy_side = match spec.operation {
        BatchOp::EnergyToSim => true,
        BatchOp::Refinement => ctx.instance % 2 == 0,
        _ => false,
    };
    let refinement = spec.operation == BatchOp::Refinement;

    if energy_side {
        let g = random_oceg(&mut rng, cfg);
        let inits = energy_positions(g.states.len(), spec);
        let left = outcomes(&solve_energy_many(&g, &inits, spec.bounds, ctx.opts)?, |s| s.verdict.outcome());
        let right = if refinement {
            outcomes(&solve_energy_many(&g, &inits, ctx.larger(), ctx.opts)?, |s| s.verdict.outcome())
        } else {
            let r = one_counter_energy_to_simulation(&g)?;
            let pairs: Vec<_> = inits.iter().map(|p| r.map(p)).collect();
            let sols = solve_simulation_many(&r.spoiler, &r.duplicator, &pairs, spec.bounds, ctx.opts)?;
            outcomes(&sols, |s| s.verdict.outcome())
        };
        return Ok(inits
            .iter()
            .zip(left.into_iter().zip(right))
            .map(|(p, (l, r))| ctx.row(g.describe(p), l, r, refinement))
            .collect());
    }

    let a = random_oca(&mut rng, cfg, false);
    let v = random_vass(&mut rng, cfg, 1);
    let pairs = sim_pairs(a.states.len(), v.states.len(), spec);
    let left = outcomes(&solve_simulation_many(&a, &v, &pairs, spec.bounds, ctx.opts)?, |s| s.verdict.outcome());
    let right = match spec.operation {
        BatchOp::Refinement => {
            outcomes(&solve_simulation_many(&a, &v, &pairs, ctx.larger(), ctx.opts)?, |s| s.verdict.outcome())
        }
        BatchOp::SimToEnergy => {
            let r = oca_simulation_to_energy(&a, &v)?;
            let inits: Vec<_> = pairs.iter().map(|p| r.map(p)).collect();
            outcomes(&solve_energy_many(&r.game, &inits, spec.bounds, ctx.opts)?, |s| s.verdict.outcome())
        }
        _ => {
            let r1 = oca_simulation_to_energy(&a, &v)?;
            let r2 = one_counter_energy_to_simulation(&r1.game)?;
            let mapped: Vec<_> = pairs.iter().map(|p| r2.map(&r1.map(p))).collect();
            let sols = solve_simulation_many(&r2.spoiler, &r2.duplicator, &mapped, spec.bounds, ctx.opts)?;
            outcomes(&sols, |s| s.verdict.outcome())
        }
    };
    Ok(pairs
        .iter()
        .zip(left.into_iter().zip(right))
        .map(|(p, (l, r))| {
            let pos = format!("({}, {})", a.describe(&p.left), v.describe(&p.right));
            ctx.row(pos, l, r, refinement)
        })
        .collect())
}

pub fn run_batch(spec: &BatchSpec) -> BatchReport {
    let opts = SolveOptions {
        position_budget: spec.position_budget,
        strategies: false,
    };
    let per_instance: Vec<Vec<BatchRow>> = (0..spec.count)
        .into_par_iter()
        .map(|instance| {
            let ctx = Ctx { spec, instance, opts };
            run_instance(&ctx).unwrap_or_else(|e| vec![ctx.error_row(e)])
        })
        .collect();
    let rows: Vec<BatchRow> = per_instance.into_iter().flatten().collect();
    let mut summary = BatchSummary {
        instances: spec.count,
        rows: rows.len(),
        ..BatchSummary::default()
    };
    for r in &rows {
        match r.agreement {
            Agreement::Agree => summary.agree += 1,
            Agreement::LeftUnknown => summary.left_unknown += 1,
            Agreement::RightUnknown => summary.right_unknown += 1,
            Agreement::BothUnknown => summary.both_unknown += 1,
            Agreement::Disagree => summary.disagree += 1,
            Agreement::Error => summary.errors += 1,
        }
    }
    BatchReport {
        spec: *spec,
        rows,
        summary,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_count_gives_an_empty_report() {
        let r = run_batch(&BatchSpec::new(BatchOp::EnergyToSim, 42, 0));
        assert!(r.rows.is_empty());
        assert_eq!(r.summary, BatchSummary::default());
        assert!(r.passed());
    }

    #[test]
    fn same_seed_same_report() {
        let spec = BatchSpec::new(BatchOp::SimToEnergy, 3, 3);
        let a = serde_json::to_string(&run_batch(&spec)).unwrap();
        let b = serde_json::to_string(&run_batch(&spec)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn agreement_flags() {
        use Outcome::*;
        assert_eq!(Agreement::of(Win0, Win0), Agreement::Agree);
        assert_eq!(Agreement::of(Win0, Win1), Agreement::Disagree);
        assert_eq!(Agreement::of(Unknown, Win1), Agreement::LeftUnknown);
        assert_eq!(Agreement::of_refinement(Win1, Unknown), Agreement::Disagree);
        assert_eq!(Agreement::of_refinement(Unknown, Win1), Agreement::LeftUnknown);
    }

    #[test]
    fn capacity_errors_are_rows() {
        let mut spec = BatchSpec::new(BatchOp::EnergyToSim, 1, 2);
        spec.position_budget = 1;
        let r = run_batch(&spec);
        assert_eq!(r.summary.errors, 2);
        assert!(r.rows.iter().all(|row| row.error.is_some()));
        assert!(!r.passed());
    }
}
