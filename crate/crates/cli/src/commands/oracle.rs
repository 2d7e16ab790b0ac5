use std::io::Write;
use std::path::PathBuf;

use clap::Args;
use ordagg::analysis::random_baseline_fraction;
use ordagg::decoder::DecodeConfig;
use ordagg::evaluator::oracle_best;
use ordagg::generator::{generate_instance, Batch, Counts, GeneratorConfig};
use ordagg::maxcut::SolverConfig;
use ordagg::model::{Instance, Kind};
use ordagg::pipeline;
use serde::Serialize;

use crate::format::InstanceFile;
use crate::{open, output, Failure};

#[derive(Debug, Clone, Args)]
pub struct OracleArgs {
    /// Compare on this instance file instead of a generated sweep.
    #[arg(long = "in", conflicts_with = "kind")]
    pub input: Option<PathBuf>,
    /// Kind of the generated sweep.
    #[arg(long, required_unless_present = "input")]
    pub kind: Option<Kind>,
    #[arg(long, default_value_t = 6)]
    pub n: usize,
    /// Constraints per generated instance.
    #[arg(long, default_value_t = 12)]
    pub m: usize,
    /// Forbidden share of a tree sweep's constraints (0 to 1).
    #[arg(long, default_value_t = 0.5)]
    pub forbidden_share: f64,
    /// Error rate of generated constraints.
    #[arg(long, default_value_t = 0.5)]
    pub eps: f64,
    #[arg(long, default_value_t = 100)]
    pub count: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Report path; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleRow {
    pub index: u64,
    pub n: usize,
    pub total: usize,
    pub solver_satisfied: usize,
    pub oracle_satisfied: usize,
    pub solver_fraction: Option<f64>,
    pub oracle_fraction: Option<f64>,
    pub random_baseline_fraction: Option<f64>,
    /// Worst-case ratio the solver is held to.
    pub rho: f64,
    /// Solver below `rho` times the oracle.
    pub flagged: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleReport {
    pub kind: Kind,
    pub instances: usize,
    pub flagged: usize,
    pub rows: Vec<OracleRow>,
}

/// Ratio of the random-assignment baseline: 1/2 for mas and cc, 1/3 for btw,
/// 2/3 for nonbtw; tree instances get 1/3 when they hold any desired
/// constraint and 2/3 otherwise.
pub fn rho(instance: &Instance) -> f64 {
    match instance.kind {
        Kind::Mas | Kind::Cc => 0.5,
        Kind::Btw => 1.0 / 3.0,
        Kind::NonBtw => 2.0 / 3.0,
        Kind::Triplets | Kind::Quartets => {
            if instance.forbidden_desired_counts().1 > 0 {
                1.0 / 3.0
            } else {
                2.0 / 3.0
            }
        }
    }
}

pub fn compare(instance: &Instance, index: u64, seed: u64) -> Result<OracleRow, Failure> {
    let (_, best) = oracle_best(instance)?;
    let solver = SolverConfig::default().with_seed(seed);
    let decode = DecodeConfig { seed, solver: solver.clone(), ..DecodeConfig::default() };
    let out = pipeline::run(instance, &solver, &decode)?;
    let (m1, m2) = instance.forbidden_desired_counts();
    let counts = if instance.kind.is_mixed() {
        Counts::Mixed { forbidden: Batch { m: m1, eps: 0.0 }, desired: Batch { m: m2, eps: 0.0 } }
    } else {
        Counts::Uniform(Batch { m: instance.m(), eps: 0.0 })
    };
    let rho = rho(instance);
    Ok(OracleRow {
        index,
        n: instance.n,
        total: best.total,
        solver_satisfied: out.score.satisfied,
        oracle_satisfied: best.satisfied,
        solver_fraction: out.score.fraction(),
        oracle_fraction: best.fraction(),
        random_baseline_fraction: random_baseline_fraction(instance.kind, &counts),
        rho,
        flagged: (out.score.satisfied as f64) < rho * best.satisfied as f64 - 1e-9,
    })
}

/// Instance `index` of a generated sweep.
pub fn sweep_instance(args: &OracleArgs, kind: Kind, index: u64) -> Result<Instance, Failure> {
    if !(0.0..=1.0).contains(&args.forbidden_share) {
        return Err(Failure::invalid("--forbidden-share must lie in [0, 1]"));
    }
    let counts = if kind.is_mixed() {
        let m1 = (args.m as f64 * args.forbidden_share).round() as usize;
        Counts::Mixed { forbidden: Batch { m: m1, eps: args.eps }, desired: Batch { m: args.m - m1, eps: args.eps } }
    } else {
        Counts::Uniform(Batch { m: args.m, eps: args.eps })
    };
    let cfg = GeneratorConfig { n: args.n, kind, counts, balanced: false, seed: args.seed.wrapping_add(index) };
    Ok(generate_instance(&cfg)?)
}

pub fn oracle_report(args: &OracleArgs) -> Result<OracleReport, Failure> {
    let (kind, rows) = match &args.input {
        Some(path) => {
            let file = InstanceFile::read(open(path)?).map_err(Failure::Invalid)?;
            (file.kind, vec![compare(&file.instance(), 0, args.seed)?])
        }
        None => {
            let kind = args.kind.ok_or_else(|| Failure::invalid("--kind or --in is required"))?;
            let rows = (0..args.count)
                .map(|i| compare(&sweep_instance(args, kind, i)?, i, args.seed.wrapping_add(i)))
                .collect::<Result<Vec<_>, _>>()?;
            (kind, rows)
        }
    };
    Ok(OracleReport { kind, instances: rows.len(), flagged: rows.iter().filter(|r| r.flagged).count(), rows })
}

pub fn run(args: &OracleArgs) -> Result<(), Failure> {
    let report = oracle_report(args)?;
    let mut out = output(args.out.as_deref())?;
    serde_json::to_writer_pretty(&mut out, &report).map_err(|e| Failure::Runtime(e.into()))?;
    writeln!(out)?;
    out.flush()?;
    Ok(())
}
