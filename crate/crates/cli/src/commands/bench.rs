use std::path::PathBuf;
use std::time::Instant;

use clap::Args;
use ordagg::analysis::theoretical_bound;
use ordagg::decoder::DecodeConfig;
use ordagg::evaluator::{random_solution, score};
use ordagg::generator::{generate_instance, Batch, Counts, GeneratorConfig};
use ordagg::maxcut::SolverConfig;
use ordagg::model::Kind;
use ordagg::pipeline;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::{output, Failure};

/// Stream separating the random-baseline draws from generation.
const BASELINE_STREAM: u64 = 0x6261_7365;
/// Random solutions averaged for the baseline column.
pub const BASELINE_DRAWS: usize = 32;

#[derive(Debug, Clone, Args)]
pub struct BenchArgs {
    #[arg(long, value_delimiter = ',', default_value = "mas,btw,nonbtw,cc,triplets,quartets")]
    pub kinds: Vec<Kind>,
    #[arg(long, default_value_t = 300)]
    pub n: usize,
    /// Constraints per instance; split evenly between forbidden and desired for tree kinds.
    #[arg(long, default_value_t = 20_000)]
    pub m: usize,
    #[arg(long, value_delimiter = ',', default_value = "0,0.1")]
    pub eps_grid: Vec<f64>,
    #[arg(long, default_value_t = 10)]
    pub seeds: u64,
    #[arg(long, default_value_t = 0)]
    pub first_seed: u64,
    #[arg(long, default_value_t = 8)]
    pub restarts: usize,
    #[arg(long, default_value_t = 200)]
    pub hyperplanes: usize,
    /// CSV path; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// One CSV line. `row` is `data` for a single run and `mean` for the
/// aggregate over seeds, which leaves `seed` empty and fills the `_sd` columns.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRow {
    pub row: &'static str,
    pub kind: Kind,
    pub n: usize,
    pub m: usize,
    pub eps: f64,
    pub seed: Option<u64>,
    pub satisfied_fraction: f64,
    pub satisfied_fraction_sd: Option<f64>,
    pub forbidden_fraction: Option<f64>,
    pub desired_fraction: Option<f64>,
    pub bound: Option<f64>,
    pub random_baseline_fraction: f64,
    pub wall_ms: f64,
}

/// Planted configuration used for one grid cell. Correlation clustering and
/// triplets are generated balanced.
pub fn cell_config(kind: Kind, n: usize, m: usize, eps: f64, seed: u64) -> GeneratorConfig {
    let counts = if kind.is_mixed() {
        Counts::Mixed { forbidden: Batch { m: m / 2, eps }, desired: Batch { m: m - m / 2, eps } }
    } else {
        Counts::Uniform(Batch { m, eps })
    };
    GeneratorConfig { n, kind, counts, balanced: matches!(kind, Kind::Cc | Kind::Triplets), seed }
}

pub fn run_cell(args: &BenchArgs, kind: Kind, eps: f64, seed: u64) -> Result<BenchRow, Failure> {
    let cfg = cell_config(kind, args.n, args.m, eps, seed);
    let instance = generate_instance(&cfg)?;
    let solver = SolverConfig { restarts: args.restarts, hyperplanes: args.hyperplanes, seed, ..SolverConfig::default() };
    let decode = DecodeConfig { seed, solver: solver.clone(), ..DecodeConfig::default() };
    let start = Instant::now();
    let out = pipeline::run(&instance, &solver, &decode)?;
    let wall_ms = start.elapsed().as_secs_f64() * 1e3;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(BASELINE_STREAM);
    let mut baseline = 0.0;
    for _ in 0..BASELINE_DRAWS {
        baseline += score(&instance, &random_solution(kind, instance.n, &mut rng))?.fraction().unwrap_or(0.0);
    }
    let m = instance.m();
    Ok(BenchRow {
        row: "data",
        kind,
        n: cfg.n,
        m,
        eps,
        seed: Some(seed),
        satisfied_fraction: out.score.fraction().unwrap_or(0.0),
        satisfied_fraction_sd: None,
        forbidden_fraction: out.split.and_then(|s| s.forbidden.fraction()),
        desired_fraction: out.split.and_then(|s| s.desired.fraction()),
        bound: (m > 0).then(|| theoretical_bound(kind, &cfg.counts).ok().map(|b| b / m as f64)).flatten(),
        random_baseline_fraction: baseline / BASELINE_DRAWS as f64,
        wall_ms,
    })
}

fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

fn sd(xs: &[f64]) -> f64 {
    if xs.len() < 2 {
        return 0.0;
    }
    let mu = mean(xs);
    (xs.iter().map(|x| (x - mu).powi(2)).sum::<f64>() / (xs.len() - 1) as f64).sqrt()
}

fn mean_opt(xs: impl Iterator<Item = Option<f64>>) -> Option<f64> {
    let v: Option<Vec<f64>> = xs.collect();
    v.filter(|v| !v.is_empty()).map(|v| mean(&v))
}

/// Mean row over the data rows of one (kind, eps) cell group.
pub fn aggregate(rows: &[BenchRow]) -> BenchRow {
    let first = &rows[0];
    let fractions: Vec<f64> = rows.iter().map(|r| r.satisfied_fraction).collect();
    BenchRow {
        row: "mean",
        seed: None,
        satisfied_fraction: mean(&fractions),
        satisfied_fraction_sd: Some(sd(&fractions)),
        forbidden_fraction: mean_opt(rows.iter().map(|r| r.forbidden_fraction)),
        desired_fraction: mean_opt(rows.iter().map(|r| r.desired_fraction)),
        bound: first.bound,
        random_baseline_fraction: mean(&rows.iter().map(|r| r.random_baseline_fraction).collect::<Vec<_>>()),
        wall_ms: mean(&rows.iter().map(|r| r.wall_ms).collect::<Vec<_>>()),
        ..first.clone()
    }
}

/// Every data row followed by the aggregate of its group, in grid order.
pub fn bench_rows(args: &BenchArgs) -> Result<Vec<BenchRow>, Failure> {
    if args.seeds == 0 {
        return Err(Failure::invalid("--seeds must be positive"));
    }
    let cells: Vec<(Kind, f64, u64)> = args
        .kinds
        .iter()
        .flat_map(|&k| args.eps_grid.iter().flat_map(move |&e| (0..args.seeds).map(move |s| (k, e, s))))
        .collect();
    let data: Vec<BenchRow> = cells
        .par_iter()
        .map(|&(kind, eps, s)| run_cell(args, kind, eps, args.first_seed + s))
        .collect::<Result<_, _>>()?;
    let mut rows = Vec::with_capacity(data.len() + data.len() / args.seeds as usize);
    for group in data.chunks(args.seeds as usize) {
        rows.extend_from_slice(group);
        rows.push(aggregate(group));
    }
    Ok(rows)
}

pub fn run(args: &BenchArgs) -> Result<(), Failure> {
    let rows = bench_rows(args)?;
    let mut writer = csv::Writer::from_writer(output(args.out.as_deref())?);
    for row in &rows {
        writer.serialize(row)?;
    }
    writer.flush()?;
    Ok(())
}
