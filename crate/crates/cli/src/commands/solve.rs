use std::path::PathBuf;
use std::time::Instant;

use clap::{ArgAction, Args};
use ordagg::analysis::theoretical_bound;
use ordagg::decoder::DecodeConfig;
use ordagg::graph::DEFAULT_CC_WEIGHT;
use ordagg::maxcut::SolverConfig;
use ordagg::pipeline;

use crate::format::{InstanceFile, Report, SolutionFile};
use crate::{open, output, Failure};

#[derive(Debug, Clone, Args)]
pub struct SolveArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Solution path; the solution is not written when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Report path; stdout when absent.
    #[arg(long)]
    pub report: Option<PathBuf>,
    /// Seeds both the cut and the decoder.
    #[arg(long, default_value_t = 0)]
    pub solver_seed: u64,
    #[arg(long, default_value_t = 8)]
    pub restarts: usize,
    #[arg(long, default_value_t = 200)]
    pub hyperplanes: usize,
    #[arg(long, default_value_t = 2000)]
    pub max_iterations: usize,
    /// Rotate directed embeddings before rounding.
    #[arg(long, default_value_t = true, action = ArgAction::Set)]
    pub rotation: bool,
    /// Cut the sides again instead of completing them at random.
    #[arg(long)]
    pub recursive: bool,
    /// Graph weight of a must-link constraint.
    #[arg(long, default_value_t = DEFAULT_CC_WEIGHT, allow_negative_numbers = true)]
    pub cc_weight: f64,
}

impl SolveArgs {
    pub fn new(input: PathBuf) -> Self {
        SolveArgs {
            input,
            out: None,
            report: None,
            solver_seed: 0,
            restarts: 8,
            hyperplanes: 200,
            max_iterations: 2000,
            rotation: true,
            recursive: false,
            cc_weight: DEFAULT_CC_WEIGHT,
        }
    }

    pub fn solver(&self) -> SolverConfig {
        SolverConfig {
            restarts: self.restarts,
            hyperplanes: self.hyperplanes,
            max_iterations: self.max_iterations,
            rotation: self.rotation,
            seed: self.solver_seed,
            ..SolverConfig::default()
        }
    }

    pub fn decoder(&self) -> DecodeConfig {
        DecodeConfig {
            recursive: self.recursive,
            seed: self.solver_seed,
            solver: self.solver(),
            cc_mustlink_weight: self.cc_weight,
            ..DecodeConfig::default()
        }
    }
}

/// Solves `file` and returns the solution with its report.
pub fn solve_file(file: &InstanceFile, args: &SolveArgs) -> Result<(SolutionFile, Report), Failure> {
    if !args.cc_weight.is_finite() {
        return Err(Failure::invalid("--cc-weight must be finite"));
    }
    let instance = file.instance();
    let start = Instant::now();
    let out = pipeline::run(&instance, &args.solver(), &args.decoder())?;
    let wall_ms = start.elapsed().as_secs_f64() * 1e3;
    let theoretical_bound = file.generator.as_ref().and_then(|g| theoretical_bound(file.kind, &g.counts).ok());
    let mut report = Report {
        kind: file.kind,
        n: file.n,
        cut_weight: out.cut.weight,
        sdp_objective: out.cut.sdp_objective,
        cut: out.cut.members(),
        satisfied: out.score.satisfied,
        total: out.score.total,
        fraction: out.score.fraction(),
        forbidden: None,
        desired: None,
        theoretical_bound,
        wall_ms,
    };
    report.set_split(out.split);
    Ok((SolutionFile::new(file.kind, out.solution), report))
}

pub fn run(args: &SolveArgs) -> Result<(), Failure> {
    let file = InstanceFile::read(open(&args.input)?).map_err(Failure::Invalid)?;
    let (solution, report) = solve_file(&file, args)?;
    if let Some(path) = &args.out {
        let mut out = output(Some(path))?;
        solution.write(&mut out)?;
        out.flush()?;
    }
    let mut out = output(args.report.as_deref())?;
    report.write(&mut out)?;
    out.flush()?;
    Ok(())
}
