use std::path::PathBuf;

use clap::Args;
use ordagg::generator::{generate_instance, Batch, Counts, GeneratorConfig};
use ordagg::model::Kind;

use crate::format::{GeneratorInfo, InstanceFile};
use crate::{output, Failure};

#[derive(Debug, Clone, Args)]
pub struct GenArgs {
    #[arg(long)]
    pub kind: Kind,
    #[arg(long)]
    pub n: usize,
    /// Constraint count for single-batch kinds.
    #[arg(long)]
    pub m: Option<usize>,
    /// Forbidden constraint count (triplets, quartets).
    #[arg(long)]
    pub m1: Option<usize>,
    /// Desired constraint count (triplets, quartets).
    #[arg(long)]
    pub m2: Option<usize>,
    #[arg(long)]
    pub eps: Option<f64>,
    #[arg(long)]
    pub eps1: Option<f64>,
    #[arg(long)]
    pub eps2: Option<f64>,
    /// Resample the ground truth until it has a balanced top split.
    #[arg(long)]
    pub balanced: bool,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output path; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Leave the ground truth out of the file.
    #[arg(long)]
    pub hide_truth: bool,
}

impl GenArgs {
    pub fn config(&self) -> Result<GeneratorConfig, Failure> {
        let counts = if self.kind.is_mixed() {
            if self.m.is_some() || self.eps.is_some() {
                return Err(Failure::invalid(format!(
                    "--kind {} requires --m1/--m2 and --eps1/--eps2 instead of --m and --eps",
                    self.kind
                )));
            }
            let (Some(m1), Some(m2)) = (self.m1, self.m2) else {
                return Err(Failure::invalid(format!("--kind {} requires --m1 and --m2", self.kind)));
            };
            Counts::Mixed {
                forbidden: Batch { m: m1, eps: self.eps1.unwrap_or(0.0) },
                desired: Batch { m: m2, eps: self.eps2.unwrap_or(0.0) },
            }
        } else {
            if self.m1.is_some() || self.m2.is_some() || self.eps1.is_some() || self.eps2.is_some() {
                return Err(Failure::invalid(format!("--kind {} takes --m and --eps", self.kind)));
            }
            let Some(m) = self.m else {
                return Err(Failure::invalid(format!("--kind {} requires --m", self.kind)));
            };
            Counts::Uniform(Batch { m, eps: self.eps.unwrap_or(0.0) })
        };
        let cfg = GeneratorConfig { n: self.n, kind: self.kind, counts, balanced: self.balanced, seed: self.seed };
        cfg.validate()?;
        Ok(cfg)
    }
}

/// The instance file `args` describe.
pub fn generate_file(args: &GenArgs) -> Result<InstanceFile, Failure> {
    let cfg = args.config()?;
    let mut instance = generate_instance(&cfg)?;
    if args.hide_truth {
        instance.ground_truth = None;
    }
    let info = GeneratorInfo { seed: cfg.seed, balanced: cfg.balanced, counts: cfg.counts };
    Ok(InstanceFile::new(instance, Some(info)))
}

pub fn run(args: &GenArgs) -> Result<(), Failure> {
    let file = generate_file(args)?;
    let mut out = output(args.out.as_deref())?;
    file.write(&mut out)?;
    out.flush()?;
    Ok(())
}
