//! Instance, solution and report files.
//!
//! Instance files put one constraint per line so that diffs stay readable.
//! Trees are nested arrays, which can be deeper than serde_json's default
//! recursion limit, so every reader here lifts that limit.

use std::io::{self, Read, Write};

use anyhow::{bail, Context};
use ordagg::evaluator::{Score, SplitScore};
use ordagg::generator::Counts;
use ordagg::model::{Constraint, GroundTruth, Instance, Kind, Solution};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

pub const FORMAT_VERSION: u32 = 1;

/// Parameters an instance was generated with.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorInfo {
    pub seed: u64,
    pub balanced: bool,
    pub counts: Counts,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub version: u32,
    pub kind: Kind,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<GeneratorInfo>,
    pub constraints: Vec<Constraint>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ground_truth: Option<GroundTruth>,
}

impl InstanceFile {
    pub fn new(instance: Instance, generator: Option<GeneratorInfo>) -> Self {
        InstanceFile {
            version: FORMAT_VERSION,
            kind: instance.kind,
            n: instance.n,
            generator,
            constraints: instance.constraints,
            ground_truth: instance.ground_truth,
        }
    }

    pub fn instance(&self) -> Instance {
        Instance {
            kind: self.kind,
            n: self.n,
            constraints: self.constraints.clone(),
            ground_truth: self.ground_truth.clone(),
        }
    }

    pub fn write<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "{{")?;
        writeln!(out, "  \"version\": {},", self.version)?;
        writeln!(out, "  \"kind\": {},", json(&self.kind)?)?;
        writeln!(out, "  \"n\": {},", self.n)?;
        if let Some(g) = &self.generator {
            writeln!(out, "  \"generator\": {},", json(g)?)?;
        }
        if self.constraints.is_empty() {
            write!(out, "  \"constraints\": []")?;
        } else {
            writeln!(out, "  \"constraints\": [")?;
            for (i, c) in self.constraints.iter().enumerate() {
                let sep = if i + 1 < self.constraints.len() { "," } else { "" };
                writeln!(out, "    {}{sep}", json(c)?)?;
            }
            write!(out, "  ]")?;
        }
        match &self.ground_truth {
            Some(gt) => writeln!(out, ",\n  \"ground_truth\": {}", json(gt)?)?,
            None => writeln!(out)?,
        }
        writeln!(out, "}}")
    }

    /// Parses and checks the version, ground truth and every constraint.
    pub fn read<R: Read>(input: R) -> anyhow::Result<Self> {
        let file: InstanceFile = from_reader(input).context("malformed instance file")?;
        if file.version != FORMAT_VERSION {
            bail!("unsupported instance file version {}", file.version);
        }
        let problems = file.instance().validate();
        if !problems.is_empty() {
            bail!("invalid instance: {}", problems.join("; "));
        }
        Ok(file)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolutionFile {
    pub version: u32,
    pub kind: Kind,
    pub solution: Solution,
}

impl SolutionFile {
    pub fn new(kind: Kind, solution: Solution) -> Self {
        SolutionFile { version: FORMAT_VERSION, kind, solution }
    }

    pub fn write<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "{}", json(self)?)
    }

    pub fn read<R: Read>(input: R) -> anyhow::Result<Self> {
        let file: SolutionFile = from_reader(input).context("malformed solution file")?;
        if file.version != FORMAT_VERSION {
            bail!("unsupported solution file version {}", file.version);
        }
        if !file.solution.fits(file.kind) {
            bail!("solution does not fit kind {}", file.kind);
        }
        Ok(file)
    }
}

/// Summary of one solve.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub kind: Kind,
    pub n: usize,
    pub cut_weight: f64,
    pub sdp_objective: f64,
    /// Items on the source side of the top cut.
    pub cut: Vec<usize>,
    pub satisfied: usize,
    pub total: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fraction: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub forbidden: Option<PartScore>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub desired: Option<PartScore>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theoretical_bound: Option<f64>,
    pub wall_ms: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PartScore {
    pub satisfied: usize,
    pub total: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fraction: Option<f64>,
}

impl From<Score> for PartScore {
    fn from(s: Score) -> Self {
        PartScore { satisfied: s.satisfied, total: s.total, fraction: s.fraction() }
    }
}

impl Report {
    pub fn set_split(&mut self, split: Option<SplitScore>) {
        self.forbidden = split.map(|s| s.forbidden.into());
        self.desired = split.map(|s| s.desired.into());
    }

    pub fn write<W: Write>(&self, mut out: W) -> io::Result<()> {
        serde_json::to_writer_pretty(&mut out, self)?;
        writeln!(out)
    }
}

fn json<T: Serialize + ?Sized>(value: &T) -> io::Result<String> {
    serde_json::to_string(value).map_err(io::Error::other)
}

/// Deserializes without serde_json's nesting limit.
pub fn from_reader<T: DeserializeOwned, R: Read>(input: R) -> serde_json::Result<T> {
    let mut de = serde_json::Deserializer::from_reader(io::BufReader::new(input));
    de.disable_recursion_limit();
    let value = T::deserialize(&mut de)?;
    de.end()?;
    Ok(value)
}
