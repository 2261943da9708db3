//! Per-run outcome records.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::benchmarks::ProblemSpec;
use crate::variation::CrossoverKind;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Nsga3,
    Gsemo,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Nsga3 => "nsga3",
            Algorithm::Gsemo => "gsemo",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Outcome of one run. For GSEMO, `mu` holds the peak archive size and
/// `generations` the number of iterations after initialization.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub seed: u64,
    pub algo: Algorithm,
    pub spec: ProblemSpec,
    pub mu: usize,
    pub pc: f64,
    pub crossover: CrossoverKind,
    pub generations: u64,
    pub evals: u64,
    pub first_pareto_eval: Option<u64>,
    pub full_cover_eval: Option<u64>,
    pub covered: bool,
    pub backend: String,
    pub wallclock_ms: Option<u64>,
}

impl RunRecord {
    /// `covered` agrees with `full_cover_eval`, and the first hit precedes full cover.
    pub fn is_consistent(&self) -> bool {
        let order = match (self.first_pareto_eval, self.full_cover_eval) {
            (Some(a), Some(b)) => a <= b,
            (None, Some(_)) => false,
            _ => true,
        };
        order && self.covered == self.full_cover_eval.is_some()
    }
}

impl fmt::Display for RunRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let opt = |v: Option<u64>| v.map_or_else(|| "-".to_string(), |v| v.to_string());
        write!(
            f,
            "seed={} algo={} spec={} mu={} pc={} crossover={} generations={} evals={} first_pareto={} full_cover={} covered={} backend={}",
            self.seed,
            self.algo,
            self.spec,
            self.mu,
            self.pc,
            self.crossover.name(),
            self.generations,
            self.evals,
            opt(self.first_pareto_eval),
            opt(self.full_cover_eval),
            self.covered,
            self.backend
        )?;
        if let Some(ms) = self.wallclock_ms {
            write!(f, " wallclock_ms={ms}")?;
        }
        Ok(())
    }
}
