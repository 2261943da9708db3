//! Batch experiments: one run per seed on a worker pool, records in seed order.

use std::io::Write;
use std::path::Path;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::benchmarks::ProblemSpec;
use crate::error::{Error, Result};
use crate::gsemo::{gsemo_run, GsemoConfig};
use crate::nsga3::{AssociationMode, Nsga3Config};
use crate::record::{Algorithm, RunRecord};
use crate::variation::CrossoverKind;

/// Either an explicit seed list or `count` seeds `master, master + 1, ...`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Seeds {
    List(Vec<u64>),
    Range { master: u64, count: u64 },
}

impl Seeds {
    pub fn expand(&self) -> Vec<u64> {
        match self {
            Seeds::List(v) => v.clone(),
            Seeds::Range { master, count } => (0..*count).map(|i| master.wrapping_add(i)).collect(),
        }
    }
}

fn one() -> usize {
    1
}

fn default_true() -> bool {
    true
}

/// On-disk experiment description (JSON). `mu`, `p`, `eps_nad`,
/// `association`, `stop_on_cover` and `max_generations` apply to NSGA-III
/// only; `p` and `eps_nad` default to the protective values.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub algorithm: Algorithm,
    pub spec: ProblemSpec,
    #[serde(default)]
    pub mu: Option<usize>,
    pub p_c: f64,
    pub crossover: CrossoverKind,
    #[serde(default)]
    pub p: Option<u64>,
    #[serde(default)]
    pub eps_nad: Option<u64>,
    pub seeds: Seeds,
    pub budget: u64,
    #[serde(default = "one")]
    pub workers: usize,
    #[serde(default)]
    pub protection_check: bool,
    #[serde(default)]
    pub association: AssociationMode,
    #[serde(default = "default_true")]
    pub stop_on_cover: bool,
    #[serde(default)]
    pub max_generations: Option<u64>,
    /// Fill the `wallclock_ms` column. Off by default so that CSVs of
    /// identical configs compare equal byte for byte.
    #[serde(default)]
    pub record_wallclock: bool,
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidConfig(e.to_string()))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    pub fn nsga3_config(&self, seed: u64) -> Result<Nsga3Config> {
        let mu = self
            .mu
            .ok_or_else(|| Error::InvalidConfig("nsga3 needs `mu`".into()))?;
        let mut c = Nsga3Config::new(self.spec, mu, self.p_c, self.crossover, seed, self.budget);
        if let Some(p) = self.p {
            c.p = p;
        }
        if let Some(e) = self.eps_nad {
            c.eps_nad = e;
        }
        c.protection_check = self.protection_check;
        c.association = self.association;
        c.stop_on_cover = self.stop_on_cover;
        c.max_generations = self.max_generations;
        Ok(c)
    }

    pub fn gsemo_config(&self, seed: u64) -> GsemoConfig {
        GsemoConfig::new(self.spec, self.p_c, self.crossover, seed, self.budget)
    }

    pub fn validate(&self) -> Result<()> {
        if self.seeds.expand().is_empty() {
            return Err(Error::InvalidConfig("seed list is empty".into()));
        }
        if self.workers == 0 {
            return Err(Error::InvalidConfig("workers must be >= 1".into()));
        }
        match self.algorithm {
            Algorithm::Nsga3 => self.nsga3_config(0)?.validate(),
            Algorithm::Gsemo => {
                if self.mu.is_some() || self.p.is_some() || self.eps_nad.is_some() {
                    return Err(Error::InvalidConfig("`mu`, `p` and `eps_nad` do not apply to gsemo".into()));
                }
                self.gsemo_config(0).validate()
            }
        }
    }

    /// Runs a single seed.
    pub fn run_one(&self, seed: u64) -> Result<RunRecord> {
        let start = Instant::now();
        let mut record = match self.algorithm {
            Algorithm::Nsga3 => crate::nsga3::nsga3_run(&self.nsga3_config(seed)?)?,
            Algorithm::Gsemo => gsemo_run(&self.gsemo_config(seed))?,
        };
        if self.record_wallclock {
            record.wallclock_ms = Some(start.elapsed().as_millis() as u64);
        }
        Ok(record)
    }
}

/// Aggregates over one experiment. Eval statistics cover only covering runs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryStats {
    pub runs: usize,
    pub covered: usize,
    pub first_hits: usize,
    pub cover_rate: f64,
    pub first_hit_rate: f64,
    pub median_evals: Option<f64>,
    pub mean_evals: Option<f64>,
    pub max_evals: Option<u64>,
}

impl SummaryStats {
    pub fn of(records: &[RunRecord]) -> Self {
        let runs = records.len();
        let mut evals: Vec<u64> = records.iter().filter_map(|r| r.full_cover_eval).collect();
        evals.sort_unstable();
        let first_hits = records.iter().filter(|r| r.first_pareto_eval.is_some()).count();
        let rate = |k: usize| if runs == 0 { 0.0 } else { k as f64 / runs as f64 };
        let median = match evals.len() {
            0 => None,
            k if k % 2 == 1 => Some(evals[k / 2] as f64),
            k => Some((evals[k / 2 - 1] as f64 + evals[k / 2] as f64) / 2.0),
        };
        SummaryStats {
            runs,
            covered: evals.len(),
            first_hits,
            cover_rate: rate(evals.len()),
            first_hit_rate: rate(first_hits),
            median_evals: median,
            mean_evals: (!evals.is_empty()).then(|| evals.iter().map(|&e| e as f64).sum::<f64>() / evals.len() as f64),
            max_evals: evals.last().copied(),
        }
    }
}

impl std::fmt::Display for SummaryStats {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let opt = |v: Option<f64>| v.map_or_else(|| "-".to_string(), |v| format!("{v:.1}"));
        write!(
            f,
            "runs={} covered={} cover_rate={:.3} first_hit_rate={:.3} median_evals={} mean_evals={} max_evals={}",
            self.runs,
            self.covered,
            self.cover_rate,
            self.first_hit_rate,
            opt(self.median_evals),
            opt(self.mean_evals),
            self.max_evals.map_or_else(|| "-".to_string(), |v| v.to_string()),
        )
    }
}

/// One run per seed on up to `workers` threads. Records come back in seed
/// order; the config is validated before any run starts.
pub fn run_experiment(config: &ExperimentConfig) -> Result<(Vec<RunRecord>, SummaryStats)> {
    config.validate()?;
    let seeds = config.seeds.expand();
    let records: Vec<RunRecord> = if config.workers == 1 {
        seeds.iter().map(|&s| config.run_one(s)).collect::<Result<_>>()?
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(config.workers)
            .build()
            .map_err(|e| Error::InvalidConfig(e.to_string()))?;
        pool.install(|| seeds.par_iter().map(|&s| config.run_one(s)).collect::<Result<_>>())?
    };
    let stats = SummaryStats::of(&records);
    Ok((records, stats))
}

pub const CSV_COLUMNS: [&str; 13] = [
    "seed",
    "algo",
    "spec",
    "mu",
    "pc",
    "crossover",
    "generations",
    "evals",
    "first_pareto_eval",
    "full_cover_eval",
    "covered",
    "backend",
    "wallclock_ms",
];

fn csv_fields(r: &RunRecord) -> [String; 13] {
    let opt = |v: Option<u64>| v.map_or_else(String::new, |v| v.to_string());
    [
        r.seed.to_string(),
        r.algo.name().to_string(),
        r.spec.to_string(),
        r.mu.to_string(),
        r.pc.to_string(),
        r.crossover.name().to_string(),
        r.generations.to_string(),
        r.evals.to_string(),
        opt(r.first_pareto_eval),
        opt(r.full_cover_eval),
        r.covered.to_string(),
        r.backend.clone(),
        opt(r.wallclock_ms),
    ]
}

pub fn write_csv<W: Write>(records: &[RunRecord], writer: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(CSV_COLUMNS)?;
    for r in records {
        w.write_record(csv_fields(r))?;
    }
    w.flush()?;
    Ok(())
}

pub fn csv_string(records: &[RunRecord]) -> String {
    let mut buf = Vec::new();
    write_csv(records, &mut buf).expect("writing to memory");
    String::from_utf8(buf).expect("csv is utf-8")
}
