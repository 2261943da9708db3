//! GSEMO and NSGA-III on the many-objective royal-road benchmarks, plus
//! brute-force oracles for the benchmarks' structural properties.
//!
//! Everything is deterministic given a seed. See [`harness`] for batch runs.

pub mod benchmarks;
pub mod bits;
pub mod error;
pub mod fitness;
pub mod gsemo;
pub mod harness;
pub mod individual;
pub mod nsga3;
pub mod oracle;
pub mod record;
pub mod rng;
pub mod variation;

pub use benchmarks::{
    antichain_bound, classify, evaluate, f_max, is_pareto_optimal, pareto_front, pareto_set, pareto_set_capped,
    pareto_set_size, Family, ProblemSpec, Region,
};
pub use bits::BitString;
pub use error::{Error, Result};
pub use fitness::{Dominance, FitnessVector};
pub use gsemo::{gsemo_run, Archive, GsemoConfig};
pub use harness::{run_experiment, write_csv, ExperimentConfig, Seeds, SummaryStats};
pub use individual::{FrontTracker, Individual};
pub use nsga3::{nsga3_run, AssociationMode, Backend, Nsga3, Nsga3Config, ReferenceLattice};
pub use oracle::LemmaReport;
pub use record::{Algorithm, RunRecord};
pub use rng::RandomSource;
pub use variation::{BitMutation, CrossoverKind};
