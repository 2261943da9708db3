//! Brute-force ground truth for the benchmarks and operators.

pub mod antichain;
pub mod hamming;
pub mod image;
pub mod lemmas;
pub mod operators;
pub mod report;

pub use antichain::{max_antichain, verify_incomparable_bound, IncomparableBound};
pub use hamming::{min_hamming, HalfSets};
pub use image::{brute_force_pareto, fitness_image, ImageClass};
pub use lemmas::{
    default_instances, verify_hamming_separation, verify_rrmo_lemmas, verify_spec, verify_suite, verify_uni_lemmas,
};
pub use operators::verify_operators;
pub use report::{write_reports_csv, LemmaReport};
