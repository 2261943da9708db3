//! NSGA-III with reference-point niching.

pub mod associate;
mod engine;
pub mod lattice;
pub mod niching;
pub mod normalize;
pub mod sort;

pub use associate::{associate, associate_fast, AssociationMode, Associator, Backend};
pub use engine::{nsga3_run, Nsga3, Nsga3Config, StepOutcome};
pub use lattice::{generate_reference_points, protective_divisions, LatticePoint, ReferenceLattice};
pub use niching::{niching_select, Candidate};
pub use normalize::{normalize, Normalized, NormalizationState};
pub use sort::non_dominated_sort;
