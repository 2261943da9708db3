//! Genotype/fitness pairs and Pareto-front coverage tracking.

use rustc_hash::FxHashSet as HashSet;

use crate::benchmarks::{evaluate_unchecked, pareto_front, ProblemSpec};
use crate::bits::BitString;
use crate::error::Result;
use crate::fitness::FitnessVector;
use crate::rng::RandomSource;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Individual {
    pub x: BitString,
    pub f: FitnessVector,
}

impl Individual {
    pub fn evaluate(x: BitString, spec: &ProblemSpec) -> Self {
        let f = evaluate_unchecked(&x, spec);
        Individual { x, f }
    }
}

/// Uniform random string of length `n`.
pub fn random_bits(n: usize, rng: &mut RandomSource) -> BitString {
    let words = (0..n.div_ceil(64)).map(|_| rng.next_u64()).collect();
    BitString::from_words(n, words)
}

/// The Pareto front of a spec as a lookup set.
#[derive(Debug, Clone)]
pub struct FrontTracker {
    front: HashSet<FitnessVector>,
}

impl FrontTracker {
    pub fn new(spec: &ProblemSpec) -> Result<Self> {
        Ok(FrontTracker {
            front: pareto_front(spec)?.into_iter().collect(),
        })
    }

    pub fn size(&self) -> usize {
        self.front.len()
    }

    pub fn is_optimal(&self, f: &FitnessVector) -> bool {
        self.front.contains(f)
    }

    /// Distinct Pareto-optimal fitness vectors among `fitnesses`.
    pub fn present<'a>(&self, fitnesses: impl IntoIterator<Item = &'a FitnessVector>) -> HashSet<FitnessVector> {
        fitnesses
            .into_iter()
            .filter(|f| self.front.contains(*f))
            .cloned()
            .collect()
    }

    pub fn covers<'a>(&self, fitnesses: impl IntoIterator<Item = &'a FitnessVector>) -> bool {
        self.present(fitnesses).len() == self.front.len()
    }
}
