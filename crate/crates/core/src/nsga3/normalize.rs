//! Objective normalization against the ideal and nadir points.

use smallvec::SmallVec;

use crate::fitness::FitnessVector;

/// Running ideal/extreme points over all merged populations seen so far.
///
/// The nadir is `max(eps_nad, y_max)` per objective.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalizationState {
    y_min: Vec<u64>,
    y_max: Vec<u64>,
    eps_nad: u64,
    seen: bool,
}

impl NormalizationState {
    pub fn new(m: usize, eps_nad: u64) -> Self {
        assert!(eps_nad > 0, "eps_nad must be positive");
        NormalizationState {
            y_min: vec![u64::MAX; m],
            y_max: vec![0; m],
            eps_nad,
            seen: false,
        }
    }

    pub fn from_population<'a>(
        fitnesses: impl IntoIterator<Item = &'a FitnessVector>,
        m: usize,
        eps_nad: u64,
    ) -> Self {
        let mut state = NormalizationState::new(m, eps_nad);
        state.update(fitnesses);
        state
    }

    /// Folds in a merged population; returns whether the ideal or nadir moved.
    pub fn update<'a>(&mut self, fitnesses: impl IntoIterator<Item = &'a FitnessVector>) -> bool {
        let before = (self.y_min.clone(), self.y_nad());
        for f in fitnesses {
            self.seen = true;
            for (j, &v) in f.values().iter().enumerate() {
                self.y_min[j] = self.y_min[j].min(v);
                self.y_max[j] = self.y_max[j].max(v);
            }
        }
        before != (self.y_min.clone(), self.y_nad())
    }

    pub fn y_min(&self) -> &[u64] {
        &self.y_min
    }

    pub fn y_max(&self) -> &[u64] {
        &self.y_max
    }

    pub fn eps_nad(&self) -> u64 {
        self.eps_nad
    }

    pub fn has_data(&self) -> bool {
        self.seen
    }

    pub fn y_nad(&self) -> Vec<u64> {
        self.y_max.iter().map(|&v| v.max(self.eps_nad)).collect()
    }

    /// Per-objective denominators `y_nad - y_min`, clamped below by 1.
    pub fn denominators(&self) -> SmallVec<[u64; 4]> {
        self.y_min
            .iter()
            .zip(self.y_nad())
            .map(|(&lo, hi)| hi.saturating_sub(lo).max(1))
            .collect()
    }
}

/// A normalized fitness vector held as exact fractions `num[j] / den[j]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Normalized {
    pub num: SmallVec<[u64; 4]>,
    pub den: SmallVec<[u64; 4]>,
}

impl Normalized {
    pub fn new(num: &[u64], den: &[u64]) -> Self {
        assert_eq!(num.len(), den.len());
        assert!(den.iter().all(|&d| d > 0), "zero denominator");
        Normalized {
            num: num.iter().copied().collect(),
            den: den.iter().copied().collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.num.len()
    }

    pub fn is_empty(&self) -> bool {
        self.num.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|&v| v == 0)
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.num
            .iter()
            .zip(&self.den)
            .map(|(&a, &b)| a as f64 / b as f64)
            .collect()
    }
}

/// `(f_j - y_min_j) / (y_nad_j - y_min_j)` with the denominator clamped to >= 1.
pub fn normalize(f: &FitnessVector, state: &NormalizationState) -> Normalized {
    let den = state.denominators();
    let num: SmallVec<[u64; 4]> = f
        .values()
        .iter()
        .zip(state.y_min())
        .map(|(&v, &lo)| {
            debug_assert!(v >= lo, "state does not cover this vector");
            v.saturating_sub(lo)
        })
        .collect();
    Normalized { num, den }
}
