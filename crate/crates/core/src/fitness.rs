//! Objective vectors and Pareto dominance (maximization).

use std::fmt;
use std::ops::Index;

use smallvec::SmallVec;

use crate::error::{Error, Result};

pub type Objectives = SmallVec<[u64; 4]>;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FitnessVector(Objectives);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Dominance {
    StrictlyDominates,
    StrictlyDominated,
    Equal,
    Incomparable,
}

impl Dominance {
    pub fn weakly_dominates(self) -> bool {
        matches!(self, Dominance::StrictlyDominates | Dominance::Equal)
    }

    pub fn reverse(self) -> Dominance {
        match self {
            Dominance::StrictlyDominates => Dominance::StrictlyDominated,
            Dominance::StrictlyDominated => Dominance::StrictlyDominates,
            other => other,
        }
    }
}

impl FitnessVector {
    pub fn new(values: impl IntoIterator<Item = u64>) -> Self {
        FitnessVector(values.into_iter().collect())
    }

    pub fn zeros(m: usize) -> Self {
        FitnessVector(SmallVec::from_elem(0, m))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> &[u64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&v| v == 0)
    }

    /// Dominance relation of `self` towards `other`.
    pub fn compare(&self, other: &FitnessVector) -> Result<Dominance> {
        if self.len() != other.len() {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                actual: other.len(),
            });
        }
        Ok(self.compare_unchecked(other))
    }

    pub(crate) fn compare_unchecked(&self, other: &FitnessVector) -> Dominance {
        let mut greater = false;
        let mut less = false;
        for (a, b) in self.0.iter().zip(&other.0) {
            if a > b {
                greater = true;
            } else if a < b {
                less = true;
            }
            if greater && less {
                return Dominance::Incomparable;
            }
        }
        match (greater, less) {
            (false, false) => Dominance::Equal,
            (true, false) => Dominance::StrictlyDominates,
            (false, true) => Dominance::StrictlyDominated,
            (true, true) => Dominance::Incomparable,
        }
    }

    /// `self >= other` componentwise and `self != other`.
    #[inline]
    pub fn strictly_dominates(&self, other: &FitnessVector) -> bool {
        let mut strict = false;
        for (a, b) in self.0.iter().zip(&other.0) {
            if a < b {
                return false;
            }
            strict |= a > b;
        }
        strict
    }

    #[inline]
    pub fn weakly_dominates(&self, other: &FitnessVector) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a >= b)
    }
}

pub fn compare_dominance(u: &FitnessVector, v: &FitnessVector) -> Result<Dominance> {
    u.compare(v)
}

impl Index<usize> for FitnessVector {
    type Output = u64;

    fn index(&self, i: usize) -> &u64 {
        &self.0[i]
    }
}

impl From<Vec<u64>> for FitnessVector {
    fn from(v: Vec<u64>) -> Self {
        FitnessVector(v.into())
    }
}

impl<const N: usize> From<[u64; N]> for FitnessVector {
    fn from(v: [u64; N]) -> Self {
        FitnessVector(v.iter().copied().collect())
    }
}

/// Space-separated values, e.g. `6 10`.
impl fmt::Display for FitnessVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for FitnessVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_string().replace(' ', ","))
    }
}
