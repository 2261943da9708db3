//! The simplex-lattice reference set `{ a/p : a ∈ N_0^m, Σ a_i = p }`.
//!
//! Points are handled through their integer coordinates `a`; the set itself
//! stays implicit unless it is small enough to list.

use std::fmt;

use smallvec::SmallVec;

use crate::benchmarks::{f_max, ProblemSpec};
use crate::error::{Error, Result};
use crate::rng::RandomSource;

/// Default limit for listing the lattice explicitly.
pub const ENUMERATION_CAP: u128 = 100_000;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticePoint(SmallVec<[u32; 4]>);

impl LatticePoint {
    pub fn new(coords: impl IntoIterator<Item = u32>) -> Self {
        LatticePoint(coords.into_iter().collect())
    }

    pub fn coords(&self) -> &[u32] {
        &self.0
    }

    pub(crate) fn coords_mut(&mut self) -> &mut [u32] {
        &mut self.0
    }

    /// Coordinates divided by `p`.
    pub fn to_unit(&self, p: u64) -> Vec<f64> {
        self.0.iter().map(|&a| a as f64 / p as f64).collect()
    }
}

impl fmt::Debug for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ReferenceLattice {
    m: usize,
    p: u64,
}

/// `C(n, k)` with overflow detection.
pub fn binomial(n: u64, k: u64) -> Option<u128> {
    let k = k.min(n.checked_sub(k)?);
    let mut acc: u128 = 1;
    for i in 0..k as u128 {
        // acc * (n - i) / (i + 1) stays integral at every step.
        acc = acc.checked_mul(n as u128 - i)? / (i + 1);
    }
    Some(acc)
}

impl ReferenceLattice {
    pub fn new(m: usize, p: u64) -> Result<Self> {
        if m < 1 || p < 1 {
            return Err(Error::InvalidConfig(format!(
                "reference lattice needs m >= 1 and p >= 1 (got m={m}, p={p})"
            )));
        }
        if p > u32::MAX as u64 {
            return Err(Error::InvalidConfig(format!("p={p} exceeds 32-bit coordinates")));
        }
        Ok(ReferenceLattice { m, p })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// `C(p+m-1, m-1)`, or `None` on overflow.
    pub fn size(&self) -> Option<u128> {
        binomial(self.p + self.m as u64 - 1, self.m as u64 - 1)
    }

    pub fn contains(&self, point: &LatticePoint) -> bool {
        point.coords().len() == self.m
            && point.coords().iter().map(|&a| a as u64).sum::<u64>() == self.p
    }

    /// Lists every point, in lexicographically decreasing order of coordinates.
    pub fn points(&self, cap: u128) -> Result<Vec<LatticePoint>> {
        let size = self.size().ok_or(Error::Overflow("lattice size"))?;
        if size > cap {
            return Err(Error::TooLarge {
                what: "reference lattice (use the implicit fast association backend)",
                size,
                cap,
            });
        }
        let mut out = Vec::with_capacity(size as usize);
        let mut coords = vec![0u32; self.m];
        self.fill(0, self.p as u32, &mut coords, &mut out);
        debug_assert_eq!(out.len() as u128, size);
        Ok(out)
    }

    fn fill(&self, at: usize, left: u32, coords: &mut [u32], out: &mut Vec<LatticePoint>) {
        if at + 1 == self.m {
            coords[at] = left;
            out.push(LatticePoint::new(coords.iter().copied()));
            return;
        }
        for a in (0..=left).rev() {
            coords[at] = a;
            self.fill(at + 1, left - a, coords, out);
        }
    }

    /// Uniform point, by stars and bars: `m-1` distinct bar slots among `p+m-1`.
    pub fn random_point(&self, rng: &mut RandomSource) -> LatticePoint {
        let slots = self.p + self.m as u64 - 1;
        let mut bars: Vec<u64> = Vec::with_capacity(self.m - 1);
        // Floyd's sampling of a uniform (m-1)-subset.
        for j in slots - (self.m as u64 - 1)..slots {
            let t = rng.below(j + 1);
            if bars.contains(&t) {
                bars.push(j);
            } else {
                bars.push(t);
            }
        }
        bars.sort_unstable();
        let mut coords = Vec::with_capacity(self.m);
        let mut prev: i64 = -1;
        for &b in &bars {
            coords.push((b as i64 - prev - 1) as u32);
            prev = b as i64;
        }
        coords.push((slots as i64 - prev - 1) as u32);
        LatticePoint::new(coords)
    }
}

/// Explicit lattice listing; fails above `cap` points.
pub fn generate_reference_points(m: usize, p: u64, cap: u128) -> Result<Vec<LatticePoint>> {
    ReferenceLattice::new(m, p)?.points(cap)
}

/// Smallest `p` with `p >= 2 m^{3/2} f_max`, i.e. `p^2 >= 4 m^3 f_max^2`.
pub fn protective_divisions(spec: &ProblemSpec) -> u64 {
    let m = spec.m() as u128;
    let f = f_max(spec) as u128;
    let target = 4 * m * m * m * f * f;
    let mut p = ((target as f64).sqrt() as u128).saturating_sub(2);
    while p * p < target {
        p += 1;
    }
    p as u64
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn units(points: &[LatticePoint], p: u64) -> Vec<Vec<f64>> {
        points.iter().map(|x| x.to_unit(p)).collect()
    }

    #[test]
    fn small_lattices() {
        let pts = generate_reference_points(2, 2, ENUMERATION_CAP).unwrap();
        assert_eq!(units(&pts, 2), vec![vec![1.0, 0.0], vec![0.5, 0.5], vec![0.0, 1.0]]);
        let pts = generate_reference_points(3, 1, ENUMERATION_CAP).unwrap();
        assert_eq!(pts.len(), 3);
        assert!(pts.iter().all(|x| x.coords().iter().filter(|&&a| a == 1).count() == 1));
        assert_eq!(generate_reference_points(3, 2, ENUMERATION_CAP).unwrap().len(), 6);
    }

    #[test]
    fn counts_match_binomial() {
        for m in 1..=5usize {
            for p in 1..=12u64 {
                let lattice = ReferenceLattice::new(m, p).unwrap();
                let pts = lattice.points(ENUMERATION_CAP).unwrap();
                assert_eq!(pts.len() as u128, lattice.size().unwrap());
                let distinct: HashSet<_> = pts.iter().cloned().collect();
                assert_eq!(distinct.len(), pts.len());
                assert!(pts.iter().all(|x| lattice.contains(x)));
            }
        }
    }

    #[test]
    fn cap_is_enforced() {
        let lattice = ReferenceLattice::new(4, 576).unwrap();
        assert_eq!(lattice.size().unwrap(), binomial(579, 3).unwrap());
        assert!(lattice.size().unwrap() > 30_000_000);
        assert!(matches!(lattice.points(ENUMERATION_CAP), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn protective_divisions_values() {
        // 2 * 2^{3/2} * 28 = 158.39..
        assert_eq!(protective_divisions(&ProblemSpec::rrmo(20, 2).unwrap()), 159);
        assert_eq!(protective_divisions(&ProblemSpec::rrmo(35, 2).unwrap()), 278);
        assert_eq!(protective_divisions(&ProblemSpec::rrmo(40, 4).unwrap()), 576);
        assert_eq!(protective_divisions(&ProblemSpec::rrmo_uni(64, 2).unwrap()), 3440);
    }

    #[test]
    fn random_point_is_uniform() {
        let lattice = ReferenceLattice::new(3, 3).unwrap();
        let mut rng = RandomSource::new(11);
        let mut counts = std::collections::HashMap::new();
        for _ in 0..20_000 {
            let x = lattice.random_point(&mut rng);
            assert!(lattice.contains(&x));
            *counts.entry(x).or_insert(0u32) += 1;
        }
        assert_eq!(counts.len(), 10);
        assert!(counts.values().all(|&c| (1700..2300).contains(&c)), "{counts:?}");
    }
}
