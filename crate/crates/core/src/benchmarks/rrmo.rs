//! Royal road for one-point crossover.
//!
//! The string splits into `m/2` blocks of length `2n/m`. Block sets:
//! `B` holds blocks with `6n/(5m)` ones packed in one run (`LZ + TZ = 4n/(5m)`),
//! `A` holds blocks with `8n/(5m)` ones packed in one run (`LZ + TZ = 2n/(5m)`).

use smallvec::SmallVec;

use super::spec::{Family, ProblemSpec};
use super::Region;
use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::fitness::FitnessVector;

/// Integer thresholds, all exact by the divisibility of `n` by `5m/2`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Thresholds {
    /// `2n/(5m)`
    pub unit: usize,
}

impl Thresholds {
    pub fn of(spec: &ProblemSpec) -> Self {
        debug_assert_eq!((2 * spec.n()) % (5 * spec.m()), 0);
        Thresholds {
            unit: 2 * spec.n() / (5 * spec.m()),
        }
    }

    /// Ones in a `B` block, `6n/(5m)`.
    pub fn ones_b(&self) -> usize {
        3 * self.unit
    }

    /// Ones in an `A` block, `8n/(5m)`.
    pub fn ones_a(&self) -> usize {
        4 * self.unit
    }

    /// `LZ + TZ` of a `B` block, `4n/(5m)`.
    pub fn gap_b(&self) -> usize {
        2 * self.unit
    }

    /// `LZ + TZ` of an `A` block, `2n/(5m)`.
    pub fn gap_a(&self) -> usize {
        self.unit
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct BlockStats {
    pub ones: usize,
    pub lz: usize,
    pub tz: usize,
}

impl BlockStats {
    fn of(x: &BitString, spec: &ProblemSpec, j: usize) -> Self {
        let range = spec.block_range(j);
        BlockStats {
            ones: x.count_ones_in(range.clone()),
            lz: x.leading_run_in(range.clone(), false),
            tz: x.trailing_run_in(range, false),
        }
    }

    pub fn in_a(&self, t: &Thresholds) -> bool {
        self.ones == t.ones_a() && self.lz + self.tz == t.gap_a()
    }

    pub fn in_b(&self, t: &Thresholds) -> bool {
        self.ones == t.ones_b() && self.lz + self.tz == t.gap_b()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RrmoRegion {
    pub region: Region,
    /// Blocks lying in `A` (1-based); filled only for region `N`.
    pub k_set: Vec<usize>,
}

pub(crate) fn check(x: &BitString, spec: &ProblemSpec) -> Result<()> {
    if spec.family() != Family::Rrmo {
        return Err(Error::WrongFamily {
            expected: Family::Rrmo.name(),
            actual: spec.family().name(),
        });
    }
    if x.len() != spec.n() {
        return Err(Error::LengthMismatch {
            expected: spec.n(),
            actual: x.len(),
        });
    }
    Ok(())
}

type Stats = SmallVec<[BlockStats; 4]>;

fn stats(x: &BitString, spec: &ProblemSpec) -> Stats {
    (1..=spec.blocks()).map(|j| BlockStats::of(x, spec, j)).collect()
}

fn region_of(stats: &[BlockStats], t: &Thresholds) -> Region {
    let six = t.ones_b();
    if stats.iter().all(|s| s.ones <= six) && stats.iter().any(|s| s.ones < six) {
        Region::L
    } else if stats.iter().all(|s| s.ones == six) && stats.iter().any(|s| !s.in_b(t)) {
        Region::M
    } else if stats.iter().all(|s| s.in_a(t) || s.in_b(t)) {
        Region::N
    } else {
        Region::Zero
    }
}

pub fn classify_rrmo(x: &BitString, spec: &ProblemSpec) -> Result<RrmoRegion> {
    check(x, spec)?;
    let t = Thresholds::of(spec);
    let stats = stats(x, spec);
    let region = region_of(&stats, &t);
    let k_set = if region == Region::N {
        (1..=spec.blocks()).filter(|&j| stats[j - 1].in_a(&t)).collect()
    } else {
        Vec::new()
    };
    Ok(RrmoRegion { region, k_set })
}

pub fn evaluate_rrmo(x: &BitString, spec: &ProblemSpec) -> Result<FitnessVector> {
    check(x, spec)?;
    Ok(evaluate_unchecked(x, spec))
}

pub(crate) fn evaluate_unchecked(x: &BitString, spec: &ProblemSpec) -> FitnessVector {
    let t = Thresholds::of(spec);
    let stats = stats(x, spec);
    let region = region_of(&stats, &t);
    let m = spec.m();
    // g_k and h_k for objective k use block ceil(k/2); odd k reads LZ, even k reads TZ.
    let base = |k: usize, with_runs: bool| -> u64 {
        let s = &stats[(k - 1) / 2];
        let run = if !with_runs {
            0
        } else if k % 2 == 1 {
            s.lz
        } else {
            s.tz
        };
        (s.ones + run) as u64
    };
    match region {
        Region::L => FitnessVector::new((1..=m).map(|k| base(k, false))),
        Region::M => FitnessVector::new((1..=m).map(|k| base(k, true))),
        Region::N => {
            let k_count = stats.iter().filter(|s| s.in_a(&t)).count();
            let scaled = 4 * spec.n() * k_count;
            assert_eq!(scaled % (5 * m), 0, "4n|K|/(5m) must be integral");
            let bonus = (scaled / (5 * m)) as u64;
            FitnessVector::new((1..=m).map(|k| bonus + base(k, true)))
        }
        Region::Zero => FitnessVector::zeros(m),
    }
}

/// Pareto optimality: every block lies in `A`.
pub(crate) fn is_pareto_optimal(x: &BitString, spec: &ProblemSpec) -> bool {
    let t = Thresholds::of(spec);
    (1..=spec.blocks()).all(|j| BlockStats::of(x, spec, j).in_a(&t))
}

/// The `A` blocks, `0^a 1^{8n/(5m)} 0^{2n/(5m)-a}` for `a = 0..=2n/(5m)`.
pub(crate) fn a_blocks(spec: &ProblemSpec) -> Vec<BitString> {
    let t = Thresholds::of(spec);
    (0..=t.gap_a())
        .map(|a| {
            let mut b = BitString::zeros(spec.block_len());
            for i in a + 1..=a + t.ones_a() {
                b.set(i, true);
            }
            b
        })
        .collect()
}
