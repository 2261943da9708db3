//! Royal road for uniform crossover.
//!
//! Every block of length `2n/m` splits into a left half `x_l` and a right half
//! `x_r` of length `n/m`, each made of four sub-blocks of length `n/(4m)`.
//! Half-string sets:
//! - `U`: left halves whose sub-blocks each hold between `n/(12m)` and `n/(6m)` ones,
//! - `P`: left halves with `LO + TZ = n/m` (a run of ones followed by zeros),
//! - `C`: right halves with `LO + TZ = n/m` or `LZ + TO = n/m`,
//! - `T`: right halves whose sub-blocks are each balanced.
//!
//! All rational bounds are compared by cross-multiplication.

use std::ops::Range;

use smallvec::SmallVec;

use super::spec::{Family, ProblemSpec};
use super::Region;
use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::fitness::FitnessVector;

/// Which of the two exceptional block shapes allowed in region `N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpecialCase {
    /// `x_l ∈ P \ {1^{n/m}}` and `x_r ∈ T`.
    RunAndBalanced,
    /// `x_l = 1^{n/m}` and `x_r ∉ C`.
    OnesOutsideC,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniRegion {
    pub region: Region,
    /// Blocks with `x_l = 1^{n/m}` and `x_r ∈ C` (1-based); filled for region `N`.
    pub u_set: Vec<usize>,
    /// The exceptional block of region `N`, if any.
    pub special_block: Option<(usize, SpecialCase)>,
}

pub(crate) fn check(x: &BitString, spec: &ProblemSpec) -> Result<()> {
    if spec.family() != Family::RrmoUni {
        return Err(Error::WrongFamily {
            expected: Family::RrmoUni.name(),
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

/// Shape of one half-string.
#[derive(Debug, Clone, Copy)]
pub(crate) struct HalfStats {
    pub ones: usize,
    pub lo: usize,
    pub lz: usize,
    pub to: usize,
    pub tz: usize,
}

impl HalfStats {
    pub fn of(x: &BitString, range: Range<usize>) -> Self {
        let r = x.runs_in(range.clone());
        HalfStats {
            ones: x.count_ones_in(range),
            lo: r.leading_ones,
            lz: r.leading_zeros,
            to: r.trailing_ones,
            tz: r.trailing_zeros,
        }
    }
}

/// Geometry and set membership tests for one spec.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Layout {
    n: usize,
    m: usize,
    half: usize,
    sub: usize,
}

impl Layout {
    pub fn of(spec: &ProblemSpec) -> Self {
        Layout {
            n: spec.n(),
            m: spec.m(),
            half: spec.n() / spec.m(),
            sub: spec.n() / (4 * spec.m()),
        }
    }

    #[cfg(test)]
    pub fn half(&self) -> usize {
        self.half
    }

    pub fn left(&self, j: usize) -> Range<usize> {
        let start = (j - 1) * 2 * self.half;
        start..start + self.half
    }

    pub fn right(&self, j: usize) -> Range<usize> {
        let start = (j - 1) * 2 * self.half + self.half;
        start..start + self.half
    }

    fn sub_blocks(&self, half: Range<usize>) -> impl Iterator<Item = Range<usize>> + '_ {
        (0..4).map(move |i| half.start + i * self.sub..half.start + (i + 1) * self.sub)
    }

    /// `n/(12m) <= ones <= n/(6m)` for every sub-block.
    pub fn in_u(&self, x: &BitString, half: Range<usize>) -> bool {
        self.sub_blocks(half).all(|r| {
            let ones = x.count_ones_in(r);
            12 * self.m * ones >= self.n && 6 * self.m * ones <= self.n
        })
    }

    pub fn in_p(&self, s: &HalfStats) -> bool {
        s.lo + s.tz == self.half
    }

    pub fn in_c(&self, s: &HalfStats) -> bool {
        s.lo + s.tz == self.half || s.lz + s.to == self.half
    }

    pub fn in_t(&self, x: &BitString, half: Range<usize>) -> bool {
        self.sub_blocks(half).all(|r| 2 * x.count_ones_in(r) == self.sub)
    }

    /// `ones(x_l) <= 4n/(6m)`.
    pub fn left_small(&self, s: &HalfStats) -> bool {
        6 * self.m * s.ones <= 4 * self.n
    }
}

#[derive(Debug, Clone, Copy)]
struct Block {
    left: HalfStats,
    right: HalfStats,
    right_in_c: bool,
}

impl Block {
    fn left_zero(&self) -> bool {
        self.left.ones == 0
    }

    fn left_full(&self, layout: &Layout) -> bool {
        self.left.ones == layout.half
    }
}

struct Analysis {
    region: Region,
    blocks: SmallVec<[Block; 4]>,
    u_set: SmallVec<[usize; 4]>,
    special: Option<(usize, SpecialCase)>,
}

fn analyse(x: &BitString, spec: &ProblemSpec) -> Analysis {
    let layout = Layout::of(spec);
    let blocks: SmallVec<[Block; 4]> = (1..=spec.blocks())
        .map(|j| {
            let right = HalfStats::of(x, layout.right(j));
            Block {
                left: HalfStats::of(x, layout.left(j)),
                right,
                right_in_c: layout.in_c(&right),
            }
        })
        .collect();
    let u_set: SmallVec<[usize; 4]> = (1..=blocks.len())
        .filter(|&j| blocks[j - 1].left_full(&layout) && blocks[j - 1].right_in_c)
        .collect();

    let region_l = || {
        (1..=blocks.len()).all(|j| layout.in_u(x, layout.left(j)))
            && blocks.iter().any(|b| !b.right_in_c)
    };
    let region_m = || {
        blocks.iter().all(|b| layout.left_small(&b.left) && b.right_in_c)
            && blocks.iter().any(|b| !b.left_zero())
    };

    if region_l() {
        return Analysis {
            region: Region::L,
            blocks,
            u_set: SmallVec::new(),
            special: None,
        };
    }
    if region_m() {
        return Analysis {
            region: Region::M,
            blocks,
            u_set: SmallVec::new(),
            special: None,
        };
    }

    // Region N: at most one exceptional block, every other block outside U(x)
    // must be 0^{n/m} on the left with its right half in C.
    let mut special = None;
    let mut specials = 0;
    for (idx, b) in blocks.iter().enumerate() {
        let j = idx + 1;
        let case = if !b.left_full(&layout)
            && layout.in_p(&b.left)
            && layout.in_t(x, layout.right(j))
        {
            Some(SpecialCase::RunAndBalanced)
        } else if b.left_full(&layout) && !b.right_in_c {
            Some(SpecialCase::OnesOutsideC)
        } else {
            None
        };
        if let Some(case) = case {
            specials += 1;
            special = Some((j, case));
        }
    }
    let others_ok = specials <= 1
        && (1..=blocks.len()).all(|j| {
            let b = &blocks[j - 1];
            u_set.contains(&j)
                || special.is_some_and(|(i, _)| i == j)
                || (b.left_zero() && b.right_in_c)
        });
    if others_ok {
        Analysis {
            region: Region::N,
            blocks,
            u_set,
            special,
        }
    } else {
        Analysis {
            region: Region::Zero,
            blocks,
            u_set: SmallVec::new(),
            special: None,
        }
    }
}

pub fn classify_uni(x: &BitString, spec: &ProblemSpec) -> Result<UniRegion> {
    check(x, spec)?;
    let a = analyse(x, spec);
    Ok(UniRegion {
        region: a.region,
        u_set: a.u_set.to_vec(),
        special_block: a.special,
    })
}

pub fn evaluate_uni(x: &BitString, spec: &ProblemSpec) -> Result<FitnessVector> {
    check(x, spec)?;
    Ok(evaluate_unchecked(x, spec))
}

/// The `(g_k, g_{k+1})` pair read off a right half.
pub(crate) fn g_pair(right: &HalfStats, half: usize) -> (u64, u64) {
    if right.lo != 0 {
        (right.lo as u64, (half + right.tz) as u64)
    } else {
        ((half + right.lz) as u64, right.to as u64)
    }
}

pub(crate) fn evaluate_unchecked(x: &BitString, spec: &ProblemSpec) -> FitnessVector {
    let a = analyse(x, spec);
    let layout = Layout::of(spec);
    let unit = layout.half as u64; // n/m
    let mut values: SmallVec<[u64; 4]> = SmallVec::with_capacity(spec.m());
    if a.region == Region::Zero {
        return FitnessVector::zeros(spec.m());
    }
    let u_bonus = 7 * unit * a.u_set.len() as u64;
    for (idx, b) in a.blocks.iter().enumerate() {
        let j = idx + 1;
        let (g1, g2) = g_pair(&b.right, layout.half);
        let offset = match a.region {
            Region::L => 0,
            Region::M => 3 * unit - b.left.ones as u64,
            Region::N => {
                if b.left_full(&layout) {
                    u_bonus + 10 * unit
                } else if b.left_zero() && b.right_in_c {
                    u_bonus + 5 * unit
                } else {
                    debug_assert_eq!(a.special, Some((j, SpecialCase::RunAndBalanced)));
                    let zeros = (layout.half - b.left.ones) as u64;
                    u_bonus + 5 * unit + (3 * unit - zeros)
                }
            }
            Region::Zero => unreachable!(),
        };
        values.push(g1 + offset);
        values.push(g2 + offset);
    }
    FitnessVector::new(values)
}

pub(crate) fn is_pareto_optimal(x: &BitString, spec: &ProblemSpec) -> bool {
    let layout = Layout::of(spec);
    (1..=spec.blocks()).all(|j| {
        x.is_constant_in(layout.left(j), true) && layout.in_c(&HalfStats::of(x, layout.right(j)))
    })
}

/// All members of `C` at half length `len`: `1^a 0^{len-a}` and `0^a 1^{len-a}`,
/// which coincide only for `a = 0` and `a = len`.
pub(crate) fn c_halves(len: usize) -> Vec<BitString> {
    let mut out = Vec::with_capacity(2 * len);
    for a in 0..=len {
        let mut s = BitString::zeros(len);
        for i in 1..=a {
            s.set(i, true);
        }
        out.push(s);
    }
    for a in 1..len {
        let mut s = BitString::ones(len);
        for i in 1..=a {
            s.set(i, false);
        }
        out.push(s);
    }
    out
}
