//! The two royal-road benchmark families, their region classifiers and
//! constructive Pareto sets.

mod rrmo;
mod spec;
mod uni;

use std::fmt;

pub use rrmo::{classify_rrmo, evaluate_rrmo, RrmoRegion};
pub use spec::{Family, ProblemSpec};
pub use uni::{classify_uni, evaluate_uni, SpecialCase, UniRegion};

pub(crate) use uni::{HalfStats, Layout as UniLayout};

use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::fitness::FitnessVector;

/// Fitness regions shared by both families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Region {
    L,
    M,
    N,
    Zero,
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Region::L => "L",
            Region::M => "M",
            Region::N => "N",
            Region::Zero => "Zero",
        })
    }
}

/// Evaluates `x` under either family.
pub fn evaluate(x: &BitString, spec: &ProblemSpec) -> Result<FitnessVector> {
    match spec.family() {
        Family::Rrmo => evaluate_rrmo(x, spec),
        Family::RrmoUni => evaluate_uni(x, spec),
    }
}

/// Region of `x` under either family.
pub fn classify(x: &BitString, spec: &ProblemSpec) -> Result<Region> {
    match spec.family() {
        Family::Rrmo => classify_rrmo(x, spec).map(|r| r.region),
        Family::RrmoUni => classify_uni(x, spec).map(|r| r.region),
    }
}

/// Evaluation without the family/length checks, for the search loops that
/// validated their spec once up front.
pub(crate) fn evaluate_unchecked(x: &BitString, spec: &ProblemSpec) -> FitnessVector {
    debug_assert_eq!(x.len(), spec.n());
    match spec.family() {
        Family::Rrmo => rrmo::evaluate_unchecked(x, spec),
        Family::RrmoUni => uni::evaluate_unchecked(x, spec),
    }
}

/// Largest value any single objective can take.
pub fn f_max(spec: &ProblemSpec) -> u64 {
    let (n, m) = (spec.n() as u64, spec.m() as u64);
    match spec.family() {
        // 2n/5 + 2n/m
        Family::Rrmo => 2 * n / 5 + 2 * n / m,
        // 7n/2 + 12n/m
        Family::RrmoUni => 7 * n / 2 + 12 * n / m,
    }
}

fn checked_pow(base: u64, exp: usize, what: &'static str) -> Result<u64> {
    let exp = u32::try_from(exp).map_err(|_| Error::Overflow(what))?;
    base.checked_pow(exp).ok_or(Error::Overflow(what))
}

/// Upper bound on any set of mutually incomparable solutions, which is also
/// the smallest population size the NSGA-III guarantees ask for.
pub fn antichain_bound(spec: &ProblemSpec) -> Result<u64> {
    let (n, m) = (spec.n() as u64, spec.m() as u64);
    match spec.family() {
        Family::Rrmo => checked_pow(4 * n / (5 * m) + 1, spec.m() - 1, "antichain bound"),
        Family::RrmoUni => checked_pow(2 * n / m, spec.m() - 1, "antichain bound"),
    }
}

/// Number of Pareto-optimal strings: `(2n/(5m)+1)^{m/2}` resp. `(2n/m)^{m/2}`.
pub fn pareto_set_size(spec: &ProblemSpec) -> Result<u64> {
    let (n, m) = (spec.n() as u64, spec.m() as u64);
    let per_block = match spec.family() {
        Family::Rrmo => 2 * n / (5 * m) + 1,
        Family::RrmoUni => 2 * n / m,
    };
    checked_pow(per_block, spec.blocks(), "pareto set size")
}

/// Default cap on constructive Pareto-set enumeration.
pub const PARETO_ENUMERATION_CAP: u64 = 1 << 22;

/// Every Pareto-optimal string, built block by block.
pub fn pareto_set(spec: &ProblemSpec) -> Result<Vec<BitString>> {
    pareto_set_capped(spec, PARETO_ENUMERATION_CAP)
}

pub fn pareto_set_capped(spec: &ProblemSpec, cap: u64) -> Result<Vec<BitString>> {
    let size = pareto_set_size(spec)?;
    if size > cap {
        return Err(Error::TooLarge {
            what: "pareto set",
            size: size as u128,
            cap: cap as u128,
        });
    }
    let choices: Vec<BitString> = match spec.family() {
        Family::Rrmo => rrmo::a_blocks(spec),
        Family::RrmoUni => {
            let half = spec.n() / spec.m();
            let ones = BitString::ones(half);
            uni::c_halves(half)
                .iter()
                .map(|c| BitString::concat(&[&ones, c]))
                .collect()
        }
    };
    // Mixed-radix counter over independent per-block choices.
    let blocks = spec.blocks();
    let mut digits = vec![0usize; blocks];
    let mut out = Vec::with_capacity(size as usize);
    loop {
        let parts: Vec<&BitString> = digits.iter().map(|&d| &choices[d]).collect();
        out.push(BitString::concat(&parts));
        let mut pos = blocks;
        loop {
            if pos == 0 {
                debug_assert_eq!(out.len() as u64, size);
                return Ok(out);
            }
            pos -= 1;
            digits[pos] += 1;
            if digits[pos] < choices.len() {
                break;
            }
            digits[pos] = 0;
        }
    }
}

/// Distinct fitness vectors of the Pareto set.
pub fn pareto_front(spec: &ProblemSpec) -> Result<Vec<FitnessVector>> {
    let mut front: Vec<FitnessVector> = pareto_set(spec)?
        .iter()
        .map(|x| evaluate_unchecked(x, spec))
        .collect();
    front.sort();
    front.dedup();
    Ok(front)
}

/// Membership in the Pareto set in O(n), without enumeration.
pub fn is_pareto_optimal(x: &BitString, spec: &ProblemSpec) -> bool {
    if x.len() != spec.n() {
        return false;
    }
    match spec.family() {
        Family::Rrmo => rrmo::is_pareto_optimal(x, spec),
        Family::RrmoUni => uni::is_pareto_optimal(x, spec),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rrmo(n: usize, m: usize) -> ProblemSpec {
        ProblemSpec::rrmo(n, m).unwrap()
    }

    fn uni(n: usize, m: usize) -> ProblemSpec {
        ProblemSpec::rrmo_uni(n, m).unwrap()
    }

    #[test]
    fn f_max_values() {
        assert_eq!(f_max(&rrmo(10, 2)), 14);
        assert_eq!(f_max(&uni(16, 2)), 152);
        assert_eq!(f_max(&rrmo(40, 4)), 36);
    }

    #[test]
    fn antichain_bounds() {
        assert_eq!(antichain_bound(&rrmo(10, 2)).unwrap(), 5);
        assert_eq!(antichain_bound(&uni(16, 2)).unwrap(), 16);
        assert_eq!(antichain_bound(&rrmo(40, 4)).unwrap(), 729);
        let huge = ProblemSpec::rrmo(5000, 100).unwrap();
        assert!(matches!(antichain_bound(&huge), Err(Error::Overflow(_))));
    }

    #[test]
    fn pareto_sets() {
        let p = pareto_set(&rrmo(10, 2)).unwrap();
        let rendered: Vec<String> = p.iter().map(|x| x.to_string()).collect();
        assert_eq!(rendered, ["1111111100", "0111111110", "0011111111"]);
        let u = pareto_set(&uni(16, 2)).unwrap();
        assert_eq!(u.len(), 16);
        assert!(u.iter().all(|x| x.to_string().starts_with("11111111")));
        assert_eq!(pareto_set(&rrmo(20, 4)).unwrap().len(), 9);
        for spec in [rrmo(10, 2), rrmo(20, 4), uni(16, 2), uni(32, 4)] {
            let set = pareto_set(&spec).unwrap();
            assert_eq!(set.len() as u64, pareto_set_size(&spec).unwrap());
            let mut dedup = set.clone();
            dedup.sort();
            dedup.dedup();
            assert_eq!(dedup.len(), set.len());
            assert!(set.iter().all(|x| is_pareto_optimal(x, &spec)));
            assert_eq!(pareto_front(&spec).unwrap().len(), set.len());
        }
    }

    #[test]
    fn pareto_membership() {
        let s = rrmo(10, 2);
        assert!(is_pareto_optimal(&"0011111111".parse().unwrap(), &s));
        assert!(!is_pareto_optimal(&"1111110000".parse().unwrap(), &s));
        let u = uni(16, 2);
        assert!(!is_pareto_optimal(&"1111111101100110".parse().unwrap(), &u));
        assert!(is_pareto_optimal(&"1111111100011111".parse().unwrap(), &u));
    }

    #[test]
    fn pareto_cap() {
        let s = ProblemSpec::rrmo_uni(512, 8).unwrap();
        assert!(matches!(pareto_set(&s), Err(Error::TooLarge { .. })));
    }

    /// Exhaustive small-instance properties: exclusivity is structural
    /// (one region returned), zero fitness iff region Zero, values <= f_max.
    #[test]
    fn exhaustive_small_instances() {
        for spec in [rrmo(10, 2), uni(16, 2)] {
            let fmax = f_max(&spec);
            for v in 0..(1u64 << spec.n()) {
                let x = BitString::from_u64(v, spec.n());
                let f = evaluate(&x, &spec).unwrap();
                let region = classify(&x, &spec).unwrap();
                assert!(f.values().iter().all(|&c| c <= fmax), "{x} {f:?}");
                // 0^n of rrmo lies in L with a zero vector.
                if spec.family() == Family::Rrmo && x.count_ones() == 0 {
                    assert_eq!(region, Region::L);
                    continue;
                }
                assert_eq!(f.is_zero(), region == Region::Zero, "{x} {region} {f:?}");
            }
        }
    }

    /// For region N of rrmo, recompute `4n|K|/(5m) + h_k` from the raw runs.
    #[test]
    fn rrmo_n_region_recomputed_from_runs() {
        let spec = rrmo(20, 4);
        let block = spec.block_len();
        for v in 0..(1u64 << 20) {
            let x = BitString::from_u64(v, 20);
            let r = classify_rrmo(&x, &spec).unwrap();
            if r.region != Region::N {
                continue;
            }
            let f = evaluate(&x, &spec).unwrap();
            for k in 1..=4usize {
                let j = k.div_ceil(2);
                let b = x.slice((j - 1) * block..j * block);
                let runs = crate::bits::prefix_suffix_runs(&b);
                let run = if k % 2 == 1 { runs.leading_zeros } else { runs.trailing_zeros };
                let h = (b.count_ones() + run) as u64;
                assert_eq!(f[k - 1], (4 * 20 * r.k_set.len() / 20) as u64 + h);
            }
        }
    }

    /// On the uni Pareto set every block's pair of g values sums to 2n/m.
    #[test]
    fn uni_pareto_pairs_sum() {
        for spec in [uni(16, 2), uni(32, 4)] {
            let layout = UniLayout::of(&spec);
            for x in pareto_set(&spec).unwrap() {
                for j in 1..=spec.blocks() {
                    let (g1, g2) = uni::g_pair(&HalfStats::of(&x, layout.right(j)), layout.half());
                    assert_eq!(g1 + g2, (2 * spec.n() / spec.m()) as u64);
                }
            }
        }
    }
}
