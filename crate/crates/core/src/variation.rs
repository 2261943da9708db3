//! Standard bit mutation, one-point crossover and uniform crossover.
//!
//! Each operator has a deterministic form taking the explicit flip set, cut
//! point or selection mask; the randomized form draws that choice and
//! delegates to it. Parents are never modified.

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::rng::RandomSource;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CrossoverKind {
    #[serde(rename = "one-point")]
    OnePoint,
    #[serde(rename = "uniform")]
    Uniform,
}

impl CrossoverKind {
    pub fn name(self) -> &'static str {
        match self {
            CrossoverKind::OnePoint => "one-point",
            CrossoverKind::Uniform => "uniform",
        }
    }
}

impl std::str::FromStr for CrossoverKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "one-point" => Ok(CrossoverKind::OnePoint),
            "uniform" => Ok(CrossoverKind::Uniform),
            _ => Err(Error::Parse {
                input: s.into(),
                reason: "crossover must be `one-point` or `uniform`".into(),
            }),
        }
    }
}

/// Flips the given 1-based positions.
pub fn mutate_with_flips(x: &BitString, flips: &[usize]) -> BitString {
    let mut out = x.clone();
    for &i in flips {
        out.flip(i);
    }
    out
}

/// Standard bit mutation with rate `1/n`, sampled as a Binomial(n, 1/n) flip
/// count followed by that many distinct uniform positions. The distribution
/// equals independent per-bit flips while costing O(flips) draws.
#[derive(Debug, Clone)]
pub struct BitMutation {
    n: usize,
    /// `cdf[k] = P(at most k flips)`, truncated once the accumulated mass rounds to 1.
    cdf: Vec<f64>,
}

impl BitMutation {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "mutation needs n >= 1");
        if n == 1 {
            return BitMutation { n, cdf: vec![0.0, 1.0] };
        }
        let q = 1.0 - 1.0 / n as f64;
        // (1 - 1/n)^n by repeated multiplication: only basic IEEE operations,
        // so the table is identical on every platform.
        let mut p = 1.0f64;
        for _ in 0..n {
            p *= q;
        }
        let ratio = 1.0 / (n as f64 - 1.0);
        let mut cdf = Vec::new();
        let mut acc = 0.0;
        for k in 0..=n {
            acc += p;
            cdf.push(acc);
            if acc >= 1.0 {
                break;
            }
            p *= (n - k) as f64 / (k + 1) as f64 * ratio;
        }
        *cdf.last_mut().unwrap() = 1.0;
        BitMutation { n, cdf }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Draws the set of 1-based positions to flip.
    pub fn sample_flips(&self, rng: &mut RandomSource) -> SmallVec<[usize; 4]> {
        let u = rng.unit();
        let k = self.cdf.iter().position(|&c| u < c).unwrap_or(self.cdf.len() - 1);
        let mut flips: SmallVec<[usize; 4]> = SmallVec::with_capacity(k);
        while flips.len() < k {
            let pos = rng.index(self.n) + 1;
            if !flips.contains(&pos) {
                flips.push(pos);
            }
        }
        flips
    }

    pub fn mutate(&self, x: &BitString, rng: &mut RandomSource) -> BitString {
        debug_assert_eq!(x.len(), self.n);
        mutate_with_flips(x, &self.sample_flips(rng))
    }
}

pub fn standard_bit_mutation(x: &BitString, rng: &mut RandomSource) -> BitString {
    BitMutation::new(x.len()).mutate(x, rng)
}

/// Prefix `1..=cut` from `y1`, the rest from `y2`; `cut` ranges over `0..=n`.
pub fn one_point_crossover_at(y1: &BitString, y2: &BitString, cut: usize) -> Result<BitString> {
    y1.check_len(y2)?;
    if cut > y1.len() {
        return Err(Error::Precondition(format!(
            "cut point {cut} outside 0..={}",
            y1.len()
        )));
    }
    let words = y1
        .words()
        .iter()
        .zip(y2.words())
        .enumerate()
        .map(|(w, (&a, &b))| {
            let lo = w * 64;
            let take = cut.saturating_sub(lo).min(64);
            let mask = if take == 64 { u64::MAX } else { (1u64 << take) - 1 };
            (a & mask) | (b & !mask)
        })
        .collect();
    Ok(BitString::from_words(y1.len(), words))
}

pub fn one_point_crossover(
    y1: &BitString,
    y2: &BitString,
    rng: &mut RandomSource,
) -> Result<BitString> {
    y1.check_len(y2)?;
    let cut = rng.index(y1.len() + 1);
    one_point_crossover_at(y1, y2, cut)
}

/// Position `i` comes from `y1` where `mask` has a one, else from `y2`.
pub fn uniform_crossover_with_mask(
    y1: &BitString,
    y2: &BitString,
    mask: &BitString,
) -> Result<BitString> {
    y1.check_len(y2)?;
    y1.check_len(mask)?;
    let words = y1
        .words()
        .iter()
        .zip(y2.words())
        .zip(mask.words())
        .map(|((&a, &b), &k)| (a & k) | (b & !k))
        .collect();
    Ok(BitString::from_words(y1.len(), words))
}

pub fn uniform_crossover(
    y1: &BitString,
    y2: &BitString,
    rng: &mut RandomSource,
) -> Result<BitString> {
    y1.check_len(y2)?;
    let words = (0..y1.words().len()).map(|_| rng.next_u64()).collect();
    let mask = BitString::from_words(y1.len(), words);
    uniform_crossover_with_mask(y1, y2, &mask)
}

pub fn crossover(
    kind: CrossoverKind,
    y1: &BitString,
    y2: &BitString,
    rng: &mut RandomSource,
) -> Result<BitString> {
    match kind {
        CrossoverKind::OnePoint => one_point_crossover(y1, y2, rng),
        CrossoverKind::Uniform => uniform_crossover(y1, y2, rng),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn bs(s: &str) -> BitString {
        s.parse().unwrap()
    }

    #[test]
    fn mutation_hook() {
        let x = BitString::zeros(10);
        assert_eq!(mutate_with_flips(&x, &[3, 7]).to_string(), "0010001000");
        assert_eq!(x, BitString::zeros(10));
    }

    #[test]
    fn single_bit_always_flips() {
        let mut rng = RandomSource::new(1);
        let x = bs("0");
        for _ in 0..100 {
            assert_eq!(standard_bit_mutation(&x, &mut rng).to_string(), "1");
        }
    }

    #[test]
    fn binomial_table_is_a_distribution() {
        for n in [2, 3, 10, 100, 1000] {
            let m = BitMutation::new(n);
            assert!(m.cdf.windows(2).all(|w| w[0] <= w[1]));
            assert_eq!(*m.cdf.last().unwrap(), 1.0);
            // P(no flip) = (1 - 1/n)^n
            let p0 = (1.0 - 1.0 / n as f64).powi(n as i32);
            assert!((m.cdf[0] - p0).abs() < 1e-12);
        }
    }

    #[test]
    fn one_point_examples() {
        let y1 = bs("1111100000");
        let y2 = bs("0000011111");
        assert_eq!(one_point_crossover_at(&y1, &y2, 5).unwrap().to_string(), "1111111111");
        assert_eq!(one_point_crossover_at(&y1, &y2, 0).unwrap(), y2);
        assert_eq!(one_point_crossover_at(&y1, &y2, 10).unwrap(), y1);
        assert!(one_point_crossover_at(&y1, &y2, 11).is_err());
        assert!(one_point_crossover_at(&y1, &bs("01"), 1).is_err());
    }

    #[test]
    fn one_point_across_words() {
        let y1 = BitString::ones(130);
        let y2 = BitString::zeros(130);
        for cut in [0, 1, 63, 64, 65, 128, 129, 130] {
            let z = one_point_crossover_at(&y1, &y2, cut).unwrap();
            assert_eq!(z.count_ones(), cut);
            assert_eq!(z.runs().leading_ones, cut);
        }
    }

    #[test]
    fn uniform_examples() {
        let mut rng = RandomSource::new(2);
        let x = bs("1011001110001");
        for _ in 0..50 {
            assert_eq!(uniform_crossover(&x, &x, &mut rng).unwrap(), x);
        }
        let y1 = bs("110010");
        let y2 = bs("001101");
        let all = BitString::ones(6);
        assert_eq!(uniform_crossover_with_mask(&y1, &y2, &all).unwrap(), y1);
        assert_eq!(
            uniform_crossover_with_mask(&y1, &y2, &BitString::zeros(6)).unwrap(),
            y2
        );
        assert!(uniform_crossover(&y1, &bs("1"), &mut rng).is_err());
    }

    fn bits(len: usize) -> impl Strategy<Value = BitString> {
        prop::collection::vec(any::<bool>(), len).prop_map(|v| BitString::from_bools(&v))
    }

    proptest! {
        #[test]
        fn one_point_is_prefix_then_suffix(y1 in bits(77), y2 in bits(77), seed in any::<u64>()) {
            let mut rng = RandomSource::new(seed);
            let z = one_point_crossover(&y1, &y2, &mut rng).unwrap();
            // Some cut k in 0..=n explains z.
            let ok = (0..=77).any(|k| {
                (1..=77).all(|i| z.get(i) == if i <= k { y1.get(i) } else { y2.get(i) })
            });
            prop_assert!(ok);
        }

        #[test]
        fn uniform_takes_each_bit_from_a_parent(y1 in bits(90), y2 in bits(90), seed in any::<u64>()) {
            let mut rng = RandomSource::new(seed);
            let z = uniform_crossover(&y1, &y2, &mut rng).unwrap();
            prop_assert!((1..=90).all(|i| z.get(i) == y1.get(i) || z.get(i) == y2.get(i)));
        }

        #[test]
        fn mutation_flips_are_distinct_and_in_range(n in 1usize..300, seed in any::<u64>()) {
            let m = BitMutation::new(n);
            let mut rng = RandomSource::new(seed);
            for _ in 0..20 {
                let flips = m.sample_flips(&mut rng);
                let mut sorted = flips.clone();
                sorted.sort();
                sorted.dedup();
                prop_assert_eq!(sorted.len(), flips.len());
                prop_assert!(flips.iter().all(|&i| i >= 1 && i <= n));
            }
        }
    }
}
