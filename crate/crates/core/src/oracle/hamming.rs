//! Exact minimum Hamming distance between two sets of fixed-length strings,
//! by multi-source breadth-first search on the hypercube.

use std::collections::VecDeque;

use crate::benchmarks::{HalfStats, ProblemSpec, UniLayout};
use crate::bits::BitString;
use crate::error::{Error, Result};

/// Largest length accepted by [`min_hamming`].
pub const MAX_HAMMING_BITS: usize = 24;

pub fn min_hamming(
    set_a: impl Fn(&BitString) -> bool,
    set_b: impl Fn(&BitString) -> bool,
    len: usize,
) -> Result<usize> {
    if len == 0 || len > MAX_HAMMING_BITS {
        return Err(Error::TooLarge {
            what: "hypercube for hamming search",
            size: 1u128 << len.min(127),
            cap: 1u128 << MAX_HAMMING_BITS,
        });
    }
    let total = 1usize << len;
    let mut in_b = vec![false; total];
    let mut dist = vec![u8::MAX; total];
    let mut queue = VecDeque::new();
    let mut any_b = false;
    for code in 0..total {
        let x = BitString::from_u64(code as u64, len);
        if set_b(&x) {
            in_b[code] = true;
            any_b = true;
        }
        if set_a(&x) {
            dist[code] = 0;
            queue.push_back(code);
        }
    }
    if queue.is_empty() || !any_b {
        return Err(Error::Empty("set for hamming search"));
    }
    while let Some(code) = queue.pop_front() {
        if in_b[code] {
            return Ok(dist[code] as usize);
        }
        for bit in 0..len {
            let next = code ^ (1 << bit);
            if dist[next] == u8::MAX {
                dist[next] = dist[code] + 1;
                queue.push_back(next);
            }
        }
    }
    unreachable!("the hypercube is connected")
}

/// Membership tests for the four half-string sets at half length `len`.
#[derive(Debug, Clone, Copy)]
pub struct HalfSets {
    layout: UniLayout,
    len: usize,
}

impl HalfSets {
    /// `len` must be a positive multiple of 8.
    pub fn new(len: usize) -> Result<Self> {
        let spec = ProblemSpec::rrmo_uni(2 * len, 2)?;
        Ok(HalfSets {
            layout: UniLayout::of(&spec),
            len,
        })
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn u(&self, x: &BitString) -> bool {
        self.layout.in_u(x, 0..self.len)
    }

    pub fn p(&self, x: &BitString) -> bool {
        self.layout.in_p(&HalfStats::of(x, 0..self.len))
    }

    pub fn c(&self, x: &BitString) -> bool {
        self.layout.in_c(&HalfStats::of(x, 0..self.len))
    }

    pub fn t(&self, x: &BitString) -> bool {
        self.layout.in_t(x, 0..self.len)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Quadratic pairwise minimum for cross-checking.
    fn pairwise(a: impl Fn(&BitString) -> bool, b: impl Fn(&BitString) -> bool, len: usize) -> usize {
        let all: Vec<BitString> = (0..1u64 << len).map(|c| BitString::from_u64(c, len)).collect();
        let xs: Vec<&BitString> = all.iter().filter(|x| a(x)).collect();
        let ys: Vec<&BitString> = all.iter().filter(|y| b(y)).collect();
        xs.iter()
            .flat_map(|x| ys.iter().map(move |y| x.hamming(y).unwrap()))
            .min()
            .unwrap()
    }

    #[test]
    fn separation_at_length_eight() {
        let s = HalfSets::new(8).unwrap();
        let up = min_hamming(|x| s.u(x), |x| s.p(x), 8).unwrap();
        let ct = min_hamming(|x| s.c(x), |x| s.t(x), 8).unwrap();
        assert_eq!((up, ct), (3, 3));
        assert_eq!(up, pairwise(|x| s.u(x), |x| s.p(x), 8));
        assert_eq!(ct, pairwise(|x| s.c(x), |x| s.t(x), 8));
    }

    #[test]
    fn separation_bounds_at_length_sixteen() {
        let s = HalfSets::new(16).unwrap();
        // Bounds: len/4 and 3·len/8.
        assert!(min_hamming(|x| s.u(x), |x| s.p(x), 16).unwrap() >= 4);
        assert!(min_hamming(|x| s.c(x), |x| s.t(x), 16).unwrap() >= 6);
    }

    #[test]
    fn identical_sets_and_errors() {
        let s = HalfSets::new(8).unwrap();
        assert_eq!(min_hamming(|x| s.c(x), |x| s.c(x), 8).unwrap(), 0);
        assert!(min_hamming(|_| false, |x| s.c(x), 8).is_err());
        assert!(min_hamming(|_| true, |_| true, 30).is_err());
    }
}
