//! Fixed-length bit strings.
//!
//! Positions are 1-based and read left to right, so "leading" refers to the
//! lowest indices. Storage is word-packed: position `i` lives in word
//! `(i - 1) / 64` at bit `(i - 1) % 64`.

use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use smallvec::{smallvec, SmallVec};

use crate::error::{Error, Result};

const WORD: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitString {
    len: usize,
    words: SmallVec<[u64; 2]>,
}

/// Lengths of the maximal constant runs at both ends of a string.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Runs {
    pub leading_ones: usize,
    pub leading_zeros: usize,
    pub trailing_ones: usize,
    pub trailing_zeros: usize,
}

fn words_for(len: usize) -> usize {
    len.div_ceil(WORD)
}

/// Masked word pieces covering `range`, in left-to-right order. Each item is
/// `(word index, first bit offset, piece width)`.
fn pieces(range: Range<usize>) -> impl DoubleEndedIterator<Item = (usize, usize, usize)> {
    let first = range.start / WORD;
    let last = if range.is_empty() {
        first
    } else {
        (range.end - 1) / WORD + 1
    };
    (first..last).map(move |w| {
        let lo = range.start.max(w * WORD);
        let hi = range.end.min((w + 1) * WORD);
        (w, lo - w * WORD, hi - lo)
    })
}

fn low_mask(width: usize) -> u64 {
    if width >= WORD {
        u64::MAX
    } else {
        (1u64 << width) - 1
    }
}

impl BitString {
    pub fn zeros(len: usize) -> Self {
        BitString {
            len,
            words: smallvec![0; words_for(len)],
        }
    }

    pub fn ones(len: usize) -> Self {
        let mut s = BitString {
            len,
            words: smallvec![u64::MAX; words_for(len)],
        };
        s.clear_tail();
        s
    }

    /// Builds a string from booleans, index 0 of the slice being position 1.
    pub fn from_bools(bits: &[bool]) -> Self {
        let mut s = BitString::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                s.words[i / WORD] |= 1 << (i % WORD);
            }
        }
        s
    }

    /// Low `len` bits of `value`, with the most significant of them at position 1.
    pub fn from_u64(value: u64, len: usize) -> Self {
        assert!(len <= WORD, "from_u64 supports at most 64 bits");
        let mut s = BitString::zeros(len);
        for i in 0..len {
            if (value >> (len - 1 - i)) & 1 == 1 {
                s.words[i / WORD] |= 1 << (i % WORD);
            }
        }
        s
    }

    /// Builds a string from raw storage words; bits beyond `len` are cleared.
    pub fn from_words(len: usize, words: Vec<u64>) -> Self {
        assert_eq!(words.len(), words_for(len), "word count does not match length");
        let mut s = BitString {
            len,
            words: words.into(),
        };
        s.clear_tail();
        s
    }

    fn clear_tail(&mut self) {
        let rem = self.len % WORD;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= low_mask(rem);
            }
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// Bit at 1-based position `i`.
    pub fn get(&self, i: usize) -> bool {
        assert!(i >= 1 && i <= self.len, "position {i} out of 1..={}", self.len);
        let k = i - 1;
        (self.words[k / WORD] >> (k % WORD)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i >= 1 && i <= self.len, "position {i} out of 1..={}", self.len);
        let k = i - 1;
        if value {
            self.words[k / WORD] |= 1 << (k % WORD);
        } else {
            self.words[k / WORD] &= !(1 << (k % WORD));
        }
    }

    pub fn flip(&mut self, i: usize) {
        assert!(i >= 1 && i <= self.len, "position {i} out of 1..={}", self.len);
        let k = i - 1;
        self.words[k / WORD] ^= 1 << (k % WORD);
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |k| (self.words[k / WORD] >> (k % WORD)) & 1 == 1)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn count_zeros(&self) -> usize {
        self.len - self.count_ones()
    }

    pub fn runs(&self) -> Runs {
        self.runs_in(0..self.len)
    }

    pub fn hamming(&self, other: &BitString) -> Result<usize> {
        self.check_len(other)?;
        Ok(self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a ^ b).count_ones() as usize)
            .sum())
    }

    pub(crate) fn check_len(&self, other: &BitString) -> Result<()> {
        if self.len != other.len {
            return Err(Error::LengthMismatch {
                expected: self.len,
                actual: other.len,
            });
        }
        Ok(())
    }

    /// Ones within the 0-based half-open `range` of positions.
    pub fn count_ones_in(&self, range: Range<usize>) -> usize {
        debug_assert!(range.end <= self.len);
        pieces(range)
            .map(|(w, off, width)| ((self.words[w] >> off) & low_mask(width)).count_ones() as usize)
            .sum()
    }

    /// Length of the maximal prefix of `range` whose bits all equal `value`.
    pub fn leading_run_in(&self, range: Range<usize>, value: bool) -> usize {
        debug_assert!(range.end <= self.len);
        let mut run = 0;
        for (w, off, width) in pieces(range) {
            let mut bits = self.words[w] >> off;
            if !value {
                bits = !bits;
            }
            let n = (bits.trailing_ones() as usize).min(width);
            run += n;
            if n < width {
                break;
            }
        }
        run
    }

    /// Length of the maximal suffix of `range` whose bits all equal `value`.
    pub fn trailing_run_in(&self, range: Range<usize>, value: bool) -> usize {
        debug_assert!(range.end <= self.len);
        let mut run = 0;
        for (w, off, width) in pieces(range).rev() {
            let mut bits = (self.words[w] >> off) & low_mask(width);
            if !value {
                bits = !bits & low_mask(width);
            }
            // The piece's last position is its bit `width - 1`.
            let n = ((bits << (WORD - width)).leading_ones() as usize).min(width);
            run += n;
            if n < width {
                break;
            }
        }
        run
    }

    pub fn runs_in(&self, range: Range<usize>) -> Runs {
        Runs {
            leading_ones: self.leading_run_in(range.clone(), true),
            leading_zeros: self.leading_run_in(range.clone(), false),
            trailing_ones: self.trailing_run_in(range.clone(), true),
            trailing_zeros: self.trailing_run_in(range, false),
        }
    }

    /// Whether every bit of `range` equals `value`.
    pub fn is_constant_in(&self, range: Range<usize>, value: bool) -> bool {
        let width = range.len();
        self.leading_run_in(range, value) == width
    }

    /// Copy of the bits in the 0-based half-open `range`.
    pub fn slice(&self, range: Range<usize>) -> BitString {
        let mut out = BitString::zeros(range.len());
        for (k, pos) in range.enumerate() {
            if (self.words[pos / WORD] >> (pos % WORD)) & 1 == 1 {
                out.words[k / WORD] |= 1 << (k % WORD);
            }
        }
        out
    }

    /// Concatenation of several strings.
    pub fn concat(parts: &[&BitString]) -> BitString {
        let total = parts.iter().map(|p| p.len).sum();
        let mut out = BitString::zeros(total);
        let mut at = 0;
        for part in parts {
            for (k, b) in part.iter().enumerate() {
                if b {
                    let pos = at + k;
                    out.words[pos / WORD] |= 1 << (pos % WORD);
                }
            }
            at += part.len;
        }
        out
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.iter().map(|b| if b { '1' } else { '0' }).collect();
        f.write_str(&s)
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitString({self})")
    }
}

impl FromStr for BitString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::Parse {
                    input: s.to_string(),
                    reason: format!("unexpected character `{other}`"),
                }),
            })
            .collect::<Result<Vec<bool>>>()?;
        if bits.is_empty() {
            return Err(Error::Parse {
                input: s.to_string(),
                reason: "empty bit string".into(),
            });
        }
        Ok(BitString::from_bools(&bits))
    }
}

pub fn count_ones(x: &BitString) -> usize {
    x.count_ones()
}

pub fn count_zeros(x: &BitString) -> usize {
    x.count_zeros()
}

pub fn prefix_suffix_runs(x: &BitString) -> Runs {
    x.runs()
}

pub fn hamming(x: &BitString, y: &BitString) -> Result<usize> {
    x.hamming(y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn bs(s: &str) -> BitString {
        s.parse().unwrap()
    }

    /// Position-by-position scan, independent of the word-level code.
    fn naive_runs(bits: &[bool]) -> Runs {
        let lead = |v: bool| bits.iter().take_while(|&&b| b == v).count();
        let trail = |v: bool| bits.iter().rev().take_while(|&&b| b == v).count();
        Runs {
            leading_ones: lead(true),
            leading_zeros: lead(false),
            trailing_ones: trail(true),
            trailing_zeros: trail(false),
        }
    }

    #[test]
    fn counts() {
        assert_eq!(count_ones(&bs("0000000000")), 0);
        assert_eq!(count_ones(&bs("1111111111")), 10);
        assert_eq!(count_ones(&bs("00110110110000")), 6);
        assert_eq!(count_zeros(&bs("00110110110000")), 8);
    }

    #[test]
    fn runs_examples() {
        let r = prefix_suffix_runs(&bs("00110110110000"));
        assert_eq!((r.leading_zeros, r.trailing_zeros), (2, 4));
        let r = prefix_suffix_runs(&bs("1111100000"));
        assert_eq!(
            (r.leading_ones, r.trailing_zeros, r.leading_zeros, r.trailing_ones),
            (5, 5, 0, 0)
        );
        let r = prefix_suffix_runs(&bs("0101"));
        assert_eq!(
            (r.leading_ones, r.leading_zeros, r.trailing_ones, r.trailing_zeros),
            (0, 1, 1, 0)
        );
    }

    #[test]
    fn all_zero_runs_overlap() {
        let r = bs("0000000").runs();
        assert_eq!((r.leading_zeros, r.trailing_zeros), (7, 7));
        assert_eq!((r.leading_ones, r.trailing_ones), (0, 0));
    }

    #[test]
    fn hamming_examples() {
        assert_eq!(hamming(&bs("1010"), &bs("1010")).unwrap(), 0);
        assert_eq!(hamming(&bs("1111"), &bs("0000")).unwrap(), 4);
        assert_eq!(hamming(&bs("1100"), &bs("1010")).unwrap(), 2);
        assert!(matches!(
            hamming(&bs("1100"), &bs("10100")),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn render_roundtrip_and_positions() {
        let x = bs("0010001000");
        assert!(x.get(3) && x.get(7) && !x.get(1));
        assert_eq!(x.to_string(), "0010001000");
        assert_eq!(BitString::from_u64(0b101, 3).to_string(), "101");
        assert!("01x".parse::<BitString>().is_err());
    }

    #[test]
    fn ranges_across_word_boundary() {
        let mut x = BitString::zeros(150);
        for i in 60..=70 {
            x.set(i, true);
        }
        assert_eq!(x.count_ones_in(50..100), 11);
        assert_eq!(x.leading_run_in(59..80, true), 11);
        assert_eq!(x.trailing_run_in(0..70, true), 11);
        assert_eq!(x.trailing_run_in(0..69, true), 10);
        assert_eq!(x.leading_run_in(0..59, false), 59);
        assert_eq!(x.trailing_run_in(70..150, false), 80);
    }

    proptest! {
        #[test]
        fn ones_plus_zeros_is_length(bits in prop::collection::vec(any::<bool>(), 1..200)) {
            let x = BitString::from_bools(&bits);
            prop_assert_eq!(x.count_ones() + x.count_zeros(), bits.len());
        }

        #[test]
        fn runs_match_naive_scan(
            bits in prop::collection::vec(any::<bool>(), 1..200),
            a in 0usize..200, b in 0usize..200,
        ) {
            let x = BitString::from_bools(&bits);
            prop_assert_eq!(x.runs(), naive_runs(&bits));
            let (lo, hi) = (a.min(b) % bits.len(), a.max(b) % bits.len() + 1);
            let (lo, hi) = (lo.min(hi), lo.max(hi));
            prop_assert_eq!(x.runs_in(lo..hi), naive_runs(&bits[lo..hi]));
            prop_assert_eq!(
                x.count_ones_in(lo..hi),
                bits[lo..hi].iter().filter(|&&b| b).count()
            );
        }

        #[test]
        fn leading_ones_excludes_leading_zeros(bits in prop::collection::vec(any::<bool>(), 1..130)) {
            let r = BitString::from_bools(&bits).runs();
            prop_assert!(r.leading_ones == 0 || r.leading_zeros == 0);
            prop_assert!(r.leading_ones > 0 || r.leading_zeros > 0);
        }

        #[test]
        fn hamming_is_symmetric(
            a in prop::collection::vec(any::<bool>(), 70),
            b in prop::collection::vec(any::<bool>(), 70),
        ) {
            let (x, y) = (BitString::from_bools(&a), BitString::from_bools(&b));
            prop_assert_eq!(x.hamming(&y).unwrap(), y.hamming(&x).unwrap());
            prop_assert_eq!(x.hamming(&x).unwrap(), 0);
        }
    }
}
