//! Packed bit vectors with rank/select support and a balanced-parenthesis
//! tree encoding.
//!
//! All addressing is 1-based: bit `i` is the `i`-th bit, `rank1(i)` counts
//! ones in `B[1..i]`, and `select1(l)` is the position of the `l`-th one.

mod parens;
mod rank_select;

pub use parens::ParenSequence;
pub use rank_select::RankSelect;

use std::fmt;
use std::str::FromStr;

pub(crate) const WORD_BITS: usize = 64;

#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct BitVector {
    words: Vec<u64>,
    len: usize,
}

impl BitVector {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_capacity(bits: usize) -> Self {
        BitVector {
            words: Vec::with_capacity(bits.div_ceil(WORD_BITS)),
            len: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn push(&mut self, bit: bool) {
        let offset = self.len % WORD_BITS;
        if offset == 0 {
            self.words.push(0);
        }
        if bit {
            *self.words.last_mut().unwrap() |= 1 << offset;
        }
        self.len += 1;
    }

    /// Appends `count` copies of `bit`.
    pub fn push_run(&mut self, bit: bool, count: usize) {
        for _ in 0..count {
            self.push(bit);
        }
    }

    /// Bit at 1-based position `i`.
    ///
    /// # Panics
    /// If `i` is 0 or greater than the length.
    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i >= 1 && i <= self.len, "bit {i} out of 1..={}", self.len);
        let b = i - 1;
        self.words[b / WORD_BITS] >> (b % WORD_BITS) & 1 == 1
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn count_zeros(&self) -> usize {
        self.len - self.count_ones()
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = bool> + '_ {
        (0..self.len).map(|b| self.words[b / WORD_BITS] >> (b % WORD_BITS) & 1 == 1)
    }

    /// Backing words; bits past `len` are zero.
    pub(crate) fn words(&self) -> &[u64] {
        &self.words
    }
}

impl FromIterator<bool> for BitVector {
    fn from_iter<I: IntoIterator<Item = bool>>(iter: I) -> Self {
        let mut bv = BitVector::new();
        for b in iter {
            bv.push(b);
        }
        bv
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseBitsError(char);

impl fmt::Display for ParseBitsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "unexpected character {:?} in bit string", self.0)
    }
}

impl std::error::Error for ParseBitsError {}

impl FromStr for BitVector {
    type Err = ParseBitsError;

    /// Parses a string of `0`s and `1`s, first character = bit 1.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(ParseBitsError(other)),
            })
            .collect()
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.iter() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector({self})")
    }
}

/// Encodes each value as that many `1`s followed by a `0`.
pub fn unary_encode<I>(values: I) -> BitVector
where
    I: IntoIterator<Item = usize>,
{
    let mut bv = BitVector::new();
    for v in values {
        bv.push_run(true, v);
        bv.push(false);
    }
    bv
}
