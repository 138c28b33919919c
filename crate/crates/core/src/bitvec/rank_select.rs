use super::{BitVector, WORD_BITS};
use crate::error::{Error, Result};

/// Words per superblock.
const SUPER_WORDS: usize = 8;
const SUPER_BITS: usize = SUPER_WORDS * WORD_BITS;
/// Every `SELECT_SAMPLE`-th one (zero) records the superblock holding it.
const SELECT_SAMPLE: usize = 4096;

/// A bit vector with a two-level rank directory and sampled select hints.
///
/// Rank is constant time. Select narrows the superblock range with the
/// hints, binary searches inside it, and finishes with a word scan, so the
/// worst case is logarithmic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankSelect {
    bits: BitVector,
    /// Ones before each superblock; one extra trailing entry.
    supers: Vec<u64>,
    /// Ones from the start of the word's superblock to the word; one extra
    /// trailing entry.
    blocks: Vec<u16>,
    select1_hints: Vec<u32>,
    select0_hints: Vec<u32>,
    ones: usize,
}

impl RankSelect {
    pub fn new(bits: BitVector) -> Self {
        let words = bits.words();
        let n_words = words.len();
        let mut supers = Vec::with_capacity(n_words / SUPER_WORDS + 2);
        let mut blocks = Vec::with_capacity(n_words + 1);
        let mut total = 0u64;
        for w in 0..=n_words {
            if w % SUPER_WORDS == 0 {
                supers.push(total);
            }
            blocks.push((total - supers[w / SUPER_WORDS]) as u16);
            if w < n_words {
                total += words[w].count_ones() as u64;
            }
        }

        let ones = total as usize;
        let zeros = bits.len() - ones;
        let mut rs = RankSelect {
            bits,
            supers,
            blocks,
            select1_hints: Vec::new(),
            select0_hints: Vec::new(),
            ones,
        };
        rs.select1_hints = rs.sample_hints(ones, |s| rs.ones_before_super(s));
        rs.select0_hints = rs.sample_hints(zeros, |s| rs.zeros_before_super(s));
        rs
    }

    fn sample_hints(&self, total: usize, before: impl Fn(usize) -> usize) -> Vec<u32> {
        let mut hints = Vec::with_capacity(total / SELECT_SAMPLE + 1);
        let mut s = 0;
        let last = self.supers.len() - 1;
        let mut target = 1;
        while target <= total {
            while s < last && before(s + 1) < target {
                s += 1;
            }
            hints.push(s as u32);
            target += SELECT_SAMPLE;
        }
        hints
    }

    pub fn bits(&self) -> &BitVector {
        &self.bits
    }

    pub fn into_bits(self) -> BitVector {
        self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn count_ones(&self) -> usize {
        self.ones
    }

    pub fn count_zeros(&self) -> usize {
        self.len() - self.ones
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        self.bits.get(i)
    }

    #[inline]
    fn ones_before_super(&self, s: usize) -> usize {
        self.supers[s] as usize
    }

    #[inline]
    fn zeros_before_super(&self, s: usize) -> usize {
        s * SUPER_BITS - self.supers[s] as usize
    }

    /// Ones in the first `i` bits, without bounds checking beyond debug.
    #[inline]
    pub(crate) fn rank1_unchecked(&self, i: usize) -> usize {
        debug_assert!(i <= self.len());
        let w = i / WORD_BITS;
        let offset = i % WORD_BITS;
        let mut r = self.supers[w / SUPER_WORDS] as usize + self.blocks[w] as usize;
        if offset > 0 {
            let word = self.bits.words()[w];
            r += (word & ((1u64 << offset) - 1)).count_ones() as usize;
        }
        r
    }

    /// Number of ones in `B[1..i]`; `i` may be 0.
    pub fn rank1(&self, i: usize) -> Result<usize> {
        self.check_rank(i)?;
        Ok(self.rank1_unchecked(i))
    }

    /// Number of zeros in `B[1..i]`; `i` may be 0.
    pub fn rank0(&self, i: usize) -> Result<usize> {
        self.check_rank(i)?;
        Ok(i - self.rank1_unchecked(i))
    }

    fn check_rank(&self, i: usize) -> Result<()> {
        if i > self.len() {
            return Err(Error::OutOfRange {
                what: "rank argument",
                value: i,
                max: self.len(),
            });
        }
        Ok(())
    }

    /// Position of the `l`-th one.
    pub fn select1(&self, l: usize) -> Result<usize> {
        if l == 0 || l > self.ones {
            return Err(Error::OutOfRange {
                what: "select1 argument",
                value: l,
                max: self.ones,
            });
        }
        Ok(self.select_unchecked::<true>(l))
    }

    /// Position of the `l`-th zero.
    pub fn select0(&self, l: usize) -> Result<usize> {
        if l == 0 || l > self.count_zeros() {
            return Err(Error::OutOfRange {
                what: "select0 argument",
                value: l,
                max: self.count_zeros(),
            });
        }
        Ok(self.select_unchecked::<false>(l))
    }

    #[inline]
    pub(crate) fn select_unchecked<const ONE: bool>(&self, l: usize) -> usize {
        let before_super = |s: usize| {
            if ONE {
                self.ones_before_super(s)
            } else {
                self.zeros_before_super(s)
            }
        };
        let hints = if ONE {
            &self.select1_hints
        } else {
            &self.select0_hints
        };

        // Superblock: the last s with before_super(s) < l.
        let k = (l - 1) / SELECT_SAMPLE;
        let lo = hints[k] as usize;
        let hi = hints
            .get(k + 1)
            .map_or(self.supers.len() - 1, |&h| h as usize);
        let mut a = lo;
        let mut b = hi;
        while a < b {
            let mid = (a + b).div_ceil(2);
            if before_super(mid) < l {
                a = mid;
            } else {
                b = mid - 1;
            }
        }
        let s = a;

        // Word within the superblock.
        let words = self.bits.words();
        let first = s * SUPER_WORDS;
        let end = (first + SUPER_WORDS).min(words.len());
        let base = before_super(s);
        let mut w = first;
        while w + 1 < end {
            let next = w + 1;
            let in_super = self.blocks[next] as usize;
            let before = if ONE {
                in_super
            } else {
                (next - first) * WORD_BITS - in_super
            };
            if base + before < l {
                w = next;
            } else {
                break;
            }
        }
        let in_super = self.blocks[w] as usize;
        let before_word = base
            + if ONE {
                in_super
            } else {
                (w - first) * WORD_BITS - in_super
            };
        let word = if ONE { words[w] } else { !words[w] };
        w * WORD_BITS + select_in_word(word, l - before_word) + 1
    }
}

/// 0-based index of the `r`-th (1-based) set bit of `word`.
#[inline]
fn select_in_word(mut word: u64, r: usize) -> usize {
    debug_assert!(r >= 1 && r <= word.count_ones() as usize);
    for _ in 1..r {
        word &= word - 1;
    }
    word.trailing_zeros() as usize
}
