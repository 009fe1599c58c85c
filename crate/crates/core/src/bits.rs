//! Dense bitsets over small non-negative integers, used for sumsets.

use alloc::vec;
use alloc::vec::Vec;

/// Largest value for which sumsets go through a dense bitmap.
const DENSE_LIMIT: u64 = 1 << 24;

pub(crate) struct BitSet {
    words: Vec<u64>,
}

impl BitSet {
    pub(crate) fn with_max(max: u64) -> Self {
        BitSet {
            words: vec![0; (max / 64 + 1) as usize],
        }
    }

    pub(crate) fn from_sorted(values: &[u64]) -> Self {
        let mut set = Self::with_max(values.last().copied().unwrap_or(0));
        for &v in values {
            set.insert(v);
        }
        set
    }

    #[inline]
    pub(crate) fn insert(&mut self, v: u64) {
        self.words[(v / 64) as usize] |= 1 << (v % 64);
    }

    /// `self |= other << shift`; `self` must be large enough.
    pub(crate) fn or_shifted(&mut self, other: &BitSet, shift: u64) {
        let word_shift = (shift / 64) as usize;
        let bit_shift = (shift % 64) as u32;
        for (i, &w) in other.words.iter().enumerate() {
            if w == 0 {
                continue;
            }
            let lo = i + word_shift;
            if bit_shift == 0 {
                self.words[lo] |= w;
            } else {
                self.words[lo] |= w << bit_shift;
                if lo + 1 < self.words.len() {
                    self.words[lo + 1] |= w >> (64 - bit_shift);
                }
            }
        }
    }

    pub(crate) fn to_vec(&self) -> Vec<u64> {
        let mut out = Vec::new();
        for (i, &w) in self.words.iter().enumerate() {
            let mut w = w;
            while w != 0 {
                let b = w.trailing_zeros() as u64;
                out.push(i as u64 * 64 + b);
                w &= w - 1;
            }
        }
        out
    }
}

/// Sumset of two strictly increasing slices, returned strictly increasing.
pub(crate) fn sumset_sorted(a: &[u64], b: &[u64]) -> Vec<u64> {
    let (Some(&amax), Some(&bmax)) = (a.last(), b.last()) else {
        return Vec::new();
    };
    let (small, large) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    let max = amax + bmax;
    if max <= DENSE_LIMIT {
        let base = BitSet::from_sorted(large);
        let mut acc = BitSet::with_max(max);
        for &s in small {
            acc.or_shifted(&base, s);
        }
        acc.to_vec()
    } else {
        let mut out: Vec<u64> = small
            .iter()
            .flat_map(|&s| large.iter().map(move |&l| s + l))
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}
