//! Finite subsets of `N_0`: distances, elasticity, sumsets and almost
//! arithmetical progressions.
//!
//! Conventions for the empty set are `sup {} = 0` and `inf {} = infinity`.

use alloc::vec::Vec;
use core::fmt;

use num_traits::One;

use crate::bits::sumset_sorted;
use crate::{ratio, Rational};

/// A non-negative integer or infinity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Bound {
    Finite(u64),
    Infinite,
}

impl Bound {
    pub fn finite(self) -> Option<u64> {
        match self {
            Bound::Finite(v) => Some(v),
            Bound::Infinite => None,
        }
    }
}

/// A finite, strictly increasing set of non-negative integers.
///
/// Sets of lengths, unions of sets of lengths and distance sets all use this
/// type. Serialized as a sorted array of integers.
///
/// There is deliberately no `Ord` impl: `Ord::min`/`Ord::max` would shadow
/// the inherent accessors on owned values.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
#[cfg_attr(
    feature = "serde",
    derive(serde::Serialize, serde::Deserialize),
    serde(from = "Vec<u64>", into = "Vec<u64>")
)]
pub struct LengthSet(Vec<u64>);

/// Certificate that a set is an almost arithmetical progression.
///
/// `L` lies in `residue + difference * Z` and the part of `L` inside
/// `[min L + bound, max L - bound]` is an arithmetical progression with the
/// given difference (or empty).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct AapWitness {
    pub difference: u64,
    pub bound: u64,
    pub residue: u64,
}

impl LengthSet {
    pub fn new() -> Self {
        LengthSet(Vec::new())
    }

    pub fn singleton(v: u64) -> Self {
        LengthSet(alloc::vec![v])
    }

    /// The discrete interval `[lo, hi]`, empty when `lo > hi`.
    pub fn interval(lo: u64, hi: u64) -> Self {
        if lo > hi {
            return LengthSet::new();
        }
        LengthSet((lo..=hi).collect())
    }

    /// `{start, start + step, ...}` up to and including `end` (if reached).
    pub fn progression(start: u64, step: u64, end: u64) -> Self {
        assert!(step > 0, "progression step must be positive");
        if start > end {
            return LengthSet::new();
        }
        LengthSet((start..=end).step_by(step as usize).collect())
    }

    /// Wraps a vector that is already strictly increasing.
    pub(crate) fn from_sorted_unchecked(values: Vec<u64>) -> Self {
        debug_assert!(values.windows(2).all(|w| w[0] < w[1]));
        LengthSet(values)
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = u64> + ExactSizeIterator + '_ {
        self.0.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: u64) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn min(&self) -> Option<u64> {
        self.0.first().copied()
    }

    pub fn max(&self) -> Option<u64> {
        self.0.last().copied()
    }

    /// `sup L`, with `sup {} = 0`.
    pub fn sup(&self) -> u64 {
        self.max().unwrap_or(0)
    }

    /// `inf L`, with `inf {} = infinity`.
    pub fn inf(&self) -> Bound {
        self.min().map_or(Bound::Infinite, Bound::Finite)
    }

    /// `L+ = L ∩ N`.
    pub fn positive_part(&self) -> LengthSet {
        LengthSet(self.0.iter().copied().filter(|&v| v > 0).collect())
    }

    /// The set of distances: gaps between consecutive elements.
    pub fn delta_set(&self) -> LengthSet {
        self.0.windows(2).map(|w| w[1] - w[0]).collect()
    }

    /// `max L+ / min L+`, or 1 when `L+` is empty.
    pub fn elasticity(&self) -> Rational {
        let pos = self.positive_part();
        match (pos.min(), pos.max()) {
            (Some(lo), Some(hi)) => ratio(hi, lo),
            _ => Rational::one(),
        }
    }

    pub fn sumset(&self, other: &LengthSet) -> LengthSet {
        LengthSet(sumset_sorted(&self.0, &other.0))
    }

    /// The `n`-fold sumset `L + ... + L`; `nfold(0, L) = {0}`.
    pub fn nfold(&self, n: u64) -> LengthSet {
        let mut acc = LengthSet::singleton(0);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.sumset(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.sumset(&base);
            }
        }
        acc
    }

    /// The dilation `n · L = {n l : l ∈ L}`.
    pub fn dilate(&self, n: u64) -> LengthSet {
        let mut v: Vec<u64> = self.0.iter().map(|&x| x * n).collect();
        v.dedup();
        LengthSet(v)
    }

    /// `c + L`.
    pub fn shift(&self, c: u64) -> LengthSet {
        LengthSet(self.0.iter().map(|&x| x + c).collect())
    }

    pub fn union(&self, other: &LengthSet) -> LengthSet {
        let mut out = Vec::with_capacity(self.len() + other.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.0, &other.0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                core::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                core::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                core::cmp::Ordering::Equal => {
                    out.push(a[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        LengthSet(out)
    }

    pub fn is_subset(&self, other: &LengthSet) -> bool {
        self.0.iter().all(|&v| other.contains(v))
    }

    /// `L ∩ [lo, hi]`.
    pub fn restrict(&self, lo: u64, hi: u64) -> LengthSet {
        if lo > hi {
            return LengthSet::new();
        }
        let start = self.0.partition_point(|&v| v < lo);
        let end = self.0.partition_point(|&v| v <= hi);
        LengthSet(self.0[start..end].to_vec())
    }

    /// `L ∩ N_{>= lo}`.
    pub fn at_least(&self, lo: u64) -> LengthSet {
        let start = self.0.partition_point(|&v| v < lo);
        LengthSet(self.0[start..].to_vec())
    }

    /// True if `L` is non-empty and every gap equals `d`.
    pub fn is_ap(&self, d: u64) -> bool {
        !self.is_empty() && self.0.windows(2).all(|w| w[1] - w[0] == d)
    }

    /// The residue `y mod d` if `L ⊆ y + d Z`.
    pub fn residue_class(&self, d: u64) -> Option<u64> {
        assert!(d > 0, "difference must be positive");
        let first = self.min()? % d;
        self.0.iter().all(|&v| v % d == first).then_some(first)
    }

    /// True if `L` is an AAP with difference `d` and bound `m`.
    ///
    /// An empty middle window counts as an arithmetical progression.
    pub fn is_aap(&self, d: u64, m: u64) -> bool {
        if self.residue_class(d).is_none() {
            return false;
        }
        let (lo, hi) = (self.0[0], *self.0.last().unwrap());
        match (lo.checked_add(m), hi.checked_sub(m)) {
            (Some(a), Some(b)) if a <= b => {
                let window = self.restrict(a, b);
                window.is_empty() || window.is_ap(d)
            }
            _ => true,
        }
    }

    /// The smallest `M` making `L` an AAP with difference `d`.
    ///
    /// Returns `None` for the empty set or when `L` is not contained in a
    /// single residue class modulo `d`. The scan stops at
    /// `ceil((max - min) / 2) + 1`, where the middle window is empty.
    pub fn minimal_aap_bound(&self, d: u64) -> Option<AapWitness> {
        let residue = self.residue_class(d)?;
        let span = self.max()? - self.min()?;
        let cutoff = span.div_ceil(2) + 1;
        (0..=cutoff)
            .find(|&m| self.is_aap(d, m))
            .map(|bound| AapWitness {
                difference: d,
                bound,
                residue,
            })
    }
}

impl FromIterator<u64> for LengthSet {
    fn from_iter<I: IntoIterator<Item = u64>>(iter: I) -> Self {
        let mut v: Vec<u64> = iter.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        LengthSet(v)
    }
}

impl From<Vec<u64>> for LengthSet {
    fn from(v: Vec<u64>) -> Self {
        v.into_iter().collect()
    }
}

impl From<LengthSet> for Vec<u64> {
    fn from(s: LengthSet) -> Self {
        s.0
    }
}

impl<const N: usize> From<[u64; N]> for LengthSet {
    fn from(v: [u64; N]) -> Self {
        v.into_iter().collect()
    }
}

impl fmt::Display for LengthSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}
