//! Finitely generated submonoids of the power monoid of `(N_0, +)`: finite
//! non-empty sets of non-negative integers under set addition.
//!
//! `max` is additive and positive on every non-identity element, so it plays
//! the role of the grading: factorizations of `X` are found by distributing
//! `max X` over the atoms and checking the resulting sumset.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::family::{Certification, Distances, UnionSource};
use crate::monoid::UnionReport;
use crate::multiset::{multiset_count, Multisets};
use crate::{ratio, Error, LengthSet, Rational, Result};

/// A finite non-empty subset of `N_0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
#[cfg_attr(
    feature = "serde",
    derive(serde::Serialize, serde::Deserialize),
    serde(try_from = "Vec<u64>", into = "Vec<u64>")
)]
pub struct FinSet(LengthSet);

impl PartialOrd for FinSet {
    fn partial_cmp(&self, other: &Self) -> Option<core::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FinSet {
    fn cmp(&self, other: &Self) -> core::cmp::Ordering {
        self.0.as_slice().cmp(other.0.as_slice())
    }
}

impl FinSet {
    pub fn new(set: LengthSet) -> Result<Self> {
        if set.is_empty() {
            return Err(Error::InvalidArgument(
                "finite sets must be non-empty".into(),
            ));
        }
        Ok(FinSet(set))
    }

    /// The identity `{0}`.
    pub fn zero() -> Self {
        FinSet(LengthSet::singleton(0))
    }

    /// `[lo, hi]`; panics if `lo > hi`.
    pub fn interval(lo: u64, hi: u64) -> Self {
        assert!(lo <= hi, "empty interval");
        FinSet(LengthSet::interval(lo, hi))
    }

    pub fn as_set(&self) -> &LengthSet {
        &self.0
    }

    pub fn least(&self) -> u64 {
        self.0.min().unwrap()
    }

    pub fn greatest(&self) -> u64 {
        self.0.max().unwrap()
    }

    pub fn is_zero(&self) -> bool {
        self.0.as_slice() == [0]
    }

    pub fn is_interval(&self) -> bool {
        self.0.len() as u64 == self.greatest() - self.least() + 1
    }

    /// `X + Y`.
    pub fn setsum(&self, other: &FinSet) -> FinSet {
        FinSet(self.0.sumset(&other.0))
    }

    /// `n X`, with `0 X = {0}`.
    pub fn multiple(&self, n: u64) -> FinSet {
        FinSet(self.0.nfold(n))
    }
}

impl TryFrom<Vec<u64>> for FinSet {
    type Error = Error;

    fn try_from(v: Vec<u64>) -> Result<Self> {
        FinSet::new(LengthSet::from(v))
    }
}

impl From<FinSet> for Vec<u64> {
    fn from(s: FinSet) -> Self {
        s.0.into()
    }
}

impl fmt::Display for FinSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// The submonoid generated by finitely many finite sets, with every element
/// of `max <= bound` stored.
#[derive(Debug, Clone)]
pub struct PowerSubmonoid {
    generators: Vec<FinSet>,
    atoms: Vec<FinSet>,
    bound: u64,
    store: BTreeSet<FinSet>,
}

impl PowerSubmonoid {
    /// Builds the store by breadth-first search over sums. Fails if the store
    /// would exceed `max_elements`.
    pub fn new(generators: Vec<FinSet>, bound: u64, max_elements: u64) -> Result<Self> {
        let mut gens: Vec<FinSet> = generators.into_iter().filter(|g| !g.is_zero()).collect();
        gens.sort();
        gens.dedup();
        if gens.is_empty() {
            return Err(Error::InvalidArgument("no non-trivial generators".into()));
        }
        let mut store = BTreeSet::new();
        store.insert(FinSet::zero());
        let mut frontier = vec![FinSet::zero()];
        while let Some(x) = frontier.pop() {
            for g in &gens {
                let y = x.setsum(g);
                if y.greatest() <= bound && !store.contains(&y) {
                    if store.len() as u64 >= max_elements {
                        return Err(Error::Budget {
                            what: "stored elements",
                            estimate: store.len() as u128 + 1,
                            budget: max_elements,
                        });
                    }
                    store.insert(y.clone());
                    frontier.push(y);
                }
            }
        }
        let mut m = PowerSubmonoid {
            generators: gens.clone(),
            atoms: Vec::new(),
            bound,
            store,
        };
        m.atoms = m.atoms_of();
        Ok(m)
    }

    pub fn generators(&self) -> &[FinSet] {
        &self.generators
    }

    pub fn atoms(&self) -> &[FinSet] {
        &self.atoms
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    pub fn store(&self) -> impl Iterator<Item = &FinSet> {
        self.store.iter()
    }

    pub fn store_len(&self) -> usize {
        self.store.len()
    }

    pub fn contains(&self, x: &FinSet) -> bool {
        self.store.contains(x)
    }

    /// Generators that are not the sum of two non-identity stored elements.
    /// Every generator has `max <= bound` or it could not be decided, so
    /// generators above the bound are kept as they are.
    pub fn atoms_of(&self) -> Vec<FinSet> {
        self.generators
            .iter()
            .filter(|x| x.greatest() > self.bound || self.split(x).is_none())
            .cloned()
            .collect()
    }

    /// A decomposition `X = Y + Z` into non-identity stored elements.
    pub fn split(&self, x: &FinSet) -> Option<(FinSet, FinSet)> {
        for y in &self.store {
            if y.is_zero() || y.greatest() > x.greatest() || y.least() > x.least() {
                continue;
            }
            let (zmax, zmin) = (x.greatest() - y.greatest(), x.least() - y.least());
            for z in &self.store {
                if z.is_zero() || z.greatest() != zmax || z.least() != zmin {
                    continue;
                }
                if &y.setsum(z) == x {
                    return Some((y.clone(), z.clone()));
                }
            }
        }
        None
    }

    /// `Σ c_i a_i` over the atoms.
    pub fn evaluate(&self, counts: &[u64]) -> FinSet {
        self.atoms
            .iter()
            .zip(counts)
            .fold(FinSet::zero(), |acc, (a, &c)| acc.setsum(&a.multiple(c)))
    }

    /// All factorizations of `X` as count vectors over [`Self::atoms`],
    /// sorted. Empty iff `X` is not in the monoid.
    pub fn factorizations(&self, x: &FinSet) -> Vec<Vec<u64>> {
        let mut order: Vec<usize> = (0..self.atoms.len()).collect();
        order.sort_by_key(|&i| (core::cmp::Reverse(self.atoms[i].greatest()), i));
        let mut out = Vec::new();
        let mut counts = vec![0; self.atoms.len()];
        self.dfs(&order, 0, x.greatest(), x.least(), &mut counts, &mut |c| {
            if &self.evaluate(c) == x {
                out.push(c.to_vec());
            }
        });
        out.sort();
        out
    }

    fn dfs<F: FnMut(&[u64])>(
        &self,
        order: &[usize],
        pos: usize,
        max_left: u64,
        min_left: u64,
        counts: &mut Vec<u64>,
        visit: &mut F,
    ) {
        if max_left == 0 {
            if min_left == 0 {
                visit(counts);
            }
            return;
        }
        if pos == order.len() {
            return;
        }
        let i = order[pos];
        let a = &self.atoms[i];
        let mut c = 0;
        while c * a.greatest() <= max_left && c * a.least() <= min_left {
            counts[i] = c;
            self.dfs(
                order,
                pos + 1,
                max_left - c * a.greatest(),
                min_left - c * a.least(),
                counts,
                visit,
            );
            c += 1;
        }
        counts[i] = 0;
    }

    pub fn length_set(&self, x: &FinSet) -> LengthSet {
        self.factorizations(x)
            .iter()
            .map(|c| c.iter().sum::<u64>())
            .collect()
    }

    /// `𝒰_k` by enumerating every multiset of `k` atoms.
    pub fn unions(&self, k: u64, budget: u64) -> Result<UnionReport> {
        let estimate = multiset_count(self.atoms.len() as u64, k);
        if estimate > budget as u128 {
            return Err(Error::Budget {
                what: "multisets of atoms",
                estimate,
                budget,
            });
        }
        let elements: BTreeSet<FinSet> = Multisets::new(self.atoms.len(), k as usize)
            .map(|ms| {
                ms.iter()
                    .fold(FinSet::zero(), |acc, &i| acc.setsum(&self.atoms[i]))
            })
            .collect();
        let union = elements
            .iter()
            .fold(LengthSet::new(), |acc, x| acc.union(&self.length_set(x)));
        Ok(UnionReport::from_union(k, union))
    }

    /// Minimal count vectors `z` with `u` dividing `π(z)`, searched up to
    /// `|z| <= max_len`. `u` divides `X` iff some factorization of `X` uses
    /// `u`. The result is complete only if `max_len` is large enough.
    pub fn divisibility_minimal_points(&self, u: usize, max_len: u64) -> Vec<Vec<u64>> {
        let s = self.atoms.len();
        let mut mins: Vec<Vec<u64>> = Vec::new();
        for len in 1..=max_len {
            for ms in Multisets::new(s, len as usize) {
                let mut z = vec![0u64; s];
                for i in ms {
                    z[i] += 1;
                }
                if mins.iter().any(|m| m.iter().zip(&z).all(|(a, b)| a <= b)) {
                    continue;
                }
                let x = self.evaluate(&z);
                if self.factorizations(&x).iter().any(|f| f[u] > 0) {
                    mins.push(z);
                }
            }
        }
        mins.sort();
        mins
    }

    /// `ω(H, u)` from the minimal points up to length `max_len`; a lower
    /// bound unless `max_len` exceeds the true value.
    pub fn omega_atom(&self, u: usize, max_len: u64) -> u64 {
        self.divisibility_minimal_points(u, max_len)
            .iter()
            .map(|z| z.iter().sum::<u64>())
            .max()
            .unwrap_or(0)
    }
}

/// The worked example with atoms `[0, 1]` and `A = {1} ∪ 2·[0, n]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PowerExample {
    pub n: u64,
}

impl PowerExample {
    pub fn new(n: u64) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidArgument("the example needs n >= 2".into()));
        }
        Ok(PowerExample { n })
    }

    pub fn unit_interval() -> FinSet {
        FinSet::interval(0, 1)
    }

    pub fn a(&self) -> FinSet {
        let set: LengthSet = (0..=self.n).map(|i| 2 * i).chain([1]).collect();
        FinSet(set)
    }

    pub fn generators(&self) -> Vec<FinSet> {
        vec![Self::unit_interval(), self.a()]
    }

    /// `h [0,1] + l A`.
    pub fn element(&self, h: u64, l: u64) -> FinSet {
        Self::unit_interval()
            .multiple(h)
            .setsum(&self.a().multiple(l))
    }

    pub fn submonoid(&self, bound: u64, max_elements: u64) -> Result<PowerSubmonoid> {
        PowerSubmonoid::new(self.generators(), bound, max_elements)
    }

    /// `𝖫(h [0,1] + l A)` in closed form.
    pub fn example_length_set(&self, h: u64, l: u64) -> LengthSet {
        if h == 0 {
            return LengthSet::singleton(l);
        }
        let n2 = 2 * self.n;
        let (q, r) = (h / n2, h % n2);
        let eps = u64::from(r == 0);
        (eps..=q + l).map(|x| (n2 - 1) * x + q + l + r).collect()
    }

    /// `ρ_k = 2n(k - 1) + 1`, claimed only for `k >= 2n`.
    pub fn example_rho_k(&self, k: u64) -> Option<u64> {
        (k >= 2 * self.n).then(|| 2 * self.n * (k - 1) + 1)
    }

    pub fn example_omega(&self) -> u64 {
        2 * self.n + 1
    }

    /// `ρ(H) = 2n`, approached but never attained.
    pub fn example_elasticity(&self) -> Rational {
        ratio(2 * self.n, 1)
    }

    /// `𝒰_k` from the closed form: every element with `k` in its set of
    /// lengths is a sum of `k` atoms.
    pub fn closed_union(&self, k: u64) -> LengthSet {
        (0..=k).fold(LengthSet::new(), |acc, h| {
            acc.union(&self.example_length_set(h, k - h))
        })
    }

    /// Is `([0,1] + kA, (2nk+1)[0,1])` an atom of the monoid of relations?
    /// Tries every split into two relations, both non-trivial.
    pub fn relations_atom_check(&self, k: u64) -> bool {
        let top = 2 * self.n * k + 1;
        let x = self.element(1, k);
        let y = Self::unit_interval().multiple(top);
        if x != y {
            return false;
        }
        for a in 0..=1 {
            for b in 0..=k {
                for c in 0..=top {
                    let first_zero = a == 0 && b == 0 && c == 0;
                    let second_zero = a == 1 && b == k && c == top;
                    if first_zero || second_zero {
                        continue;
                    }
                    let left = self.element(a, b) == Self::unit_interval().multiple(c);
                    let right =
                        self.element(1 - a, k - b) == Self::unit_interval().multiple(top - c);
                    if left && right {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Same answer through the structure of the sets: `[0,1] + bA` is the
    /// interval `[0, 2nb + 1]`, while `bA` misses `2nb - 1` for `b >= 1`.
    /// A split would need some `b' A` with `1 <= b' <= k` to be an interval.
    pub fn relations_atom_check_structural(&self, k: u64) -> bool {
        (1..=k).all(|b| !self.a().multiple(b).is_interval())
            && (0..=k).all(|b| self.element(1, b) == FinSet::interval(0, 2 * self.n * b + 1))
    }
}

/// The example as a family, with unions from enumeration.
#[derive(Debug, Clone)]
pub struct PowerSource {
    pub example: PowerExample,
    monoid: PowerSubmonoid,
    pub budget: u64,
}

impl PowerSource {
    pub fn new(example: PowerExample, budget: u64) -> Result<Self> {
        // The atoms are known; a small store suffices to confirm them.
        let monoid = example.submonoid(4 * example.n + 2, budget)?;
        if monoid.atoms().len() != 2 {
            return Err(Error::InvalidArgument(format!(
                "expected two atoms, found {}",
                monoid.atoms().len()
            )));
        }
        Ok(PowerSource {
            example,
            monoid,
            budget,
        })
    }

    pub fn monoid(&self) -> &PowerSubmonoid {
        &self.monoid
    }
}

impl UnionSource for PowerSource {
    fn union(&self, k: u64) -> Result<LengthSet> {
        Ok(self.monoid.unions(k, self.budget)?.union)
    }

    /// Every set of lengths is a progression with difference `2n - 1`.
    fn distances(&self) -> Result<Distances> {
        Ok(Distances {
            set: LengthSet::singleton(2 * self.example.n - 1),
            certification: Certification::Exact,
        })
    }

    fn elasticity(&self) -> Option<Rational> {
        Some(self.example.example_elasticity())
    }
}
