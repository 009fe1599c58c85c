//! Directed families of length sets and their unions `𝒰_k`.
//!
//! A family is anything implementing [`UnionSource`]: finitely many generator
//! sets closed under sums ([`FamilySpec`]), a lattice monoid
//! ([`MonoidSource`]), or the closed-form sources of the `krull` and `power`
//! modules. [`FamilyView`] caches `𝒰_1, ..., 𝒰_K` and runs the structure
//! checker and the property suite on top of them.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::monoid::AtomPresentation;
pub use crate::monoid::UnionReport;
use crate::relations::{delta_bound, exact_elasticity};
use crate::{ratio, Error, LengthSet, Rational, Result};

/// How much of a distance set is known.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Certification {
    /// The whole set is known.
    Exact,
    /// Only `min` and `max` are known to be exact.
    Extremes,
    /// A subset of the true set.
    Partial,
}

/// `Δ(𝓛)` as far as the source can tell.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Distances {
    pub set: LengthSet,
    pub certification: Certification,
}

impl Distances {
    fn extremes_known(&self) -> bool {
        self.certification != Certification::Partial
    }
}

/// A family of length sets with exactly computable unions.
pub trait UnionSource {
    /// `𝒰_k`, exactly. Sources that cannot certify the result must fail.
    fn union(&self, k: u64) -> Result<LengthSet>;

    fn distances(&self) -> Result<Distances>;

    /// The exact elasticity `ρ(𝓛)`, when the source knows it.
    fn elasticity(&self) -> Option<Rational> {
        None
    }
}

/// The family of all sums of at most `depth` generators.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct FamilySpec {
    pub generators: Vec<LengthSet>,
    pub depth: u64,
}

impl FamilySpec {
    pub fn new(generators: Vec<LengthSet>, depth: u64) -> Result<Self> {
        if depth == 0 {
            return Err(Error::InvalidFamily("depth must be positive".into()));
        }
        if generators.iter().any(|g| g.is_empty()) {
            return Err(Error::InvalidFamily("generators must be non-empty".into()));
        }
        if !generators.iter().any(|g| g.contains(1)) {
            return Err(Error::InvalidFamily(
                "not directed: no generator contains 1".into(),
            ));
        }
        Ok(FamilySpec { generators, depth })
    }

    /// Every member, that is every sum of `0..=depth` generators, deduplicated
    /// and sorted.
    pub fn members(&self) -> Vec<LengthSet> {
        let mut levels = self.members_by_level();
        let mut all: Vec<LengthSet> = levels.drain(..).flatten().collect();
        all.sort_by(|a, b| a.as_slice().cmp(b.as_slice()));
        all.dedup();
        all
    }

    /// `out[j]` holds the sums of exactly `j` generators.
    fn members_by_level(&self) -> Vec<Vec<LengthSet>> {
        // Keep the last generator index used so each multiset appears once.
        let mut levels = vec![vec![LengthSet::singleton(0)]];
        let mut frontier: Vec<(usize, LengthSet)> = vec![(0, LengthSet::singleton(0))];
        for _ in 0..self.depth {
            let mut next = Vec::new();
            for (start, set) in &frontier {
                for (i, g) in self.generators.iter().enumerate().skip(*start) {
                    next.push((i, set.sumset(g)));
                }
            }
            let mut level: Vec<LengthSet> = next.iter().map(|(_, s)| s.clone()).collect();
            level.sort_by(|a, b| a.as_slice().cmp(b.as_slice()));
            level.dedup();
            levels.push(level);
            frontier = next;
        }
        levels
    }

    fn all_positive(&self) -> bool {
        self.generators
            .iter()
            .all(|g| g.min().is_some_and(|m| m >= 1))
    }

    fn collect_union(&self, start: usize, set: &LengthSet, used: u64, k: u64, out: &mut LengthSet) {
        if set.contains(k) {
            *out = out.union(set);
        }
        if used == self.depth || set.min().is_some_and(|m| m > k) {
            return;
        }
        for (i, g) in self.generators.iter().enumerate().skip(start) {
            self.collect_union(i, &set.sumset(g), used + 1, k, out);
        }
    }
}

impl UnionSource for FamilySpec {
    fn union(&self, k: u64) -> Result<LengthSet> {
        if !self.all_positive() {
            // A generator containing 0 can be added without moving k, so no
            // depth bounds the members containing k.
            let zero_only = self
                .generators
                .iter()
                .all(|g| g.min() != Some(0) || g.len() == 1);
            if !zero_only {
                return Err(Error::Unbounded { k });
            }
        }
        if self.depth < k {
            return Err(Error::Uncertified {
                k,
                reason: format!("closure depth {} is below {k}", self.depth),
            });
        }
        let mut out = LengthSet::new();
        self.collect_union(0, &LengthSet::singleton(0), 0, k, &mut out);
        Ok(out)
    }

    fn distances(&self) -> Result<Distances> {
        let levels = self.members_by_level();
        let mut before = LengthSet::new();
        let mut all = LengthSet::new();
        for (j, level) in levels.iter().enumerate() {
            for set in level {
                all = all.union(&set.delta_set());
            }
            if j + 1 == levels.len() - 1 {
                before = all.clone();
            }
        }
        let certification = if levels.len() >= 3 && before == all {
            Certification::Exact
        } else {
            Certification::Partial
        };
        Ok(Distances {
            set: all,
            certification,
        })
    }

    /// `ρ(A + B) <= max(ρ(A), ρ(B))` when both minima are positive, so the
    /// elasticity of the family is attained by a generator.
    fn elasticity(&self) -> Option<Rational> {
        if !self.all_positive() {
            return None;
        }
        self.generators.iter().map(|g| g.elasticity()).max()
    }
}

/// A lattice monoid viewed as the family of its sets of lengths.
#[derive(Debug, Clone)]
pub struct MonoidSource {
    pub presentation: AtomPresentation,
    /// Cap on multisets of atoms per union and on completion candidates.
    pub budget: u64,
    /// Distances are collected from sums of at most this many atoms.
    pub delta_atoms: u64,
    rho: Option<Rational>,
}

impl MonoidSource {
    /// Computes the exact elasticity up front when the completion fits the
    /// budget.
    pub fn new(presentation: AtomPresentation, budget: u64, delta_atoms: u64) -> Self {
        let rho = exact_elasticity(&presentation, budget).ok().map(|c| c.rho);
        MonoidSource {
            presentation,
            budget,
            delta_atoms,
            rho,
        }
    }
}

impl UnionSource for MonoidSource {
    fn union(&self, k: u64) -> Result<LengthSet> {
        Ok(self.presentation.unions(k, self.budget)?.union)
    }

    fn distances(&self) -> Result<Distances> {
        let set = self
            .presentation
            .observed_distances(self.delta_atoms, self.budget)?;
        let bound = delta_bound(&self.presentation, self.budget).ok();
        let extremes = match (set.min(), set.max(), bound) {
            (None, _, Some(b)) => b.bound == 0,
            (Some(1), Some(max), Some(b)) => max == b.bound,
            _ => false,
        };
        let certification = if extremes && set.len() as u64 == set.max().unwrap_or(0) {
            // min 1 and max exact with every value in between: all of it.
            Certification::Exact
        } else if extremes {
            Certification::Extremes
        } else {
            Certification::Partial
        };
        Ok(Distances { set, certification })
    }

    fn elasticity(&self) -> Option<Rational> {
        self.rho.clone()
    }
}

/// Cached `𝒰_1, ..., 𝒰_K` of a source.
#[derive(Debug, Clone)]
pub struct FamilyView<S> {
    source: S,
    zero: LengthSet,
    unions: Vec<UnionReport>,
}

impl<S: UnionSource> FamilyView<S> {
    pub fn new(source: S) -> Self {
        FamilyView {
            source,
            zero: LengthSet::singleton(0),
            unions: Vec::new(),
        }
    }

    pub fn source(&self) -> &S {
        &self.source
    }

    pub fn horizon(&self) -> u64 {
        self.unions.len() as u64
    }

    /// Computes the missing unions up to `k_max`. Rows already cached are
    /// never recomputed.
    pub fn extend_to(&mut self, k_max: u64) -> Result<()> {
        for k in self.horizon() + 1..=k_max {
            let union = self.source.union(k)?;
            if !union.contains(k) {
                return Err(Error::InvalidFamily(format!(
                    "{k} is missing from its own union"
                )));
            }
            self.unions.push(UnionReport::from_union(k, union));
        }
        Ok(())
    }

    /// Rows `k = 1..=k_max` as `(𝒰_k, λ_k, ρ_k)`.
    pub fn unions_up_to(&mut self, k_max: u64) -> Result<&[UnionReport]> {
        self.extend_to(k_max)?;
        Ok(&self.unions[..k_max as usize])
    }

    /// `𝒰_k` with `𝒰_0 = {0}`; `k` must be within the horizon.
    pub fn union(&self, k: u64) -> &LengthSet {
        if k == 0 {
            &self.zero
        } else {
            &self.unions[k as usize - 1].union
        }
    }

    pub fn rho(&self, k: u64) -> u64 {
        if k == 0 {
            0
        } else {
            self.unions[k as usize - 1].rho
        }
    }

    pub fn lambda(&self, k: u64) -> u64 {
        if k == 0 {
            0
        } else {
            self.unions[k as usize - 1].lambda
        }
    }

    pub fn family_delta(&self) -> Result<Distances> {
        self.source.distances()
    }

    pub fn elasticity(&self) -> Option<Rational> {
        self.source.elasticity()
    }

    /// `max_{k <= K} ρ_k / k`, a lower bound for `ρ(𝓛)`, and the sequence it
    /// is taken over.
    pub fn fekete_elasticity(&mut self, k_max: u64) -> Result<Fekete> {
        self.extend_to(k_max)?;
        let ratios: Vec<Rational> = (1..=k_max).map(|k| ratio(self.rho(k), k)).collect();
        let lower = ratios.iter().max().cloned().unwrap_or_else(|| ratio(1, 1));
        Ok(Fekete { lower, ratios })
    }

    /// `gcd Δ(𝓛) = min Δ(𝓛)`; `None` when `Δ(𝓛)` is empty or not known
    /// completely.
    pub fn gcd_min_delta_check(&self) -> Result<Option<bool>> {
        let d = self.family_delta()?;
        if d.set.is_empty() || d.certification != Certification::Exact {
            return Ok(None);
        }
        let g = d.set.iter().fold(0u64, |acc, v| acc.gcd(&v));
        Ok(Some(Some(g) == d.set.min()))
    }

    /// The smallest `k <= K` with `k ρ = ρ_k`, which needs the exact
    /// elasticity.
    pub fn accepted_elasticity_check(&mut self, k_max: u64) -> Result<Option<u64>> {
        let rho = self.elasticity().ok_or_else(|| {
            Error::InvalidArgument("the exact elasticity of this family is unknown".into())
        })?;
        self.extend_to(k_max)?;
        Ok((1..=k_max).find(|&k| ratio(self.rho(k), 1) == &rho * ratio(k, 1)))
    }

    /// Finite-horizon evidence that the unions are eventually AAPs.
    pub fn structure_check(&mut self, k_max: u64) -> Result<StructureVerdict> {
        self.extend_to(k_max)?;
        let distances = self.family_delta()?;
        let Some(delta) = distances.set.min() else {
            return Ok(StructureVerdict::trivial(distances.certification));
        };
        let max_delta = distances.set.max().unwrap_or(delta);
        let q_ratio = ratio(max_delta, delta);
        let q = q_ratio
            .is_integer()
            .then(|| q_ratio.to_integer().to_u64())
            .flatten();

        let l = (1..=k_max).find(|&l| self.union(l).contains(l + delta));

        let bounds: Vec<(u64, Option<u64>)> = (1..=k_max)
            .map(|k| (k, self.union(k).minimal_aap_bound(delta).map(|w| w.bound)))
            .collect();
        let last_change = bounds
            .windows(2)
            .rev()
            .find(|w| w[0].1 != w[1].1)
            .map(|w| w[1].0);
        let stabilized = k_max >= 2 && bounds[bounds.len() - 1].1 == bounds[bounds.len() - 2].1;

        let mut windows = Vec::new();
        if let (Some(l), Some(q)) = (l, q) {
            let shift = l * q;
            for k in shift..=k_max {
                let lo = self.rho(k - shift) + shift;
                let hi = self.rho(k);
                let bound = window_bound(self.union(k), lo, hi, delta);
                windows.push(WindowReport { k, lo, hi, bound });
            }
        }

        Ok(StructureVerdict {
            trivial: false,
            delta: Some(delta),
            max_delta: Some(max_delta),
            q,
            report_only: q.is_none() || distances.certification == Certification::Partial,
            l,
            bounds,
            last_change,
            stabilized,
            windows,
            certification: distances.certification,
        })
    }

    /// Runs every property check on `k = 1..=K` and lists the violations.
    pub fn check_properties(&mut self, k_max: u64) -> Result<PropertyReport> {
        self.extend_to(k_max)?;
        let mut r = PropertyReport::default();
        let distances = self.family_delta()?;
        let ks = 1..=k_max;

        for h in ks.clone() {
            for k in ks.clone() {
                r.check(
                    "reciprocity",
                    self.union(k).contains(h) == self.union(h).contains(k),
                    || format!("h={h} k={k}"),
                );
            }
        }
        for h in ks.clone() {
            for k in h..=k_max - h {
                let sum = self.union(h).sumset(self.union(k));
                r.check("superadditivity", sum.is_subset(self.union(h + k)), || {
                    format!("U_{h} + U_{k} not in U_{}", h + k)
                });
                let chain = [
                    self.lambda(h + k),
                    self.lambda(h) + self.lambda(k),
                    h + k,
                    self.rho(h) + self.rho(k),
                    self.rho(h + k),
                ];
                r.check(
                    "extremes chain",
                    chain.windows(2).all(|w| w[0] <= w[1]),
                    || format!("h={h} k={k}: {chain:?}"),
                );
            }
        }
        for k in ks.clone() {
            for m in 2..=k_max / k {
                r.check("fekete", self.rho(m * k) >= m * self.rho(k), || {
                    format!("rho_{} < {m} rho_{k}", m * k)
                });
            }
        }
        let mut k = 1;
        while 2 * k <= k_max {
            let a = ratio(self.union(k).len() as u64 - 1, k);
            let b = ratio(self.union(2 * k).len() as u64 - 1, 2 * k);
            r.check("doubling", a <= b, || format!("k={k}"));
            k *= 2;
        }

        if distances.extremes_known() {
            if let (Some(delta), Some(max_delta)) = (distances.set.min(), distances.set.max()) {
                for k in ks.clone() {
                    let u = self.union(k);
                    r.check(
                        "residue class",
                        u.iter().all(|v| v % delta == k % delta),
                        || format!("U_{k} leaves {k} + {delta}Z"),
                    );
                    let gap = u.delta_set().max().unwrap_or(0);
                    r.check("gap bound", gap <= max_delta, || {
                        format!("U_{k} has gap {gap} > {max_delta}")
                    });
                }
                if let Some(rho) = self.elasticity() {
                    for k in ks.clone() {
                        let threshold = &rho * ratio(max_delta, 1) + ratio(1, 1);
                        if ratio(k, 1) >= threshold {
                            r.check(
                                "lambda lower bound",
                                ratio(self.lambda(k), 1) * &rho >= ratio(k, 1),
                                || format!("lambda_{k} = {}", self.lambda(k)),
                            );
                        }
                    }
                }
            }
        }
        if distances.certification == Certification::Exact && !distances.set.is_empty() {
            let g = distances.set.iter().fold(0u64, |acc, v| acc.gcd(&v));
            r.check("gcd law", Some(g) == distances.set.min(), || {
                format!("gcd {g} differs from min of {}", distances.set)
            });
        }
        // Every d ∈ Δ(𝓛) seen in a union gives {l, l+d} in one member, and
        // q-fold sums of that member contain ql + d[0, q].
        for d in distances.set.iter() {
            if let Some(l) = (1..=k_max).find(|&l| self.union(l).contains(l + d)) {
                let mut q = 1;
                while l * q <= k_max {
                    let k = l * q;
                    r.check(
                        "long progressions",
                        (0..=q).all(|i| self.union(k).contains(k + i * d)),
                        || format!("d={d} l={l} q={q}"),
                    );
                    q += 1;
                }
            }
        }
        Ok(r)
    }
}

/// Smallest `M` such that `U ∩ [lo, hi - M]` is empty or an AP with
/// difference `d`.
fn window_bound(u: &LengthSet, lo: u64, hi: u64, d: u64) -> u64 {
    (0..)
        .find(|&m| {
            m > hi || {
                let w = u.restrict(lo, hi - m);
                w.is_empty() || w.is_ap(d)
            }
        })
        .expect("window becomes empty")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fekete {
    pub lower: Rational,
    pub ratios: Vec<Rational>,
}

/// The condition-(b) window `𝒰_k ∩ [ρ_{k-lq} + lq, ρ_k - M]` for one `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WindowReport {
    pub k: u64,
    pub lo: u64,
    pub hi: u64,
    /// Smallest `M` making the window empty or an AP with difference `δ`.
    pub bound: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureVerdict {
    /// `Δ(𝓛)` is empty, so every union is a singleton.
    pub trivial: bool,
    pub delta: Option<u64>,
    pub max_delta: Option<u64>,
    /// `max Δ / δ` when integral.
    pub q: Option<u64>,
    /// Set when `q` is not integral or `Δ` is only partially known.
    pub report_only: bool,
    /// Smallest `l` with `{l, l+δ}` inside one member.
    pub l: Option<u64>,
    /// `(k, M_k)` with `M_k` the minimal AAP bound of `𝒰_k` at `δ`.
    pub bounds: Vec<(u64, Option<u64>)>,
    /// Largest `k` where `M_k` differs from `M_{k-1}`.
    pub last_change: Option<u64>,
    pub stabilized: bool,
    pub windows: Vec<WindowReport>,
    pub certification: Certification,
}

impl StructureVerdict {
    fn trivial(certification: Certification) -> Self {
        StructureVerdict {
            trivial: true,
            delta: None,
            max_delta: None,
            q: None,
            report_only: false,
            l: None,
            bounds: Vec::new(),
            last_change: None,
            stabilized: true,
            windows: Vec::new(),
            certification,
        }
    }

    /// `M_k`, if `k` was checked and `𝒰_k` sits in one residue class.
    pub fn bound(&self, k: u64) -> Option<u64> {
        self.bounds
            .iter()
            .find(|(j, _)| *j == k)
            .and_then(|(_, m)| *m)
    }
}

/// Outcome of [`FamilyView::check_properties`].
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PropertyReport {
    /// Number of individual assertions evaluated.
    pub checked: u64,
    /// `(property, detail)` for every failed assertion.
    pub violations: Vec<(&'static str, String)>,
}

impl PropertyReport {
    fn check<F: FnOnce() -> String>(&mut self, name: &'static str, ok: bool, detail: F) {
        self.checked += 1;
        if !ok {
            self.violations.push((name, detail()));
        }
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn merge(&mut self, other: PropertyReport) {
        self.checked += other.checked;
        self.violations.extend(other.violations);
    }
}
