//! A finitely generated Krull monoid with a prescribed set of lengths, and
//! the coproduct of such monoids whose unions are not almost arithmetical
//! progressions with a common bound.
//!
//! For `L = {m_1, m_2 + 1, ..., m_s + 1}` the monoid lives in
//! `Z^{m_1 + ... + m_s}` with one coordinate block per `m_i`. Its atoms are the
//! unit vectors `u_{i,j}` and, for `i >= 2`, `u_{i,0}` = (ones on block 1)
//! minus (ones on block `i`). Lengths have the closed form
//! `𝖫(x) = C(x) + {Σ c_i β_i : Σ β_i <= k(x)}` with `c_i = m_i - m_1 + 1`.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::ToPrimitive;

use crate::family::{Certification, Distances, UnionSource};
use crate::monoid::{product_unions, AtomPresentation, UnionReport};
use crate::multiset::{multiset_count, Multisets};
use crate::{ratio, Error, LengthSet, Rational, Result};

/// The monoid realizing a given length set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealizedKrull {
    l: LengthSet,
    m: Vec<u64>,
    /// First coordinate of each block.
    offsets: Vec<usize>,
    /// Block of each atom.
    atom_block: Vec<usize>,
    presentation: AtomPresentation,
}

/// The quantities `γ_{i,j}(x)`, `γ_i(x)`, `γ'_i(x)`, `C(x)` and `k(x)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaProfile {
    pub gamma_ij: Vec<Vec<i64>>,
    pub gamma: Vec<i64>,
    /// `γ'_i = max(0, -γ_i)`; the entry for block 1 is 0 and unused.
    pub gamma_prime: Vec<i64>,
    pub c: i64,
    pub k: i64,
}

impl RealizedKrull {
    pub fn realize(l: &LengthSet) -> Result<Self> {
        if l.len() < 2 {
            return Err(Error::InvalidLengthSet(format!(
                "{l} needs at least two elements"
            )));
        }
        if l.min().is_some_and(|m| m < 2) {
            return Err(Error::InvalidLengthSet(format!(
                "{l} must lie in N_{{>=2}}"
            )));
        }
        let values = l.as_slice();
        let mut m = vec![values[0]];
        m.extend(values[1..].iter().map(|v| v - 1));
        let s = m.len();
        let dim: usize = m.iter().map(|&v| v as usize).sum();
        let mut offsets = Vec::with_capacity(s);
        let mut atoms = Vec::with_capacity(dim + s - 1);
        let mut atom_block = Vec::with_capacity(dim + s - 1);
        let mut offset = 0;
        for (i, &mi) in m.iter().enumerate() {
            offsets.push(offset);
            for j in 0..mi as usize {
                let mut v = vec![0; dim];
                v[offset + j] = 1;
                atoms.push(v);
                atom_block.push(i);
            }
            offset += mi as usize;
        }
        for i in 1..s {
            let mut v = vec![0; dim];
            for c in &mut v[..m[0] as usize] {
                *c = 1;
            }
            for c in &mut v[offsets[i]..offsets[i] + m[i] as usize] {
                *c = -1;
            }
            atoms.push(v);
            atom_block.push(i);
        }
        // Weight m_s + 1 on block 1 makes every u_{i,0} positive.
        let heavy = m[s - 1] as i64 + 1;
        let mut grading = vec![1; dim];
        for g in &mut grading[..m[0] as usize] {
            *g = heavy;
        }
        let presentation = AtomPresentation::new(dim, atoms, Some(grading))?;
        Ok(RealizedKrull {
            l: l.clone(),
            m,
            offsets,
            atom_block,
            presentation,
        })
    }

    pub fn length_set(&self) -> &LengthSet {
        &self.l
    }

    pub fn m(&self) -> &[u64] {
        &self.m
    }

    pub fn s(&self) -> usize {
        self.m.len()
    }

    pub fn dim(&self) -> usize {
        self.presentation.dim()
    }

    pub fn presentation(&self) -> &AtomPresentation {
        &self.presentation
    }

    /// Index of `u_{i,j}` with 1-based `i` and `j in 0..=m_i` (`j = 0` only
    /// for `i >= 2`).
    pub fn atom_index(&self, i: usize, j: usize) -> usize {
        assert!(i >= 1 && i <= self.s(), "block out of range");
        if j == 0 {
            assert!(i >= 2, "u_{{1,0}} does not exist");
            self.dim() + i - 2
        } else {
            assert!(j as u64 <= self.m[i - 1], "coordinate out of range");
            self.offsets[i - 1] + j - 1
        }
    }

    /// `c_i = m_i - m_1 + 1` for `i >= 2`, with a leading 0.
    pub fn steps(&self) -> LengthSet {
        core::iter::once(0)
            .chain(self.m[1..].iter().map(|&mi| mi + 1 - self.m[0]))
            .collect()
    }

    pub fn gamma_profile(&self, x: &[i64]) -> GammaProfile {
        assert_eq!(x.len(), self.dim(), "vector has the wrong dimension");
        let gamma_ij: Vec<Vec<i64>> = self
            .offsets
            .iter()
            .zip(&self.m)
            .map(|(&o, &mi)| x[o..o + mi as usize].to_vec())
            .collect();
        let gamma: Vec<i64> = gamma_ij
            .iter()
            .map(|b| *b.iter().min().expect("blocks are non-empty"))
            .collect();
        let mut gamma_prime: Vec<i64> = gamma.iter().map(|&g| (-g).max(0)).collect();
        gamma_prime[0] = 0;
        let total: i64 = x.iter().sum();
        let m1 = self.m[0] as i64;
        let c = total
            + self.m[1..]
                .iter()
                .zip(&gamma_prime[1..])
                .map(|(&mi, &gp)| (mi as i64 - m1 + 1) * gp)
                .sum::<i64>();
        let k = gamma[0] - gamma_prime[1..].iter().sum::<i64>();
        GammaProfile {
            gamma_ij,
            gamma,
            gamma_prime,
            c,
            k,
        }
    }

    /// `x ∈ H` iff `γ_1(x) >= Σ_{i>=2} γ'_i(x)`.
    pub fn membership(&self, x: &[i64]) -> bool {
        self.gamma_profile(x).k >= 0
    }

    pub fn closed_length_set(&self, x: &[i64]) -> Result<LengthSet> {
        let p = self.gamma_profile(x);
        if p.k < 0 {
            return Err(Error::NotMember);
        }
        Ok(self.lengths_from(p.c as u64, p.k as u64))
    }

    /// `C + {Σ c_i β_i : Σ β_i <= k}`.
    pub fn lengths_from(&self, c: u64, k: u64) -> LengthSet {
        self.steps().nfold(k).shift(c)
    }

    /// `(C(x), k(x))` for the sum of the atoms with the given (sorted)
    /// indices, without building the vector.
    pub fn profile_of_atoms(&self, sorted: &[usize]) -> (u64, u64) {
        let dim = self.dim();
        let s = self.s();
        let m1 = self.m[0] as i64;
        let mut n0 = vec![0i64; s];
        let mut distinct = vec![0u64; s];
        let mut min_count = vec![i64::MAX; s];
        let mut total: i64 = 0;
        let mut pos = 0;
        while pos < sorted.len() {
            let a = sorted[pos];
            let mut run = 1;
            while pos + run < sorted.len() && sorted[pos + run] == a {
                run += 1;
            }
            let b = self.atom_block[a];
            if a < dim {
                distinct[b] += 1;
                min_count[b] = min_count[b].min(run as i64);
                total += run as i64;
            } else {
                n0[b] += run as i64;
                total += run as i64 * (m1 - self.m[b] as i64);
            }
            pos += run;
        }
        let block_min = |b: usize| {
            if distinct[b] == self.m[b] {
                min_count[b]
            } else {
                0
            }
        };
        let total0: i64 = n0.iter().sum();
        let gamma1 = total0 + block_min(0);
        let mut c = total;
        let mut sum_prime = 0;
        for (b, &nb) in n0.iter().enumerate().take(s).skip(1) {
            let gp = (nb - block_min(b)).max(0);
            c += (self.m[b] as i64 - m1 + 1) * gp;
            sum_prime += gp;
        }
        (c as u64, (gamma1 - sum_prime) as u64)
    }

    /// `𝒰_k(H)` from the closed form over every multiset of `k` atoms.
    pub fn unions(&self, k: u64, budget: u64) -> Result<UnionReport> {
        let atoms = self.presentation.atom_count();
        let estimate = multiset_count(atoms as u64, k);
        if estimate > budget as u128 {
            return Err(Error::Budget {
                what: "multisets of atoms",
                estimate,
                budget,
            });
        }
        let profiles: BTreeSet<(u64, u64)> = Multisets::new(atoms, k as usize)
            .map(|ms| self.profile_of_atoms(&ms))
            .collect();
        Ok(UnionReport::from_union(
            k,
            self.union_of_profiles(&profiles),
        ))
    }

    fn union_of_profiles(&self, profiles: &BTreeSet<(u64, u64)>) -> LengthSet {
        let mut by_k: Vec<LengthSet> = Vec::new();
        let mut out = LengthSet::new();
        for &(c, k) in profiles {
            while by_k.len() <= k as usize {
                by_k.push(self.steps().nfold(by_k.len() as u64));
            }
            out = out.union(&by_k[k as usize].shift(c));
        }
        out
    }

    /// The exact elasticity `max L / min L`: every length set satisfies
    /// `min 𝖫(x) = C(x) >= m_1 k(x)` and `max 𝖫(x) = C(x) + k(x) c_s`.
    pub fn elasticity(&self) -> Rational {
        ratio(self.l.max().unwrap(), self.l.min().unwrap())
    }

    /// Distance set `Δ(H) = ⋃_k Δ(k · steps)`, computed until the union has
    /// not changed for `max steps` consecutive multiples.
    pub fn distances(&self) -> Distances {
        let steps = self.steps();
        let g = steps.iter().fold(0, num_integer::gcd);
        let max = steps.delta_set().max().unwrap_or(0);
        let patience = steps.max().unwrap_or(1).max(2);
        let mut set = LengthSet::new();
        let mut acc = LengthSet::singleton(0);
        let mut quiet = 0;
        while quiet < patience {
            acc = acc.sumset(&steps);
            let next = set.union(&acc.delta_set());
            quiet = if next == set { quiet + 1 } else { 0 };
            set = next;
        }
        // All distances are multiples of g and at most max Δ(L), and sums
        // never create longer gaps than their summands.
        let certification = if set == LengthSet::progression(g, g, max) {
            Certification::Exact
        } else if set.min() == Some(g) && set.max() == Some(max) {
            Certification::Extremes
        } else {
            Certification::Partial
        };
        Distances { set, certification }
    }

    /// Checks properties (i)-(iii) of the construction.
    pub fn verify_realization(
        &self,
        delta_atoms: u64,
        ell_max: u64,
        budget: u64,
    ) -> Result<RealizationReport> {
        let min_l = self.l.min().unwrap();
        let max_l = self.l.max().unwrap();
        let union_at_min = self.unions(min_l, budget)?.union;

        let atoms = self.presentation.atom_count();
        let mut max_delta_seen = 0;
        for n in 1..=delta_atoms {
            let estimate = multiset_count(atoms as u64, n);
            if estimate > budget as u128 {
                return Err(Error::Budget {
                    what: "multisets of atoms",
                    estimate,
                    budget,
                });
            }
            let profiles: BTreeSet<(u64, u64)> = Multisets::new(atoms, n as usize)
                .map(|ms| self.profile_of_atoms(&ms))
                .collect();
            for &(c, k) in &profiles {
                let d = self.lengths_from(c, k).delta_set().max().unwrap_or(0);
                max_delta_seen = max_delta_seen.max(d);
            }
        }

        let mut rho_rows = Vec::new();
        for ell in 1..=ell_max {
            for nu in 0..min_l {
                let k = ell * min_l + nu;
                let got = self.unions(k, budget)?.rho;
                rho_rows.push(RhoRow {
                    k,
                    expected: ell * max_l + nu,
                    got,
                });
            }
        }
        Ok(RealizationReport {
            length_set: self.l.clone(),
            union_at_min,
            max_delta_expected: self.l.delta_set().max().unwrap_or(0),
            max_delta_seen,
            rho_rows,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RhoRow {
    pub k: u64,
    pub expected: u64,
    pub got: u64,
}

/// Outcome of [`RealizedKrull::verify_realization`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealizationReport {
    pub length_set: LengthSet,
    /// `𝒰_{min L}(H)`, which must equal `L`.
    pub union_at_min: LengthSet,
    pub max_delta_expected: u64,
    /// Largest distance over the elements that were enumerated.
    pub max_delta_seen: u64,
    /// `ρ_{ℓ min L + ν}(H)` against `ℓ max L + ν`.
    pub rho_rows: Vec<RhoRow>,
}

impl RealizationReport {
    pub fn union_ok(&self) -> bool {
        self.union_at_min == self.length_set
    }

    pub fn delta_ok(&self) -> bool {
        self.max_delta_seen == self.max_delta_expected
    }

    pub fn rho_ok(&self) -> bool {
        self.rho_rows.iter().all(|r| r.expected == r.got)
    }

    pub fn passed(&self) -> bool {
        self.union_ok() && self.delta_ok() && self.rho_ok()
    }
}

/// A realized monoid as a family of length sets, with unions from the closed
/// form.
#[derive(Debug, Clone)]
pub struct RealizedSource {
    pub realized: RealizedKrull,
    pub budget: u64,
}

impl UnionSource for RealizedSource {
    fn union(&self, k: u64) -> Result<LengthSet> {
        Ok(self.realized.unions(k, self.budget)?.union)
    }

    fn distances(&self) -> Result<Distances> {
        Ok(self.realized.distances())
    }

    fn elasticity(&self) -> Option<Rational> {
        Some(self.realized.elasticity())
    }
}

/// Parameters of the coproduct counterexample up to a horizon `K`.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CounterexampleSpec {
    pub d: u64,
    /// `m_0, ..., m_K` with `m_0 = 0` and `m_1 = 1`.
    pub m: Vec<u64>,
    /// `U_1, ..., U_K` with `U_1` empty.
    pub u: Vec<LengthSet>,
}

/// A violated hypothesis of the counterexample.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// The growth condition fails at this `k`.
    Growth {
        k: u64,
    },
    /// A condition on `U_k` fails.
    Progression {
        k: u64,
        reason: &'static str,
    },
    Start,
}

/// `Σ_{i=1}^{k-2} ((k/i) m_i + (i - 1))`, the left side of the growth
/// condition at `k`.
pub fn growth_lhs(m: &[u64], k: u64) -> Rational {
    (1..k.saturating_sub(1))
        .map(|i| ratio(k * m[i as usize], i) + ratio(i - 1, 1))
        .fold(ratio(0, 1), |acc, v| acc + v)
}

/// Whether the growth condition holds at `k`; needs `m_{k-1}`.
pub fn growth_holds(m: &[u64], k: u64) -> bool {
    let rhs = m[k as usize - 1] as i64 - (k as i64 - 1);
    growth_lhs(m, k) <= Rational::from_integer(rhs.into())
}

impl CounterexampleSpec {
    pub fn horizon(&self) -> u64 {
        self.m.len() as u64 - 1
    }

    /// The smallest admissible instance, with `U_k` the progression of
    /// difference 2 from `m_{k-1} + 2` to `m_k`.
    pub fn admissible_instance(d: u64, horizon: u64) -> Result<Self> {
        if d < 2 || horizon < 2 {
            return Err(Error::InvalidArgument("need d >= 2 and K >= 2".into()));
        }
        let mut m = vec![0, 1];
        let mut u = vec![LengthSet::new()];
        for k in 2..=horizon {
            let prev = m[k as usize - 1];
            // The growth condition at k + 1 bounds m_k from below.
            let need = growth_lhs(&m, k + 1) + ratio(k, 1);
            let need = need.ceil().to_integer().to_u64().unwrap_or(0);
            let mut mk = need.max(prev + 2);
            if (mk - prev) % 2 == 1 {
                mk += 1;
            }
            m.push(mk);
            u.push(LengthSet::progression(prev + 2, 2, mk));
        }
        let spec = CounterexampleSpec { d, m, u };
        spec.validate().map_err(|v| {
            Error::InvalidArgument(format!("generated instance is not admissible: {v:?}"))
        })?;
        Ok(spec)
    }

    /// Checks every hypothesis. The growth condition is checked for
    /// `3 <= k <= K + 1`, which covers every `m_k` up to the horizon.
    pub fn validate(&self) -> core::result::Result<(), Violation> {
        let horizon = self.horizon();
        if self.m.len() < 2 || self.m[0] != 0 || self.m[1] != 1 || self.u.len() != horizon as usize
        {
            return Err(Violation::Start);
        }
        if !self.u[0].is_empty() {
            return Err(Violation::Progression {
                k: 1,
                reason: "U_1 must be empty",
            });
        }
        for k in 3..=horizon + 1 {
            if !growth_holds(&self.m, k) {
                return Err(Violation::Growth { k });
            }
        }
        for k in 2..=horizon {
            let uk = &self.u[k as usize - 1];
            let prev = self.m[k as usize - 1];
            let bad = |reason| Err(Violation::Progression { k, reason });
            let (Some(lo), Some(hi)) = (uk.min(), uk.max()) else {
                return bad("U_k is empty");
            };
            if lo <= prev + 1 || lo > prev + self.d {
                return bad("min U_k out of range");
            }
            if hi != self.m[k as usize] {
                return bad("max U_k differs from m_k");
            }
            if uk.delta_set().max().unwrap_or(0) > self.d {
                return bad("U_k has a gap above d");
            }
            if uk.contains(lo + 1) {
                return bad("min U_k + 1 lies in U_k");
            }
        }
        Ok(())
    }

    /// `L_k = [k, m_{k-1} + 1] ⊎ U_k`.
    pub fn l(&self, k: u64) -> LengthSet {
        LengthSet::interval(k, self.m[k as usize - 1] + 1).union(&self.u[k as usize - 1])
    }

    /// The component `H_k` for `k >= 2`.
    pub fn component(&self, k: u64) -> Result<RealizedKrull> {
        RealizedKrull::realize(&self.l(k))
    }
}

/// How [`counterexample_unions`] computes its answer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnionRoute {
    /// `𝒰_k ∩ N_{>=k} = L_k`, and the part below `k` by reciprocity.
    ClosedForm,
    /// Product unions over `H_1 × ... × H_k` with component unions from the
    /// closed length formula over atom multisets. Diagonal and lower
    /// component unions (`𝒰_ν(H_j)` with `ν <= j`) fall back to `{ν}` and
    /// `L_j` when enumeration would exceed the budget.
    TruncatedProduct { budget: u64 },
}

/// `𝒰_ν(H_j)` for `ν = 0..=k`.
pub fn component_unions(
    spec: &CounterexampleSpec,
    j: u64,
    k: u64,
    budget: u64,
) -> Result<Vec<LengthSet>> {
    if j == 1 {
        return Ok((0..=k).map(LengthSet::singleton).collect());
    }
    let h = spec.component(j)?;
    let atoms = h.presentation().atom_count() as u64;
    let mut out = vec![LengthSet::singleton(0)];
    for nu in 1..=k {
        if multiset_count(atoms, nu) <= budget as u128 {
            out.push(h.unions(nu, budget)?.union);
        } else if nu < j {
            // Fewer than min L_j atoms: C(x) >= j k(x) forces k(x) = 0.
            out.push(LengthSet::singleton(nu));
        } else if nu == j {
            out.push(spec.l(j));
        } else {
            return Err(Error::Budget {
                what: "multisets of atoms",
                estimate: multiset_count(atoms, nu),
                budget,
            });
        }
    }
    Ok(out)
}

/// `𝒰_k(H)` of the counterexample coproduct.
pub fn counterexample_unions(
    spec: &CounterexampleSpec,
    k: u64,
    route: UnionRoute,
) -> Result<LengthSet> {
    if k == 0 || k > spec.horizon() {
        return Err(Error::InvalidArgument(format!(
            "k = {k} outside 1..={}",
            spec.horizon()
        )));
    }
    match route {
        UnionRoute::ClosedForm => {
            let below: LengthSet = (1..k).filter(|&h| spec.l(h).contains(k)).collect();
            Ok(below.union(&spec.l(k)))
        }
        UnionRoute::TruncatedProduct { budget } => {
            let comps = (1..=k)
                .map(|j| component_unions(spec, j, k, budget))
                .collect::<Result<Vec<_>>>()?;
            Ok(product_unions(&comps, k as usize)[k as usize].clone())
        }
    }
}

/// `ρ_k(H_1 × ... × H_{k-1})`, which equals `1 + m_{k-1}`.
pub fn partial_product_rho(spec: &CounterexampleSpec, k: u64, budget: u64) -> Result<u64> {
    let comps = (1..k)
        .map(|j| component_unions(spec, j, k, budget))
        .collect::<Result<Vec<_>>>()?;
    Ok(product_unions(&comps, k as usize)[k as usize].sup())
}

/// The counterexample coproduct as a family; only the horizon is available.
#[derive(Debug, Clone)]
pub struct CounterexampleSource {
    pub spec: CounterexampleSpec,
    pub route: UnionRoute,
}

impl UnionSource for CounterexampleSource {
    fn union(&self, k: u64) -> Result<LengthSet> {
        if k > self.spec.horizon() {
            return Err(Error::Uncertified {
                k,
                reason: format!("the instance stops at K = {}", self.spec.horizon()),
            });
        }
        counterexample_unions(&self.spec, k, self.route)
    }

    /// Every component has distances in `[1, d]` with both ends attained
    /// (intervals give 1, the `U_k` give 2), and so does the coproduct.
    fn distances(&self) -> Result<Distances> {
        let mut set = LengthSet::new();
        for k in 2..=self.spec.horizon() {
            set = set.union(&self.spec.l(k).delta_set());
        }
        let certification = if set == LengthSet::interval(1, self.spec.d) {
            Certification::Exact
        } else {
            Certification::Partial
        };
        Ok(Distances { set, certification })
    }
}
