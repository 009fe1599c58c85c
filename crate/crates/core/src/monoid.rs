//! Finitely generated monoids embedded in `Z^dim`, given by their atoms.
//!
//! Elements are lattice vectors, factorizations are exponent vectors over the
//! atom list. Every presentation carries a strictly positive grading, which
//! bounds factorization lengths and makes all enumerations terminate.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::grading::find_grading;
use crate::lengths::LengthSet;
use crate::multiset::{multiset_count, Multisets};
use crate::{Error, Result};

/// A monoid `H ⊆ Z^dim` generated by a list of atoms.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct AtomPresentation {
    dim: usize,
    atoms: Vec<Vec<i64>>,
    grading: Vec<i64>,
}

/// An exponent vector over the atoms of a presentation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Factorization(pub Vec<u64>);

impl Factorization {
    pub fn zero(s: usize) -> Self {
        Factorization(vec![0; s])
    }

    pub fn unit(s: usize, i: usize) -> Self {
        let mut z = vec![0; s];
        z[i] = 1;
        Factorization(z)
    }

    /// `|z|`, the number of atoms counted with multiplicity.
    pub fn length(&self) -> u64 {
        self.0.iter().sum()
    }

    pub fn exponents(&self) -> &[u64] {
        &self.0
    }

    pub fn contains_atom(&self, i: usize) -> bool {
        self.0[i] > 0
    }
}

/// The factorization distance: strip the common part, take the longer rest.
pub fn distance(z: &Factorization, w: &Factorization) -> u64 {
    let (mut a, mut b) = (0, 0);
    for (&x, &y) in z.0.iter().zip(&w.0) {
        let common = x.min(y);
        a += x - common;
        b += y - common;
    }
    a.max(b)
}

/// `𝒰_k` of a monoid together with its extremes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnionReport {
    pub k: u64,
    pub union: LengthSet,
    pub lambda: u64,
    pub rho: u64,
}

impl UnionReport {
    pub(crate) fn from_union(k: u64, union: LengthSet) -> Self {
        UnionReport {
            k,
            lambda: union.min().unwrap_or(k),
            rho: union.max().unwrap_or(k),
            union,
        }
    }
}

impl AtomPresentation {
    /// Validates the atoms and finds a grading when none is supplied.
    pub fn new(dim: usize, atoms: Vec<Vec<i64>>, grading: Option<Vec<i64>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidPresentation(
                "dimension must be positive".into(),
            ));
        }
        for (i, a) in atoms.iter().enumerate() {
            if a.len() != dim {
                return Err(Error::InvalidPresentation(format!(
                    "atom {i} has {} coordinates, expected {dim}",
                    a.len()
                )));
            }
            if a.iter().all(|&v| v == 0) {
                return Err(Error::InvalidPresentation(format!("atom {i} is zero")));
            }
        }
        let distinct: BTreeSet<&Vec<i64>> = atoms.iter().collect();
        if distinct.len() != atoms.len() {
            return Err(Error::InvalidPresentation("atoms are not distinct".into()));
        }
        let grading = match grading {
            Some(g) => {
                if g.len() != dim {
                    return Err(Error::InvalidPresentation(format!(
                        "grading has {} coordinates, expected {dim}",
                        g.len()
                    )));
                }
                if let Some(i) = atoms.iter().position(|a| dot(&g, a) <= 0) {
                    return Err(Error::InvalidPresentation(format!(
                        "grading is not positive on atom {i}"
                    )));
                }
                g
            }
            None => find_grading(dim, &atoms).ok_or_else(|| {
                Error::UnsupportedPresentation("no strictly positive grading exists".into())
            })?,
        };
        Ok(AtomPresentation {
            dim,
            atoms,
            grading,
        })
    }

    /// The numerical monoid generated by the given positive integers.
    pub fn numerical(generators: &[i64]) -> Result<Self> {
        Self::new(1, generators.iter().map(|&g| vec![g]).collect(), None)
    }

    /// The free monoid of rank `n` (atoms are the standard basis).
    pub fn free(n: usize) -> Self {
        let atoms = (0..n)
            .map(|i| {
                let mut v = vec![0; n];
                v[i] = 1;
                v
            })
            .collect();
        AtomPresentation {
            dim: n,
            atoms,
            grading: vec![1; n],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn atoms(&self) -> &[Vec<i64>] {
        &self.atoms
    }

    pub fn atom_count(&self) -> usize {
        self.atoms.len()
    }

    pub fn grading(&self) -> &[i64] {
        &self.grading
    }

    pub fn grade(&self, x: &[i64]) -> i64 {
        dot(&self.grading, x)
    }

    /// `π(z) = Σ z_i a_i`.
    pub fn evaluate(&self, z: &Factorization) -> Vec<i64> {
        let mut x = vec![0; self.dim];
        for (a, &c) in self.atoms.iter().zip(&z.0) {
            if c > 0 {
                for (xi, &ai) in x.iter_mut().zip(a) {
                    *xi += ai * c as i64;
                }
            }
        }
        x
    }

    /// The sum of the atoms with the given indices.
    pub fn sum_of(&self, indices: &[usize]) -> Vec<i64> {
        let mut x = vec![0; self.dim];
        for &i in indices {
            for (xi, &ai) in x.iter_mut().zip(&self.atoms[i]) {
                *xi += ai;
            }
        }
        x
    }

    /// Checks that no generator is a sum of two or more generators.
    ///
    /// Returns the index of an offending generator and one of its longer
    /// factorizations.
    pub fn verify_atoms(&self) -> core::result::Result<(), (usize, Factorization)> {
        for (i, a) in self.atoms.iter().enumerate() {
            let mut found = None;
            self.search(a, &mut |z| {
                if z.length() >= 2 {
                    found = Some(z.clone());
                    false
                } else {
                    true
                }
            });
            if let Some(z) = found {
                return Err((i, z));
            }
        }
        Ok(())
    }

    /// All factorizations of `x`, sorted lexicographically. Empty iff
    /// `x ∉ H`.
    pub fn factorizations(&self, x: &[i64]) -> Vec<Factorization> {
        let mut out = Vec::new();
        self.search(x, &mut |z| {
            out.push(z.clone());
            true
        });
        out.sort();
        out
    }

    /// True if `x ∈ H`.
    pub fn contains(&self, x: &[i64]) -> bool {
        let mut found = false;
        self.search(x, &mut |_| {
            found = true;
            false
        });
        found
    }

    /// The set of lengths `𝖫(x)`, computed by a memoized search over the
    /// atoms that does not list factorizations individually.
    pub fn length_set(&self, x: &[i64]) -> LengthSet {
        let plan = SearchPlan::new(self);
        let mut memo = BTreeMap::new();
        let lengths = plan.lengths(0, x.to_vec(), &mut memo);
        LengthSet::from_sorted_unchecked(lengths)
    }

    /// `𝒰_k(H)`, by enumerating every multiset of `k` atoms.
    ///
    /// Fails with a budget error if the number of multisets exceeds `budget`.
    pub fn unions(&self, k: u64, budget: u64) -> Result<UnionReport> {
        self.unions_with(k, budget, |x| Ok(self.length_set(x)))
    }

    /// `𝒰_k(H)` with a caller-supplied length-set oracle.
    pub fn unions_with<F>(&self, k: u64, budget: u64, mut lengths: F) -> Result<UnionReport>
    where
        F: FnMut(&[i64]) -> Result<LengthSet>,
    {
        let estimate = multiset_count(self.atoms.len() as u64, k);
        if estimate > budget as u128 {
            return Err(Error::Budget {
                what: "multisets of atoms",
                estimate,
                budget,
            });
        }
        let mut seen = BTreeSet::new();
        let mut union = LengthSet::new();
        for ms in Multisets::new(self.atoms.len(), k as usize) {
            let x = self.sum_of(&ms);
            if seen.insert(x.clone()) {
                union = union.union(&lengths(&x)?);
            }
        }
        Ok(UnionReport::from_union(k, union))
    }

    /// Every distinct element that is a sum of exactly `k` atoms.
    pub fn elements_of_length(&self, k: u64, budget: u64) -> Result<Vec<Vec<i64>>> {
        let estimate = multiset_count(self.atoms.len() as u64, k);
        if estimate > budget as u128 {
            return Err(Error::Budget {
                what: "multisets of atoms",
                estimate,
                budget,
            });
        }
        let set: BTreeSet<Vec<i64>> = Multisets::new(self.atoms.len(), k as usize)
            .map(|ms| self.sum_of(&ms))
            .collect();
        Ok(set.into_iter().collect())
    }

    /// Distances `Δ(H)` seen on the elements that are sums of at most
    /// `max_atoms` atoms.
    pub fn observed_distances(&self, max_atoms: u64, budget: u64) -> Result<LengthSet> {
        let mut out = LengthSet::new();
        for k in 2..=max_atoms {
            for x in self.elements_of_length(k, budget)? {
                out = out.union(&self.length_set(&x).delta_set());
            }
        }
        Ok(out)
    }

    /// The catenary degree `𝖼(x)`; 0 when `x` has at most one factorization.
    pub fn catenary_degree(&self, x: &[i64]) -> u64 {
        catenary_of(&self.factorizations(x))
    }

    /// Depth-first search over the factorizations of `x`. The visitor returns
    /// `false` to stop.
    fn search<F: FnMut(&Factorization) -> bool>(&self, x: &[i64], visit: &mut F) {
        let plan = SearchPlan::new(self);
        let mut z = vec![0u64; self.atoms.len()];
        let mut residual = x.to_vec();
        plan.dfs(0, &mut residual, &mut z, visit);
    }
}

/// The catenary degree of a set of factorizations of one element.
pub fn catenary_of(zs: &[Factorization]) -> u64 {
    if zs.len() <= 1 {
        return 0;
    }
    let n = zs.len();
    let mut edges: Vec<(u64, usize, usize)> = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            edges.push((distance(&zs[i], &zs[j]), i, j));
        }
    }
    // Kruskal: the bottleneck edge of a minimum spanning tree is the
    // smallest threshold that connects the graph.
    edges.sort_unstable();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut v: usize) -> usize {
        while parent[v] != v {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        v
    }
    let mut components = n;
    for (d, i, j) in edges {
        let (a, b) = (find(&mut parent, i), find(&mut parent, j));
        if a != b {
            parent[a] = b;
            components -= 1;
            if components == 1 {
                return d;
            }
        }
    }
    unreachable!("complete graph is connected")
}

pub(crate) fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Atom order and per-suffix sign information shared by the searches.
struct SearchPlan<'a> {
    p: &'a AtomPresentation,
    /// Atom indices sorted by grade, largest first.
    order: Vec<usize>,
    grades: Vec<i64>,
    /// For each suffix of `order` and coordinate: can the suffix still add
    /// positive (bit 0) or negative (bit 1) amounts?
    signs: Vec<Vec<u8>>,
}

impl<'a> SearchPlan<'a> {
    fn new(p: &'a AtomPresentation) -> Self {
        let mut order: Vec<usize> = (0..p.atoms.len()).collect();
        order.sort_by_key(|&i| (core::cmp::Reverse(p.grade(&p.atoms[i])), i));
        let grades = order.iter().map(|&i| p.grade(&p.atoms[i])).collect();
        let mut signs = vec![vec![0u8; p.dim]; order.len() + 1];
        for pos in (0..order.len()).rev() {
            let a = &p.atoms[order[pos]];
            let mut row = signs[pos + 1].clone();
            for (s, &v) in row.iter_mut().zip(a) {
                if v > 0 {
                    *s |= 1;
                } else if v < 0 {
                    *s |= 2;
                }
            }
            signs[pos] = row;
        }
        SearchPlan {
            p,
            order,
            grades,
            signs,
        }
    }

    /// Can the atoms from `pos` on still sum to `residual`?
    fn feasible(&self, pos: usize, residual: &[i64]) -> bool {
        self.signs[pos]
            .iter()
            .zip(residual)
            .all(|(&s, &r)| (r <= 0 || s & 1 != 0) && (r >= 0 || s & 2 != 0))
    }

    fn dfs<F: FnMut(&Factorization) -> bool>(
        &self,
        pos: usize,
        residual: &mut Vec<i64>,
        z: &mut Vec<u64>,
        visit: &mut F,
    ) -> bool {
        if residual.iter().all(|&r| r == 0) {
            // Every atom has positive grade, so nothing more can be added.
            let f = Factorization(z.clone());
            return visit(&f);
        }
        if pos == self.order.len() || !self.feasible(pos, residual) {
            return true;
        }
        // A non-zero residual of non-positive grade has no factorization.
        if self.p.grade(residual) <= 0 {
            return true;
        }
        let idx = self.order[pos];
        let atom = &self.p.atoms[idx];
        let g = self.grades[pos];
        let max_count = self.p.grade(residual) / g;
        // Try larger multiplicities last so output is built bottom-up; the
        // caller sorts anyway.
        let mut count = 0;
        loop {
            if !self.dfs(pos + 1, residual, z, visit) {
                for (r, &a) in residual.iter_mut().zip(atom) {
                    *r += a * count;
                }
                z[idx] = 0;
                return false;
            }
            if count == max_count {
                break;
            }
            count += 1;
            z[idx] += 1;
            for (r, &a) in residual.iter_mut().zip(atom) {
                *r -= a;
            }
        }
        for (r, &a) in residual.iter_mut().zip(atom) {
            *r += a * count;
        }
        z[idx] = 0;
        true
    }

    /// Sorted lengths of all factorizations of `residual` using atoms from
    /// `pos` on.
    fn lengths(
        &self,
        pos: usize,
        residual: Vec<i64>,
        memo: &mut BTreeMap<(usize, Vec<i64>), Vec<u64>>,
    ) -> Vec<u64> {
        if residual.iter().all(|&r| r == 0) {
            return vec![0];
        }
        if pos == self.order.len() || !self.feasible(pos, &residual) || self.p.grade(&residual) <= 0
        {
            return Vec::new();
        }
        let key = (pos, residual);
        if let Some(v) = memo.get(&key) {
            return v.clone();
        }
        let (_, mut residual) = key;
        let atom = &self.p.atoms[self.order[pos]];
        let max_count = self.p.grade(&residual) / self.grades[pos];
        let original = residual.clone();
        let mut out = BTreeSet::new();
        for count in 0..=max_count {
            if count > 0 {
                for (r, &a) in residual.iter_mut().zip(atom) {
                    *r -= a;
                }
            }
            for l in self.lengths(pos + 1, residual.clone(), memo) {
                out.insert(l + count as u64);
            }
        }
        let v: Vec<u64> = out.into_iter().collect();
        memo.insert((pos, original), v.clone());
        v
    }
}

/// Minimal zero-sum sequences over a finite abelian group.
///
/// The group is `Z_{n_1} ⊕ ... ⊕ Z_{n_r}`; `subset` restricts the support
/// (defaults to the whole group, in lexicographic order of coordinates).
/// The presentation lives in `Z^{|G_0|}` with multiplicity vectors as atoms
/// and the all-ones grading.
pub fn zero_sum_presentation(
    invariant_factors: &[u64],
    subset: Option<&[Vec<u64>]>,
) -> Result<AtomPresentation> {
    if invariant_factors.is_empty() || invariant_factors.contains(&0) {
        return Err(Error::InvalidArgument(
            "invariant factors must be positive".into(),
        ));
    }
    let group = group_elements(invariant_factors);
    let g0: Vec<Vec<u64>> = match subset {
        Some(s) => {
            let mut v: Vec<Vec<u64>> = Vec::new();
            for g in s {
                if g.len() != invariant_factors.len()
                    || g.iter().zip(invariant_factors).any(|(x, n)| x >= n)
                {
                    return Err(Error::InvalidArgument(format!(
                        "{g:?} is not a group element"
                    )));
                }
                if !v.contains(g) {
                    v.push(g.clone());
                }
            }
            v
        }
        None => group,
    };
    let order: u64 = invariant_factors.iter().product();
    let atoms = minimal_zero_sums(invariant_factors, &g0, order as usize);
    let dim = g0.len();
    let atoms: Vec<Vec<i64>> = atoms
        .into_iter()
        .map(|m| m.into_iter().map(|c| c as i64).collect())
        .collect();
    if atoms.is_empty() {
        return Err(Error::InvalidArgument("the monoid has no atoms".into()));
    }
    AtomPresentation::new(dim, atoms, Some(vec![1; dim]))
}

/// The Davenport constant as the longest atom of a zero-sum presentation.
pub fn davenport_constant(p: &AtomPresentation) -> u64 {
    p.atoms()
        .iter()
        .map(|a| a.iter().sum::<i64>() as u64)
        .max()
        .unwrap_or(0)
}

fn group_elements(factors: &[u64]) -> Vec<Vec<u64>> {
    let mut out = vec![Vec::new()];
    for &n in factors {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..n).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

/// Group elements are encoded as mixed-radix integers so subset sums can be
/// tracked as bitsets over `0..|G|`.
fn minimal_zero_sums(factors: &[u64], g0: &[Vec<u64>], max_len: usize) -> Vec<Vec<u64>> {
    let order: usize = factors.iter().product::<u64>() as usize;
    let encode = |v: &[u64]| {
        v.iter()
            .zip(factors)
            .fold(0usize, |acc, (&x, &n)| acc * n as usize + x as usize)
    };
    let add = |a: usize, b: usize| -> usize {
        let mut out = 0usize;
        let mut place = 1usize;
        let (mut a, mut b) = (a, b);
        for &n in factors.iter().rev() {
            let n = n as usize;
            out += ((a % n + b % n) % n) * place;
            place *= n;
            a /= n;
            b /= n;
        }
        out
    };
    let codes: Vec<usize> = g0.iter().map(|g| encode(g)).collect();
    let mut out = Vec::new();
    let mut counts = vec![0u64; g0.len()];
    // `sums[i]` = set of group elements that are sums of nonempty
    // subsequences of the current sequence.
    let empty = vec![false; order];
    zero_sum_dfs(
        0,
        &codes,
        &add,
        &mut counts,
        &empty,
        0,
        0,
        max_len,
        &mut out,
    );
    out.sort();
    out
}

#[allow(clippy::too_many_arguments)]
fn zero_sum_dfs(
    start: usize,
    codes: &[usize],
    add: &dyn Fn(usize, usize) -> usize,
    counts: &mut Vec<u64>,
    sums: &[bool],
    total: usize,
    len: usize,
    max_len: usize,
    out: &mut Vec<Vec<u64>>,
) {
    if len == max_len {
        return;
    }
    for i in start..codes.len() {
        let g = codes[i];
        // Appending g: new nonempty subsums are the old ones, g, and g + old.
        let mut next = sums.to_vec();
        next[g] = true;
        for (s, &present) in sums.iter().enumerate() {
            if present {
                next[add(s, g)] = true;
            }
        }
        let new_total = add(total, g);
        counts[i] += 1;
        if new_total == 0 {
            // The prefix has no zero subsum (we never extend one that does),
            // so this zero-sum sequence is minimal.
            out.push(counts.clone());
        } else if !next[0] {
            zero_sum_dfs(
                i,
                codes,
                add,
                counts,
                &next,
                new_total,
                len + 1,
                max_len,
                out,
            );
        }
        counts[i] -= 1;
    }
}

/// The direct sum of several presentations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductPresentation {
    pub components: Vec<AtomPresentation>,
}

impl ProductPresentation {
    pub fn new(components: Vec<AtomPresentation>) -> Self {
        ProductPresentation { components }
    }

    pub fn dim(&self) -> usize {
        self.components.iter().map(|c| c.dim()).sum()
    }

    /// The product as a single presentation on the concatenated lattice.
    pub fn flatten(&self) -> AtomPresentation {
        let dim = self.dim();
        let mut atoms = Vec::new();
        let mut grading = Vec::with_capacity(dim);
        let mut offset = 0;
        for c in &self.components {
            for a in c.atoms() {
                let mut v = vec![0; dim];
                v[offset..offset + c.dim()].copy_from_slice(a);
                atoms.push(v);
            }
            grading.extend_from_slice(c.grading());
            offset += c.dim();
        }
        AtomPresentation {
            dim,
            atoms,
            grading,
        }
    }
}

/// `𝒰_k(S × T) = ⋃_{ν=0}^{k} (𝒰_ν(S) + 𝒰_{k-ν}(T))`, with `𝒰_0 = {0}`.
///
/// `left[ν]` and `right[ν]` hold `𝒰_ν` for `ν = 0..=k`.
pub fn product_union(left: &[LengthSet], right: &[LengthSet], k: usize) -> LengthSet {
    let mut out = LengthSet::new();
    for nu in 0..=k {
        out = out.union(&left[nu].sumset(&right[k - nu]));
    }
    out
}

/// Unions `𝒰_0..=𝒰_k` of a product of several components, folding
/// [`product_union`] from the left. Each entry of `components` lists
/// `𝒰_0..=𝒰_k` of one component.
pub fn product_unions(components: &[Vec<LengthSet>], k: usize) -> Vec<LengthSet> {
    let mut acc: Vec<LengthSet> = (0..=k)
        .map(|j| {
            if j == 0 {
                LengthSet::singleton(0)
            } else {
                LengthSet::new()
            }
        })
        .collect();
    for comp in components {
        acc = (0..=k).map(|j| product_union(&acc, comp, j)).collect();
    }
    acc
}

/// `𝒰_0..=𝒰_k` of a presentation, with `𝒰_0 = {0}`.
pub fn unions_table(p: &AtomPresentation, k: u64, budget: u64) -> Result<Vec<LengthSet>> {
    let mut out = vec![LengthSet::singleton(0)];
    for j in 1..=k {
        out.push(p.unions(j, budget)?.union);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn negative_grade_is_not_a_member() {
        let p = AtomPresentation::new(2, vec![vec![1, 1], vec![0, 1], vec![1, -1]], None).unwrap();
        assert!(!p.contains(&[0, -2]));
        assert!(p.length_set(&[-1, -3]).is_empty());
        assert!(p.contains(&[2, 0]));
    }

    #[test]
    fn numerical_two_three() {
        let p = AtomPresentation::numerical(&[2, 3]).unwrap();
        let zs = p.factorizations(&[6]);
        assert_eq!(
            zs,
            vec![Factorization(vec![0, 2]), Factorization(vec![3, 0])]
        );
        assert_eq!(p.length_set(&[6]), LengthSet::from([2, 3]));
        assert_eq!(p.catenary_degree(&[6]), 3);
        assert_eq!(p.factorizations(&[0]), vec![Factorization(vec![0, 0])]);
        assert!(p.factorizations(&[1]).is_empty());
        assert_eq!(p.unions(2, 1000).unwrap().union, LengthSet::from([2, 3]));
        assert!(p.verify_atoms().is_ok());
    }

    #[test]
    fn detects_decomposable_generator() {
        let p = AtomPresentation::numerical(&[2, 3, 5]).unwrap();
        let (i, z) = p.verify_atoms().unwrap_err();
        assert_eq!(i, 2);
        assert_eq!(z, Factorization(vec![1, 1, 0]));
    }

    #[test]
    fn distances() {
        let f = |v: &[u64]| Factorization(v.to_vec());
        assert_eq!(distance(&f(&[3, 0]), &f(&[0, 2])), 3);
        assert_eq!(distance(&f(&[2, 1]), &f(&[0, 2])), 2);
        assert_eq!(distance(&f(&[2, 1]), &f(&[2, 1])), 0);
    }

    #[test]
    fn zero_sum_atoms() {
        let z2 = zero_sum_presentation(&[2], None).unwrap();
        assert_eq!(z2.atoms(), &[vec![0, 2], vec![1, 0]]);
        assert_eq!(davenport_constant(&z2), 2);
        let z3 = zero_sum_presentation(&[3], None).unwrap();
        assert_eq!(z3.atom_count(), 4);
        assert_eq!(davenport_constant(&z3), 3);
        let k4 = zero_sum_presentation(&[2, 2], None).unwrap();
        assert_eq!(davenport_constant(&k4), 3);
        assert_eq!(z3.unions(2, 1000).unwrap().union, LengthSet::from([2, 3]));
    }

    #[test]
    fn rejects_bad_presentations() {
        assert!(AtomPresentation::new(1, vec![vec![1], vec![-1]], None).is_err());
        assert!(AtomPresentation::new(1, vec![vec![0]], None).is_err());
        assert!(AtomPresentation::new(1, vec![vec![2], vec![2]], None).is_err());
        assert!(AtomPresentation::new(2, vec![vec![1]], None).is_err());
    }

    #[test]
    fn product_of_free_monoids() {
        let f = unions_table(&AtomPresentation::free(2), 4, 100).unwrap();
        let g = unions_table(&AtomPresentation::free(1), 4, 100).unwrap();
        let u = product_unions(&[f, g], 4);
        for (k, set) in u.iter().enumerate() {
            assert_eq!(set, &LengthSet::singleton(k as u64));
        }
    }
}
