//! Minimal points of the monoid of relations and the invariants derived from
//! them: exact elasticity, a bound for the distance set, `ω(H, u)` and the
//! tame degree `𝗍(H, u)`.
//!
//! All of these reduce to minimal nonnegative solutions of a homogeneous
//! linear Diophantine system `A x = 0`, possibly with one variable bounded by
//! 1 to encode an inhomogeneous right-hand side. They are computed with the
//! Contejean–Devie completion: starting from the unit vectors, a non-solution
//! `p` is only extended by `e_j` when `⟨A p, A e_j⟩ < 0`, and candidates that
//! dominate a known solution are discarded.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use crate::monoid::{distance, AtomPresentation, Factorization};
use crate::{ratio, Error, Rational, Result};

/// Default cap on the number of candidates the completion may visit.
pub const DEFAULT_COMPLETION_BUDGET: u64 = 20_000_000;

/// A pair of factorizations of the same element.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct RelationPair {
    pub x: Vec<u64>,
    pub y: Vec<u64>,
}

impl RelationPair {
    pub fn x_len(&self) -> u64 {
        self.x.iter().sum()
    }

    pub fn y_len(&self) -> u64 {
        self.y.iter().sum()
    }
}

/// Minimal nonzero solutions of `Σ_j x_j columns[j] = 0` in `N_0^n`, where
/// variables flagged in `unit_bounded` may only take the values 0 and 1.
///
/// Solutions are returned sorted.
pub(crate) fn minimal_solutions(
    columns: &[Vec<i64>],
    unit_bounded: &[bool],
    budget: u64,
) -> Result<Vec<Vec<u64>>> {
    let n = columns.len();
    let rows = columns.first().map_or(0, |c| c.len());
    let dot = |a: &[i64], b: &[i64]| -> i64 { a.iter().zip(b).map(|(x, y)| x * y).sum() };

    let mut solutions: Vec<Vec<u64>> = Vec::new();
    // Frontier entries carry the image `A p` next to `p`.
    let mut frontier: BTreeSet<(Vec<u64>, Vec<i64>)> = BTreeSet::new();
    for (j, c) in columns.iter().enumerate() {
        let mut p = vec![0; n];
        p[j] = 1;
        frontier.insert((p, c.clone()));
    }
    let mut visited: u64 = 0;
    while !frontier.is_empty() {
        visited += frontier.len() as u64;
        if visited > budget {
            return Err(Error::Budget {
                what: "completion candidates",
                estimate: visited as u128,
                budget,
            });
        }
        let mut rest = Vec::new();
        for (p, ap) in frontier {
            if ap.iter().all(|&v| v == 0) {
                solutions.push(p);
            } else {
                rest.push((p, ap));
            }
        }
        let mut next = BTreeSet::new();
        for (p, ap) in rest {
            for (j, c) in columns.iter().enumerate() {
                if unit_bounded[j] && p[j] >= 1 {
                    continue;
                }
                if dot(&ap, c) >= 0 {
                    continue;
                }
                let mut q = p.clone();
                q[j] += 1;
                if solutions.iter().any(|s| dominates(&q, s)) {
                    continue;
                }
                let aq: Vec<i64> = (0..rows).map(|r| ap[r] + c[r]).collect();
                next.insert((q, aq));
            }
        }
        frontier = next;
    }
    solutions.sort();
    Ok(solutions)
}

/// `a >= b` componentwise.
fn dominates(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x >= y)
}

/// Keeps only the componentwise-minimal vectors.
fn minimal_elements(mut v: Vec<Vec<u64>>) -> Vec<Vec<u64>> {
    v.sort_by_key(|x| x.iter().sum::<u64>());
    let mut out: Vec<Vec<u64>> = Vec::new();
    for x in v {
        if !out.iter().any(|m| dominates(&x, m)) {
            out.push(x);
        }
    }
    out.sort();
    out.dedup();
    out
}

fn neg(v: &[i64]) -> Vec<i64> {
    v.iter().map(|x| -x).collect()
}

/// The minimal points of `{(x, y) ≠ 0 : π(x) = π(y)}`.
pub fn minimal_relations(p: &AtomPresentation, budget: u64) -> Result<Vec<RelationPair>> {
    let s = p.atom_count();
    let mut columns: Vec<Vec<i64>> = p.atoms().to_vec();
    columns.extend(p.atoms().iter().map(|a| neg(a)));
    let sols = minimal_solutions(&columns, &vec![false; 2 * s], budget)?;
    Ok(sols
        .into_iter()
        .map(|v| RelationPair {
            x: v[..s].to_vec(),
            y: v[s..].to_vec(),
        })
        .collect())
}

/// Exact elasticity together with a minimal relation attaining it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElasticityCertificate {
    pub rho: Rational,
    pub witness: RelationPair,
}

/// `ρ(H) = max |x| / |y|` over the minimal relations.
pub fn exact_elasticity(p: &AtomPresentation, budget: u64) -> Result<ElasticityCertificate> {
    let rels = minimal_relations(p, budget)?;
    elasticity_from_relations(&rels)
        .ok_or_else(|| Error::InvalidPresentation("presentation has no atoms".into()))
}

pub fn elasticity_from_relations(rels: &[RelationPair]) -> Option<ElasticityCertificate> {
    rels.iter()
        .filter(|r| r.y_len() > 0)
        .map(|r| (ratio(r.x_len(), r.y_len()), r))
        .max_by(|a, b| a.0.cmp(&b.0).then_with(|| b.1.cmp(a.1)))
        .map(|(rho, r)| ElasticityCertificate {
            rho,
            witness: r.clone(),
        })
}

/// The minimal points of `{z : u divides π(z) in H}`.
pub fn divisibility_minimal_points(
    p: &AtomPresentation,
    u: usize,
    budget: u64,
) -> Result<Vec<Factorization>> {
    let a = p
        .atoms()
        .get(u)
        .ok_or_else(|| Error::InvalidArgument("atom index out of range".into()))?;
    element_divisibility_minimal_points(p, &a.clone(), budget)
}

/// The minimal points of `{z : a divides π(z) in H}` for any `a ∈ H`.
///
/// These are the `z`-parts of the minimal solutions of
/// `A z - A y - t a = 0` with `t = 1`.
pub fn element_divisibility_minimal_points(
    p: &AtomPresentation,
    a: &[i64],
    budget: u64,
) -> Result<Vec<Factorization>> {
    if a.len() != p.dim() {
        return Err(Error::InvalidArgument(
            "element has the wrong dimension".into(),
        ));
    }
    if !p.contains(a) {
        return Err(Error::NotMember);
    }
    let s = p.atom_count();
    let mut columns: Vec<Vec<i64>> = p.atoms().to_vec();
    columns.extend(p.atoms().iter().map(|a| neg(a)));
    columns.push(neg(a));
    let mut bounded = vec![false; 2 * s + 1];
    bounded[2 * s] = true;
    let sols = minimal_solutions(&columns, &bounded, budget)?;
    let zs: Vec<Vec<u64>> = sols
        .into_iter()
        .filter(|v| v[2 * s] == 1)
        .map(|v| v[..s].to_vec())
        .collect();
    Ok(minimal_elements(zs)
        .into_iter()
        .map(Factorization)
        .collect())
}

/// `ω(H, u)`: the longest minimal factorization divisible by `u`.
pub fn omega(p: &AtomPresentation, u: usize, budget: u64) -> Result<u64> {
    Ok(divisibility_minimal_points(p, u, budget)?
        .iter()
        .map(|z| z.length())
        .max()
        .unwrap_or(1))
}

/// `ω(H, a)` for an element `a`.
pub fn omega_of(p: &AtomPresentation, a: &[i64], budget: u64) -> Result<u64> {
    Ok(element_divisibility_minimal_points(p, a, budget)?
        .iter()
        .map(|z| z.length())
        .max()
        .unwrap_or(0))
}

/// The tame degree of an atom with the information needed to audit it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TameReport {
    pub value: u64,
    /// True when the value is exact rather than a lower bound.
    pub closed: bool,
}

/// `𝗍(H, u)`.
///
/// Every factorization `z` of an element divisible by `u` dominates a
/// minimal point `z0` of `{z : u | π(z)}`, and replacing `z0` by a nearest
/// `u`-containing factorization of `π(z0)` moves `z` by at most the same
/// distance. So the maximum over the minimal points is the exact value.
pub fn tame_degree(p: &AtomPresentation, u: usize, budget: u64) -> Result<TameReport> {
    let mins = divisibility_minimal_points(p, u, budget)?;
    let mut value = 0;
    for z0 in &mins {
        if z0.contains_atom(u) {
            continue;
        }
        let mut rest = p.evaluate(z0);
        for (r, &a) in rest.iter_mut().zip(&p.atoms()[u]) {
            *r -= a;
        }
        let best = p
            .factorizations(&rest)
            .into_iter()
            .map(|mut v| {
                v.0[u] += 1;
                distance(z0, &v)
            })
            .min()
            .expect("u divides π(z0)");
        value = value.max(best);
    }
    Ok(TameReport {
        value,
        closed: true,
    })
}

/// A lower bound for `𝗍(H, u)` from all elements that are sums of at most
/// `max_atoms` atoms. Closed once it reaches `ceiling` (an upper bound such
/// as `ρ_{ω(H,u)}(H)`).
pub fn tame_degree_bounded(
    p: &AtomPresentation,
    u: usize,
    max_atoms: u64,
    ceiling: Option<u64>,
    budget: u64,
) -> Result<TameReport> {
    let mut value = 0;
    for k in 1..=max_atoms {
        for x in p.elements_of_length(k, budget)? {
            let zs = p.factorizations(&x);
            let with_u: Vec<&Factorization> = zs.iter().filter(|z| z.contains_atom(u)).collect();
            if with_u.is_empty() {
                continue;
            }
            for z in &zs {
                let best = with_u.iter().map(|w| distance(z, w)).min().unwrap_or(0);
                value = value.max(best);
            }
        }
    }
    Ok(TameReport {
        value,
        closed: ceiling == Some(value),
    })
}

/// A bound `K` with `max Δ(H) <= K`, from the minimal points of
/// `M = {m : π(m) has a factorization longer than |m|}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaBound {
    pub bound: u64,
    pub minimal_points: Vec<Factorization>,
}

/// `m ∈ M` gives a relation `(m, y)` with `|y| > |m|`. It is a sum of
/// minimal relations, and one of them, `(x̄, ȳ)`, has `|ȳ| > |x̄|` with
/// `x̄ <= m`. So `Min(M)` is the set of minimal `x̄` over those relations.
pub fn delta_bound(p: &AtomPresentation, budget: u64) -> Result<DeltaBound> {
    let rels = minimal_relations(p, budget)?;
    let ms = minimal_elements(
        rels.into_iter()
            .filter(|r| r.y_len() > r.x_len())
            .map(|r| r.x)
            .collect(),
    );
    let mut bound = 0;
    for m in &ms {
        let z = Factorization(m.clone());
        let len = z.length();
        let lengths = p.length_set(&p.evaluate(&z));
        let next = lengths
            .iter()
            .find(|&l| l > len)
            .expect("minimal point has a longer factorization");
        bound = bound.max(next - len);
    }
    Ok(DeltaBound {
        bound,
        minimal_points: ms.into_iter().map(Factorization).collect(),
    })
}

/// `ρ(𝖫(i · π(x̄)))` for `i = 1..=count`, where `(x̄, ȳ)` attains the
/// elasticity. Each value equals `ρ(H)`.
pub fn witness_ratios(
    p: &AtomPresentation,
    cert: &ElasticityCertificate,
    count: u64,
) -> Vec<Rational> {
    let x = p.evaluate(&Factorization(cert.witness.x.clone()));
    (1..=count)
        .map(|i| {
            let xi: Vec<i64> = x.iter().map(|v| v * i as i64).collect();
            p.length_set(&xi).elasticity()
        })
        .collect()
}

/// The increment bound `ρ_{k+1} - ρ_k <= |ȳ| (2ρ - 1)` from the normalized
/// witness pair.
pub fn increment_bound(cert: &ElasticityCertificate) -> Rational {
    let m = Rational::from_integer(cert.witness.y_len().into());
    m * (cert.rho.clone() * Rational::from_integer(2.into()) - Rational::from_integer(1.into()))
}
