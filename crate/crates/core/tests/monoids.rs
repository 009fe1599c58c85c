use std::collections::{BTreeMap, BTreeSet};

use factorlens_core::monoid::{
    davenport_constant, distance, product_unions, unions_table, zero_sum_presentation,
    AtomPresentation, Factorization, ProductPresentation,
};
use factorlens_core::LengthSet;
use proptest::prelude::*;

const BUDGET: u64 = 1_000_000;

// L(n) = ∪_g (L(n - g) + 1) over the generators of a numerical monoid.
fn numerical_lengths(gens: &[u64], n: u64) -> BTreeSet<u64> {
    let mut table: Vec<BTreeSet<u64>> = vec![BTreeSet::new(); n as usize + 1];
    table[0].insert(0);
    for v in 1..=n as usize {
        let mut here = BTreeSet::new();
        for &g in gens {
            if g as usize <= v {
                here.extend(table[v - g as usize].iter().map(|l| l + 1));
            }
        }
        table[v] = here;
    }
    table.swap_remove(n as usize)
}

fn group(factors: &[u64]) -> Vec<Vec<u64>> {
    let mut out = vec![vec![]];
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

fn sequence_sum(factors: &[u64], elems: &[Vec<u64>], mult: &[u64]) -> Vec<u64> {
    let mut s = vec![0; factors.len()];
    for (g, &c) in elems.iter().zip(mult) {
        for (i, n) in factors.iter().enumerate() {
            s[i] = (s[i] + g[i] * c) % n;
        }
    }
    s
}

fn vectors_up_to(dim: usize, total: u64) -> Vec<Vec<u64>> {
    let mut out = vec![vec![]];
    for _ in 0..dim {
        out = out
            .into_iter()
            .flat_map(|v: Vec<u64>| {
                let used: u64 = v.iter().sum();
                (0..=total - used).map(move |c| {
                    let mut w = v.clone();
                    w.push(c);
                    w
                })
            })
            .collect();
    }
    out
}

// Minimal zero-sum sequences: zero-sum, non-empty, and no proper non-empty
// zero-sum subsequence.
fn naive_minimal_zero_sums(factors: &[u64]) -> BTreeSet<Vec<u64>> {
    let elems = group(factors);
    let order: u64 = factors.iter().product();
    let zero = vec![0; factors.len()];
    let zero_sums: Vec<Vec<u64>> = vectors_up_to(elems.len(), order)
        .into_iter()
        .filter(|m| m.iter().sum::<u64>() > 0 && sequence_sum(factors, &elems, m) == zero)
        .collect();
    zero_sums
        .iter()
        .filter(|m| {
            !zero_sums
                .iter()
                .any(|n| n != *m && n.iter().zip(m.iter()).all(|(a, b)| a <= b))
        })
        .cloned()
        .collect()
}

// Lengths in B(G): peel any atom below x; everything that stays
// non-negative is still a zero-sum sequence.
fn zero_sum_lengths(
    atoms: &[Vec<u64>],
    x: &[u64],
    memo: &mut BTreeMap<Vec<u64>, BTreeSet<u64>>,
) -> BTreeSet<u64> {
    if x.iter().all(|&c| c == 0) {
        return [0].into();
    }
    if let Some(v) = memo.get(x) {
        return v.clone();
    }
    let mut out = BTreeSet::new();
    for a in atoms {
        if a.iter().zip(x).all(|(ai, xi)| ai <= xi) {
            let rest: Vec<u64> = x.iter().zip(a).map(|(xi, ai)| xi - ai).collect();
            out.extend(zero_sum_lengths(atoms, &rest, memo).iter().map(|l| l + 1));
        }
    }
    memo.insert(x.to_vec(), out.clone());
    out
}

fn multisets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    multisets(n, k - 1)
        .into_iter()
        .flat_map(|v| {
            let start = v.last().copied().unwrap_or(0);
            (start..n).map(move |i| {
                let mut w = v.clone();
                w.push(i);
                w
            })
        })
        .collect()
}

fn naive_catenary(zs: &[Factorization]) -> u64 {
    if zs.len() <= 1 {
        return 0;
    }
    (1..)
        .find(|&n| {
            let mut seen = vec![false; zs.len()];
            let mut stack = vec![0];
            seen[0] = true;
            while let Some(i) = stack.pop() {
                for j in 0..zs.len() {
                    if !seen[j] && distance(&zs[i], &zs[j]) <= n {
                        seen[j] = true;
                        stack.push(j);
                    }
                }
            }
            seen.iter().all(|&s| s)
        })
        .unwrap()
}

fn as_i64(v: &[u64]) -> Vec<i64> {
    v.iter().map(|&c| c as i64).collect()
}

#[test]
fn atoms_are_verified() {
    assert!(AtomPresentation::numerical(&[2, 3])
        .unwrap()
        .verify_atoms()
        .is_ok());
    let (i, z) = AtomPresentation::numerical(&[2, 3, 5])
        .unwrap()
        .verify_atoms()
        .unwrap_err();
    assert_eq!(i, 2);
    assert_eq!(z, Factorization(vec![1, 1, 0]));
}

#[test]
fn presentations_are_validated() {
    assert!(AtomPresentation::new(1, vec![vec![2], vec![2]], None).is_err());
    assert!(AtomPresentation::new(1, vec![vec![0]], None).is_err());
    assert!(AtomPresentation::new(1, vec![vec![2], vec![-3]], None).is_err());
    assert!(AtomPresentation::new(2, vec![vec![1, 0], vec![0, 1]], Some(vec![1, -1])).is_err());
    let p = AtomPresentation::new(2, vec![vec![1, -1], vec![0, 1]], None).unwrap();
    assert!(p.atoms().iter().all(|a| p.grade(a) > 0));
}

#[test]
fn two_three_basics() {
    let p = AtomPresentation::numerical(&[2, 3]).unwrap();
    assert_eq!(
        p.factorizations(&[6]),
        vec![Factorization(vec![0, 2]), Factorization(vec![3, 0])]
    );
    assert_eq!(p.factorizations(&[0]), vec![Factorization(vec![0, 0])]);
    assert!(p.factorizations(&[1]).is_empty());
    assert_eq!(p.catenary_degree(&[6]), 3);
    assert_eq!(p.catenary_degree(&[4]), 0);
    assert_eq!(p.unions(2, BUDGET).unwrap().union, LengthSet::from([2, 3]));
    let z = |v: &[u64]| Factorization(v.to_vec());
    assert_eq!(distance(&z(&[3, 0]), &z(&[0, 2])), 3);
    assert_eq!(distance(&z(&[2, 1]), &z(&[0, 2])), 2);
    assert_eq!(distance(&z(&[2, 1]), &z(&[2, 1])), 0);
}

#[test]
fn numerical_length_sets_match_dp() {
    for gens in [
        vec![2u64, 3],
        vec![3, 5, 7],
        vec![4, 6, 9],
        vec![5, 7, 11, 13],
    ] {
        let p = AtomPresentation::numerical(&as_i64(&gens)).unwrap();
        for n in 0..=60 {
            let want = numerical_lengths(&gens, n);
            let got: BTreeSet<u64> = p.length_set(&[n as i64]).iter().collect();
            assert_eq!(got, want, "{gens:?} at {n}");
            let by_enum: BTreeSet<u64> = p
                .factorizations(&[n as i64])
                .iter()
                .map(|z| z.length())
                .collect();
            assert_eq!(by_enum, want);
        }
    }
}

#[test]
fn numerical_unions_match_dp() {
    let gens = [3u64, 5, 7];
    let p = AtomPresentation::numerical(&as_i64(&gens)).unwrap();
    for k in 1..=4 {
        let mut want = BTreeSet::new();
        for n in 0..=k * 7 {
            let l = numerical_lengths(&gens, n);
            if l.contains(&k) {
                want.extend(l);
            }
        }
        let r = p.unions(k, BUDGET).unwrap();
        assert_eq!(r.union.iter().collect::<BTreeSet<_>>(), want);
        assert_eq!(r.lambda, *want.first().unwrap());
        assert_eq!(r.rho, *want.last().unwrap());
    }
}

#[test]
fn zero_sum_atoms_match_enumeration() {
    for (factors, davenport) in [
        (vec![2u64], 2u64),
        (vec![3], 3),
        (vec![4], 4),
        (vec![2, 2], 3),
        (vec![5], 5),
    ] {
        let p = zero_sum_presentation(&factors, None).unwrap();
        let got: BTreeSet<Vec<u64>> = p
            .atoms()
            .iter()
            .map(|a| a.iter().map(|&c| c as u64).collect())
            .collect();
        assert_eq!(got, naive_minimal_zero_sums(&factors), "{factors:?}");
        assert_eq!(davenport_constant(&p), davenport);
        assert!(p.verify_atoms().is_ok());
    }
    assert_eq!(zero_sum_presentation(&[3], None).unwrap().atom_count(), 4);
}

#[test]
fn zero_sum_subset() {
    // G_0 = {1, 2} in Z_3: atoms 1^3, 2^3, 1·2.
    let p = zero_sum_presentation(&[3], Some(&[vec![1], vec![2]])).unwrap();
    let got: BTreeSet<Vec<i64>> = p.atoms().iter().cloned().collect();
    assert_eq!(got, [vec![3, 0], vec![0, 3], vec![1, 1]].into());
    assert!(zero_sum_presentation(&[3], Some(&[vec![3]])).is_err());
}

#[test]
fn zero_sum_unions_are_intervals() {
    for factors in [vec![3u64], vec![4], vec![2, 2]] {
        let p = zero_sum_presentation(&factors, None).unwrap();
        let atoms: Vec<Vec<u64>> = p
            .atoms()
            .iter()
            .map(|a| a.iter().map(|&c| c as u64).collect())
            .collect();
        let mut memo = BTreeMap::new();
        for k in 1..=4 {
            let mut want = BTreeSet::new();
            for ms in multisets(atoms.len(), k) {
                let mut x = vec![0; p.dim()];
                for i in ms {
                    for (xi, ai) in x.iter_mut().zip(&atoms[i]) {
                        *xi += ai;
                    }
                }
                want.extend(zero_sum_lengths(&atoms, &x, &mut memo));
            }
            let got = p.unions(k as u64, BUDGET).unwrap().union;
            assert_eq!(
                got.iter().collect::<BTreeSet<_>>(),
                want,
                "{factors:?} k={k}"
            );
            let (lo, hi) = (got.min().unwrap(), got.max().unwrap());
            assert_eq!(got, LengthSet::interval(lo, hi), "{factors:?} k={k}");
        }
    }
    let z3 = zero_sum_presentation(&[3], None).unwrap();
    let u2 = z3.unions(2, BUDGET).unwrap();
    assert_eq!(u2.union, LengthSet::from([2, 3]));
    assert_eq!(u2.rho, 3);
}

#[test]
fn catenary_matches_connectivity() {
    let p = AtomPresentation::numerical(&[3, 5, 7]).unwrap();
    for n in 0..=45 {
        let zs = p.factorizations(&[n]);
        assert_eq!(p.catenary_degree(&[n]), naive_catenary(&zs), "n={n}");
    }
    let z4 = zero_sum_presentation(&[4], None).unwrap();
    for k in 1..=3 {
        for x in z4.elements_of_length(k, BUDGET).unwrap() {
            let zs = z4.factorizations(&x);
            let c = z4.catenary_degree(&x);
            assert_eq!(c, naive_catenary(&zs));
            if zs.len() >= 2 {
                let gap = z4.length_set(&x).delta_set().max().unwrap_or(0);
                assert!(gap < c);
            }
        }
    }
}

#[test]
fn elements_of_length_are_distinct_sums() {
    let p = AtomPresentation::numerical(&[3, 5, 7]).unwrap();
    let got: BTreeSet<Vec<i64>> = p
        .elements_of_length(3, BUDGET)
        .unwrap()
        .into_iter()
        .collect();
    let want: BTreeSet<Vec<i64>> = multisets(3, 3)
        .iter()
        .map(|ms| vec![ms.iter().map(|&i| [3, 5, 7][i]).sum()])
        .collect();
    assert_eq!(got, want);
}

#[test]
fn budget_is_enforced() {
    let p = zero_sum_presentation(&[5], None).unwrap();
    assert!(p.unions(6, 10).is_err());
}

#[test]
fn free_products_are_half_factorial() {
    let prod = ProductPresentation::new(vec![AtomPresentation::free(2), AtomPresentation::free(1)]);
    let flat = prod.flatten();
    for k in 1..=4 {
        assert_eq!(
            flat.unions(k, BUDGET).unwrap().union,
            LengthSet::singleton(k)
        );
    }
}

fn small_numerical() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::btree_set(2i64..9, 1..4).prop_filter_map("not minimal", |s| {
        let gens: Vec<i64> = s.into_iter().collect();
        let p = AtomPresentation::numerical(&gens).ok()?;
        p.verify_atoms().ok()?;
        Some(gens)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn product_unions_match_flattened(a in small_numerical(), b in small_numerical()) {
        let pa = AtomPresentation::numerical(&a).unwrap();
        let pb = AtomPresentation::numerical(&b).unwrap();
        let k = 4;
        let folded = product_unions(
            &[unions_table(&pa, k, BUDGET).unwrap(), unions_table(&pb, k, BUDGET).unwrap()],
            k as usize,
        );
        let flat = ProductPresentation::new(vec![pa, pb]).flatten();
        for j in 1..=k {
            prop_assert_eq!(&folded[j as usize], &flat.unions(j, BUDGET).unwrap().union);
        }
    }

    #[test]
    fn length_sets_are_additive(gens in small_numerical(), x in 0i64..30, y in 0i64..30) {
        let p = AtomPresentation::numerical(&gens).unwrap();
        let (lx, ly) = (p.length_set(&[x]), p.length_set(&[y]));
        if !lx.is_empty() && !ly.is_empty() {
            prop_assert!(lx.sumset(&ly).is_subset(&p.length_set(&[x + y])));
        }
    }
}
