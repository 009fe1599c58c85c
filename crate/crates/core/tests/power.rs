use std::collections::BTreeSet;

use factorlens_core::family::{FamilyView, UnionSource};
use factorlens_core::power::{FinSet, PowerExample, PowerSource, PowerSubmonoid};
use factorlens_core::{ratio, LengthSet};

type Set = BTreeSet<u64>;

fn sum(a: &Set, b: &Set) -> Set {
    a.iter()
        .flat_map(|x| b.iter().map(move |y| x + y))
        .collect()
}

fn times(a: &Set, k: u64) -> Set {
    (0..k).fold([0].into(), |acc, _| sum(&acc, a))
}

fn a_set(n: u64) -> Set {
    (0..=n).map(|i| 2 * i).chain([1]).collect()
}

// h·[0,1] + l·A with plain set arithmetic.
fn element(n: u64, h: u64, l: u64) -> Set {
    sum(&times(&[0, 1].into(), h), &times(&a_set(n), l))
}

// All (h, l) with h·[0,1] + l·A = x; max is additive, so h + 2nl = max x.
fn naive_lengths(n: u64, x: &Set) -> Set {
    let top = *x.last().unwrap();
    (0..=top / (2 * n))
        .filter(|&l| &element(n, top - 2 * n * l, l) == x)
        .map(|l| top - 2 * n * l + l)
        .collect()
}

fn naive_union(n: u64, k: u64) -> Set {
    (0..=k)
        .flat_map(|h| naive_lengths(n, &element(n, h, k - h)))
        .collect()
}

fn fin(v: &[u64]) -> FinSet {
    FinSet::try_from(v.to_vec()).unwrap()
}

#[test]
fn finite_sets() {
    assert!(FinSet::try_from(vec![]).is_err());
    assert_eq!(fin(&[0, 1]).setsum(&fin(&[0, 2])), FinSet::interval(0, 3));
    assert_eq!(fin(&[0, 1]).multiple(3), FinSet::interval(0, 3));
    assert_eq!(fin(&[2, 5]).multiple(0), FinSet::zero());
    assert!(FinSet::zero().is_zero());
    assert_eq!(fin(&[1, 3]).to_string(), "{1,3}");
    assert!(fin(&[1, 3]) < fin(&[2]));
}

#[test]
fn example_atoms_are_the_generators() {
    for n in [2, 3] {
        let ex = PowerExample::new(n).unwrap();
        let m = ex.submonoid(40, 100_000).unwrap();
        let atoms: BTreeSet<FinSet> = m.atoms().iter().cloned().collect();
        assert_eq!(atoms, [PowerExample::unit_interval(), ex.a()].into());
    }
    assert!(PowerExample::new(1).is_err());
}

#[test]
fn non_atoms_are_split() {
    let m = PowerSubmonoid::new(
        vec![fin(&[0, 1]), fin(&[0, 2]), fin(&[0, 1, 2, 3])],
        12,
        10_000,
    )
    .unwrap();
    let atoms: BTreeSet<FinSet> = m.atoms().iter().cloned().collect();
    assert_eq!(atoms, [fin(&[0, 1]), fin(&[0, 2])].into());
    let (y, z) = m.split(&fin(&[0, 1, 2, 3])).unwrap();
    assert_eq!(y.setsum(&z), fin(&[0, 1, 2, 3]));
    assert!(PowerSubmonoid::new(vec![fin(&[0, 1])], 1000, 10).is_err());
}

#[test]
fn length_sets_match_naive_and_closed_form() {
    for n in [2, 3] {
        let ex = PowerExample::new(n).unwrap();
        let m = ex.submonoid(4 * n + 2, 100_000).unwrap();
        for h in 0..=10 {
            for l in 0..=4 {
                let x = ex.element(h, l);
                assert_eq!(x.as_set().iter().collect::<Set>(), element(n, h, l));
                let want = naive_lengths(n, &element(n, h, l));
                assert_eq!(
                    m.length_set(&x).iter().collect::<Set>(),
                    want,
                    "n={n} h={h} l={l}"
                );
                assert_eq!(ex.example_length_set(h, l).iter().collect::<Set>(), want);
            }
        }
    }
}

#[test]
fn unions_and_rho() {
    for n in [2, 3] {
        let ex = PowerExample::new(n).unwrap();
        let src = PowerSource::new(ex, 1_000_000).unwrap();
        let mut prev = None;
        for k in 2 * n..=2 * n + 3 {
            let u = src.union(k).unwrap();
            assert_eq!(u.iter().collect::<Set>(), naive_union(n, k));
            assert_eq!(u, ex.closed_union(k));
            let rho = u.max().unwrap();
            assert_eq!(rho, 2 * n * (k - 1) + 1);
            assert_eq!(Some(rho), ex.example_rho_k(k));
            if let Some(p) = prev {
                assert_eq!(rho - p, 2 * n);
            }
            prev = Some(rho);
        }
    }
}

// Does the atom `a` divide x: is there a factorization of x using it?
fn divides_a(n: u64, x: &Set) -> bool {
    let top = *x.last().unwrap();
    (1..=top / (2 * n)).any(|l| &element(n, top - 2 * n * l, l) == x)
}

#[test]
fn omega_is_two_n_plus_one() {
    for n in [2, 3] {
        let ex = PowerExample::new(n).unwrap();
        let m = ex.submonoid(4 * n + 2, 100_000).unwrap();
        let a = m.atoms().iter().position(|x| x == &ex.a()).unwrap();
        let w = m.omega_atom(a, 2 * n + 3);
        assert_eq!(w, 2 * n + 1);
        assert_eq!(w, ex.example_omega());
        // (2n+1)·[0,1] = [0,1] + A, and no shorter run of intervals is
        // divisible by A.
        let run: Set = (0..=2 * n + 1).collect();
        assert!(divides_a(n, &run));
        for h in 1..=2 * n {
            assert!(!divides_a(n, &(0..=h).collect()));
        }
        let u = 1 - a;
        assert_eq!(m.omega_atom(u, 2 * n + 3), 1);
    }
}

#[test]
fn elasticity_is_not_accepted() {
    for n in [2, 3] {
        let ex = PowerExample::new(n).unwrap();
        let m = ex.submonoid(40, 100_000).unwrap();
        let rho = ex.example_elasticity();
        let mut best = ratio(1, 1);
        for x in m.store().filter(|x| !x.is_zero()) {
            let r = m.length_set(x).elasticity();
            assert!(r < rho);
            best = best.max(r);
        }
        assert!(best > ratio(2 * n - 1, 1));
        let mut view = FamilyView::new(PowerSource::new(ex, 1_000_000).unwrap());
        assert_eq!(view.accepted_elasticity_check(12).unwrap(), None);
    }
}

#[test]
fn family_invariants() {
    let ex = PowerExample::new(2).unwrap();
    let mut view = FamilyView::new(PowerSource::new(ex, 1_000_000).unwrap());
    assert_eq!(view.family_delta().unwrap().set, LengthSet::singleton(3));
    assert_eq!(view.gcd_min_delta_check().unwrap(), Some(true));
    assert!(view.fekete_elasticity(8).unwrap().lower >= ratio(13, 4));
    assert!(view.check_properties(12).unwrap().passed());
}

#[test]
fn union_density_trend() {
    let ex = PowerExample::new(2).unwrap();
    let mut view = FamilyView::new(PowerSource::new(ex, 1_000_000).unwrap());
    view.extend_to(20).unwrap();
    let density = |k: u64| ratio(view.union(k).len() as u64 - 1, k);
    let limit = ratio(5, 4);
    for k in 1..=20 {
        assert!(density(k) <= limit);
    }
    let mut k = 1;
    while 2 * k <= 20 {
        assert!(density(k) <= density(2 * k));
        k *= 2;
    }
    assert!(density(20) * ratio(100, 1) >= limit * ratio(85, 1));
}

#[test]
fn relation_atoms() {
    for n in [2, 3] {
        let ex = PowerExample::new(n).unwrap();
        for k in 0..=3 {
            assert!(ex.relations_atom_check(k));
            assert!(ex.relations_atom_check_structural(k));
        }
    }
}
