use std::collections::BTreeSet;

use factorlens_core::family::{Certification, FamilySpec, FamilyView, UnionSource};
use factorlens_core::{ratio, Error, LengthSet};
use proptest::prelude::*;

type Set = BTreeSet<u64>;

// Every sum of at most `depth` generators, built level by level.
fn closure(generators: &[Set], depth: u64) -> BTreeSet<Vec<u64>> {
    let mut all: BTreeSet<Vec<u64>> = [vec![0]].into();
    let mut level = all.clone();
    for _ in 0..depth {
        let mut next = BTreeSet::new();
        for m in &level {
            for g in generators {
                let s: Set = m
                    .iter()
                    .flat_map(|x| g.iter().map(move |y| x + y))
                    .collect();
                next.insert(s.into_iter().collect::<Vec<_>>());
            }
        }
        all.extend(next.iter().cloned());
        level = next;
    }
    all
}

fn naive_union(members: &BTreeSet<Vec<u64>>, k: u64) -> Vec<u64> {
    let u: Set = members
        .iter()
        .filter(|m| m.contains(&k))
        .flatten()
        .copied()
        .collect();
    u.into_iter().collect()
}

fn spec(gens: &[&[u64]], depth: u64) -> FamilySpec {
    FamilySpec::new(
        gens.iter().map(|g| LengthSet::from(g.to_vec())).collect(),
        depth,
    )
    .unwrap()
}

fn random_generators() -> impl Strategy<Value = Vec<Set>> {
    (
        prop::collection::btree_set(2u64..=12, 0..3),
        prop::collection::vec(prop::collection::btree_set(1u64..=12, 1..4), 0..4),
    )
        .prop_map(|(first, rest)| {
            let mut g0: Set = first;
            g0.insert(1);
            let mut gens = vec![g0];
            gens.extend(rest);
            gens.truncate(4);
            gens
        })
}

#[test]
fn one_and_two_three() {
    let mut view = FamilyView::new(spec(&[&[1], &[2, 3]], 12));
    view.extend_to(10).unwrap();
    assert_eq!(view.union(2), &LengthSet::from([2, 3]));
    assert_eq!(view.union(3), &LengthSet::interval(2, 4));
    assert_eq!(view.union(4), &LengthSet::interval(3, 6));
    let members = closure(&[[1].into(), [2, 3].into()], 12);
    for k in 1..=10 {
        assert_eq!(
            view.union(k).as_slice(),
            naive_union(&members, k).as_slice()
        );
    }
    let d = view.family_delta().unwrap();
    assert_eq!(d.set, LengthSet::from([1]));
    assert_eq!(d.certification, Certification::Exact);
    assert_eq!(view.fekete_elasticity(6).unwrap().lower, ratio(3, 2));
    let verdict = view.structure_check(10).unwrap();
    assert_eq!(verdict.delta, Some(1));
    assert!(verdict.bounds.iter().all(|(_, m)| *m == Some(0)));
    assert!(verdict.stabilized);
    assert_eq!(view.gcd_min_delta_check().unwrap(), Some(true));
}

#[test]
fn free_family() {
    let mut view = FamilyView::new(spec(&[&[1]], 8));
    view.extend_to(8).unwrap();
    for k in 1..=8 {
        assert_eq!(view.union(k), &LengthSet::singleton(k));
    }
    assert_eq!(view.fekete_elasticity(8).unwrap().lower, ratio(1, 1));
    assert!(view.structure_check(8).unwrap().trivial);
    assert_eq!(view.accepted_elasticity_check(8).unwrap(), Some(1));
}

#[test]
fn even_distances() {
    let mut view = FamilyView::new(spec(&[&[1], &[2, 4]], 10));
    view.extend_to(6).unwrap();
    assert_eq!(view.family_delta().unwrap().set, LengthSet::from([2]));
    assert_eq!(view.gcd_min_delta_check().unwrap(), Some(true));
    assert_eq!(view.accepted_elasticity_check(6).unwrap(), Some(2));
    assert!(view.check_properties(6).unwrap().passed());
}

#[test]
fn shallow_depth_is_not_certified() {
    let f = spec(&[&[1], &[2, 3]], 3);
    assert!(matches!(f.union(4), Err(Error::Uncertified { k: 4, .. })));
    let z = spec(&[&[1], &[0, 2]], 6);
    assert!(matches!(z.union(2), Err(Error::Unbounded { k: 2 })));
}

#[test]
fn invalid_families() {
    assert!(FamilySpec::new(vec![LengthSet::from([2, 3])], 4).is_err());
    assert!(FamilySpec::new(vec![LengthSet::from([1]), LengthSet::new()], 4).is_err());
    assert!(FamilySpec::new(vec![LengthSet::from([1])], 0).is_err());
}

#[test]
fn members_match_closure() {
    let gens: Vec<Set> = vec![[1].into(), [2, 5].into(), [3, 4].into()];
    let f = FamilySpec::new(
        gens.iter().map(|g| g.iter().copied().collect()).collect(),
        4,
    )
    .unwrap();
    let got: BTreeSet<Vec<u64>> = f.members().into_iter().map(Vec::from).collect();
    assert_eq!(got, closure(&gens, 4));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn unions_match_closure(gens in random_generators()) {
        let f = FamilySpec::new(gens.iter().map(|g| g.iter().copied().collect()).collect(), 8).unwrap();
        let members = closure(&gens, 8);
        let mut view = FamilyView::new(f);
        view.extend_to(8).unwrap();
        for k in 1..=8 {
            prop_assert_eq!(view.union(k).as_slice().to_vec(), naive_union(&members, k));
        }
        let naive_delta: Set = members
            .iter()
            .flat_map(|m| m.windows(2).map(|w| w[1] - w[0]).collect::<Vec<_>>())
            .collect();
        let d = view.family_delta().unwrap();
        prop_assert_eq!(d.set.iter().collect::<Set>(), naive_delta);
    }

    #[test]
    fn property_suite_holds(gens in random_generators()) {
        let f = FamilySpec::new(gens.iter().map(|g| g.iter().copied().collect()).collect(), 10).unwrap();
        let mut view = FamilyView::new(f);
        let report = view.check_properties(10).unwrap();
        prop_assert!(report.passed(), "{:?}", report.violations);
        prop_assert!(report.checked > 0);
    }
}
