//! Randomised invariants for posets, the finite frames of upsets, nuclei
//! and the d-operator, complementing the exhaustive sweeps.

use std::sync::Arc;

use locale_workbench::birkhoff::{
    check_round_trip, clopen_upset_lattice, double_pseudocomplement, implies, pseudocomplement, RoundTrip,
};
use locale_workbench::d_spectrum::{self as ds, FiniteEngine};
use locale_workbench::fan_spaces::{Family, FanSpace};
use locale_workbench::nuclei::{double_negation, nuclear_of_nucleus, nucleus_of_nuclear, NuclearSet};
use locale_workbench::poset::{FinitePoset, PointSet};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn labels(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("p{i}")).collect()
}

/// Random posets on up to `max` points: pairs only go from lower to higher
/// index, so the closure is always acyclic.
fn poset(max: usize) -> impl Strategy<Value = FinitePoset> {
    (1..=max).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * n).prop_map(move |bits| {
            let pairs: Vec<(usize, usize)> = (0..n)
                .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
                .filter(|&(a, b)| bits[a * n + b])
                .collect();
            FinitePoset::from_pairs(labels(n), &pairs).expect("index-increasing pairs are acyclic")
        })
    })
}

fn poset_and_set(max: usize) -> impl Strategy<Value = (FinitePoset, PointSet)> {
    poset(max).prop_flat_map(|p| {
        let n = p.len();
        (Just(p), (0u64..1 << n).prop_map(PointSet::from_bits))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn closures_are_closure_operators((p, s) in poset_and_set(7)) {
        let up = p.up(s);
        prop_assert!(s.is_subset(up));
        prop_assert_eq!(p.up(up), up);
        prop_assert!(p.is_upset(up));
        prop_assert!(p.is_downset(up.complement(p.len())));
        prop_assert_eq!(p.strict_up(s).union(s), up.union(s));
        prop_assert!(p.minimal(s).is_subset(s) && p.maximal(s).is_subset(s));
        prop_assert!(s.is_subset(p.up(p.minimal(s))));
    }

    #[test]
    fn upsets_match_brute_force(p in poset(6)) {
        let direct: Vec<PointSet> = p.full().subsets().filter(|&s| p.is_upset(s)).collect();
        let mut got = p.enumerate_upsets();
        got.sort();
        let mut want = direct;
        want.sort();
        prop_assert_eq!(got, want);
    }

    #[test]
    fn canonical_form_ignores_relabelling(p in poset(6), seed in any::<u64>()) {
        let n = p.len();
        let mut perm: Vec<usize> = (0..n).collect();
        // Fisher-Yates driven by the seed.
        let mut x = seed | 1;
        for i in (1..n).rev() {
            x ^= x << 13;
            x ^= x >> 7;
            x ^= x << 17;
            perm.swap(i, (x % (i as u64 + 1)) as usize);
        }
        let q = FinitePoset::from_relation(labels(n), |a, b| p.leq(perm[a], perm[b])).unwrap();
        prop_assert_eq!(p.canonical_form(), q.canonical_form());
    }

    #[test]
    fn duality_round_trips(p in poset(6)) {
        let frame = clopen_upset_lattice(&p);
        prop_assert_eq!(check_round_trip(&frame.lattice).unwrap(), RoundTrip::Isomorphic);
    }

    #[test]
    fn heyting_laws((p, s) in poset_and_set(6)) {
        let u = p.up(s);
        let star = pseudocomplement(&p, u);
        prop_assert!(star.intersection(u).is_empty());
        prop_assert!(u.is_subset(double_pseudocomplement(&p, u)));
        prop_assert_eq!(pseudocomplement(&p, double_pseudocomplement(&p, u)), star);
        for v in p.enumerate_upsets() {
            let imp = implies(&p, u, v);
            prop_assert!(imp.intersection(u).is_subset(v));
            prop_assert!(v.is_subset(imp));
        }
    }

    #[test]
    fn nuclear_sets_round_trip((p, n) in poset_and_set(5)) {
        let space = Arc::new(p);
        let j = nucleus_of_nuclear(&NuclearSet { space: space.clone(), members: n });
        prop_assert_eq!(nuclear_of_nucleus(&j).members, n);
        for u in space.enumerate_upsets() {
            let ju = j.apply(u).unwrap();
            prop_assert!(u.is_subset(ju));
            prop_assert_eq!(j.apply(ju).unwrap(), ju);
            prop_assert_eq!(u.intersection(n), ju.intersection(n));
        }
    }

    #[test]
    fn d_is_double_negation_on_finite_frames(p in poset(6)) {
        let space = Arc::new(p);
        let e = FiniteEngine::new(space.clone());
        let dn = double_negation(&space).unwrap();
        for u in space.enumerate_upsets() {
            prop_assert_eq!(ds::d_apply(&e, &u).unwrap(), dn.apply(u).unwrap());
        }
        prop_assert_eq!(ds::yd_set(&e).unwrap(), space.maximal(space.full()));
    }

    #[test]
    fn d_laws_on_random_tame_upsets(seed in any::<u64>(), family in 0usize..4) {
        let e = FanSpace::new(Family::ALL[family]);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = e.complement(&e.down(&e.random_clopen(&mut rng)));
        let b = e.complement(&e.down(&e.random_clopen(&mut rng)));
        let da = ds::d_apply(&e, &a).unwrap();
        let db = ds::d_apply(&e, &b).unwrap();
        prop_assert_eq!(e.meet(&a, &da), a.clone());
        prop_assert_eq!(ds::d_apply(&e, &da).unwrap(), da.clone());
        prop_assert_eq!(ds::d_apply(&e, &e.meet(&a, &b)).unwrap(), e.meet(&da, &db));
        prop_assert!(e.check_union_form(&a).is_ok());
    }
}
