use std::collections::BTreeMap;

use blockade_core::repthy::prv_adjoint_multiplicity;
use blockade_core::twistblocks::{
    ext_dim, linkage_chain, linkage_chain_in_window, margaux_block, margaux_canonical_point, same_block,
    spectral_character, EvalModuleDescriptor, GaussianRational, MargauxPoint, OrbitSpace, OrbitSpaceSpec,
};
use blockade_core::{Error, RootSystem, TypeLetter, Weight};
use num_rational::BigRational;
use proptest::prelude::*;

fn map(pairs: &[(&str, &str)]) -> BTreeMap<String, String> {
    pairs.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect()
}

/// A free 3-cycle `P*`, a fixed point `Q`, and a swapped pair `R*`, with
/// cotangent dimensions 1, 2 and 3.
fn three_orbits() -> OrbitSpace {
    let points = ["P0", "P1", "P2", "Q", "R0", "R1"].map(String::from).to_vec();
    let g = map(&[("P0", "P1"), ("P1", "P2"), ("P2", "P0"), ("R0", "R1"), ("R1", "R0")]);
    let cot = [("P2", 1), ("Q", 2), ("R0", 3)].map(|(p, d)| (p.to_string(), d)).into_iter().collect();
    OrbitSpace::new(points, vec![g], cot).unwrap()
}

const SLOTS: [&[&str]; 3] = [&["P0", "P1", "P2"], &["Q"], &["R0", "R1"]];

fn a1() -> RootSystem {
    RootSystem::new(TypeLetter::A, 1).unwrap()
}

fn a2() -> RootSystem {
    RootSystem::new(TypeLetter::A, 2).unwrap()
}

/// Per-orbit weights plus a choice of point within each orbit.
fn descriptor(rank: usize, max: i64) -> impl Strategy<Value = EvalModuleDescriptor> {
    let w = prop::collection::vec(0..=max, rank).prop_map(Weight::new);
    (prop::collection::vec(w, 3), prop::collection::vec(0usize..6, 3)).prop_map(|(ws, picks)| {
        EvalModuleDescriptor::new(
            ws.into_iter()
                .zip(picks)
                .zip(SLOTS)
                .map(|((w, k), slot)| (slot[k % slot.len()], w)),
        )
    })
}

fn move_points(os: &OrbitSpace, d: &EvalModuleDescriptor, word: &[usize]) -> EvalModuleDescriptor {
    EvalModuleDescriptor::new(d.assignments().iter().map(|(p, w)| {
        let mut p = p.as_str();
        for _ in word {
            p = os.apply_generator(0, p).unwrap();
        }
        (p.to_string(), w.clone())
    }))
}

#[test]
fn orbit_structure() {
    let os = three_orbits();
    assert_eq!(os.num_orbits(), 3);
    assert_eq!(os.orbit_id("P0").unwrap(), os.orbit_id("P2").unwrap());
    assert_ne!(os.orbit_id("P0").unwrap(), os.orbit_id("Q").unwrap());
    let r = os.orbit_id("R1").unwrap();
    assert_eq!(os.cotangent_dim(r), 3);
    assert_eq!(os.representative("R1").unwrap(), "R0");
}

#[test]
fn orbit_space_spec_round_trips() {
    let os = three_orbits();
    let json = serde_json::to_string(&os.to_spec()).unwrap();
    let spec: OrbitSpaceSpec = serde_json::from_str(&json).unwrap();
    let back = OrbitSpace::from_spec(&spec).unwrap();
    assert_eq!(back.to_spec(), os.to_spec());
}

#[test]
fn invalid_orbit_spaces() {
    let pts = || vec!["A".to_string(), "B".to_string()];
    let cot = |pairs: &[(&str, u32)]| pairs.iter().map(|(p, d)| (p.to_string(), *d)).collect();
    // not a bijection
    assert!(OrbitSpace::new(pts(), vec![map(&[("A", "B")])], cot(&[("A", 1)])).is_err());
    // an orbit without a cotangent dimension
    assert!(OrbitSpace::new(pts(), vec![], cot(&[("A", 1)])).is_err());
    // two entries for one orbit
    let swap = map(&[("A", "B"), ("B", "A")]);
    assert!(OrbitSpace::new(pts(), vec![swap.clone()], cot(&[("A", 1), ("B", 1)])).is_err());
    // zero dimension
    assert!(OrbitSpace::new(pts(), vec![swap.clone()], cot(&[("A", 0)])).is_err());
    // unknown point
    assert!(matches!(
        OrbitSpace::new(pts(), vec![map(&[("A", "C"), ("C", "A")])], cot(&[("A", 1), ("B", 1)])),
        Err(Error::UnknownPoint(_))
    ));
    assert!(OrbitSpace::new(pts(), vec![swap], cot(&[("B", 4)])).is_ok());
}

#[test]
fn descriptor_validation() {
    let os = three_orbits();
    let rs = a1();
    let two_in_one = EvalModuleDescriptor::new([("P0", Weight::new(vec![1])), ("P1", Weight::new(vec![1]))]);
    assert!(matches!(two_in_one.canonical(&rs, &os), Err(Error::DuplicateOrbit(_, _))));
    let negative = EvalModuleDescriptor::new([("Q", Weight::new(vec![-2]))]);
    assert!(negative.canonical(&rs, &os).is_err());
    let wrong_rank = EvalModuleDescriptor::new([("Q", Weight::new(vec![1, 1]))]);
    assert!(wrong_rank.canonical(&rs, &os).is_err());
    // zero weights are dropped, so this is the trivial module
    let zero = EvalModuleDescriptor::new([("P0", Weight::new(vec![0])), ("P1", Weight::new(vec![0]))]);
    assert!(zero.is_empty());
}

#[test]
fn chains_step_through_nonzero_ext() {
    let os = three_orbits();
    let rs = a2();
    let e = EvalModuleDescriptor::new([("P1", Weight::new(vec![1, 1])), ("Q", Weight::new(vec![2, 0]))]);
    let f = EvalModuleDescriptor::new([("Q", Weight::new(vec![0, 1])), ("R1", Weight::new(vec![3, 0]))]);
    assert!(same_block(&rs, &os, &e, &f).unwrap());
    let chain = linkage_chain(&rs, &os, &e, &f, 6).unwrap().unwrap();
    assert_eq!(chain.first().unwrap().canonicalized(&rs, &os).unwrap(), e.canonicalized(&rs, &os).unwrap());
    assert_eq!(chain.last().unwrap().canonicalized(&rs, &os).unwrap(), f.canonicalized(&rs, &os).unwrap());
    for w in chain.windows(2) {
        let forward = ext_dim(&rs, &os, &w[0], &w[1]).unwrap();
        let backward = ext_dim(&rs, &os, &w[1], &w[0]).unwrap();
        assert!(forward + backward > 0);
    }
    assert!(matches!(
        linkage_chain(&rs, &os, &e, &f, 2),
        Err(Error::BoundTooSmall { bound: 2, max: 3 })
    ));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn results_do_not_depend_on_representatives(
        e in descriptor(2, 3),
        f in descriptor(2, 3),
        word in prop::collection::vec(0usize..1, 0..5),
        word2 in prop::collection::vec(0usize..1, 0..5),
    ) {
        let os = three_orbits();
        let rs = a2();
        let e2 = move_points(&os, &e, &word);
        let f2 = move_points(&os, &f, &word2);
        prop_assert_eq!(e.canonicalized(&rs, &os).unwrap(), e2.canonicalized(&rs, &os).unwrap());
        prop_assert_eq!(ext_dim(&rs, &os, &e, &f).unwrap(), ext_dim(&rs, &os, &e2, &f2).unwrap());
        prop_assert_eq!(spectral_character(&rs, &os, &e).unwrap(), spectral_character(&rs, &os, &e2).unwrap());
    }

    #[test]
    fn ext_is_symmetric(e in descriptor(2, 3), f in descriptor(2, 3)) {
        let os = three_orbits();
        let rs = a2();
        prop_assert_eq!(ext_dim(&rs, &os, &e, &f).unwrap(), ext_dim(&rs, &os, &f, &e).unwrap());
    }

    #[test]
    fn ext_localises_to_one_orbit(e in descriptor(2, 3), slot in 0usize..3, w in prop::collection::vec(0i64..=3, 2)) {
        let os = three_orbits();
        let rs = a2();
        let point = SLOTS[slot][0];
        let orbit = os.orbit_id(point).unwrap();
        let canon = e.canonicalized(&rs, &os).unwrap();
        let mut f: BTreeMap<String, Weight> = canon.assignments().clone();
        let rep = os.representative(point).unwrap().to_string();
        let old = f.get(&rep).cloned().unwrap_or(Weight::zero(2));
        f.insert(rep, Weight::new(w.clone()));
        let f = EvalModuleDescriptor::new(f);
        let got = ext_dim(&rs, &os, &e, &f).unwrap();
        let d = os.cotangent_dim(orbit) as u64;
        if old.coords() != w.as_slice() {
            prop_assert_eq!(got, prv_adjoint_multiplicity(&rs, &old, &Weight::new(w)).unwrap() * d);
        }
    }

    #[test]
    fn two_differences_give_zero(e in descriptor(1, 3), a in 0i64..=3, b in 0i64..=3) {
        let os = three_orbits();
        let rs = a1();
        let canon = e.canonicalized(&rs, &os).unwrap();
        let mut f = canon.assignments().clone();
        let q = f.get("Q").map_or(0, |w| w[0]);
        let r = f.get("R0").map_or(0, |w| w[0]);
        prop_assume!(a != q && b != r);
        f.insert("Q".into(), Weight::new(vec![a]));
        f.insert("R0".into(), Weight::new(vec![b]));
        prop_assert_eq!(ext_dim(&rs, &os, &e, &EvalModuleDescriptor::new(f)).unwrap(), 0);
    }

    #[test]
    fn linkage_agrees_with_characters_and_window(e in descriptor(1, 4), f in descriptor(1, 4)) {
        let os = three_orbits();
        let rs = a1();
        let same = same_block(&rs, &os, &e, &f).unwrap();
        let narrow = linkage_chain(&rs, &os, &e, &f, 6).unwrap();
        let wide = linkage_chain_in_window(&rs, &os, &e, &f, 6, &["P0", "Q", "R1"]).unwrap();
        prop_assert_eq!(same, narrow.is_some());
        prop_assert_eq!(narrow.is_some(), wide.is_some());
    }
}

fn rational() -> impl Strategy<Value = BigRational> {
    (-6i64..=6, 1i64..=5).prop_map(|(n, d)| BigRational::new(n.into(), d.into()))
}

fn nonzero_gaussian() -> impl Strategy<Value = GaussianRational> {
    (rational(), rational())
        .prop_map(|(re, im)| GaussianRational::new(re, im))
        .prop_filter("nonzero", |z| !z.is_zero())
}

proptest! {
    #[test]
    fn margaux_canonical_point_is_a_sign_invariant(
        a in nonzero_gaussian(),
        b in nonzero_gaussian(),
        flip_a in any::<bool>(),
        flip_b in any::<bool>(),
    ) {
        let p = MargauxPoint::new(a.clone(), b.clone());
        let q = MargauxPoint::new(
            if flip_a { a.negated() } else { a },
            if flip_b { b.negated() } else { b },
        );
        let c = margaux_canonical_point(&p).unwrap();
        prop_assert!(c.a.in_upper_half() && c.b.in_upper_half());
        prop_assert_eq!(&c, &margaux_canonical_point(&q).unwrap());
        prop_assert_eq!(margaux_canonical_point(&c).unwrap(), c);
    }

    #[test]
    fn margaux_block_keeps_odd_weights(
        pts in prop::collection::vec((nonzero_gaussian(), nonzero_gaussian(), 0u64..8), 1..6),
    ) {
        let mut seen = std::collections::BTreeSet::new();
        let modules: Vec<(MargauxPoint, u64)> = pts
            .into_iter()
            .map(|(a, b, m)| (MargauxPoint::new(a, b), m))
            .filter(|(p, _)| seen.insert(margaux_canonical_point(p).unwrap()))
            .collect();
        let block = margaux_block(&modules).unwrap();
        prop_assert_eq!(block.len(), modules.iter().filter(|(_, m)| m % 2 == 1).count());
    }
}

#[test]
fn margaux_rejects_zero_coordinates() {
    let p = MargauxPoint::new(GaussianRational::from_ints(0, 0), GaussianRational::from_ints(1, 0));
    assert!(matches!(margaux_canonical_point(&p), Err(Error::ZeroCoordinate)));
}

#[test]
fn gaussian_json_round_trips() {
    let z = GaussianRational::new(BigRational::new((-3).into(), 4.into()), BigRational::new(2.into(), 1.into()));
    let s = serde_json::to_string(&z).unwrap();
    assert_eq!(s, r#"{"re":[-3,4],"im":[2,1]}"#);
    assert_eq!(serde_json::from_str::<GaussianRational>(&s).unwrap(), z);
    assert!(serde_json::from_str::<GaussianRational>(r#"{"re":[1,0],"im":[0,1]}"#).is_err());
}
