use ::polarity::io::{burmeister, json, ContextFile};
use ::polarity::oracle;
use ::polarity::*;
use proptest::prelude::*;

fn relation(max: usize) -> impl Strategy<Value = RawRelation> {
    (0..=max, 0..=max).prop_flat_map(|(r, c)| {
        proptest::collection::vec(any::<bool>(), r * c)
            .prop_map(move |bits| RawRelation::from_fn(r, c, |i, j| bits[i * c + j]))
    })
}

fn polarity(max: usize) -> impl Strategy<Value = Polarity> {
    relation(max).prop_map(Polarity::new)
}

fn raw_between(a: &Polarity, b: &Polarity) -> impl Strategy<Value = RawRelation> {
    let (r, c) = (a.lower_size(), b.upper_size());
    proptest::collection::vec(any::<bool>(), r * c)
        .prop_map(move |bits| RawRelation::from_fn(r, c, |i, j| bits[i * c + j]))
}

/// A morphism between two random polarities, via compatibilization.
fn morphism(max: usize) -> impl Strategy<Value = Morphism> {
    (polarity(max), polarity(max)).prop_flat_map(|(a, b)| {
        raw_between(&a, &b).prop_map(move |r| compatibilize(&a, &b, &r).unwrap())
    })
}

fn composable(max: usize) -> impl Strategy<Value = (Morphism, Morphism)> {
    (polarity(max), polarity(max), polarity(max)).prop_flat_map(|(a, b, c)| {
        (raw_between(&a, &b), raw_between(&b, &c)).prop_map(move |(r, s)| {
            (compatibilize(&a, &b, &r).unwrap(), compatibilize(&b, &c, &s).unwrap())
        })
    })
}

fn subset(n: usize) -> impl Strategy<Value = BitSet> {
    proptest::collection::vec(any::<bool>(), n)
        .prop_map(move |bits| BitSet::from_indices(n, (0..n).filter(|&i| bits[i])))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn bitset_mask_round_trip(len in 0usize..=64, mask in any::<u64>()) {
        let mask = if len == 64 { mask } else { mask & ((1u64 << len) - 1) };
        let s = BitSet::from_mask(len, mask);
        prop_assert_eq!(s.to_mask(), mask);
        prop_assert_eq!(s.count(), mask.count_ones() as usize);
        prop_assert_eq!(s.complement().complement(), s);
    }

    #[test]
    fn galois_connection((r, x, y) in relation(6).prop_flat_map(|r| {
        let (n, m) = (r.rows(), r.cols());
        (Just(r), subset(n), subset(m))
    })) {
        // X ⊆ R↓(Y) iff Y ⊆ R↑(X)
        prop_assert_eq!(x.is_subset(&r.down(&y)), y.is_subset(&r.up(&x)));
        prop_assert_eq!(r.transpose().transpose(), r.clone());
        prop_assert_eq!(r.transpose().up(&y), r.down(&y));
    }

    #[test]
    fn closures_are_closure_operators((p, x, x2) in polarity(6).prop_flat_map(|p| {
        let n = p.lower_size();
        (Just(p), subset(n), subset(n))
    })) {
        let cx = p.cl_lower(&x).unwrap();
        prop_assert!(x.is_subset(&cx));
        prop_assert_eq!(p.cl_lower(&cx).unwrap(), cx.clone());
        if x.is_subset(&x2) {
            prop_assert!(cx.is_subset(&p.cl_lower(&x2).unwrap()));
        }
        prop_assert!(p.is_closed(Side::Lower, &cx).unwrap());
    }

    #[test]
    fn closed_sets_match_brute_force(p in polarity(5)) {
        for side in [Side::Lower, Side::Upper] {
            let fam = p.closed_sets(side).unwrap();
            let mut ours: Vec<BitSet> = fam.members().to_vec();
            let mut theirs = oracle::closed_sets(&p, side);
            ours.sort();
            theirs.sort();
            prop_assert_eq!(ours, theirs);
        }
    }

    #[test]
    fn compatibility_matches_its_characterizations((a, b, r) in (polarity(4), polarity(4)).prop_flat_map(|(a, b)| {
        let r = raw_between(&a, &b);
        (Just(a), Just(b), r)
    })) {
        let left = is_compatible_left(&a, &r).unwrap();
        let right = is_compatible_right(&b, &r).unwrap();
        prop_assert!(oracle::left_conditions(&a, &r).iter().all(|&c| c == left));
        prop_assert!(oracle::right_conditions(&b, &r).iter().all(|&c| c == right));
        prop_assert_eq!(is_compatible(&a, &b, &r).unwrap(), oracle::is_compatible(&a, &b, &r));
    }

    #[test]
    fn compatibilize_is_least_superset((a, b, r) in (polarity(3), polarity(3)).prop_flat_map(|(a, b)| {
        let r = raw_between(&a, &b);
        (Just(a), Just(b), r)
    })) {
        let m = compatibilize(&a, &b, &r).unwrap();
        prop_assert!(r.is_subset(m.rel()));
        prop_assert_eq!(m.rel(), &oracle::least_compatible_superset(&a, &b, &r));
        prop_assert_eq!(m.rel(), &oracle::compatibilize(&a, &b, &r));
    }

    #[test]
    fn hom_sets_match_brute_force((a, b) in (polarity(3), polarity(3))) {
        let ours: Vec<RawRelation> = hom_enumerate(&a, &b).unwrap().into_iter().map(|m| m.rel().clone()).collect();
        let mut theirs = oracle::hom_set(&a, &b);
        theirs.sort_by_key(RawRelation::to_row_major);
        prop_assert_eq!(ours, theirs);
    }

    #[test]
    fn hom_meets_stay_compatible((r, s) in morphism(4).prop_flat_map(|r| {
        let (a, b) = (r.dom().clone(), r.cod().clone());
        let s = raw_between(&a, &b).prop_map(move |x| compatibilize(&a, &b, &x).unwrap());
        (Just(r), s)
    })) {
        let m = hom_meet(&[r.clone(), s.clone()]).unwrap();
        prop_assert!(is_compatible(r.dom(), r.cod(), m.rel()).unwrap());
        prop_assert!(m.is_below(&r) && m.is_below(&s));
    }

    #[test]
    fn identity_and_composition((r, s) in composable(5)) {
        prop_assert_eq!(&Morphism::identity(r.dom()).compose(&r).unwrap(), &r);
        prop_assert_eq!(&r.compose(&Morphism::identity(r.cod())).unwrap(), &r);
        let rs = r.compose(&s).unwrap();
        prop_assert_eq!(rs.rel(), &oracle::compose(r.rel(), r.cod(), s.rel()));
        prop_assert_eq!(dual_morphism(&rs), dual_morphism(&s).compose(&dual_morphism(&r)).unwrap());
    }

    #[test]
    fn dual_is_involutive(r in morphism(5)) {
        prop_assert_eq!(&dual_object(&dual_object(r.dom())), r.dom());
        prop_assert_eq!(dual_morphism(&dual_morphism(&r)), r);
    }

    #[test]
    fn mono_epi_and_isos(r in morphism(4)) {
        let (mono, epi) = (is_mono(&r), is_epi(&r));
        prop_assert_eq!(mono, oracle::is_mono(&r));
        prop_assert_eq!(epi, oracle::is_epi(&r));
        prop_assert_eq!(is_mono(&dual_morphism(&r)), epi);
        match try_invert(&r) {
            Ok(w) => {
                prop_assert!(mono && epi);
                prop_assert_eq!(w.forward().compose(w.inverse()).unwrap(), Morphism::identity(r.dom()));
                prop_assert_eq!(w.inverse().compose(w.forward()).unwrap(), Morphism::identity(r.cod()));
            }
            Err(_) => prop_assert!(!(mono && epi)),
        }
    }

    #[test]
    fn factorization_recomposes(r in morphism(5)) {
        let f = factor(&r);
        prop_assert_eq!(f.epi.compose(&f.mono).unwrap(), r);
        prop_assert!(is_epi(&f.epi));
        prop_assert!(is_mono(&f.mono));
    }

    #[test]
    fn separate_and_standardize(a in polarity(4)) {
        let (sep, w) = separate(&a).unwrap();
        prop_assert!(is_separating(&sep));
        prop_assert_eq!(w.forward().dom(), &a);
        let (std, w) = standardize(&a).unwrap();
        prop_assert!(is_standard(&std));
        prop_assert!(oracle::is_standard(&std));
        prop_assert_eq!(w.forward().cod(), &std);
    }

    #[test]
    fn reduced_matches_dispensability(a in polarity(5)) {
        prop_assert_eq!(is_reduced(&a).unwrap(), oracle::is_reduced(&a));
        if is_rs_frame(&a).unwrap() {
            prop_assert!(is_separating(&a));
        }
    }

    #[test]
    fn restrictions_are_mono_and_epi((a, x) in polarity(5).prop_flat_map(|a| {
        let n = a.lower_size();
        (Just(a), subset(n))
    })) {
        let (_, incl) = restrict_lower(&a, &x).unwrap();
        prop_assert!(is_mono(&incl));
        let (_, proj) = restrict_upper(&dual_object(&a), &x).unwrap();
        prop_assert!(is_epi(&proj));
    }

    #[test]
    fn product_projections_and_tuples((a, b, t, r, s) in (polarity(3), polarity(3), polarity(3)).prop_flat_map(|(a, b, t)| {
        let (r, s) = (raw_between(&t, &a), raw_between(&t, &b));
        (Just(a), Just(b), Just(t), r, s)
    })) {
        let r = compatibilize(&t, &a, &r).unwrap();
        let s = compatibilize(&t, &b, &s).unwrap();
        let bundle = product(&[a.clone(), b.clone()]).unwrap();
        let tup = tuple(&t, &[r.clone(), s.clone()], &bundle).unwrap();
        prop_assert_eq!(tup.compose(&bundle.projections[0]).unwrap(), r);
        prop_assert_eq!(tup.compose(&bundle.projections[1]).unwrap(), s);
        let co = coproduct(&[a, b]).unwrap();
        prop_assert_eq!(co.injections.len(), 2);
    }

    #[test]
    fn equalizers_equalize((r, s) in morphism(4).prop_flat_map(|r| {
        let (a, b) = (r.dom().clone(), r.cod().clone());
        let s = raw_between(&a, &b).prop_map(move |x| compatibilize(&a, &b, &x).unwrap());
        (Just(r), s)
    })) {
        let (_, e) = equalizer(&r, &s).unwrap();
        prop_assert!(is_mono(&e));
        prop_assert_eq!(e.compose(&r).unwrap(), e.compose(&s).unwrap());
        let (_, q) = coequalizer(&r, &s).unwrap();
        prop_assert!(is_epi(&q));
        prop_assert_eq!(r.compose(&q).unwrap(), s.compose(&q).unwrap());
        let (_, same) = equalizer(&r, &r).unwrap();
        prop_assert!(try_invert(&same).is_ok());
    }

    #[test]
    fn closed_set_lattices_are_lattices(a in polarity(5)) {
        let l = g_minus_object(&a).unwrap();
        for x in 0..l.size() {
            for y in 0..l.size() {
                let (m, j) = (l.meet(x, y), l.join(x, y));
                prop_assert!(l.leq(m, x) && l.leq(m, y) && l.leq(x, j) && l.leq(y, j));
                prop_assert_eq!(l.meet(x, j), x);
                prop_assert_eq!(l.join(x, m), x);
            }
        }
        prop_assert!(lattice_unit(&l).is_ok());
        prop_assert!(epsilon(&a).is_ok());
        let back = c_object(&l).unwrap();
        prop_assert_eq!(g_minus_object(&back).unwrap().size(), l.size());
    }

    #[test]
    fn g_minus_is_a_functor_into_meet_maps((r, s) in composable(4)) {
        let (gr, gs) = (g_minus_morphism(&r).unwrap(), g_minus_morphism(&s).unwrap());
        prop_assert!(gr.preserves_meets());
        prop_assert_eq!(g_minus_morphism(&r.compose(&s).unwrap()).unwrap(), gr.after(&gs).unwrap());
        let c = c_morphism(&gr).unwrap();
        let eps_a = epsilon(r.dom()).unwrap();
        let eps_b = epsilon(r.cod()).unwrap();
        prop_assert_eq!(r.compose(eps_b.forward()).unwrap(), eps_a.forward().compose(&c).unwrap());
    }

    #[test]
    fn join_equation_agrees_with_its_reformulations(r in morphism(3)) {
        let conds = oracle::adjoint_conditions(&r);
        let p = preserves_joins(&r).unwrap();
        prop_assert!(conds[1..].iter().all(|&c| c == p));
        prop_assert_eq!(is_clat_morphism(&r).unwrap(), p);
    }

    #[test]
    fn stable_closure_matches_oracle((a, b, t) in (polarity(3), polarity(3)).prop_flat_map(|(a, b)| {
        let (n, m) = (a.lower_size(), b.lower_size());
        let t = proptest::collection::vec(any::<bool>(), n * m)
            .prop_map(move |bits| RawRelation::from_fn(n, m, |i, j| bits[i * m + j]));
        (Just(a), Just(b), t)
    })) {
        let s = stable_closure(&a, &b, &t).unwrap();
        prop_assert_eq!(s.bits(), &oracle::stable_closure(&a, &b, &t));
        prop_assert!(t.is_subset(s.bits()));
    }

    #[test]
    fn tensor_coherence((a, b) in (polarity(3), polarity(3))) {
        prop_assume!(a.lower_size() * b.lower_size() <= 9);
        let ab = tensor_object(&a, &b).unwrap();
        prop_assert_eq!(ab.upper_size(), 1usize << (a.lower_size() * b.lower_size()));
        prop_assert!(symmetry(&a, &b).is_ok());
        prop_assert!(left_unitor(&a).is_ok());
        prop_assert!(right_unitor(&b).is_ok());
        prop_assert_eq!(
            tensor_morphism(&Morphism::identity(&a), &Morphism::identity(&b)).unwrap(),
            Morphism::identity(&ab)
        );
    }

    #[test]
    fn io_round_trips(p in polarity(6), named in any::<bool>()) {
        let file = ContextFile { name: named.then(|| "ctx".to_string()), polarity: p };
        let cxt = burmeister::serialize(&file);
        let parsed = burmeister::parse(&cxt).unwrap();
        prop_assert_eq!(&parsed.polarity, &file.polarity);
        prop_assert_eq!(burmeister::serialize(&parsed), cxt);
        let js = json::serialize_context(&file);
        let parsed = json::parse_context(&js).unwrap();
        prop_assert_eq!(&parsed.polarity, &file.polarity);
        prop_assert_eq!(json::serialize_context(&parsed), js);
    }

    #[test]
    fn parsers_never_panic(text in "[BX.x\n0-9{}\\[\\],:\" a-z]{0,60}") {
        let _ = burmeister::parse(&text);
        let _ = json::parse_context(&text);
        let _ = json::parse_lattice(&text);
    }
}
