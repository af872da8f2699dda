mod common;

use common::*;
use proptest::prelude::*;
use refinery_core::lattice::all_congruences;
use refinery_core::relations::{self, compose, generated_congruence, image, kernel, preimage};
use refinery_core::{find_isomorphism, is_homomorphism, quotient, BinRel, ElementMap, Partition};

fn rel(n: usize) -> impl Strategy<Value = BinRel> {
    proptest::collection::vec((0..n, 0..n), 0..=n * n).prop_map(move |p| BinRel::from_pairs(n, p))
}

/// Random tables with the signature and size of `a`, relabeled.
fn same_shape(a: &refinery_core::FiniteAlgebra, seed: u64) -> refinery_core::FiniteAlgebra {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let n = a.size();
    let ops = a
        .operations()
        .iter()
        .map(|op| {
            let t = op
                .table()
                .iter()
                .map(|&v| {
                    if rng.random_bool(0.2) {
                        rng.random_range(0..n)
                    } else {
                        v
                    }
                })
                .collect();
            refinery_core::Operation::new(op.name(), op.arity(), t)
        })
        .collect();
    shuffled(
        &refinery_core::FiniteAlgebra::new("b", n, ops).unwrap(),
        seed,
    )
}

fn to_matrix(r: &BinRel) -> Matrix {
    let n = r.size();
    (0..n)
        .map(|x| (0..n).map(|y| r.contains(x, y)).collect())
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn compose_matches_triple_loop((r, s) in (1..=6usize).prop_flat_map(|n| (rel(n), rel(n)))) {
        prop_assert_eq!(to_matrix(&compose(&r, &s).unwrap()), naive_compose(&to_matrix(&r), &to_matrix(&s)));
    }

    #[test]
    fn compose_is_associative_with_identity(
        (r, s, t) in (1..=6usize).prop_flat_map(|n| (rel(n), rel(n), rel(n)))
    ) {
        let n = r.size();
        prop_assert_eq!(r.compose(&s).compose(&t), r.compose(&s.compose(&t)));
        prop_assert_eq!(r.compose(&BinRel::identity(n)), r.clone());
        prop_assert_eq!(BinRel::identity(n).compose(&r), r);
    }

    #[test]
    fn generated_congruence_is_least((a, x, y) in algebra(5).prop_flat_map(|a| {
        let n = a.size();
        (Just(a), 0..n, 0..n)
    })) {
        let g = generated_congruence(&a, [(x, y)]).unwrap();
        prop_assert_eq!(matrix(&g), naive_generated(&a, &[(x, y)]));
        prop_assert!(relations::is_congruence(&a, &g));
        for c in all_congruences(&a).unwrap().elements() {
            if c.related(x, y) {
                prop_assert!(g.refines(c));
            }
        }
    }

    #[test]
    fn kernel_of_quotient_map((a, i) in algebra(5).prop_flat_map(|a| (Just(a), any::<prop::sample::Index>()))) {
        let con = all_congruences(&a).unwrap();
        let theta = &con.elements()[i.index(con.len())];
        let (q, map) = quotient(&a, theta).unwrap();
        prop_assert_eq!(&kernel(&map), theta);
        prop_assert!(is_homomorphism(&a, &q, &map).unwrap());
        prop_assert!(map.is_surjective());
    }

    #[test]
    fn image_preimage_galois((a, i, r, s) in algebra(5).prop_flat_map(|a| {
        let n = a.size();
        (Just(a), any::<prop::sample::Index>(), rel(n), any::<prop::sample::Index>())
    })) {
        let con = all_congruences(&a).unwrap();
        let theta = &con.elements()[i.index(con.len())];
        let (_, f) = quotient(&a, theta).unwrap();
        let m = f.target_size();
        let all_s: Vec<BinRel> = (0..m * m).map(|k| BinRel::from_pairs(m, [(k / m, k % m)])).collect();
        let s = &all_s[s.index(all_s.len())];
        prop_assert_eq!(
            image(&f, &r).unwrap().is_subset(s),
            r.is_subset(&preimage(&f, s).unwrap())
        );
    }

    #[test]
    fn preimage_of_image_is_kernel_sandwich((a, i, j) in algebra(5).prop_flat_map(|a| {
        (Just(a), any::<prop::sample::Index>(), any::<prop::sample::Index>())
    })) {
        let con = all_congruences(&a).unwrap();
        let k = &con.elements()[i.index(con.len())];
        let e = con.elements()[j.index(con.len())].to_rel();
        let (_, f) = quotient(&a, k).unwrap();
        let lhs = preimage(&f, &image(&f, &e).unwrap()).unwrap();
        prop_assert_eq!(lhs, k.to_rel().compose(&e).compose(&k.to_rel()));
    }

    #[test]
    fn third_isomorphism_theorem((a, i, j) in algebra(5).prop_flat_map(|a| {
        (Just(a), any::<prop::sample::Index>(), any::<prop::sample::Index>())
    })) {
        let con = all_congruences(&a).unwrap();
        let theta = &con.elements()[i.index(con.len())];
        let phi = relations::join(&a, theta, &con.elements()[j.index(con.len())]).unwrap();
        let (qt, mt) = quotient(&a, theta).unwrap();
        let phi_mod_theta = image(&mt, &phi.to_rel()).unwrap().to_partition().unwrap();
        let (double, _) = quotient(&qt, &phi_mod_theta).unwrap();
        let (direct, _) = quotient(&a, &phi).unwrap();
        prop_assert!(find_isomorphism(&double, &direct).unwrap().is_some());
    }

    #[test]
    fn isomorphism_search_is_symmetric((a, seed, other) in (algebra(4), any::<u64>(), any::<u64>())) {
        let copy = shuffled(&a, seed);
        let b = same_shape(&a, other);
        let iso = find_isomorphism(&a, &copy).unwrap().expect("a relabeling is isomorphic");
        prop_assert!(is_homomorphism(&a, &copy, &iso).unwrap() && iso.is_bijective());
        prop_assert_eq!(
            find_isomorphism(&a, &b).unwrap().is_some(),
            find_isomorphism(&b, &a).unwrap().is_some()
        );
    }

    #[test]
    fn permuting_congruences_join_by_composition((g, i, j) in group().prop_flat_map(|g| {
        (Just(g), any::<prop::sample::Index>(), any::<prop::sample::Index>())
    })) {
        let con = all_congruences(&g).unwrap();
        let x = &con.elements()[i.index(con.len())];
        let y = &con.elements()[j.index(con.len())];
        let joined = relations::join(&g, x, y).unwrap();
        prop_assert_eq!(joined.to_rel(), x.to_rel().compose(&y.to_rel()));
        prop_assert_eq!(x.to_rel().compose(&y.to_rel()), y.to_rel().compose(&x.to_rel()));
    }

    #[test]
    fn join_is_least_upper_bound((a, i, j) in algebra(5).prop_flat_map(|a| {
        (Just(a), any::<prop::sample::Index>(), any::<prop::sample::Index>())
    })) {
        let con = all_congruences(&a).unwrap();
        let x = &con.elements()[i.index(con.len())];
        let y = &con.elements()[j.index(con.len())];
        let joined = relations::join(&a, x, y).unwrap();
        prop_assert!(x.refines(&joined) && y.refines(&joined));
        for c in con.elements() {
            if x.refines(c) && y.refines(c) {
                prop_assert!(joined.refines(c));
            }
        }
    }
}

#[test]
fn image_rejects_non_surjective_maps() {
    let f = ElementMap::new(3, vec![0, 0]).unwrap();
    assert!(image(&f, &BinRel::identity(2)).is_err());
    assert_eq!(preimage(&f, &BinRel::identity(3)).unwrap(), BinRel::full(2));
    assert_eq!(kernel(&f), Partition::full(2));
}
