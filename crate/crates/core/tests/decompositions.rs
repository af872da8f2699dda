mod common;

use common::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use refinery_core::coextensivity::check_projection_coextensive;
use refinery_core::decomposition::{
    decompose, decompose_by, is_directly_indecomposable, verify_unique_decomposition,
    DecompositionTree,
};
use refinery_core::{catalog, find_isomorphism, product, FiniteAlgebra};

fn random_tree(a: &FiniteAlgebra, seed: u64) -> DecompositionTree {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    decompose_by(a, &mut |c| rng.random_range(0..c.len())).unwrap()
}

fn reassemble(t: &DecompositionTree) -> FiniteAlgebra {
    let leaves = t.leaves();
    let mut acc = leaves[0].clone();
    for l in &leaves[1..] {
        acc = product(&acc, l).unwrap().0;
    }
    acc
}

fn check_tree(a: &FiniteAlgebra, t: &DecompositionTree) {
    assert!(t.validate().unwrap());
    assert_eq!(t.leaf_sizes().iter().product::<usize>(), a.size());
    for l in t.leaves() {
        assert!(l.size() == 1 || is_directly_indecomposable(l).unwrap());
        if a.size() > 1 {
            assert!(l.size() >= 2);
        }
    }
    assert!(find_isomorphism(&reassemble(t), a).unwrap().is_some());
}

#[test]
fn pinned_decompositions() {
    for a in catalog::pinned() {
        let t = decompose(&a).unwrap();
        check_tree(&a, &t);
        let m = verify_unique_decomposition(&a, &t, &random_tree(&a, 3)).unwrap();
        assert!(m.is_some(), "{}", a.name());
    }
    let b8 = product(
        &catalog::boolean_lattice_4(),
        &catalog::two_element_lattice(),
    )
    .unwrap()
    .0;
    let t = decompose(&b8).unwrap();
    assert_eq!(t.leaf_sizes(), [2, 2, 2]);
    check_tree(&b8, &t);
}

#[test]
fn groups_decompose_uniquely() {
    for (i, g) in groups().into_iter().enumerate() {
        let t1 = random_tree(&g, i as u64);
        let t2 = random_tree(&g, 100 + i as u64);
        check_tree(&g, &t1);
        check_tree(&g, &t2);
        for m in verify_unique_decomposition(&g, &t1, &t2)
            .unwrap()
            .expect("groups match")
        {
            let (l1, l2) = (t1.leaves()[m.left], t2.leaves()[m.right]);
            assert!(
                refinery_core::is_homomorphism(l1, l2, &m.iso).unwrap() && m.iso.is_bijective()
            );
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn random_split_orders(a in algebra(5), s1 in any::<u64>(), s2 in any::<u64>()) {
        let t1 = random_tree(&a, s1);
        let t2 = random_tree(&a, s2);
        check_tree(&a, &t1);
        check_tree(&a, &t2);
        if check_projection_coextensive(&a).unwrap().holds {
            prop_assert!(verify_unique_decomposition(&a, &t1, &t2).unwrap().is_some());
        }
    }
}
