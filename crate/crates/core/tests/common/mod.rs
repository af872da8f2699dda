#![allow(dead_code)]

use proptest::collection::vec;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use refinery_core::algebra::table_len;
use refinery_core::{catalog, product, relabel, ElementMap, FiniteAlgebra, Operation, Partition};

pub fn build(n: usize, ops: Vec<(usize, Vec<usize>)>) -> FiniteAlgebra {
    let ops = ops
        .into_iter()
        .zip(["f", "g", "h"])
        .map(|((k, t), s)| Operation::new(s, k, t))
        .collect();
    FiniteAlgebra::new("random", n, ops).unwrap()
}

/// Sizes `1..=max_n`, one or two operations of arity at most 2.
pub fn algebra(max_n: usize) -> impl Strategy<Value = FiniteAlgebra> {
    (1..=max_n).prop_flat_map(|n| {
        let op = (0..=2usize)
            .prop_flat_map(move |k| vec(0..n, table_len(n, k)).prop_map(move |t| (k, t)));
        vec(op, 1..=2).prop_map(move |ops| build(n, ops))
    })
}

pub fn partition(n: usize) -> impl Strategy<Value = Partition> {
    vec(0..n.max(1), n).prop_map(|labels| Partition::from_labels(&labels))
}

pub fn shuffled(a: &FiniteAlgebra, seed: u64) -> FiniteAlgebra {
    let mut perm: Vec<usize> = (0..a.size()).collect();
    perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    relabel(a, &ElementMap::new(a.size(), perm).unwrap()).unwrap()
}

/// Small groups written as tables, all with a single binary symbol.
pub fn groups() -> Vec<FiniteAlgebra> {
    let star = |a: FiniteAlgebra| {
        let op = a.operations()[0].clone();
        FiniteAlgebra::new(
            a.name(),
            a.size(),
            vec![Operation::new("*", 2, op.table().to_vec())],
        )
        .unwrap()
    };
    let z = |n| star(catalog::cyclic_group(n));
    vec![
        z(1),
        z(2),
        z(3),
        z(4),
        z(5),
        z(6),
        star(catalog::klein_four()),
        catalog::symmetric_group_3(),
        catalog::semidirect_product(4, 2, 3).unwrap(),
        catalog::quaternion_group(),
        catalog::alternating_group_4(),
        product(&z(2), &catalog::symmetric_group_3()).unwrap().0,
        catalog::semidirect_product(3, 4, 2).unwrap(),
    ]
}

pub fn group() -> impl Strategy<Value = FiniteAlgebra> {
    (prop::sample::select(groups()), any::<u64>()).prop_map(|(g, seed)| shuffled(&g, seed))
}

// Naive oracles: straight from the definitions, no shared code with the
// library beyond table lookup.

pub type Matrix = Vec<Vec<bool>>;

pub fn matrix(p: &Partition) -> Matrix {
    let n = p.size();
    (0..n)
        .map(|x| (0..n).map(|y| p.related(x, y)).collect())
        .collect()
}

pub fn naive_compose(r: &Matrix, s: &Matrix) -> Matrix {
    let n = r.len();
    (0..n)
        .map(|x| (0..n).map(|z| (0..n).any(|y| r[x][y] && s[y][z])).collect())
        .collect()
}

fn tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..n).map(move |x| {
                    let mut t = t.clone();
                    t.push(x);
                    t
                })
            })
            .collect();
    }
    out
}

/// Compatibility over all pairs of argument tuples, not one coordinate at
/// a time.
pub fn naive_is_compatible(a: &FiniteAlgebra, r: &Matrix) -> bool {
    let n = a.size();
    a.operations().iter().all(|op| {
        let ts = tuples(n, op.arity());
        ts.iter().all(|u| {
            ts.iter().all(|v| {
                !u.iter().zip(v).all(|(&x, &y)| r[x][y]) || r[op.apply(n, u)][op.apply(n, v)]
            })
        })
    })
}

pub fn naive_is_congruence(a: &FiniteAlgebra, p: &Partition) -> bool {
    naive_is_compatible(a, &matrix(p))
}

/// Fixpoint of reflexive, symmetric, transitive and compatible closure.
pub fn naive_generated(a: &FiniteAlgebra, seeds: &[(usize, usize)]) -> Matrix {
    let n = a.size();
    let mut r = vec![vec![false; n]; n];
    for (x, row) in r.iter_mut().enumerate() {
        row[x] = true;
    }
    for &(x, y) in seeds {
        r[x][y] = true;
    }
    loop {
        let mut next = r.clone();
        for x in 0..n {
            for y in 0..n {
                if r[x][y] {
                    next[y][x] = true;
                    for z in 0..n {
                        if r[y][z] {
                            next[x][z] = true;
                        }
                    }
                }
            }
        }
        for op in a.operations() {
            let ts = tuples(n, op.arity());
            for u in &ts {
                for v in &ts {
                    if u.iter().zip(v).all(|(&x, &y)| r[x][y]) {
                        next[op.apply(n, u)][op.apply(n, v)] = true;
                    }
                }
            }
        }
        if next == r {
            return r;
        }
        r = next;
    }
}

/// Every set partition of `0..n`, by restricted growth strings.
pub fn all_partitions(n: usize) -> Vec<Partition> {
    fn go(i: usize, n: usize, max: usize, labels: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if i == n {
            out.push(Partition::from_labels(labels));
            return;
        }
        for l in 0..=max + 1 {
            labels.push(l);
            go(i + 1, n, max.max(l), labels, out);
            labels.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    let mut labels = vec![0];
    go(1, n, 0, &mut labels, &mut out);
    out
}

pub fn naive_congruences(a: &FiniteAlgebra) -> Vec<Partition> {
    all_partitions(a.size())
        .into_iter()
        .filter(|p| naive_is_congruence(a, p))
        .collect()
}

/// `x ↦ ([x]_F, [x]_G)` is a bijection onto classes and a homomorphism onto
/// the product of the quotients.
pub fn naive_is_factor_pair(a: &FiniteAlgebra, f: &Partition, g: &Partition) -> bool {
    if !naive_is_congruence(a, f) || !naive_is_congruence(a, g) {
        return false;
    }
    let n = a.size();
    let (nf, ng) = (f.num_classes(), g.num_classes());
    let mut hit = vec![false; nf * ng];
    for x in 0..n {
        let c = f.class_of(x) * ng + g.class_of(x);
        if hit[c] {
            return false;
        }
        hit[c] = true;
    }
    hit.into_iter().all(|h| h)
}
