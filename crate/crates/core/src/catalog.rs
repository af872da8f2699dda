//! Small named algebras used as fixtures and as the pinned corpus.

use alloc::format;
use alloc::vec::Vec;

use crate::algebra::{FiniteAlgebra, Operation};

/// `Z_n` under `+`.
pub fn cyclic_group(n: usize) -> FiniteAlgebra {
    let plus = Operation::from_fn("+", 2, n, |a| (a[0] + a[1]) % n);
    FiniteAlgebra::new(format!("Z{n}"), n, alloc::vec![plus]).expect("valid table")
}

/// `Z_2 × Z_2`, written as XOR on `0..4`.
pub fn klein_four() -> FiniteAlgebra {
    let plus = Operation::from_fn("+", 2, 4, |a| a[0] ^ a[1]);
    FiniteAlgebra::new("KleinFour", 4, alloc::vec![plus]).expect("valid table")
}

/// The six permutations of `{0,1,2}`: identity, the transpositions (01),
/// (02), (12), then the 3-cycles (012), (021).
pub const S3_ELEMENTS: [[usize; 3]; 6] = [
    [0, 1, 2],
    [1, 0, 2],
    [2, 1, 0],
    [0, 2, 1],
    [1, 2, 0],
    [2, 0, 1],
];

/// `S_3` under `*`, with `(x * y)(i) = x(y(i))`. Element numbering follows
/// [`S3_ELEMENTS`].
pub fn symmetric_group_3() -> FiniteAlgebra {
    permutation_group("S3", &S3_ELEMENTS).expect("closed under composition")
}

/// Multiplication table `*` of a list of permutations of equal degree,
/// `(x * y)(i) = x(y(i))`. `None` if the list is not closed under
/// composition.
pub fn permutation_group<P: AsRef<[usize]>>(name: &str, perms: &[P]) -> Option<FiniteAlgebra> {
    let n = perms.len();
    let mut table = Vec::with_capacity(n * n);
    for x in perms {
        for y in perms {
            let (x, y) = (x.as_ref(), y.as_ref());
            let xy: Vec<usize> = y.iter().map(|&i| x[i]).collect();
            table.push(perms.iter().position(|p| p.as_ref() == xy.as_slice())?);
        }
    }
    FiniteAlgebra::new(name, n, alloc::vec![Operation::new("*", 2, table)]).ok()
}

/// `Z_m ⋊ Z_k` where the generator of `Z_k` acts as `x ↦ r·x`. The pair
/// `(a, b)` is `a·k + b`. `None` unless `r` is a unit mod `m` of order
/// dividing `k`.
pub fn semidirect_product(m: usize, k: usize, r: usize) -> Option<FiniteAlgebra> {
    if m == 0 || k == 0 {
        return None;
    }
    let pow = |e: usize| (0..e).fold(1 % m, |acc, _| acc * r % m);
    if m > 1 && (pow(k) != 1 % m || (1..m).all(|y| r * y % m != 1)) {
        return None;
    }
    let n = m * k;
    let star = Operation::from_fn("*", 2, n, |x| {
        let (a, b) = (x[0] / k, x[0] % k);
        let (c, d) = (x[1] / k, x[1] % k);
        ((a + pow(b) * c) % m) * k + (b + d) % k
    });
    FiniteAlgebra::new(format!("Z{m}:Z{k}"), n, alloc::vec![star]).ok()
}

/// The quaternion group. Element `4s + u` is `(-1)^s · u` with `u` running
/// over `1, i, j, k`.
pub fn quaternion_group() -> FiniteAlgebra {
    // unit products as (negated, unit) with 0=1, 1=i, 2=j, 3=k
    const UNITS: [[(usize, usize); 4]; 4] = [
        [(0, 0), (0, 1), (0, 2), (0, 3)],
        [(0, 1), (1, 0), (0, 3), (1, 2)],
        [(0, 2), (1, 3), (1, 0), (0, 1)],
        [(0, 3), (0, 2), (1, 1), (1, 0)],
    ];
    let star = Operation::from_fn("*", 2, 8, |x| {
        let (s, u) = UNITS[x[0] % 4][x[1] % 4];
        ((x[0] / 4 + x[1] / 4 + s) % 2) * 4 + u
    });
    FiniteAlgebra::new("Q8", 8, alloc::vec![star]).expect("valid table")
}

/// The even permutations of `{0,1,2,3}` in lexicographic order.
pub fn alternating_group_4() -> FiniteAlgebra {
    let mut perms = Vec::new();
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let p = [a, b, c, d];
                    let distinct = (0..4).all(|i| (i + 1..4).all(|j| p[i] != p[j]));
                    let inversions = (0..4).flat_map(|i| (i + 1..4).map(move |j| (i, j)));
                    let even = inversions.filter(|&(i, j)| p[i] > p[j]).count() % 2 == 0;
                    if distinct && even {
                        perms.push(p);
                    }
                }
            }
        }
    }
    permutation_group("A4", &perms).expect("closed under composition")
}

/// `({0,1}, meet, join)`.
pub fn two_element_lattice() -> FiniteAlgebra {
    FiniteAlgebra::new(
        "Lattice2",
        2,
        alloc::vec![
            Operation::from_fn("meet", 2, 2, |a| a[0] & a[1]),
            Operation::from_fn("join", 2, 2, |a| a[0] | a[1]),
        ],
    )
    .expect("valid table")
}

/// The four-element Boolean lattice on the subsets of a 2-set as bitmasks.
pub fn boolean_lattice_4() -> FiniteAlgebra {
    FiniteAlgebra::new(
        "Boolean4",
        4,
        alloc::vec![
            Operation::from_fn("meet", 2, 4, |a| a[0] & a[1]),
            Operation::from_fn("join", 2, 4, |a| a[0] | a[1]),
        ],
    )
    .expect("valid table")
}

/// The one-element group.
pub fn one_element() -> FiniteAlgebra {
    cyclic_group(1).with_name("One")
}

/// Z2, Z3, Z4, Z6, Z12, KleinFour, S3, the two-element lattice, the
/// four-element Boolean lattice and the one-element algebra, in that order.
pub fn pinned() -> Vec<FiniteAlgebra> {
    alloc::vec![
        cyclic_group(2),
        cyclic_group(3),
        cyclic_group(4),
        cyclic_group(6),
        cyclic_group(12),
        klein_four(),
        symmetric_group_3(),
        two_element_lattice(),
        boolean_lattice_4(),
        one_element(),
    ]
}
