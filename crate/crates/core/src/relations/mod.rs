//! Relation calculus on a finite universe: composition, intersection,
//! images along maps, and congruence generation.
//!
//! Composition is read left to right: `(x, z) ∈ R∘S` iff `x R y` and
//! `y S z` for some `y`.

mod binrel;
mod partition;

use alloc::vec;
use alloc::vec::Vec;

pub use binrel::BinRel;
pub use partition::Partition;
pub(crate) use partition::UnionFind;

use crate::algebra::{decode_tuple, ElementMap, FiniteAlgebra};
use crate::error::{Error, Result};

fn same_size(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::SizeMismatch { expected, found })
    }
}

pub fn compose(r: &BinRel, s: &BinRel) -> Result<BinRel> {
    same_size(r.size(), s.size())?;
    Ok(r.compose(s))
}

pub fn intersect(r: &BinRel, s: &BinRel) -> Result<BinRel> {
    same_size(r.size(), s.size())?;
    Ok(r.intersect(s))
}

/// Smallest equivalence relation containing `r`.
pub fn union_closure(r: &BinRel) -> Partition {
    let mut uf = UnionFind::new(r.size());
    for (x, y) in r.pairs() {
        uf.union(x, y);
    }
    uf.into_partition()
}

/// Direct image `{(f x, f y) : (x, y) ∈ R}`, no closure applied. The map must
/// be surjective.
pub fn image(f: &ElementMap, r: &BinRel) -> Result<BinRel> {
    same_size(f.source_size(), r.size())?;
    if !f.is_surjective() {
        return Err(Error::NotSurjective);
    }
    Ok(BinRel::from_pairs(
        f.target_size(),
        r.pairs().into_iter().map(|(x, y)| (f.apply(x), f.apply(y))),
    ))
}

/// `{(x, y) : (f x, f y) ∈ R}`.
pub fn preimage(f: &ElementMap, r: &BinRel) -> Result<BinRel> {
    same_size(f.target_size(), r.size())?;
    let n = f.source_size();
    let mut out = BinRel::empty(n);
    for x in 0..n {
        for y in 0..n {
            if r.contains(f.apply(x), f.apply(y)) {
                out.insert(x, y);
            }
        }
    }
    Ok(out)
}

/// Partition of the source by equal values.
pub fn kernel(f: &ElementMap) -> Partition {
    Partition::from_labels(f.values())
}

/// Least congruence of `a` containing every seed pair.
///
/// Union-find closure: each pair that merges two classes is queued, and for
/// every basic operation, every argument position and every choice of the
/// remaining arguments, the two translated values are merged in turn. The
/// queued pairs generate the current equivalence, so the fixpoint is
/// compatible with every operation.
pub fn generated_congruence(
    a: &FiniteAlgebra,
    seed: impl IntoIterator<Item = (usize, usize)>,
) -> Result<Partition> {
    let n = a.size();
    let mut uf = UnionFind::new(n);
    let mut queue = Vec::new();
    for (x, y) in seed {
        for e in [x, y] {
            if e >= n {
                return Err(Error::ElementOutOfRange {
                    element: e,
                    size: n,
                });
            }
        }
        if uf.union(x, y) {
            queue.push((x, y));
        }
    }
    close_under_translations(a, &mut uf, queue);
    Ok(uf.into_partition())
}

pub(crate) fn close_under_translations(
    a: &FiniteAlgebra,
    uf: &mut UnionFind,
    mut queue: Vec<(usize, usize)>,
) {
    let n = a.size();
    while let Some((x, y)) = queue.pop() {
        for op in a.operations() {
            let k = op.arity();
            if k == 0 {
                continue;
            }
            let stride_count = crate::algebra::table_len(n, k - 1);
            let mut rest = vec![0; k - 1];
            for coord in 0..k {
                // position weight of `coord` in the row-major index
                let weight = crate::algebra::table_len(n, k - 1 - coord);
                for r in 0..stride_count {
                    decode_tuple(r, n, &mut rest);
                    let mut base = 0;
                    for (pos, &v) in rest.iter().enumerate() {
                        let p = if pos < coord { pos } else { pos + 1 };
                        base += v * crate::algebra::table_len(n, k - 1 - p);
                    }
                    let u = op.at(base + x * weight);
                    let v = op.at(base + y * weight);
                    if uf.union(u, v) {
                        queue.push((u, v));
                    }
                }
            }
        }
    }
}

/// Verifies that `theta` is compatible with every operation of `a`,
/// reporting the first violation found.
pub fn check_congruence(a: &FiniteAlgebra, theta: &Partition) -> Result<()> {
    let n = a.size();
    same_size(n, theta.size())?;
    let pairs = theta.spanning_pairs();
    for op in a.operations() {
        let k = op.arity();
        if k == 0 {
            continue;
        }
        let mut rest = vec![0; k - 1];
        for coord in 0..k {
            for r in 0..crate::algebra::table_len(n, k - 1) {
                decode_tuple(r, n, &mut rest);
                let mut args = Vec::with_capacity(k);
                args.extend_from_slice(&rest[..coord]);
                args.push(0);
                args.extend_from_slice(&rest[coord..]);
                for &(x, y) in &pairs {
                    args[coord] = x;
                    let u = op.apply(n, &args);
                    args[coord] = y;
                    let v = op.apply(n, &args);
                    if !theta.related(u, v) {
                        args[coord] = x;
                        return Err(Error::NotCongruence {
                            symbol: op.name().into(),
                            coordinate: coord,
                            pair: (x, y),
                            args,
                        });
                    }
                }
            }
        }
    }
    Ok(())
}

pub fn is_congruence(a: &FiniteAlgebra, theta: &Partition) -> bool {
    check_congruence(a, theta).is_ok()
}

/// Join of two congruences, computed as the congruence generated by their
/// union.
pub fn join(a: &FiniteAlgebra, theta: &Partition, phi: &Partition) -> Result<Partition> {
    check_congruence(a, theta)?;
    check_congruence(a, phi)?;
    generated_congruence(
        a,
        theta
            .spanning_pairs()
            .into_iter()
            .chain(phi.spanning_pairs()),
    )
}

/// Principal congruence `Cg(x, y)`.
pub fn principal(a: &FiniteAlgebra, x: usize, y: usize) -> Result<Partition> {
    generated_congruence(a, [(x, y)])
}
