//! The commutator `[α, β]` of two congruences, the center, and bounded
//! searches for Mal'tsev and majority terms.
//!
//! `[α, β]` is built from the subalgebra `M ≤ A⁴` generated by the
//! matrices `(a, b, a, b)` with `a α b` and `(c, c, d, d)` with `c β d`,
//! read as `(x11, x12, x21, x22)`: it is the congruence generated by the
//! pairs `(x21, x22)` of the matrices with `x11 = x12`.
//!
//! When the algebra has a Mal'tsev term, `M` viewed as a relation on the
//! subalgebra `α ≤ A²` is reflexive and compatible, hence the congruence of
//! `α` generated by the pairs `((c, c), (d, d))`. That route costs a
//! congruence closure on at most `n²` elements instead of a subalgebra
//! closure in `A⁴`.

mod search;
mod term;

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

pub use search::{
    find_term, find_term_with_limits, SearchLimits, TermKind, TermSearch, DEFAULT_CLONE_LIMIT,
    DEFAULT_EVALUATION_BUDGET,
};
pub use term::Term;

use crate::algebra::{FiniteAlgebra, Operation};
use crate::error::Result;
use crate::relations::{self, Partition};

/// All `(x11, x12, x21, x22)` in `M(α, β)`, in generation order.
pub fn matrix_subalgebra(
    a: &FiniteAlgebra,
    alpha: &Partition,
    beta: &Partition,
) -> Result<Vec<[usize; 4]>> {
    relations::check_congruence(a, alpha)?;
    relations::check_congruence(a, beta)?;
    let n = a.size();
    let code = |t: &[usize; 4]| ((t[0] * n + t[1]) * n + t[2]) * n + t[3];
    let mut seen = vec![false; n.pow(4)];
    let mut elems: Vec<[usize; 4]> = Vec::new();
    let mut add = |t: [usize; 4], elems: &mut Vec<[usize; 4]>| {
        let c = code(&t);
        if !seen[c] {
            seen[c] = true;
            elems.push(t);
        }
    };
    for x in 0..n {
        for y in 0..n {
            if alpha.related(x, y) {
                add([x, y, x, y], &mut elems);
            }
            if beta.related(x, y) {
                add([x, x, y, y], &mut elems);
            }
        }
    }
    for op in a.operations().iter().filter(|op| op.arity() == 0) {
        let c = op.at(0);
        add([c, c, c, c], &mut elems);
    }
    // each argument tuple is visited once, at the step where its largest
    // index is processed
    let mut i = 0;
    while i < elems.len() {
        for op in a.operations().iter().filter(|op| op.arity() > 0) {
            let k = op.arity();
            for pos in 0..k {
                let radix = |t: usize| if t < pos { i } else { i + 1 };
                if (0..k).any(|t| t != pos && radix(t) == 0) {
                    continue;
                }
                let mut pick = vec![0usize; k];
                pick[pos] = i;
                let mut args = vec![0usize; k];
                loop {
                    let mut out = [0usize; 4];
                    for (coord, slot) in out.iter_mut().enumerate() {
                        for t in 0..k {
                            args[t] = elems[pick[t]][coord];
                        }
                        *slot = op.apply(n, &args);
                    }
                    add(out, &mut elems);
                    // advance over positions other than `pos`
                    let mut t = k;
                    let mut carried = true;
                    while carried && t > 0 {
                        t -= 1;
                        if t == pos {
                            continue;
                        }
                        pick[t] += 1;
                        if pick[t] < radix(t) {
                            carried = false;
                        } else {
                            pick[t] = 0;
                        }
                    }
                    if carried {
                        break;
                    }
                }
            }
        }
        i += 1;
    }
    Ok(elems)
}

/// `[α, β]` computed directly from `M(α, β) ≤ A⁴`.
pub fn commutator_by_matrix(
    a: &FiniteAlgebra,
    alpha: &Partition,
    beta: &Partition,
) -> Result<Partition> {
    let m = matrix_subalgebra(a, alpha, beta)?;
    relations::generated_congruence(a, m.iter().filter(|t| t[0] == t[1]).map(|t| (t[2], t[3])))
}

/// `[α, β]` computed as a congruence on the subalgebra `α ≤ A²`. Correct
/// only when the algebra has a Mal'tsev term operation.
pub fn commutator_via_pairs(
    a: &FiniteAlgebra,
    alpha: &Partition,
    beta: &Partition,
) -> Result<Partition> {
    relations::check_congruence(a, alpha)?;
    relations::check_congruence(a, beta)?;
    let n = a.size();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .filter(|&(x, y)| alpha.related(x, y))
        .collect();
    let id: BTreeMap<(usize, usize), usize> =
        pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let m = pairs.len();
    let ops = a
        .operations()
        .iter()
        .map(|op| {
            let k = op.arity();
            let mut left = vec![0; k];
            let mut right = vec![0; k];
            Operation::from_fn(op.name(), k, m, |args| {
                for (t, &p) in args.iter().enumerate() {
                    (left[t], right[t]) = pairs[p];
                }
                id[&(op.apply(n, &left), op.apply(n, &right))]
            })
        })
        .collect();
    let b = FiniteAlgebra::new("alpha", m, ops)?;
    let seeds = (0..n)
        .flat_map(|c| (0..n).map(move |d| (c, d)))
        .filter(|&(c, d)| beta.related(c, d))
        .map(|(c, d)| (id[&(c, c)], id[&(d, d)]));
    let theta = relations::generated_congruence(&b, seeds)?;
    let mut diagonal_class = vec![false; theta.num_classes()];
    for w in 0..n {
        diagonal_class[theta.class_of(id[&(w, w)])] = true;
    }
    relations::generated_congruence(
        a,
        pairs
            .iter()
            .enumerate()
            .filter(|&(i, _)| diagonal_class[theta.class_of(i)])
            .map(|(_, &p)| p),
    )
}

/// Commutator computations for one algebra, gated on a Mal'tsev term
/// search run once up front. Without a Mal'tsev term the matrix route is
/// used and results are advisory.
#[derive(Clone, Debug)]
pub struct CommutatorEngine<'a> {
    alg: &'a FiniteAlgebra,
    gate: TermSearch,
}

impl<'a> CommutatorEngine<'a> {
    pub fn new(alg: &'a FiniteAlgebra) -> Result<Self> {
        Self::with_limits(alg, SearchLimits::default())
    }

    pub fn with_limits(alg: &'a FiniteAlgebra, limits: SearchLimits) -> Result<Self> {
        let gate = find_term_with_limits(alg, TermKind::Maltsev, limits)?;
        Ok(CommutatorEngine { alg, gate })
    }

    /// Outcome of the Mal'tsev term search.
    pub fn gate(&self) -> &TermSearch {
        &self.gate
    }

    pub fn is_advisory(&self) -> bool {
        !self.gate.is_found()
    }

    pub fn commutator(&self, alpha: &Partition, beta: &Partition) -> Result<Partition> {
        if self.gate.is_found() {
            commutator_via_pairs(self.alg, alpha, beta)
        } else {
            commutator_by_matrix(self.alg, alpha, beta)
        }
    }

    /// Principal congruences `Cg(a, b)` with `[Cg(a, b), ∇] = Δ`, distinct,
    /// in lattice order.
    pub fn central_principals(&self) -> Result<Vec<Partition>> {
        let n = self.alg.size();
        let full = Partition::full(n);
        let mut seen = BTreeMap::new();
        for x in 0..n {
            for y in x + 1..n {
                let p = relations::principal(self.alg, x, y)?;
                if seen.contains_key(&p) {
                    continue;
                }
                let central = self.commutator(&p, &full)?.is_identity();
                seen.insert(p, central);
            }
        }
        let mut out: Vec<Partition> = seen
            .into_iter()
            .filter_map(|(p, c)| c.then_some(p))
            .collect();
        crate::lattice::sort_lattice_order(&mut out);
        Ok(out)
    }

    /// `ζ`, the join of the central principal congruences.
    pub fn center(&self) -> Result<Partition> {
        self.alg.require_nonempty()?;
        let n = self.alg.size();
        Ok(self
            .central_principals()?
            .iter()
            .fold(Partition::identity(n), |acc, p| acc.join(p)))
    }

    pub fn is_centerless(&self) -> Result<bool> {
        Ok(self.center()?.is_identity())
    }
}

pub fn commutator(a: &FiniteAlgebra, alpha: &Partition, beta: &Partition) -> Result<Partition> {
    CommutatorEngine::new(a)?.commutator(alpha, beta)
}

pub fn center_congruence(a: &FiniteAlgebra) -> Result<Partition> {
    CommutatorEngine::new(a)?.center()
}

pub fn is_centerless(a: &FiniteAlgebra) -> Result<bool> {
    CommutatorEngine::new(a)?.is_centerless()
}

/// Checks the term condition `C(α, β; δ)` directly on `M(α, β)`: matrices
/// whose top row is `δ`-related have `δ`-related bottom rows.
pub fn centralizes_modulo(
    a: &FiniteAlgebra,
    alpha: &Partition,
    beta: &Partition,
    delta: &Partition,
) -> Result<bool> {
    Ok(matrix_subalgebra(a, alpha, beta)?
        .iter()
        .all(|t| !delta.related(t[0], t[1]) || delta.related(t[2], t[3])))
}
