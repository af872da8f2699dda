//! Direct-product decompositions into directly indecomposable factors.

use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Reverse;

use crate::algebra::{
    find_isomorphism, is_homomorphism, product, quotient, ElementMap, FiniteAlgebra,
};
use crate::error::{Error, Result};
use crate::lattice::{
    factor_congruences, factor_congruences_with_limit, FactorLattice, DEFAULT_CON_LIMIT,
};
use crate::relations::Partition;

/// One binary split `A ≅ A/F × A/F′`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Split {
    pub factor: Partition,
    pub complement: Partition,
    /// `x ↦ q_F(x)·|A/F′| + q_F′(x)`, a bijection onto the product.
    pub iso: ElementMap,
    pub children: Box<[DecompositionTree; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionTree {
    pub algebra: FiniteAlgebra,
    pub split: Option<Split>,
}

impl DecompositionTree {
    pub fn is_leaf(&self) -> bool {
        self.split.is_none()
    }

    /// Leaves left to right.
    pub fn leaves(&self) -> Vec<&FiniteAlgebra> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves<'t>(&'t self, out: &mut Vec<&'t FiniteAlgebra>) {
        match &self.split {
            None => out.push(&self.algebra),
            Some(s) => {
                s.children[0].collect_leaves(out);
                s.children[1].collect_leaves(out);
            }
        }
    }

    pub fn leaf_sizes(&self) -> Vec<usize> {
        self.leaves().iter().map(|a| a.size()).collect()
    }

    /// Checks the recorded structure: each split is a factor pair whose map
    /// is a bijective homomorphism onto the product of the children, and
    /// leaf sizes multiply to the root size.
    pub fn validate(&self) -> Result<bool> {
        let Some(s) = &self.split else {
            return Ok(true);
        };
        let [left, right] = &*s.children;
        let (prod, _, _) = product(&left.algebra, &right.algebra)?;
        let ok = s.iso.is_bijective()
            && s.iso.target_size() == prod.size()
            && s.iso.source_size() == self.algebra.size()
            && is_homomorphism(&self.algebra, &prod, &s.iso)?
            && left.validate()?
            && right.validate()?;
        Ok(ok && self.leaf_sizes().iter().product::<usize>() == self.algebra.size())
    }
}

/// `|A| ≥ 2` and the only factor pairs are `(Δ, ∇)` and `(∇, Δ)`.
pub fn is_directly_indecomposable(a: &FiniteAlgebra) -> Result<bool> {
    let fl = factor_congruences(a)?;
    Ok(a.size() >= 2 && fl.is_trivial())
}

/// Nontrivial factor pairs ordered by `|A/F|`, then `F`, then the
/// complement by the same key.
pub fn candidate_splits(fl: &FactorLattice) -> Vec<(Partition, Partition)> {
    let e = fl.elements();
    let key = |p: &Partition| (p.num_classes(), p.classes());
    let mut out: Vec<(Partition, Partition)> = fl
        .factor_pairs()
        .filter(|&(i, _)| !e[i].is_identity() && !e[i].is_full())
        .map(|(i, j)| (e[i].clone(), e[j].clone()))
        .collect();
    out.sort_by_cached_key(|(f, g)| (key(f), key(g)));
    out
}

/// Picks an index into the candidate factor pairs at a node.
pub type SplitChooser<'a> = dyn FnMut(&[(Partition, Partition)]) -> usize + 'a;

/// Splits by the first candidate at every node.
pub fn decompose(a: &FiniteAlgebra) -> Result<DecompositionTree> {
    decompose_by(a, &mut |_| 0)
}

/// Splits at every node by the candidate `choose` selects from
/// [`candidate_splits`] order.
pub fn decompose_by(a: &FiniteAlgebra, choose: &mut SplitChooser<'_>) -> Result<DecompositionTree> {
    decompose_with_limit(a, DEFAULT_CON_LIMIT, choose)
}

pub fn decompose_with_limit(
    a: &FiniteAlgebra,
    con_limit: usize,
    choose: &mut SplitChooser<'_>,
) -> Result<DecompositionTree> {
    let fl = factor_congruences_with_limit(a, con_limit)?;
    let candidates = candidate_splits(&fl);
    if candidates.is_empty() {
        return Ok(DecompositionTree {
            algebra: a.clone(),
            split: None,
        });
    }
    let pick = choose(&candidates).min(candidates.len() - 1);
    let (f, g) = candidates[pick].clone();
    let (qa, mf) = quotient(a, &f)?;
    let (qb, mg) = quotient(a, &g)?;
    let nb = qb.size();
    let iso = ElementMap::new(
        qa.size() * nb,
        (0..a.size())
            .map(|x| mf.apply(x) * nb + mg.apply(x))
            .collect(),
    )?;
    let left = decompose_with_limit(&qa, con_limit, choose)?;
    let right = decompose_with_limit(&qb, con_limit, choose)?;
    Ok(DecompositionTree {
        algebra: a.clone(),
        split: Some(Split {
            factor: f,
            complement: g,
            iso,
            children: Box::new([left, right]),
        }),
    })
}

/// Leaf `left` of the first tree matched with leaf `right` of the second.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeafMatch {
    pub left: usize,
    pub right: usize,
    pub iso: ElementMap,
}

type Fingerprint = (usize, Vec<(String, usize, Vec<usize>)>);

/// Size plus, per operation, the sorted multiset of value counts. Equal
/// for isomorphic algebras.
fn fingerprint(a: &FiniteAlgebra) -> Fingerprint {
    let mut ops: Vec<(String, usize, Vec<usize>)> = a
        .operations()
        .iter()
        .map(|op| {
            let mut counts = alloc::vec![0usize; a.size()];
            for &v in op.table() {
                counts[v] += 1;
            }
            counts.sort_by_key(|&c| Reverse(c));
            (op.name().into(), op.arity(), counts)
        })
        .collect();
    ops.sort();
    (a.size(), ops)
}

/// A bijection between the non-trivial leaves of two decompositions of
/// `a` with an isomorphism for every matched pair. One-element leaves are
/// ignored.
pub fn verify_unique_decomposition(
    a: &FiniteAlgebra,
    t1: &DecompositionTree,
    t2: &DecompositionTree,
) -> Result<Option<Vec<LeafMatch>>> {
    if t1.algebra != *a || t2.algebra != *a {
        return Err(Error::TreeMismatch);
    }
    let keep = |t: &DecompositionTree| -> Vec<(usize, FiniteAlgebra, Fingerprint)> {
        t.leaves()
            .into_iter()
            .enumerate()
            .filter(|(_, l)| l.size() > 1)
            .map(|(i, l)| (i, l.clone(), fingerprint(l)))
            .collect()
    };
    let left = keep(t1);
    let right = keep(t2);
    if left.len() != right.len() {
        return Ok(None);
    }
    let mut used = alloc::vec![false; right.len()];
    let mut out = Vec::new();
    for (li, la, lf) in &left {
        let mut matched = false;
        for (k, (ri, ra, rf)) in right.iter().enumerate() {
            if used[k] || lf != rf {
                continue;
            }
            if let Some(iso) = find_isomorphism(la, ra)? {
                used[k] = true;
                out.push(LeafMatch {
                    left: *li,
                    right: *ri,
                    iso,
                });
                matched = true;
                break;
            }
        }
        // isomorphism is an equivalence, so a greedy choice never blocks a
        // later leaf
        if !matched {
            return Ok(None);
        }
    }
    Ok(Some(out))
}
