//! The congruence lattice Con(A) and the poset F(A) of factor congruences.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::cmp::Reverse;

use crate::algebra::FiniteAlgebra;
use crate::error::{Error, Result};
use crate::relations::{self, Partition};

/// Default cap on |Con(A)| during enumeration.
pub const DEFAULT_CON_LIMIT: usize = 10_000;

/// Every congruence of an algebra in the fixed listing order (more classes
/// first, then lexicographic on class lists). Index 0 is Δ and the last
/// index is ∇.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CongruenceLattice {
    size: usize,
    elements: Vec<Partition>,
    index: BTreeMap<Partition, usize>,
}

pub(crate) fn sort_lattice_order(v: &mut [Partition]) {
    v.sort_by_cached_key(|p| (Reverse(p.num_classes()), p.classes()));
}

impl CongruenceLattice {
    fn from_elements(size: usize, mut elements: Vec<Partition>) -> Self {
        sort_lattice_order(&mut elements);
        let index = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i))
            .collect();
        CongruenceLattice {
            size,
            elements,
            index,
        }
    }

    pub fn algebra_size(&self) -> usize {
        self.size
    }

    pub fn elements(&self) -> &[Partition] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    /// Always false: Δ is a congruence of every non-empty algebra.
    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index_of(&self, p: &Partition) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn contains(&self, p: &Partition) -> bool {
        self.index.contains_key(p)
    }

    pub fn bottom(&self) -> &Partition {
        &self.elements[0]
    }

    pub fn top(&self) -> &Partition {
        &self.elements[self.elements.len() - 1]
    }

    pub fn join(&self, i: usize, j: usize) -> usize {
        let p = self.elements[i].join(&self.elements[j]);
        self.index_of(&p).expect("Con(A) is closed under joins")
    }

    pub fn meet(&self, i: usize, j: usize) -> usize {
        let p = self.elements[i].meet(&self.elements[j]);
        self.index_of(&p).expect("Con(A) is closed under meets")
    }

    /// Covering pairs `(lower, upper)` of the refinement order.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        covers(&self.elements)
    }
}

/// Con(A) with the default element cap.
pub fn all_congruences(a: &FiniteAlgebra) -> Result<CongruenceLattice> {
    all_congruences_with_limit(a, DEFAULT_CON_LIMIT)
}

/// Con(A) as the join-closure of the principal congruences `Cg(a, b)`.
pub fn all_congruences_with_limit(a: &FiniteAlgebra, limit: usize) -> Result<CongruenceLattice> {
    a.require_nonempty()?;
    let n = a.size();
    let mut principals: Vec<Partition> = Vec::new();
    let mut seen: BTreeMap<Partition, ()> = BTreeMap::new();
    seen.insert(Partition::identity(n), ());
    let mut elements = alloc::vec![Partition::identity(n)];
    for x in 0..n {
        for y in x + 1..n {
            let p = relations::principal(a, x, y)?;
            if seen.insert(p.clone(), ()).is_none() {
                principals.push(p.clone());
                elements.push(p);
                if elements.len() > limit {
                    return Err(Error::CongruenceLimit { limit });
                }
            }
        }
    }
    let mut cursor = 1;
    while cursor < elements.len() {
        let e = elements[cursor].clone();
        cursor += 1;
        for p in &principals {
            if p.refines(&e) {
                continue;
            }
            let j = e.join(p);
            if seen.insert(j.clone(), ()).is_none() {
                elements.push(j);
                if elements.len() > limit {
                    return Err(Error::CongruenceLimit { limit });
                }
            }
        }
    }
    Ok(CongruenceLattice::from_elements(n, elements))
}

/// Why two partitions fail to be a factor pair, with a witness pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FactorPairFailure {
    /// `x ≠ y` related by both, so `F ∩ G ≠ Δ`.
    Overlap { pair: (usize, usize) },
    /// `(x, z)` missing from `F ∘ G`, so `F ∘ G ≠ ∇`.
    NotFull { pair: (usize, usize) },
}

/// Factor-pair test on partitions already known to be congruences.
/// `F ∩ G = Δ` and `F ∘ G = ∇` together say that `x ↦ (F-class, G-class)`
/// is a bijection onto all pairs of classes.
pub(crate) fn factor_pair_defect(f: &Partition, g: &Partition) -> Option<FactorPairFailure> {
    let n = f.size();
    let (kf, kg) = (f.num_classes(), g.num_classes());
    let mut cell = alloc::vec![usize::MAX; kf * kg];
    for x in 0..n {
        let c = f.class_of(x) * kg + g.class_of(x);
        if cell[c] != usize::MAX {
            return Some(FactorPairFailure::Overlap { pair: (cell[c], x) });
        }
        cell[c] = x;
    }
    if let Some(c) = cell.iter().position(|&x| x == usize::MAX) {
        let (fc, gc) = (c / kg, c % kg);
        let x = (0..n)
            .find(|&x| f.class_of(x) == fc)
            .expect("class is non-empty");
        let z = (0..n)
            .find(|&z| g.class_of(z) == gc)
            .expect("class is non-empty");
        return Some(FactorPairFailure::NotFull { pair: (x, z) });
    }
    None
}

/// The first failing condition for `(F, G)` to be a factor pair, or `None`.
pub fn factor_pair_failure(
    a: &FiniteAlgebra,
    f: &Partition,
    g: &Partition,
) -> Result<Option<FactorPairFailure>> {
    relations::check_congruence(a, f)?;
    relations::check_congruence(a, g)?;
    Ok(factor_pair_defect(f, g))
}

/// `F ∩ G = Δ` and `F ∘ G = ∇`.
pub fn is_factor_pair(a: &FiniteAlgebra, f: &Partition, g: &Partition) -> Result<bool> {
    factor_pair_failure(a, f, g).map(|w| w.is_none())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LatticeOp {
    Meet,
    Join,
}

/// Structural flags of F(A).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FactorFlags {
    pub is_sublattice_of_con: bool,
    pub is_distributive: bool,
    pub is_boolean: bool,
    pub complement_unique: bool,
}

/// The factor congruences of an algebra, each with all of its complements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorLattice {
    size: usize,
    elements: Vec<Partition>,
    complements: Vec<Vec<usize>>,
    flags: FactorFlags,
    not_closed: Option<(usize, usize, LatticeOp)>,
    not_distributive: Option<(usize, usize, usize)>,
}

impl FactorLattice {
    pub fn from_congruences(con: &CongruenceLattice) -> Self {
        let n = con.algebra_size();
        let mut by_classes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (i, p) in con.elements().iter().enumerate() {
            by_classes.entry(p.num_classes()).or_default().push(i);
        }
        // complements as Con indices
        let mut raw: Vec<(usize, Vec<usize>)> = Vec::new();
        for (i, f) in con.elements().iter().enumerate() {
            let k = f.num_classes();
            if !n.is_multiple_of(k) {
                continue;
            }
            let comps: Vec<usize> = by_classes
                .get(&(n / k))
                .map(|cands| {
                    cands
                        .iter()
                        .copied()
                        .filter(|&j| factor_pair_defect(f, &con.elements()[j]).is_none())
                        .collect()
                })
                .unwrap_or_default();
            if !comps.is_empty() {
                raw.push((i, comps));
            }
        }
        let position: BTreeMap<usize, usize> = raw
            .iter()
            .enumerate()
            .map(|(pos, &(i, _))| (i, pos))
            .collect();
        let elements: Vec<Partition> = raw
            .iter()
            .map(|(i, _)| con.elements()[*i].clone())
            .collect();
        let complements: Vec<Vec<usize>> = raw
            .iter()
            .map(|(_, comps)| comps.iter().map(|j| position[j]).collect())
            .collect();

        let m = elements.len();
        let mut not_closed = None;
        'closure: for i in 0..m {
            for j in i + 1..m {
                for op in [LatticeOp::Meet, LatticeOp::Join] {
                    let r = match op {
                        LatticeOp::Meet => elements[i].meet(&elements[j]),
                        LatticeOp::Join => elements[i].join(&elements[j]),
                    };
                    if elements
                        .binary_search_by_key(&lattice_key(&r), lattice_key)
                        .is_err()
                    {
                        not_closed = Some((i, j, op));
                        break 'closure;
                    }
                }
            }
        }
        let mut not_distributive = None;
        'dist: for i in 0..m {
            for j in 0..m {
                for k in 0..m {
                    let (f, g, h) = (&elements[i], &elements[j], &elements[k]);
                    if f.meet(&g.join(h)) != f.meet(g).join(&f.meet(h)) {
                        not_distributive = Some((i, j, k));
                        break 'dist;
                    }
                }
            }
        }
        let complement_unique = complements.iter().all(|c| c.len() == 1);
        let bounded = m > 0 && elements[0].is_identity() && elements[m - 1].is_full();
        let flags = FactorFlags {
            is_sublattice_of_con: not_closed.is_none(),
            is_distributive: not_distributive.is_none(),
            is_boolean: bounded && not_distributive.is_none(),
            complement_unique,
        };
        FactorLattice {
            size: n,
            elements,
            complements,
            flags,
            not_closed,
            not_distributive,
        }
    }

    pub fn algebra_size(&self) -> usize {
        self.size
    }

    pub fn elements(&self) -> &[Partition] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Indices of the complements of element `i`.
    pub fn complements_of(&self, i: usize) -> &[usize] {
        &self.complements[i]
    }

    pub fn complements(&self) -> &[Vec<usize>] {
        &self.complements
    }

    pub fn flags(&self) -> FactorFlags {
        self.flags
    }

    pub fn index_of(&self, p: &Partition) -> Option<usize> {
        self.elements
            .binary_search_by_key(&lattice_key(p), lattice_key)
            .ok()
    }

    pub fn contains(&self, p: &Partition) -> bool {
        self.index_of(p).is_some()
    }

    /// Two elements whose meet or join leaves F(A).
    pub fn closure_failure(&self) -> Option<(usize, usize, LatticeOp)> {
        self.not_closed
    }

    /// A triple with `F ∧ (G ∨ H) ≠ (F ∧ G) ∨ (F ∧ H)`.
    pub fn distributivity_failure(&self) -> Option<(usize, usize, usize)> {
        self.not_distributive
    }

    /// A factor congruence with at least two complements.
    pub fn non_unique_complement(&self) -> Option<(usize, usize, usize)> {
        self.complements
            .iter()
            .enumerate()
            .find(|(_, c)| c.len() > 1)
            .map(|(i, c)| (i, c[0], c[1]))
    }

    /// All factor pairs `(i, j)` as index pairs, `i` ascending.
    pub fn factor_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.complements
            .iter()
            .enumerate()
            .flat_map(|(i, c)| c.iter().map(move |&j| (i, j)))
    }

    /// Only Δ and ∇.
    pub fn is_trivial(&self) -> bool {
        self.elements.len() <= 2
    }

    pub fn covers(&self) -> Vec<(usize, usize)> {
        covers(&self.elements)
    }
}

fn lattice_key(p: &Partition) -> (Reverse<usize>, Vec<Vec<usize>>) {
    (Reverse(p.num_classes()), p.classes())
}

/// F(A) with the default cap on Con(A).
pub fn factor_congruences(a: &FiniteAlgebra) -> Result<FactorLattice> {
    Ok(FactorLattice::from_congruences(&all_congruences(a)?))
}

pub fn factor_congruences_with_limit(a: &FiniteAlgebra, limit: usize) -> Result<FactorLattice> {
    Ok(FactorLattice::from_congruences(
        &all_congruences_with_limit(a, limit)?,
    ))
}

/// Covering pairs `(i, j)` among `elements`: `i` strictly refines `j` with
/// nothing strictly between. Sorted.
pub fn covers(elements: &[Partition]) -> Vec<(usize, usize)> {
    let m = elements.len();
    let below: Vec<Vec<bool>> = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| i != j && elements[i].refines(&elements[j]))
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    for i in 0..m {
        for j in 0..m {
            if below[i][j] && !(0..m).any(|k| below[i][k] && below[k][j]) {
                out.push((i, j));
            }
        }
    }
    out
}
