use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use super::BinRel;
use crate::error::{Error, Result};

/// Union-find over `0..n`, union by least representative.
#[derive(Clone, Debug)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            let grand = self.parent[self.parent[x]];
            self.parent[x] = grand;
            x = grand;
        }
        x
    }

    /// Returns true if two distinct classes were merged.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let a = self.find(a);
        let b = self.find(b);
        if a == b {
            return false;
        }
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        self.parent[hi] = lo;
        true
    }

    pub(crate) fn into_partition(mut self) -> Partition {
        let n = self.parent.len();
        let roots: Vec<usize> = (0..n).map(|x| self.find(x)).collect();
        Partition::from_labels(&roots)
    }
}

/// An equivalence relation on `{0..n-1}`, stored as a normalized class-id
/// vector: scanning elements in order, class ids appear as `0, 1, 2, ...`,
/// so class `i` is the class whose least member is the `i`-th smallest
/// least member.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    ids: Vec<usize>,
    classes: usize,
}

impl Partition {
    /// The finest partition Δ.
    pub fn identity(n: usize) -> Self {
        Partition {
            ids: (0..n).collect(),
            classes: n,
        }
    }

    /// The coarsest partition ∇.
    pub fn full(n: usize) -> Self {
        Partition {
            ids: vec![0; n],
            classes: usize::from(n > 0),
        }
    }

    /// Builds a partition from arbitrary labels; elements with equal labels
    /// share a class.
    pub fn from_labels<T: Ord + Clone>(labels: &[T]) -> Self {
        let mut seen: alloc::collections::BTreeMap<T, usize> = Default::default();
        let mut ids = Vec::with_capacity(labels.len());
        for label in labels {
            let next = seen.len();
            let id = *seen.entry(label.clone()).or_insert(next);
            ids.push(id);
        }
        Partition {
            ids,
            classes: seen.len(),
        }
    }

    /// Builds a partition from a list of classes that must cover `0..n`
    /// exactly once.
    pub fn from_classes(n: usize, classes: &[Vec<usize>]) -> Result<Self> {
        let mut label = vec![usize::MAX; n];
        for (c, class) in classes.iter().enumerate() {
            if class.is_empty() {
                return Err(Error::InvalidPartition("empty class".into()));
            }
            for &x in class {
                if x >= n {
                    return Err(Error::ElementOutOfRange {
                        element: x,
                        size: n,
                    });
                }
                if label[x] != usize::MAX {
                    return Err(Error::InvalidPartition(alloc::format!(
                        "element {x} appears in more than one class"
                    )));
                }
                label[x] = c;
            }
        }
        if let Some(x) = label.iter().position(|&l| l == usize::MAX) {
            return Err(Error::InvalidPartition(alloc::format!(
                "element {x} is not covered"
            )));
        }
        Ok(Partition::from_labels(&label))
    }

    pub fn size(&self) -> usize {
        self.ids.len()
    }

    pub fn num_classes(&self) -> usize {
        self.classes
    }

    pub fn class_of(&self, x: usize) -> usize {
        self.ids[x]
    }

    pub fn class_ids(&self) -> &[usize] {
        &self.ids
    }

    pub fn related(&self, x: usize, y: usize) -> bool {
        self.ids[x] == self.ids[y]
    }

    pub fn is_identity(&self) -> bool {
        self.classes == self.ids.len()
    }

    pub fn is_full(&self) -> bool {
        self.classes <= 1
    }

    /// Classes as sorted lists, ordered by least member.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.classes];
        for (x, &c) in self.ids.iter().enumerate() {
            out[c].push(x);
        }
        out
    }

    /// Least member of each class, indexed by class id.
    pub fn representatives(&self) -> Vec<usize> {
        let mut reps = vec![usize::MAX; self.classes];
        for (x, &c) in self.ids.iter().enumerate() {
            if reps[c] == usize::MAX {
                reps[c] = x;
            }
        }
        reps
    }

    /// Pairs `(r, x)` linking each element to its class representative,
    /// skipping `x == r`. These generate the partition as an equivalence.
    pub fn spanning_pairs(&self) -> Vec<(usize, usize)> {
        let reps = self.representatives();
        self.ids
            .iter()
            .enumerate()
            .filter_map(|(x, &c)| (reps[c] != x).then_some((reps[c], x)))
            .collect()
    }

    /// `self ⊆ other` as relations.
    pub fn refines(&self, other: &Partition) -> bool {
        assert_eq!(self.size(), other.size(), "partition size mismatch");
        let mut image = vec![usize::MAX; self.classes];
        for (x, &c) in self.ids.iter().enumerate() {
            let d = other.ids[x];
            if image[c] == usize::MAX {
                image[c] = d;
            } else if image[c] != d {
                return false;
            }
        }
        true
    }

    pub fn meet(&self, other: &Partition) -> Partition {
        assert_eq!(self.size(), other.size(), "partition size mismatch");
        let labels: Vec<(usize, usize)> = self
            .ids
            .iter()
            .zip(&other.ids)
            .map(|(&a, &b)| (a, b))
            .collect();
        Partition::from_labels(&labels)
    }

    /// Join in the lattice of equivalence relations. For two congruences
    /// this is also their join in the congruence lattice.
    pub fn join(&self, other: &Partition) -> Partition {
        assert_eq!(self.size(), other.size(), "partition size mismatch");
        let mut uf = UnionFind::new(self.size());
        for p in [self, other] {
            for (r, x) in p.spanning_pairs() {
                uf.union(r, x);
            }
        }
        uf.into_partition()
    }

    pub fn to_rel(&self) -> BinRel {
        let n = self.size();
        let mut rel = BinRel::empty(n);
        for class in self.classes() {
            for &x in &class {
                for &y in &class {
                    rel.insert(x, y);
                }
            }
        }
        rel
    }

    /// Total order used for every listing of congruences: more classes
    /// first, then lexicographic on the sorted class lists.
    pub fn lattice_cmp(&self, other: &Partition) -> Ordering {
        other
            .classes
            .cmp(&self.classes)
            .then_with(|| self.classes().cmp(&other.classes()))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Renders as `[[0,2,4],[1,3,5]]`.
impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, class) in self.classes().iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str("[")?;
            for (j, x) in class.iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}
