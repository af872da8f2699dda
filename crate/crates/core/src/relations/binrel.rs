use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::Partition;

const WORD: usize = 64;

/// A binary relation on `{0..n-1}` as a dense row-major bit matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinRel {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl BinRel {
    pub fn empty(n: usize) -> Self {
        let words = n.div_ceil(WORD);
        BinRel {
            n,
            words,
            bits: vec![0; n * words],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut r = BinRel::empty(n);
        for x in 0..n {
            r.insert(x, x);
        }
        r
    }

    pub fn full(n: usize) -> Self {
        let mut r = BinRel::empty(n);
        for x in 0..n {
            for y in 0..n {
                r.insert(x, y);
            }
        }
        r
    }

    /// Panics if a pair is out of range.
    pub fn from_pairs(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut r = BinRel::empty(n);
        for (x, y) in pairs {
            r.insert(x, y);
        }
        r
    }

    pub fn size(&self) -> usize {
        self.n
    }

    fn row(&self, x: usize) -> &[u64] {
        &self.bits[x * self.words..(x + 1) * self.words]
    }

    fn row_mut(&mut self, x: usize) -> &mut [u64] {
        &mut self.bits[x * self.words..(x + 1) * self.words]
    }

    pub fn contains(&self, x: usize, y: usize) -> bool {
        assert!(x < self.n && y < self.n, "pair out of range");
        self.bits[x * self.words + y / WORD] >> (y % WORD) & 1 == 1
    }

    pub fn insert(&mut self, x: usize, y: usize) {
        assert!(x < self.n && y < self.n, "pair out of range");
        self.bits[x * self.words + y / WORD] |= 1 << (y % WORD);
    }

    /// Sorted pair list.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for x in 0..self.n {
            for y in self.successors(x) {
                out.push((x, y));
            }
        }
        out
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    /// The `y` with `(x, y)` in the relation, ascending.
    pub fn successors(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(x).iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            core::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * WORD + b)
            })
        })
    }

    /// `(x, z)` is in `self.compose(other)` iff some `y` has `x self y` and
    /// `y other z`.
    pub fn compose(&self, other: &BinRel) -> BinRel {
        assert_eq!(self.n, other.n, "relation size mismatch");
        let mut out = BinRel::empty(self.n);
        for x in 0..self.n {
            let ys: Vec<usize> = self.successors(x).collect();
            let row = out.row_mut(x);
            for y in ys {
                for (dst, src) in row.iter_mut().zip(other.row(y)) {
                    *dst |= *src;
                }
            }
        }
        out
    }

    pub fn intersect(&self, other: &BinRel) -> BinRel {
        assert_eq!(self.n, other.n, "relation size mismatch");
        BinRel {
            n: self.n,
            words: self.words,
            bits: self
                .bits
                .iter()
                .zip(&other.bits)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    pub fn union(&self, other: &BinRel) -> BinRel {
        assert_eq!(self.n, other.n, "relation size mismatch");
        BinRel {
            n: self.n,
            words: self.words,
            bits: self
                .bits
                .iter()
                .zip(&other.bits)
                .map(|(a, b)| a | b)
                .collect(),
        }
    }

    pub fn transpose(&self) -> BinRel {
        let mut out = BinRel::empty(self.n);
        for (x, y) in self.pairs() {
            out.insert(y, x);
        }
        out
    }

    pub fn is_subset(&self, other: &BinRel) -> bool {
        assert_eq!(self.n, other.n, "relation size mismatch");
        self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0)
    }

    /// Some pair of `self` missing from `other`, least first.
    pub fn first_missing_from(&self, other: &BinRel) -> Option<(usize, usize)> {
        assert_eq!(self.n, other.n, "relation size mismatch");
        (0..self.n).find_map(|x| {
            self.successors(x)
                .find(|&y| !other.contains(x, y))
                .map(|y| (x, y))
        })
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.n).all(|x| self.contains(x, x))
    }

    pub fn is_symmetric(&self) -> bool {
        *self == self.transpose()
    }

    pub fn is_transitive(&self) -> bool {
        self.compose(self).is_subset(self)
    }

    pub fn is_equivalence(&self) -> bool {
        self.is_reflexive() && self.is_symmetric() && self.is_transitive()
    }

    /// The partition this relation induces, if it is an equivalence.
    pub fn to_partition(&self) -> Option<Partition> {
        if !self.is_equivalence() {
            return None;
        }
        let labels: Vec<usize> = (0..self.n)
            .map(|x| self.successors(x).next().unwrap_or(x))
            .collect();
        Some(Partition::from_labels(&labels))
    }
}

impl From<&Partition> for BinRel {
    fn from(p: &Partition) -> Self {
        p.to_rel()
    }
}

impl fmt::Debug for BinRel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.pairs()).finish()
    }
}
