//! Finite algebras given by operation tables, with homomorphisms, products
//! and quotients.
//!
//! Elements of an algebra of size `n` are `0..n`. The table of an operation
//! of arity `k` is flat and row-major: the arguments `(a1, ..., ak)` sit at
//! index `a1·n^(k-1) + ... + ak`. A constant has a single entry.

mod iso;

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::relations::{self, Partition};

pub use iso::find_isomorphism;

/// One basic operation and its table.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Operation {
    name: String,
    arity: usize,
    table: Vec<usize>,
}

impl Operation {
    /// An unchecked operation; validation happens when it is placed in a
    /// [`FiniteAlgebra`].
    pub fn new(name: impl Into<String>, arity: usize, table: Vec<usize>) -> Self {
        Operation {
            name: name.into(),
            arity,
            table,
        }
    }

    /// Tabulates `f` over all argument tuples of `0..size`.
    pub fn from_fn(
        name: impl Into<String>,
        arity: usize,
        size: usize,
        mut f: impl FnMut(&[usize]) -> usize,
    ) -> Self {
        let len = table_len(size, arity);
        let mut args = vec![0; arity];
        let table = (0..len)
            .map(|idx| {
                decode_tuple(idx, size, &mut args);
                f(&args)
            })
            .collect();
        Operation::new(name, arity, table)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    /// Value at the given flat table index.
    pub fn at(&self, index: usize) -> usize {
        self.table[index]
    }

    pub fn apply(&self, size: usize, args: &[usize]) -> usize {
        debug_assert_eq!(args.len(), self.arity);
        self.table[encode_tuple(args, size)]
    }
}

/// `n^k`, the number of argument tuples for arity `k`.
pub fn table_len(n: usize, k: usize) -> usize {
    n.checked_pow(k as u32).expect("operation table too large")
}

pub(crate) fn encode_tuple(args: &[usize], n: usize) -> usize {
    args.iter().fold(0, |acc, &a| acc * n + a)
}

/// Writes the tuple at flat index `idx` into `out` (first argument most
/// significant).
pub(crate) fn decode_tuple(mut idx: usize, n: usize, out: &mut [usize]) {
    for slot in out.iter_mut().rev() {
        *slot = idx % n;
        idx /= n;
    }
}

/// Operation symbols with their arities.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Signature {
    symbols: Vec<(String, usize)>,
}

impl Signature {
    pub fn new(symbols: Vec<(String, usize)>) -> Result<Self> {
        for (i, (name, _)) in symbols.iter().enumerate() {
            if symbols[..i].iter().any(|(other, _)| other == name) {
                return Err(Error::DuplicateSymbol(name.clone()));
            }
        }
        Ok(Signature { symbols })
    }

    pub fn symbols(&self) -> &[(String, usize)] {
        &self.symbols
    }

    pub fn arity_of(&self, name: &str) -> Option<usize> {
        self.symbols
            .iter()
            .find(|(s, _)| s == name)
            .map(|&(_, a)| a)
    }

    pub fn max_arity(&self) -> usize {
        self.symbols.iter().map(|&(_, a)| a).max().unwrap_or(0)
    }

    /// Same symbols with the same arities, in any order.
    pub fn matches(&self, other: &Signature) -> bool {
        self.symbols.len() == other.symbols.len()
            && self
                .symbols
                .iter()
                .all(|(name, arity)| other.arity_of(name) == Some(*arity))
    }
}

/// A finite algebra over a signature, with validated tables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteAlgebra {
    name: String,
    size: usize,
    signature: Signature,
    ops: Vec<Operation>,
}

impl FiniteAlgebra {
    pub fn new(name: impl Into<String>, size: usize, ops: Vec<Operation>) -> Result<Self> {
        let signature = Signature::new(ops.iter().map(|op| (op.name.clone(), op.arity)).collect())?;
        for op in &ops {
            let expected = size
                .checked_pow(op.arity as u32)
                .ok_or_else(|| Error::TableLength {
                    symbol: op.name.clone(),
                    expected: usize::MAX,
                    found: op.table.len(),
                })?;
            if op.table.len() != expected {
                return Err(Error::TableLength {
                    symbol: op.name.clone(),
                    expected,
                    found: op.table.len(),
                });
            }
            if let Some(index) = op.table.iter().position(|&v| v >= size) {
                return Err(Error::EntryOutOfRange {
                    symbol: op.name.clone(),
                    index,
                    value: op.table[index],
                    size,
                });
            }
        }
        Ok(FiniteAlgebra {
            name: name.into(),
            size,
            signature,
            ops,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn operations(&self) -> &[Operation] {
        &self.ops
    }

    pub fn operation(&self, name: &str) -> Option<&Operation> {
        self.ops.iter().find(|op| op.name == name)
    }

    pub(crate) fn operation_index(&self, name: &str) -> Option<usize> {
        self.ops.iter().position(|op| op.name == name)
    }

    /// Pairs `(i, j)` where operation `i` of `self` has the same symbol as
    /// operation `j` of `other`.
    pub(crate) fn align(&self, other: &FiniteAlgebra) -> Result<Vec<(usize, usize)>> {
        if !self.signature.matches(&other.signature) {
            return Err(Error::SignatureMismatch(alloc::format!(
                "`{}` and `{}` have different signatures",
                self.name,
                other.name
            )));
        }
        Ok(self
            .ops
            .iter()
            .enumerate()
            .map(|(i, op)| (i, other.operation_index(&op.name).expect("matched")))
            .collect())
    }

    pub(crate) fn require_nonempty(&self) -> Result<()> {
        if self.size == 0 {
            Err(Error::NoGlobalSupport)
        } else {
            Ok(())
        }
    }
}

/// A total map between universes of sizes `values.len()` and `target_size`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ElementMap {
    target_size: usize,
    values: Vec<usize>,
}

impl ElementMap {
    pub fn new(target_size: usize, values: Vec<usize>) -> Result<Self> {
        if let Some(&v) = values.iter().find(|&&v| v >= target_size) {
            return Err(Error::ElementOutOfRange {
                element: v,
                size: target_size,
            });
        }
        Ok(ElementMap {
            target_size,
            values,
        })
    }

    pub fn identity(n: usize) -> Self {
        ElementMap {
            target_size: n,
            values: (0..n).collect(),
        }
    }

    pub fn source_size(&self) -> usize {
        self.values.len()
    }

    pub fn target_size(&self) -> usize {
        self.target_size
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn apply(&self, x: usize) -> usize {
        self.values[x]
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.target_size];
        for &v in &self.values {
            hit[v] = true;
        }
        hit.into_iter().all(|h| h)
    }

    pub fn is_injective(&self) -> bool {
        let mut hit = vec![false; self.target_size];
        for &v in &self.values {
            if core::mem::replace(&mut hit[v], true) {
                return false;
            }
        }
        true
    }

    pub fn is_bijective(&self) -> bool {
        self.values.len() == self.target_size && self.is_injective()
    }

    /// `then ∘ self`.
    pub fn then(&self, then: &ElementMap) -> Result<ElementMap> {
        if then.source_size() != self.target_size {
            return Err(Error::SizeMismatch {
                expected: self.target_size,
                found: then.source_size(),
            });
        }
        Ok(ElementMap {
            target_size: then.target_size,
            values: self.values.iter().map(|&v| then.values[v]).collect(),
        })
    }

    pub fn inverse(&self) -> Option<ElementMap> {
        if !self.is_bijective() {
            return None;
        }
        let mut values = vec![0; self.target_size];
        for (x, &v) in self.values.iter().enumerate() {
            values[v] = x;
        }
        Some(ElementMap {
            target_size: self.values.len(),
            values,
        })
    }
}

/// A place where a map fails to commute with an operation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomViolation {
    pub symbol: String,
    pub args: Vec<usize>,
}

/// The first operation/argument tuple (in table order) where `f` does not
/// commute with the operations, or `None` if `f` is a homomorphism.
pub fn homomorphism_violation(
    a: &FiniteAlgebra,
    b: &FiniteAlgebra,
    f: &ElementMap,
) -> Result<Option<HomViolation>> {
    if f.source_size() != a.size {
        return Err(Error::SizeMismatch {
            expected: a.size,
            found: f.source_size(),
        });
    }
    if f.target_size() != b.size {
        return Err(Error::SizeMismatch {
            expected: b.size,
            found: f.target_size(),
        });
    }
    let aligned = a.align(b)?;
    for (i, j) in aligned {
        let (op_a, op_b) = (&a.ops[i], &b.ops[j]);
        let mut args = vec![0; op_a.arity];
        let mut mapped = vec![0; op_a.arity];
        for idx in 0..op_a.table.len() {
            decode_tuple(idx, a.size, &mut args);
            for (m, &x) in mapped.iter_mut().zip(&args) {
                *m = f.apply(x);
            }
            if f.apply(op_a.table[idx]) != op_b.apply(b.size, &mapped) {
                return Ok(Some(HomViolation {
                    symbol: op_a.name.clone(),
                    args,
                }));
            }
        }
    }
    Ok(None)
}

pub fn is_homomorphism(a: &FiniteAlgebra, b: &FiniteAlgebra, f: &ElementMap) -> Result<bool> {
    homomorphism_violation(a, b, f).map(|v| v.is_none())
}

/// `A × B` with the pair `(x, y)` encoded as `x·|B| + y`, and its two
/// projections.
pub fn product(
    a: &FiniteAlgebra,
    b: &FiniteAlgebra,
) -> Result<(FiniteAlgebra, ElementMap, ElementMap)> {
    let aligned = a.align(b)?;
    let (na, nb) = (a.size, b.size);
    let n = na * nb;
    let ops = aligned
        .into_iter()
        .map(|(i, j)| {
            let (op_a, op_b) = (&a.ops[i], &b.ops[j]);
            let k = op_a.arity;
            let mut left = vec![0; k];
            let mut right = vec![0; k];
            Operation::from_fn(op_a.name.clone(), k, n, |args| {
                for (t, &p) in args.iter().enumerate() {
                    left[t] = p / nb;
                    right[t] = p % nb;
                }
                op_a.apply(na, &left) * nb + op_b.apply(nb, &right)
            })
        })
        .collect();
    let name = alloc::format!("{}x{}", a.name, b.name);
    let prod = FiniteAlgebra::new(name, n, ops)?;
    let first = ElementMap {
        target_size: na,
        values: (0..n).map(|p| p / nb).collect(),
    };
    let second = ElementMap {
        target_size: nb,
        values: (0..n).map(|p| p % nb).collect(),
    };
    Ok((prod, first, second))
}

/// The isomorphic copy of `a` carried along the bijection `sigma`.
pub fn relabel(a: &FiniteAlgebra, sigma: &ElementMap) -> Result<FiniteAlgebra> {
    if !sigma.is_bijective() || sigma.source_size() != a.size {
        return Err(Error::NotBijective);
    }
    let inv = sigma.inverse().expect("bijective");
    let ops = a
        .ops
        .iter()
        .map(|op| {
            let mut pre = vec![0; op.arity];
            Operation::from_fn(op.name.clone(), op.arity, a.size, |args| {
                for (p, &x) in pre.iter_mut().zip(args) {
                    *p = inv.apply(x);
                }
                sigma.apply(op.apply(a.size, &pre))
            })
        })
        .collect();
    FiniteAlgebra::new(a.name.clone(), a.size, ops)
}

/// `A/θ` with classes numbered by least member, and the canonical map.
pub fn quotient(a: &FiniteAlgebra, theta: &Partition) -> Result<(FiniteAlgebra, ElementMap)> {
    relations::check_congruence(a, theta)?;
    let reps = theta.representatives();
    let m = theta.num_classes();
    let ops = a
        .ops
        .iter()
        .map(|op| {
            let mut lifted = vec![0; op.arity];
            Operation::from_fn(op.name.clone(), op.arity, m, |args| {
                for (l, &c) in lifted.iter_mut().zip(args) {
                    *l = reps[c];
                }
                theta.class_of(op.apply(a.size, &lifted))
            })
        })
        .collect();
    let name = alloc::format!("{}/{}", a.name, theta);
    let q = FiniteAlgebra::new(name, m, ops)?;
    let map = ElementMap {
        target_size: m,
        values: theta.class_ids().to_vec(),
    };
    Ok((q, map))
}

impl core::fmt::Display for FiniteAlgebra {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "{} (size {}", self.name, self.size)?;
        for op in &self.ops {
            write!(f, ", {}/{}", op.name, op.arity)?;
        }
        f.write_str(")")
    }
}

impl core::fmt::Display for Signature {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        for (i, (s, a)) in self.symbols.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{s}/{a}")?;
        }
        Ok(())
    }
}
