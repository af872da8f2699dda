//! Bounded generation of the ternary term operations of a finite algebra.
//!
//! A ternary term operation is only ever compared against an identity, so
//! it is stored restricted to the argument triples the identity mentions:
//! `(x,y,y)` and `(y,y,x)` for Mal'tsev, `(x,x,y)`, `(x,y,x)`, `(y,x,x)` for
//! majority. Composition commutes with this restriction, so the restricted
//! functions form the subalgebra of `A^T` generated by the projections.
//!
//! Functions are produced in order of term size (number of operation
//! symbols), keeping the first term found for each function.

use alloc::vec;
use alloc::vec::Vec;
use core::hash::BuildHasher;

use hashbrown::{DefaultHashBuilder, HashTable};

use super::term::Term;
use crate::algebra::FiniteAlgebra;
use crate::error::Result;

/// Default cap on distinct ternary functions.
pub const DEFAULT_CLONE_LIMIT: usize = 200_000;

/// Default cap on single table lookups spent composing functions.
pub const DEFAULT_EVALUATION_BUDGET: u64 = 200_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TermKind {
    Maltsev,
    Majority,
}

impl TermKind {
    pub fn name(self) -> &'static str {
        match self {
            TermKind::Maltsev => "maltsev",
            TermKind::Majority => "majority",
        }
    }

    /// Triples `(x1, x2, x3)` the identities constrain, with the required
    /// value at each.
    fn constraints(self, n: usize) -> Vec<([usize; 3], usize)> {
        let mut out = Vec::new();
        let mut push = |t: [usize; 3], v: usize| {
            if !out.iter().any(|(s, _)| *s == t) {
                out.push((t, v));
            }
        };
        for x in 0..n {
            for y in 0..n {
                match self {
                    TermKind::Maltsev => {
                        push([x, y, y], x);
                        push([y, y, x], x);
                    }
                    TermKind::Majority => {
                        push([x, x, y], x);
                        push([x, y, x], x);
                        push([y, x, x], x);
                    }
                }
            }
        }
        out
    }

    /// Whether `table` (a full ternary table over a universe of size `n`)
    /// satisfies the identities.
    pub fn holds_for(self, n: usize, table: &[usize]) -> bool {
        self.constraints(n)
            .into_iter()
            .all(|(t, v)| table[(t[0] * n + t[1]) * n + t[2]] == v)
    }
}

/// Outcome of a bounded clone search.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TermSearch {
    Found(Term),
    /// The whole ternary clone was generated and contains no such term.
    Absent {
        functions: usize,
    },
    /// A cap was reached first.
    Unknown {
        functions: usize,
    },
}

impl TermSearch {
    pub fn term(&self) -> Option<&Term> {
        match self {
            TermSearch::Found(t) => Some(t),
            _ => None,
        }
    }

    pub fn is_found(&self) -> bool {
        matches!(self, TermSearch::Found(_))
    }

    pub fn label(&self) -> &'static str {
        match self {
            TermSearch::Found(_) => "found",
            TermSearch::Absent { .. } => "absent",
            TermSearch::Unknown { .. } => "unknown",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SearchLimits {
    pub max_functions: usize,
    pub max_evaluations: u64,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            max_functions: DEFAULT_CLONE_LIMIT,
            max_evaluations: DEFAULT_EVALUATION_BUDGET,
        }
    }
}

enum Origin {
    Proj(usize),
    App(usize, Vec<u32>),
}

struct Generated<'a> {
    alg: &'a FiniteAlgebra,
    width: usize,
    values: Vec<u32>,
    origins: Vec<Origin>,
    table: HashTable<u32>,
    hasher: DefaultHashBuilder,
}

impl Generated<'_> {
    /// Inserts a candidate row, returning its id if it is new.
    fn intern(&mut self, row: &[u32], origin: Origin) -> Option<u32> {
        let hash = self.hasher.hash_one(row);
        let (values, width) = (&self.values, self.width);
        let slice = |id: u32| &values[id as usize * width..(id as usize + 1) * width];
        if self.table.find(hash, |&id| slice(id) == row).is_some() {
            return None;
        }
        let id = self.origins.len() as u32;
        self.values.extend_from_slice(row);
        self.origins.push(origin);
        let (values, hasher) = (&self.values, &self.hasher);
        self.table.insert_unique(hash, id, |&id| {
            hasher.hash_one(&values[id as usize * width..(id as usize + 1) * width])
        });
        Some(id)
    }

    fn term(&self, id: u32) -> Term {
        match &self.origins[id as usize] {
            Origin::Proj(i) => Term::Var(*i),
            Origin::App(op, kids) => Term::App(
                self.alg.operations()[*op].name().into(),
                kids.iter().map(|&k| self.term(k)).collect(),
            ),
        }
    }
}

/// Searches for a Mal'tsev or majority term with the default evaluation
/// budget, stopping after `max_functions` distinct ternary functions.
pub fn find_term(a: &FiniteAlgebra, kind: TermKind, max_functions: usize) -> Result<TermSearch> {
    find_term_with_limits(
        a,
        kind,
        SearchLimits {
            max_functions,
            ..SearchLimits::default()
        },
    )
}

pub fn find_term_with_limits(
    a: &FiniteAlgebra,
    kind: TermKind,
    limits: SearchLimits,
) -> Result<TermSearch> {
    a.require_nonempty()?;
    let n = a.size();
    let constraints = kind.constraints(n);
    let width = constraints.len();
    let target: Vec<u32> = constraints.iter().map(|&(_, v)| v as u32).collect();
    let mut clone = Generated {
        alg: a,
        width,
        values: Vec::new(),
        origins: Vec::new(),
        table: HashTable::new(),
        hasher: DefaultHashBuilder::default(),
    };
    let mut levels: Vec<Vec<u32>> = vec![Vec::new()];
    for i in 0..3 {
        let row: Vec<u32> = constraints.iter().map(|&(t, _)| t[i] as u32).collect();
        if let Some(id) = clone.intern(&row, Origin::Proj(i)) {
            levels[0].push(id);
            if row == target {
                return Ok(TermSearch::Found(Term::Var(i)));
            }
        }
    }
    let max_arity = a
        .operations()
        .iter()
        .map(|op| op.arity())
        .max()
        .unwrap_or(0);
    let mut evaluations = 0u64;
    let mut last_nonempty = 0;
    let mut row = vec![0u32; width];
    let mut args = vec![0usize; max_arity];
    for size in 1.. {
        if size > max_arity.max(1) * last_nonempty + 1 {
            return Ok(TermSearch::Absent {
                functions: clone.origins.len(),
            });
        }
        let mut level = Vec::new();
        for (op_index, op) in a.operations().iter().enumerate() {
            let k = op.arity();
            let splits = if k == 0 {
                if size == 1 {
                    vec![Vec::new()]
                } else {
                    Vec::new()
                }
            } else {
                splits(size - 1, k)
            };
            for parts in splits {
                if parts.iter().any(|&p| levels[p].is_empty()) {
                    continue;
                }
                let mut choice = vec![0usize; k];
                loop {
                    evaluations += width as u64;
                    if evaluations > limits.max_evaluations {
                        return Ok(TermSearch::Unknown {
                            functions: clone.origins.len(),
                        });
                    }
                    let kids: Vec<u32> = (0..k).map(|t| levels[parts[t]][choice[t]]).collect();
                    for (c, slot) in row.iter_mut().enumerate() {
                        for (t, &kid) in kids.iter().enumerate() {
                            args[t] = clone.values[kid as usize * width + c] as usize;
                        }
                        *slot = op.apply(n, &args[..k]) as u32;
                    }
                    if let Some(id) = clone.intern(&row, Origin::App(op_index, kids)) {
                        level.push(id);
                        if row == target {
                            return Ok(TermSearch::Found(clone.term(id)));
                        }
                        if clone.origins.len() >= limits.max_functions {
                            return Ok(TermSearch::Unknown {
                                functions: clone.origins.len(),
                            });
                        }
                    }
                    if !advance(&mut choice, |t| levels[parts[t]].len()) {
                        break;
                    }
                }
            }
        }
        if !level.is_empty() {
            last_nonempty = size;
        }
        levels.push(level);
    }
    unreachable!("the level bound is eventually passed")
}

/// Odometer step; false once every digit has wrapped.
fn advance(choice: &mut [usize], radix: impl Fn(usize) -> usize) -> bool {
    for t in (0..choice.len()).rev() {
        choice[t] += 1;
        if choice[t] < radix(t) {
            return true;
        }
        choice[t] = 0;
    }
    false
}

/// Ordered ways of writing `total` as `k >= 1` nonnegative parts.
fn splits(total: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 1 {
        return vec![vec![total]];
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in splits(total - first, k - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}
