//! Hasse diagrams in Graphviz DOT.

use std::fmt::Write;

use refinery_core::lattice::{CongruenceLattice, FactorLattice};
use refinery_core::Partition;

use crate::format::partition_to_json;

/// A finite lattice of partitions with its covering pairs `(lower, upper)`.
pub trait Hasse {
    fn nodes(&self) -> &[Partition];
    fn cover_pairs(&self) -> Vec<(usize, usize)>;
}

impl Hasse for CongruenceLattice {
    fn nodes(&self) -> &[Partition] {
        self.elements()
    }

    fn cover_pairs(&self) -> Vec<(usize, usize)> {
        self.covers()
    }
}

impl Hasse for FactorLattice {
    fn nodes(&self) -> &[Partition] {
        self.elements()
    }

    fn cover_pairs(&self) -> Vec<(usize, usize)> {
        self.covers()
    }
}

/// Node `n{i}` is element `i`; edges point from each element down to the
/// elements it covers.
pub fn hasse_dot<L: Hasse + ?Sized>(lattice: &L) -> String {
    let mut out = String::from("digraph lattice {\n  node [shape=box];\n");
    for (i, p) in lattice.nodes().iter().enumerate() {
        writeln!(out, "  n{i} [label=\"{}\"];", partition_to_json(p)).unwrap();
    }
    let mut edges = lattice.cover_pairs();
    edges.sort_by_key(|&(lo, hi)| (hi, lo));
    for (lo, hi) in edges {
        writeln!(out, "  n{hi} -> n{lo};").unwrap();
    }
    out.push_str("}\n");
    out
}
