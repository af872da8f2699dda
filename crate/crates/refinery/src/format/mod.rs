//! JSON documents for algebras, partitions, lattices, verdicts and trees.

mod algebra;
mod lattice;
mod tree;
mod verdict;

pub use algebra::{
    algebra_to_doc, algebra_to_json, parse_algebra, AlgebraDoc, OperationDoc, TableDoc,
};
pub use lattice::{CongruencesDoc, FactorLatticeDoc, FlagsDoc, LatticeDoc, PushoutDoc};
pub use tree::{tree_from_doc, TreeDoc};
pub use verdict::{
    verdict_from_doc, FailureDoc, LawDoc, NonUniqueDoc, OpDoc, VerdictDoc, WitnessDoc,
};

use refinery_core::{BinRel, Partition};
use serde::de::DeserializeOwned;

/// A partition as its list of classes, each sorted, ordered by least member.
pub type Classes = Vec<Vec<usize>>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FormatError {
    /// Malformed or invalid document; `path` locates the offending entry.
    #[error("{}{message}", if path.is_empty() { String::new() } else { format!("{path}: ") })]
    Invalid { path: String, message: String },
    #[error(transparent)]
    Core(#[from] refinery_core::Error),
}

impl FormatError {
    pub(crate) fn at(path: impl Into<String>, message: impl Into<String>) -> Self {
        FormatError::Invalid {
            path: path.into(),
            message: message.into(),
        }
    }

    pub fn path(&self) -> Option<&str> {
        match self {
            FormatError::Invalid { path, .. } => Some(path),
            FormatError::Core(_) => None,
        }
    }
}

/// Deserializes `text`, reporting the path of the first failing value.
pub fn from_json<T: DeserializeOwned>(text: &str) -> Result<T, FormatError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let value = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let path = if path == "." { String::new() } else { path };
        FormatError::at(path, e.into_inner().to_string())
    })?;
    Ok(value)
}

pub fn partition_to_classes(p: &Partition) -> Classes {
    p.classes()
}

/// Classes covering exactly `0..n`.
pub fn partition_from_classes(n: usize, classes: &[Vec<usize>]) -> Result<Partition, FormatError> {
    Ok(Partition::from_classes(n, classes)?)
}

/// Size inferred from the classes themselves.
pub(crate) fn partition_inferred(classes: &[Vec<usize>]) -> Result<Partition, FormatError> {
    partition_from_classes(classes.iter().map(Vec::len).sum(), classes)
}

/// Parses `[[0,2,4],[1,3,5]]` as a partition of `0..n`.
pub fn parse_partition(text: &str, n: usize) -> Result<Partition, FormatError> {
    let classes: Classes = from_json(text)?;
    partition_from_classes(n, &classes)
}

pub fn partition_to_json(p: &Partition) -> String {
    serde_json::to_string(&p.classes()).expect("classes serialize")
}

pub fn rel_to_pairs(r: &BinRel) -> Vec<(usize, usize)> {
    r.pairs()
}

pub fn rel_from_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<BinRel, FormatError> {
    if let Some(&(x, y)) = pairs.iter().find(|&&(x, y)| x >= n || y >= n) {
        return Err(FormatError::at(
            "",
            format!("pair ({x}, {y}) out of range for size {n}"),
        ));
    }
    Ok(BinRel::from_pairs(n, pairs.iter().copied()))
}
