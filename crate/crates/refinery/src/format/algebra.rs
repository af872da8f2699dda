use std::collections::BTreeSet;

use refinery_core::algebra::table_len;
use refinery_core::{FiniteAlgebra, Operation};
use serde::{Deserialize, Serialize};

use super::{from_json, FormatError};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraDoc {
    pub name: String,
    pub size: usize,
    pub operations: Vec<OperationDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OperationDoc {
    pub name: String,
    pub arity: usize,
    pub table: TableDoc,
}

/// A constant is written as a bare integer, anything else as a flat table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TableDoc {
    Constant(usize),
    Rows(Vec<usize>),
}

impl AlgebraDoc {
    pub fn into_algebra(self) -> Result<FiniteAlgebra, FormatError> {
        let n = self.size;
        let mut seen = BTreeSet::new();
        let mut ops = Vec::with_capacity(self.operations.len());
        for (i, op) in self.operations.into_iter().enumerate() {
            let at = |field: &str| format!("operations[{i}].{field}");
            if !seen.insert(op.name.clone()) {
                return Err(FormatError::at(
                    at("name"),
                    format!("duplicate operation symbol `{}`", op.name),
                ));
            }
            let table = match (op.arity, op.table) {
                (0, TableDoc::Constant(c)) => vec![c],
                (0, TableDoc::Rows(_)) => {
                    return Err(FormatError::at(
                        at("table"),
                        "a constant's table is a single int",
                    ))
                }
                (_, TableDoc::Constant(_)) => {
                    return Err(FormatError::at(
                        at("table"),
                        format!("arity {} needs a flat table, found a single int", op.arity),
                    ))
                }
                (_, TableDoc::Rows(t)) => t,
            };
            let expected = table_len(n, op.arity);
            if table.len() != expected {
                return Err(FormatError::at(
                    at("table"),
                    format!("table has {} entries, expected {expected}", table.len()),
                ));
            }
            if let Some((j, v)) = table.iter().enumerate().find(|(_, &v)| v >= n) {
                let path = if op.arity == 0 {
                    at("table")
                } else {
                    format!("{}[{j}]", at("table"))
                };
                return Err(FormatError::at(
                    path,
                    format!("entry out of range: {v} for size {n}"),
                ));
            }
            ops.push(Operation::new(op.name, op.arity, table));
        }
        Ok(FiniteAlgebra::new(self.name, n, ops)?)
    }
}

pub fn parse_algebra(text: &str) -> Result<FiniteAlgebra, FormatError> {
    from_json::<AlgebraDoc>(text)?.into_algebra()
}

pub fn algebra_to_doc(a: &FiniteAlgebra) -> AlgebraDoc {
    AlgebraDoc {
        name: a.name().to_string(),
        size: a.size(),
        operations: a
            .operations()
            .iter()
            .map(|op| OperationDoc {
                name: op.name().to_string(),
                arity: op.arity(),
                table: if op.arity() == 0 {
                    TableDoc::Constant(op.table()[0])
                } else {
                    TableDoc::Rows(op.table().to_vec())
                },
            })
            .collect(),
    }
}

pub fn algebra_to_json(a: &FiniteAlgebra) -> String {
    serde_json::to_string_pretty(&algebra_to_doc(a)).expect("algebra serializes")
}
