use refinery_core::decomposition::{DecompositionTree, Split};
use refinery_core::{quotient, ElementMap, FiniteAlgebra};
use serde::{Deserialize, Serialize};

use super::{partition_from_classes, Classes, FormatError};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeDoc {
    pub size: usize,
    pub factor_pair: Option<(Classes, Classes)>,
    pub children: Vec<TreeDoc>,
    pub iso: Option<Vec<usize>>,
}

impl From<&DecompositionTree> for TreeDoc {
    fn from(t: &DecompositionTree) -> Self {
        match &t.split {
            None => TreeDoc {
                size: t.algebra.size(),
                factor_pair: None,
                children: Vec::new(),
                iso: None,
            },
            Some(s) => TreeDoc {
                size: t.algebra.size(),
                factor_pair: Some((s.factor.classes(), s.complement.classes())),
                children: s.children.iter().map(TreeDoc::from).collect(),
                iso: Some(s.iso.values().to_vec()),
            },
        }
    }
}

/// Rebuilds a tree over `a`, taking each child as the quotient by its
/// recorded congruence. Structural checks are left to
/// [`DecompositionTree::validate`].
pub fn tree_from_doc(a: &FiniteAlgebra, doc: &TreeDoc) -> Result<DecompositionTree, FormatError> {
    build(a, doc, String::new())
}

fn build(a: &FiniteAlgebra, doc: &TreeDoc, path: String) -> Result<DecompositionTree, FormatError> {
    let at = |field: &str| {
        if path.is_empty() {
            field.to_string()
        } else {
            format!("{path}.{field}")
        }
    };
    if doc.size != a.size() {
        return Err(FormatError::at(
            at("size"),
            format!(
                "size {} does not match algebra of size {}",
                doc.size,
                a.size()
            ),
        ));
    }
    let (fp, iso) =
        match (&doc.factor_pair, &doc.iso) {
            (None, None) if doc.children.is_empty() => {
                return Ok(DecompositionTree {
                    algebra: a.clone(),
                    split: None,
                })
            }
            (Some(fp), Some(iso)) if doc.children.len() == 2 => (fp, iso),
            _ => return Err(FormatError::at(
                path,
                "a node has either no factor pair, iso or children, or all three with two children",
            )),
        };
    let wrap = |field: &str, e: FormatError| match e {
        FormatError::Core(e) => FormatError::at(at(field), e.to_string()),
        other => other,
    };
    let factor = partition_from_classes(a.size(), &fp.0).map_err(|e| wrap("factor_pair[0]", e))?;
    let complement =
        partition_from_classes(a.size(), &fp.1).map_err(|e| wrap("factor_pair[1]", e))?;
    let (qa, _) = quotient(a, &factor).map_err(|e| wrap("factor_pair[0]", e.into()))?;
    let (qb, _) = quotient(a, &complement).map_err(|e| wrap("factor_pair[1]", e.into()))?;
    let iso =
        ElementMap::new(qa.size() * qb.size(), iso.clone()).map_err(|e| wrap("iso", e.into()))?;
    let left = build(&qa, &doc.children[0], at("children[0]"))?;
    let right = build(&qb, &doc.children[1], at("children[1]"))?;
    Ok(DecompositionTree {
        algebra: a.clone(),
        split: Some(Split {
            factor,
            complement,
            iso,
            children: Box::new([left, right]),
        }),
    })
}
