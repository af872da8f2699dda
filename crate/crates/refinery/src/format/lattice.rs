use refinery_core::lattice::{CongruenceLattice, FactorFlags, FactorLattice};
use refinery_core::{ElementMap, FiniteAlgebra};
use serde::{Deserialize, Serialize};

use super::{algebra_to_doc, AlgebraDoc, Classes};

/// Output of `con`: Con(A) in lattice order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CongruencesDoc {
    pub size: usize,
    pub elements: Vec<Classes>,
}

impl From<&CongruenceLattice> for CongruencesDoc {
    fn from(l: &CongruenceLattice) -> Self {
        CongruencesDoc {
            size: l.algebra_size(),
            elements: l.elements().iter().map(|p| p.classes()).collect(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlagsDoc {
    pub is_sublattice_of_con: bool,
    pub is_distributive: bool,
    pub is_boolean: bool,
    pub complement_unique: bool,
}

impl From<FactorFlags> for FlagsDoc {
    fn from(f: FactorFlags) -> Self {
        FlagsDoc {
            is_sublattice_of_con: f.is_sublattice_of_con,
            is_distributive: f.is_distributive,
            is_boolean: f.is_boolean,
            complement_unique: f.complement_unique,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorLatticeDoc {
    pub elements: Vec<Classes>,
    pub complements: Vec<Vec<usize>>,
    pub flags: FlagsDoc,
}

impl From<&FactorLattice> for FactorLatticeDoc {
    fn from(l: &FactorLattice) -> Self {
        FactorLatticeDoc {
            elements: l.elements().iter().map(|p| p.classes()).collect(),
            complements: l.complements().to_vec(),
            flags: l.flags().into(),
        }
    }
}

/// Output of `lattice` without `--dot`: elements and covering pairs
/// `(lower, upper)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeDoc {
    pub elements: Vec<Classes>,
    pub covers: Vec<(usize, usize)>,
}

/// Output of `pushout`: `A/(θ∨φ)` with the induced maps from `A/θ` and `A/φ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PushoutDoc {
    pub algebra: AlgebraDoc,
    pub theta_map: Vec<usize>,
    pub phi_map: Vec<usize>,
}

impl PushoutDoc {
    pub fn new(p: &FiniteAlgebra, from_theta: &ElementMap, from_phi: &ElementMap) -> Self {
        PushoutDoc {
            algebra: algebra_to_doc(p),
            theta_map: from_theta.values().to_vec(),
            phi_map: from_phi.values().to_vec(),
        }
    }
}
