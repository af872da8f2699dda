//! Congruence computations on finite algebras: factor congruences, the
//! strict refinement property and its equivalent conditions, commutators,
//! and direct-product decompositions.
//!
//! Everything here is `no_std` with `alloc`; file formats and the command
//! line live in the `refinery` crate.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod algebra;
pub mod catalog;
pub mod coextensivity;
pub mod commutator;
pub mod decomposition;
pub mod error;
pub mod lattice;
pub mod relations;

pub use algebra::{
    find_isomorphism, homomorphism_violation, is_homomorphism, product, quotient, relabel,
    ElementMap, FiniteAlgebra, HomViolation, Operation, Signature,
};
pub use error::{Error, Result};
pub use relations::{BinRel, Partition};
