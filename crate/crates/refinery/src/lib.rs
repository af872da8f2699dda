//! JSON formats, Hasse diagrams, seeded corpora and the command-line front
//! end over `refinery-core`.

pub mod cli;
pub mod corpus;
pub mod dot;
pub mod format;
pub mod suite;

pub use refinery_core as core;
