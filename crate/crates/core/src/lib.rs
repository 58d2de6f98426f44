pub mod classify;
pub mod commutator;
pub mod corpus;
pub mod error;
pub mod io;
pub mod lattice;
pub mod projectivity;
