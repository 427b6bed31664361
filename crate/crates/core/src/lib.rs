//! Graph containers on the Boolean lattice.

pub mod bitset;
pub mod codes;
pub mod constructions;
pub mod cli;
pub mod containers;
pub mod error;
pub mod graphs;
pub mod katona;
pub mod lattice;
pub mod oracles;
pub mod supersat;
pub mod verify;

pub use error::{Error, Result};
