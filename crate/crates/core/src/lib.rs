pub mod arith;
pub mod cli;
pub mod cm;
pub mod constructions;
pub mod cyclotomic;
pub mod error;
pub mod residue_sets;
pub mod spectral;
pub mod structures;

pub use error::{Error, Result};
