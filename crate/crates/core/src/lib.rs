//! Gates from mapping-class-group representations of abelian anyon models,
//! checked against the generalized Clifford group and simulated classically.

pub mod cli;
pub mod dense;
pub mod error;
pub mod fib;
pub mod group;
pub mod mcg;
pub mod model;
pub mod model_file;
pub mod pauli;
pub mod phase;
pub mod sim;

pub use error::{Error, Result};
