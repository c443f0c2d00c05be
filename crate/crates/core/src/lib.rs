//! Finitary equational theories, coalgebras for them inside varieties of
//! algebras, and finite-ring bimodule machinery.

pub mod abgroup;
pub mod algebra;
pub mod backend;
pub mod catalog;
pub mod coalgebra;
pub mod dsl;
pub mod error;
pub mod ew;
pub mod hopf;
pub mod report;
pub mod ring;
pub mod suite;
pub mod tensor;
pub mod theory;
pub mod util;

pub use error::{Error, ParseError, Result};
