//! Exact computations with symmetric group algebras, partition algebras and
//! their commuting actions on tensor space.

pub mod cli;
pub mod combinatorics;
pub mod diagram;
pub mod error;
pub mod guard;
pub mod linalg;
pub mod ring;
pub mod symgroup;
pub mod tensor;
pub mod theorems;

pub use error::{Error, Result};
