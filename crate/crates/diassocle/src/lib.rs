//! Exact-rational engine for diassociative algebras and relative averaging
//! algebras.

pub mod algebra;
pub mod cli;
pub mod cochain;
pub mod cohomology;
pub mod constructions;
pub mod deformations;
pub mod error;
pub mod extensions;
pub mod fixture;
pub mod homotopy;
pub mod instances;
pub mod linalg;
pub mod random;
pub mod report;
pub mod trees;

pub use error::{Error, Result};
pub use linalg::{Matrix, Scalar, Vector};
