//! Truncated `A∞`, `Diass∞` and `L∞` structures on graded spaces, the graded
//! Majumdar–Mukherjee bracket, derived `L∞` algebras of V-data, twisting,
//! and Maurer–Cartan checks for (homotopy) relative averaging structures.
//!
//! Everything is truncated at a maximal arity `K`; identities and
//! Maurer–Cartan sums are exact in every arity `≤ K`. Inserting a map of
//! degree `d` after inputs of total degree `e` costs `(−1)^{d·e}`.

pub mod graded;
pub mod linf;
pub mod ops;

pub use graded::*;
pub use linf::*;
pub use ops::*;
