//! Truncated path algebras of fundamental groupoids of finite simplicial sets,
//! their relative-homology models, and a brute-force homology oracle for
//! cross-checking the two.

pub mod error;
pub mod fox;
pub mod hopf;
pub mod lattice;
pub mod oracle;
pub mod ring;
pub mod space;

pub use error::{Error, Result};
pub use lattice::{FgAbGroup, Hom, IntMatrix, Invariants, Lattice, Subgroup};
