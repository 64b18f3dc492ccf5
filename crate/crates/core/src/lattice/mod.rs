//! Exact linear algebra over the integers.
//!
//! Everything downstream compares groups through [`FgAbGroup`]: a subquotient
//! of some `Z^r` with reduction to canonical coordinates.

mod group;
mod matrix;
mod normal_form;
mod sparse;
mod sublattice;

pub use group::{left_kernel, FgAbGroup, Hom, Invariants, Subgroup};
pub use matrix::IntMatrix;
pub use normal_form::{hermite_normal_form, invariant_factors, smith_normal_form};
pub use sparse::{sparse_invariant_factors, SparseRow};
pub use sublattice::Lattice;

#[allow(unused_imports)]
pub(crate) use sublattice::{axpy, unit};

/// Cokernel of `m` (relations are the columns of `m`, ambient rank `r`).
pub fn cokernel(m: &IntMatrix, r: usize) -> crate::Result<FgAbGroup> {
    FgAbGroup::cokernel(m, r)
}

/// Canonical coordinates of `v` in `g`.
pub fn reduce(v: &[num_bigint::BigInt], g: &FgAbGroup) -> crate::Result<Vec<num_bigint::BigInt>> {
    g.reduce(v)
}
