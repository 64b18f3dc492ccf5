//! Independent simplicial computation of `H_*(X^n, X(n))` from the normalized
//! chains of the product.
//!
//! Coordinates of `X^n` are `x_1, …, x_n` with `x_1` the earliest point along
//! a path. The subspace is a union of the loci `x_1 = a`, `x_i = x_{i+1}` and
//! `x_n = b`; a simplex lies in a locus iff the relevant components agree (or
//! are the constant vertex), so membership is decided per locus.

mod chain;
mod kappa;
mod product;

pub use chain::{Chain, RelChainComplex};
pub use kappa::{compare_kappa, forward_paths, kappa_chain, pairs_define_isomorphism};
pub use product::{Component, ProdSimplex, ProductSS, SubSS, Variant, DEFAULT_CAP};

use crate::lattice::Invariants;
use crate::space::{Basepoints, SimplicialSet};
use crate::Result;

/// `H_k(X^n, X(n)^a_b)` for `k = 0..=n`, with both loci when `a != b` and
/// also when `a == b`.
pub fn relative_homology(ss: &SimplicialSet, bp: Basepoints, n: usize, cap: usize) -> Result<Vec<Invariants>> {
    let cx = RelChainComplex::build(ss, n, Variant::Both, bp.a, bp.b, cap)?;
    Ok((0..=n).map(|k| cx.homology(k)).collect())
}

/// Homology of `X` itself.
pub fn space_homology(ss: &SimplicialSet, k: usize) -> Result<Invariants> {
    let cx = RelChainComplex::build(ss, 1, Variant::Empty, 0, 0, DEFAULT_CAP)?;
    Ok(cx.homology(k))
}

/// Outcome of the vanishing check below the top degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Connectivity {
    pub n: usize,
    /// `H_k` for `k = 0..=n`.
    pub groups: Vec<Invariants>,
}

impl Connectivity {
    /// `H_k = 0` for every `k < n`.
    pub fn holds(&self) -> bool {
        self.groups[..self.n].iter().all(Invariants::is_trivial)
    }
}

/// Relative homology with both loci, checked to vanish below degree `n`.
pub fn connectivity_check(ss: &SimplicialSet, bp: Basepoints, n: usize, cap: usize) -> Result<Connectivity> {
    Ok(Connectivity { n, groups: relative_homology(ss, bp, n, cap)? })
}

/// Outcome of comparing `H_*(X^n, X(n)^a)` with `H_1(X)^{⊗n}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorPower {
    pub n: usize,
    pub groups: Vec<Invariants>,
    pub expected: Invariants,
}

impl TensorPower {
    pub fn holds(&self) -> bool {
        self.groups[..self.n].iter().all(Invariants::is_trivial) && self.groups[self.n] == self.expected
    }
}

/// Upper locus only, at `a`: the top group should be `H_1(X)^{⊗n}`.
pub fn tensor_power_check(ss: &SimplicialSet, bp: Basepoints, n: usize, cap: usize) -> Result<TensorPower> {
    let cx = RelChainComplex::build(ss, n, Variant::Upper, bp.a, bp.a, cap)?;
    let groups = (0..=n).map(|k| cx.homology(k)).collect();
    let h1 = space_homology(ss, 1)?;
    let expected = (1..n).fold(h1.clone(), |acc, _| acc.tensor(&h1));
    Ok(TensorPower { n, groups, expected })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::builtin_space;

    #[test]
    fn connectivity_small() {
        for name in ["circle", "wedge(2)", "torus", "interval_wedge(2)"] {
            let (ss, bp) = builtin_space(name).unwrap();
            for n in 1..=2 {
                let c = connectivity_check(&ss, bp, n, DEFAULT_CAP).unwrap();
                assert!(c.holds(), "{name} {n}: {:?}", c.groups);
            }
        }
    }

    #[test]
    fn tensor_powers() {
        for (name, top) in [("circle", 1), ("wedge(2)", 4), ("torus", 4)] {
            let (ss, bp) = builtin_space(name).unwrap();
            let t = tensor_power_check(&ss, bp, 2, DEFAULT_CAP).unwrap();
            assert!(t.holds(), "{name}: {:?}", t.groups);
            assert_eq!(t.expected, Invariants::free(top));
        }
    }
}
