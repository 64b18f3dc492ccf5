use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::product::{ProdSimplex, ProductSS, SubSS, Variant};
use crate::lattice::{left_kernel, sparse_invariant_factors, FgAbGroup, IntMatrix, Invariants, Lattice, SparseRow};
use crate::{Error, Result};

/// A chain in the relative complex, keyed by relative basis index.
pub type Chain = BTreeMap<usize, BigInt>;

/// Normalized chains of `X^n` modulo the subspace.
#[derive(Clone, Debug)]
pub struct RelChainComplex {
    pss: ProductSS,
    sub: SubSS,
    /// product index of each relative basis element, per dimension
    basis: Vec<Vec<usize>>,
    /// relative index of each product simplex, if it survives
    rel_index: Vec<Vec<Option<usize>>>,
    /// `boundary[k][i]` is the boundary of relative `k`-simplex `i`
    boundary: Vec<Vec<SparseRow>>,
}

impl RelChainComplex {
    pub fn new(pss: ProductSS, variant: Variant, a: usize, b: usize) -> Self {
        let sub = SubSS::new(&pss, variant, a, b);
        let top = pss.max_dim();
        let mut basis = Vec::with_capacity(top + 1);
        let mut rel_index = Vec::with_capacity(top + 1);
        for k in 0..=top {
            let mut ids = Vec::new();
            let mut rel = vec![None; pss.simplices(k).len()];
            for i in 0..pss.simplices(k).len() {
                if !sub.is_member(k, i) {
                    rel[i] = Some(ids.len());
                    ids.push(i);
                }
            }
            basis.push(ids);
            rel_index.push(rel);
        }
        let mut cx = RelChainComplex { pss, sub, basis, rel_index, boundary: Vec::new() };
        cx.boundary = (0..=top)
            .map(|k| {
                (0..cx.basis[k].len())
                    .map(|i| {
                        let s = cx.pss.simplices(k)[cx.basis[k][i]].clone();
                        cx.boundary_of(k, &s)
                    })
                    .collect()
            })
            .collect();
        cx
    }

    /// Shortcut: `X^n` with the chosen subspace, under the given simplex cap.
    pub fn build(ss: &crate::space::SimplicialSet, n: usize, variant: Variant, a: usize, b: usize, cap: usize) -> Result<Self> {
        Ok(Self::new(ProductSS::new(ss, n, cap)?, variant, a, b))
    }

    pub fn product(&self) -> &ProductSS {
        &self.pss
    }

    pub fn subspace(&self) -> &SubSS {
        &self.sub
    }

    pub fn max_dim(&self) -> usize {
        self.basis.len() - 1
    }

    /// Rank of the relative chain group in each dimension.
    pub fn ranks(&self) -> Vec<usize> {
        self.basis.iter().map(Vec::len).collect()
    }

    pub fn rank(&self, k: usize) -> usize {
        self.basis.get(k).map_or(0, Vec::len)
    }

    /// Relative index of a product simplex, `None` if it lies in the subspace.
    pub fn index_of(&self, k: usize, s: &ProdSimplex) -> Option<usize> {
        self.rel_index.get(k)?[self.pss.index_of(k, s)?]
    }

    pub fn simplex(&self, k: usize, i: usize) -> &ProdSimplex {
        &self.pss.simplices(k)[self.basis[k][i]]
    }

    fn boundary_of(&self, k: usize, s: &ProdSimplex) -> SparseRow {
        let mut row = SparseRow::new();
        if k == 0 {
            return row;
        }
        for f in 0..=k {
            let Some(t) = self.pss.face(k, s, f) else { continue };
            let Some(j) = self.index_of(k - 1, &t) else { continue };
            let e = row.entry(j).or_insert_with(BigInt::zero);
            if f % 2 == 0 {
                *e += 1;
            } else {
                *e -= 1;
            }
            if e.is_zero() {
                row.remove(&j);
            }
        }
        row
    }

    pub fn boundary_rows(&self, k: usize) -> &[SparseRow] {
        self.boundary.get(k).map_or(&[], Vec::as_slice)
    }

    /// Boundary of a chain.
    pub fn boundary(&self, k: usize, c: &Chain) -> Chain {
        let mut out = Chain::new();
        if k == 0 {
            return out;
        }
        for (&i, x) in c {
            for (&j, y) in &self.boundary[k][i] {
                let e = out.entry(j).or_insert_with(BigInt::zero);
                *e += x * y;
                if e.is_zero() {
                    out.remove(&j);
                }
            }
        }
        out
    }

    /// `∂∂ = 0` in every dimension.
    pub fn is_complex(&self) -> bool {
        (2..=self.max_dim()).all(|k| {
            (0..self.rank(k)).all(|i| {
                let c: Chain = self.boundary[k][i].clone();
                self.boundary(k - 1, &c).is_empty()
            })
        })
    }

    fn dense_boundary(&self, k: usize) -> IntMatrix {
        let cols = if k == 0 { 0 } else { self.rank(k - 1) };
        let mut m = IntMatrix::zeros(self.rank(k), cols);
        if k > 0 {
            for (i, row) in self.boundary[k].iter().enumerate() {
                for (&j, v) in row {
                    m.set(i, j, v.clone());
                }
            }
        }
        m
    }

    /// Isomorphism type of `H_k`, by sparse elimination.
    pub fn homology(&self, k: usize) -> Invariants {
        let ck = self.rank(k);
        let rank_out = if k == 0 || k > self.max_dim() {
            0
        } else {
            sparse_invariant_factors(self.boundary[k].clone(), self.rank(k - 1)).len()
        };
        let incoming = if k < self.max_dim() {
            sparse_invariant_factors(self.boundary[k + 1].clone(), ck)
        } else {
            Vec::new()
        };
        let torsion: Vec<BigInt> = incoming.iter().filter(|d| !d.is_one()).cloned().collect();
        Invariants { rank: ck - rank_out - incoming.len(), torsion }
    }

    /// `H_k` as `Z_k / B_k`, so that cycles can be reduced to classes.
    /// Dense, meant for small complexes.
    pub fn homology_group(&self, k: usize) -> Result<FgAbGroup> {
        let ck = self.rank(k);
        let cycles = if k == 0 || k > self.max_dim() {
            Lattice::full(ck)
        } else {
            Lattice::from_generators(ck, left_kernel(&self.dense_boundary(k)))
        };
        let bounds = if k < self.max_dim() {
            Lattice::from_generators(ck, self.dense_boundary(k + 1).to_rows())
        } else {
            Lattice::zero(ck)
        };
        FgAbGroup::subquotient(ck, cycles, bounds)
    }

    pub fn dense(&self, k: usize, c: &Chain) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); self.rank(k)];
        for (&i, x) in c {
            v[i] = x.clone();
        }
        v
    }

    /// Class of a relative cycle in `group` (from [`Self::homology_group`]).
    pub fn class_of(&self, group: &FgAbGroup, k: usize, c: &Chain) -> Result<Vec<BigInt>> {
        if !self.boundary(k, c).is_empty() {
            return Err(Error::NotInKernel);
        }
        group.reduce(&self.dense(k, c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::DEFAULT_CAP;
    use crate::space::builtin_space;

    fn cx(name: &str, n: usize, v: Variant) -> RelChainComplex {
        let (ss, bp) = builtin_space(name).unwrap();
        RelChainComplex::build(&ss, n, v, bp.a, bp.b, DEFAULT_CAP).unwrap()
    }

    #[test]
    fn circle_relative_to_point() {
        let c = cx("circle", 1, Variant::Upper);
        assert_eq!(c.homology(1), Invariants::free(1));
        assert!(c.homology(0).is_trivial());
    }

    #[test]
    fn wedge_square_both() {
        let c = cx("wedge(2)", 2, Variant::Both);
        assert!(c.is_complex());
        assert_eq!(c.homology(2), Invariants::free(6));
        assert!(c.homology(1).is_trivial());
        assert!(c.homology(0).is_trivial());
    }

    #[test]
    fn absolute_torus() {
        let c = cx("torus", 1, Variant::Empty);
        assert_eq!(c.homology(0), Invariants::free(1));
        assert_eq!(c.homology(1), Invariants::free(2));
        assert_eq!(c.homology(2), Invariants::free(1));
        let sq = cx("torus", 2, Variant::Empty);
        assert!(sq.is_complex());
        let betti: Vec<usize> = (0..=4).map(|k| sq.homology(k).rank).collect();
        assert_eq!(betti, vec![1, 4, 6, 4, 1]);
    }

    #[test]
    fn sparse_and_dense_agree() {
        for (name, n, v) in [("torus", 2, Variant::Upper), ("wedge(2)", 2, Variant::Lower), ("interval_wedge(1)", 2, Variant::Both)] {
            let c = cx(name, n, v);
            for k in 0..=c.max_dim() {
                assert_eq!(&c.homology(k), c.homology_group(k).unwrap().invariants(), "{name} {k}");
            }
        }
    }
}
