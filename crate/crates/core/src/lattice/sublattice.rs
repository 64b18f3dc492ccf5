use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::floor_div;

/// A sublattice of `Z^dim`, kept as its row-style Hermite basis.
///
/// Two lattices are equal iff their Hermite bases are equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    dim: usize,
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
}

fn leading(v: &[BigInt]) -> Option<usize> {
    v.iter().position(|x| !x.is_zero())
}

impl Lattice {
    pub fn zero(dim: usize) -> Self {
        Lattice { dim, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(dim: usize) -> Self {
        let rows = (0..dim).map(|i| unit(dim, i)).collect();
        Lattice { dim, rows, pivots: (0..dim).collect() }
    }

    pub fn from_generators<I>(dim: usize, gens: I) -> Self
    where
        I: IntoIterator<Item = Vec<BigInt>>,
    {
        let mut echelon: BTreeMap<usize, Vec<BigInt>> = BTreeMap::new();
        for g in gens {
            assert_eq!(g.len(), dim, "generator has wrong length");
            insert(&mut echelon, g);
        }
        Self::finish(dim, echelon)
    }

    fn finish(dim: usize, echelon: BTreeMap<usize, Vec<BigInt>>) -> Self {
        let mut pivots = Vec::with_capacity(echelon.len());
        let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(echelon.len());
        for (p, mut row) in echelon {
            if row[p].is_negative() {
                for x in row.iter_mut() {
                    *x = -std::mem::take(x);
                }
            }
            pivots.push(p);
            rows.push(row);
        }
        for r in 0..rows.len() {
            let p = pivots[r];
            let (before, after) = rows.split_at_mut(r);
            let prow = &after[0];
            for row in before.iter_mut() {
                let q = floor_div(&row[p], &prow[p]);
                if !q.is_zero() {
                    axpy(row, &-q, prow);
                }
            }
        }
        Lattice { dim, rows, pivots }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Integer coordinates of `v` with respect to the Hermite basis, if `v` lies in the lattice.
    pub fn coordinates(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        assert_eq!(v.len(), self.dim);
        let mut rest = v.to_vec();
        let mut coords = Vec::with_capacity(self.rows.len());
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if rest[..p].iter().any(|x| !x.is_zero()) {
                return None;
            }
            let (q, r) = rest[p].div_rem(&row[p]);
            if !r.is_zero() {
                return None;
            }
            if !q.is_zero() {
                axpy(&mut rest, &-&q, row);
            }
            coords.push(q);
        }
        rest.iter().all(Zero::is_zero).then_some(coords)
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.coordinates(v).is_some()
    }

    /// Canonical representative of the coset `v + L`: pivot entries reduced into `[0, pivot)`.
    pub fn remainder(&self, v: &[BigInt]) -> Vec<BigInt> {
        let mut rest = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let q = floor_div(&rest[p], &row[p]);
            if !q.is_zero() {
                axpy(&mut rest, &-q, row);
            }
        }
        rest
    }

    pub fn combine(&self, coords: &[BigInt]) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.dim];
        for (c, row) in coords.iter().zip(&self.rows) {
            if !c.is_zero() {
                axpy(&mut out, c, row);
            }
        }
        out
    }

    pub fn sum(&self, other: &Lattice) -> Lattice {
        assert_eq!(self.dim, other.dim);
        Lattice::from_generators(self.dim, self.rows.iter().chain(other.rows.iter()).cloned())
    }

    pub fn is_subset_of(&self, other: &Lattice) -> bool {
        self.rows.iter().all(|r| other.contains(r))
    }

    /// Image under the coordinate projection keeping the first `k` entries.
    pub fn project_prefix(&self, k: usize) -> Lattice {
        Lattice::from_generators(k, self.rows.iter().map(|r| r[..k].to_vec()))
    }
}

pub(crate) fn unit(dim: usize, i: usize) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); dim];
    v[i] = BigInt::from(1);
    v
}

/// y += a * x
pub(crate) fn axpy(y: &mut [BigInt], a: &BigInt, x: &[BigInt]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        if !xi.is_zero() {
            *yi += a * xi;
        }
    }
}

fn insert(echelon: &mut BTreeMap<usize, Vec<BigInt>>, mut v: Vec<BigInt>) {
    loop {
        let Some(p) = leading(&v) else { return };
        let Some(row) = echelon.get_mut(&p) else {
            echelon.insert(p, v);
            return;
        };
        let (q, r) = v[p].div_rem(&row[p]);
        if r.is_zero() {
            axpy(&mut v, &-q, row);
            continue;
        }
        let eg = row[p].extended_gcd(&v[p]);
        let g = eg.gcd;
        let a = &row[p] / &g;
        let b = &v[p] / &g;
        // [x y; -b a] is unimodular since x*a + y*b = 1
        let new_row: Vec<BigInt> = row.iter().zip(&v).map(|(r, w)| &eg.x * r + &eg.y * w).collect();
        let rest: Vec<BigInt> = row.iter().zip(&v).map(|(r, w)| &a * w - &b * r).collect();
        *row = new_row;
        v = rest;
    }
}
