use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::matrix::IntMatrix;
use super::normal_form::{hnf_in_place, Smith};
use super::sublattice::{unit, Lattice};
use crate::error::{Error, Result};

/// Isomorphism type of a finitely generated abelian group: free rank plus
/// invariant factors `d1 | d2 | ...`, each at least 2.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Invariants {
    pub rank: usize,
    pub torsion: Vec<BigInt>,
}

impl Invariants {
    pub fn free(rank: usize) -> Self {
        Invariants { rank, torsion: Vec::new() }
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    pub fn is_free(&self) -> bool {
        self.torsion.is_empty()
    }

    /// Invariants of a direct sum of cyclic groups (modulus 0 is `Z`, 1 is dropped).
    pub fn from_moduli(moduli: &[BigInt]) -> Self {
        FgAbGroup::from_moduli(moduli).invariants().clone()
    }

    /// Cyclic summands, torsion first; `0` stands for `Z`.
    pub fn moduli(&self) -> Vec<BigInt> {
        let mut m = self.torsion.clone();
        m.extend(std::iter::repeat_n(BigInt::zero(), self.rank));
        m
    }

    /// `A ⊗ B`, using `Z/m ⊗ Z/n = Z/gcd(m, n)`.
    pub fn tensor(&self, other: &Invariants) -> Invariants {
        let mut out = Vec::new();
        for a in self.moduli() {
            for b in other.moduli() {
                out.push(a.gcd(&b));
            }
        }
        Invariants::from_moduli(&out)
    }
}

impl fmt::Display for Invariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts: Vec<String> = self.torsion.iter().map(|d| format!("Z/{d}")).collect();
        match self.rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// A finitely generated abelian group presented as a subquotient `N / R` of
/// `Z^ambient`, together with the data needed to put any vector of `N` into
/// canonical coordinates.
///
/// Canonical coordinates list the torsion coordinates first (coordinate `i`
/// reduced into `[0, torsion[i])`), followed by `rank` free coordinates.
#[derive(Clone, Debug)]
pub struct FgAbGroup {
    ambient: usize,
    numerator: Lattice,
    relations: Lattice,
    left: IntMatrix,
    left_inv: IntMatrix,
    diag: Vec<BigInt>,
    first_nonunit: usize,
    invariants: Invariants,
}

impl FgAbGroup {
    /// `numerator / relations` inside `Z^ambient`; the relations must lie in the numerator.
    pub fn subquotient(ambient: usize, numerator: Lattice, relations: Lattice) -> Result<Self> {
        if numerator.dim() != ambient {
            return Err(Error::DimensionMismatch { expected: ambient, found: numerator.dim() });
        }
        if relations.dim() != ambient {
            return Err(Error::DimensionMismatch { expected: ambient, found: relations.dim() });
        }
        let k = numerator.rank();
        let mut rel_cols = Vec::with_capacity(relations.rank());
        for r in relations.basis() {
            rel_cols.push(numerator.coordinates(r).ok_or(Error::RelationsNotContained)?);
        }
        // relation matrix in numerator coordinates, one column per relation
        let mut m = IntMatrix::zeros(k, rel_cols.len());
        for (j, c) in rel_cols.iter().enumerate() {
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        let smith = Smith::compute(&m, true, false);
        let mut diag = smith.diag;
        diag.resize(k, BigInt::zero());
        let first_nonunit = diag.iter().position(|d| !d.is_one()).unwrap_or(k);
        let torsion: Vec<BigInt> = diag[first_nonunit..].iter().filter(|d| !d.is_zero()).cloned().collect();
        let rank = diag.iter().filter(|d| d.is_zero()).count();
        Ok(FgAbGroup {
            ambient,
            numerator,
            relations,
            left: smith.left.unwrap(),
            left_inv: smith.left_inv.unwrap(),
            diag,
            first_nonunit,
            invariants: Invariants { rank, torsion },
        })
    }

    /// Quotient of `Z^ambient` by a lattice.
    pub fn quotient(ambient: usize, relations: Lattice) -> Result<Self> {
        Self::subquotient(ambient, Lattice::full(ambient), relations)
    }

    /// Cokernel of `m`: `Z^r / (column span of m)`, where `m` must have `r` rows.
    pub fn cokernel(m: &IntMatrix, r: usize) -> Result<Self> {
        if m.rows() != r {
            return Err(Error::DimensionMismatch { expected: r, found: m.rows() });
        }
        let cols = (0..m.cols()).map(|j| m.column(j));
        Self::quotient(r, Lattice::from_generators(r, cols))
    }

    /// Direct sum of cyclic groups `Z/moduli[i]` (modulus 0 means `Z`).
    pub fn from_moduli(moduli: &[BigInt]) -> Self {
        let n = moduli.len();
        let rels = moduli.iter().enumerate().filter(|(_, d)| !d.is_zero()).map(|(i, d)| {
            let mut v = vec![BigInt::zero(); n];
            v[i] = d.clone();
            v
        });
        Self::quotient(n, Lattice::from_generators(n, rels)).expect("diagonal presentation")
    }

    pub fn trivial() -> Self {
        Self::from_moduli(&[])
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn numerator(&self) -> &Lattice {
        &self.numerator
    }

    pub fn relations(&self) -> &Lattice {
        &self.relations
    }

    pub fn invariants(&self) -> &Invariants {
        &self.invariants
    }

    pub fn rank(&self) -> usize {
        self.invariants.rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.invariants.torsion
    }

    /// Number of canonical coordinates (torsion count plus rank).
    pub fn canonical_dim(&self) -> usize {
        self.diag.len() - self.first_nonunit
    }

    /// Moduli of the canonical coordinates: torsion orders, then zeros for the free part.
    pub fn moduli(&self) -> Vec<BigInt> {
        self.diag[self.first_nonunit..].to_vec()
    }

    pub fn is_isomorphic(&self, other: &FgAbGroup) -> bool {
        self.invariants == other.invariants
    }

    /// Canonical coordinates of `v`, which must lie in the numerator lattice.
    pub fn reduce(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        if v.len() != self.ambient {
            return Err(Error::DimensionMismatch { expected: self.ambient, found: v.len() });
        }
        let c = self.numerator.coordinates(v).ok_or(Error::NotInLattice)?;
        let y = self.left.mul_vec(&c);
        Ok(y[self.first_nonunit..]
            .iter()
            .zip(&self.diag[self.first_nonunit..])
            .map(|(x, d)| if d.is_zero() { x.clone() } else { x.mod_floor(d) })
            .collect())
    }

    /// Normalizes a canonical coordinate vector (torsion entries into range).
    pub fn normalize(&self, canonical: &[BigInt]) -> Vec<BigInt> {
        canonical
            .iter()
            .zip(&self.diag[self.first_nonunit..])
            .map(|(x, d)| if d.is_zero() { x.clone() } else { x.mod_floor(d) })
            .collect()
    }

    /// Some vector of the numerator lattice whose class has the given canonical coordinates.
    pub fn lift(&self, canonical: &[BigInt]) -> Result<Vec<BigInt>> {
        if canonical.len() != self.canonical_dim() {
            return Err(Error::DimensionMismatch { expected: self.canonical_dim(), found: canonical.len() });
        }
        let mut y = vec![BigInt::zero(); self.diag.len()];
        y[self.first_nonunit..].clone_from_slice(canonical);
        let c = self.left_inv.mul_vec(&y);
        Ok(self.numerator.combine(&c))
    }

    /// Ambient lift of the `i`-th canonical generator.
    pub fn generator(&self, i: usize) -> Vec<BigInt> {
        self.lift(&unit(self.canonical_dim(), i)).expect("generator index in range")
    }

    pub fn is_zero_class(&self, v: &[BigInt]) -> Result<bool> {
        Ok(self.reduce(v)?.iter().all(Zero::is_zero))
    }

    /// Adds two canonical vectors.
    pub fn add(&self, x: &[BigInt], y: &[BigInt]) -> Vec<BigInt> {
        let s: Vec<BigInt> = x.iter().zip(y).map(|(a, b)| a + b).collect();
        self.normalize(&s)
    }
}

impl fmt::Display for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.invariants.fmt(f)
    }
}

/// Basis of the left kernel `{ y : y * m = 0 }`.
pub fn left_kernel(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    let mut h = m.clone();
    let mut u = IntMatrix::identity(m.rows());
    let pivots = hnf_in_place(&mut h, Some(&mut u));
    (pivots.len()..m.rows()).map(|i| u.row(i).to_vec()).collect()
}

/// The lattice of canonical-coordinate relations `moduli[i] * e_i`.
pub(crate) fn moduli_lattice(moduli: &[BigInt]) -> Lattice {
    let n = moduli.len();
    Lattice::from_generators(
        n,
        moduli.iter().enumerate().filter(|(_, d)| !d.is_zero()).map(|(i, d)| {
            let mut v = vec![BigInt::zero(); n];
            v[i] = d.clone();
            v
        }),
    )
}

/// A subgroup of a group in canonical coordinates, stored as the preimage
/// lattice in `Z^k` (which always contains the canonical relations).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    moduli: Vec<BigInt>,
    lattice: Lattice,
}

impl Subgroup {
    pub fn generated_by(parent: &FgAbGroup, gens: &[Vec<BigInt>]) -> Self {
        Self::from_moduli_and_gens(parent.moduli(), gens)
    }

    pub(crate) fn from_moduli_and_gens(moduli: Vec<BigInt>, gens: &[Vec<BigInt>]) -> Self {
        let rel = moduli_lattice(&moduli);
        let lattice = rel.sum(&Lattice::from_generators(moduli.len(), gens.iter().cloned()));
        Subgroup { moduli, lattice }
    }

    pub fn whole(parent: &FgAbGroup) -> Self {
        let moduli = parent.moduli();
        Subgroup { lattice: Lattice::full(moduli.len()), moduli }
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn contains(&self, canonical: &[BigInt]) -> bool {
        self.lattice.contains(canonical)
    }

    pub fn is_trivial(&self) -> bool {
        self.lattice == moduli_lattice(&self.moduli)
    }

    pub fn is_whole(&self) -> bool {
        self.lattice.rank() == self.moduli.len() && self.lattice == Lattice::full(self.moduli.len())
    }

    /// The subgroup as an abstract group.
    pub fn as_group(&self) -> FgAbGroup {
        FgAbGroup::subquotient(self.moduli.len(), self.lattice.clone(), moduli_lattice(&self.moduli))
            .expect("subgroup contains relations")
    }

    /// Quotient of the parent by this subgroup.
    pub fn quotient_group(&self) -> FgAbGroup {
        FgAbGroup::quotient(self.moduli.len(), self.lattice.clone()).expect("quotient")
    }
}

/// A homomorphism between two groups, acting on canonical coordinates.
#[derive(Clone, Debug)]
pub struct Hom {
    src: Vec<BigInt>,
    dst: Vec<BigInt>,
    matrix: IntMatrix,
}

impl Hom {
    /// `matrix` has one column per canonical source coordinate.
    pub fn new(src: &FgAbGroup, dst: &FgAbGroup, matrix: IntMatrix) -> Result<Self> {
        Self::from_moduli(src.moduli(), dst.moduli(), matrix)
    }

    pub(crate) fn from_moduli(src: Vec<BigInt>, dst: Vec<BigInt>, matrix: IntMatrix) -> Result<Self> {
        if matrix.cols() != src.len() {
            return Err(Error::DimensionMismatch { expected: src.len(), found: matrix.cols() });
        }
        if matrix.rows() != dst.len() {
            return Err(Error::DimensionMismatch { expected: dst.len(), found: matrix.rows() });
        }
        let mut m = matrix;
        for (i, d) in dst.iter().enumerate() {
            if d.is_zero() {
                continue;
            }
            for j in 0..m.cols() {
                let v = m.get(i, j).mod_floor(d);
                m.set(i, j, v);
            }
        }
        for (j, d) in src.iter().enumerate() {
            if d.is_zero() {
                continue;
            }
            for (i, e) in dst.iter().enumerate() {
                let x = d * m.get(i, j);
                let ok = if e.is_zero() { x.is_zero() } else { x.is_multiple_of(e) };
                if !ok {
                    return Err(Error::IllDefinedHom(j));
                }
            }
        }
        Ok(Hom { src, dst, matrix: m })
    }

    /// Builds the homomorphism from the images of the canonical generators.
    pub fn from_images(src: &FgAbGroup, dst: &FgAbGroup, images: &[Vec<BigInt>]) -> Result<Self> {
        let mut m = IntMatrix::zeros(dst.canonical_dim(), images.len());
        for (j, col) in images.iter().enumerate() {
            for (i, x) in col.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        Self::new(src, dst, m)
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn apply(&self, x: &[BigInt]) -> Vec<BigInt> {
        let y = self.matrix.mul_vec(x);
        y.iter().zip(&self.dst).map(|(v, d)| if d.is_zero() { v.clone() } else { v.mod_floor(d) }).collect()
    }

    pub fn compose(&self, first: &Hom) -> Hom {
        assert_eq!(first.dst, self.src, "composing incompatible homomorphisms");
        Hom::from_moduli(first.src.clone(), self.dst.clone(), self.matrix.mul(&first.matrix))
            .expect("composite of well-defined maps")
    }

    /// Pointwise difference of two parallel maps.
    pub fn sub(&self, other: &Hom) -> Hom {
        assert_eq!(self.src, other.src);
        assert_eq!(self.dst, other.dst);
        let mut m = self.matrix.clone();
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                let v = m.get(i, j) - other.matrix.get(i, j);
                m.set(i, j, v);
            }
        }
        Hom::from_moduli(self.src.clone(), self.dst.clone(), m).expect("difference of well-defined maps")
    }

    pub fn add(&self, other: &Hom) -> Hom {
        let mut m = other.matrix.clone();
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                let v = -m.get(i, j);
                m.set(i, j, v);
            }
        }
        let neg = Hom { src: other.src.clone(), dst: other.dst.clone(), matrix: m };
        self.sub(&neg)
    }

    pub fn kernel(&self) -> Subgroup {
        let n_src = self.src.len();
        let n_dst = self.dst.len();
        let dst_rel: Vec<usize> = (0..n_dst).filter(|&i| !self.dst[i].is_zero()).collect();
        let mut stacked = IntMatrix::zeros(n_src + dst_rel.len(), n_dst);
        for j in 0..n_src {
            for i in 0..n_dst {
                stacked.set(j, i, self.matrix.get(i, j).clone());
            }
        }
        for (r, &i) in dst_rel.iter().enumerate() {
            stacked.set(n_src + r, i, self.dst[i].clone());
        }
        let gens: Vec<Vec<BigInt>> = left_kernel(&stacked).into_iter().map(|k| k[..n_src].to_vec()).collect();
        Subgroup::from_moduli_and_gens(self.src.clone(), &gens)
    }

    pub fn image(&self) -> Subgroup {
        let gens: Vec<Vec<BigInt>> = (0..self.src.len()).map(|j| self.matrix.column(j)).collect();
        Subgroup::from_moduli_and_gens(self.dst.clone(), &gens)
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().is_trivial()
    }

    pub fn is_surjective(&self) -> bool {
        self.image().is_whole()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }

    /// Image of a subgroup of the source.
    pub fn image_of(&self, sub: &Subgroup) -> Subgroup {
        let gens: Vec<Vec<BigInt>> = sub.lattice.basis().iter().map(|b| self.matrix.mul_vec(b)).collect();
        Subgroup::from_moduli_and_gens(self.dst.clone(), &gens)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    fn bv(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| b(x)).collect()
    }

    #[test]
    fn cokernel_examples() {
        let z = FgAbGroup::cokernel(&IntMatrix::zeros(2, 0), 2).unwrap();
        assert_eq!(z.invariants(), &Invariants::free(2));

        let g = FgAbGroup::cokernel(&IntMatrix::from_i64(&[&[2, 0], &[0, 3]]), 2).unwrap();
        assert_eq!(g.invariants(), &Invariants { rank: 0, torsion: vec![b(6)] });

        let t = FgAbGroup::cokernel(&IntMatrix::from_i64(&[&[1, 1], &[0, 1]]), 2).unwrap();
        assert!(t.invariants().is_trivial());

        assert!(FgAbGroup::cokernel(&IntMatrix::zeros(3, 1), 2).is_err());
    }

    #[test]
    fn reduce_is_well_defined_on_cosets() {
        let g = FgAbGroup::cokernel(&IntMatrix::from_i64(&[&[2, 0], &[0, 3]]), 2).unwrap();
        assert_eq!(g.reduce(&bv(&[2, 0])).unwrap(), bv(&[0]));
        assert_eq!(g.reduce(&bv(&[0, 3])).unwrap(), bv(&[0]));
        let base = g.reduce(&bv(&[1, 1])).unwrap();
        assert_eq!(g.reduce(&bv(&[3, 1])).unwrap(), base);
        assert_eq!(g.reduce(&bv(&[1, -2])).unwrap(), base);
        // (1,1) generates Z/2 + Z/3
        assert_ne!(base, bv(&[0]));
    }

    #[test]
    fn lift_inverts_reduce() {
        let g = FgAbGroup::cokernel(&IntMatrix::from_i64(&[&[2, 4, 0], &[0, 6, 0], &[0, 0, 0]]), 3).unwrap();
        assert_eq!(g.invariants().rank, 1);
        for i in 0..g.canonical_dim() {
            let gen = g.generator(i);
            let mut e = vec![b(0); g.canonical_dim()];
            e[i] = b(1);
            assert_eq!(g.reduce(&gen).unwrap(), e);
        }
    }

    #[test]
    fn kernel_and_image() {
        let z2 = FgAbGroup::from_moduli(&[b(0), b(0)]);
        let z = FgAbGroup::from_moduli(&[b(0)]);
        let h = Hom::new(&z2, &z, IntMatrix::from_i64(&[&[1, 1]])).unwrap();
        let k = h.kernel();
        assert!(k.contains(&bv(&[1, -1])));
        assert!(!k.contains(&bv(&[1, 0])));
        assert_eq!(k.as_group().invariants(), &Invariants::free(1));
        assert!(h.is_surjective());
        assert!(!h.is_injective());
    }

    #[test]
    fn hom_into_torsion() {
        let z = FgAbGroup::from_moduli(&[b(0)]);
        let z4 = FgAbGroup::from_moduli(&[b(4)]);
        let z2 = FgAbGroup::from_moduli(&[b(2)]);
        let h = Hom::new(&z, &z4, IntMatrix::from_i64(&[&[2]])).unwrap();
        assert_eq!(h.kernel().as_group().invariants(), &Invariants::free(1));
        assert_eq!(h.image().as_group().invariants(), &Invariants { rank: 0, torsion: vec![b(2)] });
        // Z/2 -> Z/4 by 1 |-> 1 is not well defined
        assert!(Hom::new(&z2, &z4, IntMatrix::from_i64(&[&[1]])).is_err());
        assert!(Hom::new(&z2, &z4, IntMatrix::from_i64(&[&[2]])).unwrap().is_injective());
    }
}
