//! Truncated group rings `Zπ/I^{n+1}` realized as truncated word algebras
//! modulo the two-sided ideal generated by the relators.

mod poly;

use num_bigint::BigInt;
use num_traits::One;

pub use poly::{magnus, Monomial, TruncPoly, WordBasis};

use crate::lattice::{unit, FgAbGroup, Lattice};
use crate::space::{GroupPresentation, Letter, Word};
use crate::{Error, Result};

/// `T_{<=n}(x_0..x_{g-1}) / J`, with `J` spanned by `m_L (magnus(r) - 1) m_R`.
#[derive(Clone, Debug)]
pub struct TruncRing {
    n: usize,
    g: usize,
    relators: Vec<Word>,
    basis: WordBasis,
    ideal: Lattice,
}

/// Builds the ring for `gp` at degree `n >= 1`.
pub fn build_ring(gp: &GroupPresentation, n: usize) -> Result<TruncRing> {
    if n == 0 {
        return Err(Error::BadDegree(n));
    }
    Ok(TruncRing::new(gp.generator_count(), gp.relators.clone(), n))
}

impl TruncRing {
    /// Also accepts `n = 0`, where the ring is `Z`.
    pub fn new(g: usize, relators: Vec<Word>, n: usize) -> Self {
        for r in &relators {
            assert!(r.max_generator().is_none_or(|m| m < g), "relator uses an unknown generator");
        }
        let basis = WordBasis::new(g, n);
        let mut gens = Vec::new();
        for r in &relators {
            let p = magnus(r, g, n).augmentation_free();
            if p.is_zero() {
                continue;
            }
            let v = p.valuation().unwrap();
            // multipliers of total length > n - v truncate to zero
            for total in 0..=(n - v) {
                for left in 0..=total {
                    for ml in basis.words_of_length(left) {
                        for mr in basis.words_of_length(total - left) {
                            let lhs = TruncPoly::monomial(g, n, ml.clone(), BigInt::one());
                            let rhs = TruncPoly::monomial(g, n, mr, BigInt::one());
                            let q = &(&lhs * &p) * &rhs;
                            if !q.is_zero() {
                                gens.push(q.to_vector(&basis));
                            }
                        }
                    }
                }
            }
        }
        let ideal = Lattice::from_generators(basis.len(), gens);
        TruncRing { n, g, relators, basis, ideal }
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn letters(&self) -> usize {
        self.g
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn basis(&self) -> &WordBasis {
        &self.basis
    }

    /// The relator ideal as a lattice in word coordinates.
    pub fn ideal(&self) -> &Lattice {
        &self.ideal
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    fn check(&self, p: &TruncPoly) -> Result<()> {
        if p.letters() != self.g || p.degree() < self.n {
            return Err(Error::RingMismatch);
        }
        Ok(())
    }

    pub fn zero(&self) -> TruncPoly {
        TruncPoly::zero(self.g, self.n)
    }

    pub fn one(&self) -> TruncPoly {
        TruncPoly::one(self.g, self.n)
    }

    pub fn letter(&self, i: usize) -> TruncPoly {
        TruncPoly::letter(self.g, self.n, i)
    }

    pub fn magnus(&self, w: &Word) -> TruncPoly {
        magnus(w, self.g, self.n)
    }

    pub fn vector(&self, p: &TruncPoly) -> Vec<BigInt> {
        p.truncate(self.n).to_vector(&self.basis)
    }

    pub fn from_vector(&self, v: &[BigInt]) -> TruncPoly {
        TruncPoly::from_vector(&self.basis, v)
    }

    /// Normal form: the Hermite remainder modulo the ideal.
    pub fn canonical(&self, p: &TruncPoly) -> Result<TruncPoly> {
        self.check(p)?;
        Ok(self.from_vector(&self.ideal.remainder(&self.vector(p))))
    }

    pub fn add(&self, p: &TruncPoly, q: &TruncPoly) -> Result<TruncPoly> {
        self.check(q)?;
        self.canonical(&(p + q))
    }

    pub fn sub(&self, p: &TruncPoly, q: &TruncPoly) -> Result<TruncPoly> {
        self.check(q)?;
        self.canonical(&(p - q))
    }

    pub fn neg(&self, p: &TruncPoly) -> Result<TruncPoly> {
        self.canonical(&-p)
    }

    pub fn mul(&self, p: &TruncPoly, q: &TruncPoly) -> Result<TruncPoly> {
        self.check(p)?;
        self.check(q)?;
        self.canonical(&(&p.truncate(self.n) * &q.truncate(self.n)))
    }

    pub fn augmentation(&self, p: &TruncPoly) -> BigInt {
        p.augmentation()
    }

    pub fn is_zero(&self, p: &TruncPoly) -> bool {
        self.ideal.contains(&self.vector(p))
    }

    pub fn equal(&self, p: &TruncPoly, q: &TruncPoly) -> bool {
        self.is_zero(&(p - q))
    }

    /// Antipode `x ↦ (1 + x)^-1 - 1`, extended as an anti-homomorphism.
    pub fn antipode(&self, p: &TruncPoly) -> TruncPoly {
        let images: Vec<TruncPoly> =
            (0..self.g).map(|i| magnus(&Word(vec![Letter::new(i).inv()]), self.g, self.n).augmentation_free()).collect();
        p.truncate(self.n).reversed().substitute(&images, self.n)
    }

    /// `T_{>=k} + J`.
    pub fn filtration_lattice(&self, k: usize) -> Lattice {
        let start = self.basis.offset(k);
        let gens = (start..self.dim()).map(|i| unit(self.dim(), i));
        self.ideal.sum(&Lattice::from_generators(self.dim(), gens))
    }

    /// The whole ring as an abelian group.
    pub fn additive_group(&self) -> FgAbGroup {
        FgAbGroup::quotient(self.dim(), self.ideal.clone()).expect("ideal lies in the ambient lattice")
    }

    /// `I^k / I^{n+1}` for `1 <= k <= n`.
    pub fn ideal_quotient(&self, k: usize) -> Result<FgAbGroup> {
        if k == 0 || k > self.n {
            return Err(Error::DegreeOutOfRange { k, n: self.n });
        }
        FgAbGroup::subquotient(self.dim(), self.filtration_lattice(k), self.ideal.clone())
    }

    /// `A_k = I^k / I^{k+1}` for `1 <= k <= n`.
    pub fn graded_piece(&self, k: usize) -> Result<FgAbGroup> {
        if k == 0 || k > self.n {
            return Err(Error::DegreeOutOfRange { k, n: self.n });
        }
        FgAbGroup::subquotient(self.dim(), self.filtration_lattice(k), self.filtration_lattice(k + 1))
    }
}

/// Free-function form of [`TruncRing::ideal_quotient`].
pub fn ideal_quotient(ring: &TruncRing, k: usize) -> Result<FgAbGroup> {
    ring.ideal_quotient(k)
}

/// Free-function form of [`TruncRing::graded_piece`].
pub fn graded_piece(ring: &TruncRing, k: usize) -> Result<FgAbGroup> {
    ring.graded_piece(k)
}

/// Class of a path between two vertices in `Zπ^source_target / I^{n+1}`.
///
/// Every path from `u` to `v` is written `t_v · w · t_u^-1` with `t` the tree
/// paths from the anchor and `w` a loop at the anchor; `elem` is the image of `w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathClass {
    pub source: usize,
    pub target: usize,
    elem: TruncPoly,
}

impl PathClass {
    pub fn new(ring: &TruncRing, source: usize, target: usize, elem: &TruncPoly) -> Result<Self> {
        Ok(PathClass { source, target, elem: ring.canonical(elem)? })
    }

    /// Class of `refpath · word` from the presentation's anchor to its target.
    pub fn from_word(ring: &TruncRing, gp: &GroupPresentation, word: &Word) -> Self {
        PathClass { source: gp.anchor, target: gp.target, elem: ring.canonical(&ring.magnus(word)).expect("same ring") }
    }

    pub fn constant(ring: &TruncRing, vertex: usize) -> Self {
        PathClass { source: vertex, target: vertex, elem: ring.canonical(&ring.one()).expect("same ring") }
    }

    pub fn element(&self) -> &TruncPoly {
        &self.elem
    }

    /// `self · p` with `p` acting at the source.
    pub fn act_right(&self, ring: &TruncRing, p: &TruncPoly) -> Result<Self> {
        Ok(PathClass { source: self.source, target: self.target, elem: ring.mul(&self.elem, p)? })
    }

    /// `p · self` with `p` acting at the target.
    pub fn act_left(&self, ring: &TruncRing, p: &TruncPoly) -> Result<Self> {
        Ok(PathClass { source: self.source, target: self.target, elem: ring.mul(p, &self.elem)? })
    }

    /// `self ∘ first`: traverse `first`, then `self`.
    pub fn compose(&self, ring: &TruncRing, first: &PathClass) -> Result<Self> {
        if first.target != self.source {
            return Err(Error::EndpointMismatch(format!(
                "path ending at vertex {} composed with path starting at vertex {}",
                first.target, self.source
            )));
        }
        Ok(PathClass { source: first.source, target: self.target, elem: ring.mul(&self.elem, &first.elem)? })
    }

    pub fn invert(&self, ring: &TruncRing) -> Self {
        PathClass {
            source: self.target,
            target: self.source,
            elem: ring.canonical(&ring.antipode(&self.elem)).expect("same ring"),
        }
    }
}

/// Free-function forms of the [`PathClass`] operations.
pub fn path_class(word: &Word, ring: &TruncRing, gp: &GroupPresentation) -> PathClass {
    PathClass::from_word(ring, gp, word)
}

pub fn act_right(pc: &PathClass, p: &TruncPoly, ring: &TruncRing) -> Result<PathClass> {
    pc.act_right(ring, p)
}

pub fn act_left(p: &TruncPoly, pc: &PathClass, ring: &TruncRing) -> Result<PathClass> {
    pc.act_left(ring, p)
}

pub fn invert_class(pc: &PathClass, ring: &TruncRing) -> PathClass {
    pc.invert(ring)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::{builtin_space, fundamental_presentation};

    fn ring(name: &str, n: usize) -> (TruncRing, GroupPresentation) {
        let (ss, bp) = builtin_space(name).unwrap();
        let gp = fundamental_presentation(&ss, bp);
        (build_ring(&gp, n).unwrap(), gp)
    }

    #[test]
    fn free_ranks() {
        let (r, _) = ring("wedge(2)", 3);
        assert_eq!(r.ideal().rank(), 0);
        assert_eq!(r.additive_group().invariants().to_string(), "Z^15");
        for k in 1..=3 {
            assert_eq!(r.graded_piece(k).unwrap().rank(), 1 << k);
        }
        assert_eq!(r.ideal_quotient(1).unwrap().invariants().to_string(), "Z^14");
    }

    #[test]
    fn torus_degree_two() {
        let (r, _) = ring("torus", 2);
        assert_eq!(r.additive_group().invariants().to_string(), "Z^6");
        assert_eq!(r.graded_piece(1).unwrap().invariants().to_string(), "Z^2");
        assert_eq!(r.graded_piece(2).unwrap().invariants().to_string(), "Z^3");
    }

    #[test]
    fn trivial_group() {
        let r = TruncRing::new(1, vec![Word::generator(0)], 3);
        assert_eq!(r.additive_group().invariants().to_string(), "Z");
    }

    #[test]
    fn zero_degree_rejected() {
        let (ss, bp) = builtin_space("circle").unwrap();
        let gp = fundamental_presentation(&ss, bp);
        assert!(matches!(build_ring(&gp, 0), Err(Error::BadDegree(0))));
        assert!(matches!(build_ring(&gp, 1).unwrap().graded_piece(2), Err(Error::DegreeOutOfRange { .. })));
    }

    #[test]
    fn antipode_of_generator() {
        let (r, gp) = ring("circle", 2);
        let pc = PathClass::from_word(&r, &gp, &Word::generator(0));
        let inv = pc.invert(&r);
        assert_eq!(inv.element().to_string(), "1 - x + xx");
        assert_eq!(inv.invert(&r), pc);
    }

    #[test]
    fn composition_checks_endpoints() {
        let (r, gp) = ring("interval_wedge(1)", 2);
        let pc = PathClass::from_word(&r, &gp, &Word::generator(0));
        assert!(pc.compose(&r, &pc).is_err());
        let back = pc.invert(&r);
        let loop_ = back.compose(&r, &pc).unwrap();
        assert_eq!(loop_, PathClass::constant(&r, gp.anchor));
    }
}
