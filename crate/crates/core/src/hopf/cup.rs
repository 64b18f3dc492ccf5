use num_bigint::BigInt;
use num_traits::Zero;

use crate::lattice::{FgAbGroup, Hom, Lattice};
use crate::oracle::{RelChainComplex, Variant, DEFAULT_CAP};
use crate::ring::{build_ring, TruncPoly};
use crate::space::{Face, GroupPresentation, SimplexId, SimplicialSet};
use crate::{Error, Result};

/// Multiplication `I/I^2 ⊗ I/I^2 → I^2/I^3` next to the cokernel of the dual
/// cup product `H_2(X) → H_1(X) ⊗ H_1(X)`.
#[derive(Clone, Debug)]
pub struct CupExample {
    pub h2: FgAbGroup,
    /// `H_1 ⊗ H_1`, on pairs of edges (later edge first).
    pub h1_tensor: FgAbGroup,
    pub dual_cup: Hom,
    pub cokernel: FgAbGroup,
    /// `I^2/I^3` of the truncated ring at `n = 2`.
    pub graded: FgAbGroup,
    /// Induced by `u ⊗ v ↦ x_u x_v`, from the cokernel.
    pub multiplication: Hom,
}

impl CupExample {
    /// The dual cup product lands in the kernel of multiplication.
    pub fn composite_vanishes(&self) -> bool {
        self.multiplication.compose(&self.quotient_map()).compose(&self.dual_cup).matrix().is_zero()
    }

    fn quotient_map(&self) -> Hom {
        let images: Vec<Vec<BigInt>> = (0..self.h1_tensor.canonical_dim())
            .map(|i| self.cokernel.reduce(&self.h1_tensor.generator(i)).unwrap())
            .collect();
        Hom::from_images(&self.h1_tensor, &self.cokernel, &images).expect("quotient of the same ambient")
    }

    pub fn holds(&self) -> bool {
        self.composite_vanishes() && self.multiplication.is_isomorphism()
    }
}

/// Alexander–Whitney on a 2-simplex: `σ ↦ [d_0 σ] ⊗ [d_2 σ]`, the later edge
/// first. Degenerate faces contribute nothing.
fn aw_pair(ss: &SimplicialSet, s: usize) -> Option<(usize, usize)> {
    let f = Face::nondegenerate(SimplexId { dim: 2, index: s });
    let later = ss.face_of(&f, 0);
    let earlier = ss.face_of(&f, 2);
    (!later.is_degenerate() && !earlier.is_degenerate()).then_some((later.base.index, earlier.base.index))
}

/// Needs a model with a single vertex, so that every edge is a loop and a generator.
pub fn dual_cup_cokernel(ss: &SimplicialSet, gp: &GroupPresentation) -> Result<CupExample> {
    if gp.anchor != gp.target {
        return Err(Error::EndpointMismatch("cup example needs a = b".into()));
    }
    if ss.count(0) != 1 {
        return Err(Error::Unsupported("cup example needs a single vertex".into()));
    }
    let edges = ss.count(1);
    let dim = edges * edges;
    let pair = |u: usize, v: usize| u * edges + v;

    let cx = RelChainComplex::build(ss, 1, Variant::Empty, 0, 0, DEFAULT_CAP)?;
    let h2 = cx.homology_group(2)?;
    // boundaries of 2-simplices, as edge vectors (every edge is a cycle)
    let bounds: Vec<Vec<BigInt>> = (0..cx.rank(2)).map(|i| cx.dense(1, &cx.boundary_rows(2)[i].clone())).collect();
    let mut rels = Vec::new();
    for b in &bounds {
        for w in 0..edges {
            let mut left = vec![BigInt::zero(); dim];
            let mut right = vec![BigInt::zero(); dim];
            for (u, x) in b.iter().enumerate() {
                left[pair(u, w)] += x;
                right[pair(w, u)] += x;
            }
            rels.push(left);
            rels.push(right);
        }
    }
    let h1_tensor = FgAbGroup::quotient(dim, Lattice::from_generators(dim, rels.clone()))?;

    let aw = |cycle: &[BigInt]| {
        let mut v = vec![BigInt::zero(); dim];
        for (s, c) in cycle.iter().enumerate() {
            if let Some((u, w)) = aw_pair(ss, s) {
                v[pair(u, w)] += c;
            }
        }
        v
    };
    let cup_images = (0..h2.canonical_dim())
        .map(|i| h1_tensor.reduce(&aw(&h2.generator(i))))
        .collect::<Result<Vec<_>>>()?;
    let dual_cup = Hom::from_images(&h2, &h1_tensor, &cup_images)?;

    rels.extend(h2.numerator().basis().iter().map(|z| aw(z)));
    let cokernel = FgAbGroup::quotient(dim, Lattice::from_generators(dim, rels))?;

    let ring = build_ring(gp, 2)?;
    let graded = ring.graded_piece(2)?;
    let letter = |e: usize| gp.generator_of_edge(e).expect("single vertex: every edge is a generator");
    let mult_images = (0..cokernel.canonical_dim())
        .map(|i| {
            let v = cokernel.generator(i);
            let mut p = TruncPoly::zero(ring.letters(), 2);
            for u in 0..edges {
                for w in 0..edges {
                    let c = &v[pair(u, w)];
                    if !c.is_zero() {
                        p.add_term(vec![letter(u), letter(w)], c);
                    }
                }
            }
            graded.reduce(&ring.vector(&p))
        })
        .collect::<Result<Vec<_>>>()?;
    let multiplication = Hom::from_images(&cokernel, &graded, &mult_images)?;
    Ok(CupExample { h2, h1_tensor, dual_cup, cokernel, graded, multiplication })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Invariants;
    use crate::space::{builtin_space, fundamental_presentation};

    fn run(name: &str) -> CupExample {
        let (ss, bp) = builtin_space(name).unwrap();
        let gp = fundamental_presentation(&ss, bp);
        dual_cup_cokernel(&ss, &gp).unwrap()
    }

    #[test]
    fn torus() {
        let c = run("torus");
        assert_eq!(c.h2.invariants(), &Invariants::free(1));
        assert_eq!(c.cokernel.invariants(), &Invariants::free(3));
        assert!(c.holds());
        // the image of the fundamental class is antisymmetric
        let img = c.h1_tensor.lift(&c.dual_cup.apply(&[BigInt::from(1)])).unwrap();
        let e = 3;
        let mut sym = img.clone();
        for u in 0..e {
            for v in 0..e {
                sym[u * e + v] += &img[v * e + u];
            }
        }
        assert!(c.h1_tensor.is_zero_class(&sym).unwrap());
        assert!(!c.h1_tensor.is_zero_class(&img).unwrap());
    }

    #[test]
    fn genus_two() {
        let c = run("genus(2)");
        assert_eq!(c.cokernel.invariants(), &Invariants::free(15));
        assert!(c.holds());
    }

    #[test]
    fn sphere() {
        let c = run("sphere2");
        assert!(c.cokernel.invariants().is_trivial());
        assert!(c.graded.invariants().is_trivial());
        assert!(c.holds());
    }

    #[test]
    fn needs_one_vertex() {
        let (ss, bp) = builtin_space("interval_wedge(1)").unwrap();
        let gp = fundamental_presentation(&ss, bp);
        assert!(dual_cup_cokernel(&ss, &gp).is_err());
    }
}
