use num_bigint::BigInt;
use num_traits::Zero;

use super::tensor::{coproduct, MultiPoly, TensorSquareRing};
use crate::fox::{loop_model, HomologyModel};
use crate::lattice::{FgAbGroup, Hom, Subgroup};
use crate::ring::{magnus, TruncPoly, TruncRing};
use crate::space::{GroupPresentation, Letter, Word};
use crate::{Error, Result};

/// Primitive elements of `I/I^{n+1}`.
#[derive(Clone, Debug)]
pub struct Primitives {
    /// `I/I^{n+1}`.
    pub ambient: FgAbGroup,
    pub subgroup: Subgroup,
}

impl Primitives {
    /// Word-coordinate representatives of a basis of the subgroup.
    pub fn basis(&self, ring: &TruncRing) -> Vec<TruncPoly> {
        self.subgroup
            .as_group()
            .numerator()
            .basis()
            .iter()
            .map(|c| ring.from_vector(&self.ambient.lift(c).expect("canonical vector")))
            .collect()
    }
}

/// `Δp - p⊗1 - 1⊗p`.
pub fn reduced_coproduct(p: &TruncPoly) -> MultiPoly {
    let n = p.degree();
    &(&coproduct(p) - &MultiPoly::embed(p, 0, 2, n)) - &MultiPoly::embed(p, 1, 2, n)
}

/// Solves `Δp = p⊗1 + 1⊗p` in the truncated tensor square.
pub fn primitive_part(ring: &TruncRing) -> Result<Primitives> {
    let ambient = ring.ideal_quotient(1)?;
    let ts = TensorSquareRing::new(ring);
    let target = ts.additive_group();
    let images = (0..ambient.canonical_dim())
        .map(|i| {
            let p = ring.from_vector(&ambient.generator(i));
            target.reduce(&ts.vector(&reduced_coproduct(&p))?)
        })
        .collect::<Result<Vec<_>>>()?;
    let hom = Hom::from_images(&ambient, &target, &images)?;
    Ok(Primitives { subgroup: hom.kernel(), ambient })
}

/// Map of loop models induced by the homomorphism `x_i ↦ images[i]`:
/// `λ f_x ↦ Σ_e φ(λ) ∂φ(x)/∂e f_e`.
fn chain_map(src: &HomologyModel, dst: &HomologyModel, images: &[Word]) -> Result<Hom> {
    let Some(sc) = src.coefficients() else {
        return Hom::from_images(src.group(), dst.group(), &vec![Vec::new(); src.group().canonical_dim()]);
    };
    let m = sc.degree();
    let g2 = dst.generators();
    let letter_images: Vec<TruncPoly> = images.iter().map(|w| magnus(w, g2, m).augmentation_free()).collect();
    let derivs: Vec<Vec<TruncPoly>> = images
        .iter()
        .map(|w| (0..g2).map(|e| crate::fox::fox_derivative(w, e, g2, m)).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    let cols = (0..src.group().canonical_dim())
        .map(|i| {
            let mut e = vec![BigInt::zero(); src.group().canonical_dim()];
            e[i] = BigInt::from(1);
            let slots = src.lift_chain(&e)?;
            let mut out = vec![TruncPoly::zero(g2, m); g2];
            for (x, lambda) in slots.iter().enumerate() {
                let phi = lambda.substitute(&letter_images, m);
                for (e2, d) in derivs[x].iter().enumerate() {
                    out[e2] = &out[e2] + &(&phi * d);
                }
            }
            dst.reduce_chain(&out)
        })
        .collect::<Result<Vec<_>>>()?;
    Hom::from_images(src.group(), dst.group(), &cols)
}

/// Equalizer of `D_*` and `i'_* + i''_*` on the Fox models of `X` and `X^2`,
/// as a subgroup of the loop model of `X` in degree `n`.
pub fn equalizer_homological(gp: &GroupPresentation, n: usize) -> Result<Subgroup> {
    if gp.anchor != gp.target {
        return Err(Error::EndpointMismatch("equalizer needs a = b".into()));
    }
    let g = gp.generator_count();
    let square = gp.product_square();
    let hx = loop_model(gp, n)?;
    let hxx = loop_model(&square, n)?;
    let diag: Vec<Word> = (0..g).map(|i| Word(vec![Letter::new(i), Letter::new(g + i)])).collect();
    let first: Vec<Word> = (0..g).map(Word::generator).collect();
    let second: Vec<Word> = (0..g).map(|i| Word::generator(g + i)).collect();
    let d = chain_map(&hx, &hxx, &diag)?;
    let i1 = chain_map(&hx, &hxx, &first)?;
    let i2 = chain_map(&hx, &hxx, &second)?;
    Ok(d.sub(&i1.add(&i2)).kernel())
}

/// `κ_n` applied to the primitive part, as a subgroup of the loop model.
pub fn kappa_of_primitives(ring: &TruncRing, model: &HomologyModel) -> Result<Subgroup> {
    let prim = primitive_part(ring)?;
    let gens = prim
        .basis(ring)
        .iter()
        .map(|p| model.kappa_poly(p))
        .collect::<Result<Vec<_>>>()?;
    Ok(Subgroup::generated_by(model.group(), &gens))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::build_ring;
    use crate::space::{builtin_space, fundamental_presentation};

    fn setup(name: &str, n: usize) -> (GroupPresentation, TruncRing) {
        let (ss, bp) = builtin_space(name).unwrap();
        let gp = fundamental_presentation(&ss, bp);
        let ring = build_ring(&gp, n).unwrap();
        (gp, ring)
    }

    #[test]
    fn circle_primitives() {
        let (_, ring) = setup("circle", 2);
        let prim = primitive_part(&ring).unwrap();
        let basis = prim.basis(&ring);
        assert_eq!(basis.len(), 1);
        let p = &basis[0];
        let expected = &TruncPoly::monomial(1, 2, vec![0, 0], BigInt::from(1)) - &TruncPoly::letter(1, 2, 0).scale(&BigInt::from(2));
        assert!(ring.equal(p, &expected) || ring.equal(p, &-&expected));
    }

    #[test]
    fn degree_one_everything_is_primitive() {
        let (_, ring) = setup("wedge(2)", 1);
        assert!(primitive_part(&ring).unwrap().subgroup.is_whole());
    }

    #[test]
    fn equalizer_matches_primitives() {
        for name in ["circle", "wedge(2)"] {
            let (gp, ring) = setup(name, 2);
            let model = loop_model(&gp, 2).unwrap();
            let lhs = kappa_of_primitives(&ring, &model).unwrap();
            let rhs = equalizer_homological(&gp, 2).unwrap();
            assert_eq!(lhs, rhs, "{name}");
        }
        let (gp, _) = setup("wedge(2)", 2);
        assert_eq!(equalizer_homological(&gp, 2).unwrap().as_group().rank(), 3);
    }

    #[test]
    fn trivial_group_equalizer() {
        let (gp, _) = setup("sphere2", 2);
        assert!(equalizer_homological(&gp, 2).unwrap().is_trivial());
    }
}
