//! Fox-calculus models of the relative homology groups.
//!
//! Chains live in `(T_{<=n-1})^{slots}`: one slot per generator, plus a last
//! slot for the distinguished edge in the two-endpoint case. Every ambient
//! vector is the concatenation of the slot coefficients in word-basis order.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::lattice::{FgAbGroup, Hom, Lattice};
use crate::ring::{magnus, Monomial, TruncPoly, TruncRing, WordBasis};
use crate::space::{GroupPresentation, Word};
use crate::{Error, Result};

/// Left Fox derivative `∂w/∂x_gen` in `T_{<=n}`: `∂(uv) = ∂u + u ∂v`.
pub fn fox_derivative(w: &Word, gen: usize, g: usize, n: usize) -> Result<TruncPoly> {
    if gen >= g {
        return Err(Error::UnknownGenerator(gen));
    }
    if let Some(m) = w.max_generator() {
        if m >= g {
            return Err(Error::UnknownGenerator(m));
        }
    }
    let mut prefix = TruncPoly::one(g, n);
    let mut out = TruncPoly::zero(g, n);
    for &l in &w.0 {
        let lm = magnus(&Word(vec![l]), g, n);
        if l.gen == gen {
            out = if l.inverse { &out - &(&prefix * &lm) } else { &out + &prefix };
        }
        prefix = &prefix * &lm;
    }
    Ok(out)
}

/// Fox derivatives of every relator, `entries[e][r] = ∂r/∂x_e` truncated at `n`.
#[derive(Clone, Debug)]
pub struct FoxMatrix {
    pub n: usize,
    pub entries: Vec<Vec<TruncPoly>>,
}

impl FoxMatrix {
    pub fn new(gp: &GroupPresentation, n: usize) -> Self {
        let g = gp.generator_count();
        let entries = (0..g)
            .map(|e| gp.relators.iter().map(|r| fox_derivative(r, e, g, n).expect("generators in range")).collect())
            .collect();
        FoxMatrix { n, entries }
    }

    /// `Σ_e (∂r/∂x_e) x_e = magnus(r) - 1` for every relator.
    pub fn fundamental_identity_holds(&self, gp: &GroupPresentation) -> bool {
        let g = gp.generator_count();
        gp.relators.iter().enumerate().all(|(j, r)| {
            let mut lhs = TruncPoly::zero(g, self.n);
            for e in 0..g {
                lhs = &lhs + &(&self.entries[e][j] * &TruncPoly::letter(g, self.n, e));
            }
            lhs == magnus(r, g, self.n).augmentation_free()
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModelKind {
    /// `a = b`: cokernel of the Fox matrix, isomorphic to `I/I^{n+1}`.
    Loop,
    /// `a != b`: extension of `I/I^{n+1}` by the integers.
    Path,
}

/// Algebraic model of `H_n(X^n, X(n)^a_b)`.
#[derive(Clone, Debug)]
pub struct HomologyModel {
    n: usize,
    a: usize,
    b: usize,
    kind: ModelKind,
    g: usize,
    /// Coefficients `R/I^n`; absent for `n = 0`.
    coeff: Option<TruncRing>,
    slots: usize,
    group: FgAbGroup,
}

/// Splits `q - ε(q)` as `Σ λ_e x_e` by the last letter of each word.
fn split_last_letter(q: &TruncPoly, g: usize, m: usize) -> Vec<TruncPoly> {
    let mut lambda = vec![TruncPoly::zero(g, m); g];
    for (w, c) in q.terms() {
        if let Some((&last, rest)) = w.split_last() {
            lambda[last].add_term(rest.to_vec(), c);
        }
    }
    lambda
}

fn slot_vector(slots: &[TruncPoly], basis: &WordBasis) -> Vec<BigInt> {
    slots.iter().flat_map(|p| p.to_vector(basis)).collect()
}

/// Places `v` (a word-coordinate vector) in slot `s` of `slots` slots.
fn in_slot(v: &[BigInt], s: usize, slots: usize) -> Vec<BigInt> {
    let d = v.len();
    let mut out = vec![BigInt::zero(); d * slots];
    out[s * d..(s + 1) * d].clone_from_slice(v);
    out
}

impl HomologyModel {
    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn endpoints(&self) -> (usize, usize) {
        (self.a, self.b)
    }

    pub fn kind(&self) -> ModelKind {
        self.kind
    }

    pub fn group(&self) -> &FgAbGroup {
        &self.group
    }

    pub fn generators(&self) -> usize {
        self.g
    }

    pub fn slots(&self) -> usize {
        self.slots
    }

    /// Coefficient ring `R/I^n` of the chain slots (`None` when `n = 0`).
    pub fn coefficients(&self) -> Option<&TruncRing> {
        self.coeff.as_ref()
    }

    /// Canonical coordinates of the chain with the given slot coefficients.
    pub fn reduce_chain(&self, slots: &[TruncPoly]) -> Result<Vec<BigInt>> {
        if slots.len() != self.slots {
            return Err(Error::DimensionMismatch { expected: self.slots, found: slots.len() });
        }
        match &self.coeff {
            None => Ok(self.stipulated_coords(slots.last().map(TruncPoly::augmentation).unwrap_or_default())),
            Some(r) => {
                let v: Vec<TruncPoly> = slots.iter().map(|p| p.truncate(r.degree())).collect();
                self.group.reduce(&slot_vector(&v, r.basis()))
            }
        }
    }

    fn stipulated_coords(&self, c: BigInt) -> Vec<BigInt> {
        match self.kind {
            ModelKind::Loop => Vec::new(),
            ModelKind::Path => vec![c],
        }
    }

    /// Slot coefficients of an ambient lift of a canonical vector.
    pub fn lift_chain(&self, canonical: &[BigInt]) -> Result<Vec<TruncPoly>> {
        match &self.coeff {
            None => Ok(match self.kind {
                ModelKind::Loop => vec![TruncPoly::zero(self.g, 0); self.g],
                ModelKind::Path => {
                    let mut slots = vec![TruncPoly::zero(self.g, 0); self.g];
                    slots.push(TruncPoly::constant(self.g, 0, canonical[0].clone()));
                    slots
                }
            }),
            Some(r) => {
                let v = self.group.lift(canonical)?;
                let d = r.dim();
                Ok((0..self.slots).map(|s| r.from_vector(&v[s * d..(s + 1) * d])).collect())
            }
        }
    }

    /// `κ_n` on an element of `R/I^{n+1}` (degree `>= n`).
    pub fn kappa_poly(&self, q: &TruncPoly) -> Result<Vec<BigInt>> {
        if q.letters() != self.g || q.degree() < self.n {
            return Err(Error::RingMismatch);
        }
        let Some(r) = &self.coeff else {
            return Ok(self.stipulated_coords(q.augmentation()));
        };
        let m = r.degree();
        let mut slots = split_last_letter(&q.truncate(self.n), self.g, m);
        if self.kind == ModelKind::Path {
            slots.push(q.truncate(m));
        }
        self.reduce_chain(&slots)
    }

    /// `κ_n` on a path class with matching endpoints.
    pub fn kappa(&self, pc: &crate::ring::PathClass) -> Result<Vec<BigInt>> {
        if (pc.source, pc.target) != (self.a, self.b) {
            return Err(Error::EndpointMismatch(format!(
                "class from {} to {} evaluated in model for ({}, {})",
                pc.source, pc.target, self.a, self.b
            )));
        }
        self.kappa_poly(pc.element())
    }

    /// `κ_n` as a homomorphism out of the additive group of `ring` (degree `n`).
    pub fn kappa_hom(&self, ring: &TruncRing) -> Result<Hom> {
        let src = ring.additive_group();
        let images = (0..src.canonical_dim())
            .map(|i| self.kappa_poly(&ring.from_vector(&src.generator(i))))
            .collect::<Result<Vec<_>>>()?;
        Hom::from_images(&src, &self.group, &images)
    }

    /// Inverse identification: the element `ε + Σ λ_e x_e` of `R/I^{n+1}`,
    /// `ε` being the constant term of the last slot in the two-endpoint case.
    pub fn to_ring(&self, canonical: &[BigInt]) -> Result<TruncPoly> {
        let slots = self.lift_chain(canonical)?;
        let mut out = TruncPoly::zero(self.g, self.n);
        for (e, lambda) in slots.iter().take(self.g).enumerate() {
            let lam = TruncPoly::from_terms(self.g, self.n, lambda.terms().iter().map(|(w, c)| (w.clone(), c.clone())));
            out = &out + &(&lam * &TruncPoly::letter(self.g, self.n, e));
        }
        if self.kind == ModelKind::Path {
            out = &out + &TruncPoly::constant(self.g, self.n, slots[self.g].augmentation());
        }
        Ok(out)
    }

    /// Class of the distinguished edge (two-endpoint models only).
    pub fn distinguished(&self) -> Option<Vec<BigInt>> {
        (self.kind == ModelKind::Path).then(|| self.kappa_poly(&TruncPoly::one(self.g, self.n)).expect("unit is in range"))
    }

    /// `τ^n_{n-1}`: truncate every slot coefficient.
    pub fn truncation(&self, lower: &HomologyModel) -> Result<Hom> {
        if lower.n + 1 != self.n {
            return Err(Error::NonConsecutive(self.n, lower.n));
        }
        if (lower.a, lower.b, lower.g) != (self.a, self.b, self.g) {
            return Err(Error::EndpointMismatch("truncation between models of different spaces".into()));
        }
        let images = (0..self.group.canonical_dim())
            .map(|i| {
                let mut e = vec![BigInt::zero(); self.group.canonical_dim()];
                e[i] = BigInt::one();
                let slots = self.lift_chain(&e)?;
                let m = lower.n.saturating_sub(1);
                let truncated: Vec<TruncPoly> = slots.iter().map(|p| p.truncate(m)).collect();
                lower.reduce_chain(&truncated)
            })
            .collect::<Result<Vec<_>>>()?;
        Hom::from_images(&self.group, &lower.group, &images)
    }
}

/// Cokernel model for `a = b`.
pub fn loop_model(gp: &GroupPresentation, n: usize) -> Result<HomologyModel> {
    if gp.anchor != gp.target {
        return Err(Error::EndpointMismatch("loop model needs a = b".into()));
    }
    build(gp, n, ModelKind::Loop)
}

/// Extension model for `a != b`; the reference path must be a single edge from `a` to `b`.
pub fn path_model(gp: &GroupPresentation, n: usize) -> Result<HomologyModel> {
    if gp.anchor == gp.target {
        return Err(Error::EndpointMismatch("path model needs a != b".into()));
    }
    if gp.distinguished_edge().is_none() {
        return Err(Error::MissingDistinguishedEdge);
    }
    build(gp, n, ModelKind::Path)
}

/// Loop or path model according to the presentation's endpoints.
pub fn homology_model(gp: &GroupPresentation, n: usize) -> Result<HomologyModel> {
    if gp.anchor == gp.target {
        loop_model(gp, n)
    } else {
        path_model(gp, n)
    }
}

/// Models for degrees `0..=n`.
pub fn model_tower(gp: &GroupPresentation, n: usize) -> Result<Vec<HomologyModel>> {
    (0..=n).map(|k| homology_model(gp, k)).collect()
}

fn build(gp: &GroupPresentation, n: usize, kind: ModelKind) -> Result<HomologyModel> {
    let g = gp.generator_count();
    let slots = if kind == ModelKind::Path { g + 1 } else { g };
    if n == 0 {
        let group = match kind {
            ModelKind::Loop => FgAbGroup::trivial(),
            ModelKind::Path => FgAbGroup::from_moduli(&[BigInt::zero()]),
        };
        return Ok(HomologyModel { n, a: gp.anchor, b: gp.target, kind, g, coeff: None, slots, group });
    }
    let m = n - 1;
    let coeff = TruncRing::new(g, gp.relators.clone(), m);
    let basis = coeff.basis().clone();
    let d = basis.len();
    let ambient = d * slots;
    let mut relations: Vec<Vec<BigInt>> = Vec::new();
    for s in 0..slots {
        for j in coeff.ideal().basis() {
            relations.push(in_slot(j, s, slots));
        }
    }
    let fox = FoxMatrix::new(gp, m);
    let monomials: Vec<Monomial> = basis.words_up_to(m).collect();
    for r in 0..gp.relators.len() {
        for mono in &monomials {
            let left = TruncPoly::monomial(g, m, mono.clone(), BigInt::one());
            let mut row: Vec<TruncPoly> = (0..g).map(|e| &left * &fox.entries[e][r]).collect();
            if kind == ModelKind::Path {
                // keeps the relation inside the cycle lattice
                let mut tail = TruncPoly::zero(g, m);
                for (e, lam) in row.iter().enumerate() {
                    tail = &tail + &(&lam.clone() * &TruncPoly::letter(g, m, e));
                }
                row.push(tail.truncate(m));
            }
            relations.push(slot_vector(&row, &basis));
        }
    }
    let relations = Lattice::from_generators(ambient, relations);
    let group = match kind {
        ModelKind::Loop => FgAbGroup::quotient(ambient, relations)?,
        ModelKind::Path => {
            // cycles: λ_e f_e + (Σ λ_e x_e) f_last, constants in the last slot, and J everywhere
            let mut cycles: Vec<Vec<BigInt>> = Vec::new();
            for e in 0..g {
                for mono in &monomials {
                    let lam = TruncPoly::monomial(g, m, mono.clone(), BigInt::one());
                    let lam_n = TruncPoly::monomial(g, n, mono.clone(), BigInt::one());
                    let tail = (&lam_n * &TruncPoly::letter(g, n, e)).truncate(m);
                    let mut row = vec![TruncPoly::zero(g, m); slots];
                    row[e] = lam;
                    row[g] = tail;
                    cycles.push(slot_vector(&row, &basis));
                }
            }
            cycles.push(in_slot(&TruncPoly::one(g, m).to_vector(&basis), g, slots));
            cycles.extend(relations.basis().iter().cloned());
            FgAbGroup::subquotient(ambient, Lattice::from_generators(ambient, cycles), relations)?
        }
    };
    Ok(HomologyModel { n, a: gp.anchor, b: gp.target, kind, g, coeff: Some(coeff), slots, group })
}
