use std::fmt::Display;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use truncpath_core::fox::{homology_model, model_tower, HomologyModel};
use truncpath_core::hopf::{
    coproduct, dual_cup_cokernel, equalizer_homological, kappa_of_primitives, KContext, MultiPoly, Side,
};
use truncpath_core::lattice::Subgroup;
use truncpath_core::oracle::{RelChainComplex, Variant};
use truncpath_core::ring::{build_ring, PathClass, TruncPoly, TruncRing};
use truncpath_core::space::{fundamental_presentation, Basepoints, GroupPresentation, SimplicialSet, Word};
use truncpath_core::{Error, Hom, Invariants, Result};

use crate::report::CheckRecord;

/// A loaded space with its endpoints and presentation.
pub struct Input {
    pub label: String,
    pub ss: SimplicialSet,
    pub bp: Basepoints,
    pub gp: GroupPresentation,
    pub cap: usize,
    pub timings: bool,
}

/// Fixed seed so that randomized checks are reproducible.
const SEED: u64 = 0x7472_756e_6370;

fn record(input: &Input, id: String, lhs: impl Display, rhs: impl Display, matched: bool, start: Instant) -> CheckRecord {
    CheckRecord {
        check_id: id,
        lhs_invariants: lhs.to_string(),
        rhs_invariants: rhs.to_string(),
        matched,
        ms: input.timings.then(|| start.elapsed().as_millis() as u64),
    }
}

fn random_word(rng: &mut ChaCha8Rng, g: usize, max_len: usize) -> Word {
    if g == 0 {
        return Word::identity();
    }
    let len = rng.gen_range(1..=max_len);
    let letters: Vec<i64> = (0..len)
        .map(|_| {
            let x = rng.gen_range(1..=g as i64);
            if rng.gen_bool(0.5) {
                x
            } else {
                -x
            }
        })
        .collect();
    Word::from_signed(&letters)
}

fn ring_at(gp: &GroupPresentation, n: usize) -> TruncRing {
    TruncRing::new(gp.generator_count(), gp.relators.clone(), n)
}

/// Oracle against the Fox model and against the ring quotient.
pub fn bdg(input: &Input, n: usize) -> Result<Vec<CheckRecord>> {
    let start = Instant::now();
    let cx = RelChainComplex::build(&input.ss, n, Variant::Both, input.bp.a, input.bp.b, input.cap)?;
    let oracle = cx.homology(n);
    let model = homology_model(&input.gp, n)?.group().invariants().clone();
    let first = record(input, format!("bdg/fox n={n}"), &oracle, &model, oracle == model, start);
    let start = Instant::now();
    let ring = build_ring(&input.gp, n)?;
    let algebra = if input.bp.is_loop() { ring.ideal_quotient(1)? } else { ring.additive_group() };
    let alg = algebra.invariants().clone();
    let second = record(input, format!("bdg/ring n={n}"), &oracle, &alg, oracle == alg, start);
    Ok(vec![first, second])
}

/// `H_k = 0` for `k < n`.
pub fn connectivity(input: &Input, n: usize) -> Result<Vec<CheckRecord>> {
    let start = Instant::now();
    let cx = RelChainComplex::build(&input.ss, n, Variant::Both, input.bp.a, input.bp.b, input.cap)?;
    let groups: Vec<Invariants> = (0..n).map(|k| cx.homology(k)).collect();
    let ok = groups.iter().all(Invariants::is_trivial);
    let lhs = groups.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ");
    let rhs = vec!["0"; n].join(", ");
    Ok(vec![record(input, format!("connectivity n={n}"), lhs, rhs, ok, start)])
}

fn ring_truncation(hi: &TruncRing, lo: &TruncRing) -> Result<Hom> {
    let src = hi.additive_group();
    let dst = lo.additive_group();
    let images = (0..src.canonical_dim())
        .map(|i| dst.reduce(&lo.vector(&hi.from_vector(&src.generator(i)))))
        .collect::<Result<Vec<_>>>()?;
    Hom::from_images(&src, &dst, &images)
}

/// `τ^n_{n-1}` is onto with kernel `A_n`, and commutes with `κ`.
pub fn ladder(input: &Input, n: usize) -> Result<Vec<CheckRecord>> {
    if n == 0 {
        return Err(Error::BadDegree(0));
    }
    let start = Instant::now();
    let gp = &input.gp;
    let tower = model_tower(gp, n)?;
    let tau = tower[n].truncation(&tower[n - 1])?;
    let hi = ring_at(gp, n);
    let lo = ring_at(gp, n - 1);
    let a_n = hi.graded_piece(n)?;
    let ker = tau.kernel().as_group();
    let mut ok = tau.is_surjective() && ker.is_isomorphic(&a_n);
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ n as u64);
    for _ in 0..20 {
        let w = random_word(&mut rng, gp.generator_count(), 6);
        let up = tower[n].kappa(&PathClass::from_word(&hi, gp, &w))?;
        let down = tower[n - 1].kappa(&PathClass::from_word(&lo, gp, &w))?;
        let lower = tower[n - 1].group();
        ok &= lower.normalize(&tau.apply(&up)) == lower.normalize(&down);
    }
    if input.bp.is_loop() {
        let ker_hi = tower[n].kappa_hom(&hi)?.kernel();
        let ker_lo = tower[n - 1].kappa_hom(&lo)?.kernel();
        let t = ring_truncation(&hi, &lo)?;
        ok &= t.image_of(&ker_hi) == ker_lo && ker_hi.as_group().is_isomorphic(&ker_lo.as_group());
    }
    Ok(vec![record(input, format!("ladder n={n}"), ker.invariants(), a_n.invariants(), ok, start)])
}

fn random_element(rng: &mut ChaCha8Rng, ring: &TruncRing) -> TruncPoly {
    let g = ring.letters();
    let mut p = ring.zero();
    for _ in 0..rng.gen_range(1..=3) {
        let c = BigInt::from(rng.gen_range(-3i64..=3));
        p = &p + &ring.magnus(&random_word(rng, g, 5)).scale(&c);
    }
    p
}

/// Primitives against the equalizer, then the Hopf identities on random elements.
pub fn hopf(input: &Input, n: usize) -> Result<Vec<CheckRecord>> {
    if !input.bp.is_loop() {
        return Err(Error::EndpointMismatch("hopf checks need a = b".into()));
    }
    let start = Instant::now();
    let gp = &input.gp;
    let ring = build_ring(gp, n)?;
    let model = homology_model(gp, n)?;
    let lhs: Subgroup = kappa_of_primitives(&ring, &model)?;
    let rhs = equalizer_homological(gp, n)?;
    let prim = record(
        input,
        format!("hopf/primitives n={n}"),
        lhs.as_group().invariants(),
        rhs.as_group().invariants(),
        lhs == rhs,
        start,
    );

    let start = Instant::now();
    let cases = 50;
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ (n as u64) << 8);
    let mut good = 0;
    for _ in 0..cases {
        let p = random_element(&mut rng, &ring);
        let q = random_element(&mut rng, &ring);
        let d = coproduct(&p);
        let one = MultiPoly::embed(&p, 0, 1, n);
        let anti = ring.equal(&ring.antipode(&ring.mul(&p, &q)?), &ring.mul(&ring.antipode(&q), &ring.antipode(&p))?);
        if d.coproduct_at(0) == d.coproduct_at(1) && d.counit_at(0) == one && d.counit_at(1) == one && anti {
            good += 1;
        }
    }
    let axioms = record(input, format!("hopf/identities n={n}"), format!("{good}/{cases}"), format!("{cases}/{cases}"), good == cases, start);
    Ok(vec![prim, axioms])
}

fn loop_presentation(input: &Input) -> GroupPresentation {
    fundamental_presentation(&input.ss, Basepoints::same(input.bp.a))
}

/// Composition through `K` against `κ_n` of the product, plus independence
/// of the chosen lifts. With distinct endpoints this composes a path `a -> b`
/// after a loop at `a`.
pub fn composition(input: &Input, n: usize) -> Result<Vec<CheckRecord>> {
    if n < 2 {
        return Err(Error::BadDegree(n));
    }
    let start = Instant::now();
    let gp = &input.gp;
    let ring = build_ring(gp, n)?;
    let loops = loop_presentation(input);
    let left = model_tower(gp, n)?;
    let right = model_tower(&loops, n)?;
    let target: HomologyModel = left[n].clone();
    let ctx = KContext::new(left, right, target.clone())?;
    let g = gp.generator_count();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ (n as u64) << 16);
    let mut ours = Vec::new();
    let mut theirs = Vec::new();
    let mut ok = true;
    for _ in 0..25 {
        let beta = ring.magnus(&random_word(&mut rng, g, 5));
        let alpha = ring.magnus(&random_word(&mut rng, g, 5));
        let k = ctx.embed(&beta, &alpha)?;
        let got = ctx.compose_homological(&k)?;
        let b = if input.bp.is_loop() { beta.augmentation_free() } else { beta.clone() };
        let expected = target.kappa_poly(&ring.mul(&b, &alpha.augmentation_free())?)?;
        ok &= got == expected;
        ours.push(got);
        theirs.push(expected);
    }
    let lhs = Subgroup::generated_by(target.group(), &ours);
    let rhs = Subgroup::generated_by(target.group(), &theirs);

    let (_, ksub) = ctx.k_kernel()?;
    let basis = ksub.lattice().basis().to_vec();
    for _ in 0..10 {
        let Some(first) = basis.first() else { break };
        let mut v = vec![BigInt::zero(); first.len()];
        for b in &basis {
            let c = BigInt::from(rng.gen_range(-3i64..=3));
            for (x, y) in v.iter_mut().zip(b) {
                *x += &c * y;
            }
        }
        let kel = ctx.from_coordinates(&v);
        let before = ctx.compose_homological(&kel)?;
        let mut other = ctx.clone();
        for side in [Side::Left, Side::Right] {
            for deg in 1..n {
                for i in 0..ctx.lifts(side, deg).len() {
                    let mut p = ctx.lifts(side, deg)[i].clone();
                    let len = rng.gen_range(deg + 1..=n);
                    p.add_term((0..len).map(|_| rng.gen_range(0..g.max(1))).collect(), &BigInt::from(rng.gen_range(1i64..=5)));
                    other.set_lift(side, deg, i, p);
                }
            }
        }
        ok &= other.compose_homological(&kel)? == before;
    }
    Ok(vec![record(
        input,
        format!("composition n={n}"),
        lhs.as_group().invariants(),
        rhs.as_group().invariants(),
        ok && lhs == rhs,
        start,
    )])
}

/// Cokernel of the dual cup product against `I^2/I^3`.
pub fn cup_example(input: &Input) -> Result<Vec<CheckRecord>> {
    let start = Instant::now();
    let c = dual_cup_cokernel(&input.ss, &input.gp)?;
    let graded = build_ring(&input.gp, 2)?.graded_piece(2)?;
    let ok = c.holds() && c.cokernel.is_isomorphic(&graded);
    Ok(vec![record(input, "cupexample n=2".into(), c.cokernel.invariants(), graded.invariants(), ok, start)])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Bdg,
    Ladder,
    Hopf,
    Composition,
    CupExample,
    Connectivity,
}

impl Suite {
    pub const ALL: [Suite; 6] =
        [Suite::Bdg, Suite::Connectivity, Suite::Ladder, Suite::Hopf, Suite::Composition, Suite::CupExample];

    /// Whether the suite makes sense for this input and degree; `report`
    /// skips the rest instead of failing.
    pub fn applies(self, input: &Input, n: usize) -> bool {
        match self {
            Suite::Bdg | Suite::Connectivity | Suite::Ladder => n >= 1,
            Suite::Hopf => input.bp.is_loop() && n >= 1,
            Suite::Composition => n >= 2,
            Suite::CupExample => input.bp.is_loop() && input.ss.count(0) == 1,
        }
    }

    pub fn run(self, input: &Input, n: usize) -> Result<Vec<CheckRecord>> {
        match self {
            Suite::Bdg => bdg(input, n),
            Suite::Ladder => ladder(input, n),
            Suite::Hopf => hopf(input, n),
            Suite::Composition => composition(input, n),
            Suite::CupExample => cup_example(input),
            Suite::Connectivity => connectivity(input, n),
        }
    }

    /// Degree-independent suites run once.
    pub fn per_degree(self) -> bool {
        self != Suite::CupExample
    }
}
