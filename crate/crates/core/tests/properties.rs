use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;

use truncpath_core::fox::fox_derivative;
use truncpath_core::hopf::{coproduct, MultiPoly};
use truncpath_core::lattice::{hermite_normal_form, smith_normal_form, Lattice};
use truncpath_core::oracle::{forward_paths, kappa_chain, RelChainComplex, Variant, DEFAULT_CAP};
use truncpath_core::ring::{build_ring, magnus, TruncPoly, TruncRing};
use truncpath_core::space::{builtin_space, fundamental_presentation, parse_space_file, write_space_file, Word};
use truncpath_core::{FgAbGroup, IntMatrix};

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec(-6i64..=6, rows * cols).prop_map(move |v| {
        IntMatrix::from_rows(cols, v.chunks(cols).map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect())
    })
}

fn any_matrix() -> impl Strategy<Value = IntMatrix> {
    (1usize..5, 1usize..5).prop_flat_map(|(r, c)| matrix(r, c))
}

fn word(g: usize, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((1..=g as i64, any::<bool>()), 0..=max_len)
        .prop_map(|v| Word::from_signed(&v.into_iter().map(|(x, neg)| if neg { -x } else { x }).collect::<Vec<_>>()))
}

/// Random element of the truncated tensor algebra on `g` letters.
fn poly(g: usize, n: usize) -> impl Strategy<Value = TruncPoly> {
    prop::collection::vec((prop::collection::vec(0..g, 0..=n), -3i64..=3), 0..6).prop_map(move |terms| {
        let mut p = TruncPoly::zero(g, n);
        for (w, c) in terms {
            p.add_term(w, &BigInt::from(c));
        }
        p
    })
}

fn is_upper_staircase(h: &IntMatrix) -> bool {
    let mut last: Option<usize> = None;
    let mut seen_zero_row = false;
    for i in 0..h.rows() {
        let Some(p) = (0..h.cols()).find(|&j| !h.get(i, j).is_zero()) else {
            seen_zero_row = true;
            continue;
        };
        if seen_zero_row || last.is_some_and(|l| p <= l) || h.get(i, p) < &BigInt::zero() {
            return false;
        }
        // entries above the pivot are reduced
        for r in 0..i {
            let e = h.get(r, p);
            if e < &BigInt::zero() || e >= h.get(i, p) {
                return false;
            }
        }
        last = Some(p);
    }
    true
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hermite_form_is_unimodular_row_reduction(m in any_matrix()) {
        let (h, u) = hermite_normal_form(&m);
        prop_assert!(u.is_unimodular());
        prop_assert_eq!(u.mul(&m), h.clone());
        prop_assert!(is_upper_staircase(&h));
        // idempotent
        prop_assert_eq!(hermite_normal_form(&h).0, h);
    }

    #[test]
    fn smith_form_diagonalizes(m in any_matrix()) {
        let (d, u, v) = smith_normal_form(&m);
        prop_assert!(u.is_unimodular() && v.is_unimodular());
        prop_assert_eq!(u.mul(&m).mul(&v), d.clone());
        let diag: Vec<BigInt> = (0..d.rows().min(d.cols())).map(|i| d.get(i, i).clone()).collect();
        for i in 0..d.rows() {
            for j in 0..d.cols() {
                if i != j {
                    prop_assert!(d.get(i, j).is_zero());
                }
            }
        }
        for w in diag.windows(2) {
            prop_assert!(w[0] >= BigInt::zero());
            if !w[0].is_zero() {
                prop_assert!((&w[1] % &w[0]).is_zero());
            } else {
                prop_assert!(w[1].is_zero());
            }
        }
    }

    #[test]
    fn reduction_is_additive(m in matrix(3, 3), x in prop::collection::vec(-9i64..9, 3), y in prop::collection::vec(-9i64..9, 3)) {
        let g = FgAbGroup::cokernel(&m, 3).unwrap();
        let x: Vec<BigInt> = x.into_iter().map(BigInt::from).collect();
        let y: Vec<BigInt> = y.into_iter().map(BigInt::from).collect();
        let s: Vec<BigInt> = x.iter().zip(&y).map(|(a, b)| a + b).collect();
        let rx = g.reduce(&x).unwrap();
        let ry = g.reduce(&y).unwrap();
        prop_assert_eq!(g.reduce(&s).unwrap(), g.add(&rx, &ry));
        // columns of m are relations
        for j in 0..3 {
            prop_assert!(g.is_zero_class(&m.column(j)).unwrap());
        }
        prop_assert_eq!(g.reduce(&g.lift(&rx).unwrap()).unwrap(), rx);
    }

    #[test]
    fn lattice_membership_matches_generators(m in matrix(3, 4), c in prop::collection::vec(-5i64..5, 3)) {
        let l = Lattice::from_generators(4, m.to_rows());
        let v = m.vec_mul(&c.into_iter().map(BigInt::from).collect::<Vec<_>>());
        prop_assert!(l.contains(&v));
        prop_assert!(l.remainder(&v).iter().all(Zero::is_zero));
    }

    #[test]
    fn magnus_is_multiplicative(u in word(2, 5), v in word(2, 5)) {
        let n = 3;
        prop_assert_eq!(magnus(&u.compose(&v), 2, n), &magnus(&u, 2, n) * &magnus(&v, 2, n));
        prop_assert!((&magnus(&u, 2, n) * &magnus(&u.inverse(), 2, n)).terms().iter().all(|(w, c)| w.is_empty() && c.is_one()));
    }

    #[test]
    fn fox_fundamental_formula(w in word(3, 6)) {
        let n = 3;
        let mut rhs = TruncPoly::one(3, n);
        for i in 0..3 {
            rhs = &rhs + &(&fox_derivative(&w, i, 3, n).unwrap() * &TruncPoly::letter(3, n, i));
        }
        prop_assert_eq!(magnus(&w, 3, n), rhs);
    }

    #[test]
    fn relator_ideal_is_two_sided(p in poly(3, 3), q in poly(3, 3)) {
        let (ss, bp) = builtin_space("torus").unwrap();
        let gp = fundamental_presentation(&ss, bp);
        let ring = build_ring(&gp, 3).unwrap();
        for r in &gp.relators {
            let j = &ring.magnus(r) - &ring.one();
            let t = ring.mul(&ring.mul(&p, &j).unwrap(), &q).unwrap();
            prop_assert!(ring.is_zero(&t));
        }
        // canonical form is idempotent
        let c = ring.canonical(&p).unwrap();
        prop_assert_eq!(ring.canonical(&c).unwrap(), c.clone());
        prop_assert!(ring.equal(&c, &p));
    }

    #[test]
    fn coproduct_coassociative_and_counital(p in poly(2, 3)) {
        let d = coproduct(&p);
        prop_assert_eq!(d.coproduct_at(0), d.coproduct_at(1));
        let one_factor = MultiPoly::embed(&p, 0, 1, 3);
        prop_assert_eq!(d.counit_at(0), one_factor.clone());
        prop_assert_eq!(d.counit_at(1), one_factor);
    }

    #[test]
    fn coproduct_of_group_elements_is_grouplike(w in word(2, 5)) {
        let m = magnus(&w, 2, 3);
        let expected = &MultiPoly::embed(&m, 0, 2, 3) * &MultiPoly::embed(&m, 1, 2, 3);
        prop_assert_eq!(coproduct(&m), expected);
    }

    #[test]
    fn antipode_reverses_products(p in poly(2, 3), q in poly(2, 3), w in word(2, 4)) {
        let ring = TruncRing::new(2, vec![], 3);
        let lhs = ring.antipode(&ring.mul(&p, &q).unwrap());
        let rhs = ring.mul(&ring.antipode(&q), &ring.antipode(&p)).unwrap();
        prop_assert!(ring.equal(&lhs, &rhs));
        prop_assert!(ring.equal(&ring.antipode(&ring.magnus(&w)), &ring.magnus(&w.inverse())));
    }

    #[test]
    fn kappa_chains_are_relative_cycles(len in 0usize..4, pick in any::<u64>()) {
        let (ss, bp) = builtin_space("wedge(2)").unwrap();
        let cx = RelChainComplex::build(&ss, 2, Variant::Both, bp.a, bp.b, DEFAULT_CAP).unwrap();
        let paths: Vec<_> = forward_paths(&ss, bp.a, bp.b, len).into_iter().filter(|p| p.len() == len).collect();
        if !paths.is_empty() {
            let p = &paths[(pick % paths.len() as u64) as usize];
            prop_assert!(cx.boundary(2, &kappa_chain(&cx, p).unwrap()).is_empty());
        }
    }
}

#[test]
fn product_complexes_are_chain_complexes() {
    for name in ["circle", "wedge(2)", "torus", "sphere2", "interval_wedge(1)"] {
        let (ss, bp) = builtin_space(name).unwrap();
        for n in 1..=2 {
            for v in [Variant::Empty, Variant::Upper, Variant::Lower, Variant::Both] {
                let cx = RelChainComplex::build(&ss, n, v, bp.a, bp.b, DEFAULT_CAP).unwrap();
                assert!(cx.is_complex(), "{name} {n} {v:?}");
                assert!(cx.subspace().is_face_closed(cx.product()), "{name} {n} {v:?}");
                assert_eq!(cx.product().euler_characteristic(), ss.euler_characteristic().pow(n as u32));
            }
        }
    }
}

#[test]
fn space_files_round_trip() {
    for name in ["circle", "wedge(3)", "torus", "genus(2)", "sphere2", "interval_wedge(2)"] {
        let (ss, bp) = builtin_space(name).unwrap();
        let text = write_space_file(&ss, bp);
        let (back, bp2) = parse_space_file(&text).unwrap();
        assert_eq!(bp, bp2);
        assert_eq!(write_space_file(&back, bp2), text, "{name}");
    }
}

#[test]
fn oracle_matches_fox_model_on_builtins() {
    use truncpath_core::fox::homology_model;
    use truncpath_core::Error;
    for name in ["circle", "wedge(2)", "torus", "genus(2)", "sphere2", "interval_wedge(1)", "interval_wedge(2)"] {
        let (ss, bp) = builtin_space(name).unwrap();
        let mut variants = vec![(ss.clone(), bp)];
        if bp.is_loop() {
            variants.push(ss.with_whisker(bp.a));
        }
        for (ss, bp) in variants {
            let gp = fundamental_presentation(&ss, bp);
            for n in 1..=3 {
                let cx = match RelChainComplex::build(&ss, n, Variant::Both, bp.a, bp.b, DEFAULT_CAP) {
                    Err(Error::ResourceCap { .. }) => continue,
                    r => r.unwrap(),
                };
                let model = homology_model(&gp, n).unwrap();
                assert_eq!(&cx.homology(n), model.group().invariants(), "{} n={n}", ss.name());
            }
        }
    }
}
