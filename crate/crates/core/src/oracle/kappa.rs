use num_bigint::BigInt;

use super::chain::{Chain, RelChainComplex};
use super::product::{Component, ProdSimplex};
use crate::fox::HomologyModel;
use crate::lattice::{FgAbGroup, Lattice};
use crate::ring::{PathClass, TruncRing};
use crate::space::{edge_path_to_word, EdgeStep, GroupPresentation, SimplexId};
use crate::{Error, Result};

/// Relative `n`-chain carried by `γ^n` on the simplex `t_1 ≤ … ≤ t_n`, for an
/// edge path traversed forward.
///
/// The path is parametrized one edge per unit interval. A cell fixes which
/// edge each `t_i` lies on; inside a cell the cube is cut into the staircase
/// simplices compatible with the order of the `t_i` sharing an edge. Each
/// such simplex has coordinate `i` jumping at step `j_i`. Its sign is that of
/// `i ↦ j_i` relative to `i ↦ n + 1 - i`, so that `Δ^n` keeps its simplicial
/// orientation (vertex `k` has the last `k` coordinates at 1).
pub fn kappa_chain(cx: &RelChainComplex, path: &[EdgeStep]) -> Result<Chain> {
    let ss = cx.product().factor();
    let n = cx.product().power();
    let sub = cx.subspace();
    for (i, s) in path.iter().enumerate() {
        if s.edge >= ss.count(1) {
            return Err(Error::BrokenPath(i));
        }
        if !s.forward {
            return Err(Error::ReversedEdge(s.edge));
        }
    }
    for (i, w) in path.windows(2).enumerate() {
        if w[0].ends(ss).1 != w[1].ends(ss).0 {
            return Err(Error::BrokenPath(i + 1));
        }
    }
    let (start, end) = match (path.first(), path.last()) {
        (Some(f), Some(l)) => (f.ends(ss).0, l.ends(ss).1),
        _ => (sub.a, sub.a),
    };
    if start != sub.a || end != sub.b {
        return Err(Error::PathEndpoints { expected_start: sub.a, expected_end: sub.b, found_start: start, found_end: end });
    }
    let mut chain = Chain::new();
    if path.is_empty() {
        return Ok(chain);
    }
    let len = path.len();
    let mut cell = vec![0usize; n];
    loop {
        add_cell(cx, path, &cell, &mut chain)?;
        // next nondecreasing sequence
        let Some(i) = (0..n).rev().find(|&i| cell[i] + 1 < len) else { break };
        let v = cell[i] + 1;
        for c in &mut cell[i..] {
            *c = v;
        }
    }
    Ok(chain)
}

fn add_cell(cx: &RelChainComplex, path: &[EdgeStep], cell: &[usize], chain: &mut Chain) -> Result<()> {
    let n = cell.len();
    // block label of each coordinate, and the coordinates of each block in order
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for i in 0..n {
        if i == 0 || cell[i] != cell[i - 1] {
            blocks.push(Vec::new());
        }
        blocks.last_mut().unwrap().push(i);
    }
    let reversal = if (n * (n - 1) / 2).is_multiple_of(2) { 1 } else { -1 };
    let mut labels = Vec::with_capacity(n);
    let mut remaining: Vec<usize> = blocks.iter().map(Vec::len).collect();
    shuffles(&mut remaining, &mut labels, n, &mut |labels| {
        // positions given to a block go to its coordinates in decreasing order
        let mut jump = vec![0usize; n];
        let mut next: Vec<usize> = blocks.iter().map(Vec::len).collect();
        for (pos, &b) in labels.iter().enumerate() {
            next[b] -= 1;
            jump[blocks[b][next[b]]] = pos + 1;
        }
        let comps = (0..n)
            .map(|i| Component { base: SimplexId { dim: 1, index: path[cell[i]].edge }, jumps: 1 << jump[i] })
            .collect();
        let s = ProdSimplex { comps };
        let Some(idx) = cx.index_of(n, &s) else { return Ok(()) };
        let e = chain.entry(idx).or_insert_with(|| BigInt::from(0));
        *e += permutation_sign(&jump) * reversal;
        if *e == BigInt::from(0) {
            chain.remove(&idx);
        }
        Ok(())
    })
}

fn shuffles(
    remaining: &mut [usize],
    labels: &mut Vec<usize>,
    n: usize,
    f: &mut dyn FnMut(&[usize]) -> Result<()>,
) -> Result<()> {
    if labels.len() == n {
        return f(labels);
    }
    for b in 0..remaining.len() {
        if remaining[b] == 0 {
            continue;
        }
        remaining[b] -= 1;
        labels.push(b);
        shuffles(remaining, labels, n, f)?;
        labels.pop();
        remaining[b] += 1;
    }
    Ok(())
}

fn permutation_sign(p: &[usize]) -> i32 {
    let mut inversions = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// All forward edge paths from `a` to `b` with at most `max_len` edges,
/// shortest first.
pub fn forward_paths(ss: &crate::space::SimplicialSet, a: usize, b: usize, max_len: usize) -> Vec<Vec<EdgeStep>> {
    let mut out = Vec::new();
    let mut frontier: Vec<(usize, Vec<EdgeStep>)> = vec![(a, Vec::new())];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for (v, p) in &frontier {
            for e in 0..ss.count(1) {
                let (s, t) = ss.edge_ends(e);
                if s == *v {
                    let mut q = p.clone();
                    q.push(EdgeStep::fwd(e));
                    if t == b {
                        out.push(q.clone());
                    }
                    next.push((t, q));
                }
            }
        }
        frontier = next;
    }
    out
}

/// Whether the pairs `(x_j, y_j)` of canonical vectors of two free groups are
/// the graph of an isomorphism `x_j ↦ y_j`.
pub fn pairs_define_isomorphism(a: &FgAbGroup, b: &FgAbGroup, pairs: &[(Vec<BigInt>, Vec<BigInt>)]) -> bool {
    if !a.torsion().is_empty() || !b.torsion().is_empty() || a.rank() != b.rank() {
        return false;
    }
    let (da, db) = (a.canonical_dim(), b.canonical_dim());
    let joint = Lattice::from_generators(da + db, pairs.iter().map(|(x, y)| x.iter().chain(y).cloned().collect()));
    let left = joint.project_prefix(da);
    let right = Lattice::from_generators(db, pairs.iter().map(|(_, y)| y.clone()));
    joint.rank() == da && left == Lattice::full(da) && right == Lattice::full(db)
}

/// Oracle class against algebraic `κ_n` for every forward path from `a` to
/// `b` with at most `n + 1` edges: true when `κ_n(γ) ↦ [kappa_chain(γ)]` is a
/// well-defined isomorphism of the two models. Flipping every oracle class
/// also gives an isomorphism, so no global sign is singled out here.
pub fn compare_kappa(
    cx: &RelChainComplex,
    gp: &GroupPresentation,
    ring: &TruncRing,
    model: &HomologyModel,
) -> Result<bool> {
    let n = cx.product().power();
    let ss = cx.product().factor();
    let h = cx.homology_group(n)?;
    let mut pairs = Vec::new();
    for p in forward_paths(ss, gp.anchor, gp.target, n + 1) {
        let word = edge_path_to_word(ss, &p, gp)?;
        let alg = model.kappa(&PathClass::from_word(ring, gp, &word))?;
        let orc = cx.class_of(&h, n, &kappa_chain(cx, &p)?)?;
        pairs.push((alg, orc));
    }
    Ok(pairs_define_isomorphism(model.group(), &h, &pairs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fox::homology_model;
    use crate::oracle::{Variant, DEFAULT_CAP};
    use crate::ring::build_ring;
    use crate::space::{builtin_space, fundamental_presentation};

    fn complex(name: &str, n: usize) -> RelChainComplex {
        let (ss, bp) = builtin_space(name).unwrap();
        RelChainComplex::build(&ss, n, Variant::Both, bp.a, bp.b, DEFAULT_CAP).unwrap()
    }

    #[test]
    fn constant_path_is_zero() {
        let cx = complex("wedge(2)", 2);
        assert!(kappa_chain(&cx, &[]).unwrap().is_empty());
    }

    #[test]
    fn single_edge_degree_one() {
        let cx = complex("circle", 1);
        let c = kappa_chain(&cx, &[EdgeStep::fwd(0)]).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c.values().next().unwrap(), &BigInt::from(1));
    }

    #[test]
    fn loop_edge_degree_two_is_one_shuffle() {
        let cx = complex("circle", 2);
        let c = kappa_chain(&cx, &[EdgeStep::fwd(0)]).unwrap();
        assert_eq!(c.len(), 1);
        let (&i, v) = c.iter().next().unwrap();
        assert_eq!(v, &BigInt::from(1));
        // x_2 leaves the vertex first
        let s = cx.simplex(2, i);
        assert_eq!(s.comps[1].jumps, 1 << 1);
        assert_eq!(s.comps[0].jumps, 1 << 2);
    }

    #[test]
    fn chains_are_relative_cycles() {
        for (name, n) in [("wedge(2)", 2), ("wedge(2)", 3), ("torus", 2), ("interval_wedge(2)", 2)] {
            let cx = complex(name, n);
            let (ss, bp) = builtin_space(name).unwrap();
            for p in forward_paths(&ss, bp.a, bp.b, 3) {
                let c = kappa_chain(&cx, &p).unwrap();
                assert!(cx.boundary(n, &c).is_empty(), "{name} {n} {p:?}");
            }
        }
    }

    #[test]
    fn reversed_edges_rejected() {
        let cx = complex("circle", 1);
        assert!(matches!(kappa_chain(&cx, &[EdgeStep::back(0)]), Err(Error::ReversedEdge(0))));
    }

    #[test]
    fn agrees_with_algebra() {
        for (name, n) in [("wedge(2)", 1), ("wedge(2)", 2), ("interval_wedge(1)", 2)] {
            let (ss, bp) = builtin_space(name).unwrap();
            let gp = fundamental_presentation(&ss, bp);
            let ring = build_ring(&gp, n).unwrap();
            let model = homology_model(&gp, n).unwrap();
            let cx = complex(name, n);
            assert!(compare_kappa(&cx, &gp, &ring, &model).unwrap(), "{name} {n}");
        }
    }

    #[test]
    fn pairing_detects_inconsistency() {
        let z2 = FgAbGroup::from_moduli(&[BigInt::from(0), BigInt::from(0)]);
        let v = |a: i64, b: i64| vec![BigInt::from(a), BigInt::from(b)];
        let good = vec![(v(1, 0), v(0, 1)), (v(0, 1), v(1, 0)), (v(1, 1), v(1, 1))];
        assert!(pairs_define_isomorphism(&z2, &z2, &good));
        let bad = vec![(v(1, 0), v(0, 1)), (v(0, 1), v(1, 0)), (v(1, 1), v(1, 0))];
        assert!(!pairs_define_isomorphism(&z2, &z2, &bad));
        let index_two = vec![(v(1, 0), v(2, 0)), (v(0, 1), v(0, 1))];
        assert!(!pairs_define_isomorphism(&z2, &z2, &index_two));
    }
}
