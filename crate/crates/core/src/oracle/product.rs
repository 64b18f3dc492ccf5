use std::collections::HashMap;

use crate::space::{Face, SimplexId, SimplicialSet};
use crate::{Error, Result};

/// Default cap on the number of nondegenerate simplices of a product.
pub const DEFAULT_CAP: usize = 200_000;

/// A `k`-simplex of `X` as a nondegenerate simplex plus the set of steps
/// `j in 1..=k` at which its vertex index increases (bit `j` of `jumps`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Component {
    pub base: SimplexId,
    pub jumps: u64,
}

impl Component {
    pub fn from_face(f: &Face) -> Self {
        let mut jumps = 0u64;
        for j in 1..f.degeneracy.len() {
            if f.degeneracy[j] != f.degeneracy[j - 1] {
                jumps |= 1 << j;
            }
        }
        Component { base: f.base, jumps }
    }

    pub fn to_face(self, k: usize) -> Face {
        let mut degeneracy = Vec::with_capacity(k + 1);
        let mut v = 0;
        degeneracy.push(0);
        for j in 1..=k {
            if self.jumps & (1 << j) != 0 {
                v += 1;
            }
            degeneracy.push(v);
        }
        Face { base: self.base, degeneracy }
    }

    pub fn is_vertex(&self, v: usize) -> bool {
        self.base == SimplexId { dim: 0, index: v }
    }
}

/// A nondegenerate simplex of `X^n`; `comps[i]` is the coordinate `x_{i+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProdSimplex {
    pub comps: Vec<Component>,
}

/// The nondegenerate simplices of `X^n`, enumerated by dimension.
#[derive(Clone, Debug)]
pub struct ProductSS {
    factor: SimplicialSet,
    n: usize,
    by_dim: Vec<Vec<ProdSimplex>>,
    index: Vec<HashMap<ProdSimplex, usize>>,
}

fn full_mask(k: usize) -> u64 {
    if k == 0 {
        0
    } else {
        ((1u64 << (k + 1)) - 1) & !1
    }
}

/// All subsets of `1..=k` of size `d`, as bit masks.
fn masks(k: usize, d: usize) -> Vec<u64> {
    let mut out = Vec::new();
    fn rec(start: usize, k: usize, left: usize, acc: u64, out: &mut Vec<u64>) {
        if left == 0 {
            out.push(acc);
            return;
        }
        for j in start..=k {
            if k - j + 1 < left {
                break;
            }
            rec(j + 1, k, left - 1, acc | (1 << j), out);
        }
    }
    rec(1, k, d, 0, &mut out);
    out
}

impl ProductSS {
    pub fn new(ss: &SimplicialSet, n: usize, cap: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::BadDegree(0));
        }
        let top = ss.max_dim() * n;
        if top >= 63 {
            return Err(Error::ResourceCap { what: "product dimension".into(), cap: 62 });
        }
        let mut by_dim = Vec::with_capacity(top + 1);
        let mut total = 0usize;
        for k in 0..=top {
            let mut choices: Vec<Component> = Vec::new();
            for d in 0..=k.min(ss.max_dim()) {
                for index in 0..ss.count(d) {
                    for jumps in masks(k, d) {
                        choices.push(Component { base: SimplexId { dim: d, index }, jumps });
                    }
                }
            }
            let mut level = Vec::new();
            let full = full_mask(k);
            let mut stack: Vec<usize> = Vec::with_capacity(n);
            enumerate(&choices, n, full, &mut stack, 0, &mut |comps| {
                level.push(ProdSimplex { comps });
                total += 1;
                total <= cap
            });
            if total > cap {
                return Err(Error::ResourceCap { what: format!("simplices of X^{n}"), cap });
            }
            by_dim.push(level);
        }
        let index = by_dim
            .iter()
            .map(|l: &Vec<ProdSimplex>| l.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect())
            .collect();
        Ok(ProductSS { factor: ss.clone(), n, by_dim, index })
    }

    pub fn factor(&self) -> &SimplicialSet {
        &self.factor
    }

    pub fn power(&self) -> usize {
        self.n
    }

    pub fn max_dim(&self) -> usize {
        self.by_dim.len() - 1
    }

    pub fn simplices(&self, k: usize) -> &[ProdSimplex] {
        self.by_dim.get(k).map_or(&[], Vec::as_slice)
    }

    pub fn counts(&self) -> Vec<usize> {
        self.by_dim.iter().map(Vec::len).collect()
    }

    pub fn total(&self) -> usize {
        self.by_dim.iter().map(Vec::len).sum()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.by_dim.iter().enumerate().map(|(k, l)| if k % 2 == 0 { l.len() as i64 } else { -(l.len() as i64) }).sum()
    }

    pub fn index_of(&self, k: usize, s: &ProdSimplex) -> Option<usize> {
        self.index.get(k)?.get(s).copied()
    }

    /// `i`-th face of a `k`-simplex; `None` when the face is degenerate.
    pub fn face(&self, k: usize, s: &ProdSimplex, i: usize) -> Option<ProdSimplex> {
        let comps: Vec<Component> = s
            .comps
            .iter()
            .map(|c| Component::from_face(&self.factor.face_of(&c.to_face(k), i)))
            .collect();
        let union = comps.iter().fold(0u64, |acc, c| acc | c.jumps);
        (union == full_mask(k - 1)).then_some(ProdSimplex { comps })
    }
}

fn enumerate(
    choices: &[Component],
    n: usize,
    full: u64,
    stack: &mut Vec<usize>,
    union: u64,
    emit: &mut dyn FnMut(Vec<Component>) -> bool,
) -> bool {
    if stack.len() == n {
        if union == full {
            return emit(stack.iter().map(|&i| choices[i]).collect());
        }
        return true;
    }
    for i in 0..choices.len() {
        stack.push(i);
        let ok = enumerate(choices, n, full, stack, union | choices[i].jumps, emit);
        stack.pop();
        if !ok {
            return false;
        }
    }
    true
}

/// Which union of coordinate loci to use as the subspace of `X^n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    /// No subspace (absolute homology).
    Empty,
    /// `X(n)^a`: `x_1 = a` or some `x_i = x_{i+1}`.
    Upper,
    /// `X(n)_b`: some `x_i = x_{i+1}` or `x_n = b`.
    Lower,
    /// `X(n)^a_b`: all of the above.
    Both,
}

/// Membership in a union of loci, decided one locus at a time.
#[derive(Clone, Debug)]
pub struct SubSS {
    pub variant: Variant,
    pub a: usize,
    pub b: usize,
    members: Vec<Vec<bool>>,
}

impl SubSS {
    pub fn new(pss: &ProductSS, variant: Variant, a: usize, b: usize) -> Self {
        let mut sub = SubSS { variant, a, b, members: Vec::new() };
        sub.members = (0..=pss.max_dim()).map(|k| pss.simplices(k).iter().map(|s| sub.contains(s)).collect()).collect();
        sub
    }

    pub fn contains(&self, s: &ProdSimplex) -> bool {
        let n = s.comps.len();
        let diag = || s.comps.windows(2).any(|w| w[0] == w[1]);
        let first = || s.comps[0].is_vertex(self.a);
        let last = || s.comps[n - 1].is_vertex(self.b);
        match self.variant {
            Variant::Empty => false,
            Variant::Upper => first() || diag(),
            Variant::Lower => diag() || last(),
            Variant::Both => first() || diag() || last(),
        }
    }

    pub fn is_member(&self, k: usize, i: usize) -> bool {
        self.members[k][i]
    }

    pub fn counts(&self) -> Vec<usize> {
        self.members.iter().map(|l| l.iter().filter(|&&m| m).count()).collect()
    }

    /// Every face of a member is a member (or degenerate).
    pub fn is_face_closed(&self, pss: &ProductSS) -> bool {
        (1..=pss.max_dim()).all(|k| {
            pss.simplices(k).iter().enumerate().filter(|(i, _)| self.members[k][*i]).all(|(_, s)| {
                (0..=k).all(|f| match pss.face(k, s, f) {
                    None => true,
                    Some(t) => self.contains(&t),
                })
            })
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::builtin_space;

    #[test]
    fn circle_square_counts() {
        let (ss, _) = builtin_space("circle").unwrap();
        let p = ProductSS::new(&ss, 2, DEFAULT_CAP).unwrap();
        assert_eq!(p.counts(), vec![1, 3, 2]);
        assert_eq!(p.euler_characteristic(), 0);
    }

    #[test]
    fn first_power_is_the_space() {
        let (ss, _) = builtin_space("torus").unwrap();
        let p = ProductSS::new(&ss, 1, DEFAULT_CAP).unwrap();
        assert_eq!(p.counts(), ss.counts());
    }

    #[test]
    fn wedge_square_edges() {
        let (ss, _) = builtin_space("wedge(2)").unwrap();
        let p = ProductSS::new(&ss, 2, DEFAULT_CAP).unwrap();
        assert_eq!(p.counts()[1], 8);
    }

    #[test]
    fn euler_characteristic_is_multiplicative() {
        for name in ["torus", "sphere2", "wedge(2)", "interval_wedge(1)"] {
            let (ss, _) = builtin_space(name).unwrap();
            let chi = ss.euler_characteristic();
            for n in 1..=3 {
                let p = ProductSS::new(&ss, n, DEFAULT_CAP).unwrap();
                assert_eq!(p.euler_characteristic(), chi.pow(n as u32), "{name} {n}");
            }
        }
    }

    #[test]
    fn cap_is_enforced() {
        let (ss, _) = builtin_space("torus").unwrap();
        assert!(matches!(ProductSS::new(&ss, 3, 100), Err(Error::ResourceCap { .. })));
    }

    #[test]
    fn subspace_membership() {
        let (ss, _) = builtin_space("circle").unwrap();
        let p = ProductSS::new(&ss, 2, DEFAULT_CAP).unwrap();
        let upper = SubSS::new(&p, Variant::Upper, 0, 0);
        // the diagonal edge and the edge with x_1 = a; no triangles
        assert_eq!(upper.counts(), vec![1, 2, 0]);
        assert!(upper.is_face_closed(&p));
        let both = SubSS::new(&p, Variant::Both, 0, 0);
        assert_eq!(both.counts(), vec![1, 3, 0]);

        let (iw, bp) = builtin_space("interval_wedge(1)").unwrap();
        let p1 = ProductSS::new(&iw, 1, DEFAULT_CAP).unwrap();
        let s = SubSS::new(&p1, Variant::Both, bp.a, bp.b);
        assert_eq!(s.counts(), vec![2, 0]);
    }
}
