use std::collections::VecDeque;
use std::fmt;

use num_bigint::BigInt;

use super::{Basepoints, Face, SimplexId, SimplicialSet};
use crate::lattice::{FgAbGroup, IntMatrix};
use crate::{Error, Result};

/// A generator or its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub gen: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(gen: usize) -> Self {
        Letter { gen, inverse: false }
    }

    pub fn inv(self) -> Self {
        Letter { gen: self.gen, inverse: !self.inverse }
    }
}

/// Word in the generators, composed right to left: in `w = l_1 l_2 ... l_k`
/// the letter `l_k` is traversed first.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn generator(gen: usize) -> Self {
        Word(vec![Letter::new(gen)])
    }

    pub fn from_signed(letters: &[i64]) -> Self {
        Word(
            letters
                .iter()
                .map(|&s| {
                    assert_ne!(s, 0, "signed generator indices start at 1");
                    Letter { gen: s.unsigned_abs() as usize - 1, inverse: s < 0 }
                })
                .collect(),
        )
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inv()).collect())
    }

    /// `self · other`: `other` is traversed first.
    pub fn compose(&self, other: &Word) -> Word {
        let mut w = self.0.clone();
        w.extend_from_slice(&other.0);
        Word(w).reduced()
    }

    pub fn reduced(&self) -> Word {
        let mut out: Vec<Letter> = Vec::with_capacity(self.0.len());
        for &l in &self.0 {
            if out.last() == Some(&l.inv()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    pub fn exponent_sums(&self, gens: usize) -> Vec<i64> {
        let mut v = vec![0i64; gens];
        for l in &self.0 {
            v[l.gen] += if l.inverse { -1 } else { 1 };
        }
        v
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.0.iter().map(|l| l.gen).max()
    }

    pub fn display_with<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        WordDisplay { word: self, names }
    }
}

struct WordDisplay<'a> {
    word: &'a Word,
    names: &'a [String],
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return write!(f, "1");
        }
        for (i, l) in self.word.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            match self.names.get(l.gen) {
                Some(n) => write!(f, "{n}")?,
                None => write!(f, "g{}", l.gen)?,
            }
            if l.inverse {
                write!(f, "^-1")?;
            }
        }
        Ok(())
    }
}

/// One step of an edge path: the edge and whether it is traversed source to target.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct EdgeStep {
    pub edge: usize,
    pub forward: bool,
}

impl EdgeStep {
    pub fn fwd(edge: usize) -> Self {
        EdgeStep { edge, forward: true }
    }

    pub fn back(edge: usize) -> Self {
        EdgeStep { edge, forward: false }
    }

    pub fn ends(&self, ss: &SimplicialSet) -> (usize, usize) {
        let (u, v) = ss.edge_ends(self.edge);
        if self.forward {
            (u, v)
        } else {
            (v, u)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub edge: usize,
    pub name: String,
}

/// Presentation of the fundamental group at `anchor`. A non-tree edge
/// `u -> v` gives the generator `t_v^-1 e t_u` with `t` the tree paths from
/// the anchor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupPresentation {
    pub generators: Vec<Generator>,
    pub relators: Vec<Word>,
    pub tree: Vec<usize>,
    pub anchor: usize,
    pub target: usize,
    /// Tree path from `anchor` to `target`, in traversal order.
    pub refpath: Vec<EdgeStep>,
    edge_generator: Vec<Option<usize>>,
}

impl GroupPresentation {
    /// Presentation not tied to a space; it is read as the wedge of circles
    /// with one 2-cell per relator, so generator `i` is edge `i`.
    pub fn from_relators(names: Vec<String>, relators: Vec<Word>) -> Self {
        let g = names.len();
        for r in &relators {
            assert!(r.max_generator().is_none_or(|m| m < g), "relator uses an unknown generator");
        }
        GroupPresentation {
            generators: names.into_iter().enumerate().map(|(edge, name)| Generator { edge, name }).collect(),
            relators,
            tree: Vec::new(),
            anchor: 0,
            target: 0,
            refpath: Vec::new(),
            edge_generator: (0..g).map(Some).collect(),
        }
    }

    /// Presentation of the square of the group: primed generators first,
    /// then double-primed ones, with both relator sets and all commutators
    /// `x'_i x''_j x'_i^-1 x''_j^-1`.
    pub fn product_square(&self) -> Self {
        let g = self.generator_count();
        let mut names: Vec<String> = self.generators.iter().map(|x| format!("{}'", x.name)).collect();
        names.extend(self.generators.iter().map(|x| format!("{}''", x.name)));
        let shift = |w: &Word, by: usize| Word(w.0.iter().map(|l| Letter { gen: l.gen + by, inverse: l.inverse }).collect());
        let mut relators: Vec<Word> = self.relators.iter().map(|r| shift(r, 0)).collect();
        relators.extend(self.relators.iter().map(|r| shift(r, g)));
        for i in 0..g {
            for j in 0..g {
                let (a, b) = (Letter::new(i), Letter::new(g + j));
                relators.push(Word(vec![a, b, a.inv(), b.inv()]));
            }
        }
        Self::from_relators(names, relators)
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    pub fn generator_names(&self) -> Vec<String> {
        self.generators.iter().map(|g| g.name.clone()).collect()
    }

    pub fn generator_of_edge(&self, edge: usize) -> Option<usize> {
        self.edge_generator.get(edge).copied().flatten()
    }

    pub fn is_tree_edge(&self, edge: usize) -> bool {
        self.tree.contains(&edge)
    }

    /// The edge joining the endpoints when the reference path is a single
    /// forward edge.
    pub fn distinguished_edge(&self) -> Option<usize> {
        match self.refpath.as_slice() {
            [s] if s.forward => Some(s.edge),
            _ => None,
        }
    }

    /// Relator exponent sums, one row per relator.
    pub fn exponent_matrix(&self) -> IntMatrix {
        let g = self.generators.len();
        let rows = self.relators.iter().map(|r| r.exponent_sums(g).into_iter().map(BigInt::from).collect()).collect();
        IntMatrix::from_rows(g, rows)
    }

    pub fn abelianization(&self) -> FgAbGroup {
        let g = self.generators.len();
        FgAbGroup::cokernel(&self.exponent_matrix().transpose(), g).expect("exponent matrix has the right shape")
    }
}

fn edge_letter(face: &Face, edge_generator: &[Option<usize>]) -> Option<Letter> {
    if face.is_degenerate() {
        return None;
    }
    edge_generator[face.base.index].map(Letter::new)
}

/// Breadth-first spanning tree from `bp.a` (lowest edge id first), one
/// generator per remaining edge and one relator per 2-simplex.
pub fn fundamental_presentation(ss: &SimplicialSet, bp: Basepoints) -> GroupPresentation {
    let nv = ss.count(0);
    let ne = ss.count(1);
    let ends: Vec<(usize, usize)> = (0..ne).map(|e| ss.edge_ends(e)).collect();
    let mut incident = vec![Vec::new(); nv];
    for (e, &(u, v)) in ends.iter().enumerate() {
        incident[u].push(e);
        if v != u {
            incident[v].push(e);
        }
    }
    let mut parent: Vec<Option<EdgeStep>> = vec![None; nv];
    let mut seen = vec![false; nv];
    let mut tree = Vec::new();
    seen[bp.a] = true;
    let mut queue = VecDeque::from([bp.a]);
    while let Some(u) = queue.pop_front() {
        for &e in &incident[u] {
            let (s, t) = ends[e];
            let (other, step) = if s == u { (t, EdgeStep::fwd(e)) } else { (s, EdgeStep::back(e)) };
            if !seen[other] {
                seen[other] = true;
                parent[other] = Some(step);
                tree.push(e);
                queue.push_back(other);
            }
        }
    }
    tree.sort_unstable();
    let mut edge_generator = vec![None; ne];
    let mut generators = Vec::new();
    for (e, slot) in edge_generator.iter_mut().enumerate() {
        if tree.binary_search(&e).is_err() {
            *slot = Some(generators.len());
            generators.push(Generator { edge: e, name: ss.simplex(SimplexId { dim: 1, index: e }).name.clone() });
        }
    }
    let mut relators = Vec::new();
    for t in ss.simplices(2) {
        let letter = |i: usize| edge_letter(&t.faces[i], &edge_generator);
        let mut w = Vec::new();
        if let Some(l) = letter(1) {
            w.push(l.inv());
        }
        w.extend(letter(0));
        w.extend(letter(2));
        relators.push(Word(w).reduced());
    }
    let mut refpath = Vec::new();
    let mut v = bp.b;
    while let Some(step) = parent[v] {
        refpath.push(step);
        v = step.ends(ss).0;
    }
    refpath.reverse();
    GroupPresentation { generators, relators, tree, anchor: bp.a, target: bp.b, refpath, edge_generator }
}

/// Word `w` with `path = refpath · w`. Steps are in traversal order.
pub fn edge_path_to_word(ss: &SimplicialSet, path: &[EdgeStep], gp: &GroupPresentation) -> Result<Word> {
    for (i, step) in path.iter().enumerate() {
        if step.edge >= ss.count(1) {
            return Err(Error::BrokenPath(i));
        }
    }
    for (i, pair) in path.windows(2).enumerate() {
        if pair[0].ends(ss).1 != pair[1].ends(ss).0 {
            return Err(Error::NonConsecutive(i, i + 1));
        }
    }
    let (start, end) = match (path.first(), path.last()) {
        (Some(f), Some(l)) => (f.ends(ss).0, l.ends(ss).1),
        _ => (gp.anchor, gp.anchor),
    };
    if start != gp.anchor || end != gp.target {
        return Err(Error::PathEndpoints {
            expected_start: gp.anchor,
            expected_end: gp.target,
            found_start: start,
            found_end: end,
        });
    }
    let letters = path
        .iter()
        .rev()
        .filter_map(|s| gp.generator_of_edge(s.edge).map(|g| if s.forward { Letter::new(g) } else { Letter::new(g).inv() }))
        .collect();
    Ok(Word(letters).reduced())
}
