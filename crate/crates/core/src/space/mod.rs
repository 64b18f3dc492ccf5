//! Finite simplicial sets with marked basepoints.
//!
//! A simplex of dimension `k` is stored as a nondegenerate simplex `σ` plus a
//! monotone surjection `[k] -> [dim σ]` (the degeneracy). Faces of
//! nondegenerate simplices are stored the same way, which is enough to
//! evaluate any simplicial operator.

mod builtin;
mod file;
mod presentation;

use std::collections::VecDeque;
use std::fmt;

pub use builtin::{builtin_space, Builtin};
pub use file::{parse_space_file, write_space_file};
pub use presentation::{edge_path_to_word, fundamental_presentation, EdgeStep, Generator, GroupPresentation, Letter, Word};

/// Reference to a nondegenerate simplex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimplexId {
    pub dim: usize,
    pub index: usize,
}

/// A possibly degenerate simplex: `degeneracy[j]` is the vertex of `base`
/// hit by vertex `j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Face {
    pub base: SimplexId,
    pub degeneracy: Vec<usize>,
}

impl Face {
    pub fn nondegenerate(base: SimplexId) -> Self {
        Face { base, degeneracy: (0..=base.dim).collect() }
    }

    pub fn dim(&self) -> usize {
        self.degeneracy.len() - 1
    }

    pub fn is_degenerate(&self) -> bool {
        self.dim() != self.base.dim
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Simplex {
    pub name: String,
    /// `faces[i]` is the i-th face; empty for vertices.
    pub faces: Vec<Face>,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SimplicialSet {
    name: String,
    by_dim: Vec<Vec<Simplex>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Basepoints {
    pub a: usize,
    pub b: usize,
}

impl Basepoints {
    pub fn same(a: usize) -> Self {
        Basepoints { a, b: a }
    }

    pub fn is_loop(&self) -> bool {
        self.a == self.b
    }
}

/// First problem found by [`SimplicialSet::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    Empty,
    WrongFaceCount { simplex: String, expected: usize, found: usize },
    MissingFace { simplex: String, face: usize },
    BadDegeneracy { simplex: String, face: usize },
    SimplicialIdentity { simplex: String, i: usize, j: usize },
    Disconnected { vertex: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Empty => write!(f, "space has no vertices"),
            Violation::WrongFaceCount { simplex, expected, found } => {
                write!(f, "simplex `{simplex}` has {found} faces, expected {expected}")
            }
            Violation::MissingFace { simplex, face } => write!(f, "face {face} of `{simplex}` references a missing simplex"),
            Violation::BadDegeneracy { simplex, face } => {
                write!(f, "face {face} of `{simplex}` has an invalid degeneracy")
            }
            Violation::SimplicialIdentity { simplex, i, j } => {
                write!(f, "`{simplex}` violates d{i} d{j} = d{} d{i}", j - 1)
            }
            Violation::Disconnected { vertex } => write!(f, "vertex `{vertex}` is not connected to vertex 0"),
        }
    }
}

fn is_monotone_surjection(map: &[usize], target: usize) -> bool {
    !map.is_empty()
        && map[0] == 0
        && *map.last().unwrap() == target
        && map.windows(2).all(|w| w[1] == w[0] || w[1] == w[0] + 1)
}

impl SimplicialSet {
    pub fn new(name: impl Into<String>) -> Self {
        SimplicialSet { name: name.into(), by_dim: Vec::new() }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn set_name(&mut self, name: impl Into<String>) {
        self.name = name.into();
    }

    /// Appends a nondegenerate simplex of dimension `faces.len() - 1` (0 for no faces).
    pub fn push(&mut self, name: impl Into<String>, faces: Vec<Face>) -> SimplexId {
        let dim = faces.len().saturating_sub(1);
        if self.by_dim.len() <= dim {
            self.by_dim.resize_with(dim + 1, Vec::new);
        }
        self.by_dim[dim].push(Simplex { name: name.into(), faces });
        SimplexId { dim, index: self.by_dim[dim].len() - 1 }
    }

    pub fn max_dim(&self) -> usize {
        self.by_dim.len().saturating_sub(1)
    }

    pub fn count(&self, dim: usize) -> usize {
        self.by_dim.get(dim).map_or(0, Vec::len)
    }

    /// Nondegenerate simplex counts by dimension.
    pub fn counts(&self) -> Vec<usize> {
        self.by_dim.iter().map(Vec::len).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.by_dim.iter().enumerate().map(|(d, s)| if d % 2 == 0 { s.len() as i64 } else { -(s.len() as i64) }).sum()
    }

    pub fn simplex(&self, id: SimplexId) -> &Simplex {
        &self.by_dim[id.dim][id.index]
    }

    pub fn simplices(&self, dim: usize) -> &[Simplex] {
        self.by_dim.get(dim).map_or(&[], Vec::as_slice)
    }

    pub fn find(&self, name: &str) -> Option<SimplexId> {
        self.by_dim.iter().enumerate().find_map(|(dim, list)| {
            list.iter().position(|s| s.name == name).map(|index| SimplexId { dim, index })
        })
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.by_dim[0][v].name
    }

    /// Composite `base ∘ map` for a monotone `map : [k] -> [dim base]`, in normal form.
    pub fn apply(&self, base: SimplexId, map: &[usize]) -> Face {
        let mut base = base;
        let mut map = map.to_vec();
        loop {
            let d = base.dim;
            let mut hit = vec![false; d + 1];
            for &m in &map {
                hit[m] = true;
            }
            let Some(missing) = (0..=d).rev().find(|&m| !hit[m]) else {
                return Face { base, degeneracy: map };
            };
            // map = δ_missing ∘ reduced
            let reduced: Vec<usize> = map.iter().map(|&m| if m > missing { m - 1 } else { m }).collect();
            let face = &self.simplex(base).faces[missing];
            map = reduced.iter().map(|&m| face.degeneracy[m]).collect();
            base = face.base;
        }
    }

    /// `i`-th face of a possibly degenerate simplex.
    pub fn face_of(&self, s: &Face, i: usize) -> Face {
        let map: Vec<usize> = (0..s.dim()).map(|j| s.degeneracy[if j < i { j } else { j + 1 }]).collect();
        self.apply(s.base, &map)
    }

    /// Vertex `i` of a nondegenerate simplex.
    pub fn vertex(&self, s: SimplexId, i: usize) -> usize {
        self.apply(s, &[i]).base.index
    }

    /// `(source, target)` of an edge.
    pub fn edge_ends(&self, e: usize) -> (usize, usize) {
        let id = SimplexId { dim: 1, index: e };
        (self.vertex(id, 0), self.vertex(id, 1))
    }

    /// Checks face references, degeneracies, simplicial identities and connectivity.
    pub fn validate(&self) -> Result<(), Violation> {
        if self.count(0) == 0 {
            return Err(Violation::Empty);
        }
        for (dim, list) in self.by_dim.iter().enumerate() {
            for s in list {
                let expected = if dim == 0 { 0 } else { dim + 1 };
                if s.faces.len() != expected {
                    return Err(Violation::WrongFaceCount { simplex: s.name.clone(), expected, found: s.faces.len() });
                }
                for (i, f) in s.faces.iter().enumerate() {
                    if f.base.dim >= dim || f.base.index >= self.count(f.base.dim) {
                        return Err(Violation::MissingFace { simplex: s.name.clone(), face: i });
                    }
                    if f.degeneracy.len() != dim || !is_monotone_surjection(&f.degeneracy, f.base.dim) {
                        return Err(Violation::BadDegeneracy { simplex: s.name.clone(), face: i });
                    }
                }
            }
        }
        for (dim, list) in self.by_dim.iter().enumerate().skip(2) {
            for s in list {
                for j in 1..=dim {
                    for i in 0..j {
                        let lhs = self.face_of(&s.faces[j], i);
                        let rhs = self.face_of(&s.faces[i], j - 1);
                        if lhs != rhs {
                            return Err(Violation::SimplicialIdentity { simplex: s.name.clone(), i, j });
                        }
                    }
                }
            }
        }
        let n = self.count(0);
        let mut adj = vec![Vec::new(); n];
        for e in 0..self.count(1) {
            let (u, v) = self.edge_ends(e);
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        if let Some(v) = seen.iter().position(|s| !s) {
            return Err(Violation::Disconnected { vertex: self.by_dim[0][v].name.clone() });
        }
        Ok(())
    }

    /// Adds a vertex `b` and an edge from vertex `a` to it. The result is
    /// homotopy equivalent to the original and carries a distinguished edge.
    pub fn with_whisker(&self, a: usize) -> (SimplicialSet, Basepoints) {
        let mut out = self.clone();
        out.name = format!("{}+whisker", self.name);
        let mut bname = "b".to_string();
        while out.find(&bname).is_some() {
            bname.push('\'');
        }
        let mut ename = "e".to_string();
        while out.find(&ename).is_some() {
            ename.push('\'');
        }
        let b = out.push(bname, vec![]);
        out.push(
            ename,
            vec![Face::nondegenerate(b), Face::nondegenerate(SimplexId { dim: 0, index: a })],
        );
        (out, Basepoints { a, b: b.index })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vertex() -> Face {
        Face::nondegenerate(SimplexId { dim: 0, index: 0 })
    }

    #[test]
    fn circle_validates() {
        let mut ss = SimplicialSet::new("circle");
        ss.push("v", vec![]);
        ss.push("x", vec![vertex(), vertex()]);
        assert_eq!(ss.validate(), Ok(()));
    }

    #[test]
    fn missing_vertex_is_reported() {
        let mut ss = SimplicialSet::new("bad");
        ss.push("v", vec![]);
        ss.push("x", vec![vertex(), Face::nondegenerate(SimplexId { dim: 0, index: 3 })]);
        assert!(matches!(ss.validate(), Err(Violation::MissingFace { .. })));
    }

    #[test]
    fn disconnected_is_reported() {
        let mut ss = SimplicialSet::new("two points");
        ss.push("p", vec![]);
        ss.push("q", vec![]);
        assert_eq!(ss.validate(), Err(Violation::Disconnected { vertex: "q".into() }));
    }

    #[test]
    fn simplicial_identity_violation() {
        // triangle whose d0 and d2 edges disagree on the shared vertex
        let mut ss = SimplicialSet::new("broken");
        ss.push("p", vec![]);
        ss.push("q", vec![]);
        let p = Face::nondegenerate(SimplexId { dim: 0, index: 0 });
        let q = Face::nondegenerate(SimplexId { dim: 0, index: 1 });
        let e = ss.push("e", vec![q.clone(), p.clone()]); // p -> q
        let l = ss.push("l", vec![p.clone(), p.clone()]); // loop at p
        ss.push("t", vec![Face::nondegenerate(l), Face::nondegenerate(l), Face::nondegenerate(e)]);
        assert!(matches!(ss.validate(), Err(Violation::SimplicialIdentity { .. })));
    }

    #[test]
    fn degenerate_faces_compose() {
        // sphere: one 2-simplex with all faces collapsed to the vertex
        let mut ss = SimplicialSet::new("sphere");
        ss.push("v", vec![]);
        let deg = Face { base: SimplexId { dim: 0, index: 0 }, degeneracy: vec![0, 0] };
        ss.push("s", vec![deg.clone(), deg.clone(), deg]);
        assert_eq!(ss.validate(), Ok(()));
        let s = Face::nondegenerate(SimplexId { dim: 2, index: 0 });
        let f = ss.face_of(&s, 1);
        assert!(f.is_degenerate());
        assert_eq!(ss.face_of(&f, 0).base.dim, 0);
    }
}
