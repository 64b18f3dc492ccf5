use std::fmt;
use std::str::FromStr;

use super::{Basepoints, Face, SimplexId, SimplicialSet};
use crate::{Error, Result};

/// Named models shipped with the library.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Builtin {
    /// One vertex, one edge.
    Circle,
    /// One vertex, `g` edges.
    Wedge(usize),
    /// Same as `Genus(1)`: one vertex, 3 edges, 2 triangles.
    Torus,
    /// Fan triangulation of the `4h`-gon: one vertex, `6h - 3` edges, `4h - 2` triangles.
    Genus(usize),
    /// One vertex and one 2-simplex with all faces degenerate.
    Sphere2,
    /// `Wedge(g)` plus a vertex `b` joined to the wedge point by an edge `e`.
    IntervalWedge(usize),
}

impl Builtin {
    pub const NAMES: &'static [&'static str] =
        &["circle", "wedge(g)", "torus", "genus(h)", "sphere2", "interval_wedge(g)"];

    pub fn build(self) -> (SimplicialSet, Basepoints) {
        let (mut ss, bp) = match self {
            Builtin::Circle => {
                let mut ss = wedge(1);
                ss.set_name("circle");
                (ss, Basepoints::same(0))
            }
            Builtin::Wedge(g) => (wedge(g), Basepoints::same(0)),
            Builtin::Torus => {
                let mut ss = genus(1);
                ss.set_name("torus");
                (ss, Basepoints::same(0))
            }
            Builtin::Genus(h) => (genus(h), Basepoints::same(0)),
            Builtin::Sphere2 => (sphere2(), Basepoints::same(0)),
            Builtin::IntervalWedge(g) => wedge(g).with_whisker(0),
        };
        ss.set_name(self.to_string());
        (ss, bp)
    }
}

impl fmt::Display for Builtin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Builtin::Circle => write!(f, "circle"),
            Builtin::Wedge(g) => write!(f, "wedge({g})"),
            Builtin::Torus => write!(f, "torus"),
            Builtin::Genus(h) => write!(f, "genus({h})"),
            Builtin::Sphere2 => write!(f, "sphere2"),
            Builtin::IntervalWedge(g) => write!(f, "interval_wedge({g})"),
        }
    }
}

impl FromStr for Builtin {
    type Err = Error;

    /// Accepts `wedge(2)` as well as `wedge2` and `wedge:2`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let split = s.find(|c: char| c.is_ascii_digit() || c == '(' || c == ':').unwrap_or(s.len());
        let (head, tail) = s.split_at(split);
        let param = tail.trim_start_matches([':', '(']).trim_end_matches(')');
        let unknown = || Error::UnknownSpace(s.to_string());
        let number = || -> Result<usize> { param.parse().map_err(|_| unknown()) };
        match head {
            "circle" if param.is_empty() => Ok(Builtin::Circle),
            "torus" if param.is_empty() => Ok(Builtin::Torus),
            "sphere" if param == "2" => Ok(Builtin::Sphere2),
            "wedge" => Ok(Builtin::Wedge(number()?)),
            "genus" => match number()? {
                0 => Err(unknown()),
                h => Ok(Builtin::Genus(h)),
            },
            "interval_wedge" => Ok(Builtin::IntervalWedge(number()?)),
            _ => Err(unknown()),
        }
    }
}

pub fn builtin_space(name: &str) -> Result<(SimplicialSet, Basepoints)> {
    Ok(name.parse::<Builtin>()?.build())
}

const V: SimplexId = SimplexId { dim: 0, index: 0 };

fn wedge(g: usize) -> SimplicialSet {
    let mut ss = SimplicialSet::new(format!("wedge({g})"));
    ss.push("v", vec![]);
    for i in 1..=g {
        let name = if g == 1 { "x".to_string() } else { format!("x{i}") };
        ss.push(name, vec![Face::nondegenerate(V), Face::nondegenerate(V)]);
    }
    ss
}

fn sphere2() -> SimplicialSet {
    let mut ss = SimplicialSet::new("sphere2");
    ss.push("v", vec![]);
    let deg = Face { base: V, degeneracy: vec![0, 0] };
    ss.push("s", vec![deg.clone(), deg.clone(), deg]);
    ss
}

// Polygon with corners P_0..P_{4h-1}; side k runs P_k -> P_{k+1} and reads
// a_i b_i a_i^-1 b_i^-1 blockwise. Triangle k is (P_0, P_k, P_{k+1}).
fn genus(h: usize) -> SimplicialSet {
    let mut ss = SimplicialSet::new(format!("genus({h})"));
    ss.push("v", vec![]);
    let edge = |ss: &mut SimplicialSet, name: String| {
        ss.push(name, vec![Face::nondegenerate(V), Face::nondegenerate(V)]).index
    };
    let mut a = Vec::new();
    let mut b = Vec::new();
    for i in 1..=h {
        a.push(edge(&mut ss, format!("a{i}")));
        b.push(edge(&mut ss, format!("b{i}")));
    }
    let sides = 4 * h;
    // diag[k] = edge P_0 -> P_k
    let mut diag = vec![usize::MAX; sides];
    diag[1] = a[0];
    diag[sides - 1] = b[h - 1];
    for (k, d) in diag.iter_mut().enumerate().take(sides - 1).skip(2) {
        *d = edge(&mut ss, format!("c{k}"));
    }
    let e = |index: usize| Face::nondegenerate(SimplexId { dim: 1, index });
    for k in 1..sides - 1 {
        let block = k / 4;
        let side = match k % 4 {
            0 => (a[block], true),
            1 => (b[block], true),
            2 => (a[block], false),
            _ => (b[block], false),
        };
        let name = format!("t{k}");
        if side.1 {
            // ordered (P_0, P_k, P_{k+1})
            ss.push(name, vec![e(side.0), e(diag[k + 1]), e(diag[k])]);
        } else {
            // ordered (P_0, P_{k+1}, P_k)
            ss.push(name, vec![e(side.0), e(diag[k]), e(diag[k + 1])]);
        }
    }
    ss
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        let cases = [
            ("circle", vec![1, 1]),
            ("wedge(2)", vec![1, 2]),
            ("torus", vec![1, 3, 2]),
            ("genus(2)", vec![1, 9, 6]),
            ("sphere2", vec![1, 0, 1]),
            ("interval_wedge(1)", vec![2, 2]),
        ];
        for (name, expected) in cases {
            let (ss, _) = builtin_space(name).unwrap();
            assert_eq!(ss.counts(), expected, "{name}");
            assert_eq!(ss.validate(), Ok(()), "{name}");
        }
    }

    #[test]
    fn euler_characteristics() {
        assert_eq!(builtin_space("torus").unwrap().0.euler_characteristic(), 0);
        assert_eq!(builtin_space("genus(3)").unwrap().0.euler_characteristic(), -4);
        assert_eq!(builtin_space("sphere2").unwrap().0.euler_characteristic(), 2);
    }

    #[test]
    fn interval_wedge_edge() {
        let (ss, bp) = builtin_space("interval_wedge(1)").unwrap();
        assert_ne!(bp.a, bp.b);
        let e = ss.find("e").unwrap();
        assert_eq!(ss.edge_ends(e.index), (bp.a, bp.b));
    }

    #[test]
    fn name_forms() {
        assert_eq!("wedge2".parse::<Builtin>().unwrap(), Builtin::Wedge(2));
        assert_eq!("genus:3".parse::<Builtin>().unwrap(), Builtin::Genus(3));
        assert!("klein".parse::<Builtin>().is_err());
        assert!("genus(0)".parse::<Builtin>().is_err());
    }
}
