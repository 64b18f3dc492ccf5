//! TOML space files.
//!
//! ```toml
//! name = "circle"
//! basepoints = { a = "v", b = "v" }   # optional, defaults to the first vertex
//!
//! [[simplex]]
//! name = "v"
//!
//! [[simplex]]
//! name = "x"
//! faces = ["v", "v"]                  # d0, d1, ...
//! ```
//!
//! A face is a simplex name optionally preceded by degeneracy operators, as in
//! `"s0 v"` or `"s1 s0 v"`; operators apply right to left. The dimension of a
//! simplex is `faces.len() - 1`, or 0 without faces; an explicit `dim` is
//! checked against that.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::{Basepoints, Face, SimplexId, SimplicialSet};
use crate::{Error, Result};

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SpaceFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    basepoints: Option<BasepointNames>,
    #[serde(default)]
    simplex: Vec<Entry>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BasepointNames {
    a: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    b: Option<String>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Entry {
    name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    dim: Option<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    faces: Vec<String>,
}

/// Surjection `[k + r] -> [k]` for the operator word `s_{i1} ... s_{ir}`.
fn degeneracy_map(ops: &[usize], base_dim: usize) -> Option<Vec<usize>> {
    let top = base_dim + ops.len();
    let mut map: Vec<usize> = (0..=top).collect();
    let mut dim = top;
    // leftmost operator acts first on vertex indices
    for &i in ops {
        if i >= dim {
            return None;
        }
        for m in map.iter_mut() {
            if *m > i {
                *m -= 1;
            }
        }
        dim -= 1;
    }
    Some(map)
}

fn parse_face(text: &str, ids: &HashMap<&str, SimplexId>) -> Result<Face> {
    let mut tokens: Vec<&str> = text.split_whitespace().collect();
    let name = tokens.pop().ok_or_else(|| Error::Parse(format!("empty face `{text}`")))?;
    let base = *ids.get(name).ok_or_else(|| Error::Parse(format!("unknown simplex `{name}` in face `{text}`")))?;
    let mut ops = Vec::new();
    for t in tokens {
        let i = t
            .strip_prefix('s')
            .and_then(|d| d.parse::<usize>().ok())
            .ok_or_else(|| Error::Parse(format!("bad degeneracy `{t}` in face `{text}`")))?;
        ops.push(i);
    }
    let degeneracy =
        degeneracy_map(&ops, base.dim).ok_or_else(|| Error::Parse(format!("degeneracy out of range in `{text}`")))?;
    Ok(Face { base, degeneracy })
}

fn format_face(ss: &SimplicialSet, f: &Face) -> String {
    let mut out = String::new();
    for j in (0..f.dim()).rev() {
        if f.degeneracy[j] == f.degeneracy[j + 1] {
            out.push_str(&format!("s{j} "));
        }
    }
    out.push_str(&ss.simplex(f.base).name);
    out
}

/// Parses and validates a space file.
pub fn parse_space_file(text: &str) -> Result<(SimplicialSet, Basepoints)> {
    let file: SpaceFile = toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let mut ids: HashMap<&str, SimplexId> = HashMap::new();
    let mut per_dim: Vec<usize> = Vec::new();
    for e in &file.simplex {
        let dim = e.faces.len().saturating_sub(1);
        if e.faces.len() == 1 {
            return Err(Error::Parse(format!("`{}` has a single face", e.name)));
        }
        if let Some(d) = e.dim {
            if d != dim {
                return Err(Error::Parse(format!("`{}` declares dim {d} but has {} faces", e.name, e.faces.len())));
            }
        }
        if per_dim.len() <= dim {
            per_dim.resize(dim + 1, 0);
        }
        let id = SimplexId { dim, index: per_dim[dim] };
        per_dim[dim] += 1;
        if ids.insert(&e.name, id).is_some() {
            return Err(Error::Parse(format!("duplicate simplex `{}`", e.name)));
        }
    }
    let mut ss = SimplicialSet::new(file.name.clone().unwrap_or_else(|| "unnamed".into()));
    let mut by_dim: Vec<Vec<(&str, Vec<Face>)>> = vec![Vec::new(); per_dim.len()];
    for e in &file.simplex {
        let faces = e.faces.iter().map(|f| parse_face(f, &ids)).collect::<Result<Vec<_>>>()?;
        by_dim[ids[e.name.as_str()].dim].push((&e.name, faces));
    }
    for list in by_dim {
        for (name, faces) in list {
            ss.push(name, faces);
        }
    }
    ss.validate().map_err(|v| Error::InvalidSpace(v.to_string()))?;
    let vertex = |name: &str| -> Result<usize> {
        match ids.get(name) {
            Some(id) if id.dim == 0 => Ok(id.index),
            _ => Err(Error::Parse(format!("basepoint `{name}` is not a vertex"))),
        }
    };
    let bp = match &file.basepoints {
        None => Basepoints::same(0),
        Some(b) => {
            let a = vertex(&b.a)?;
            let bb = b.b.as_deref().map(vertex).transpose()?.unwrap_or(a);
            Basepoints { a, b: bb }
        }
    };
    Ok((ss, bp))
}

/// Inverse of [`parse_space_file`], simplices listed by dimension.
pub fn write_space_file(ss: &SimplicialSet, bp: Basepoints) -> String {
    let mut simplex = Vec::new();
    for d in 0..=ss.max_dim() {
        for s in ss.simplices(d) {
            simplex.push(Entry {
                name: s.name.clone(),
                dim: Some(d),
                faces: s.faces.iter().map(|f| format_face(ss, f)).collect(),
            });
        }
    }
    let file = SpaceFile {
        name: Some(ss.name().to_string()),
        basepoints: Some(BasepointNames {
            a: ss.vertex_name(bp.a).to_string(),
            b: (!bp.is_loop()).then(|| ss.vertex_name(bp.b).to_string()),
        }),
        simplex,
    };
    toml::to_string(&file).expect("space files serialize")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::builtin_space;

    #[test]
    fn round_trip_builtins() {
        for name in ["circle", "torus", "genus(2)", "sphere2", "interval_wedge(2)"] {
            let (ss, bp) = builtin_space(name).unwrap();
            let text = write_space_file(&ss, bp);
            let (back, bp2) = parse_space_file(&text).unwrap();
            assert_eq!(back, ss, "{name}");
            assert_eq!(bp2, bp);
        }
    }

    #[test]
    fn degeneracy_words() {
        assert_eq!(degeneracy_map(&[0], 0), Some(vec![0, 0]));
        assert_eq!(degeneracy_map(&[1, 0], 0), Some(vec![0, 0, 0]));
        assert_eq!(degeneracy_map(&[0], 1), Some(vec![0, 0, 1]));
        assert_eq!(degeneracy_map(&[1], 1), Some(vec![0, 1, 1]));
        assert_eq!(degeneracy_map(&[2], 0), None);
    }

    #[test]
    fn sphere_from_text() {
        let text = r#"
name = "s2"
[[simplex]]
name = "v"
[[simplex]]
name = "s"
faces = ["s0 v", "s0 v", "s0 v"]
"#;
        let (ss, bp) = parse_space_file(text).unwrap();
        assert_eq!(ss.counts(), vec![1, 0, 1]);
        assert_eq!(bp, Basepoints::same(0));
    }

    #[test]
    fn rejects_bad_input() {
        let missing = "[[simplex]]\nname = \"x\"\nfaces = [\"v\", \"v\"]\n";
        assert!(matches!(parse_space_file(missing), Err(Error::Parse(_))));
        let dup = "[[simplex]]\nname = \"v\"\n[[simplex]]\nname = \"v\"\n";
        assert!(parse_space_file(dup).is_err());
        let disconnected = "[[simplex]]\nname = \"p\"\n[[simplex]]\nname = \"q\"\n";
        assert!(matches!(parse_space_file(disconnected), Err(Error::InvalidSpace(_))));
    }
}
