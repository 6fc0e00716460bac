//! Checks that a complex is a compact surface with L a closed subcomplex of
//! its interior.

use std::collections::HashSet;
use std::fmt;

use serde::Serialize;

use super::complex::{sorted_edge, sorted_tri, Edge, SurfaceComplex, Tri};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    VertexOutOfRange { simplex: String, vertex: u32 },
    DegenerateTriangle { triangle: Tri },
    DuplicateTriangle { triangle: Tri },
    EdgeInTooManyTriangles { edge: Edge, count: usize },
    UnusedVertex { vertex: u32 },
    NonManifoldVertex { vertex: u32 },
    MarkedNotInSurface { simplex: String },
    MarkedNotClosed { simplex: String, face: String },
    MarkedMeetsBoundary { simplex: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::VertexOutOfRange { simplex, vertex } => write!(f, "{simplex} uses vertex {vertex} out of range"),
            Violation::DegenerateTriangle { triangle } => write!(f, "triangle {triangle:?} repeats a vertex"),
            Violation::DuplicateTriangle { triangle } => write!(f, "triangle {triangle:?} listed twice"),
            Violation::EdgeInTooManyTriangles { edge, count } => write!(f, "edge {edge:?} in {count} triangles"),
            Violation::UnusedVertex { vertex } => write!(f, "vertex {vertex} lies in no triangle"),
            Violation::NonManifoldVertex { vertex } => {
                write!(f, "link of vertex {vertex} is not a single path or cycle")
            }
            Violation::MarkedNotInSurface { simplex } => write!(f, "L {simplex} is not a simplex of S"),
            Violation::MarkedNotClosed { simplex, face } => write!(f, "L not closed: {simplex} is missing face {face}"),
            Violation::MarkedMeetsBoundary { simplex } => write!(f, "L meets boundary at {simplex}"),
        }
    }
}

/// All violations of the surface conditions, in a fixed order. Empty means
/// the complex is valid.
pub fn validate(s: &SurfaceComplex) -> Vec<Violation> {
    let mut out = Vec::new();
    let n = s.vertex_count() as u32;

    let mut range_ok = true;
    for t in s.triangles() {
        for &v in t {
            if v >= n {
                range_ok = false;
                out.push(Violation::VertexOutOfRange { simplex: format!("triangle {t:?}"), vertex: v });
            }
        }
    }
    let mut seen: HashSet<Tri> = HashSet::new();
    for t in s.triangles() {
        if t[0] == t[1] || t[1] == t[2] || t[0] == t[2] {
            out.push(Violation::DegenerateTriangle { triangle: *t });
        } else if !seen.insert(sorted_tri(*t)) {
            out.push(Violation::DuplicateTriangle { triangle: *t });
        }
    }
    for (i, e) in s.edges().iter().enumerate() {
        let count = s.edge_triangles(i as u32).len();
        if count > 2 && e[0] != e[1] {
            out.push(Violation::EdgeInTooManyTriangles { edge: *e, count });
        }
    }
    if range_ok {
        let stars = s.vertex_triangles();
        for v in 0..n {
            let star = &stars[v as usize];
            if star.is_empty() {
                out.push(Violation::UnusedVertex { vertex: v });
            } else if !link_is_path_or_cycle(s, v, star) {
                out.push(Violation::NonManifoldVertex { vertex: v });
            }
        }
    }

    check_marked(s, range_ok, &mut out);
    out
}

fn link_is_path_or_cycle(s: &SurfaceComplex, v: u32, star: &[u32]) -> bool {
    let mut adjacency: Vec<(u32, Vec<u32>)> = Vec::new();
    let slot = |x: u32, adjacency: &mut Vec<(u32, Vec<u32>)>| -> usize {
        match adjacency.iter().position(|(y, _)| *y == x) {
            Some(i) => i,
            None => {
                adjacency.push((x, Vec::new()));
                adjacency.len() - 1
            }
        }
    };
    for &t in star {
        let tri = s.triangles()[t as usize];
        let others: Vec<u32> = tri.iter().copied().filter(|&x| x != v).collect();
        if others.len() != 2 {
            return false;
        }
        let a = slot(others[0], &mut adjacency);
        let b = slot(others[1], &mut adjacency);
        adjacency[a].1.push(b as u32);
        adjacency[b].1.push(a as u32);
    }
    if adjacency.iter().any(|(_, nb)| nb.len() > 2) {
        return false;
    }
    let mut reached = vec![false; adjacency.len()];
    let mut stack = vec![0usize];
    reached[0] = true;
    while let Some(i) = stack.pop() {
        for &j in &adjacency[i].1 {
            if !reached[j as usize] {
                reached[j as usize] = true;
                stack.push(j as usize);
            }
        }
    }
    reached.iter().all(|&r| r)
}

fn check_marked(s: &SurfaceComplex, range_ok: bool, out: &mut Vec<Violation>) {
    let n = s.vertex_count() as u32;
    let m = s.marked();
    let l_vertices: HashSet<u32> = m.vertices.iter().copied().collect();
    let l_edges: HashSet<Edge> = m.edges.iter().copied().collect();
    let s_triangles: HashSet<Tri> = s.triangles().iter().map(|t| sorted_tri(*t)).collect();

    for &v in &m.vertices {
        if v >= n {
            out.push(Violation::MarkedNotInSurface { simplex: format!("vertex {v}") });
        }
    }
    for e in &m.edges {
        if s.edge_id(e[0], e[1]).is_none() || e[0] == e[1] {
            out.push(Violation::MarkedNotInSurface { simplex: format!("edge {e:?}") });
        }
        for &v in e {
            if !l_vertices.contains(&v) {
                out.push(Violation::MarkedNotClosed { simplex: format!("edge {e:?}"), face: format!("vertex {v}") });
            }
        }
    }
    for t in &m.triangles {
        if !s_triangles.contains(t) {
            out.push(Violation::MarkedNotInSurface { simplex: format!("triangle {t:?}") });
        }
        for e in [sorted_edge(t[0], t[1]), sorted_edge(t[1], t[2]), sorted_edge(t[0], t[2])] {
            if !l_edges.contains(&e) {
                out.push(Violation::MarkedNotClosed { simplex: format!("triangle {t:?}"), face: format!("edge {e:?}") });
            }
        }
    }
    if range_ok {
        let boundary = s.boundary_vertices();
        for &v in &m.vertices {
            if v < n && boundary[v as usize] {
                out.push(Violation::MarkedMeetsBoundary { simplex: format!("vertex {v}") });
            }
        }
    }
}
