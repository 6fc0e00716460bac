//! Witnesses for trimming: isolated complement components and relative
//! curves with nonzero class in `H_1(C, dS; Z2)`.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::complement::Complement;
use super::complex::{SurfaceComplex, UnionFind};
use super::SurfaceError;

/// A vertex of a component of the complement that does not reach the
/// boundary, or `None` if every component reaches it.
///
/// The component with the lowest vertex is chosen; inside it, the lowest
/// vertex whose closed star avoids L, falling back to the lowest vertex.
pub fn find_isolated_component(c: &Complement) -> Option<u32> {
    let s = c.ambient();
    let (labels, count) = c.component_labels();
    let mut touches = vec![false; count];
    for v in 0..s.vertex_count() {
        if c.boundary_portion().vertices[v] {
            touches[labels[v] as usize] = true;
        }
    }
    let label = (0..s.vertex_count()).map(|v| labels[v]).find(|&l| l != u32::MAX && !touches[l as usize])?;
    let neighbours = s.vertex_neighbours();
    let members = (0..s.vertex_count() as u32).filter(|&v| labels[v as usize] == label);
    let mut first = None;
    for v in members {
        first.get_or_insert(v);
        if neighbours[v as usize].iter().all(|&w| c.contains_vertex(w)) {
            return Some(v);
        }
    }
    first
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CurveKind {
    /// A simple arc from boundary to boundary.
    BoundaryArc,
    /// A simple closed curve joined to the boundary by a tether. The walk
    /// runs out along the tether, once around the loop and back; the two
    /// passes along the tether are the two parallel copies of the arc that
    /// a strip along it would follow.
    DoubledClosedCurve,
}

/// An edge path in the ambient complex of a [`Complement`] whose relative
/// class is nonzero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RelativeCurve {
    pub kind: CurveKind,
    /// The walk, as a vertex sequence starting and ending on the boundary.
    pub vertices: Vec<u32>,
    /// Edges (ambient edge ids) of a relative cocycle taking the value 1 on
    /// this curve: a certificate that its class is nonzero.
    pub cocycle: Vec<u32>,
}

impl RelativeCurve {
    /// Ambient edge ids along the walk, in order.
    pub fn walk_edges(&self, s: &SurfaceComplex) -> Vec<u32> {
        self.vertices.windows(2).map(|w| s.edge_id(w[0], w[1]).expect("curve edge exists")).collect()
    }

    /// The GF(2) chain of the walk: edges traversed an odd number of times,
    /// ascending.
    pub fn chain(&self, s: &SurfaceComplex) -> Vec<u32> {
        let mut edges = self.walk_edges(s);
        edges.sort_unstable();
        let mut out: Vec<u32> = Vec::new();
        for e in edges {
            if out.last() == Some(&e) {
                out.pop();
            } else {
                out.push(e);
            }
        }
        out
    }

    /// Distinct edges of the walk, ascending. Cutting along these is the
    /// trimming move.
    pub fn support(&self, s: &SurfaceComplex) -> Vec<u32> {
        let mut edges = self.walk_edges(s);
        edges.sort_unstable();
        edges.dedup();
        edges
    }

    /// Value of the certificate cocycle on the curve's chain.
    pub fn pairing(&self, s: &SurfaceComplex) -> bool {
        let chain = self.chain(s);
        self.cocycle.iter().filter(|e| chain.binary_search(e).is_ok()).count() % 2 == 1
    }
}

/// Finds a curve with nonzero class in `H_1(C, dS; Z2)`.
///
/// A breadth-first forest is grown from all boundary vertices of `C` at
/// once, and a spanning forest of the dual graph (triangles of `C` plus one
/// outside node, joined across relative edges not in the primal forest) is
/// grown next. Each leftover edge closes a path through the primal forest
/// whose class is nonzero: the cycle it closes in the dual forest is a
/// cocycle taking the value 1 on it and 0 on every other leftover path.
///
/// The lowest leftover edge whose endpoints hang from different boundary
/// vertices gives an arc. If there is none, the lowest leftover edge gives a
/// loop, tethered to the boundary along the forest. Errors with `NoCurve`
/// when there is no leftover edge, which happens exactly when `r1 = 0`
/// (assuming `r0 = 0`).
pub fn find_relative_curve(c: &Complement) -> Result<RelativeCurve, SurfaceError> {
    let s = c.ambient();
    let nv = s.vertex_count();
    let ne = s.edges().len();
    let cells = c.cells();
    let bdry = c.boundary_portion();
    let relative_edge = |e: usize| cells.edges[e] && !bdry.edges[e];

    let mut adjacency: Vec<Vec<(u32, u32)>> = vec![Vec::new(); nv];
    for (i, e) in s.edges().iter().enumerate() {
        if relative_edge(i) {
            adjacency[e[0] as usize].push((e[1], i as u32));
            adjacency[e[1] as usize].push((e[0], i as u32));
        }
    }
    for list in &mut adjacency {
        list.sort_unstable();
    }

    // Primal forest from the boundary.
    let mut parent = vec![u32::MAX; nv];
    let mut parent_edge = vec![u32::MAX; nv];
    let mut root = vec![u32::MAX; nv];
    let mut depth = vec![0u32; nv];
    let mut in_tree = vec![false; ne];
    let mut queue = VecDeque::new();
    for v in 0..nv {
        if bdry.vertices[v] {
            root[v] = v as u32;
            queue.push_back(v as u32);
        }
    }
    while let Some(v) = queue.pop_front() {
        for &(w, e) in &adjacency[v as usize] {
            if root[w as usize] == u32::MAX {
                root[w as usize] = root[v as usize];
                parent[w as usize] = v;
                parent_edge[w as usize] = e;
                depth[w as usize] = depth[v as usize] + 1;
                in_tree[e as usize] = true;
                queue.push_back(w);
            }
        }
    }

    // Dual forest. Node t < nt is a triangle of C; node nt is the outside.
    let nt = s.triangles().len();
    let outside = nt as u32;
    let sides = |e: usize| -> Option<(u32, u32)> {
        let tris: Vec<u32> = s.edge_triangles(e as u32).iter().copied().filter(|&t| cells.triangles[t as usize]).collect();
        match tris.as_slice() {
            [a, b] => Some((*a, *b)),
            [a] => Some((*a, outside)),
            _ => None,
        }
    };
    let mut uf = UnionFind::new(nt + 1);
    let mut dual_adjacency: Vec<Vec<(u32, u32)>> = vec![Vec::new(); nt + 1];
    let mut leftover = Vec::new();
    for e in 0..ne {
        if !relative_edge(e) || in_tree[e] {
            continue;
        }
        match sides(e) {
            Some((a, b)) if uf.union(a as usize, b as usize) => {
                dual_adjacency[a as usize].push((b, e as u32));
                dual_adjacency[b as usize].push((a, e as u32));
            }
            _ => leftover.push(e as u32),
        }
    }

    let usable = |e: u32| {
        let [u, v] = s.edges()[e as usize];
        let (ru, rv) = (root[u as usize], root[v as usize]);
        ru != u32::MAX && rv != u32::MAX
    };
    let crossing = |e: u32| {
        let [u, v] = s.edges()[e as usize];
        root[u as usize] != root[v as usize]
    };
    let chosen = leftover
        .iter()
        .copied()
        .find(|&e| usable(e) && crossing(e))
        .or_else(|| leftover.iter().copied().find(|&e| usable(e)))
        .ok_or(SurfaceError::NoCurve)?;

    let path_to_root = |mut v: u32| -> Vec<u32> {
        let mut out = vec![v];
        while parent[v as usize] != u32::MAX {
            v = parent[v as usize];
            out.push(v);
        }
        out
    };
    let [u, v] = s.edges()[chosen as usize];
    let (kind, vertices) = if crossing(chosen) {
        let mut walk = path_to_root(u);
        walk.reverse();
        walk.extend(path_to_root(v));
        (CurveKind::BoundaryArc, walk)
    } else {
        let pu = path_to_root(u);
        let pv = path_to_root(v);
        // Strip the common tail to find where the two branches meet.
        let mut common = 0;
        while common < pu.len() && common < pv.len() && pu[pu.len() - 1 - common] == pv[pv.len() - 1 - common] {
            common += 1;
        }
        let meet = pu.len() - common;
        let tether: Vec<u32> = pu[meet..].iter().rev().copied().collect();
        let mut walk = tether.clone();
        walk.extend(pu[..meet].iter().rev());
        walk.extend(pv[..pv.len() - common].iter());
        walk.extend(tether.iter().rev());
        (CurveKind::DoubledClosedCurve, walk)
    };

    let (a, b) = sides(chosen as usize).unwrap_or((outside, outside));
    let mut cocycle = vec![chosen];
    cocycle.extend(dual_path(&dual_adjacency, a, b));
    cocycle.sort_unstable();
    Ok(RelativeCurve { kind, vertices, cocycle })
}

/// Edge labels along the unique path between two nodes of a forest.
fn dual_path(adjacency: &[Vec<(u32, u32)>], from: u32, to: u32) -> Vec<u32> {
    if from == to {
        return Vec::new();
    }
    let mut came_by: Vec<Option<(u32, u32)>> = vec![None; adjacency.len()];
    let mut seen = vec![false; adjacency.len()];
    let mut queue = VecDeque::from([from]);
    seen[from as usize] = true;
    while let Some(x) = queue.pop_front() {
        if x == to {
            break;
        }
        for &(y, e) in &adjacency[x as usize] {
            if !seen[y as usize] {
                seen[y as usize] = true;
                came_by[y as usize] = Some((x, e));
                queue.push_back(y);
            }
        }
    }
    let mut out = Vec::new();
    let mut x = to;
    while let Some((prev, e)) = came_by[x as usize] {
        out.push(e);
        x = prev;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::build::{self, Wrap};
    use crate::surface::complement::{complement_complex, Complement};
    use crate::surface::complex::Marked;

    #[test]
    fn isolated_component_of_sphere_minus_point() {
        let s = build::octahedron().with_marked(Marked::closure(&[0], &[], &[]));
        assert!(find_isolated_component(&complement_complex(&s)).is_some());
    }

    #[test]
    fn no_isolated_component_in_a_disk() {
        let s = build::grid(2, 2, Wrap::None, Wrap::None).with_marked(Marked::closure(&[4], &[], &[]));
        assert_eq!(find_isolated_component(&complement_complex(&s)), None);
    }

    #[test]
    fn annulus_with_marked_core_has_no_curve() {
        let s = build::grid(6, 2, Wrap::Periodic, Wrap::None);
        let core: Vec<u32> = (0..6).map(|i| build::grid_vertex(6, Wrap::Periodic, i, 1)).collect();
        let edges: Vec<[u32; 2]> = (0..6).map(|i| [core[i], core[(i + 1) % 6]]).collect();
        let s = s.with_marked(Marked::closure(&[], &edges, &[]));
        assert_eq!(find_relative_curve(&complement_complex(&s)), Err(SurfaceError::NoCurve));
    }

    #[test]
    fn annulus_has_a_crossing_arc() {
        let s = build::grid(4, 2, Wrap::Periodic, Wrap::None);
        let c = Complement::of_full(&s);
        let curve = find_relative_curve(&c).unwrap();
        assert_eq!(curve.kind, CurveKind::BoundaryArc);
        assert!(curve.pairing(&s));
        let boundary = s.boundary_vertices();
        assert!(boundary[curve.vertices[0] as usize]);
        assert!(boundary[*curve.vertices.last().unwrap() as usize]);
    }
}
