//! GF(2) homology ranks of simplicial pairs inside a surface complex.

use std::collections::VecDeque;

use crate::homology::SparseColumns;

use super::complex::SurfaceComplex;

/// A subcomplex, given by membership flags per vertex, edge and triangle of
/// the ambient complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cells {
    pub vertices: Vec<bool>,
    pub edges: Vec<bool>,
    pub triangles: Vec<bool>,
}

impl Cells {
    pub fn all(s: &SurfaceComplex) -> Self {
        Cells {
            vertices: vec![true; s.vertex_count()],
            edges: vec![true; s.edges().len()],
            triangles: vec![true; s.triangles().len()],
        }
    }

    pub fn none(s: &SurfaceComplex) -> Self {
        Cells {
            vertices: vec![false; s.vertex_count()],
            edges: vec![false; s.edges().len()],
            triangles: vec![false; s.triangles().len()],
        }
    }

    /// The full subcomplex spanned by the flagged vertices.
    pub fn spanned_by(s: &SurfaceComplex, vertices: Vec<bool>) -> Self {
        let on = |v: &u32| vertices[*v as usize];
        let edges = s.edges().iter().map(|e| e.iter().all(on)).collect();
        let triangles = s.triangles().iter().map(|t| t.iter().all(on)).collect();
        Cells { vertices, edges, triangles }
    }

    /// The subcomplex L of `s`.
    pub fn marked(s: &SurfaceComplex) -> Self {
        let m = s.marked();
        let mut c = Cells::none(s);
        for &v in &m.vertices {
            c.vertices[v as usize] = true;
        }
        for e in &m.edges {
            if let Some(id) = s.edge_id(e[0], e[1]) {
                c.edges[id as usize] = true;
            }
        }
        let index: std::collections::HashMap<[u32; 3], usize> =
            s.triangles().iter().enumerate().map(|(i, t)| (super::complex::sorted_tri(*t), i)).collect();
        for t in &m.triangles {
            if let Some(&i) = index.get(t) {
                c.triangles[i] = true;
            }
        }
        c
    }

    /// The boundary curves of `s`: edges in exactly one triangle and their
    /// vertices.
    pub fn boundary(s: &SurfaceComplex) -> Self {
        let edges: Vec<bool> = (0..s.edges().len() as u32).map(|e| s.is_boundary_edge(e)).collect();
        Cells { vertices: s.boundary_vertices(), edges, triangles: vec![false; s.triangles().len()] }
    }

    pub fn intersect(&self, other: &Cells) -> Cells {
        let and = |a: &[bool], b: &[bool]| a.iter().zip(b).map(|(x, y)| *x && *y).collect();
        Cells {
            vertices: and(&self.vertices, &other.vertices),
            edges: and(&self.edges, &other.edges),
            triangles: and(&self.triangles, &other.triangles),
        }
    }
}

/// Ranks of `H_0, H_1, H_2` of the pair `(x, a)` over GF(2), where `a` is a
/// subcomplex of `x` and both live in `s`.
///
/// Both boundary matrices are reduced by sparse column reduction. Rows and
/// columns are ordered along spanning forests so that forest columns find
/// their pivots without any elimination.
pub fn pair_ranks(s: &SurfaceComplex, x: &Cells, a: &Cells) -> [usize; 3] {
    let rel_v: Vec<bool> = x.vertices.iter().zip(&a.vertices).map(|(p, q)| *p && !*q).collect();
    let rel_e: Vec<bool> = x.edges.iter().zip(&a.edges).map(|(p, q)| *p && !*q).collect();
    let rel_t: Vec<bool> = x.triangles.iter().zip(&a.triangles).map(|(p, q)| *p && !*q).collect();
    let nv = rel_v.iter().filter(|&&b| b).count();
    let ne = rel_e.iter().filter(|&&b| b).count();
    let nt = rel_t.iter().filter(|&&b| b).count();
    let rank1 = rank_d1(s, x, a, &rel_v, &rel_e);
    let rank2 = rank_d2(s, &rel_e, &rel_t);
    [nv - rank1, ne - rank1 - rank2, nt - rank2]
}

fn rank_d1(s: &SurfaceComplex, x: &Cells, a: &Cells, rel_v: &[bool], rel_e: &[bool]) -> usize {
    let n = s.vertex_count();
    let mut adjacency: Vec<Vec<(u32, u32)>> = vec![Vec::new(); n];
    for (i, e) in s.edges().iter().enumerate() {
        if x.edges[i] {
            adjacency[e[0] as usize].push((e[1], i as u32));
            adjacency[e[1] as usize].push((e[0], i as u32));
        }
    }
    // Row order: breadth-first from all vertices of `a` at once, then from
    // any vertex not yet reached.
    let mut row = vec![u32::MAX; n];
    let mut next_row = 0u32;
    let mut visited = vec![false; n];
    let mut columns: Vec<u32> = Vec::new();
    let mut used_edge = vec![false; s.edges().len()];
    let mut queue = VecDeque::new();
    for v in 0..n {
        if x.vertices[v] && a.vertices[v] {
            visited[v] = true;
            queue.push_back(v);
        }
    }
    bfs(&adjacency, &mut queue, &mut visited, &mut row, &mut next_row, rel_v, &mut columns, &mut used_edge);
    for start in 0..n {
        if !x.vertices[start] || visited[start] {
            continue;
        }
        visited[start] = true;
        row[start] = next_row;
        next_row += 1;
        queue.push_back(start);
        bfs(&adjacency, &mut queue, &mut visited, &mut row, &mut next_row, rel_v, &mut columns, &mut used_edge);
    }
    columns.extend((0..s.edges().len() as u32).filter(|&e| rel_e[e as usize] && !used_edge[e as usize]));

    let mut m = SparseColumns::new(next_row as usize);
    for e in columns {
        if !rel_e[e as usize] {
            continue;
        }
        let support = s.edges()[e as usize].iter().filter(|&&v| rel_v[v as usize]).map(|&v| row[v as usize]).collect();
        m.push(support);
    }
    m.reduce().rank()
}

#[allow(clippy::too_many_arguments)]
fn bfs(
    adjacency: &[Vec<(u32, u32)>],
    queue: &mut VecDeque<usize>,
    visited: &mut [bool],
    row: &mut [u32],
    next_row: &mut u32,
    rel_v: &[bool],
    columns: &mut Vec<u32>,
    used_edge: &mut [bool],
) {
    while let Some(v) = queue.pop_front() {
        for &(w, e) in &adjacency[v] {
            if visited[w as usize] {
                continue;
            }
            visited[w as usize] = true;
            if rel_v[w as usize] {
                row[w as usize] = *next_row;
                *next_row += 1;
            }
            columns.push(e);
            used_edge[e as usize] = true;
            queue.push_back(w as usize);
        }
    }
}

fn rank_d2(s: &SurfaceComplex, rel_e: &[bool], rel_t: &[bool]) -> usize {
    let nt = s.triangles().len();
    // Dual forest: triangles joined across relative edges they share.
    let mut order: Vec<u32> = Vec::new();
    let mut parent_edge = vec![u32::MAX; nt];
    let mut visited = vec![false; nt];
    let mut roots = Vec::new();
    let mut queue = VecDeque::new();
    for start in 0..nt {
        if !rel_t[start] || visited[start] {
            continue;
        }
        visited[start] = true;
        roots.push(start as u32);
        queue.push_back(start as u32);
        while let Some(t) = queue.pop_front() {
            order.push(t);
            for e in s.triangle_edges(t) {
                if !rel_e[e as usize] {
                    continue;
                }
                for &u in s.edge_triangles(e) {
                    if rel_t[u as usize] && !visited[u as usize] {
                        visited[u as usize] = true;
                        parent_edge[u as usize] = e;
                        queue.push_back(u);
                    }
                }
            }
        }
    }
    // Forest edges get the top row indices, decreasing along the search, so
    // each non-root triangle's lowest entry is the edge to its parent.
    let ne = s.edges().len();
    let mut row = vec![u32::MAX; ne];
    let mut tree = vec![false; ne];
    for &t in &order {
        if parent_edge[t as usize] != u32::MAX {
            tree[parent_edge[t as usize] as usize] = true;
        }
    }
    let mut next = 0u32;
    for e in 0..ne {
        if rel_e[e] && !tree[e] {
            row[e] = next;
            next += 1;
        }
    }
    let tree_count = tree.iter().filter(|&&b| b).count() as u32;
    let mut k = 0u32;
    for &t in &order {
        let e = parent_edge[t as usize];
        if e != u32::MAX {
            row[e as usize] = next + tree_count - 1 - k;
            k += 1;
        }
    }
    let mut m = SparseColumns::new((next + tree_count) as usize);
    let columns = order.iter().filter(|&&t| parent_edge[t as usize] != u32::MAX).chain(roots.iter());
    for &t in columns {
        let support = s
            .triangle_edges(t)
            .iter()
            .filter(|&&e| rel_e[e as usize])
            .map(|&e| row[e as usize])
            .collect();
        m.push(support);
    }
    m.reduce().rank()
}

/// Z2 Betti numbers `(b0, b1, b2)` of the whole complex.
pub fn betti(s: &SurfaceComplex) -> [usize; 3] {
    pair_ranks(s, &Cells::all(s), &Cells::none(s))
}

/// Ranks of `H_k(S, L; Z2)` for k = 0, 1, 2, computed on `s` as given.
pub fn pair_homology_with_marked(s: &SurfaceComplex) -> [usize; 3] {
    pair_ranks(s, &Cells::all(s), &Cells::marked(s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::build::{self, Wrap};

    #[test]
    fn closed_surfaces() {
        assert_eq!(betti(&build::octahedron()), [1, 0, 1]);
        assert_eq!(betti(&build::seven_vertex_torus()), [1, 2, 1]);
        assert_eq!(betti(&build::grid(4, 3, Wrap::Periodic, Wrap::Periodic)), [1, 2, 1]);
        assert_eq!(betti(&build::grid(4, 3, Wrap::Flipped, Wrap::Periodic)), [1, 2, 1]);
    }

    #[test]
    fn surfaces_with_boundary() {
        assert_eq!(betti(&build::grid(3, 3, Wrap::None, Wrap::None)), [1, 0, 0]);
        assert_eq!(betti(&build::grid(4, 2, Wrap::Periodic, Wrap::None)), [1, 1, 0]);
        assert_eq!(betti(&build::grid(4, 2, Wrap::Flipped, Wrap::None)), [1, 1, 0]);
    }

    #[test]
    fn relative_to_boundary() {
        let disk = build::grid(3, 3, Wrap::None, Wrap::None);
        assert_eq!(pair_ranks(&disk, &Cells::all(&disk), &Cells::boundary(&disk)), [0, 0, 1]);
        let annulus = build::grid(4, 2, Wrap::Periodic, Wrap::None);
        assert_eq!(pair_ranks(&annulus, &Cells::all(&annulus), &Cells::boundary(&annulus)), [0, 1, 1]);
    }

    #[test]
    fn torus_has_expected_d2_rank() {
        let t = build::seven_vertex_torus();
        assert_eq!(t.triangles().len(), 14);
        // b2 = 14 - rank d2 = 1, so rank d2 = 13
        assert_eq!(betti(&t)[2], 1);
    }
}
