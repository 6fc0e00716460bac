//! Triangulated surfaces with a marked subcomplex.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

pub type Edge = [u32; 2];
pub type Tri = [u32; 3];

pub(crate) fn sorted_edge(a: u32, b: u32) -> Edge {
    if a <= b {
        [a, b]
    } else {
        [b, a]
    }
}

pub(crate) fn sorted_tri(t: Tri) -> Tri {
    let mut s = t;
    s.sort_unstable();
    s
}

/// The marked subcomplex L, kept in a canonical sorted form.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Marked {
    #[serde(default)]
    pub vertices: Vec<u32>,
    #[serde(default)]
    pub edges: Vec<Edge>,
    #[serde(default)]
    pub triangles: Vec<Tri>,
}

impl Marked {
    pub fn new(vertices: Vec<u32>, edges: Vec<Edge>, triangles: Vec<Tri>) -> Self {
        Marked { vertices, edges, triangles }.normalized()
    }

    /// The closure of a set of simplices: all faces are added.
    pub fn closure(vertices: &[u32], edges: &[Edge], triangles: &[Tri]) -> Self {
        let mut v: Vec<u32> = vertices.to_vec();
        let mut e: Vec<Edge> = edges.to_vec();
        for t in triangles {
            v.extend_from_slice(t);
            e.push(sorted_edge(t[0], t[1]));
            e.push(sorted_edge(t[1], t[2]));
            e.push(sorted_edge(t[0], t[2]));
        }
        for x in edges {
            v.extend_from_slice(x);
        }
        Marked::new(v, e, triangles.to_vec())
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty() && self.edges.is_empty() && self.triangles.is_empty()
    }

    fn normalized(mut self) -> Self {
        self.vertices.sort_unstable();
        self.vertices.dedup();
        for e in &mut self.edges {
            *e = sorted_edge(e[0], e[1]);
        }
        self.edges.sort_unstable();
        self.edges.dedup();
        for t in &mut self.triangles {
            *t = sorted_tri(*t);
        }
        self.triangles.sort_unstable();
        self.triangles.dedup();
        self
    }
}

/// A finite 2-dimensional simplicial complex given by its triangles, with a
/// marked subcomplex L. The edge table is derived on construction.
///
/// Nothing is checked here; see [`validate`](super::validate) for the
/// surface conditions.
#[derive(Clone, Debug)]
pub struct SurfaceComplex {
    vertex_count: usize,
    triangles: Vec<Tri>,
    marked: Marked,
    edges: Vec<Edge>,
    edge_index: HashMap<Edge, u32>,
    edge_triangles: Vec<Vec<u32>>,
    triangle_edges: Vec<[u32; 3]>,
    in_l: Vec<bool>,
}

impl PartialEq for SurfaceComplex {
    fn eq(&self, other: &Self) -> bool {
        self.vertex_count == other.vertex_count && self.triangles == other.triangles && self.marked == other.marked
    }
}

impl Eq for SurfaceComplex {}

impl SurfaceComplex {
    pub fn new(vertex_count: usize, triangles: Vec<Tri>, marked: Marked) -> Self {
        let marked = marked.normalized();
        let mut edges: Vec<Edge> = triangles
            .iter()
            .flat_map(|t| [sorted_edge(t[0], t[1]), sorted_edge(t[1], t[2]), sorted_edge(t[0], t[2])])
            .collect();
        edges.sort_unstable();
        edges.dedup();
        let edge_index: HashMap<Edge, u32> = edges.iter().enumerate().map(|(i, &e)| (e, i as u32)).collect();
        let mut edge_triangles = vec![Vec::new(); edges.len()];
        let mut triangle_edges = Vec::with_capacity(triangles.len());
        for (ti, t) in triangles.iter().enumerate() {
            let ids = [
                edge_index[&sorted_edge(t[0], t[1])],
                edge_index[&sorted_edge(t[1], t[2])],
                edge_index[&sorted_edge(t[0], t[2])],
            ];
            for &e in &ids {
                let list: &mut Vec<u32> = &mut edge_triangles[e as usize];
                if list.last() != Some(&(ti as u32)) {
                    list.push(ti as u32);
                }
            }
            triangle_edges.push(ids);
        }
        let mut in_l = vec![false; vertex_count];
        for &v in &marked.vertices {
            if let Some(slot) = in_l.get_mut(v as usize) {
                *slot = true;
            }
        }
        SurfaceComplex { vertex_count, triangles, marked, edges, edge_index, edge_triangles, triangle_edges, in_l }
    }

    /// The same complex with L replaced.
    pub fn with_marked(&self, marked: Marked) -> Self {
        SurfaceComplex::new(self.vertex_count, self.triangles.clone(), marked)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn triangles(&self) -> &[Tri] {
        &self.triangles
    }

    pub fn marked(&self) -> &Marked {
        &self.marked
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_id(&self, a: u32, b: u32) -> Option<u32> {
        self.edge_index.get(&sorted_edge(a, b)).copied()
    }

    /// Triangles containing edge `e`.
    pub fn edge_triangles(&self, e: u32) -> &[u32] {
        &self.edge_triangles[e as usize]
    }

    pub fn triangle_edges(&self, t: u32) -> [u32; 3] {
        self.triangle_edges[t as usize]
    }

    pub fn in_l(&self, v: u32) -> bool {
        self.in_l.get(v as usize).copied().unwrap_or(false)
    }

    pub fn is_boundary_edge(&self, e: u32) -> bool {
        self.edge_triangles[e as usize].len() == 1
    }

    pub fn boundary_vertices(&self) -> Vec<bool> {
        let mut out = vec![false; self.vertex_count];
        for (i, e) in self.edges.iter().enumerate() {
            if self.edge_triangles[i].len() == 1 {
                for &v in e {
                    if let Some(slot) = out.get_mut(v as usize) {
                        *slot = true;
                    }
                }
            }
        }
        out
    }

    pub fn has_boundary(&self) -> bool {
        self.edge_triangles.iter().any(|t| t.len() == 1)
    }

    /// V - E + F.
    pub fn euler_characteristic(&self) -> i64 {
        self.vertex_count as i64 - self.edges.len() as i64 + self.triangles.len() as i64
    }

    /// Triangles incident to each vertex.
    pub fn vertex_triangles(&self) -> Vec<Vec<u32>> {
        let mut out = vec![Vec::new(); self.vertex_count];
        for (ti, t) in self.triangles.iter().enumerate() {
            for &v in t {
                if let Some(list) = out.get_mut(v as usize) {
                    list.push(ti as u32);
                }
            }
        }
        out
    }

    /// Neighbouring vertices of each vertex, ascending.
    pub fn vertex_neighbours(&self) -> Vec<Vec<u32>> {
        let mut out = vec![Vec::new(); self.vertex_count];
        for e in &self.edges {
            out[e[0] as usize].push(e[1]);
            out[e[1] as usize].push(e[0]);
        }
        for list in &mut out {
            list.sort_unstable();
        }
        out
    }

    /// Connected components: a label per vertex (labels numbered in order of
    /// their lowest vertex) and the number of components.
    pub fn components(&self) -> (Vec<u32>, usize) {
        let mut uf = UnionFind::new(self.vertex_count);
        for e in &self.edges {
            uf.union(e[0] as usize, e[1] as usize);
        }
        uf.labels()
    }

    /// True when every simplex of S spanned by L-vertices belongs to L.
    pub fn marked_is_full(&self) -> bool {
        let edges_full = self
            .edges
            .iter()
            .filter(|e| self.in_l(e[0]) && self.in_l(e[1]))
            .all(|e| self.marked.edges.binary_search(e).is_ok());
        let tris_full = self
            .triangles
            .iter()
            .filter(|t| t.iter().all(|&v| self.in_l(v)))
            .all(|t| self.marked.triangles.binary_search(&sorted_tri(*t)).is_ok());
        edges_full && tris_full
    }

    /// Keeps the triangles with `keep[t]`, drops vertices no longer used and
    /// renumbers the survivors in order. L simplices survive when all their
    /// vertices do.
    pub fn restrict_triangles(&self, keep: &[bool]) -> SurfaceComplex {
        assert_eq!(keep.len(), self.triangles.len());
        let mut used = vec![false; self.vertex_count];
        for (t, &k) in self.triangles.iter().zip(keep) {
            if k {
                for &v in t {
                    used[v as usize] = true;
                }
            }
        }
        let mut new_id = vec![u32::MAX; self.vertex_count];
        let mut next = 0u32;
        for v in 0..self.vertex_count {
            if used[v] {
                new_id[v] = next;
                next += 1;
            }
        }
        let map = |v: u32| new_id[v as usize];
        let triangles: Vec<Tri> = self
            .triangles
            .iter()
            .zip(keep)
            .filter(|(_, &k)| k)
            .map(|(t, _)| [map(t[0]), map(t[1]), map(t[2])])
            .collect();
        let alive = |v: &u32| used[*v as usize];
        let marked = Marked::new(
            self.marked.vertices.iter().filter(|v| alive(v)).map(|&v| map(v)).collect(),
            self.marked.edges.iter().filter(|e| e.iter().all(alive)).map(|e| [map(e[0]), map(e[1])]).collect(),
            self.marked
                .triangles
                .iter()
                .filter(|t| t.iter().all(alive))
                .map(|t| [map(t[0]), map(t[1]), map(t[2])])
                .collect(),
        );
        SurfaceComplex::new(next as usize, triangles, marked)
    }

    /// Disjoint union; the vertices of `other` are shifted past ours.
    pub fn disjoint_union(&self, other: &SurfaceComplex) -> SurfaceComplex {
        let k = self.vertex_count as u32;
        let mut triangles = self.triangles.clone();
        triangles.extend(other.triangles.iter().map(|t| [t[0] + k, t[1] + k, t[2] + k]));
        let m = &other.marked;
        let mut marked = self.marked.clone();
        marked.vertices.extend(m.vertices.iter().map(|v| v + k));
        marked.edges.extend(m.edges.iter().map(|e| [e[0] + k, e[1] + k]));
        marked.triangles.extend(m.triangles.iter().map(|t| [t[0] + k, t[1] + k, t[2] + k]));
        SurfaceComplex::new(self.vertex_count + other.vertex_count, triangles, marked)
    }

    pub fn to_file(&self) -> ComplexFile {
        ComplexFile { vertices: self.vertex_count, triangles: self.triangles.clone(), l: self.marked.clone() }
    }

    pub fn from_file(file: ComplexFile) -> Self {
        SurfaceComplex::new(file.vertices, file.triangles, file.l)
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str::<ComplexFile>(text).map(SurfaceComplex::from_file)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("complex serializes")
    }
}

/// On-disk form of a complex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexFile {
    pub vertices: usize,
    pub triangles: Vec<Tri>,
    #[serde(rename = "L", default)]
    pub l: Marked,
}

pub(crate) struct UnionFind {
    parent: Vec<u32>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind { parent: (0..n as u32).collect() }
    }

    pub(crate) fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] as usize != root {
            root = self.parent[root] as usize;
        }
        let mut cur = x;
        while self.parent[cur] as usize != root {
            let next = self.parent[cur] as usize;
            self.parent[cur] = root as u32;
            cur = next;
        }
        root
    }

    /// Returns false if already joined.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo as u32;
        true
    }

    /// Component labels numbered by first appearance, and their count.
    pub(crate) fn labels(&mut self) -> (Vec<u32>, usize) {
        let n = self.parent.len();
        let mut label_of_root = vec![u32::MAX; n];
        let mut labels = vec![0u32; n];
        let mut next = 0u32;
        for v in 0..n {
            let r = self.find(v);
            if label_of_root[r] == u32::MAX {
                label_of_root[r] = next;
                next += 1;
            }
            labels[v] = label_of_root[r];
        }
        (labels, next as usize)
    }
}
