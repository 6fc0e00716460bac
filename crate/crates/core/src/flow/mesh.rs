//! Closed triangle meshes in R^3, OFF input, and a few standard shapes.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::fmt::Write;

use serde::{Deserialize, Serialize};

use super::FlowError;
use crate::surface::UnionFind;

pub type Point = [f64; 3];

pub(crate) fn sub(a: Point, b: Point) -> Point {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

pub(crate) fn cross(a: Point, b: Point) -> Point {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

pub(crate) fn dot(a: Point, b: Point) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn normalize(a: Point) -> Point {
    let n = dot(a, a).sqrt();
    [a[0] / n, a[1] / n, a[2] / n]
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TriMesh {
    pub vertices: Vec<Point>,
    /// Counter-clockwise seen from outside.
    pub triangles: Vec<[u32; 3]>,
}

impl TriMesh {
    pub fn new(vertices: Vec<Point>, triangles: Vec<[u32; 3]>) -> Self {
        TriMesh { vertices, triangles }
    }

    /// Reads ASCII OFF. Polygons with more than three corners are fanned
    /// into triangles; per-face colours and other trailing values are ignored.
    pub fn parse_off(text: &str) -> Result<Self, FlowError> {
        let err = |m: String| FlowError::Parse(m);
        let mut lines = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty());
        let header = lines.next().ok_or_else(|| err("empty file".into()))?;
        let mut tokens: Vec<&str> = header.split_whitespace().collect();
        if tokens[0] != "OFF" {
            return Err(err(format!("expected OFF header, found {:?}", tokens[0])));
        }
        tokens.remove(0);
        if tokens.is_empty() {
            tokens = lines.next().ok_or_else(|| err("missing counts".into()))?.split_whitespace().collect();
        }
        let count = |t: Option<&&str>, what: &str| -> Result<usize, FlowError> {
            t.ok_or_else(|| err(format!("missing {what} count")))?.parse().map_err(|e| err(format!("{what} count: {e}")))
        };
        let nv = count(tokens.first(), "vertex")?;
        let nf = count(tokens.get(1), "face")?;
        let mut vertices = Vec::with_capacity(nv);
        for i in 0..nv {
            let line = lines.next().ok_or_else(|| err(format!("missing vertex {i}")))?;
            let xs: Vec<f64> = line
                .split_whitespace()
                .take(3)
                .map(|t| t.parse::<f64>().map_err(|e| err(format!("vertex {i}: {e}"))))
                .collect::<Result<_, _>>()?;
            if xs.len() < 3 || xs.iter().any(|x| !x.is_finite()) {
                return Err(err(format!("vertex {i} needs three finite coordinates")));
            }
            vertices.push([xs[0], xs[1], xs[2]]);
        }
        let mut triangles = Vec::with_capacity(nf);
        for f in 0..nf {
            let line = lines.next().ok_or_else(|| err(format!("missing face {f}")))?;
            let mut it = line.split_whitespace();
            let n: usize = it
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| err(format!("face {f}: bad corner count")))?;
            let corners: Vec<u32> = it
                .take(n)
                .map(|t| t.parse::<u32>().map_err(|e| err(format!("face {f}: {e}"))))
                .collect::<Result<_, _>>()?;
            if n < 3 || corners.len() != n {
                return Err(err(format!("face {f} needs at least three corners")));
            }
            if let Some(&c) = corners.iter().find(|&&c| c as usize >= nv) {
                return Err(err(format!("face {f} uses vertex {c} of {nv}")));
            }
            for k in 1..n - 1 {
                triangles.push([corners[0], corners[k], corners[k + 1]]);
            }
        }
        Ok(TriMesh { vertices, triangles })
    }

    pub fn to_off(&self) -> String {
        let mut out = format!("OFF\n{} {} 0\n", self.vertices.len(), self.triangles.len());
        for p in &self.vertices {
            let _ = writeln!(out, "{} {} {}", p[0], p[1], p[2]);
        }
        for t in &self.triangles {
            let _ = writeln!(out, "3 {} {} {}", t[0], t[1], t[2]);
        }
        out
    }

    /// Checks the mesh bounds a solid: every vertex used, no degenerate
    /// triangles, every edge shared by exactly two triangles traversing it
    /// in opposite directions, and each component enclosing positive volume.
    pub fn check(&self) -> Result<(), FlowError> {
        let nv = self.vertices.len();
        let mut used = vec![false; nv];
        let mut directed: HashMap<(u32, u32), usize> = HashMap::new();
        for (i, t) in self.triangles.iter().enumerate() {
            if t.iter().any(|&v| v as usize >= nv) {
                return Err(FlowError::BadMesh(format!("triangle {i} uses a missing vertex")));
            }
            if t[0] == t[1] || t[1] == t[2] || t[0] == t[2] {
                return Err(FlowError::BadMesh(format!("triangle {i} repeats a vertex")));
            }
            for k in 0..3 {
                used[t[k] as usize] = true;
                *directed.entry((t[k], t[(k + 1) % 3])).or_default() += 1;
            }
        }
        if let Some(v) = used.iter().position(|u| !u) {
            return Err(FlowError::BadMesh(format!("vertex {v} is in no triangle")));
        }
        let mut keys: Vec<_> = directed.iter().collect();
        keys.sort();
        for (&(a, b), &n) in keys {
            let back = directed.get(&(b, a)).copied().unwrap_or(0);
            if n + back != 2 {
                return Err(FlowError::NotClosed(format!("edge {a}-{b} lies in {} triangles", n + back)));
            }
            if n != 1 {
                return Err(FlowError::BadMesh(format!("triangles at edge {a}-{b} are oriented inconsistently")));
            }
        }
        let (labels, count) = self.triangle_components();
        let mut volume = vec![0.0; count];
        for (t, &c) in self.triangles.iter().zip(&labels) {
            let [a, b, c3] = t.map(|v| self.vertices[v as usize]);
            volume[c as usize] += dot(a, cross(b, c3));
        }
        if let Some(c) = volume.iter().position(|&v| v <= 0.0) {
            return Err(FlowError::BadMesh(format!("component {c} is not oriented outward")));
        }
        Ok(())
    }

    /// Connected components of triangles sharing a vertex, numbered by first
    /// triangle.
    pub fn triangle_components(&self) -> (Vec<u32>, usize) {
        let mut uf = UnionFind::new(self.vertices.len());
        for t in &self.triangles {
            uf.union(t[0] as usize, t[1] as usize);
            uf.union(t[1] as usize, t[2] as usize);
        }
        let mut label_of_root: HashMap<usize, u32> = HashMap::new();
        let labels: Vec<u32> = self
            .triangles
            .iter()
            .map(|t| {
                let n = label_of_root.len() as u32;
                *label_of_root.entry(uf.find(t[0] as usize)).or_insert(n)
            })
            .collect();
        (labels, label_of_root.len())
    }

    /// `V - E + F`.
    pub fn euler(&self) -> i64 {
        let mut edges: Vec<(u32, u32)> =
            self.triangles.iter().flat_map(|t| (0..3).map(move |k| sorted(t[k], t[(k + 1) % 3]))).collect();
        edges.sort_unstable();
        edges.dedup();
        let mut used: Vec<u32> = self.triangles.iter().flatten().copied().collect();
        used.sort_unstable();
        used.dedup();
        used.len() as i64 - edges.len() as i64 + self.triangles.len() as i64
    }

    /// Area-weighted vertex normals of unit length.
    pub fn vertex_normals(&self) -> Vec<Point> {
        let mut acc = vec![[0.0; 3]; self.vertices.len()];
        for t in &self.triangles {
            let [a, b, c] = t.map(|v| self.vertices[v as usize]);
            let n = cross(sub(b, a), sub(c, a));
            for &v in t {
                for k in 0..3 {
                    acc[v as usize][k] += n[k];
                }
            }
        }
        acc.into_iter().map(normalize).collect()
    }

    pub fn map_points(&self, f: impl Fn(Point) -> Point) -> TriMesh {
        TriMesh { vertices: self.vertices.iter().map(|&p| f(p)).collect(), triangles: self.triangles.clone() }
    }
}

pub(crate) fn sorted(a: u32, b: u32) -> (u32, u32) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Rotation by angles `(a, b, c)` about the x, y and z axes, in that order.
pub fn rotate(p: Point, [a, b, c]: [f64; 3]) -> Point {
    let (s, co) = a.sin_cos();
    let p = [p[0], co * p[1] - s * p[2], s * p[1] + co * p[2]];
    let (s, co) = b.sin_cos();
    let p = [co * p[0] + s * p[2], p[1], -s * p[0] + co * p[2]];
    let (s, co) = c.sin_cos();
    [co * p[0] - s * p[1], s * p[0] + co * p[1], p[2]]
}

/// Angles for which no vertex of the icospheres lands on a coordinate plane.
pub const GENERIC_ROTATION: [f64; 3] = [0.3, 0.7, 1.1];

/// The unit icosphere: an icosahedron subdivided `level` times, projected to
/// the sphere and turned by [`GENERIC_ROTATION`].
pub fn icosphere(level: u32) -> TriMesh {
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let mut vertices: Vec<Point> = Vec::new();
    for s in [-1.0, 1.0] {
        for t in [-1.0, 1.0] {
            vertices.push([0.0, s, t * phi]);
            vertices.push([s, t * phi, 0.0]);
            vertices.push([t * phi, 0.0, s]);
        }
    }
    // Faces are the triples of mutually adjacent vertices (distance 2).
    let adjacent = |a: usize, b: usize| (dot(sub(vertices[a], vertices[b]), sub(vertices[a], vertices[b])) - 4.0).abs() < 1e-9;
    let mut triangles = Vec::new();
    for a in 0..12 {
        for b in a + 1..12 {
            for c in b + 1..12 {
                if adjacent(a, b) && adjacent(b, c) && adjacent(a, c) {
                    let n = cross(sub(vertices[b], vertices[a]), sub(vertices[c], vertices[a]));
                    let t = if dot(n, vertices[a]) > 0.0 { [a, b, c] } else { [a, c, b] };
                    triangles.push(t.map(|v| v as u32));
                }
            }
        }
    }
    let mut vertices: Vec<Point> = vertices.into_iter().map(normalize).collect();
    for _ in 0..level {
        let mut midpoint: HashMap<(u32, u32), u32> = HashMap::new();
        let mut mid = |a: u32, b: u32, vs: &mut Vec<Point>| {
            *midpoint.entry(sorted(a, b)).or_insert_with(|| {
                let (p, q) = (vs[a as usize], vs[b as usize]);
                vs.push(normalize([p[0] + q[0], p[1] + q[1], p[2] + q[2]]));
                vs.len() as u32 - 1
            })
        };
        let mut next = Vec::with_capacity(triangles.len() * 4);
        for [a, b, c] in triangles {
            let ab = mid(a, b, &mut vertices);
            let bc = mid(b, c, &mut vertices);
            let ca = mid(c, a, &mut vertices);
            next.extend([[a, ab, ca], [ab, b, bc], [ca, bc, c], [ab, bc, ca]]);
        }
        triangles = next;
    }
    TriMesh::new(vertices, triangles).map_points(|p| rotate(p, GENERIC_ROTATION))
}

/// A torus around the z axis with radii `major > minor`, on an `nu` by `nv`
/// grid. The rings sit at half-steps of the minor angle, so for even `nv` no
/// vertex lies on the top, bottom, outer or inner equator.
pub fn torus(major: f64, minor: f64, nu: u32, nv: u32) -> TriMesh {
    let mut vertices = Vec::with_capacity((nu * nv) as usize);
    for i in 0..nu {
        let u = 2.0 * PI * i as f64 / nu as f64;
        for j in 0..nv {
            let v = 2.0 * PI * (j as f64 + 0.5) / nv as f64;
            let r = major + minor * v.cos();
            vertices.push([r * u.cos(), r * u.sin(), minor * v.sin()]);
        }
    }
    let id = |i: u32, j: u32| (i % nu) * nv + (j % nv);
    let mut triangles = Vec::with_capacity((2 * nu * nv) as usize);
    for i in 0..nu {
        for j in 0..nv {
            triangles.push([id(i, j), id(i + 1, j), id(i + 1, j + 1)]);
            triangles.push([id(i, j), id(i + 1, j + 1), id(i, j + 1)]);
        }
    }
    TriMesh::new(vertices, triangles)
}

/// The cube `[-1, 1]^3` with each face cut into an `n` by `n` grid.
pub fn box_mesh(n: u32) -> TriMesh {
    let mut index: HashMap<[u32; 3], u32> = HashMap::new();
    let mut vertices = Vec::new();
    let mut vertex = |g: [u32; 3], vs: &mut Vec<Point>| {
        *index.entry(g).or_insert_with(|| {
            vs.push(g.map(|x| 2.0 * x as f64 / n as f64 - 1.0));
            vs.len() as u32 - 1
        })
    };
    let mut triangles = Vec::new();
    for axis in 0..3 {
        for side in [0, n] {
            // (a, b, axis) is a right-handed frame; flip it on the low side.
            let (mut a, mut b) = ((axis + 1) % 3, (axis + 2) % 3);
            if side == 0 {
                std::mem::swap(&mut a, &mut b);
            }
            for i in 0..n {
                for j in 0..n {
                    let at = |di: u32, dj: u32| {
                        let mut g = [0; 3];
                        g[axis] = side;
                        g[a] = i + di;
                        g[b] = j + dj;
                        g
                    };
                    let q = [at(0, 0), at(1, 0), at(1, 1), at(0, 1)].map(|g| vertex(g, &mut vertices));
                    triangles.push([q[0], q[1], q[2]]);
                    triangles.push([q[0], q[2], q[3]]);
                }
            }
        }
    }
    TriMesh::new(vertices, triangles)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_are_closed_and_outward() {
        for (mesh, chi) in [(icosphere(0), 2), (icosphere(3), 2), (torus(2.0, 0.7, 24, 12), 0), (box_mesh(3), 2)] {
            mesh.check().unwrap();
            assert_eq!(mesh.euler(), chi);
        }
        assert_eq!(icosphere(2).triangles.len(), 320);
    }

    #[test]
    fn off_round_trip_and_polygons() {
        let m = box_mesh(2);
        assert_eq!(TriMesh::parse_off(&m.to_off()).unwrap(), m);
        let quad = "OFF # a square pyramid\n5 5 0\n0 0 0\n1 0 0\n1 1 0\n0 1 0\n0.5 0.5 1\n4 0 3 2 1 0.5 0.5 0.5\n3 0 1 4\n3 1 2 4\n3 2 3 4\n3 3 0 4\n";
        let p = TriMesh::parse_off(quad).unwrap();
        assert_eq!(p.triangles.len(), 6);
        p.check().unwrap();
    }

    #[test]
    fn defects_are_reported() {
        let mut open = icosphere(0);
        open.triangles.pop();
        assert!(matches!(open.check(), Err(FlowError::NotClosed(_))));
        let mut flipped = icosphere(0);
        flipped.triangles[0].swap(0, 1);
        assert!(matches!(flipped.check(), Err(FlowError::BadMesh(_))));
        let inward = TriMesh::new(icosphere(0).vertices, icosphere(0).triangles.iter().map(|t| [t[0], t[2], t[1]]).collect());
        assert!(matches!(inward.check(), Err(FlowError::BadMesh(_))));
        assert!(TriMesh::parse_off("PLY\n").is_err());
        assert!(TriMesh::parse_off("OFF\n1 1 0\n0 0 0\n3 0 0 7\n").is_err());
    }
}
