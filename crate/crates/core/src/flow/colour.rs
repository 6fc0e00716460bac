//! Splitting a mesh along the zero set of `X . n` and reading off regions
//! and tangency curves.

use std::collections::HashMap;
use std::fmt::Write;

use serde::{Deserialize, Serialize};

use super::field::VectorField;
use super::mesh::{dot, sorted, Point, TriMesh};
use super::FlowError;
use crate::calculus::{Colour, CurveEntry, ManifoldFile, RegionEntry};
use crate::surface::UnionFind;

pub const DEFAULT_EPSILON: f64 = 1e-9;

const TANGENCY_NOTE: &str = "tangency type unverified";

/// A closed polyline; the last point joins back to the first.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Polyline {
    pub id: String,
    pub component: usize,
    pub white: String,
    pub gray: String,
    pub points: Vec<Point>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlowSummary {
    pub chi_white: i64,
    pub chi_gray: i64,
    /// Euler characteristic of the split mesh.
    pub chi_mesh: i64,
    pub t_curves: usize,
    /// The zero set is only known to be where the field is tangent; whether
    /// orbits touch it from outside is not checked.
    pub tangency: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ColouredSurfaceMesh {
    pub epsilon: f64,
    /// `X . n` at each vertex of the input mesh.
    pub signs: Vec<f64>,
    /// The input mesh with straddling triangles cut along the zero set.
    pub mesh: TriMesh,
    pub colours: Vec<Colour>,
    pub t_curves: Vec<Polyline>,
    pub regions: Vec<RegionEntry>,
    pub summary: FlowSummary,
}

/// Colours `mesh` by the sign of `X . n` at its vertices, `n` the
/// area-weighted vertex normal: negative (entering) is white, positive
/// (exiting) is gray. Triangles with vertices of both signs are cut along
/// the chord joining the linearly interpolated zeros on their edges.
pub fn colour_mesh(mesh: &TriMesh, field: &VectorField, epsilon: f64) -> Result<ColouredSurfaceMesh, FlowError> {
    if !(epsilon > 0.0 && epsilon.is_finite()) {
        return Err(FlowError::BadEpsilon(epsilon));
    }
    mesh.check()?;
    let normals = mesh.vertex_normals();
    let signs: Vec<f64> = mesh.vertices.iter().zip(&normals).map(|(&p, &n)| dot(field.eval(p), n)).collect();
    if let Some(v) = signs.iter().position(|s| !(s.abs() > epsilon)) {
        return Err(FlowError::AmbiguousTangency { vertex: v, value: signs[v] });
    }
    let colour_of = |v: u32| if signs[v as usize] < 0.0 { Colour::White } else { Colour::Gray };
    let (mesh_component, _) = mesh.triangle_components();

    let mut vertices = mesh.vertices.clone();
    let mut zeros: HashMap<(u32, u32), u32> = HashMap::new();
    let mut zero = |a: u32, b: u32, vs: &mut Vec<Point>| {
        let (lo, hi) = sorted(a, b);
        *zeros.entry((lo, hi)).or_insert_with(|| {
            let (sl, sh) = (signs[lo as usize], signs[hi as usize]);
            let t = sl / (sl - sh);
            let (p, q) = (vs[lo as usize], vs[hi as usize]);
            vs.push([0, 1, 2].map(|k| p[k] + t * (q[k] - p[k])));
            vs.len() as u32 - 1
        })
    };
    let mut triangles = Vec::with_capacity(mesh.triangles.len());
    let mut colours = Vec::with_capacity(mesh.triangles.len());
    let mut component = Vec::with_capacity(mesh.triangles.len());
    // Each chord with the split triangles on its two sides.
    let mut chords: Vec<([u32; 2], [usize; 2])> = Vec::new();
    for (i, t) in mesh.triangles.iter().enumerate() {
        let c = t.map(colour_of);
        let lone = (0..3).find(|&k| c[k] != c[(k + 1) % 3] && c[k] != c[(k + 2) % 3]);
        let Some(k) = lone else {
            triangles.push(*t);
            colours.push(c[0]);
            component.push(mesh_component[i] as usize);
            continue;
        };
        let (a, b, d) = (t[k], t[(k + 1) % 3], t[(k + 2) % 3]);
        let p = zero(a, b, &mut vertices);
        let q = zero(d, a, &mut vertices);
        let n = triangles.len();
        triangles.extend([[a, p, q], [p, b, d], [p, d, q]]);
        colours.extend([c[k], c[(k + 1) % 3], c[(k + 1) % 3]]);
        component.extend([mesh_component[i] as usize; 3]);
        chords.push(([p, q], [n, n + 2]));
    }
    let split = TriMesh::new(vertices, triangles);

    // Regions: same-coloured triangles joined across shared edges.
    let mut by_edge: HashMap<(u32, u32), Vec<usize>> = HashMap::new();
    for (i, t) in split.triangles.iter().enumerate() {
        for k in 0..3 {
            by_edge.entry(sorted(t[k], t[(k + 1) % 3])).or_default().push(i);
        }
    }
    let mut uf = UnionFind::new(split.triangles.len());
    for tris in by_edge.values() {
        if let [x, y] = tris[..] {
            if colours[x] == colours[y] {
                uf.union(x, y);
            }
        }
    }
    let (label, count) = uf.labels();
    let mut regions: Vec<RegionEntry> = Vec::with_capacity(count);
    let mut seen = vec![false; count];
    let (mut nw, mut ng) = (0, 0);
    for (i, &l) in label.iter().enumerate() {
        if !std::mem::replace(&mut seen[l as usize], true) {
            let id = match colours[i] {
                Colour::White => {
                    nw += 1;
                    format!("W{nw}")
                }
                Colour::Gray => {
                    ng += 1;
                    format!("G{ng}")
                }
            };
            regions.push(RegionEntry { id, colour: colours[i], euler: 0, boundary: Vec::new(), component: Some(component[i]) });
        }
    }
    let mut cells: Vec<(u32, u32, u32)> = Vec::new();
    for (i, t) in split.triangles.iter().enumerate() {
        let r = label[i];
        regions[r as usize].euler += 1;
        for k in 0..3 {
            let (a, b) = sorted(t[k], t[(k + 1) % 3]);
            cells.push((r, t[k], u32::MAX));
            cells.push((r, a, b));
        }
    }
    cells.sort_unstable();
    cells.dedup();
    for &(r, _, b) in &cells {
        regions[r as usize].euler += if b == u32::MAX { 1 } else { -1 };
    }

    // Tangency curves: chords meet in pairs at the interpolated zeros.
    let mut at: HashMap<u32, Vec<usize>> = HashMap::new();
    for (c, (ends, _)) in chords.iter().enumerate() {
        for &v in ends {
            at.entry(v).or_default().push(c);
        }
    }
    let mut used = vec![false; chords.len()];
    let mut t_curves = Vec::new();
    for start in 0..chords.len() {
        if used[start] {
            continue;
        }
        let ([p, mut v], sides) = chords[start];
        let mut points = vec![split.vertices[p as usize]];
        let mut c = start;
        used[c] = true;
        while v != p {
            points.push(split.vertices[v as usize]);
            c = at[&v].iter().copied().find(|&d| d != c).expect("zero on two chords");
            used[c] = true;
            let [x, y] = chords[c].0;
            v = if x == v { y } else { x };
        }
        let white_side = if colours[sides[0]] == Colour::White { sides[0] } else { sides[1] };
        let gray_side = sides[0] + sides[1] - white_side;
        let id = format!("t{}", t_curves.len() + 1);
        let (w, g) = (label[white_side] as usize, label[gray_side] as usize);
        regions[w].boundary.push(id.clone());
        regions[g].boundary.push(id.clone());
        t_curves.push(Polyline {
            id,
            component: component[white_side],
            white: regions[w].id.clone(),
            gray: regions[g].id.clone(),
            points,
        });
    }

    let chi = |colour| regions.iter().filter(|r| r.colour == colour).map(|r| r.euler).sum();
    let summary = FlowSummary {
        chi_white: chi(Colour::White),
        chi_gray: chi(Colour::Gray),
        chi_mesh: split.euler(),
        t_curves: t_curves.len(),
        tangency: TANGENCY_NOTE.into(),
    };
    Ok(ColouredSurfaceMesh { epsilon, signs, mesh: split, colours, t_curves, regions, summary })
}

/// The region ledger of a coloured mesh, ready to be given classes and
/// generators and loaded as a coloured manifold.
pub fn summarize(cm: &ColouredSurfaceMesh) -> ManifoldFile {
    ManifoldFile {
        t_curves: cm
            .t_curves
            .iter()
            .map(|t| CurveEntry {
                id: t.id.clone(),
                class: Default::default(),
                component: t.component,
                white: t.white.clone(),
                gray: t.gray.clone(),
            })
            .collect(),
        regions: cm.regions.clone(),
        ..Default::default()
    }
}

/// The split mesh as OFF with a colour on every face: white `1 1 1`,
/// gray `0.5 0.5 0.5`.
pub fn export_off(cm: &ColouredSurfaceMesh) -> String {
    let m = &cm.mesh;
    let mut out = format!("OFF\n{} {} 0\n", m.vertices.len(), m.triangles.len());
    for p in &m.vertices {
        let _ = writeln!(out, "{} {} {}", p[0], p[1], p[2]);
    }
    for (t, c) in m.triangles.iter().zip(&cm.colours) {
        let rgb = if *c == Colour::White { "1 1 1" } else { "0.5 0.5 0.5" };
        let _ = writeln!(out, "3 {} {} {} {rgb}", t[0], t[1], t[2]);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::super::mesh::{box_mesh, icosphere, torus};
    use super::*;
    use crate::calculus::ColouredManifold;

    fn down() -> VectorField {
        VectorField::Constant { vector: [0.0, 0.0, -1.0] }
    }

    #[test]
    fn icosphere_splits_into_hemispheres() {
        let cm = colour_mesh(&icosphere(3), &down(), DEFAULT_EPSILON).unwrap();
        assert_eq!(cm.t_curves.len(), 1);
        assert!(cm.t_curves[0].points.iter().all(|p| p[2].abs() < 0.05));
        assert_eq!((cm.summary.chi_white, cm.summary.chi_gray), (1, 1));
        for (t, c) in cm.mesh.triangles.iter().zip(&cm.colours) {
            let z = t.iter().map(|&v| cm.mesh.vertices[v as usize][2]).sum::<f64>() / 3.0;
            if z.abs() > 0.05 {
                assert_eq!(*c == Colour::White, z > 0.0);
            }
        }
        let m = ColouredManifold::from_file(summarize(&cm)).unwrap();
        assert!(m.regions().iter().all(|r| r.is_disk_or_sphere()));
        assert_eq!(cm.summary.tangency, "tangency type unverified");
    }

    #[test]
    fn torus_has_two_equators() {
        let cm = colour_mesh(&torus(2.0, 0.7, 32, 16), &down(), DEFAULT_EPSILON).unwrap();
        assert_eq!(cm.t_curves.len(), 2);
        assert_eq!((cm.summary.chi_white, cm.summary.chi_gray), (0, 0));
        let radii: Vec<f64> = cm.t_curves.iter().map(|t| t.points[0][0].hypot(t.points[0][1])).collect();
        assert!(radii.iter().any(|&r| (r - 2.7).abs() < 0.05) && radii.iter().any(|&r| (r - 1.3).abs() < 0.05));
        ColouredManifold::from_file(summarize(&cm)).unwrap();
    }

    #[test]
    fn box_sides_are_tangent() {
        assert!(matches!(colour_mesh(&box_mesh(2), &down(), DEFAULT_EPSILON), Err(FlowError::AmbiguousTangency { .. })));
    }

    #[test]
    fn radial_field_exits_everywhere() {
        let cm = colour_mesh(&icosphere(1), &VectorField::radial(), DEFAULT_EPSILON).unwrap();
        assert!(cm.t_curves.is_empty());
        assert_eq!(cm.regions.len(), 1);
        assert_eq!((cm.regions[0].colour, cm.regions[0].euler), (Colour::Gray, 2));
    }

    #[test]
    fn bad_epsilon() {
        assert_eq!(colour_mesh(&icosphere(0), &down(), 0.0), Err(FlowError::BadEpsilon(0.0)));
    }

    #[test]
    fn coloured_off_has_face_colours() {
        let cm = colour_mesh(&icosphere(1), &down(), DEFAULT_EPSILON).unwrap();
        let off = export_off(&cm);
        let back = TriMesh::parse_off(&off).unwrap();
        assert_eq!(back, cm.mesh);
        assert!(off.contains(" 0.5 0.5 0.5\n") && off.contains(" 1 1 1\n"));
    }
}
