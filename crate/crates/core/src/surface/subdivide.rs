//! Barycentric subdivision.

use super::complex::{Marked, SurfaceComplex, Tri};

/// The barycentric subdivision. Old vertices keep their indices, edge
/// midpoints follow in edge-table order, then triangle barycenters.
/// Orientation of each triangle is inherited by its six children.
///
/// L is replaced by its subdivision, which is then a full subcomplex.
pub fn barycentric_subdivision(s: &SurfaceComplex) -> SurfaceComplex {
    let n = s.vertex_count() as u32;
    let ne = s.edges().len() as u32;
    let mid = |a: u32, b: u32| n + s.edge_id(a, b).expect("edge of a triangle");
    let mut triangles: Vec<Tri> = Vec::with_capacity(6 * s.triangles().len());
    for (ti, &[a, b, c]) in s.triangles().iter().enumerate() {
        let bc = n + ne + ti as u32;
        let (mab, mbc, mca) = (mid(a, b), mid(b, c), mid(c, a));
        triangles.extend_from_slice(&[
            [a, mab, bc],
            [mab, b, bc],
            [b, mbc, bc],
            [mbc, c, bc],
            [c, mca, bc],
            [mca, a, bc],
        ]);
    }
    let vertex_count = (n + ne) as usize + s.triangles().len();

    // A new vertex lies in sd(L) iff the simplex it subdivides is in L.
    let m = s.marked();
    let mut in_l = vec![false; vertex_count];
    for &v in &m.vertices {
        if (v as usize) < s.vertex_count() {
            in_l[v as usize] = true;
        }
    }
    for e in &m.edges {
        if let Some(id) = s.edge_id(e[0], e[1]) {
            in_l[(n + id) as usize] = true;
        }
    }
    let marked_tris: std::collections::HashSet<Tri> = m.triangles.iter().copied().collect();
    for (ti, t) in s.triangles().iter().enumerate() {
        if marked_tris.contains(&super::complex::sorted_tri(*t)) {
            in_l[(n + ne) as usize + ti] = true;
        }
    }
    let sd = SurfaceComplex::new(vertex_count, triangles, Marked::default());
    let marked = full_marking(&sd, &in_l);
    sd.with_marked(marked)
}

/// The full subcomplex spanned by the flagged vertices.
pub(crate) fn full_marking(s: &SurfaceComplex, flag: &[bool]) -> Marked {
    let on = |v: &u32| flag[*v as usize];
    Marked::new(
        (0..s.vertex_count() as u32).filter(on).collect(),
        s.edges().iter().filter(|e| e.iter().all(on)).copied().collect(),
        s.triangles().iter().filter(|t| t.iter().all(on)).copied().collect(),
    )
}

pub fn subdivide_times(s: &SurfaceComplex, times: usize) -> SurfaceComplex {
    let mut out = s.clone();
    for _ in 0..times {
        out = barycentric_subdivision(&out);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::{build, validate};

    #[test]
    fn counts_and_euler() {
        let s = build::octahedron();
        let sd = barycentric_subdivision(&s);
        assert_eq!(sd.triangles().len(), 6 * 8);
        assert_eq!(sd.vertex_count(), 6 + 12 + 8);
        assert_eq!(sd.euler_characteristic(), 2);
        assert!(validate(&sd).is_empty());
    }

    #[test]
    fn marked_edge_becomes_full() {
        let disk = build::grid(3, 3, build::Wrap::None, build::Wrap::None);
        let s = disk.with_marked(Marked::closure(&[], &[[5, 6]], &[]));
        let sd = barycentric_subdivision(&s);
        assert_eq!(sd.marked().vertices.len(), 3);
        assert_eq!(sd.marked().edges.len(), 2);
        assert!(sd.marked_is_full());
        assert!(validate(&sd).is_empty());
    }
}
