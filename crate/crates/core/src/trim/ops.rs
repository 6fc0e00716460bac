//! The three trimming moves.

use std::collections::HashSet;

use crate::surface::{CurveKind, RelativeCurve, SurfaceComplex};

use super::TrimError;

/// Removes the open star of `z`. The closed star must avoid L and the
/// boundary; the result then has one more boundary circle, the link of `z`.
pub fn remove_disk(s: &SurfaceComplex, z: u32) -> Result<SurfaceComplex, TrimError> {
    if z as usize >= s.vertex_count() {
        return Err(TrimError::BadWitness(format!("vertex {z} does not exist")));
    }
    let boundary = s.boundary_vertices();
    let neighbours = &s.vertex_neighbours()[z as usize];
    let star = std::iter::once(&z).chain(neighbours);
    for &v in star.clone() {
        if s.in_l(v) {
            return Err(TrimError::BadWitness(format!("closed star of vertex {z} meets L at vertex {v}")));
        }
    }
    for &v in star {
        if boundary[v as usize] {
            return Err(TrimError::BadWitness(format!("closed star of vertex {z} meets the boundary at vertex {v}")));
        }
    }
    let keep: Vec<bool> = s.triangles().iter().map(|t| !t.contains(&z)).collect();
    Ok(s.restrict_triangles(&keep))
}

/// Cuts `s` open along the curve. For an arc this is the same as removing an
/// open strip around it. For a doubled closed curve the cut runs along the
/// loop and its tether; what is removed differs from the strip along the
/// doubled arc only by a collar on the far side of the loop, so the results
/// are homeomorphic.
pub fn cut_strip(s: &SurfaceComplex, curve: &RelativeCurve) -> Result<SurfaceComplex, TrimError> {
    check_curve(s, curve)?;
    let support: HashSet<u32> = curve.support(s).into_iter().collect();
    Ok(cut_along(s, &support))
}

fn check_curve(s: &SurfaceComplex, curve: &RelativeCurve) -> Result<(), TrimError> {
    let bad = |msg: String| Err(TrimError::BadWitness(msg));
    let walk = &curve.vertices;
    if walk.len() < 2 {
        return bad("curve has fewer than two vertices".into());
    }
    if let Some(&v) = walk.iter().find(|&&v| v as usize >= s.vertex_count()) {
        return bad(format!("curve uses missing vertex {v}"));
    }
    if let Some(&v) = walk.iter().find(|&&v| s.in_l(v)) {
        return bad(format!("strip touches L at vertex {v}"));
    }
    for w in walk.windows(2) {
        match s.edge_id(w[0], w[1]) {
            None => return bad(format!("curve steps along a missing edge [{}, {}]", w[0], w[1])),
            Some(e) if s.is_boundary_edge(e) => {
                return bad(format!("curve runs along boundary edge [{}, {}]", w[0], w[1]))
            }
            Some(_) => {}
        }
    }
    let boundary = s.boundary_vertices();
    let (first, last) = (walk[0], walk[walk.len() - 1]);
    if !boundary[first as usize] || !boundary[last as usize] {
        return bad("curve does not end on the boundary".into());
    }
    if let Some(&v) = walk[1..walk.len() - 1].iter().find(|&&v| boundary[v as usize]) {
        return bad(format!("curve meets the boundary at interior vertex {v}"));
    }
    match curve.kind {
        CurveKind::BoundaryArc => {
            let distinct: HashSet<u32> = walk.iter().copied().collect();
            if distinct.len() != walk.len() {
                return bad("arc is not vertex-simple".into());
            }
        }
        CurveKind::DoubledClosedCurve => {
            // tether out, loop, tether back: a palindrome apart from the loop.
            if first != last {
                return bad("doubled curve must return to its starting vertex".into());
            }
            let mut k = 0;
            while k + 1 < walk.len() - 1 - k && walk[k + 1] == walk[walk.len() - 2 - k] {
                k += 1;
            }
            let loop_part = &walk[k..walk.len() - k];
            let inner: HashSet<u32> = loop_part[..loop_part.len() - 1].iter().copied().collect();
            let tether: HashSet<u32> = walk[..k].iter().copied().collect();
            if loop_part.len() < 4 || inner.len() != loop_part.len() - 1 || tether.len() != k || tether.iter().any(|v| inner.contains(v)) {
                return bad("doubled curve is not a simple loop on a simple tether".into());
            }
        }
    }
    Ok(())
}

/// Cuts along a set of edges: each vertex on a cut edge is replaced by one
/// copy per sector of its star, sectors being separated by cut edges. The
/// first sector (lowest triangle) keeps the vertex id, further sectors get
/// new ids appended in vertex order.
pub(crate) fn cut_along(s: &SurfaceComplex, cut: &HashSet<u32>) -> SurfaceComplex {
    let mut on_cut = vec![false; s.vertex_count()];
    for &e in cut {
        for &v in &s.edges()[e as usize] {
            on_cut[v as usize] = true;
        }
    }
    let stars = s.vertex_triangles();
    let mut triangles = s.triangles().to_vec();
    let mut next = s.vertex_count() as u32;
    for v in 0..s.vertex_count() as u32 {
        if !on_cut[v as usize] {
            continue;
        }
        let star = &stars[v as usize];
        // Union triangles of the star across uncut edges at v.
        let mut sector: Vec<usize> = (0..star.len()).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        for i in 0..star.len() {
            for j in i + 1..star.len() {
                let (ti, tj) = (s.triangles()[star[i] as usize], s.triangles()[star[j] as usize]);
                let shared = ti.iter().find(|&&x| x != v && tj.contains(&x));
                if let Some(&w) = shared {
                    let e = s.edge_id(v, w).expect("shared edge");
                    if !cut.contains(&e) {
                        let (a, b) = (find(&mut sector, i), find(&mut sector, j));
                        sector[a.max(b)] = a.min(b);
                    }
                }
            }
        }
        let mut copy_of_root: Vec<Option<u32>> = vec![None; star.len()];
        for i in 0..star.len() {
            let r = find(&mut sector, i);
            let id = *copy_of_root[r].get_or_insert_with(|| {
                if r == 0 {
                    v
                } else {
                    next += 1;
                    next - 1
                }
            });
            let t = &mut triangles[star[i] as usize];
            for x in t.iter_mut() {
                if *x == v {
                    *x = id;
                }
            }
        }
    }
    SurfaceComplex::new(next as usize, triangles, s.marked().clone())
}

/// Removes the connected component containing vertex `v`.
pub fn remove_component(s: &SurfaceComplex, v: u32) -> SurfaceComplex {
    let (labels, _) = s.components();
    let target = labels[v as usize];
    let keep: Vec<bool> = s.triangles().iter().map(|t| labels[t[0] as usize] != target).collect();
    s.restrict_triangles(&keep)
}

/// Lowest vertex of each component that contains no vertex of L.
pub fn components_missing_marked(s: &SurfaceComplex) -> Vec<u32> {
    let (labels, count) = s.components();
    let mut meets = vec![false; count];
    let mut lowest = vec![u32::MAX; count];
    for v in 0..s.vertex_count() {
        let l = labels[v] as usize;
        lowest[l] = lowest[l].min(v as u32);
        if s.in_l(v as u32) {
            meets[l] = true;
        }
    }
    (0..count).filter(|&l| !meets[l]).map(|l| lowest[l]).collect()
}

/// Keeps exactly the components that meet L.
pub fn discard_components(s: &SurfaceComplex) -> SurfaceComplex {
    let (labels, count) = s.components();
    let mut meets = vec![false; count];
    for v in 0..s.vertex_count() {
        if s.in_l(v as u32) {
            meets[labels[v] as usize] = true;
        }
    }
    let keep: Vec<bool> = s.triangles().iter().map(|t| meets[labels[t[0] as usize] as usize]).collect();
    s.restrict_triangles(&keep)
}
