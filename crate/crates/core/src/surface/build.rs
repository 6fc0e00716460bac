//! Ready-made triangulations: grids with optional gluing, the octahedron,
//! the seven-vertex torus, and marking helpers.

use rand::Rng;

use super::complex::{Marked, SurfaceComplex, Tri};

/// How the two opposite sides of a grid are glued.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Wrap {
    /// Left open; the sides become boundary.
    None,
    /// Glued straight across.
    Periodic,
    /// Glued with a reflection of the other coordinate.
    Flipped,
}

/// A grid of `nx * ny` squares, each split into two triangles. Wrapping `x`
/// and `y` gives the disk, annulus, Moebius band, torus and Klein bottle.
///
/// Vertex `(i, j)` has index `j * columns + i`, where `columns` is `nx` if
/// the x sides are glued and `nx + 1` otherwise. Wrapped directions need at
/// least three squares to stay simplicial; `y` cannot be flipped.
pub fn grid(nx: usize, ny: usize, wrap_x: Wrap, wrap_y: Wrap) -> SurfaceComplex {
    assert!(nx >= 1 && ny >= 1, "empty grid");
    assert!(wrap_y != Wrap::Flipped, "flip the x direction instead");
    assert!(wrap_x == Wrap::None || nx >= 3, "wrapped direction needs three squares");
    assert!(wrap_y == Wrap::None || ny >= 3, "wrapped direction needs three squares");
    let cols = if wrap_x == Wrap::None { nx + 1 } else { nx };
    let rows = if wrap_y == Wrap::None { ny + 1 } else { ny };
    let vid = |i: usize, j: usize| -> u32 {
        let mut j = j;
        if wrap_y == Wrap::Periodic && j == ny {
            j = 0;
        }
        let (i, j) = match wrap_x {
            Wrap::None => (i, j),
            Wrap::Periodic => (i % nx, j),
            Wrap::Flipped if i == nx => {
                let flipped = if wrap_y == Wrap::Periodic { (ny - j) % ny } else { ny - j };
                (0, flipped)
            }
            Wrap::Flipped => (i, j),
        };
        (j * cols + i) as u32
    };
    let mut triangles: Vec<Tri> = Vec::with_capacity(2 * nx * ny);
    for j in 0..ny {
        for i in 0..nx {
            let (a, b, c, d) = (vid(i, j), vid(i + 1, j), vid(i + 1, j + 1), vid(i, j + 1));
            triangles.push([a, b, c]);
            triangles.push([a, c, d]);
        }
    }
    SurfaceComplex::new(cols * rows, triangles, Marked::default())
}

/// Index of grid vertex `(i, j)` in [`grid`] with the given gluing.
pub fn grid_vertex(nx: usize, wrap_x: Wrap, i: usize, j: usize) -> u32 {
    let cols = if wrap_x == Wrap::None { nx + 1 } else { nx };
    (j * cols + i) as u32
}

/// The two triangles of grid square `(i, j)`, as triangle indices.
pub fn grid_square(nx: usize, i: usize, j: usize) -> [usize; 2] {
    let k = 2 * (j * nx + i);
    [k, k + 1]
}

/// The boundary of the octahedron: a sphere with 6 vertices and 8 triangles.
pub fn octahedron() -> SurfaceComplex {
    let triangles = vec![
        [4, 0, 2],
        [4, 2, 1],
        [4, 1, 3],
        [4, 3, 0],
        [5, 2, 0],
        [5, 1, 2],
        [5, 3, 1],
        [5, 0, 3],
    ];
    SurfaceComplex::new(6, triangles, Marked::default())
}

/// The minimal torus: 7 vertices, 21 edges, 14 triangles.
pub fn seven_vertex_torus() -> SurfaceComplex {
    let mut triangles = Vec::new();
    for i in 0..7u32 {
        triangles.push([i, (i + 1) % 7, (i + 3) % 7]);
        triangles.push([i, (i + 2) % 7, (i + 3) % 7]);
    }
    SurfaceComplex::new(7, triangles, Marked::default())
}

/// Marks the closure of the given triangles (by index) together with the
/// extra vertices.
pub fn mark_triangles(s: &SurfaceComplex, triangles: &[usize], vertices: &[u32]) -> SurfaceComplex {
    let tris: Vec<Tri> = triangles.iter().map(|&t| s.triangles()[t]).collect();
    s.with_marked(Marked::closure(vertices, &[], &tris))
}

/// An annulus with a thin marked annulus inside it that encloses a region of
/// its own: the set-up of the worked trimming example.
///
/// The surface is a 9 x 9 grid with square (1, 1) removed, giving an
/// outer and an inner boundary circle. L is the ring of twelve squares
/// around the 2 x 2 block of squares `(5..7, 5..7)`, which is the enclosed
/// region.
pub fn enclosed_region_example() -> SurfaceComplex {
    let n = 9;
    let full = grid(n, n, Wrap::None, Wrap::None);
    let mut keep = vec![true; full.triangles().len()];
    for t in grid_square(n, 1, 1) {
        keep[t] = false;
    }
    let mut ring = Vec::new();
    for j in 4..8 {
        for i in 4..8 {
            let inside = (5..7).contains(&i) && (5..7).contains(&j);
            if !inside {
                ring.extend(grid_square(n, i, j));
            }
        }
    }
    let marked = mark_triangles(&full, &ring, &[]);
    marked.restrict_triangles(&keep)
}

/// A random valid surface with a random marked subcomplex, at most
/// `max_triangles` triangles in total.
///
/// The surface is a disjoint union of one to three pieces drawn from glued
/// grids, the octahedron and the seven-vertex torus. L is the closure of a
/// few random interior triangles, edges and vertices, and may be empty.
pub fn random_instance<R: Rng + ?Sized>(rng: &mut R, max_triangles: usize) -> SurfaceComplex {
    assert!(max_triangles >= 14, "room for at least one piece");
    let pieces = rng.gen_range(1..=3);
    let mut s = random_piece(rng, max_triangles);
    for _ in 1..pieces {
        let room = max_triangles - s.triangles().len();
        if room < 14 {
            break;
        }
        s = s.disjoint_union(&random_piece(rng, room));
    }
    let boundary = s.boundary_vertices();
    let interior = |v: &u32| !boundary[*v as usize];
    let tris: Vec<Tri> = s.triangles().iter().copied().filter(|t| t.iter().all(interior)).collect();
    let edges: Vec<[u32; 2]> = s.edges().iter().copied().filter(|e| e.iter().all(interior)).collect();
    let verts: Vec<u32> = (0..s.vertex_count() as u32).filter(interior).collect();
    let pick = |rng: &mut R, n: usize, most: usize| if n == 0 { 0 } else { rng.gen_range(0..=most.min(n)) };
    let chosen_t: Vec<Tri> = (0..pick(rng, tris.len(), 4)).map(|_| tris[rng.gen_range(0..tris.len())]).collect();
    let chosen_e: Vec<[u32; 2]> = (0..pick(rng, edges.len(), 6)).map(|_| edges[rng.gen_range(0..edges.len())]).collect();
    let chosen_v: Vec<u32> = (0..pick(rng, verts.len(), 3)).map(|_| verts[rng.gen_range(0..verts.len())]).collect();
    s.with_marked(Marked::closure(&chosen_v, &chosen_e, &chosen_t))
}

fn random_piece<R: Rng + ?Sized>(rng: &mut R, max_triangles: usize) -> SurfaceComplex {
    loop {
        match rng.gen_range(0..5) {
            0 if max_triangles >= 8 => return octahedron(),
            1 if max_triangles >= 14 => return seven_vertex_torus(),
            _ => {
                let wx = [Wrap::None, Wrap::Periodic, Wrap::Flipped][rng.gen_range(0..3)];
                let wy = [Wrap::None, Wrap::Periodic][rng.gen_range(0..2)];
                let nx = rng.gen_range(3..=10);
                let ny = rng.gen_range(3..=10);
                if 2 * nx * ny <= max_triangles {
                    return grid(nx, ny, wx, wy);
                }
            }
        }
    }
}
