//! The complement of L as a subcomplex, and the relative ranks it carries.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::chains::{pair_ranks, Cells};
use super::complex::{SurfaceComplex, UnionFind};
use super::subdivide::subdivide_times;

/// `(r0, r1, r2)`: the GF(2) ranks of `H_i(S - L, dS)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RelativeRanks {
    pub r0: usize,
    pub r1: usize,
    pub r2: usize,
}

impl RelativeRanks {
    pub fn new(r0: usize, r1: usize, r2: usize) -> Self {
        RelativeRanks { r0, r1, r2 }
    }

    pub fn is_zero(&self) -> bool {
        self.r0 == 0 && self.r1 == 0 && self.r2 == 0
    }

    pub fn as_array(&self) -> [usize; 3] {
        [self.r0, self.r1, self.r2]
    }

    /// r0 - r1 + r2.
    pub fn alternating_sum(&self) -> i64 {
        self.r0 as i64 - self.r1 as i64 + self.r2 as i64
    }
}

impl fmt::Display for RelativeRanks {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.r0, self.r1, self.r2)
    }
}

/// The full subcomplex `C` of an ambient complex spanned by the vertices not
/// in L, together with the part of the ambient boundary it contains.
///
/// When L is a full subcomplex of the ambient complex, `C` is a deformation
/// retract of `S - L` and the pair `(C, dS)` computes `H_*(S - L, dS)`.
#[derive(Clone, Debug)]
pub struct Complement {
    ambient: SurfaceComplex,
    cells: Cells,
    boundary: Cells,
}

/// One connected component of a [`Complement`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplementComponent {
    pub lowest_vertex: u32,
    pub vertex_count: usize,
    pub euler: i64,
    /// Number of boundary circles of the ambient surface inside this component.
    pub boundary_circles: usize,
}

impl ComplementComponent {
    pub fn meets_boundary(&self) -> bool {
        self.boundary_circles > 0
    }
}

impl Complement {
    /// Uses `s` as the ambient complex directly. Only meaningful when L is
    /// full in `s` (always true after one barycentric subdivision).
    pub fn of_full(s: &SurfaceComplex) -> Self {
        let outside: Vec<bool> = (0..s.vertex_count() as u32).map(|v| !s.in_l(v)).collect();
        let cells = Cells::spanned_by(s, outside);
        let boundary = Cells::boundary(s).intersect(&cells);
        Complement { ambient: s.clone(), cells, boundary }
    }

    pub fn ambient(&self) -> &SurfaceComplex {
        &self.ambient
    }

    pub fn cells(&self) -> &Cells {
        &self.cells
    }

    /// The boundary of the ambient surface, intersected with `C`.
    pub fn boundary_portion(&self) -> &Cells {
        &self.boundary
    }

    pub fn contains_vertex(&self, v: u32) -> bool {
        self.cells.vertices[v as usize]
    }

    pub fn ranks(&self) -> RelativeRanks {
        let [r0, r1, r2] = pair_ranks(&self.ambient, &self.cells, &self.boundary);
        RelativeRanks { r0, r1, r2 }
    }

    pub fn euler_characteristic(&self) -> i64 {
        let count = |flags: &[bool]| flags.iter().filter(|&&b| b).count() as i64;
        count(&self.cells.vertices) - count(&self.cells.edges) + count(&self.cells.triangles)
    }

    /// Component label per ambient vertex (`u32::MAX` outside `C`), with
    /// labels numbered by lowest vertex.
    pub fn component_labels(&self) -> (Vec<u32>, usize) {
        let s = &self.ambient;
        let mut uf = UnionFind::new(s.vertex_count());
        for (i, e) in s.edges().iter().enumerate() {
            if self.cells.edges[i] {
                uf.union(e[0] as usize, e[1] as usize);
            }
        }
        let mut label_of_root = vec![u32::MAX; s.vertex_count()];
        let mut labels = vec![u32::MAX; s.vertex_count()];
        let mut next = 0u32;
        for v in 0..s.vertex_count() {
            if !self.cells.vertices[v] {
                continue;
            }
            let r = uf.find(v);
            if label_of_root[r] == u32::MAX {
                label_of_root[r] = next;
                next += 1;
            }
            labels[v] = label_of_root[r];
        }
        (labels, next as usize)
    }

    pub fn components(&self) -> Vec<ComplementComponent> {
        let s = &self.ambient;
        let (labels, count) = self.component_labels();
        let mut out: Vec<ComplementComponent> = (0..count)
            .map(|_| ComplementComponent { lowest_vertex: u32::MAX, vertex_count: 0, euler: 0, boundary_circles: 0 })
            .collect();
        for v in 0..s.vertex_count() {
            let l = labels[v];
            if l != u32::MAX {
                let c = &mut out[l as usize];
                c.lowest_vertex = c.lowest_vertex.min(v as u32);
                c.vertex_count += 1;
                c.euler += 1;
            }
        }
        for (i, e) in s.edges().iter().enumerate() {
            if self.cells.edges[i] {
                out[labels[e[0] as usize] as usize].euler -= 1;
            }
        }
        for (i, t) in s.triangles().iter().enumerate() {
            if self.cells.triangles[i] {
                out[labels[t[0] as usize] as usize].euler += 1;
            }
        }
        // Boundary circles: components of the boundary graph inside C.
        let mut uf = UnionFind::new(s.vertex_count());
        for (i, e) in s.edges().iter().enumerate() {
            if self.boundary.edges[i] {
                uf.union(e[0] as usize, e[1] as usize);
            }
        }
        let mut counted = vec![false; s.vertex_count()];
        for v in 0..s.vertex_count() {
            if self.boundary.vertices[v] {
                let r = uf.find(v);
                if !counted[r] {
                    counted[r] = true;
                    out[labels[v] as usize].boundary_circles += 1;
                }
            }
        }
        out
    }
}

/// The complement of L after two barycentric subdivisions of `s`.
pub fn complement_complex(s: &SurfaceComplex) -> Complement {
    Complement::of_full(&subdivide_times(s, 2))
}

/// `(r0, r1, r2)` with `r_i = rank H_i(S - L, dS; Z2)`, computed on the
/// complement after two subdivisions.
pub fn relative_betti(s: &SurfaceComplex) -> RelativeRanks {
    complement_complex(s).ranks()
}

/// The same ranks by duality, `r_i = rank H_{2-i}(S, L; Z2)`, computed on `s`
/// itself with no subdivision.
pub fn duality_ranks(s: &SurfaceComplex) -> RelativeRanks {
    let [h0, h1, h2] = super::chains::pair_homology_with_marked(s);
    RelativeRanks { r0: h2, r1: h1, r2: h0 }
}
