//! An independent route to `H_1` after a programme: build a CW complex with
//! one vertex per starting component, a loop per starting generator, an edge
//! per 1-handle and a 2-cell per relation or 2-handle, then read `H_1` off
//! the Smith forms of its boundary maps.
//!
//! Nothing here uses the incremental generator bookkeeping; t-curves are
//! followed as cellular 1-cycles.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::homology::{smith_normal_form, AbelianGroup, IntMatrix};

use super::attach::fresh_name;
use super::manifold::ColouredManifold;
use super::programme::{HandleProgramme, Step};
use super::CalculusError;

/// Invariant factors of a finitely generated abelian group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct HomologyInvariants {
    /// Torsion factors greater than one, each dividing the next.
    pub torsion: Vec<String>,
    pub free_rank: usize,
}

impl From<&AbelianGroup> for HomologyInvariants {
    fn from(g: &AbelianGroup) -> Self {
        HomologyInvariants { torsion: g.torsion().iter().map(BigInt::to_string).collect(), free_rank: g.free_rank() }
    }
}

struct Cycle {
    id: String,
    chain: Vec<i64>,
    anchor: usize,
}

/// `H_1` of the manifold reached by running `programme` on `base`, computed
/// on a cell model. Order violations are not checked here.
pub fn cw_model_homology(base: &ColouredManifold, programme: &HandleProgramme) -> Result<HomologyInvariants, CalculusError> {
    let vertex: HashMap<usize, usize> = base.components().into_iter().enumerate().map(|(i, c)| (c, i)).collect();
    let mut edges: Vec<[usize; 2]> = base.generators().iter().map(|g| [vertex[&g.component]; 2]).collect();
    let mut cells: Vec<Vec<i64>> = base.relations().to_vec();
    let mut curves: Vec<Cycle> = base
        .t_curves()
        .iter()
        .map(|t| Cycle { id: t.id.clone(), chain: t.class.clone(), anchor: vertex[&t.component] })
        .collect();

    let find = |curves: &[Cycle], id: &str| {
        curves.iter().position(|c| c.id == id).ok_or_else(|| CalculusError::UnknownCurve(id.to_string()))
    };
    for step in &programme.steps {
        match step {
            Step::Attach1 { feet: [a, b] } => {
                let (ia, ib) = (find(&curves, a)?, find(&curves, b)?);
                edges.push([curves[ia].anchor, curves[ib].anchor]);
                let e = edges.len() - 1;
                for c in curves.iter_mut() {
                    c.chain.push(0);
                }
                for cell in cells.iter_mut() {
                    cell.push(0);
                }
                if ia != ib {
                    // Out along one curve, over the handle, round the other and back.
                    let chain = curves[ia].chain.iter().zip(&curves[ib].chain).map(|(x, y)| x + y).collect();
                    let id = fresh_name(format!("{a}+{b}"), |n| curves.iter().any(|c| c.id == n));
                    let anchor = curves[ia].anchor;
                    let at = ia.min(ib);
                    curves.retain(|c| c.id != *a && c.id != *b);
                    curves.insert(at, Cycle { id, chain, anchor });
                } else {
                    // The handle is a loop at the curve's anchor; one new curve
                    // runs along it, the other is what remains.
                    let mut first = vec![0; edges.len()];
                    first[e] = 1;
                    let second = curves[ia].chain.iter().zip(&first).map(|(x, y)| x - y).collect();
                    let anchor = curves[ia].anchor;
                    let id1 = fresh_name(format!("{a}.1"), |n| curves.iter().any(|c| c.id == n));
                    let id2 = fresh_name(format!("{a}.2"), |n| curves.iter().any(|c| c.id == n) || n == id1);
                    curves.splice(ia..=ia, [Cycle { id: id1, chain: first, anchor }, Cycle { id: id2, chain: second, anchor }]);
                }
            }
            Step::Attach2 { curve } => {
                let i = find(&curves, curve)?;
                cells.push(curves.remove(i).chain);
            }
        }
    }

    let (nv, ne) = (vertex.len(), edges.len());
    let mut d1 = IntMatrix::zeros(nv, ne);
    for (j, &[u, v]) in edges.iter().enumerate() {
        if u != v {
            d1[(u, j)] -= BigInt::one();
            d1[(v, j)] += BigInt::one();
        }
    }
    let mut d2 = IntMatrix::zeros(ne, cells.len());
    for (j, cell) in cells.iter().enumerate() {
        for (i, &k) in cell.iter().enumerate() {
            d2[(i, j)] = BigInt::from(k);
        }
    }
    let snf1 = smith_normal_form(&d1);
    let snf2 = smith_normal_form(&d2);
    debug_assert!((&d1 * &d2).max_abs_entry().is_zero(), "2-cells are attached along cycles");
    let torsion = snf2.invariant_factors().into_iter().filter(|d| !d.is_one()).map(|d| d.to_string()).collect();
    Ok(HomologyInvariants { torsion, free_rank: ne - snf1.rank() - snf2.rank() })
}
