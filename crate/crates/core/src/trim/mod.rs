//! Trimming a surface down to a regular frame of its marked subcomplex.
//!
//! Three moves are available: removing a small disk from a complement
//! component that misses the boundary (R0), cutting along a relative curve
//! (R1), and discarding components that miss L (R2). Each R0 lowers `r0` by
//! one, each R1 taken at `r0 = 0` lowers `r1` by one, and R2 clears `r2`, so
//! the ranks of the pair `(S - L, dS)` bound the number of moves.

mod ops;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::surface::{
    complement_complex, find_isolated_component, find_relative_curve, relative_betti, require_valid, subdivide_times,
    Complement, ComplementComponent, RelativeCurve, RelativeRanks, SurfaceComplex, SurfaceError, Violation,
};

pub use ops::{components_missing_marked, cut_strip, discard_components, remove_component, remove_disk};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum TrimError {
    #[error("invalid surface: {0:?}")]
    Invalid(Vec<Violation>),
    #[error("bad witness: {0}")]
    BadWitness(String),
    #[error("no relative curve found while r1 = {0}")]
    NoCurve(usize),
    #[error("{kind:?} step took ranks {before} to {after}")]
    StepLaw { kind: StepKind, before: RelativeRanks, after: RelativeRanks },
    #[error("frame certificate failed: {0}")]
    Certificate(String),
}

impl From<SurfaceError> for TrimError {
    fn from(e: SurfaceError) -> Self {
        match e {
            SurfaceError::Invalid(v) => TrimError::Invalid(v),
            SurfaceError::NoCurve => TrimError::NoCurve(0),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum StepKind {
    R0,
    R1,
    R2,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Witness {
    /// Centre of the removed disk.
    Vertex(u32),
    Curve(RelativeCurve),
    /// Lowest vertex of the discarded component.
    Component(u32),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TrimStep {
    pub kind: StepKind,
    pub witness: Witness,
    pub ranks_before: RelativeRanks,
    pub ranks_after: RelativeRanks,
    /// Whether the ranks fit the exact sequence of the pair `(S, S')` with the
    /// removed piece (a disk for R0, a strip for R1).
    pub mayer_vietoris: bool,
    /// The complex after this step, when snapshots were requested.
    #[serde(skip)]
    pub snapshot: Option<SurfaceComplex>,
}

/// Evidence that every component of `P - L` is a once-punctured disk.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrameCertificate {
    pub components: Vec<ComplementComponent>,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TrimReport {
    pub initial_ranks: RelativeRanks,
    /// Barycentric subdivisions applied before the first move.
    pub subdivisions: usize,
    pub steps: Vec<TrimStep>,
    pub final_ranks: RelativeRanks,
    pub certificate: FrameCertificate,
    #[serde(serialize_with = "as_file", deserialize_with = "from_file")]
    pub result: SurfaceComplex,
}

fn as_file<S: Serializer>(s: &SurfaceComplex, ser: S) -> Result<S::Ok, S::Error> {
    s.to_file().serialize(ser)
}

fn from_file<'de, D: Deserializer<'de>>(de: D) -> Result<SurfaceComplex, D::Error> {
    crate::surface::ComplexFile::deserialize(de).map(SurfaceComplex::from_file)
}

impl TrimReport {
    pub fn count(&self, kind: StepKind) -> usize {
        self.steps.iter().filter(|s| s.kind == kind).count()
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct TrimOptions {
    pub keep_snapshots: bool,
}

/// Ranks of the complement change across one move by removing a piece `E`
/// with the given Betti numbers relative to its attaching part. Checks the
/// Euler count and that each rank can move only by what `E` contributes.
fn mayer_vietoris(before: RelativeRanks, after: RelativeRanks, piece: [usize; 3]) -> bool {
    let b = before.as_array().map(|x| x as i64);
    let a = after.as_array().map(|x| x as i64);
    let e = piece.map(|x| x as i64);
    let chi_e = e[0] - e[1] + e[2];
    if after.alternating_sum() - before.alternating_sum() != -chi_e {
        return false;
    }
    (0..3).all(|k| b[k] <= e[k] + a[k] && a[k] <= b[k] + if k > 0 { e[k - 1] } else { 0 })
}

/// Runs R0 until `r0 = 0`, R1 until `r1 = 0`, then R2 on every component
/// that misses L. Every step is checked against its rank law by recomputing
/// the ranks, and the result is checked to be a frame.
pub fn trim(s: &SurfaceComplex, options: TrimOptions) -> Result<TrimReport, TrimError> {
    require_valid(s)?;
    let initial = relative_betti(s);
    let mut steps = Vec::new();
    let (mut current, subdivisions) =
        if initial.r0 == 0 && initial.r1 == 0 { (s.clone(), 0) } else { (subdivide_times(s, 2), 2) };
    let mut ranks = initial;

    let record = |steps: &mut Vec<TrimStep>, kind, witness, before, after: RelativeRanks, mv, next: &SurfaceComplex| {
        steps.push(TrimStep {
            kind,
            witness,
            ranks_before: before,
            ranks_after: after,
            mayer_vietoris: mv,
            snapshot: options.keep_snapshots.then(|| next.clone()),
        });
    };

    while ranks.r0 > 0 {
        let c = Complement::of_full(&current);
        let z = find_isolated_component(&c)
            .ok_or_else(|| TrimError::BadWitness(format!("no isolated component while r0 = {}", ranks.r0)))?;
        let next = remove_disk(&current, z)?;
        let after = Complement::of_full(&next).ranks();
        let expected = RelativeRanks::new(ranks.r0 - 1, ranks.r1, ranks.r2);
        if after != expected {
            return Err(TrimError::StepLaw { kind: StepKind::R0, before: ranks, after });
        }
        let mv = mayer_vietoris(ranks, after, [1, 0, 0]);
        record(&mut steps, StepKind::R0, Witness::Vertex(z), ranks, after, mv, &next);
        current = next;
        ranks = after;
    }

    while ranks.r1 > 0 {
        let c = Complement::of_full(&current);
        let curve = find_relative_curve(&c).map_err(|e| match e {
            SurfaceError::NoCurve => TrimError::NoCurve(ranks.r1),
            other => other.into(),
        })?;
        let next = cut_strip(&current, &curve)?;
        let after = Complement::of_full(&next).ranks();
        let expected = RelativeRanks::new(0, ranks.r1 - 1, ranks.r2);
        if after != expected {
            return Err(TrimError::StepLaw { kind: StepKind::R1, before: ranks, after });
        }
        let mv = mayer_vietoris(ranks, after, [0, 1, 0]);
        record(&mut steps, StepKind::R1, Witness::Curve(curve), ranks, after, mv, &next);
        current = next;
        ranks = after;
    }

    let ranks_of = |x: &SurfaceComplex| if subdivisions > 0 { Complement::of_full(x).ranks() } else { relative_betti(x) };
    for v in components_missing_marked(&current).into_iter().rev() {
        // Highest first, so lower vertex ids are not renumbered underneath us.
        let next = remove_component(&current, v);
        let after = ranks_of(&next);
        let expected = RelativeRanks::new(ranks.r0, ranks.r1, ranks.r2.saturating_sub(1));
        if after != expected {
            return Err(TrimError::StepLaw { kind: StepKind::R2, before: ranks, after });
        }
        record(&mut steps, StepKind::R2, Witness::Component(v), ranks, after, true, &next);
        current = next;
        ranks = after;
    }

    if !ranks.is_zero() {
        return Err(TrimError::Certificate(format!("final ranks are {ranks}")));
    }
    let certificate = frame_certificate(&current);
    if !certificate.holds {
        return Err(TrimError::Certificate("a component of P - L is not a once-punctured disk".into()));
    }
    Ok(TrimReport { initial_ranks: initial, subdivisions, steps, final_ranks: ranks, certificate, result: current })
}

/// Checks that every component of `P - L` is a once-punctured disk: Euler
/// characteristic 0 with exactly one boundary circle of `P`.
pub fn frame_certificate(p: &SurfaceComplex) -> FrameCertificate {
    let c = if p.marked_is_full() { Complement::of_full(p) } else { complement_complex(p) };
    let components = c.components();
    let holds = components.iter().all(|k| k.euler == 0 && k.boundary_circles == 1);
    FrameCertificate { components, holds }
}
