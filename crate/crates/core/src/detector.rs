//! Verdicts on whether a coloured manifold can be built from solid tori
//! around a knotted invariant set without further invariant structure.
//!
//! Two routes are offered. With a handle programme, the programme is run
//! and the classes of the core circles are inspected: a core that survives
//! contradicts contractibility, and cores that all die must each have a
//! parallel t-curve. With only a target colouring, the disk rule applies:
//! if every region of one colour is a disk or a sphere, only trivial links
//! can be pushed into that colour.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::calculus::{
    run_programme, CalculusError, ColouredManifold, Colour, GeneratorKind, HandleProgramme, ManifoldFile,
    ProgrammeError, RegionEntry,
};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Assertions {
    /// The invariant link is contractible in the manifold.
    #[serde(default)]
    pub contractible: bool,
    /// The invariant link is not the trivial link.
    #[serde(default)]
    pub nontrivial_link: bool,
}

/// The colouring of a manifold's boundary and what is known of its `H_1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TargetColouring {
    pub regions: Vec<RegionEntry>,
    #[serde(default)]
    pub h1_trivial: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub base: ManifoldFile,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub programme: Option<HandleProgramme>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<TargetColouring>,
    #[serde(default)]
    pub assertions: Assertions,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Scenario {
    pub base: ColouredManifold,
    pub programme: Option<HandleProgramme>,
    pub target: Option<TargetColouring>,
    pub assertions: Assertions,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum VerdictKind {
    Consistent,
    InconsistentContractibility,
    ForcedAdditionalStructure,
    Undecided,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoreClass {
    pub core: String,
    pub class: String,
    pub is_zero: bool,
}

/// A t-curve of the starting manifold parallel to a core, and the region it
/// can be pushed into.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParallelCurve {
    pub core: String,
    pub curve: String,
    pub region: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Evidence {
    pub rule: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub cores: Vec<CoreClass>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub homology: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub white_parallel: Vec<ParallelCurve>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub gray_parallel: Vec<ParallelCurve>,
    pub white_trivial_only: bool,
    pub gray_trivial_only: bool,
    pub assertions: Assertions,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub verdict: VerdictKind,
    pub evidence: Evidence,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum DetectorError {
    #[error("invalid scenario: {0}")]
    Invalid(String),
    #[error(transparent)]
    Calculus(#[from] CalculusError),
    #[error(transparent)]
    Programme(#[from] ProgrammeError),
    /// A consequence of the calculus failed to hold; this is a bug.
    #[error("internal check failed: {0}")]
    Internal(String),
}

impl Scenario {
    pub fn from_file(file: ScenarioFile) -> Result<Self, DetectorError> {
        let base = ColouredManifold::from_file(file.base)?;
        if file.programme.is_none() && file.target.is_none() {
            return Err(DetectorError::Invalid("needs a programme or a target".into()));
        }
        if !base.generators().iter().any(|g| g.kind == GeneratorKind::Core) {
            return Err(DetectorError::Invalid("base has no core generator".into()));
        }
        Ok(Scenario { base, programme: file.programme, target: file.target, assertions: file.assertions })
    }

    pub fn from_json(text: &str) -> Result<Self, DetectorError> {
        let file: ScenarioFile = serde_json::from_str(text).map_err(|e| DetectorError::Invalid(e.to_string()))?;
        Scenario::from_file(file)
    }
}

/// Runs whichever check the scenario supports; a programme takes precedence
/// over a target.
pub fn detect(scenario: &Scenario) -> Result<Verdict, DetectorError> {
    match (&scenario.programme, &scenario.target) {
        (Some(_), _) => check_programme(scenario),
        (None, Some(target)) => check_target(target, target.h1_trivial, scenario.assertions),
        (None, None) => Err(DetectorError::Invalid("needs a programme or a target".into())),
    }
}

/// Runs the programme and inspects the final classes of the core circles.
pub fn check_programme(scenario: &Scenario) -> Result<Verdict, DetectorError> {
    let programme = scenario.programme.as_ref().ok_or_else(|| DetectorError::Invalid("no programme".into()))?;
    let base = &scenario.base;
    let (m, _) = run_programme(base, programme)?;
    let group = m.homology();
    let cores: Vec<CoreClass> = base
        .generators()
        .iter()
        .enumerate()
        .filter(|(_, g)| g.kind == GeneratorKind::Core)
        .map(|(i, g)| {
            let e = group.generator_class(i);
            CoreClass { core: g.name.clone(), class: e.to_string(), is_zero: e.is_zero() }
        })
        .collect();
    let mut evidence = Evidence {
        cores,
        homology: Some(group.to_string()),
        white_trivial_only: m.white_link_trivial_only(),
        gray_trivial_only: m.gray_link_trivial_only(),
        assertions: scenario.assertions,
        ..Default::default()
    };
    let a = scenario.assertions;

    if evidence.cores.iter().any(|c| !c.is_zero) {
        let kind = if a.contractible {
            evidence.rule = "a core class is nonzero in the final manifold, so the link is not contractible".into();
            VerdictKind::InconsistentContractibility
        } else {
            evidence.rule = "a core class survives; no contractibility was asserted".into();
            VerdictKind::Consistent
        };
        return Ok(Verdict { verdict: kind, evidence });
    }

    for (i, g) in base.generators().iter().enumerate() {
        if g.kind != GeneratorKind::Core {
            continue;
        }
        let witness = base.t_curves().iter().find(|t| {
            t.component == g.component
                && t.class.iter().enumerate().all(|(j, &k)| if j == i { k.abs() == 1 } else { k == 0 })
        });
        let t = witness.ok_or_else(|| {
            DetectorError::Internal(format!("core {} dies but no t-curve of its torus has class +-{}", g.name, g.name))
        })?;
        evidence.white_parallel.push(ParallelCurve { core: g.name.clone(), curve: t.id.clone(), region: t.white.clone() });
        evidence.gray_parallel.push(ParallelCurve { core: g.name.clone(), curve: t.id.clone(), region: t.gray.clone() });
    }

    let kind = if a.nontrivial_link && (evidence.white_trivial_only || evidence.gray_trivial_only) {
        evidence.rule = format!(
            "every core dies and is parallel to a link in each colour, but all {} regions are disks or spheres",
            if evidence.white_trivial_only { "white" } else { "gray" }
        );
        VerdictKind::ForcedAdditionalStructure
    } else {
        evidence.rule = "every core dies and has a parallel t-curve; homology raises no objection".into();
        VerdictKind::Consistent
    };
    Ok(Verdict { verdict: kind, evidence })
}

/// Checks that a target colouring is a plausible region ledger: unique ids,
/// each region's Euler characteristic possible for its number of boundary
/// curves, and every curve between exactly one white and one gray region.
pub fn validate_target(target: &TargetColouring) -> Result<(), DetectorError> {
    let mut seen = std::collections::HashSet::new();
    let mut sides: BTreeMap<&str, [usize; 2]> = BTreeMap::new();
    for r in &target.regions {
        if !seen.insert(r.id.as_str()) {
            return Err(CalculusError::NameClash(r.id.clone()).into());
        }
        let b = r.boundary.len() as i64;
        if (r.euler - b).rem_euclid(2) != 0 || r.euler > 2 - b {
            return Err(CalculusError::BadEuler(format!("region {} has euler characteristic {} with {b} boundary curves", r.id, r.euler)).into());
        }
        for c in &r.boundary {
            sides.entry(c).or_default()[(r.colour == Colour::Gray) as usize] += 1;
        }
    }
    if let Some((c, _)) = sides.iter().find(|(_, n)| **n != [1, 1]) {
        return Err(CalculusError::BadLedger(format!("t-curve {c} must border one white and one gray region")).into());
    }
    Ok(())
}

/// The disk rule on a target colouring alone.
pub fn check_target(target: &TargetColouring, h1_trivial: bool, assertions: Assertions) -> Result<Verdict, DetectorError> {
    validate_target(target)?;
    let trivial = |colour: Colour| {
        target
            .regions
            .iter()
            .filter(|r| r.colour == colour)
            .all(|r| (r.euler == 1 && r.boundary.len() == 1) || (r.euler == 2 && r.boundary.is_empty()))
    };
    let mut evidence = Evidence {
        homology: h1_trivial.then(|| "0".to_string()),
        white_trivial_only: trivial(Colour::White),
        gray_trivial_only: trivial(Colour::Gray),
        assertions,
        ..Default::default()
    };
    let fires = assertions.nontrivial_link
        && assertions.contractible
        && (evidence.white_trivial_only || evidence.gray_trivial_only);
    let kind = if fires {
        evidence.rule = format!(
            "a nontrivial contractible link must be parallel to links in both colours, but all {} regions are disks or spheres",
            if evidence.white_trivial_only { "white" } else { "gray" }
        );
        VerdictKind::ForcedAdditionalStructure
    } else {
        evidence.rule = "the disk rule does not apply; no decision".into();
        VerdictKind::Undecided
    };
    Ok(Verdict { verdict: kind, evidence })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::build::{hourglass_torus, one_curve_torus};
    use crate::calculus::Step;

    fn scenario(base: ColouredManifold, steps: Vec<Step>, contractible: bool, nontrivial_link: bool) -> Scenario {
        Scenario {
            base,
            programme: Some(HandleProgramme::new(steps)),
            target: None,
            assertions: Assertions { contractible, nontrivial_link },
        }
    }

    #[test]
    fn one_curve_torus_cannot_be_contractible() {
        let s = scenario(one_curve_torus(), vec![Step::attach2("tau")], true, false);
        let v = detect(&s).unwrap();
        assert_eq!(v.verdict, VerdictKind::InconsistentContractibility);
        assert!(!v.evidence.cores[0].is_zero);
    }

    #[test]
    fn hourglass_with_a_knot_forces_more_structure() {
        let s = scenario(hourglass_torus(), vec![Step::attach2("tau_waist")], true, true);
        let v = detect(&s).unwrap();
        assert_eq!(v.verdict, VerdictKind::ForcedAdditionalStructure);
        assert_eq!(v.evidence.white_parallel[0].curve, "tau_waist");
        let unknot = scenario(hourglass_torus(), vec![Step::attach2("tau_waist")], true, false);
        assert_eq!(detect(&unknot).unwrap().verdict, VerdictKind::Consistent);
    }

    fn ball() -> TargetColouring {
        let region = |id: &str, colour| RegionEntry { id: id.into(), colour, euler: 1, boundary: vec!["tau".into()], component: None };
        TargetColouring { regions: vec![region("W", Colour::White), region("G", Colour::Gray)], h1_trivial: true }
    }

    #[test]
    fn target_rule() {
        let both = Assertions { contractible: true, nontrivial_link: true };
        assert_eq!(check_target(&ball(), true, both).unwrap().verdict, VerdictKind::ForcedAdditionalStructure);
        assert_eq!(check_target(&ball(), true, Assertions::default()).unwrap().verdict, VerdictKind::Undecided);
        let mut annulus = ball();
        annulus.regions[0].euler = 0;
        annulus.regions[0].boundary.push("sigma".into());
        annulus.regions[1].euler = 0;
        annulus.regions[1].boundary.push("sigma".into());
        assert_eq!(check_target(&annulus, false, both).unwrap().verdict, VerdictKind::Undecided);
    }

    #[test]
    fn scenarios_need_something_to_check() {
        let file = ScenarioFile { base: hourglass_torus().to_file(), programme: None, target: None, assertions: Assertions::default() };
        assert!(matches!(Scenario::from_file(file), Err(DetectorError::Invalid(_))));
    }
}
