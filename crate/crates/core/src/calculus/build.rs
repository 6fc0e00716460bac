//! Constructors: solid tori, blocks and disjoint unions.

use std::collections::{BTreeMap, HashSet};

use super::manifold::{ColouredManifold, CurveEntry, GeneratorEntry, GeneratorKind, ManifoldFile, RegionEntry};
use super::{CalculusError, Colour};

/// A t-curve as given to a constructor: class over the constructor's
/// generators and the two regions it separates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveSpec {
    pub id: String,
    pub class: BTreeMap<String, i64>,
    pub white: String,
    pub gray: String,
    pub component: usize,
}

impl CurveSpec {
    pub fn new(id: &str, class: &[(&str, i64)], white: &str, gray: &str) -> Self {
        CurveSpec {
            id: id.to_string(),
            class: class.iter().map(|&(g, k)| (g.to_string(), k)).collect(),
            white: white.to_string(),
            gray: gray.to_string(),
            component: 0,
        }
    }

    pub fn on_component(mut self, component: usize) -> Self {
        self.component = component;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegionSpec {
    pub id: String,
    pub colour: Colour,
    pub euler: i64,
    pub boundary: Vec<String>,
    pub component: Option<usize>,
}

impl RegionSpec {
    pub fn new(id: &str, colour: Colour, euler: i64, boundary: &[&str]) -> Self {
        RegionSpec {
            id: id.to_string(),
            colour,
            euler,
            boundary: boundary.iter().map(|s| s.to_string()).collect(),
            component: None,
        }
    }

    pub fn white(id: &str, euler: i64, boundary: &[&str]) -> Self {
        RegionSpec::new(id, Colour::White, euler, boundary)
    }

    pub fn gray(id: &str, euler: i64, boundary: &[&str]) -> Self {
        RegionSpec::new(id, Colour::Gray, euler, boundary)
    }

    pub fn on_component(mut self, component: usize) -> Self {
        self.component = Some(component);
        self
    }
}

fn file_from_specs(generators: Vec<GeneratorEntry>, curves: &[CurveSpec], regions: &[RegionSpec]) -> ManifoldFile {
    ManifoldFile {
        generators,
        relations: Vec::new(),
        t_curves: curves
            .iter()
            .map(|c| CurveEntry {
                id: c.id.clone(),
                class: c.class.clone(),
                component: c.component,
                white: c.white.clone(),
                gray: c.gray.clone(),
            })
            .collect(),
        regions: regions
            .iter()
            .map(|r| RegionEntry {
                id: r.id.clone(),
                colour: r.colour,
                euler: r.euler,
                boundary: r.boundary.clone(),
                component: r.component,
            })
            .collect(),
        history: Vec::new(),
    }
}

/// A coloured solid torus with core generator `core`.
///
/// Every nonzero t-curve class must be `k * core` with the same `|k|`
/// throughout, and the region Euler characteristics must add up to 0.
pub fn solid_torus(core: &str, curves: &[CurveSpec], regions: &[RegionSpec]) -> Result<ColouredManifold, CalculusError> {
    let mut multiple: Option<i64> = None;
    for c in curves {
        for (g, &k) in &c.class {
            if k == 0 {
                continue;
            }
            if g != core {
                return Err(CalculusError::TorusClassMismatch(format!("{} uses {g}, not the core {core}", c.id)));
            }
            let m = k.checked_abs().ok_or(CalculusError::Overflow)?;
            match multiple {
                Some(prev) if prev != m => {
                    return Err(CalculusError::TorusClassMismatch(format!(
                        "{} has class {k}*{core} but another curve has multiple {prev}",
                        c.id
                    )))
                }
                _ => multiple = Some(m),
            }
        }
    }
    let chi: i64 = regions.iter().map(|r| r.euler).sum();
    if chi != 0 {
        return Err(CalculusError::BadEuler(format!("torus boundary needs euler characteristic 0, regions give {chi}")));
    }
    let curves: Vec<CurveSpec> = curves.iter().cloned().map(|c| c.on_component(0)).collect();
    let regions: Vec<RegionSpec> = regions.iter().cloned().map(|r| r.on_component(0)).collect();
    let core = GeneratorEntry { name: core.to_string(), kind: GeneratorKind::Core, component: Some(0) };
    ColouredManifold::from_file(file_from_specs(vec![core], &curves, &regions))
}

/// A block whose `H_1` is free of rank `free_rank`, with generators named
/// `b1, b2, ...`. Classes may be any combination of these.
pub fn block(free_rank: usize, curves: &[CurveSpec], regions: &[RegionSpec]) -> Result<ColouredManifold, CalculusError> {
    let generators = (1..=free_rank)
        .map(|i| GeneratorEntry { name: format!("b{i}"), kind: GeneratorKind::Block, component: None })
        .collect();
    let names: HashSet<String> = (1..=free_rank).map(|i| format!("b{i}")).collect();
    for c in curves {
        if let Some(g) = c.class.keys().find(|g| !names.contains(*g)) {
            return Err(CalculusError::UnknownGenerator(g.clone()));
        }
    }
    ColouredManifold::from_file(file_from_specs(generators, curves, regions))
}

/// Places the manifolds side by side. Component numbers of each later
/// manifold are shifted past those of the earlier ones.
pub fn disjoint_union(manifolds: &[ColouredManifold]) -> Result<ColouredManifold, CalculusError> {
    let mut out = ColouredManifold::empty();
    for m in manifolds {
        let taken: HashSet<&str> = out
            .generators
            .iter()
            .map(|g| g.name.as_str())
            .chain(out.t_curves.iter().map(|t| t.id.as_str()))
            .chain(out.regions.iter().map(|r| r.id.as_str()))
            .collect();
        let clash = m
            .generators
            .iter()
            .map(|g| g.name.as_str())
            .chain(m.t_curves.iter().map(|t| t.id.as_str()))
            .chain(m.regions.iter().map(|r| r.id.as_str()))
            .find(|n| taken.contains(n));
        if let Some(n) = clash {
            return Err(CalculusError::NameClash(n.to_string()));
        }
        let shift = out.components().last().map_or(0, |c| c + 1);
        let before = out.generators.len();
        let added = m.generators.len();
        for row in &mut out.relations {
            row.resize(before + added, 0);
        }
        for t in &mut out.t_curves {
            t.class.resize(before + added, 0);
        }
        for row in &m.relations {
            let mut r = vec![0; before];
            r.extend_from_slice(row);
            out.relations.push(r);
        }
        for g in &m.generators {
            let mut g = g.clone();
            g.component += shift;
            out.generators.push(g);
        }
        for t in &m.t_curves {
            let mut t = t.clone();
            t.component += shift;
            let mut class = vec![0; before];
            class.extend_from_slice(&t.class);
            t.class = class;
            out.t_curves.push(t);
        }
        for r in &m.regions {
            let mut r = r.clone();
            r.component += shift;
            out.regions.push(r);
        }
        out.history.extend(m.history.iter().cloned());
    }
    out.validate()?;
    Ok(out)
}

/// The solid torus left after drilling an hourglass-shaped well into a
/// ball: two parallel curves of class `core`, a white and a gray annulus.
pub fn hourglass_torus() -> ColouredManifold {
    solid_torus(
        "c",
        &[CurveSpec::new("tau_waist", &[("c", 1)], "W", "G"), CurveSpec::new("tau_equator", &[("c", 1)], "W", "G")],
        &[RegionSpec::white("W", 0, &["tau_waist", "tau_equator"]), RegionSpec::gray("G", 0, &["tau_waist", "tau_equator"])],
    )
    .expect("hourglass torus is valid")
}

/// A solid torus with a single null-homologous t-curve bounding a white
/// disk; the gray side is a once-punctured torus.
pub fn one_curve_torus() -> ColouredManifold {
    solid_torus(
        "c",
        &[CurveSpec::new("tau", &[], "W", "G")],
        &[RegionSpec::white("W", 1, &["tau"]), RegionSpec::gray("G", -1, &["tau"])],
    )
    .expect("one-curve torus is valid")
}

/// A ball coloured by two hemispheres.
pub fn hemisphere_ball() -> ColouredManifold {
    block(0, &[CurveSpec::new("tau", &[], "W", "G")], &[RegionSpec::white("W", 1, &["tau"]), RegionSpec::gray("G", 1, &["tau"])])
        .expect("ball is valid")
}
