//! The coloured-manifold ledger and its file form.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::homology::{quotient_group, AbelianGroup, GroupElement, IntMatrix};

use super::CalculusError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GeneratorKind {
    /// Core circle of a solid torus.
    Core,
    /// A free generator of a block's first homology.
    Block,
    /// Created by a 1-handle joining a component to itself.
    Handle,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Generator {
    pub name: String,
    pub kind: GeneratorKind,
    pub component: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Colour {
    White,
    Gray,
}

/// A tangency circle, oriented as the boundary of the white side.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TCurve {
    pub id: String,
    /// Coefficients over the generators, in generator order.
    pub class: Vec<i64>,
    pub component: usize,
    pub white: String,
    pub gray: String,
}

/// A connected single-coloured piece of the boundary.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Region {
    pub id: String,
    pub colour: Colour,
    pub euler: i64,
    /// Ids of the t-curves bounding it; empty for a closed region.
    pub boundary: Vec<String>,
    pub component: usize,
}

impl Region {
    /// A disk or a sphere.
    pub fn is_disk_or_sphere(&self) -> bool {
        (self.euler == 1 && self.boundary.len() == 1) || (self.euler == 2 && self.boundary.is_empty())
    }
}

/// What an applied attachment did, as recorded in the history.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum Applied {
    Attach1 {
        feet: [String; 2],
        outcome: Attach1Outcome,
        /// Ids of the resulting t-curves.
        curves: Vec<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        generator: Option<String>,
    },
    Attach2 {
        curve: String,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Attach1Outcome {
    /// Two curves on different components became one.
    JoinComponents,
    /// Two curves on one component became one; a handle generator appeared.
    MergeCurves,
    /// One curve became two; a handle generator appeared.
    Split,
}

/// A compact 3-manifold described only by its homology and the colouring of
/// its boundary: generators and relations for `H_1`, the t-curves with their
/// classes, and the white and gray regions with Euler characteristics.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ColouredManifold {
    pub(crate) generators: Vec<Generator>,
    pub(crate) relations: Vec<Vec<i64>>,
    pub(crate) t_curves: Vec<TCurve>,
    pub(crate) regions: Vec<Region>,
    pub(crate) history: Vec<Applied>,
}

/// Counts that the programme trace records after each step.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LedgerSummary {
    pub components: usize,
    pub generators: usize,
    pub relations: usize,
    pub t_curves: usize,
    pub chi_white: i64,
    pub chi_gray: i64,
}

impl ColouredManifold {
    pub fn empty() -> Self {
        ColouredManifold::default()
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn relations(&self) -> &[Vec<i64>] {
        &self.relations
    }

    pub fn t_curves(&self) -> &[TCurve] {
        &self.t_curves
    }

    pub fn regions(&self) -> &[Region] {
        &self.regions
    }

    pub fn history(&self) -> &[Applied] {
        &self.history
    }

    pub fn components(&self) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        out.extend(self.generators.iter().map(|g| g.component));
        out.extend(self.t_curves.iter().map(|t| t.component));
        out.extend(self.regions.iter().map(|r| r.component));
        out
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    pub fn curve(&self, id: &str) -> Option<&TCurve> {
        self.t_curves.iter().find(|t| t.id == id)
    }

    pub fn region(&self, id: &str) -> Option<&Region> {
        self.regions.iter().find(|r| r.id == id)
    }

    pub(crate) fn curve_index(&self, id: &str) -> Result<usize, CalculusError> {
        self.t_curves.iter().position(|t| t.id == id).ok_or_else(|| CalculusError::UnknownCurve(id.to_string()))
    }

    pub(crate) fn region_index(&self, id: &str) -> usize {
        self.regions.iter().position(|r| r.id == id).expect("validated region reference")
    }

    pub fn euler(&self, colour: Colour) -> i64 {
        self.regions.iter().filter(|r| r.colour == colour).map(|r| r.euler).sum()
    }

    pub fn summary(&self) -> LedgerSummary {
        LedgerSummary {
            components: self.components().len(),
            generators: self.generators.len(),
            relations: self.relations.len(),
            t_curves: self.t_curves.len(),
            chi_white: self.euler(Colour::White),
            chi_gray: self.euler(Colour::Gray),
        }
    }

    /// A class vector as a name-to-coefficient map, zeros omitted.
    pub fn class_map(&self, class: &[i64]) -> BTreeMap<String, i64> {
        self.generators.iter().zip(class).filter(|(_, &k)| k != 0).map(|(g, &k)| (g.name.clone(), k)).collect()
    }

    pub fn class_vector(&self, map: &BTreeMap<String, i64>) -> Result<Vec<i64>, CalculusError> {
        let mut v = vec![0; self.generators.len()];
        for (name, &k) in map {
            let i = self.generator_index(name).ok_or_else(|| CalculusError::UnknownGenerator(name.clone()))?;
            v[i] = k;
        }
        Ok(v)
    }

    /// `H_1` as generators modulo relations.
    pub fn homology(&self) -> AbelianGroup {
        let n = self.generators.len();
        quotient_group(n, &IntMatrix::from_rows(n, &self.relations))
    }

    /// The class of a generator in `H_1`.
    pub fn class_of(&self, name: &str) -> Result<GroupElement, CalculusError> {
        let i = self.generator_index(name).ok_or_else(|| CalculusError::UnknownGenerator(name.to_string()))?;
        Ok(self.homology().generator_class(i))
    }

    /// The class of a combination of generators in `H_1`.
    pub fn class_of_vector(&self, map: &BTreeMap<String, i64>) -> Result<GroupElement, CalculusError> {
        let v = self.class_vector(map)?;
        Ok(self.homology().project_i64(&v))
    }

    /// True when every white region is a disk or a sphere, so that links
    /// pushed into the white boundary are trivial.
    pub fn white_link_trivial_only(&self) -> bool {
        self.link_trivial_only(Colour::White)
    }

    pub fn gray_link_trivial_only(&self) -> bool {
        self.link_trivial_only(Colour::Gray)
    }

    pub fn link_trivial_only(&self, colour: Colour) -> bool {
        self.regions.iter().filter(|r| r.colour == colour).all(Region::is_disk_or_sphere)
    }

    /// Checks the ledger for internal consistency.
    pub fn validate(&self) -> Result<(), CalculusError> {
        let bad = |m: String| Err(CalculusError::BadLedger(m));
        let n = self.generators.len();
        unique(self.generators.iter().map(|g| g.name.as_str()), "generator")?;
        unique(self.t_curves.iter().map(|t| t.id.as_str()), "t-curve")?;
        unique(self.regions.iter().map(|r| r.id.as_str()), "region")?;
        for (i, row) in self.relations.iter().enumerate() {
            if row.len() != n {
                return bad(format!("relation {i} has {} entries for {n} generators", row.len()));
            }
        }
        let regions: HashMap<&str, &Region> = self.regions.iter().map(|r| (r.id.as_str(), r)).collect();
        for t in &self.t_curves {
            if t.class.len() != n {
                return bad(format!("class of {} has {} entries for {n} generators", t.id, t.class.len()));
            }
            for (g, &k) in self.generators.iter().zip(&t.class) {
                if k != 0 && g.component != t.component {
                    return bad(format!("class of {} uses {} from another component", t.id, g.name));
                }
            }
            for (side, colour) in [(&t.white, Colour::White), (&t.gray, Colour::Gray)] {
                match regions.get(side.as_str()) {
                    None => return bad(format!("{} borders missing region {side}", t.id)),
                    Some(r) if r.colour != colour => {
                        return bad(format!("{} expects {side} to be {colour:?}", t.id))
                    }
                    Some(r) if !r.boundary.contains(&t.id) => {
                        return bad(format!("region {side} does not list {}", t.id))
                    }
                    Some(r) if r.component != t.component => {
                        return bad(format!("{} and region {side} lie on different components", t.id))
                    }
                    Some(_) => {}
                }
            }
        }
        let mut per_component: BTreeMap<usize, i64> = BTreeMap::new();
        for r in &self.regions {
            unique(r.boundary.iter().map(String::as_str), "boundary entry")?;
            for id in &r.boundary {
                let ok = match self.curve(id) {
                    Some(t) => (if r.colour == Colour::White { &t.white } else { &t.gray }) == &r.id,
                    None => false,
                };
                if !ok {
                    return bad(format!("region {} lists {id}, which does not border it", r.id));
                }
            }
            let b = r.boundary.len() as i64;
            if (r.euler - b).rem_euclid(2) != 0 || r.euler > 2 - b {
                return Err(CalculusError::BadEuler(format!(
                    "region {} has euler characteristic {} with {b} boundary curves",
                    r.id, r.euler
                )));
            }
            *per_component.entry(r.component).or_default() += r.euler;
        }
        for (c, chi) in per_component {
            if chi % 2 != 0 {
                return Err(CalculusError::BadEuler(format!("boundary of component {c} has odd euler characteristic {chi}")));
            }
        }
        Ok(())
    }

    pub fn to_file(&self) -> ManifoldFile {
        ManifoldFile {
            generators: self
                .generators
                .iter()
                .map(|g| GeneratorEntry { name: g.name.clone(), kind: g.kind, component: Some(g.component) })
                .collect(),
            relations: self.relations.clone(),
            t_curves: self
                .t_curves
                .iter()
                .map(|t| CurveEntry {
                    id: t.id.clone(),
                    class: self.class_map(&t.class),
                    component: t.component,
                    white: t.white.clone(),
                    gray: t.gray.clone(),
                })
                .collect(),
            regions: self
                .regions
                .iter()
                .map(|r| RegionEntry {
                    id: r.id.clone(),
                    colour: r.colour,
                    euler: r.euler,
                    boundary: r.boundary.clone(),
                    component: Some(r.component),
                })
                .collect(),
            history: self.history.clone(),
        }
    }

    /// Builds and validates a manifold from its file form. Missing component
    /// fields are filled in from the t-curves; anything left over goes to the
    /// lowest component.
    pub fn from_file(file: ManifoldFile) -> Result<Self, CalculusError> {
        let curve_component: HashMap<&str, usize> = file.t_curves.iter().map(|t| (t.id.as_str(), t.component)).collect();
        let mut known: BTreeSet<usize> = file.t_curves.iter().map(|t| t.component).collect();
        known.extend(file.regions.iter().filter_map(|r| r.component));
        known.extend(file.generators.iter().filter_map(|g| g.component));
        let fallback = known.iter().next().copied().unwrap_or(0);

        let mut generators = Vec::new();
        for g in &file.generators {
            let used_by = file.t_curves.iter().find(|t| t.class.get(&g.name).is_some_and(|&k| k != 0));
            let component = g.component.or(used_by.map(|t| t.component)).unwrap_or(fallback);
            generators.push(Generator { name: g.name.clone(), kind: g.kind, component });
        }
        let mut m = ColouredManifold { generators, relations: file.relations, ..Default::default() };
        for t in &file.t_curves {
            let class = m.class_vector(&t.class)?;
            m.t_curves.push(TCurve {
                id: t.id.clone(),
                class,
                component: t.component,
                white: t.white.clone(),
                gray: t.gray.clone(),
            });
        }
        for r in &file.regions {
            let from_curves = r.boundary.iter().find_map(|id| curve_component.get(id.as_str()).copied());
            m.regions.push(Region {
                id: r.id.clone(),
                colour: r.colour,
                euler: r.euler,
                boundary: r.boundary.clone(),
                component: r.component.or(from_curves).unwrap_or(fallback),
            });
        }
        m.history = file.history;
        m.validate()?;
        Ok(m)
    }

    pub fn from_json(text: &str) -> Result<Self, CalculusError> {
        let file: ManifoldFile = serde_json::from_str(text).map_err(|e| CalculusError::Parse(e.to_string()))?;
        ColouredManifold::from_file(file)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("manifold serializes")
    }
}

fn unique<'a>(names: impl Iterator<Item = &'a str>, what: &str) -> Result<(), CalculusError> {
    let mut seen = HashSet::new();
    for n in names {
        if !seen.insert(n) {
            return Err(CalculusError::NameClash(format!("{what} {n} appears twice")));
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorEntry {
    pub name: String,
    pub kind: GeneratorKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub component: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveEntry {
    pub id: String,
    #[serde(default)]
    pub class: BTreeMap<String, i64>,
    #[serde(default)]
    pub component: usize,
    pub white: String,
    pub gray: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RegionEntry {
    pub id: String,
    pub colour: Colour,
    pub euler: i64,
    #[serde(default)]
    pub boundary: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub component: Option<usize>,
}

/// On-disk form of a coloured manifold.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ManifoldFile {
    #[serde(default)]
    pub generators: Vec<GeneratorEntry>,
    #[serde(default)]
    pub relations: Vec<Vec<i64>>,
    #[serde(default)]
    pub t_curves: Vec<CurveEntry>,
    #[serde(default)]
    pub regions: Vec<RegionEntry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub history: Vec<Applied>,
}
