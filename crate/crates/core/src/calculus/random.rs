//! Random starting manifolds and programmes for property tests.

use rand::seq::SliceRandom;
use rand::Rng;

use super::build::{block, disjoint_union, solid_torus, CurveSpec, RegionSpec};
use super::manifold::ColouredManifold;
use super::programme::{HandleProgramme, Step};
use super::Colour;

/// A random coloured solid torus with core `core`, ids prefixed by `tag`.
///
/// Its t-curves are either an even number of parallel curves cutting the
/// boundary into alternating annuli (classes `0` or `+-m * core`), or one
/// curve bounding a disk, or none at all.
pub fn random_torus<R: Rng + ?Sized>(rng: &mut R, core: &str, tag: &str) -> ColouredManifold {
    let shape = rng.gen_range(0..8);
    if shape == 0 {
        let colour = if rng.gen() { Colour::White } else { Colour::Gray };
        return solid_torus(core, &[], &[RegionSpec::new(&format!("R{tag}"), colour, 0, &[])]).expect("closed torus");
    }
    if shape <= 2 {
        let id = format!("t{tag}");
        let (w, g) = (format!("W{tag}"), format!("G{tag}"));
        let (we, ge) = if rng.gen() { (1, -1) } else { (-1, 1) };
        return solid_torus(
            core,
            &[CurveSpec::new(&id, &[], &w, &g)],
            &[RegionSpec::white(&w, we, &[&id]), RegionSpec::gray(&g, ge, &[&id])],
        )
        .expect("disk torus");
    }
    let n = 2 * rng.gen_range(1..=2);
    let m = rng.gen_range(1..=3i64);
    let meridians = rng.gen_range(0..4) == 0;
    let ids: Vec<String> = (0..n).map(|k| format!("t{tag}_{k}")).collect();
    let region_id = |k: usize| if k % 2 == 0 { format!("W{tag}_{k}") } else { format!("G{tag}_{k}") };
    let mut curves = Vec::new();
    for k in 0..n {
        let class = if meridians { 0 } else if rng.gen() { m } else { -m };
        // Curve k lies between annuli k - 1 and k.
        let (a, b) = (region_id((k + n - 1) % n), region_id(k));
        let (w, g) = if k % 2 == 0 { (b, a) } else { (a, b) };
        curves.push(CurveSpec::new(&ids[k], &[(core, class)], &w, &g));
    }
    let regions: Vec<RegionSpec> = (0..n)
        .map(|k| {
            let colour = if k % 2 == 0 { Colour::White } else { Colour::Gray };
            RegionSpec::new(&region_id(k), colour, 0, &[&ids[k], &ids[(k + 1) % n]])
        })
        .collect();
    solid_torus(core, &curves, &regions).expect("parallel torus")
}

/// A random connected block: `k` curves bounding white disks on a gray
/// surface of genus at most 2, classes drawn from `[-2, 2]` per generator.
pub fn random_block<R: Rng + ?Sized>(rng: &mut R) -> ColouredManifold {
    let rank = rng.gen_range(0..=2);
    let names: Vec<String> = (1..=rank).map(|i| format!("b{i}")).collect();
    let k = rng.gen_range(1..=3);
    let genus = rng.gen_range(0..=2i64);
    let ids: Vec<String> = (0..k).map(|i| format!("s{i}")).collect();
    let mut curves = Vec::new();
    let mut regions = Vec::new();
    for (i, id) in ids.iter().enumerate() {
        let class: Vec<(&str, i64)> = names.iter().map(|g| (g.as_str(), rng.gen_range(-2..=2))).collect();
        let w = format!("D{i}");
        curves.push(CurveSpec::new(id, &class, &w, "H"));
        regions.push(RegionSpec::white(&w, 1, &[id]));
    }
    let refs: Vec<&str> = ids.iter().map(String::as_str).collect();
    regions.push(RegionSpec::gray("H", 2 - 2 * genus - k as i64, &refs));
    block(rank, &curves, &regions).expect("random block")
}

/// One to three random tori, cores `c1, c2, ...`, and possibly a block.
pub fn random_base<R: Rng + ?Sized>(rng: &mut R) -> ColouredManifold {
    let tori = rng.gen_range(1..=3);
    let mut parts: Vec<ColouredManifold> =
        (1..=tori).map(|i| random_torus(rng, &format!("c{i}"), &i.to_string())).collect();
    if rng.gen() {
        parts.push(random_block(rng));
    }
    disjoint_union(&parts).expect("distinct ids")
}

/// A random valid programme of at most `max_steps` handles on `base`:
/// some 1-handles on random feet, then 2-handles on random curves.
pub fn random_programme<R: Rng + ?Sized>(rng: &mut R, base: &ColouredManifold, max_steps: usize) -> HandleProgramme {
    let total = rng.gen_range(0..=max_steps);
    let ones = rng.gen_range(0..=total);
    let mut m = base.clone();
    let mut steps = Vec::new();
    for k in 0..total {
        let ids: Vec<String> = m.t_curves().iter().map(|t| t.id.clone()).collect();
        let Some(a) = ids.choose(rng) else { break };
        let step = if k < ones {
            let b = if rng.gen_range(0..3) == 0 { a } else { ids.choose(rng).expect("nonempty") };
            Step::attach1(a, b)
        } else {
            Step::attach2(a)
        };
        m = match &step {
            Step::Attach1 { feet: [a, b] } => m.attach_1_handle(a, b),
            Step::Attach2 { curve } => m.attach_2_handle(curve),
        }
        .expect("generated step is valid");
        steps.push(step);
    }
    HandleProgramme::new(steps)
}
