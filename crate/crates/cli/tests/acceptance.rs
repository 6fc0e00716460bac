//! End-to-end acceptance checks. Runs without the test harness so that every
//! criterion prints one PASS or FAIL line; exits nonzero if any fails.
//!
//! Set `HANDLECALC_BLESS=1` to rewrite the golden outputs under
//! `tests/data/expected`.

use std::collections::BTreeMap;
use std::fs;
use std::panic;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use handlecalc::calculus::random::{random_base, random_programme};
use handlecalc::calculus::{
    cw_model_homology, run_programme, Applied, Attach1Outcome, ColouredManifold, Colour, GeneratorKind,
    HandleProgramme, HomologyInvariants, Step,
};
use handlecalc::flow::{box_mesh, colour_mesh, icosphere, torus, FlowError, VectorField, DEFAULT_EPSILON};
use handlecalc::surface::build::{enclosed_region_example, grid, octahedron, random_instance, seven_vertex_torus, Wrap};
use handlecalc::surface::{betti, duality_ranks, RelativeRanks, SurfaceComplex};
use handlecalc::trim::{trim, StepKind, TrimOptions};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const HOMOLOGY_LIMIT: Duration = Duration::from_secs(1);
const TRIM_INSTANCES: usize = 200;
const TRIM_MAX_TRIANGLES: usize = 500;
const TRIM_LIMIT: Duration = Duration::from_secs(60);
const PROGRAMMES: usize = 500;
const PROGRAMME_MAX_HANDLES: usize = 8;
const FLOW_LIMIT: Duration = Duration::from_secs(1);
const FLOW_LARGE_TRIANGLES: usize = 10_000;
/// Triangles whose centroid lies within this height of the equator are not
/// checked against the hemisphere they should belong to.
const HEMISPHERE_BAND: f64 = 0.05;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn data() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data")
}

fn scratch(name: &str) -> PathBuf {
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR")).join("acceptance").join(name);
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).unwrap();
    dir
}

// Homology of closed and bounded surfaces.

fn criterion_1() -> Outcome {
    let cases = [
        ("sphere", octahedron(), [1, 0, 1]),
        ("torus", seven_vertex_torus(), [1, 2, 1]),
        ("klein bottle", grid(3, 3, Wrap::Flipped, Wrap::Periodic), [1, 2, 1]),
        ("disk", grid(2, 2, Wrap::None, Wrap::None), [1, 0, 0]),
    ];
    let mut slowest = Duration::ZERO;
    for (name, s, expected) in cases {
        let start = Instant::now();
        let b = betti(&s);
        let took = start.elapsed();
        slowest = slowest.max(took);
        ensure!(b == expected, "{name}: betti {b:?}, expected {expected:?}");
        ensure!(took < HOMOLOGY_LIMIT, "{name} took {took:?}");
    }
    Ok(format!("sphere, torus, klein bottle, disk exact; slowest {slowest:?}"))
}

// Step laws of trimming on random instances.

fn criterion_2() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let start = Instant::now();
    let (mut r0, mut r1, mut r2) = (0, 0, 0);
    for i in 0..TRIM_INSTANCES {
        let s = random_instance(&mut rng, TRIM_MAX_TRIANGLES);
        ensure!(s.triangles().len() <= TRIM_MAX_TRIANGLES, "instance {i} too large");
        let initial = duality_ranks(&s);
        let report = trim(&s, TrimOptions { keep_snapshots: true }).map_err(|e| format!("instance {i}: {e}"))?;
        ensure!(report.initial_ranks == initial, "instance {i}: initial ranks {} vs {initial}", report.initial_ranks);
        for (k, step) in report.steps.iter().enumerate() {
            let before = step.ranks_before;
            let after = duality_ranks(step.snapshot.as_ref().expect("snapshot kept"));
            ensure!(after == step.ranks_after, "instance {i} step {k}: recorded {} recomputed {after}", step.ranks_after);
            let law = match step.kind {
                StepKind::R0 => RelativeRanks::new(before.r0.wrapping_sub(1), before.r1, before.r2),
                StepKind::R1 => {
                    ensure!(before.r0 == 0, "instance {i} step {k}: R1 taken at r0 = {}", before.r0);
                    RelativeRanks::new(0, before.r1.wrapping_sub(1), before.r2)
                }
                StepKind::R2 => RelativeRanks::new(before.r0, before.r1, before.r2.wrapping_sub(1)),
            };
            ensure!(after == law, "instance {i} step {k}: {:?} took {before} to {after}", step.kind);
        }
        ensure!(duality_ranks(&report.result).is_zero(), "instance {i}: frame has ranks {}", duality_ranks(&report.result));
        let counts = [StepKind::R0, StepKind::R1, StepKind::R2].map(|k| report.count(k));
        ensure!(
            counts[0] <= initial.r0 && counts[1] <= initial.r1 && counts[2] <= initial.r2,
            "instance {i}: {counts:?} operations for ranks {initial}"
        );
        r0 += counts[0];
        r1 += counts[1];
        r2 += counts[2];
    }
    let took = start.elapsed();
    ensure!(took < TRIM_LIMIT, "took {took:?}");
    Ok(format!("{TRIM_INSTANCES} instances, {r0} R0 / {r1} R1 / {r2} R2 steps, all laws hold, {took:.1?}"))
}

// Annulus with an enclosed region.

fn criterion_3() -> Outcome {
    let report = trim(&enclosed_region_example(), TrimOptions::default()).map_err(|e| e.to_string())?;
    let kinds: Vec<StepKind> = report.steps.iter().map(|s| s.kind).collect();
    ensure!(kinds == [StepKind::R0, StepKind::R1], "steps {kinds:?}");
    let dir = scratch("criterion_3");
    let out = cli(&["trim", "enclosed_region.json", "-o", path(&dir, "frame.json"), "--log", path(&dir, "report.json")]);
    ensure!(out.status.success(), "cli failed: {}", String::from_utf8_lossy(&out.stderr));
    let log: serde_json::Value = serde_json::from_str(&fs::read_to_string(dir.join("report.json")).unwrap()).unwrap();
    let logged: Vec<&str> = log["steps"].as_array().unwrap().iter().map(|s| s["kind"].as_str().unwrap()).collect();
    ensure!(logged == ["R0", "R1"], "cli log {logged:?}");
    let frame = SurfaceComplex::from_json(&fs::read_to_string(dir.join("frame.json")).unwrap()).unwrap();
    ensure!(duality_ranks(&frame).is_zero(), "frame ranks {}", duality_ranks(&frame));
    Ok(format!("ranks {} trimmed by exactly one R0 then one R1", report.initial_ranks))
}

fn programme_corpus() -> Vec<(ColouredManifold, HandleProgramme)> {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    (0..PROGRAMMES)
        .map(|_| {
            let base = random_base(&mut rng);
            let prog = random_programme(&mut rng, &base, PROGRAMME_MAX_HANDLES);
            (base, prog)
        })
        .collect()
}

// Incremental homology against the cell-complex model.

fn criterion_4() -> Outcome {
    let mut torsion = 0;
    for (i, (base, prog)) in programme_corpus().iter().enumerate() {
        let tori = base.generators().iter().filter(|g| g.kind == GeneratorKind::Core).count();
        let blocks = base.components().len() - tori;
        ensure!(tori <= 3 && blocks <= 1 && prog.steps.len() <= PROGRAMME_MAX_HANDLES, "case {i} out of range");
        let (m, _) = run_programme(base, prog).map_err(|e| format!("case {i}: {e}"))?;
        let incremental = HomologyInvariants::from(&m.homology());
        let oracle = cw_model_homology(base, prog).map_err(|e| format!("case {i}: {e}"))?;
        ensure!(incremental == oracle, "case {i}: ledger {incremental:?}, cell model {oracle:?}");
        torsion += usize::from(!oracle.torsion.is_empty());
    }
    Ok(format!("{PROGRAMMES} programmes agree ({torsion} with torsion)"))
}

// Parity, Euler characteristic and class conservation per handle.

fn criterion_5() -> Outcome {
    let mut handles = 0;
    for (i, (base, prog)) in programme_corpus().into_iter().enumerate() {
        let mut m = base;
        for (k, step) in prog.steps.iter().enumerate() {
            let next = match step {
                Step::Attach1 { feet: [a, b] } => m.attach_1_handle(a, b),
                Step::Attach2 { curve } => m.attach_2_handle(curve),
            }
            .map_err(|e| format!("case {i} step {k}: {e}"))?;
            let at = format!("case {i} step {k}");
            ensure!((m.t_curves().len() + next.t_curves().len()) % 2 == 1, "{at}: t-curve parity unchanged");
            let shift = if matches!(step, Step::Attach1 { .. }) { -1 } else { 1 };
            for colour in [Colour::White, Colour::Gray] {
                ensure!(next.euler(colour) == m.euler(colour) + shift, "{at}: {colour:?} euler {} -> {}", m.euler(colour), next.euler(colour));
            }
            if let Some(Applied::Attach1 { feet: [a, b], curves, outcome, .. }) = next.history().last() {
                let width = next.generators().len();
                let old = |id: &str| {
                    let mut c = m.curve(id).unwrap().class.clone();
                    c.resize(width, 0);
                    c
                };
                let new = |id: &str| next.curve(id).unwrap().class.clone();
                let sum = |x: Vec<i64>, y: Vec<i64>| x.iter().zip(&y).map(|(p, q)| p + q).collect::<Vec<i64>>();
                let conserved = match outcome {
                    Attach1Outcome::Split => sum(new(&curves[0]), new(&curves[1])) == old(a),
                    _ => new(&curves[0]) == sum(old(a), old(b)),
                };
                ensure!(conserved, "{at}: classes not conserved by {outcome:?}");
            }
            m = next;
            handles += 1;
        }
    }
    Ok(format!("{handles} handles over {PROGRAMMES} programmes"))
}

// A vanishing core has a parallel t-curve.

fn criterion_6() -> Outcome {
    let mut vanished = 0;
    for (i, (base, prog)) in programme_corpus().into_iter().enumerate() {
        let (m, _) = run_programme(&base, &prog).map_err(|e| e.to_string())?;
        for (g_index, g) in base.generators().iter().enumerate() {
            if g.kind != GeneratorKind::Core || !m.class_of(&g.name).unwrap().is_zero() {
                continue;
            }
            vanished += 1;
            let parallel = base.t_curves().iter().any(|t| {
                t.component == g.component
                    && t.class.iter().enumerate().all(|(j, &k)| if j == g_index { k.abs() == 1 } else { k == 0 })
            });
            ensure!(parallel, "case {i}: core {} vanished with no t-curve of class +-{}", g.name, g.name);
        }
    }
    ensure!(vanished > 0, "no core vanished in the corpus");
    Ok(format!("{vanished} vanishing cores, zero violations"))
}

fn path(dir: &Path, name: &str) -> &'static str {
    Box::leak(dir.join(name).to_string_lossy().into_owned().into_boxed_str())
}

fn cli(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_handlecalc")).args(args).current_dir(data()).output().expect("run cli")
}

fn verdict_of(scenario: &str) -> Result<String, String> {
    let out = cli(&["detect", scenario]);
    ensure!(out.status.code() == Some(0), "detect {scenario} exited {:?}", out.status.code());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    Ok(v["verdict"].as_str().unwrap_or_default().to_string())
}

// The one-curve torus capped along its curve.

fn criterion_7() -> Outcome {
    let dir = scratch("criterion_7");
    let out = cli(&["run", "one_curve_torus.json", "one_curve_programme.json", "-o", path(&dir, "result.json")]);
    ensure!(out.status.success(), "run failed: {}", String::from_utf8_lossy(&out.stderr));
    let m = ColouredManifold::from_json(&fs::read_to_string(dir.join("result.json")).unwrap()).map_err(|e| e.to_string())?;
    let h = m.homology();
    ensure!(h.free_rank() == 1 && h.torsion().is_empty(), "H1 = {h}, expected Z");
    ensure!(!m.class_of("c").unwrap().is_zero(), "core class vanished");
    let v = verdict_of("one_curve_scenario.json")?;
    ensure!(v == "INCONSISTENT_CONTRACTIBILITY", "verdict {v}");
    Ok(format!("H1 = {h}, c nonzero, verdict {v}"))
}

// The hourglass torus capped at its waist.

fn criterion_8() -> Outcome {
    let dir = scratch("criterion_8");
    let out = cli(&["run", "hourglass.json", "hourglass_programme.json", "-o", path(&dir, "result.json")]);
    ensure!(out.status.success(), "run failed: {}", String::from_utf8_lossy(&out.stderr));
    let m = ColouredManifold::from_json(&fs::read_to_string(dir.join("result.json")).unwrap()).map_err(|e| e.to_string())?;
    ensure!(m.homology().is_trivial(), "H1 = {}", m.homology());
    ensure!(m.t_curves().len() == 1, "{} t-curves", m.t_curves().len());
    ensure!(m.regions().len() == 2 && m.regions().iter().all(|r| r.euler == 1 && r.boundary.len() == 1), "regions are not two disks");
    let v = verdict_of("hourglass_scenario.json")?;
    ensure!(v == "FORCED_ADDITIONAL_STRUCTURE", "verdict {v}");
    Ok(format!("trivial H1, one t-curve, two disks, verdict {v}"))
}

// Colouring meshes by a constant downward field.

fn criterion_9() -> Outcome {
    let down = VectorField::Constant { vector: [0.0, 0.0, -1.0] };
    let timed = |mesh: &handlecalc::flow::TriMesh| {
        let start = Instant::now();
        let r = colour_mesh(mesh, &down, DEFAULT_EPSILON);
        (r, start.elapsed())
    };
    let sphere = icosphere(3);
    let (r, t_sphere) = timed(&sphere);
    let cm = r.map_err(|e| format!("icosphere: {e}"))?;
    ensure!(cm.t_curves.len() == 1, "icosphere: {} t-curves", cm.t_curves.len());
    ensure!((cm.summary.chi_white, cm.summary.chi_gray) == (1, 1), "icosphere: chi {:?}", (cm.summary.chi_white, cm.summary.chi_gray));
    for (t, c) in cm.mesh.triangles.iter().zip(&cm.colours) {
        let z = t.iter().map(|&v| cm.mesh.vertices[v as usize][2]).sum::<f64>() / 3.0;
        ensure!(z.abs() <= HEMISPHERE_BAND || (*c == Colour::White) == (z > 0.0), "icosphere: {c:?} triangle at height {z}");
    }
    let (r, t_torus) = timed(&torus(2.0, 0.7, 32, 16));
    let cm = r.map_err(|e| format!("torus: {e}"))?;
    ensure!(cm.t_curves.len() == 2, "torus: {} t-curves", cm.t_curves.len());
    let (r, t_box) = timed(&box_mesh(2));
    ensure!(matches!(r, Err(FlowError::AmbiguousTangency { .. })), "box: {r:?}");
    let large = torus(2.0, 0.7, 100, 50);
    ensure!(large.triangles.len() == FLOW_LARGE_TRIANGLES, "large mesh has {} triangles", large.triangles.len());
    let (r, t_large) = timed(&large);
    ensure!(r.map(|cm| cm.t_curves.len()) == Ok(2), "large torus");
    let slowest = t_sphere.max(t_torus).max(t_box).max(t_large);
    ensure!(slowest < FLOW_LIMIT, "slowest run {slowest:?}");
    Ok(format!("icosphere 1 curve chi 1/1, torus 2 curves, box tangent; slowest {slowest:?} (10k triangles)"))
}

/// A CLI run whose outputs are compared byte for byte. `{out}` in an
/// argument stands for the case's scratch directory.
struct Golden {
    name: &'static str,
    args: &'static [&'static str],
    exit: i32,
}

const GOLDEN: &[Golden] = &[
    Golden { name: "homology_sphere", args: &["homology", "sphere.json"], exit: 0 },
    Golden { name: "homology_torus", args: &["homology", "torus.json"], exit: 0 },
    Golden { name: "homology_klein", args: &["homology", "klein.json"], exit: 0 },
    Golden { name: "homology_disk", args: &["homology", "disk.json"], exit: 0 },
    Golden { name: "homology_torus_disk_pair", args: &["homology", "--pair", "torus_disk.json"], exit: 0 },
    Golden { name: "trim_sphere_point", args: &["trim", "sphere_point.json", "-o", "{out}/frame.json", "--log", "{out}/report.json"], exit: 0 },
    Golden { name: "trim_torus_disk", args: &["trim", "torus_disk.json", "-o", "{out}/frame.json", "--log", "{out}/report.json"], exit: 0 },
    Golden { name: "trim_enclosed_region", args: &["trim", "enclosed_region.json", "-o", "{out}/frame.json", "--log", "{out}/report.json"], exit: 0 },
    Golden { name: "run_one_curve", args: &["run", "one_curve_torus.json", "one_curve_programme.json", "-o", "{out}/result.json", "--trace", "{out}/trace.json"], exit: 0 },
    Golden { name: "run_hourglass", args: &["run", "hourglass.json", "hourglass_programme.json", "-o", "{out}/result.json", "--trace", "{out}/trace.json"], exit: 0 },
    Golden { name: "run_bad_order", args: &["run", "ball.json", "bad_order.json", "-o", "{out}/result.json"], exit: 1 },
    Golden { name: "detect_one_curve", args: &["detect", "one_curve_scenario.json"], exit: 0 },
    Golden { name: "detect_hourglass", args: &["detect", "hourglass_scenario.json"], exit: 0 },
    Golden { name: "detect_hourglass_unknot", args: &["detect", "hourglass_unknot_scenario.json"], exit: 0 },
    Golden { name: "detect_ball_target", args: &["detect", "ball_target_scenario.json"], exit: 0 },
    Golden { name: "detect_annulus_target", args: &["detect", "annulus_target_scenario.json"], exit: 0 },
    Golden { name: "colour_icosphere", args: &["colour", "icosphere.off", "--field", "field_down.json", "-o", "{out}/coloured.json", "--off", "{out}/coloured.off", "--ledger", "{out}/ledger.json"], exit: 0 },
    Golden { name: "colour_torus", args: &["colour", "torus.off", "--field", "field_down.json", "-o", "{out}/coloured.json"], exit: 0 },
    Golden { name: "colour_radial", args: &["colour", "icosphere.off", "--field", "field_radial.json", "-o", "{out}/coloured.json"], exit: 0 },
    Golden { name: "colour_box", args: &["colour", "box.off", "--field", "field_down.json", "-o", "{out}/coloured.json"], exit: 1 },
];

/// Runs a golden case into `dir` and returns every artifact by name.
fn run_golden(g: &Golden, dir: &Path) -> Result<BTreeMap<String, Vec<u8>>, String> {
    let args: Vec<String> = g.args.iter().map(|a| a.replace("{out}", &dir.to_string_lossy())).collect();
    let refs: Vec<&str> = args.iter().map(String::as_str).collect();
    let out = cli(&refs);
    ensure!(out.status.code() == Some(g.exit), "{}: exit {:?}, expected {}: {}", g.name, out.status.code(), g.exit, String::from_utf8_lossy(&out.stderr));
    let mut files = BTreeMap::from([("stdout".to_string(), out.stdout), ("stderr".to_string(), out.stderr)]);
    for entry in fs::read_dir(dir).unwrap() {
        let entry = entry.unwrap();
        files.insert(entry.file_name().to_string_lossy().into_owned(), fs::read(entry.path()).unwrap());
    }
    Ok(files)
}

// Byte-identical reruns, matching the checked-in golden outputs.

fn criterion_10() -> Outcome {
    let bless = std::env::var_os("HANDLECALC_BLESS").is_some();
    let mut artifacts = 0;
    for g in GOLDEN {
        let first = run_golden(g, &scratch(&format!("{}_a", g.name)))?;
        let second = run_golden(g, &scratch(&format!("{}_b", g.name)))?;
        ensure!(first == second, "{}: reruns differ", g.name);
        let expected_dir = data().join("expected").join(g.name);
        if bless {
            let _ = fs::remove_dir_all(&expected_dir);
            fs::create_dir_all(&expected_dir).unwrap();
            for (name, bytes) in &first {
                fs::write(expected_dir.join(name), bytes).unwrap();
            }
        }
        for (name, bytes) in &first {
            let golden = fs::read(expected_dir.join(name)).map_err(|_| format!("{}: no golden {name}", g.name))?;
            ensure!(&golden == bytes, "{}: {name} differs from golden output", g.name);
        }
        let golden_count = fs::read_dir(&expected_dir).map(|d| d.count()).unwrap_or(0);
        ensure!(golden_count == first.len(), "{}: golden has {golden_count} files, run made {}", g.name, first.len());
        artifacts += first.len();
    }
    Ok(format!("{} commands, {artifacts} artifacts byte-identical across reruns and golden files", GOLDEN.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("Z2 homology of standard surfaces", criterion_1),
        ("trimming step laws on random instances", criterion_2),
        ("annulus with an enclosed region", criterion_3),
        ("incremental H1 against the cell model", criterion_4),
        ("ledger invariants per handle", criterion_5),
        ("vanishing cores have parallel curves", criterion_6),
        ("one-curve torus golden test", criterion_7),
        ("hourglass golden test", criterion_8),
        ("flow colouring", criterion_9),
        ("determinism", criterion_10),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome = panic::catch_unwind(check).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or(p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_else(|| "panicked".into()))
        });
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
