use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand};
use serde::Serialize;

use handlecalc::calculus::{run_programme, ColouredManifold, HandleProgramme};
use handlecalc::detector::{detect, DetectorError, Scenario};
use handlecalc::flow::{colour_mesh, export_off, summarize, TriMesh, VectorField, DEFAULT_EPSILON};
use handlecalc::surface::{betti, duality_ranks, pair_homology_with_marked, relative_betti, require_valid, SurfaceComplex};
use handlecalc::trim::{trim, TrimError, TrimOptions};

#[derive(Parser)]
#[command(name = "handlecalc", version, about = "Coloured handle calculus and frame trimming")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the Z2 Betti numbers of a surface complex.
    Homology {
        complex: PathBuf,
        /// Also print the ranks relative to the marked subcomplex.
        #[arg(long)]
        pair: bool,
    },
    /// Trim a surface down to a regular frame of its marked subcomplex.
    Trim {
        complex: PathBuf,
        /// Where to write the trimmed complex (default: stdout).
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Where to write the step-by-step report.
        #[arg(long)]
        log: Option<PathBuf>,
    },
    /// Apply a handle programme to a coloured manifold.
    Run {
        manifold: PathBuf,
        programme: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Where to write the ledger summary after every step.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Decide a scenario and print the verdict.
    Detect {
        scenario: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Colour a closed OFF mesh by the sign of a vector field on its normals.
    Colour {
        mesh: PathBuf,
        #[arg(long)]
        field: PathBuf,
        #[arg(long, default_value_t = DEFAULT_EPSILON)]
        eps: f64,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Also write the split mesh as OFF with face colours.
        #[arg(long)]
        off: Option<PathBuf>,
        /// Also write the region ledger in manifold file form.
        #[arg(long)]
        ledger: Option<PathBuf>,
    },
}

/// Bad input exits with 1, a failed internal check with 2.
enum Failure {
    Input(anyhow::Error),
    Internal(anyhow::Error),
}

impl<E: Into<anyhow::Error>> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Input(e.into())
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    Ok(fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?)
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn emit(text: &str, path: Option<&Path>) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display()))?,
        None => print!("{text}"),
    }
    Ok(())
}

fn load_complex(path: &Path) -> Result<SurfaceComplex, Failure> {
    let s = SurfaceComplex::from_json(&read(path)?).with_context(|| format!("parsing {}", path.display()))?;
    require_valid(&s)?;
    Ok(s)
}

#[derive(Serialize)]
struct HomologyOutput {
    betti: [usize; 3],
    euler: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    relative_to_marked: Option<[usize; 3]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    complement_ranks: Option<[usize; 3]>,
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Homology { complex, pair } => {
            let s = load_complex(&complex)?;
            let mut out = HomologyOutput { betti: betti(&s), euler: s.euler_characteristic(), relative_to_marked: None, complement_ranks: None };
            if pair {
                out.relative_to_marked = Some(pair_homology_with_marked(&s));
                let ranks = relative_betti(&s);
                if ranks != duality_ranks(&s) {
                    return Err(Failure::Internal(anyhow!("complement ranks {ranks} disagree with the dual computation")));
                }
                out.complement_ranks = Some(ranks.as_array());
            }
            emit(&to_json(&out), None)
        }
        Command::Trim { complex, output, log } => {
            let s = load_complex(&complex)?;
            let report = trim(&s, TrimOptions::default()).map_err(|e| match e {
                TrimError::Invalid(_) => Failure::Input(e.into()),
                _ => Failure::Internal(e.into()),
            })?;
            if let Some(log) = log {
                emit(&to_json(&report), Some(&log))?;
            }
            emit(&to_json(&report.result.to_file()), output.as_deref())
        }
        Command::Run { manifold, programme, output, trace } => {
            let m = ColouredManifold::from_json(&read(&manifold)?)?;
            let prog = HandleProgramme::from_json(&read(&programme)?)?;
            let (result, steps) = run_programme(&m, &prog)?;
            if let Some(trace) = trace {
                emit(&to_json(&steps), Some(&trace))?;
            }
            emit(&to_json(&result.to_file()), output.as_deref())
        }
        Command::Detect { scenario, output } => {
            let sc = Scenario::from_json(&read(&scenario)?)?;
            let verdict = detect(&sc).map_err(|e| match e {
                DetectorError::Internal(_) => Failure::Internal(e.into()),
                _ => Failure::Input(e.into()),
            })?;
            emit(&to_json(&verdict), output.as_deref())
        }
        Command::Colour { mesh, field, eps, output, off, ledger } => {
            let m = TriMesh::parse_off(&read(&mesh)?)?;
            let f = VectorField::from_json(&read(&field)?)?;
            let cm = colour_mesh(&m, &f, eps)?;
            if let Some(off) = off {
                emit(&export_off(&cm), Some(&off))?;
            }
            if let Some(ledger) = ledger {
                emit(&to_json(&summarize(&cm)), Some(&ledger))?;
            }
            emit(&to_json(&cm), output.as_deref())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
        Err(Failure::Internal(e)) => {
            eprintln!("internal error: {e:#}");
            ExitCode::from(2)
        }
    }
}
