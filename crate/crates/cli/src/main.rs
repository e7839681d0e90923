//! `workbench`: Priestley duals, d-spectrum reports and the verification
//! suite from the command line.
//!
//! Exit codes: 0 ok, 1 a verification case failed, 2 invalid input, 3 an
//! internal consistency check failed, 64 usage.

mod render;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use locale_workbench::birkhoff::{priestley_dual, LatticeJson};
use locale_workbench::d_spectrum::{self as ds, spectrum_report, FiniteEngine, PriestleyEngine};
use locale_workbench::fan_spaces::{engine_for, FanSpaceDescriptor, DEFAULT_SEED};
use locale_workbench::nuclei::{admissible_upset, density_check, nuclear_of_nucleus, NucleusJson};
use locale_workbench::oracle::{run_suite, SuiteOptions, DEFAULT_BOUND};
use locale_workbench::poset::{FinitePoset, PosetJson};
use locale_workbench::{Error, Faults};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "workbench", version, about = "Finite Priestley duality and d-spectra of frames")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// Priestley dual of a finite distributive lattice.
    Dual {
        lattice: PathBuf,
        /// Also write the dual's Hasse diagram here.
        #[arg(long)]
        dot: Option<PathBuf>,
        /// Write the dual poset JSON here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// d-spectrum report of a finite poset or a fan family.
    Analyze {
        space: PathBuf,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Runs the registered theorem checks.
    Verify {
        #[arg(long, default_value_t = DEFAULT_BOUND)]
        bound: usize,
        /// Comma-separated theorem ids; all when absent.
        #[arg(long, value_delimiter = ',')]
        only: Vec<String>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Validates a nucleus table on a finite poset and reports its nuclear set.
    Nucleus { space: PathBuf, nucleus: PathBuf },
}

/// A failed run with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            _ if e.is_internal() => 3,
            Error::BoundExceeded { .. } | Error::UnknownTheoremId(_) => 64,
            _ => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

type Outcome = Result<u8, Failure>;

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn write_out(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Failure::input(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn to_json<T: Serialize>(v: &T) -> Result<String, Failure> {
    serde_json::to_string_pretty(v)
        .map(|s| s + "\n")
        .map_err(|e| Failure {
            code: 3,
            message: e.to_string(),
        })
}

enum Space {
    Finite(Arc<FinitePoset>),
    Fans(FanSpaceDescriptor),
}

fn read_space(path: &Path) -> Result<Space, Failure> {
    let value: serde_json::Value = read_json(path)?;
    if value.get("family").is_some() {
        let desc: FanSpaceDescriptor =
            serde_json::from_value(value).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
        Ok(Space::Fans(desc))
    } else {
        let p: PosetJson =
            serde_json::from_value(value).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
        Ok(Space::Finite(Arc::new(p.build()?)))
    }
}

fn dual(lattice: &Path, dot: Option<&Path>, out: Option<&Path>) -> Outcome {
    let l: LatticeJson = read_json(lattice)?;
    let d = l.build()?;
    let x = priestley_dual(&d)?;
    write_out(out, &to_json(&x.space.to_json())?)?;
    if let Some(dot) = dot {
        write_out(Some(dot), &render::poset_dot(&x.space, |_| ""))?;
    }
    Ok(0)
}

fn analyze(space: &Path, format: Format) -> Outcome {
    let text = match read_space(space)? {
        Space::Finite(p) => {
            let e = FiniteEngine::new(p.clone());
            let report = spectrum_report(&e)?;
            match format {
                Format::Json => to_json(&report)?,
                Format::Text => render::report_text(&report),
                Format::Dot => render::finite_dot(&p, e.localic_part(), ds::yd_set(&e)?, ds::min_yd(&e)?.set),
            }
        }
        Space::Fans(desc) => {
            let e = engine_for(desc);
            let report = spectrum_report(&e)?;
            match format {
                Format::Json => to_json(&report)?,
                Format::Text => render::report_text(&report),
                Format::Dot => render::fan_dot(&e, &e.localic_part(), &ds::yd_set(&e)?, &ds::min_yd(&e)?.set),
            }
        }
    };
    write_out(None, &text)?;
    Ok(0)
}

fn verify(bound: usize, only: &[String], seed: u64, format: Format) -> Outcome {
    let ids: Vec<&str> = only.iter().map(String::as_str).collect();
    let report = run_suite(
        &ids,
        SuiteOptions {
            bound,
            seed,
            faults: Faults::NONE,
        },
    )?;
    let text = match format {
        Format::Json => to_json(&report)?,
        Format::Text => render::suite_text(&report),
        Format::Dot => {
            return Err(Failure {
                code: 64,
                message: "verify has no DOT output".into(),
            })
        }
    };
    write_out(None, &text)?;
    Ok(if report.all_verified() { 0 } else { 1 })
}

#[derive(Serialize)]
struct NucleusReport {
    nuclear_set: Vec<String>,
    admissible_upset: Vec<String>,
    dense: bool,
    cofinal: bool,
    fixpoints: Vec<Vec<String>>,
}

fn nucleus(space: &Path, table: &Path) -> Outcome {
    let Space::Finite(p) = read_space(space)? else {
        return Err(Failure::input("nuclei are only supported on finite posets"));
    };
    let t: NucleusJson = read_json(table)?;
    let j = t.build(&p)?;
    let density = density_check(&j)?;
    let report = NucleusReport {
        nuclear_set: p.labels_of(nuclear_of_nucleus(&j).members),
        admissible_upset: p.labels_of(admissible_upset(&j)?),
        dense: density.dense,
        cofinal: density.cofinal,
        fixpoints: j.fixpoints().into_iter().map(|u| p.labels_of(u)).collect(),
    };
    write_out(None, &to_json(&report)?)?;
    Ok(0)
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Dual { lattice, dot, out } => dual(&lattice, dot.as_deref(), out.as_deref()),
        Command::Analyze { space, format } => analyze(&space, format),
        Command::Verify {
            bound,
            only,
            seed,
            format,
        } => verify(bound, &only, seed, format),
        Command::Nucleus { space, nucleus: table } => nucleus(&space, &table),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 64 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
