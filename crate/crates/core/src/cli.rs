//! Command-line front door.
//!
//! Exit codes: 0 success or match, 1 classification or check mismatch,
//! 2 usage or input error.

use crate::chevalley::StructureConstants;
use crate::classify::{self, CaseFilter, ExpectedSurvivors};
use crate::constructions;
use crate::error::{Error, Result};
use crate::invform;
use crate::isotropy::{derive_detailed, ConfigSpec};
use crate::rootsys::{RootSystem, SeriesLabel};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

pub const THREADS_VAR: &str = "LIE_CONFORMAL_THREADS";

#[derive(Debug, Parser)]
#[command(name = "lie-conformal", version, about = "Exact classification of essential conformal homogeneous spaces")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CaseArg {
    Case1,
    Case2,
    Parabolic,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ConstructionArg {
    Sp,
    Sl,
    G2,
    All,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the exhaustive search and compare survivors with the expected table.
    Classify {
        #[arg(long, default_value_t = 8)]
        max_rank: usize,
        #[arg(long, value_enum, default_value_t = CaseArg::All)]
        case: CaseArg,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
        /// Expected survivors as JSON `{"survivors":[...]}`; defaults to
        /// the built-in table.
        #[arg(long)]
        expect: Option<PathBuf>,
    },
    /// Solve for invariant forms on a configuration given as JSON.
    Solve { config: PathBuf },
    /// Verify the explicit constructions.
    CheckExamples {
        #[arg(long, value_enum, default_value_t = ConstructionArg::All)]
        construction: ConstructionArg,
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Print the simple and positive roots of a system as JSON.
    DumpRoots {
        #[arg(long)]
        label: String,
        #[arg(long)]
        rank: Option<usize>,
    },
    /// Print every nonzero structure constant as JSON lines.
    DumpConstants {
        #[arg(long)]
        label: String,
        #[arg(long)]
        rank: Option<usize>,
    },
}

/// Parses `argv` (including the program name) and runs, writing to the given
/// streams. Returns the exit code.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cfg = match RunConfig::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(cfg.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    configure_threads();
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

/// Caps the worker pool at `LIE_CONFORMAL_THREADS` when set.
pub fn configure_threads() {
    if let Some(n) = std::env::var(THREADS_VAR).ok().and_then(|v| v.trim().parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

fn system(label: &str, rank: Option<usize>) -> Result<std::sync::Arc<RootSystem>> {
    let l: SeriesLabel = label.parse()?;
    let r = match (rank, l.fixed_rank()) {
        (Some(r), _) => r,
        (None, Some(r)) => r,
        (None, None) => return Err(Error::Input(format!("--rank is required for type {l}"))),
    };
    RootSystem::build(l, r)
}

fn io(e: std::io::Error) -> Error {
    Error::Input(e.to_string())
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::Classify { max_rank, case, format, expect } => {
            let filter = match case {
                CaseArg::All => CaseFilter::All,
                CaseArg::Case1 => "case1".parse()?,
                CaseArg::Case2 => "case2".parse()?,
                CaseArg::Parabolic => "parabolic".parse()?,
            };
            if max_rank < 2 {
                return Err(Error::InvalidRank { label: "max-rank".into(), rank: max_rank });
            }
            let expected = match expect {
                Some(p) => {
                    let text = std::fs::read_to_string(&p).map_err(io)?;
                    let e: ExpectedSurvivors =
                        serde_json::from_str(&text).map_err(|e| Error::Input(format!("{}: {e}", p.display())))?;
                    e.survivors
                }
                None => classify::theorem_table(max_rank, filter),
            };
            let report = classify::classify(max_rank, filter)?;
            let cmp = report.compare(&expected);
            match format {
                Format::Json => {
                    let mut v = report.to_json();
                    v["matches_expected"] = json!(cmp.matches());
                    v["missing"] = json!(cmp.missing);
                    v["unexpected"] = json!(cmp.unexpected);
                    writeln!(out, "{}", serde_json::to_string_pretty(&v).unwrap()).map_err(io)?;
                }
                Format::Table => {
                    write!(out, "{}", report.to_table()).map_err(io)?;
                    if cmp.matches() {
                        writeln!(out, "\nsurvivors match the expected table").map_err(io)?;
                    } else {
                        writeln!(out, "\nsurvivors differ from the expected table").map_err(io)?;
                        for r in &cmp.missing {
                            writeln!(out, "  missing:    {} {}{} {}", r.survivor, r.label, r.rank, r.case).map_err(io)?;
                        }
                        for r in &cmp.unexpected {
                            let a = r.alpha.as_ref().map(|a| a.join(",")).unwrap_or_default();
                            writeln!(out, "  unexpected: {}{} {} alpha=({a})", r.label, r.rank, r.case).map_err(io)?;
                        }
                    }
                }
            }
            Ok(if cmp.matches() { 0 } else { 1 })
        }
        Command::Solve { config } => {
            let text = std::fs::read_to_string(&config).map_err(io)?;
            let spec: ConfigSpec =
                serde_json::from_str(&text).map_err(|e| Error::Input(format!("{}: {e}", config.display())))?;
            let (rs, case, dist) = spec.distortion()?;
            let v = match derive_detailed(&rs, &dist, case)? {
                Err(o) => json!({
                    "dimension": 0,
                    "feasible": false,
                    "witness": [],
                    "unknowns": [],
                    "stage": o.stage.to_string(),
                    "obstruction": o.witness.to_string(),
                }),
                Ok(cfg) => {
                    let sc = StructureConstants::new(rs.clone());
                    let (sys, sol) = invform::solve_config(&sc, &cfg)?;
                    let enc = |x: &[crate::Rational]| -> Vec<String> { x.iter().map(|c| c.to_string()).collect() };
                    let mut v = json!({
                        "dimension": sol.dimension,
                        "feasible": sol.feasible(),
                        "witness": sol.nondegenerate_witness.as_deref().map(|w| vec![enc(w)]).unwrap_or_default(),
                        "unknowns": sys.unknown_names().into_iter().map(|(a, b)| vec![a, b]).collect::<Vec<_>>(),
                        "basis": sol.basis.iter().map(|b| enc(b)).collect::<Vec<_>>(),
                        "quotient": sys.names,
                    });
                    if let Some(inf) = &sol.infeasibility {
                        v["certificate"] = json!(format!("{inf:?}"));
                    }
                    if let Some(w) = &sol.nondegenerate_witness {
                        let rep = invform::verify_invariance(&sc, &sys, w)?;
                        v["residual"] = json!(rep.max_residual.to_string());
                    }
                    v
                }
            };
            writeln!(out, "{}", serde_json::to_string(&v).unwrap()).map_err(io)?;
            Ok(0)
        }
        Command::CheckExamples { construction, n, trials, seed } => {
            let mut report = serde_json::Map::new();
            let mut ok = true;
            if matches!(construction, ConstructionArg::Sp | ConstructionArg::All) {
                let v = constructions::check_sp_embedding(n, trials, seed)?;
                ok &= v.passed;
                report.insert("sp".into(), json!(v));
            }
            if matches!(construction, ConstructionArg::Sl | ConstructionArg::All) {
                let v = constructions::check_sl_embedding(n, trials, seed)?;
                ok &= v.passed;
                report.insert("sl".into(), json!(v));
            }
            if matches!(construction, ConstructionArg::G2 | ConstructionArg::All) {
                match constructions::check_g2() {
                    Ok(v) => {
                        ok &= v.passed;
                        report.insert("g2".into(), json!(v));
                    }
                    Err(e) => {
                        ok = false;
                        report.insert("g2".into(), json!({"passed": false, "error": e.to_string()}));
                    }
                }
            }
            report.insert("passed".into(), json!(ok));
            writeln!(out, "{}", serde_json::to_string_pretty(&report).unwrap()).map_err(io)?;
            Ok(if ok { 0 } else { 1 })
        }
        Command::DumpRoots { label, rank } => {
            let rs = system(&label, rank)?;
            let enc = |r: &[crate::Rational]| -> Vec<String> { r.iter().map(|c| c.to_string()).collect() };
            let v = json!({
                "label": rs.label().to_string(),
                "rank": rs.rank(),
                "simples": rs.simples().iter().map(|a| enc(a)).collect::<Vec<_>>(),
                "positives": (0..rs.num_positive()).map(|i| enc(rs.root(i))).collect::<Vec<_>>(),
            });
            writeln!(out, "{}", serde_json::to_string(&v).unwrap()).map_err(io)?;
            Ok(0)
        }
        Command::DumpConstants { label, rank } => {
            let rs = system(&label, rank)?;
            let sc = StructureConstants::new(rs);
            for line in sc.dump_lines() {
                writeln!(out, "{line}").map_err(io)?;
            }
            Ok(0)
        }
    }
}
