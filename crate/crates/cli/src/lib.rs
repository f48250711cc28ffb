//! The `gradus` command-line front end. [`run`] parses arguments, dispatches
//! to a command and returns the process exit code: 0 when every checked
//! property holds, 1 when one fails, 2 on a usage error.

pub mod args;
pub mod commands;
pub mod criteria;
pub mod frozen;
pub mod oracle;
pub mod output;

use std::ffi::OsString;
use std::io::Write;
use std::path::Path;

use clap::Parser;
use gradus_core::graded::TruncationParams;
use serde_json::json;

use args::{Cli, Command, Format, Func};
use commands::{failure, usage, CliError};
use criteria::{CheckConfig, GENERATION, GROWTH, HILBERT_BOUND};
use output::{Report, Table};

fn truncation(d_max: u32, n: u32, delta_n: u32) -> Result<TruncationParams, CliError> {
    TruncationParams::new(d_max, n, delta_n).map_err(usage)
}

fn regen_oracles(dir: &Path) -> Result<(), CliError> {
    let inst = commands::load_family(None)?;
    let growth = truncation(GROWTH.0, GROWTH.1, GROWTH.2)?;
    for (name, func) in [("max", Func::Max), ("delta1", Func::Delta1)] {
        let f = commands::plane_function(func, &inst)?;
        let path = frozen::regenerate_generators(dir, name, &f, growth).map_err(failure)?;
        eprintln!("wrote {}", path.display());
    }
    let path = frozen::regenerate_hilbert(dir, HILBERT_BOUND).map_err(failure)?;
    eprintln!("wrote {}", path.display());
    Ok(())
}

fn check_all(cfg: &CheckConfig) -> (Report, serde_json::Value) {
    let (outcomes, times) = criteria::run_all(cfg);
    let mut table = Table::new(&["criterion", "name", "passed"]);
    for o in &outcomes {
        table.push(vec![o.id.to_string(), o.name.to_string(), o.passed.to_string()]);
    }
    let failed: Vec<u8> = outcomes.iter().filter(|o| !o.passed).map(|o| o.id).collect();
    let timings: serde_json::Map<String, serde_json::Value> = times
        .iter()
        .map(|(id, t)| (id.to_string(), json!(t.as_millis() as u64)))
        .collect();
    let report = Report {
        command: "check-all",
        config: json!({
            "seed": cfg.seed,
            "generation": cfg.generation,
            "growth": cfg.growth,
            "hilbertBound": HILBERT_BOUND,
        }),
        result: json!({ "criteria": outcomes, "failed": failed }),
        table,
        passed: failed.is_empty(),
    };
    (report, json!({ "timingsMs": timings }))
}

fn write_output(text: &str, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| usage(format!("cannot write {}: {e}", p.display()))),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(failure),
    }
}

fn dispatch(cli: &Cli) -> Result<Report, CliError> {
    let family = cli.family_file.as_deref();
    let seed = cli.seed;
    match &cli.command {
        Command::Degree { func, poly } => commands::degree(*func, poly, family, seed),
        Command::Lift { poly, i } => {
            if family.is_some() {
                return Err(usage("lift works on the main example only"));
            }
            commands::lift(poly, *i, seed)
        }
        Command::VerifyLemma { samples, i } => commands::verify_lemma(*samples, *i, seed),
        Command::Generators { func, dmax, n, delta_n, shuffle } => {
            commands::generators(*func, truncation(*dmax, *n, *delta_n)?, *shuffle, family, seed)
        }
        Command::IntersectGrowth { dmax, n } => commands::intersect_growth(*dmax, *n, family, seed),
        Command::Family { samples } => commands::family(*samples, family, seed),
        Command::CheckAll { dmax, n, delta_n, regen_oracles: regen, oracle_dir } => {
            let mut cfg = CheckConfig::standard(seed);
            cfg.generation = truncation(
                dmax.unwrap_or(GENERATION.0),
                n.unwrap_or(GENERATION.1),
                delta_n.unwrap_or(GENERATION.2),
            )?;
            cfg.growth = truncation(
                dmax.unwrap_or(GROWTH.0),
                n.unwrap_or(GROWTH.1),
                delta_n.unwrap_or(GROWTH.2),
            )?;
            if let Some(dir) = oracle_dir {
                cfg.oracle_dir = dir.clone();
            }
            if *regen {
                regen_oracles(&cfg.oracle_dir)?;
            }
            let (report, timings) = check_all(&cfg);
            // Wall times vary between runs, so they stay out of the report.
            eprintln!("{timings}");
            if let Some(out) = &cli.out {
                let mut side = out.clone().into_os_string();
                side.push(".timings.json");
                std::fs::write(&side, format!("{timings}\n")).map_err(failure)?;
            }
            for o in report.result["criteria"].as_array().into_iter().flatten() {
                for oracle in o["detail"]["oracles"].as_array().into_iter().flatten().chain(
                    std::iter::once(&o["detail"]["oracle"]).filter(|v| !v.is_null()),
                ) {
                    if let Some(diff) = oracle["diff"].as_str() {
                        eprintln!("frozen oracle mismatch:\n{diff}");
                    }
                }
            }
            Ok(report)
        }
    }
}

/// Runs the CLI on `argv` (including the program name) and returns the exit
/// code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let report = match dispatch(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("{e}");
            return e.exit_code();
        }
    };
    let text = match (&cli.command, cli.format) {
        (Command::Degree { .. }, None) => {
            format!("{}\n", report.result["value"].as_str().map(String::from).unwrap_or_else(|| report.result["value"].to_string()))
        }
        (_, format) => report.render(format.unwrap_or(Format::Json)),
    };
    if let Err(e) = write_output(&text, cli.out.as_deref()) {
        eprintln!("{e}");
        return e.exit_code();
    }
    if report.passed {
        0
    } else {
        1
    }
}
