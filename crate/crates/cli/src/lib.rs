//! Experiment runner for the `satotate` library.
//!
//! Exit codes: 0 success, 1 a check failed, 2 invalid input, 3 degenerate
//! family (singular, constant j-invariant, or Δ ≡ 0 mod p).

pub mod args;
pub mod commands;
pub mod report;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;
use thiserror::Error;

use satotate::arith::is_prime;
use satotate::{OneParamFamily, Prime};

pub use args::{Cli, Command, Format, Options};
use commands::FamilyOptions;
use report::{FamilyReport, FamilyRow};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Invalid(String),
    #[error("{0}")]
    Degenerate(String),
    #[error("{0}")]
    CheckFailed(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::CheckFailed(_) => 1,
            CliError::Invalid(_) | CliError::Io { .. } => 2,
            CliError::Degenerate(_) => 3,
        }
    }
}

impl From<satotate::Error> for CliError {
    fn from(e: satotate::Error) -> Self {
        use satotate::Error::*;
        match e {
            SingularFamily | ConstantJInvariant | DegenerateModP(_) => CliError::Degenerate(e.to_string()),
            _ => CliError::Invalid(e.to_string()),
        }
    }
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |source| CliError::Io { path: path.to_path_buf(), source }
}

/// Explicit primes first (each must be a prime ≥ 5), then every prime ≥ 5 in
/// the range.
pub fn collect_primes(opts: &Options) -> Result<Vec<Prime>, CliError> {
    let mut out = Vec::new();
    for &n in &opts.primes {
        out.push(Prime::new(n)?);
    }
    if let Some((lo, hi)) = opts.prime_range {
        out.extend((lo.max(5)..=hi).filter(|&n| is_prime(n)).map(|n| Prime::new(n).expect("checked prime")));
    }
    if out.is_empty() {
        return Err(CliError::Invalid("no primes given; use --primes or --prime-range".into()));
    }
    Ok(out)
}

pub fn load_family(path: &Path) -> Result<OneParamFamily, CliError> {
    let text = fs::read_to_string(path).map_err(io_err(path))?;
    Ok(OneParamFamily::from_json(&text)?)
}

pub fn to_json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn to_csv<T: Serialize>(rows: &[T]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).expect("rows serialize");
    }
    String::from_utf8(w.into_inner().expect("in-memory writer")).expect("csv is utf-8")
}

fn emit(opts: &Options, text: &str) -> Result<(), CliError> {
    match &opts.out {
        Some(path) => fs::write(path, text).map_err(io_err(path)),
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            lock.write_all(text.as_bytes()).map_err(io_err(Path::new("<stdout>")))
        }
    }
}

fn plot_path(opts: &Options, p: Prime) -> PathBuf {
    match &opts.out {
        Some(out) => {
            let stem = out.file_stem().and_then(|s| s.to_str()).unwrap_or("report");
            out.with_file_name(format!("{stem}_plot_p{p}.csv"))
        }
        None => PathBuf::from(format!("plot_p{p}.csv")),
    }
}

fn write_plot(opts: &Options, p: Prime, sample: &satotate::AngleSample) -> Result<(), CliError> {
    let path = plot_path(opts, p);
    let mut w = csv::Writer::from_path(&path).map_err(|e| CliError::Invalid(e.to_string()))?;
    w.write_record(["x", "empirical_cdf", "sato_tate_cdf"]).map_err(|e| CliError::Invalid(e.to_string()))?;
    for (x, emp, st) in commands::plot_rows(sample) {
        w.serialize((x, emp, st)).map_err(|e| CliError::Invalid(e.to_string()))?;
    }
    w.flush().map_err(io_err(&path))
}

fn render_family(opts: &Options, reports: &[FamilyReport]) -> String {
    match opts.format {
        Format::Json => to_json(reports),
        Format::Csv => to_csv(&reports.iter().map(FamilyRow::from).collect::<Vec<_>>()),
    }
}

/// Runs one invocation and writes its output.
pub fn run(cli: &Cli) -> Result<(), CliError> {
    let opts = &cli.opts;
    if opts.threads > 0 {
        // a second call in the same process keeps the first pool, which is fine
        let _ = rayon::ThreadPoolBuilder::new().num_threads(opts.threads).build_global();
    }
    let family_opts = FamilyOptions { m: opts.m.map(|m| m as usize), exact: opts.exact };

    match &cli.command {
        Command::AllCurves => {
            let mut reports = Vec::new();
            for p in collect_primes(opts)? {
                let (report, sample) = commands::all_curves_report(p, &family_opts)?;
                if opts.plot_data {
                    write_plot(opts, p, &sample)?;
                }
                reports.push(report);
            }
            emit(opts, &render_family(opts, &reports))
        }
        Command::OneParam { family } => {
            let fam = load_family(family)?;
            let mut reports = Vec::new();
            for p in collect_primes(opts)? {
                let (report, sample) = commands::one_param_report(&fam, p, &family_opts)?;
                if opts.plot_data {
                    write_plot(opts, p, &sample)?;
                }
                reports.push(report);
            }
            emit(opts, &render_family(opts, &reports))?;
            let mismatch = reports.iter().any(|r| {
                r.one_param.as_ref().and_then(|o| o.a2_closed_form_match) == Some(false)
            });
            if mismatch {
                return Err(CliError::CheckFailed("second moment differs from its closed form".into()));
            }
            Ok(())
        }
        Command::Moments => {
            let rows = commands::moments_report(&collect_primes(opts)?)?;
            let text = match opts.format {
                Format::Json => to_json(&rows),
                Format::Csv => to_csv(&rows),
            };
            emit(opts, &text)?;
            if rows.iter().any(|r| !r.matches) {
                return Err(CliError::CheckFailed("a moment sum differs from its closed form".into()));
            }
            Ok(())
        }
        Command::Identities => {
            let report = commands::identities_report()?;
            let text = match opts.format {
                Format::Json => to_json(&report),
                Format::Csv => to_csv(&report.checks),
            };
            emit(opts, &text)?;
            if !report.pass {
                let failed: Vec<&str> = report.checks.iter().filter(|c| !c.pass).map(|c| c.name.as_str()).collect();
                return Err(CliError::CheckFailed(format!("identity checks failed: {}", failed.join(", "))));
            }
            Ok(())
        }
    }
}
