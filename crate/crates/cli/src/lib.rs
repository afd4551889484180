//! Experiment runner behind the `reslab` binary.
//!
//! Exit codes: 0 success, 1 a certificate or oracle check failed, 2 invalid
//! configuration, 3 I/O failure.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod config;
mod oracle;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use reslab::extremes::{self, phi_delta_census, scan_theorem1, scan_theorem3_with};
use reslab::resonance::{
    exclude_principal, linear_certificate, ratio_certificate, ResonanceReport,
};

pub use config::{parse_config, Command, Format, RunConfig};
pub use oracle::oracle_check;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_IO: i32 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Args(#[from] clap::Error),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("q = {q}: {source}")]
    Compute { q: u64, source: reslab::Error },
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Args(e) if !e.use_stderr() => EXIT_OK,
            CliError::Args(_) | CliError::Config(_) | CliError::Compute { .. } => EXIT_CONFIG,
            CliError::Io { .. } => EXIT_IO,
        }
    }
}

/// Rendered results for one modulus.
struct Output {
    q: u64,
    csv: String,
    json: String,
    ok: bool,
}

fn csv_doc(header: &str, rows: impl IntoIterator<Item = String>) -> String {
    let mut s = String::from(header);
    s.push('\n');
    for r in rows {
        s.push_str(&r);
        s.push('\n');
    }
    s
}

fn to_json<T: serde::Serialize + ?Sized>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("reports serialize") + "\n"
}

fn compute(cfg: &RunConfig, q: u64) -> Result<Output, reslab::Error> {
    Ok(match cfg.command {
        Command::Certify => {
            let report: ResonanceReport = match cfg.x {
                Some(x) => linear_certificate(q, x, cfg.y, cfg.n, cfg.k)?,
                None => ratio_certificate(q, cfg.b, cfg.n, cfg.k, cfg.y)?,
            };
            let excluded = exclude_principal(&report)?;
            Output {
                q,
                csv: csv_doc(
                    ResonanceReport::CSV_HEADER,
                    [report.csv_row(), excluded.csv_row()],
                ),
                json: to_json(&serde_json::json!({
                    "report": report,
                    "principal_excluded": excluded,
                })),
                ok: report.certificate.pass,
            }
        }
        Command::ScanT1 => {
            let r = scan_theorem1(q, cfg.epsilon)?;
            Output {
                q,
                csv: csv_doc(extremes::CSV_HEADER, [r.csv_row()]),
                json: to_json(&r),
                ok: true,
            }
        }
        Command::Census => {
            let r = phi_delta_census(q, &cfg.deltas)?;
            Output {
                q,
                csv: csv_doc(extremes::CSV_HEADER, r.csv_rows()),
                json: to_json(&r),
                ok: true,
            }
        }
        Command::ScanT3 => {
            let r = scan_theorem3_with(
                q,
                cfg.sigma,
                cfg.x_cap,
                cfg.a_sigma,
                cfg.y_min,
                cfg.tol,
                cfg.n,
            )?;
            let ok = r
                .theorem3
                .as_ref()
                .is_some_and(|t| t.certificate.certificate.pass);
            Output {
                q,
                csv: csv_doc(extremes::CSV_HEADER, [r.csv_row()]),
                json: to_json(&r),
                ok,
            }
        }
        Command::OracleCheck => unreachable!("handled before dispatch"),
    })
}

/// Writes `contents` to `dir/name` through a temporary file in the same
/// directory, so readers never observe a partial file.
pub fn write_atomic(dir: &Path, name: &str, contents: &str) -> Result<(), CliError> {
    let path = dir.join(name);
    let io = |source| CliError::Io {
        path: path.clone(),
        source,
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
    tmp.write_all(contents.as_bytes()).map_err(io)?;
    tmp.as_file().sync_all().map_err(io)?;
    tmp.persist(&path).map_err(|e| io(e.error))?;
    Ok(())
}

fn pool(jobs: usize) -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .expect("thread pool")
}

/// Executes a validated configuration and returns the exit code.
pub fn run(cfg: &RunConfig) -> i32 {
    match try_run(cfg) {
        Ok(all_ok) => {
            if all_ok {
                EXIT_OK
            } else {
                EXIT_CHECK_FAILED
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn try_run(cfg: &RunConfig) -> Result<bool, CliError> {
    if cfg.command == Command::OracleCheck {
        let stdout = std::io::stdout();
        return pool(cfg.jobs)
            .install(|| oracle_check(&cfg.q_list, &mut stdout.lock()))
            .map_err(|source| CliError::Io {
                path: PathBuf::from("<stdout>"),
                source,
            });
    }
    let outputs: Vec<Output> = pool(cfg.jobs).install(|| {
        cfg.q_list
            .par_iter()
            .map(|&q| compute(cfg, q).map_err(|source| CliError::Compute { q, source }))
            .collect::<Result<_, _>>()
    })?;

    std::fs::create_dir_all(&cfg.output_dir).map_err(|source| CliError::Io {
        path: cfg.output_dir.clone(),
        source,
    })?;
    let name = cfg.command.name();
    let mut all_ok = true;
    for out in &outputs {
        if cfg.format.csv() {
            write_atomic(&cfg.output_dir, &format!("{name}_q{}.csv", out.q), &out.csv)?;
        }
        if cfg.format.json() {
            write_atomic(
                &cfg.output_dir,
                &format!("{name}_q{}.json", out.q),
                &out.json,
            )?;
        }
        println!(
            "{name} q={}: {}",
            out.q,
            if out.ok { "ok" } else { "FAILED" }
        );
        all_ok &= out.ok;
    }
    Ok(all_ok)
}

/// Parses arguments, runs, and maps every outcome to an exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match parse_config(args) {
        Ok(cfg) => run(&cfg),
        Err(CliError::Args(e)) => {
            let _ = e.print();
            CliError::Args(e).exit_code()
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
