use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use reslab::numth::is_prime;
use reslab::resonance::default_a_sigma;

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Resonance certificate at σ = 1 with linear weights.
    Certify,
    /// Maximum of |L(1, χ)| against the Theorem-1 bound.
    #[command(name = "scan-t1")]
    ScanT1,
    /// Counts Φ(δ) of characters above the shifted thresholds.
    Census,
    /// Maximum of log|L(σ, χ)| for σ < 1 with its half-weight certificate.
    #[command(name = "scan-t3")]
    ScanT3,
    /// Cross-checks the fast kernels against the reference oracles.
    #[command(name = "oracle-check")]
    OracleCheck,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Certify => "certify",
            Command::ScanT1 => "scan-t1",
            Command::Census => "census",
            Command::ScanT3 => "scan-t3",
            Command::OracleCheck => "oracle-check",
        }
    }

    fn min_modulus(self) -> u64 {
        match self {
            Command::Certify | Command::OracleCheck => 5,
            _ => reslab::extremes::MIN_MODULUS,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Both,
}

impl Format {
    pub fn csv(self) -> bool {
        matches!(self, Format::Csv | Format::Both)
    }

    pub fn json(self) -> bool {
        matches!(self, Format::Json | Format::Both)
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "reslab",
    version,
    about = "Extreme values of Dirichlet L-functions modulo a prime"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Prime moduli, comma separated or repeated.
    #[arg(long, value_delimiter = ',', global = true)]
    q: Vec<u64>,
    #[arg(long, global = true)]
    sigma: Option<f64>,
    #[arg(long, value_delimiter = ',', global = true)]
    delta: Vec<f64>,
    #[arg(long = "B", alias = "b", global = true)]
    b: Option<f64>,
    #[arg(long, global = true)]
    epsilon: Option<f64>,
    #[arg(long, global = true)]
    a_sigma: Option<f64>,
    #[arg(long, global = true)]
    x_cap: Option<f64>,
    #[arg(long, global = true)]
    y_min: Option<f64>,
    #[arg(long, global = true)]
    n: Option<u64>,
    #[arg(long, global = true)]
    k: Option<u64>,
    /// Smoothness bound of the L-coefficients in certify runs.
    #[arg(long, global = true)]
    y: Option<f64>,
    /// Explicit resonator cutoff, replacing log q log log q / B.
    #[arg(long, global = true)]
    x: Option<f64>,
    #[arg(long, global = true)]
    tol: Option<f64>,
    #[arg(long, global = true)]
    output_dir: Option<PathBuf>,
    #[arg(long, value_enum, global = true)]
    format: Option<Format>,
    /// Flat `key = value` file; flags take precedence.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Moduli processed concurrently.
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub q_list: Vec<u64>,
    pub sigma: f64,
    pub deltas: Vec<f64>,
    pub b: f64,
    pub epsilon: f64,
    pub a_sigma: f64,
    pub x_cap: f64,
    pub y_min: f64,
    pub n: u64,
    pub k: u64,
    pub y: f64,
    pub x: Option<f64>,
    pub tol: f64,
    pub output_dir: PathBuf,
    pub format: Format,
    pub jobs: usize,
}

/// Values read from a config file, all optional.
#[derive(Debug, Default)]
struct FileValues {
    q: Option<Vec<u64>>,
    sigma: Option<f64>,
    delta: Option<Vec<f64>>,
    b: Option<f64>,
    epsilon: Option<f64>,
    a_sigma: Option<f64>,
    x_cap: Option<f64>,
    y_min: Option<f64>,
    n: Option<u64>,
    k: Option<u64>,
    y: Option<f64>,
    x: Option<f64>,
    tol: Option<f64>,
    output_dir: Option<PathBuf>,
    format: Option<Format>,
    jobs: Option<usize>,
}

fn parse_value<T: std::str::FromStr>(key: &str, v: &str) -> Result<T, CliError> {
    v.parse()
        .map_err(|_| CliError::Config(format!("invalid value for `{key}`: {v}")))
}

fn parse_list<T: std::str::FromStr>(key: &str, v: &str) -> Result<Vec<T>, CliError> {
    v.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| parse_value(key, s))
        .collect()
}

fn read_config_file(path: &Path) -> Result<FileValues, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("cannot read config {}: {e}", path.display())))?;
    let mut f = FileValues::default();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            CliError::Config(format!(
                "{}:{}: expected `key = value`",
                path.display(),
                lineno + 1
            ))
        })?;
        let key = key.trim().to_ascii_lowercase().replace('-', "_");
        let v = value.trim();
        match key.as_str() {
            "q" => f.q = Some(parse_list(&key, v)?),
            "sigma" => f.sigma = Some(parse_value(&key, v)?),
            "delta" => f.delta = Some(parse_list(&key, v)?),
            "b" => f.b = Some(parse_value(&key, v)?),
            "epsilon" => f.epsilon = Some(parse_value(&key, v)?),
            "a_sigma" => f.a_sigma = Some(parse_value(&key, v)?),
            "x_cap" => f.x_cap = Some(parse_value(&key, v)?),
            "y_min" => f.y_min = Some(parse_value(&key, v)?),
            "n" => f.n = Some(parse_value(&key, v)?),
            "k" => f.k = Some(parse_value(&key, v)?),
            "y" => f.y = Some(parse_value(&key, v)?),
            "x" => f.x = Some(parse_value(&key, v)?),
            "tol" => f.tol = Some(parse_value(&key, v)?),
            "output_dir" => f.output_dir = Some(PathBuf::from(v)),
            "format" => {
                f.format = Some(
                    Format::from_str(v, true)
                        .map_err(|_| CliError::Config(format!("invalid format: {v}")))?,
                )
            }
            "jobs" => f.jobs = Some(parse_value(&key, v)?),
            other => {
                return Err(CliError::Config(format!(
                    "{}:{}: unknown key `{other}`",
                    path.display(),
                    lineno + 1
                )))
            }
        }
    }
    Ok(f)
}

fn non_empty<T>(v: Vec<T>) -> Option<Vec<T>> {
    (!v.is_empty()).then_some(v)
}

/// Parses the command line (program name first) and an optional config file.
pub fn parse_config<I, T>(args: I) -> Result<RunConfig, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(args)?;
    let file = match &cli.config {
        Some(p) => read_config_file(p)?,
        None => FileValues::default(),
    };
    let sigma = cli.sigma.or(file.sigma).unwrap_or(0.75);
    let cfg = RunConfig {
        command: cli.command,
        q_list: non_empty(cli.q).or(file.q).unwrap_or_default(),
        sigma,
        deltas: non_empty(cli.delta)
            .or(file.delta)
            .unwrap_or_else(|| vec![0.5, 1.0, 2.0, 3.0]),
        b: cli.b.or(file.b).unwrap_or(1.4),
        epsilon: cli.epsilon.or(file.epsilon).unwrap_or(0.0),
        a_sigma: cli
            .a_sigma
            .or(file.a_sigma)
            .unwrap_or_else(|| default_a_sigma(sigma)),
        x_cap: cli.x_cap.or(file.x_cap).unwrap_or(1e5),
        y_min: cli.y_min.or(file.y_min).unwrap_or(20.0),
        n: cli.n.or(file.n).unwrap_or(10_000),
        k: cli.k.or(file.k).unwrap_or(10_000),
        y: cli.y.or(file.y).unwrap_or(1e4),
        x: cli.x.or(file.x),
        tol: cli.tol.or(file.tol).unwrap_or(1.0),
        output_dir: cli
            .output_dir
            .or(file.output_dir)
            .unwrap_or_else(|| PathBuf::from("out")),
        format: cli.format.or(file.format).unwrap_or(Format::Both),
        jobs: cli.jobs.or(file.jobs).unwrap_or(1),
    };
    validate(&cfg)?;
    Ok(cfg)
}

fn invalid(msg: String) -> Result<(), CliError> {
    Err(CliError::Config(msg))
}

fn validate(c: &RunConfig) -> Result<(), CliError> {
    if c.q_list.is_empty() {
        return invalid("q list is empty".into());
    }
    let min = c.command.min_modulus();
    for &q in &c.q_list {
        if !is_prime(q) {
            return invalid(format!("q = {q} is not prime"));
        }
        if q < min {
            return invalid(format!("q = {q} is below {min} for {}", c.command.name()));
        }
    }
    if c.jobs == 0 {
        return invalid("jobs must be at least 1".into());
    }
    match c.command {
        Command::Certify => {
            if c.x.is_none() && !(c.b > 4f64.ln()) {
                return invalid(format!("B = {} must exceed log 4", c.b));
            }
            if c.n == 0 || c.k == 0 {
                return invalid("n and k must be positive".into());
            }
        }
        Command::ScanT1 if !(c.epsilon >= 0.0) => {
            return invalid(format!("epsilon = {} must be nonnegative", c.epsilon));
        }
        Command::Census => {
            if let Some(d) = c.deltas.iter().find(|&&d| !(d > 0.0)) {
                return invalid(format!("delta = {d} must be positive"));
            }
        }
        Command::ScanT3 => {
            if !(c.sigma > 0.5 && c.sigma < 1.0) {
                return invalid(format!("sigma = {} must lie in (1/2, 1)", c.sigma));
            }
            if !(c.tol >= 0.0) {
                return invalid(format!("tol = {} must be nonnegative", c.tol));
            }
        }
        _ => {}
    }
    Ok(())
}
