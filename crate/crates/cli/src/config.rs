use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use dala_core::dala::{Algebra, Fault};
use dala_core::partition::ParabolicSpec;
use dala_core::pbw::WeightFunctional;
use serde::Deserialize;
use serde_json::Value;
use thiserror::Error;

pub const SEED_ENV: &str = "DALA_SEED";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration error at {location}: {message}")]
    Config { location: String, message: String },
    #[error("computation error: {0}")]
    Runtime(String),
}

impl CliError {
    pub fn config(location: impl Into<String>, message: impl ToString) -> Self {
        Self::Config { location: location.into(), message: message.to_string() }
    }

    pub fn runtime(e: impl ToString) -> Self {
        Self::Runtime(e.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Imaginary,
    Parabolic,
    Levelzero,
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Variant::Imaginary => "imaginary",
            Variant::Parabolic => "parabolic",
            Variant::Levelzero => "levelzero",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FaultArg {
    PrintedCocycle,
    FlippedCoroot,
}

/// Flags shared by every subcommand. Unset flags fall back to the config
/// file, then to per-command defaults.
#[derive(Debug, Clone, Default, Args)]
pub struct CommonArgs {
    /// Finite type, e.g. A1, A2, D4, E6.
    #[arg(long, global = true)]
    pub algebra: Option<String>,
    #[arg(long, global = true, value_enum)]
    pub variant: Option<Variant>,
    /// Parabolic node set, e.g. `1,2` (node 0 is α0).
    #[arg(long, global = true)]
    pub parabolic: Option<String>,
    /// Highest weight as inline JSON or a path to a JSON file.
    #[arg(long, global = true)]
    pub lambda: Option<String>,
    /// Degree box, e.g. `m=-4..4,n=-4..4`.
    #[arg(long = "box", global = true)]
    pub degree_box: Option<String>,
    #[arg(long, global = true)]
    pub maxlen: Option<usize>,
    #[arg(long, global = true)]
    pub t2window: Option<i64>,
    #[arg(long, global = true)]
    pub kmax: Option<usize>,
    /// Seed for all randomness; defaults to $DALA_SEED, then 0.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// JSON file with the same keys as the long flags.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[arg(long, global = true, value_enum, hide = true)]
    pub inject_fault: Option<FaultArg>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "lowercase")]
struct ConfigFile {
    algebra: Option<String>,
    variant: Option<Variant>,
    parabolic: Option<Vec<usize>>,
    lambda: Option<Value>,
    #[serde(rename = "box")]
    degree_box: Option<String>,
    maxlen: Option<usize>,
    t2window: Option<i64>,
    kmax: Option<usize>,
    seed: Option<u64>,
    format: Option<Format>,
}

/// Inclusive `m` and `n` ranges.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DegreeBox {
    pub m: (i64, i64),
    pub n: (i64, i64),
}

impl DegreeBox {
    pub fn bound(&self) -> (i64, i64) {
        (self.m.0.abs().max(self.m.1.abs()), self.n.0.abs().max(self.n.1.abs()))
    }

    pub fn contains(&self, m: i64, n: i64) -> bool {
        (self.m.0..=self.m.1).contains(&m) && (self.n.0..=self.n.1).contains(&n)
    }
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub label: String,
    pub algebra: Algebra,
    pub fault: Option<FaultArg>,
    pub variant: Option<Variant>,
    pub parabolic: Option<ParabolicSpec>,
    pub lambda: Option<WeightFunctional>,
    pub degree_box: DegreeBox,
    pub maxlen: Option<usize>,
    pub t2window: Option<i64>,
    pub kmax: Option<usize>,
    pub seed: u64,
    pub format: Format,
}

pub fn parse_range(text: &str, location: &str) -> Result<(i64, i64), CliError> {
    let (lo, hi) = text
        .split_once("..")
        .ok_or_else(|| CliError::config(location, format!("expected lo..hi, got `{text}`")))?;
    let parse = |s: &str| {
        s.trim().parse::<i64>().map_err(|e| CliError::config(location, format!("`{s}`: {e}")))
    };
    let (lo, hi) = (parse(lo)?, parse(hi)?);
    if lo > hi {
        return Err(CliError::config(location, format!("empty range {lo}..{hi}")));
    }
    Ok((lo, hi))
}

fn parse_box(text: &str) -> Result<DegreeBox, CliError> {
    let mut out = DegreeBox { m: (-4, 4), n: (-4, 4) };
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (key, range) =
            part.split_once('=').ok_or_else(|| CliError::config("--box", format!("expected m=lo..hi, got `{part}`")))?;
        let r = parse_range(range, "--box")?;
        match key.trim() {
            "m" => out.m = r,
            "n" => out.n = r,
            other => return Err(CliError::config("--box", format!("unknown axis `{other}`"))),
        }
    }
    Ok(out)
}

pub fn parse_list<T: std::str::FromStr>(text: &str, location: &str) -> Result<Vec<T>, CliError>
where
    T::Err: std::fmt::Display,
{
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<T>().map_err(|e| CliError::config(location, format!("`{s}`: {e}"))))
        .collect()
}

fn read_json(path: &Path, location: &str) -> Result<Value, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::config(location, format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::config(format!("{} ({})", location, path.display()), e))
}

impl RunConfig {
    pub fn resolve(args: &CommonArgs) -> Result<Self, CliError> {
        let file: ConfigFile = match &args.config {
            Some(path) => {
                let value = read_json(path, "--config")?;
                serde_json::from_value(value).map_err(|e| CliError::config(format!("--config ({})", path.display()), e))?
            }
            None => ConfigFile::default(),
        };

        let label = args.algebra.clone().or(file.algebra).unwrap_or_else(|| "A1".into());
        let algebra = Algebra::from_label(&label).map_err(|e| CliError::config("--algebra", e))?;
        let fault = args.inject_fault;
        let algebra = algebra.with_fault(match fault {
            None => Fault::None,
            Some(FaultArg::PrintedCocycle) => Fault::PrintedCocycle,
            Some(FaultArg::FlippedCoroot) => Fault::FlippedCoroot,
        });
        let rank = algebra.rank();

        let parabolic = match (&args.parabolic, file.parabolic) {
            (Some(text), _) => Some(parse_list::<usize>(text, "--parabolic")?),
            (None, from_file) => from_file,
        }
        .map(|idx| ParabolicSpec::new(rank, idx).map_err(|e| CliError::config("--parabolic", e)))
        .transpose()?;

        let lambda_value = match &args.lambda {
            Some(text) if text.trim_start().starts_with('{') => Some(
                serde_json::from_str::<Value>(text).map_err(|e| CliError::config("--lambda", e))?,
            ),
            Some(path) => Some(read_json(Path::new(path), "--lambda")?),
            None => file.lambda,
        };
        let lambda = lambda_value
            .map(|v| WeightFunctional::from_json(&v, rank).map_err(|e| CliError::config("--lambda", e)))
            .transpose()?;

        let degree_box = match args.degree_box.as_deref().or(file.degree_box.as_deref()) {
            Some(text) => parse_box(text)?,
            None => DegreeBox { m: (-4, 4), n: (-4, 4) },
        };

        let seed = match args.seed.or(file.seed) {
            Some(s) => s,
            None => match std::env::var(SEED_ENV) {
                Ok(v) => v.trim().parse().map_err(|e| CliError::config(SEED_ENV, format!("`{v}`: {e}")))?,
                Err(_) => 0,
            },
        };

        Ok(Self {
            label,
            algebra,
            fault,
            variant: args.variant.or(file.variant),
            parabolic,
            lambda,
            degree_box,
            maxlen: args.maxlen.or(file.maxlen),
            t2window: args.t2window.or(file.t2window),
            kmax: args.kmax.or(file.kmax),
            seed,
            format: args.format.or(file.format).unwrap_or(Format::Json),
        })
    }

    pub fn rank(&self) -> usize {
        self.algebra.rank()
    }

    /// The variant a command runs on; an explicit different `--variant` is an error.
    pub fn require_variant(&self, wanted: Variant, command: &str) -> Result<Variant, CliError> {
        match self.variant {
            Some(v) if v != wanted => {
                Err(CliError::config("--variant", format!("`{command}` needs {}, got {}", wanted.name(), v.name())))
            }
            _ => Ok(wanted),
        }
    }

    pub fn lambda_or(&self, default: impl FnOnce(usize) -> WeightFunctional) -> WeightFunctional {
        self.lambda.clone().unwrap_or_else(|| default(self.rank()))
    }

    pub fn fault_name(&self) -> Option<&'static str> {
        self.fault.map(|f| match f {
            FaultArg::PrintedCocycle => "printed-cocycle",
            FaultArg::FlippedCoroot => "flipped-coroot",
        })
    }
}
