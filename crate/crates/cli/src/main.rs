//! `dala`: runs the double affine checks and prints a JSON or table report.
//!
//! Exit codes: 0 all checks pass, 1 a check failed, 2 configuration error.

mod commands;
mod config;
mod report;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::{EvalRelArgs, GarlandArgs, NilpotencyArgs, SignArg};
use config::{CliError, CommonArgs, Format, RunConfig};

#[derive(Debug, Parser)]
#[command(name = "dala", version, about = "Exact checks for double affine Lie algebras")]
struct Cli {
    #[command(flatten)]
    common: CommonArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Root partition table and closed-set axioms over the degree box.
    Roots,
    /// δ2 weight-space dimensions and truncated growth.
    Dims,
    /// Extremal vectors in the δ2 weight spaces.
    Extremal,
    /// Irreducibility probe with a witness when reducible.
    Irreducible,
    /// Garland identities on level-zero modules.
    Garland {
        /// `t` or a range such as `1..3`; defaults to `1..3`.
        #[arg(long)]
        t: Option<String>,
        #[arg(long, default_value = "a1")]
        beta: String,
        #[arg(long, default_value_t = 0)]
        r1: i64,
        #[arg(long, value_enum, default_value_t = SignArg::Both)]
        sign: SignArg,
    },
    /// Nilpotency index of x(-α_i, n) on the highest weight vector.
    Nilpotency {
        #[arg(long, default_value_t = 1)]
        node: usize,
        #[arg(long, default_value_t = 0)]
        n: i64,
        #[arg(long)]
        nmax: Option<usize>,
    },
    /// Evaluation relations with a perturbed-ε control.
    Evalrel {
        #[arg(long, default_value_t = 3)]
        mwindow: i64,
        #[arg(long, default_value_t = 2)]
        window: i64,
    },
    /// Annihilator polynomial checks on generators.
    Annihilator {
        #[arg(long, default_value_t = 2)]
        window: i64,
    },
    /// Loop-sl2 Weyl module dimension.
    Weyl {
        #[arg(long)]
        points: String,
        #[arg(long)]
        weights: String,
    },
    /// Jacobi identity on random and exhaustive triples.
    Jacobi {
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        /// Degree range, e.g. `-2..2`.
        #[arg(long, allow_hyphen_values = true)]
        exhaustive: Option<String>,
    },
    /// Dimensions along the surjection chain of induced modules.
    Chain {
        /// Smaller parabolic set; `--parabolic` gives the larger one.
        #[arg(long)]
        parabolic_small: Option<String>,
        /// Weights `a0,..,as;d` separated by `|`.
        #[arg(long)]
        mus: Option<String>,
    },
    /// Prints the JSON schema of the reports.
    Schema,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Roots => "roots",
            Command::Dims => "dims",
            Command::Extremal => "extremal",
            Command::Irreducible => "irreducible",
            Command::Garland { .. } => "garland",
            Command::Nilpotency { .. } => "nilpotency",
            Command::Evalrel { .. } => "evalrel",
            Command::Annihilator { .. } => "annihilator",
            Command::Weyl { .. } => "weyl",
            Command::Jacobi { .. } => "jacobi",
            Command::Chain { .. } => "chain",
            Command::Schema => "schema",
        }
    }
}

fn run(cli: &Cli) -> Result<(report::Outcome, RunConfig), CliError> {
    let cfg = RunConfig::resolve(&cli.common)?;
    let out = match &cli.command {
        Command::Roots => commands::roots(&cfg),
        Command::Dims => commands::dims(&cfg),
        Command::Extremal => commands::extremal(&cfg),
        Command::Irreducible => commands::irreducible(&cfg),
        Command::Garland { t, beta, r1, sign } => {
            commands::garland(&cfg, &GarlandArgs { t: t.clone(), beta: beta.clone(), r1: *r1, sign: *sign })
        }
        Command::Nilpotency { node, n, nmax } => {
            commands::nilpotency(&cfg, &NilpotencyArgs { node: *node, n: *n, nmax: *nmax })
        }
        Command::Evalrel { mwindow, window } => commands::evalrel(&cfg, &EvalRelArgs { mwindow: *mwindow, window: *window }),
        Command::Annihilator { window } => commands::annihilator(&cfg, *window),
        Command::Weyl { points, weights } => commands::weyl(points, weights),
        Command::Jacobi { trials, exhaustive } => commands::jacobi(&cfg, *trials, exhaustive.as_deref()),
        Command::Chain { parabolic_small, mus } => commands::chain(&cfg, parabolic_small.as_deref(), mus.as_deref()),
        Command::Schema => unreachable!("handled before configuration"),
    }?;
    Ok((out, cfg))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if matches!(cli.command, Command::Schema) {
        print!("{}", report::SCHEMA);
        return ExitCode::SUCCESS;
    }
    match run(&cli) {
        Ok((out, cfg)) => {
            let value = report::assemble(cli.command.name(), &cfg, &out);
            match cfg.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&value).expect("serializable")),
                Format::Table => print!("{}", report::table(&value)),
            }
            if out.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("dala: {e}");
            ExitCode::from(2)
        }
    }
}
