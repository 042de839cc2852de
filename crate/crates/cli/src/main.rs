//! `protoexact`: compute, classify, audit and factor from the command line.

mod commands;
mod input;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use protoexact::category::{AuditBounds, DEFAULT_SEED};
use protoexact::exec::Exec;

use commands::{
    AuditOptions, FactorMode, FactorOptionsCli, Generators, InstanceKind, Outcome, Suite,
};
use input::CliError;

#[derive(Parser)]
#[command(
    name = "protoexact",
    version,
    about = "Exact computations in proto-exact categories"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Also write the JSON report to this file.
    #[arg(long, global = true, value_name = "PATH")]
    json: Option<PathBuf>,
    /// Print the plain-text summary or the JSON report on standard output.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Kernels, cokernels, pullbacks, pushouts, quotient norms, orthogonal bases and chain colimits.
    Compute {
        #[command(subcommand)]
        what: Compute,
    },
    /// Classify a weighted or pointed map.
    Classify {
        #[arg(long, value_name = "FILE")]
        map: PathBuf,
    },
    /// Audit the proto-exact, totality and obscure axioms on an instance.
    Audit(AuditArgs),
    /// Replay the two pointed-set counterexamples.
    Counterexamples {
        /// Bound for the exhaustive left obscure check.
        #[arg(long, default_value_t = 4)]
        max_size: usize,
        #[command(flatten)]
        jobs: Jobs,
    },
    /// Factor a map, or build a special preenvelope or precover, by attaching generators.
    Factor(FactorArgs),
    /// Replay a certificate written by `factor`.
    VerifyCert {
        #[arg(long, value_name = "FILE")]
        cert: PathBuf,
        #[command(flatten)]
        jobs: Jobs,
    },
    /// Compare the algorithms with brute force on the bounded instances.
    OracleCheck {
        #[arg(long, default_value = "F2")]
        field: String,
        #[arg(long, default_value = "g^0,g^1,g^2")]
        weights: String,
        #[arg(long, default_value_t = 2)]
        max_dim: usize,
        /// Bound for the pointed-set comparison.
        #[arg(long, default_value_t = 3)]
        max_size: usize,
    },
}

#[derive(Subcommand)]
enum Compute {
    /// The kernel inclusion of a weighted map.
    Kernel {
        #[arg(long, value_name = "FILE")]
        map: PathBuf,
    },
    /// The cokernel projection of a weighted map.
    Cokernel {
        #[arg(long, value_name = "FILE")]
        map: PathBuf,
    },
    /// The pullback of `f: X → Y` and `g: Z → Y`.
    Pullback {
        #[arg(long, value_name = "FILE")]
        f: PathBuf,
        #[arg(long, value_name = "FILE")]
        g: PathBuf,
    },
    /// The pushout of `i: K → X` and `g: K → Z`.
    Pushout {
        #[arg(long, value_name = "FILE")]
        i: PathBuf,
        #[arg(long, value_name = "FILE")]
        g: PathBuf,
    },
    /// The quotient norm of a vector modulo a subspace.
    QuotientNorm {
        #[arg(long, value_name = "FILE")]
        input: PathBuf,
    },
    /// An orthogonal basis of the span of some vectors, with its certificate.
    Orthogonalize {
        #[arg(long, value_name = "FILE")]
        input: PathBuf,
    },
    /// The colimit of a finite chain and the norms of chosen points.
    Colimit {
        #[arg(long, value_name = "FILE")]
        input: PathBuf,
    },
}

#[derive(Args)]
struct Jobs {
    /// Worker threads; 1 runs sequentially.
    #[arg(long)]
    jobs: Option<usize>,
}

impl Jobs {
    fn exec(&self) -> Exec {
        Exec::parallel(self.jobs)
    }
}

#[derive(Args)]
struct AuditArgs {
    #[arg(long, value_enum)]
    instance: InstanceKind,
    #[arg(long, value_enum, default_value_t = Suite::All)]
    suite: Suite,
    /// Shorthand for `--suite obscure`.
    #[arg(long, conflicts_with = "suite")]
    obscure: bool,
    /// Largest pointed set, counted in non-base elements.
    #[arg(long, default_value_t = 4)]
    max_size: usize,
    /// `F<p>` for an exhaustive audit, `Q<p>` with `--sampled`.
    #[arg(long, default_value = "F2")]
    field: String,
    /// Allowed basis weights of the exhaustive weighted instance.
    #[arg(long, default_value = "g^0,g^1,g^2")]
    weights: String,
    /// Largest dimension, or the dimension cap of sampled spaces.
    #[arg(long, default_value_t = 2)]
    max_dim: usize,
    /// Draw random diagrams instead of enumerating them.
    #[arg(long)]
    sampled: bool,
    /// Diagrams per sampled check.
    #[arg(long, default_value_t = 1000)]
    samples: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Enumerations needing more diagrams than this stop with exit code 3.
    #[arg(long, default_value_t = AuditBounds::default().max_diagrams)]
    max_diagrams: u64,
    #[command(flatten)]
    jobs: Jobs,
}

#[derive(Args)]
#[group(required = true, multiple = false, id = "target")]
struct FactorTarget {
    /// Factor this map.
    #[arg(long, value_name = "FILE", group = "target")]
    map: Option<PathBuf>,
    /// Special preenvelope of this object (factor `X → 0`).
    #[arg(long, value_name = "FILE", group = "target")]
    envelope: Option<PathBuf>,
    /// Precover of this object (factor `0 → X`).
    #[arg(long, value_name = "FILE", group = "target")]
    precover: Option<PathBuf>,
}

#[derive(Args)]
struct FactorArgs {
    #[command(flatten)]
    target: FactorTarget,
    #[arg(long, value_enum, default_value_t = Generators::Monos)]
    generators: Generators,
    /// Maximum number of attaching steps.
    #[arg(long, default_value_t = 100)]
    fuel: usize,
    /// Largest pointed set of the instance, for pointed inputs.
    #[arg(long, default_value_t = 3)]
    max_size: usize,
    /// Allowed basis weights of the finite weighted instance.
    #[arg(long, default_value = "g^0,g^1,g^2")]
    weights: String,
    /// Largest dimension of the finite weighted instance.
    #[arg(long, default_value_t = 2)]
    max_dim: usize,
    #[command(flatten)]
    jobs: Jobs,
}

fn run(command: Command) -> Result<Outcome, CliError> {
    match command {
        Command::Compute { what } => match what {
            Compute::Kernel { map } => commands::kernel_cmd(&map),
            Compute::Cokernel { map } => commands::cokernel_cmd(&map),
            Compute::Pullback { f, g } => commands::pullback_cmd(&f, &g),
            Compute::Pushout { i, g } => commands::pushout_cmd(&i, &g),
            Compute::QuotientNorm { input } => commands::quotient_norm_cmd(&input),
            Compute::Orthogonalize { input } => commands::orthogonalize_cmd(&input),
            Compute::Colimit { input } => commands::colimit_cmd(&input),
        },
        Command::Classify { map } => commands::classify_cmd(&map),
        Command::Audit(a) => commands::audit_cmd(AuditOptions {
            instance: a.instance,
            suite: if a.obscure { Suite::Obscure } else { a.suite },
            max_size: a.max_size,
            field: a.field,
            weights: a.weights,
            max_dim: a.max_dim,
            sampled: a.sampled,
            bounds: AuditBounds {
                max_diagrams: a.max_diagrams,
                samples: a.samples,
                seed: a.seed,
            },
            exec: a.jobs.exec(),
        }),
        Command::Counterexamples { max_size, jobs } => {
            commands::counterexamples_cmd(max_size, jobs.exec())
        }
        Command::Factor(f) => {
            let (mode, input) = match (f.target.map, f.target.envelope, f.target.precover) {
                (Some(p), _, _) => (FactorMode::Map, p),
                (_, Some(p), _) => (FactorMode::Envelope, p),
                (_, _, Some(p)) => (FactorMode::Precover, p),
                _ => unreachable!("clap requires one target"),
            };
            commands::factor_cmd(FactorOptionsCli {
                mode,
                input,
                generators: f.generators,
                fuel: f.fuel,
                max_size: f.max_size,
                weights: f.weights,
                max_dim: f.max_dim,
                exec: f.jobs.exec(),
            })
        }
        Command::VerifyCert { cert, jobs } => commands::verify_cert_cmd(&cert, jobs.exec()),
        Command::OracleCheck {
            field,
            weights,
            max_dim,
            max_size,
        } => commands::oracle_check_cmd(&field, &weights, max_dim, max_size),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match run(cli.command) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code());
        }
    };
    let json = serde_json::to_string_pretty(&outcome.report).expect("reports serialize") + "\n";
    if let Some(path) = &cli.json {
        if let Err(e) = std::fs::write(path, &json) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    let text = match cli.format {
        Format::Text => format!("{}\n", outcome.summary.trim_end()),
        Format::Json => json,
    };
    // A closed pipe (`| head`) is not an error of the run.
    let _ = std::io::stdout().write_all(text.as_bytes());
    ExitCode::from(outcome.code)
}
