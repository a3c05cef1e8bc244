//! `mcx`: command-line front end for multicomplexes, ℓ¹-seminorms, group actions, diffusion and
//! covers. Structured JSON goes to stdout, a one-line summary to stderr.

mod commands;
mod io;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::io::stamp;

#[derive(Parser, Debug)]
#[command(name = "mcx", version, about = "Multicomplexes, exact l1-seminorms, group actions and diffusion of chains")]
struct Cli {
    /// `json` prints structured output on stdout and a summary on stderr; `summary` prints only
    /// the summary, on stdout.
    #[arg(long, value_enum, default_value_t = OutputMode::Json, global = true)]
    output: OutputMode,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputMode {
    Json,
    Summary,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RingArg {
    Z,
    Q,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Variant {
    /// All vertex tuples, repeats included.
    Full,
    Reduced,
    Alternating,
    /// Reduced chains relative to the subcomplex given by `--sub`.
    Relative,
}

#[derive(Args, Debug)]
pub struct McArg {
    /// Multicomplex file, `-` for stdin.
    #[arg(default_value = "-")]
    pub multicomplex: String,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check the multicomplex axioms, and optionally an action or a cover on it.
    Validate {
        #[command(flatten)]
        mc: McArg,
        #[arg(long)]
        action: Option<String>,
        #[arg(long)]
        cover: Option<String>,
    },
    /// The simplices of dimension at most `--dim`.
    Skeleton {
        #[command(flatten)]
        mc: McArg,
        #[arg(long)]
        dim: usize,
    },
    /// The special sphere: two top simplices glued along their whole boundary.
    Sphere {
        #[arg(long)]
        dim: usize,
        /// Comma-separated vertex labels, `0,…,dim` by default.
        #[arg(long, value_delimiter = ',')]
        labels: Option<Vec<String>>,
    },
    /// The product with the interval, triangulated by coning.
    Product {
        #[command(flatten)]
        mc: McArg,
    },
    /// Homology ranks and torsion, with generators.
    Homology {
        #[command(flatten)]
        mc: McArg,
        #[arg(long, value_enum, default_value_t = RingArg::Z)]
        ring: RingArg,
        #[arg(long, value_enum, default_value_t = Variant::Full)]
        variant: Variant,
        /// Simplex ids of the subcomplex, for `--variant relative`.
        #[arg(long, value_delimiter = ',')]
        sub: Vec<String>,
    },
    /// The ℓ¹-seminorm of the class of a rational cycle.
    Seminorm {
        #[command(flatten)]
        mc: McArg,
        #[arg(long)]
        chain: String,
        #[arg(long, value_enum, default_value_t = Variant::Full)]
        variant: Variant,
    },
    /// The simplicial volume of a closed pseudomanifold.
    Volume {
        #[command(flatten)]
        mc: McArg,
    },
    /// Audit the primal and dual optima of a seminorm computation.
    Dual {
        #[command(flatten)]
        mc: McArg,
        #[arg(long)]
        chain: String,
        #[arg(long, value_enum, default_value_t = Variant::Full)]
        variant: Variant,
    },
    /// The integral ℓ¹-seminorm by bounded exhaustive search.
    IntSeminorm {
        #[command(flatten)]
        mc: McArg,
        #[arg(long)]
        chain: String,
        #[arg(long, value_enum, default_value_t = Variant::Full)]
        variant: Variant,
        #[arg(long, default_value_t = 3)]
        coeff_bound: u64,
        #[arg(long, default_value_t = 4)]
        support_bound: usize,
        #[arg(long, default_value_t = 10_000_000)]
        budget: u64,
    },
    /// The quotient by an action that fixes every vertex.
    Quotient {
        #[command(flatten)]
        mc: McArg,
        #[arg(long)]
        action: String,
    },
    /// Orbits of the basis of one degree.
    Orbits {
        #[command(flatten)]
        mc: McArg,
        #[arg(long)]
        action: String,
        #[arg(long)]
        degree: usize,
        #[arg(long, value_enum, default_value_t = Variant::Full)]
        variant: Variant,
    },
    /// Average a cochain over the group.
    Average {
        #[command(flatten)]
        mc: McArg,
        #[arg(long)]
        action: String,
        #[arg(long)]
        cochain: String,
        #[arg(long, value_enum, default_value_t = Variant::Full)]
        variant: Variant,
    },
    /// Diffuse a function along a transitive action, or convolve with a given measure.
    Diffuse {
        /// Action on a set: `{group, set}`.
        #[arg(long)]
        action: String,
        #[arg(long)]
        function: String,
        #[arg(long)]
        epsilon: Option<String>,
        #[arg(long)]
        measure: Option<String>,
    },
    /// Local diffusion along a truncated locally finite action.
    LocalDiffuse {
        #[arg(long)]
        action: String,
        #[arg(long)]
        function: String,
        /// One budget for every orbit.
        #[arg(long, conflicts_with = "epsilons")]
        epsilon: Option<String>,
        /// Comma-separated budgets, one per orbit.
        #[arg(long, value_delimiter = ',')]
        epsilons: Option<Vec<String>>,
        /// First orbit whose sum must vanish and whose norm is pushed below its budget.
        #[arg(long, default_value_t = 0)]
        threshold: usize,
    },
    /// Shrink a cycle by diffusion along a finite group.
    ToyVanish {
        #[command(flatten)]
        mc: McArg,
        #[arg(long)]
        action: String,
        #[arg(long)]
        chain: String,
        #[arg(long)]
        epsilon: String,
    },
    /// The nerve of a cover, optionally truncated at `--max-dim`.
    Nerve {
        #[command(flatten)]
        mc: McArg,
        #[arg(long)]
        cover: String,
        #[arg(long)]
        max_dim: Option<usize>,
    },
    /// Multiplicity of a cover, compared with the dimension of its nerve.
    Mult {
        #[command(flatten)]
        mc: McArg,
        #[arg(long)]
        cover: String,
    },
    /// The adapted coloring by least admissible index.
    Coloring {
        #[command(flatten)]
        mc: McArg,
        #[arg(long)]
        cover: String,
    },
    /// Evaluate an invariant alternating cochain on simplices with a repeated color.
    VanishCheck {
        #[command(flatten)]
        mc: McArg,
        #[arg(long)]
        action: String,
        #[arg(long)]
        cover: String,
        #[arg(long)]
        cochain: String,
        /// `{simplex id: {element, swap: [v, w]}}`.
        #[arg(long)]
        witnesses: String,
    },
    /// Print a built-in fixture.
    Fixture {
        #[arg(value_enum)]
        name: commands::FixtureName,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Validate { .. } => "validate",
            Command::Skeleton { .. } => "skeleton",
            Command::Sphere { .. } => "sphere",
            Command::Product { .. } => "product",
            Command::Homology { .. } => "homology",
            Command::Seminorm { .. } => "seminorm",
            Command::Volume { .. } => "volume",
            Command::Dual { .. } => "dual",
            Command::IntSeminorm { .. } => "int-seminorm",
            Command::Quotient { .. } => "quotient",
            Command::Orbits { .. } => "orbits",
            Command::Average { .. } => "average",
            Command::Diffuse { .. } => "diffuse",
            Command::LocalDiffuse { .. } => "local-diffuse",
            Command::ToyVanish { .. } => "toy-vanish",
            Command::Nerve { .. } => "nerve",
            Command::Mult { .. } => "mult",
            Command::Coloring { .. } => "coloring",
            Command::VanishCheck { .. } => "vanish-check",
            Command::Fixture { .. } => "fixture",
        }
    }
}

// Write errors (a closed pipe, say) are ignored: the exit code still reports the outcome.
fn emit(mode: OutputMode, command: &str, value: serde_json::Value, summary: &str) {
    let mut out = std::io::stdout().lock();
    match mode {
        OutputMode::Json => {
            let _ = writeln!(out, "{}", serde_json::to_string_pretty(&stamp(command, value)).expect("json"));
            let _ = writeln!(std::io::stderr(), "{summary}");
        }
        OutputMode::Summary => {
            let _ = writeln!(out, "{summary}");
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let name = cli.command.name();
    match commands::run(cli.command) {
        Ok(out) => {
            emit(cli.output, name, out.value, &out.summary);
            match out.failure {
                None => ExitCode::SUCCESS,
                Some(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(e.exit_code() as u8)
                }
            }
        }
        Err(e) => {
            let value = serde_json::json!({ "error": { "kind": e.kind(), "message": e.to_string() } });
            emit(cli.output, name, value, &format!("error: {e}"));
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::CliError;
    use clap::CommandFactory;

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn error_kinds_map_to_exit_codes() {
        assert_eq!(CliError::Domain(String::new()).exit_code(), 1);
        assert_eq!(CliError::Parse(String::new()).exit_code(), 2);
        assert_eq!(CliError::Internal(String::new()).exit_code(), 3);
    }
}
