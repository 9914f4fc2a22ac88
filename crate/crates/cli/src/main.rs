use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pmsign::Order;

mod commands;

#[derive(Parser)]
#[command(
    name = "pmsign",
    version,
    about = "Principal-minor sign patterns of real symmetric matrices"
)]
pub struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Write output to a file instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Serialization order of sign patterns
    #[arg(long, global = true, default_value = "cardlex")]
    order: Order,

    /// Worker threads for enumerate, sweep and components
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// Master seed for randomized searches
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
pub enum Command {
    /// Check the diamond axioms
    Check { pattern: String },
    /// Apply a hyperoctahedral group element, dual or negation
    Act {
        pattern: String,
        /// Swap set, e.g. 13
        #[arg(long)]
        swap: Option<String>,
        /// Permutation as 1-based images, e.g. 2,1,3
        #[arg(long)]
        perm: Option<String>,
        #[arg(long)]
        dual: bool,
        #[arg(long)]
        negate: bool,
    },
    /// Restriction, deletion or contraction
    Minor {
        pattern: String,
        #[command(flatten)]
        op: MinorOp,
    },
    /// Canonical orbit representative and positive-singleton form
    Canon { pattern: String },
    /// List or count all admissible patterns
    Enumerate {
        #[arg(long)]
        n: usize,
        /// Print only the count
        #[arg(long)]
        count: bool,
    },
    /// Orbits of admissible patterns under the hyperoctahedral group
    Orbits {
        #[arg(long)]
        n: usize,
        /// List every orbit member
        #[arg(long)]
        members: bool,
    },
    /// CNF encoding of admissibility in DIMACS format
    Cnf {
        #[arg(long)]
        n: usize,
    },
    /// Count proper 3-colorings of the hypercube graph by brute force
    Colorings {
        #[arg(long)]
        n: usize,
        /// List every coloring with its sign pattern (n ≤ 3)
        #[arg(long)]
        list: bool,
    },
    /// Principal minors and sign pattern of a rational symmetric matrix
    MinorsOfMatrix {
        /// JSON file with the matrix
        #[arg(long)]
        matrix: PathBuf,
    },
    /// Re-verify certificates from a JSON-lines file
    Verify {
        #[arg(long)]
        cert: PathBuf,
    },
    /// Search a rational certificate for one pattern
    Search {
        pattern: String,
        #[command(flatten)]
        search: SearchArgs,
        #[arg(long, default_value = "random")]
        strategy: String,
    },
    /// Certify every orbit of admissible patterns
    Sweep {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        search: SearchArgs,
        /// Write the certificate database (JSON lines) here
        #[arg(long)]
        db: Option<PathBuf>,
    },
    /// Block-diagonal composition of certificates
    Compose {
        /// Certificate file; repeat for each block
        #[arg(long = "cert", required = true)]
        certs: Vec<PathBuf>,
    },
    /// Segment test towards the diagonal for a completely reducible certificate
    StarCheck {
        #[arg(long)]
        cert: PathBuf,
        #[arg(long, default_value_t = 16)]
        steps: u32,
    },
    /// Leading-principal-minor constructions
    Lpr {
        /// Target leading pattern, e.g. +-+
        #[arg(long)]
        to: String,
        /// Transport this matrix instead of building a diagonal one
        #[arg(long)]
        matrix: Option<PathBuf>,
    },
    /// Count connected components of a reduced representation space (n = 3)
    Components {
        pattern: String,
        #[arg(long, default_value = "8")]
        radius: String,
        #[arg(long, default_value = "1/16")]
        step: String,
        #[arg(long, default_value = "1")]
        diagonal: String,
    },
    /// The catalogue of orbits on three elements
    Table1 {
        #[arg(long, default_value = "1/16")]
        step: String,
        /// Skip the component counts
        #[arg(long)]
        no_components: bool,
    },
    /// Number of admissible patterns and orbits
    Table2 {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
pub struct MinorOp {
    #[arg(long)]
    restrict: Option<String>,
    #[arg(long)]
    delete: Option<String>,
    #[arg(long)]
    contract: Option<String>,
}

#[derive(Args)]
pub struct SearchArgs {
    #[arg(long, default_value_t = 10_000)]
    attempts: u64,
    #[arg(long, default_value_t = 27)]
    max_num: u32,
    #[arg(long, default_value_t = 27)]
    max_den: u32,
}

/// Rendered result of one command.
pub struct Output {
    pub text: String,
    pub json: serde_json::Value,
    /// `false` turns into exit code 1.
    pub success: bool,
}

fn emit(cli: &Cli, out: &Output) -> io::Result<()> {
    let mut w: Box<dyn Write> = match &cli.out {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(io::stdout().lock()),
    };
    match cli.format {
        Format::Text => {
            w.write_all(out.text.as_bytes())?;
            if !out.text.is_empty() && !out.text.ends_with('\n') {
                writeln!(w)?;
            }
        }
        Format::Json => {
            serde_json::to_writer(&mut w, &out.json)?;
            writeln!(w)?;
        }
    }
    w.flush()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build_global();
    }
    let result = commands::run(&cli).and_then(|out| {
        emit(&cli, &out)?;
        Ok(out.success)
    });
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    const MAN: &str = include_str!("../../../docs/pmsign.1");

    #[test]
    fn every_subcommand_and_flag_is_documented() {
        let cmd = Cli::command();
        for arg in cmd.get_arguments() {
            if let Some(long) = arg.get_long() {
                assert!(
                    MAN.contains(&format!("\\-\\-{}", long.replace('-', "\\-"))),
                    "--{long}"
                );
            }
        }
        for sub in cmd.get_subcommands() {
            let name = sub.get_name();
            assert!(
                MAN.contains(&format!(".SS {}", name.replace('-', "\\-"))),
                "{name}"
            );
            for arg in sub.get_arguments() {
                if let Some(long) = arg.get_long() {
                    let flag = format!("\\-\\-{}", long.replace('-', "\\-"));
                    assert!(MAN.contains(&flag), "{name} --{long}");
                }
            }
        }
    }

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }
}
