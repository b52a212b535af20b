use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use dquot::cli::{run, Command, Format, JobSpec, SklyaninCheck};

#[derive(Parser)]
#[command(
    name = "dquot",
    version,
    about = "Derivation-quotient algebras, McKay superpotentials and Sklyanin algebras, computed exactly"
)]
struct Args {
    #[arg(long, value_enum, default_value = "text", global = true)]
    format: OutFormat,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Test the (twisted) superpotential property of the potential in a JSON file.
    CheckSuperpotential {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Span of the order-k derivatives of the potential.
    Derive {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        order: usize,
    },
    /// Graded dimensions of the quotient algebra up to dmax.
    Hilbert {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        dmax: usize,
        /// Derive the relations from the potential at this order.
        #[arg(long)]
        order: Option<usize>,
    },
    /// Quadratic dual: dimensions, relations and the W_i containment.
    KoszulDual {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        dmax: usize,
        #[arg(long)]
        order: Option<usize>,
    },
    /// Build and certify the complex of a superpotential to degree dmax.
    ComplexCheck {
        #[arg(long)]
        potential: PathBuf,
        #[arg(long)]
        order: Option<usize>,
        #[arg(long)]
        dmax: usize,
        #[arg(long)]
        ncomplex: Option<usize>,
        /// Certify the contracted ordinary complex of the N-complex.
        #[arg(long)]
        contract: bool,
    },
    /// McKay quiver, twist and superpotential of a finite group.
    Mckay {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 4)]
        degree_check: usize,
        #[arg(long)]
        normalize: bool,
    },
    /// Checks on the four-dimensional Sklyanin algebra at given parameters.
    Sklyanin {
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        beta: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        gamma: Option<String>,
        #[arg(long, value_delimiter = ',')]
        theta: Option<Vec<String>>,
        #[arg(long)]
        conductor: Option<u32>,
        #[arg(long = "check", value_delimiter = ',', required = true)]
        checks: Vec<String>,
        #[arg(long, default_value_t = 4)]
        dmax: usize,
        /// drop_r1, drop_s1 or infinity, for the staff check.
        #[arg(long)]
        staff: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        d1: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        d2: Option<String>,
    },
    /// Fixture corpus.
    Fixtures {
        #[command(subcommand)]
        cmd: FixturesCmd,
    },
}

#[derive(Subcommand)]
enum FixturesCmd {
    /// Run every job in DIR/manifest.json.
    RunAll {
        #[arg(long, default_value = "fixtures")]
        dir: PathBuf,
    },
}

fn main() -> ExitCode {
    let args = Args::parse();
    let command = match args.cmd {
        Cmd::CheckSuperpotential { input } => Command::CheckSuperpotential { input },
        Cmd::Derive { input, order } => Command::Derive { input, order },
        Cmd::Hilbert { input, dmax, order } => Command::Hilbert { input, dmax, order },
        Cmd::KoszulDual { input, dmax, order } => Command::KoszulDual { input, dmax, order },
        Cmd::ComplexCheck {
            potential,
            order,
            dmax,
            ncomplex,
            contract,
        } => Command::ComplexCheck {
            potential,
            order,
            dmax,
            ncomplex,
            contract,
        },
        Cmd::Mckay {
            input,
            degree_check,
            normalize,
        } => Command::Mckay {
            input,
            degree_check,
            normalize,
        },
        Cmd::Sklyanin {
            alpha,
            beta,
            gamma,
            theta,
            conductor,
            checks,
            dmax,
            staff,
            d1,
            d2,
        } => {
            let checks = match checks
                .iter()
                .map(|c| c.parse::<SklyaninCheck>())
                .collect::<Result<Vec<_>, _>>()
            {
                Ok(c) => c,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            };
            Command::Sklyanin {
                alpha,
                beta,
                gamma,
                theta,
                conductor,
                checks,
                dmax,
                staff,
                d1,
                d2,
            }
        }
        Cmd::Fixtures {
            cmd: FixturesCmd::RunAll { dir },
        } => Command::FixturesRunAll { dir },
    };
    let format = match args.format {
        OutFormat::Text => Format::Text,
        OutFormat::Json => Format::Json,
    };
    let out = run(&JobSpec { command, format });
    print!("{}", out.render(format));
    ExitCode::from(out.status as u8)
}
