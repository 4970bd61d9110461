//! `zdscheme`: tables, verification suites, wavelet bases and coding
//! reports for chained zero-dimensional Abelian groups.
//!
//! Exit codes: 0 when every check passes, 1 when an identity check fails,
//! 2 on spec, argument or I/O errors.

mod commands;
mod output;

use clap::{Args, Parser, Subcommand};
use commands::Failure;
use output::{Format, Sink};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use zdscheme::coding::Code;
use zdscheme::oracle::WitnessMode;
use zdscheme::verify::Options;
use zdscheme::{Carrier, GroupSpec};

#[derive(Parser, Debug)]
#[command(name = "zdscheme", version, about = "Association schemes on chained finite Abelian groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Group spec JSON file.
    #[arg(long)]
    spec: PathBuf,
    /// Output encoding for tables.
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Tolerance for floating-point comparisons; must be positive.
    #[arg(long, default_value_t = 1e-9)]
    tolerance: f64,
    /// Seed for random functions and subsets.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Largest group order that may be enumerated.
    #[arg(long, default_value_t = 4096, value_parser = clap::value_parser!(u64).range(2..))]
    cap: u64,
    /// Directory for output files.
    #[arg(long)]
    out_dir: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write P, Q, valencies, intersection tensors, block tables and Schur-ring tables.
    Tables {
        #[command(flatten)]
        common: Common,
    },
    /// Run every verification suite and print a JSON report.
    Verify {
        #[command(flatten)]
        common: Common,
        /// Random functions per wavelet and martingale suite.
        #[arg(long, default_value_t = 4)]
        samples: usize,
        /// Random subsets for the Delsarte check.
        #[arg(long, default_value_t = 200)]
        subsets: usize,
        /// Largest order for the Schur-ring suite.
        #[arg(long, default_value_t = 64)]
        schur_limit: usize,
        /// Visit one witness pair per class instead of all pairs.
        #[arg(long)]
        single_witness: bool,
    },
    /// Write the wavelet basis matrix and its Gram check.
    Wavelets {
        #[command(flatten)]
        common: Common,
    },
    /// Write a MacWilliams and Delsarte report for a subgroup code.
    Codes {
        #[command(flatten)]
        common: Common,
        /// Generators as residue tuples, e.g. "1,0;0,2". Empty for the zero code.
        #[arg(long, conflicts_with = "members")]
        generators: Option<String>,
        /// Explicit code members as residue tuples; must form a subgroup.
        #[arg(long)]
        members: Option<String>,
    },
}

impl Common {
    fn carrier(&self) -> Result<Carrier, Failure> {
        if !(self.tolerance.is_finite() && self.tolerance > 0.0) {
            return Err(Failure::Input(format!(
                "tolerance must be positive, got {}; phased quantities are compared in floating point",
                self.tolerance
            )));
        }
        let text = std::fs::read_to_string(&self.spec)
            .map_err(|e| Failure::Input(format!("cannot read {}: {e}", self.spec.display())))?;
        let spec = GroupSpec::from_json_str(&text)?;
        Ok(Carrier::build_with_cap(&spec, self.cap)?)
    }

    fn out_dir(&self) -> &Path {
        self.out_dir.as_deref().unwrap_or(Path::new("."))
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Tables { common } => {
            let c = common.carrier()?;
            let mut sink = Sink::new(common.out_dir(), common.format)?;
            commands::tables(&c, &mut sink)?;
            for p in sink.written() {
                println!("{}", p.display());
            }
            Ok(())
        }
        Command::Verify {
            common,
            samples,
            subsets,
            schur_limit,
            single_witness,
        } => {
            let c = common.carrier()?;
            let o = Options {
                tolerance: common.tolerance,
                seed: common.seed,
                witness: if single_witness {
                    WitnessMode::Single
                } else {
                    WitnessMode::All
                },
                samples,
                subsets,
                schur_limit,
            };
            let (v, passed) = commands::verify(&c, &o);
            commands::emit(common.out_dir.as_deref(), "verify", &v)?;
            if passed {
                Ok(())
            } else {
                Err(Failure::Checks)
            }
        }
        Command::Wavelets { common } => {
            let c = common.carrier()?;
            let mut sink = Sink::new(common.out_dir(), common.format)?;
            let gram = commands::wavelets(&c, &mut sink, common.tolerance)?;
            for p in sink.written() {
                println!("{}", p.display());
            }
            if gram.passed {
                Ok(())
            } else {
                Err(Failure::Checks)
            }
        }
        Command::Codes {
            common,
            generators,
            members,
        } => {
            let c = common.carrier()?;
            let g = &c.group;
            let code = match (generators, members) {
                (_, Some(m)) => Code::from_members(g, &commands::parse_elements(g, &m)?)?,
                (Some(s), None) => Code::generated(g, &commands::parse_elements(g, &s)?),
                (None, None) => {
                    return Err(Failure::Input("codes needs --generators or --members".into()))
                }
            };
            let (v, passed) = commands::codes(&c, &code, common.tolerance, common.seed)?;
            commands::emit(common.out_dir.as_deref(), "codes", &v)?;
            if passed {
                Ok(())
            } else {
                Err(Failure::Checks)
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Checks) => {
            eprintln!("error: at least one check failed");
            ExitCode::from(1)
        }
        Err(Failure::Input(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}
