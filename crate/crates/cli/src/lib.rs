//! Argument handling and report assembly for the `h1loc` binary.

use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use h1loc_core::constructions::{verify_all, DEFAULT_VERIFY_PRIMES};
use h1loc_core::group::{power_identity_sweep, DEFAULT_GROUP_CAP};
use h1loc_core::scan::{inventory_json, scan_prime_to_p};
use h1loc_core::{CocycleSystem, Error, FiniteMatrixGroup, GroupDefinition, ModulusContext};

pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;
pub const EXIT_VERIFICATION: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "h1loc", version, about = "Exact H^1 and H^1_loc for finite subgroups of GL2(Z/p^n)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Write the JSON report here instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Maximum group order to enumerate.
    #[arg(long, global = true)]
    pub cap: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// H^1(G, M) for a group definition file.
    H1 {
        #[arg(long)]
        input: PathBuf,
    },
    /// H^1_loc(G, M) for a group definition file.
    H1loc {
        #[arg(long)]
        input: PathBuf,
    },
    /// Rebuild every construction and replay its checks.
    Verify {
        /// Comma-separated primes, each at least 5.
        #[arg(long, value_delimiter = ',')]
        primes: Vec<u64>,
    },
    /// Classify the subgroups of GL2(F_p) of order prime to p.
    Scan {
        #[arg(long)]
        p: u64,
    },
    /// Check the p^(m-1)-th power identity on random tuples.
    PowerIdentity {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 2)]
        m: u32,
        #[arg(long, default_value_t = 200)]
        trials: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub command: Command,
    pub output: Option<PathBuf>,
    pub seed: u64,
    pub cap: usize,
}

impl From<Cli> for RunConfig {
    fn from(cli: Cli) -> Self {
        RunConfig {
            command: cli.command,
            output: cli.output,
            seed: cli.seed,
            cap: cli.cap.unwrap_or(DEFAULT_GROUP_CAP),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub json: Value,
    /// False when a verification step failed; the report is still written.
    pub passed: bool,
}

#[derive(Debug)]
pub enum CliError {
    Engine(Error),
    Io(PathBuf, std::io::Error),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Engine(e) => write!(f, "{e}"),
            CliError::Io(path, e) => write!(f, "{}: {e}", path.display()),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Engine(e)
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io(..) => EXIT_INPUT,
            CliError::Engine(Error::Resource { .. }) => EXIT_RESOURCE,
            CliError::Engine(Error::Consistency(_)) => EXIT_VERIFICATION,
            CliError::Engine(_) => EXIT_INPUT,
        }
    }
}

fn load(input: &PathBuf, cap: usize) -> Result<(GroupDefinition, FiniteMatrixGroup), CliError> {
    let text = std::fs::read_to_string(input).map_err(|e| CliError::Io(input.clone(), e))?;
    let def = GroupDefinition::parse(&text)?;
    let g = def.build(cap)?;
    Ok((def, g))
}

pub fn run(config: &RunConfig) -> Result<Report, CliError> {
    match &config.command {
        Command::H1 { input } | Command::H1loc { input } => {
            let (def, g) = load(input, config.cap)?;
            let sys = CocycleSystem::new(&g, def.module()?)?;
            let report = if matches!(config.command, Command::H1 { .. }) {
                sys.h1()?
            } else {
                sys.h1_loc()?
            };
            Ok(Report {
                json: report.to_json(def.label()),
                passed: true,
            })
        }
        Command::Verify { primes } => {
            let primes = if primes.is_empty() {
                DEFAULT_VERIFY_PRIMES.to_vec()
            } else {
                primes.clone()
            };
            let reports = verify_all(&primes, config.seed)?;
            Ok(Report {
                passed: reports.iter().all(|r| r.passed()),
                json: Value::Array(reports.iter().map(|r| r.to_json()).collect()),
            })
        }
        Command::Scan { p } => {
            let entries = scan_prime_to_p(*p)?;
            let ctx = ModulusContext::new(*p, 1)?;
            let mut passed = true;
            for e in &entries {
                let g = FiniteMatrixGroup::generate(ctx, &e.generators, config.cap)?;
                passed &= e.verdict.reverify(&g);
            }
            Ok(Report {
                json: inventory_json(&entries),
                passed,
            })
        }
        Command::PowerIdentity { p, m, trials } => {
            let sweep = power_identity_sweep(*p, *m, *trials, config.seed)?;
            Ok(Report {
                passed: sweep.passed(),
                json: json!({
                    "p": sweep.p,
                    "m": sweep.m,
                    "trials": sweep.trials,
                    "seed": config.seed,
                    "failures": sweep.failures,
                    "passed": sweep.passed(),
                }),
            })
        }
    }
}

/// Serialized form written to the output: pretty JSON with sorted keys.
pub fn render(report: &Report) -> String {
    let mut s = serde_json::to_string_pretty(&report.json).expect("JSON values always serialize");
    s.push('\n');
    s
}

/// Parses `args`, runs, writes the report, and returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let config = RunConfig::from(cli);
    let report = match run(&config) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return e.exit_code();
        }
    };
    let text = render(&report);
    match &config.output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("error: {}: {e}", path.display());
                return EXIT_INPUT;
            }
        }
        None => print!("{text}"),
    }
    if report.passed {
        0
    } else {
        eprintln!("error: verification failed");
        EXIT_VERIFICATION
    }
}
