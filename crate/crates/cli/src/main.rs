//! `symcontain`: command-line front end for symbolic-power containment.

mod commands;
mod input;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use symcontain::groebner::ResourceLimits;
use symcontain::polyring::{CoefficientField, PrimeField, Rationals, TermOrder, DEFAULT_PRIME};
use symcontain::Error;

use report::Status;

#[derive(Parser, Debug)]
#[command(name = "symcontain", version, about = "Decide symbolic-power containments I^(n) ⊆ I^m")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct GlobalArgs {
    /// Field characteristic, 0 for the rationals [default: 32003].
    #[arg(long = "char", global = true, value_name = "p|0")]
    characteristic: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = OrderArg::Grevlex)]
    order: OrderArg,
    #[arg(long, global = true)]
    max_degree: Option<u64>,
    #[arg(long, global = true)]
    max_steps: Option<u64>,
    #[arg(long, global = true)]
    max_pairs: Option<usize>,
    /// Wall-clock cap in seconds.
    #[arg(long, global = true, value_name = "SECONDS")]
    timeout: Option<f64>,
    /// Emit one JSON report per line instead of plain text.
    #[arg(long, global = true)]
    json: bool,
    /// Append-only record file for sweeps.
    #[arg(long, global = true, value_name = "PATH")]
    store: Option<PathBuf>,
    /// Exit with status 5 if a containment verdict differs.
    #[arg(long, global = true, value_enum)]
    expect: Option<Expect>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum OrderArg {
    Grevlex,
    Lex,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Expect {
    Holds,
    Fails,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Oracle,
    Criterion,
    Both,
}

/// Where an ideal comes from when it is not given positionally.
#[derive(Args, Debug, Clone, Default)]
pub struct IdealSource {
    /// Variable names for a generator list [default: x,y,z].
    #[arg(long, value_delimiter = ',', value_name = "NAMES")]
    pub vars: Option<Vec<String>>,
    /// Kernel of the monomial curve t ↦ (t^a, t^b, t^c).
    #[arg(long, value_name = "a,b,c")]
    pub curve: Option<String>,
    /// Ideal of 2×2 minors, rows separated by `|`.
    #[arg(long, value_name = "ROW|ROW")]
    pub matrix: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Reduced Gröbner basis.
    Gb {
        /// `fermat`, `monomial-v <v>`, or comma-separated generators.
        ideal: Option<String>,
        #[command(flatten)]
        src: IdealSource,
    },
    /// Ideal membership of a polynomial.
    Member {
        f: String,
        ideal: Option<String>,
        #[command(flatten)]
        src: IdealSource,
    },
    /// Generators of the symbolic power I^(n).
    Sympower {
        /// `[IDEAL] n`
        #[arg(required = true, num_args = 1..=2)]
        args: Vec<String>,
        #[command(flatten)]
        src: IdealSource,
    },
    /// Decide I^(n) ⊆ I^m.
    Contain {
        /// `[IDEAL] n m`
        #[arg(required = true, num_args = 2..=3)]
        args: Vec<String>,
        #[arg(long, value_enum, default_value_t = MethodArg::Oracle)]
        method: MethodArg,
        /// Test every representative in the criterion.
        #[arg(long)]
        exhaustive: bool,
        #[command(flatten)]
        src: IdealSource,
    },
    /// Kernel, presentation matrix and certificates of a monomial curve.
    Curve {
        #[arg(value_name = "a,b,c")]
        triple: String,
        /// Print the presentation matrix.
        #[arg(long)]
        matrix: bool,
        /// Print the divisibility certificates.
        #[arg(long)]
        criteria: bool,
        /// Print the strand matrix H_n.
        #[arg(long, value_name = "n")]
        strand: Option<u32>,
        /// Print the lift matrix V_{n,m}.
        #[arg(long, value_name = "n,m")]
        lift: Option<String>,
        /// Use the derivation lift for --lift.
        #[arg(long)]
        derivation: bool,
    },
    /// Table of I^(a) ⊆ I^b for b ≤ a.
    Sweep {
        ideal: Option<String>,
        #[arg(long)]
        amax: u32,
        #[arg(long)]
        bmax: u32,
        #[command(flatten)]
        src: IdealSource,
    },
    /// Fedder's F-purity test in characteristic p.
    Fedder {
        /// `[IDEAL] p`
        #[arg(required = true, num_args = 1..=2)]
        args: Vec<String>,
        #[command(flatten)]
        src: IdealSource,
    },
    /// Threshold and schedule extending a base containment to all k ≥ hm.
    Stable {
        h: u32,
        m: u32,
        /// Last k in the printed schedule [default: hm + 4].
        #[arg(long)]
        upto: Option<u32>,
    },
    /// The Fermat configuration ideal and its containments.
    Fermat {
        n: Option<u32>,
        m: Option<u32>,
    },
}

impl Command {
    fn kind(&self) -> &'static str {
        match self {
            Command::Gb { .. } => "gb",
            Command::Member { .. } => "member",
            Command::Sympower { .. } => "sympower",
            Command::Contain { .. } => "contain",
            Command::Curve { .. } => "curve",
            Command::Sweep { .. } => "sweep",
            Command::Fedder { .. } => "fedder",
            Command::Stable { .. } => "stable",
            Command::Fermat { .. } => "fermat",
        }
    }
}

pub enum Output {
    Plain,
    Json,
}

/// Settings shared by every subcommand.
pub struct RunConfig {
    pub field: CoefficientField,
    pub order: TermOrder,
    pub limits: ResourceLimits,
    pub timeout: Option<Duration>,
    pub output: Output,
    pub store_path: Option<PathBuf>,
    pub expect: Option<Expect>,
}

impl RunConfig {
    pub fn json(&self) -> bool {
        matches!(self.output, Output::Json)
    }
}

fn config(g: &GlobalArgs, characteristic: u64) -> Result<RunConfig, Error> {
    let mut limits = ResourceLimits::default();
    if let Some(d) = g.max_degree {
        limits.max_degree = d;
    }
    if let Some(s) = g.max_steps {
        limits.max_steps = s;
    }
    if let Some(p) = g.max_pairs {
        limits.max_pairs = p;
    }
    let timeout = match g.timeout {
        Some(t) if !(t > 0.0 && t.is_finite()) => {
            return Err(Error::InvalidArgument(format!("timeout must be positive, got {t}")))
        }
        Some(t) => Some(Duration::from_secs_f64(t)),
        None => None,
    };
    if let Some(t) = timeout {
        limits = limits.with_timeout(t);
    }
    Ok(RunConfig {
        field: CoefficientField::from_characteristic(characteristic)?,
        order: match g.order {
            OrderArg::Grevlex => TermOrder::Grevlex,
            OrderArg::Lex => TermOrder::Lex,
        },
        limits,
        timeout,
        output: if g.json { Output::Json } else { Output::Plain },
        store_path: g.store.clone(),
        expect: g.expect,
    })
}

/// `monomial-v 4` arrives as two tokens; fold them into one ideal spec.
fn join_named_args(args: impl Iterator<Item = String>) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    let mut args = args.peekable();
    while let Some(a) = args.next() {
        if a == input::MONOMIAL_V {
            if let Some(v) = args.next_if(|n| n.parse::<u32>().is_ok()) {
                out.push(format!("{a}={v}"));
                continue;
            }
        }
        out.push(a);
    }
    out
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::ResourceLimit(_) => 4,
        Error::Unsupported(_) | Error::CharacteristicGuard(_) => 3,
        Error::Internal(_) => 1,
        _ => 2,
    }
}

fn dispatch(cli: &Cli) -> Result<Status, Error> {
    let g = &cli.global;
    if let Command::Fedder { args, src } = &cli.command {
        // the test runs over F_p whatever the default field is
        let (spec, nums) = input::split_args(args, src, 1)?;
        let p = nums[0] as u64;
        if let Some(c) = g.characteristic {
            if c != p {
                return Err(Error::InvalidArgument(format!("--char {c} conflicts with p = {p}")));
            }
        }
        let cfg = config(g, p)?;
        return commands::fedder(PrimeField::new(p)?, &cfg, spec.as_deref(), src, p);
    }
    let cfg = config(g, g.characteristic.unwrap_or(DEFAULT_PRIME))?;
    match cfg.field {
        CoefficientField::Prime(p) => run(PrimeField::new(p)?, &cfg, &cli.command),
        CoefficientField::Rationals => run(Rationals, &cfg, &cli.command),
    }
}

fn run<F: symcontain::polyring::Field>(field: F, cfg: &RunConfig, cmd: &Command) -> Result<Status, Error> {
    match cmd {
        Command::Gb { ideal, src } => commands::gb(field, cfg, ideal.as_deref(), src),
        Command::Member { f, ideal, src } => commands::member(field, cfg, f, ideal.as_deref(), src),
        Command::Sympower { args, src } => {
            let (spec, nums) = input::split_args(args, src, 1)?;
            commands::sympower(field, cfg, spec.as_deref(), src, nums[0])
        }
        Command::Contain { args, method, exhaustive, src } => {
            let (spec, nums) = input::split_args(args, src, 2)?;
            commands::contain(field, cfg, spec.as_deref(), src, nums[0], nums[1], *method, *exhaustive)
        }
        Command::Curve { triple, matrix, criteria, strand, lift, derivation } => {
            let opts = commands::CurveOptions {
                matrix: *matrix,
                criteria: *criteria,
                strand: *strand,
                lift: lift.as_deref().map(input::parse_pair).transpose()?,
                derivation: *derivation,
            };
            commands::curve(field, cfg, triple, &opts)
        }
        Command::Sweep { ideal, amax, bmax, src } => commands::sweep(field, cfg, ideal.as_deref(), src, *amax, *bmax),
        Command::Stable { h, m, upto } => commands::stable(cfg, *h, *m, *upto),
        Command::Fermat { n, m } => commands::fermat(field, cfg, *n, *m),
        Command::Fedder { .. } => unreachable!("handled before field dispatch"),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse_from(join_named_args(std::env::args()));
    match dispatch(&cli) {
        Ok(status) => ExitCode::from(status.code()),
        Err(e) => {
            if cli.global.json {
                commands::out(report::error_json(cli.command.kind(), &e));
            }
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
