//! Command-line front end for `pnt-core`.
//!
//! Every command writes CSV (comma separated, LF line endings, header row).
//! Exit codes: 0 when every check passed, 1 when any check failed, 2 for
//! usage or configuration errors.

mod format;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pnt_core::asymptotics::catalog::{catalog_claim, CATALOG_NAMES};
use pnt_core::asymptotics::{estimate_constant, SampleGrid};
use pnt_core::selberg::{decade_points, pnt_ratio_table};
use pnt_core::suites::{Suite, SuiteConfig, Verifier, DEFAULT_MAX_N};
use pnt_core::Tables;

pub use format::format_g12;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Smallest `--max` accepted by `verify` and `pnt`.
pub const MIN_MAX_N: u64 = 10;

#[derive(Debug, Clone, PartialEq, Eq, Parser)]
#[command(name = "pnt", version, about = "Numerical checks around the elementary proof of the prime number theorem")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, PartialEq, Eq, Args)]
pub struct Common {
    /// Table limit N.
    #[arg(long = "max", default_value_t = DEFAULT_MAX_N)]
    pub max_n: u64,

    /// Write CSV here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Dump Λ, θ, ψ, π and R over 1..=max.
    Tables {
        #[command(flatten)]
        common: Common,
        /// Emit only multiples of this step.
        #[arg(long, default_value_t = 1)]
        step: u64,
    },
    /// Run a named verification suite.
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum)]
        suite: SuiteArg,
        /// Seed for the randomized checks.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Estimate the constant of a catalog identity over [x0, max].
    Estimate {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum)]
        identity: IdentityArg,
    },
    /// π(x) ln x / x, θ(x)/x and ψ(x)/x at powers of ten up to max.
    Pnt {
        #[command(flatten)]
        common: Common,
    },
}

impl Command {
    pub fn common(&self) -> &Common {
        match self {
            Command::Tables { common, .. }
            | Command::Verify { common, .. }
            | Command::Estimate { common, .. }
            | Command::Pnt { common } => common,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    Moebius,
    Combinatorics,
    Chebyshev,
    Inequalities,
    Asymptotics,
    Selberg,
    Iteration,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Self {
        match s {
            SuiteArg::Moebius => Suite::Moebius,
            SuiteArg::Combinatorics => Suite::Combinatorics,
            SuiteArg::Chebyshev => Suite::Chebyshev,
            SuiteArg::Inequalities => Suite::Inequalities,
            SuiteArg::Asymptotics => Suite::Asymptotics,
            SuiteArg::Selberg => Suite::Selberg,
            SuiteArg::Iteration => Suite::Iteration,
            SuiteArg::All => Suite::All,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum IdentityArg {
    #[value(name = "ln1p_recip")]
    Ln1pRecip,
    #[value(name = "harmonic_log")]
    HarmonicLog,
    #[value(name = "stirling_log_sum")]
    StirlingLogSum,
    #[value(name = "log_over_n")]
    LogOverN,
    #[value(name = "mertens")]
    Mertens,
    #[value(name = "euler_gamma")]
    EulerGamma,
}

impl IdentityArg {
    pub fn catalog_name(self) -> &'static str {
        let i = IdentityArg::value_variants()
            .iter()
            .position(|&v| v == self)
            .expect("listed variant");
        CATALOG_NAMES[i]
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] pnt_core::Error),
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Core(_) => EXIT_USAGE,
            CliError::Io(_) | CliError::Csv(_) => EXIT_FAILED,
        }
    }
}

fn csv_writer<W: Write>(out: W) -> csv::Writer<W> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out)
}

fn opt(v: Option<f64>) -> String {
    v.map(format_g12).unwrap_or_default()
}

/// Runs `config`, writing CSV to `out`. Returns whether every check passed.
pub fn execute(config: &RunConfig, out: &mut dyn Write) -> Result<bool, CliError> {
    let max_n = config.command.common().max_n;
    let mut w = csv_writer(out);
    let passed = match &config.command {
        Command::Tables { step, .. } => {
            if *step == 0 {
                return Err(CliError::Usage("--step must be positive".into()));
            }
            let tables = Tables::build(max_n)?;
            w.write_record(["n", "lambda", "theta", "psi", "pi", "r_error"])?;
            let mut result = Ok(());
            tables.scan(1..=max_n, |e| {
                if e.n % step != 0 || result.is_err() {
                    return;
                }
                let p = e.prefix;
                result = w.write_record([
                    e.n.to_string(),
                    format_g12(e.lambda),
                    format_g12(p.theta),
                    format_g12(p.psi),
                    p.pi.to_string(),
                    format_g12(p.psi - e.n as f64),
                ]);
            })?;
            result?;
            true
        }
        Command::Verify { suite, seed, .. } => {
            if max_n < MIN_MAX_N {
                return Err(CliError::Usage(format!("verify needs --max >= {MIN_MAX_N}")));
            }
            let rows = Verifier::new(SuiteConfig {
                max_n,
                seed: *seed,
            })
            .run((*suite).into())?;
            w.write_record(["suite", "check", "status", "points", "witness_x", "observed", "bound"])?;
            for r in &rows {
                w.write_record([
                    r.suite.to_string(),
                    r.check.clone(),
                    r.verdict.to_string(),
                    r.points.to_string(),
                    opt(r.witness_x),
                    format_g12(r.observed),
                    format_g12(r.bound),
                ])?;
            }
            rows.iter().all(|r| r.verdict.passed())
        }
        Command::Estimate { identity, .. } => {
            let tables = Tables::build(max_n)?;
            let claim = catalog_claim(&tables, identity.catalog_name())?;
            let lo = claim.threshold as u64;
            if max_n < lo {
                return Err(CliError::Usage(format!(
                    "{} needs --max >= {lo}",
                    claim.name
                )));
            }
            let mids = claim.domain == pnt_core::ClaimDomain::Reals;
            let grid = SampleGrid::new(lo, max_n, mids)?;
            let (c, at) = estimate_constant(|x| claim.lhs(x) - claim.main(x), |x| claim.bound(x), &grid)?;
            let points = grid.points::<f64>(true).count();
            let ok = c <= claim.constant;
            w.write_record(["identity", "constant", "threshold", "estimated", "witness_x", "points", "status"])?;
            w.write_record([
                claim.name.clone(),
                format_g12(claim.constant),
                format_g12(claim.threshold),
                format_g12(c),
                format_g12(at),
                points.to_string(),
                if ok { "pass" } else { "fail" }.to_string(),
            ])?;
            ok
        }
        Command::Pnt { .. } => {
            if max_n < MIN_MAX_N {
                return Err(CliError::Usage(format!("pnt needs --max >= {MIN_MAX_N}")));
            }
            let tables = Tables::build(max_n)?;
            let mut xs = decade_points(10, max_n);
            if xs.last() != Some(&max_n) {
                xs.push(max_n);
            }
            let xs: Vec<f64> = xs.into_iter().map(|x| x as f64).collect();
            w.write_record(["x", "pi", "theta", "psi", "pi_ratio", "theta_ratio", "psi_ratio", "r_error"])?;
            for row in pnt_ratio_table(&tables, &xs)? {
                w.write_record([
                    format_g12(row.x),
                    row.pi.to_string(),
                    format_g12(row.theta),
                    format_g12(row.psi),
                    format_g12(row.pi_ratio),
                    format_g12(row.theta_ratio),
                    format_g12(row.psi_ratio),
                    format_g12(row.r_error),
                ])?;
            }
            true
        }
    };
    w.flush()?;
    Ok(passed)
}

/// Runs `config` against its configured output and maps the outcome to an
/// exit code, reporting errors on standard error.
pub fn run(config: &RunConfig) -> i32 {
    let result = match &config.command.common().out {
        Some(path) => File::create(path)
            .map_err(CliError::from)
            .and_then(|f| {
                let mut out = BufWriter::new(f);
                let passed = execute(config, &mut out)?;
                out.flush()?;
                Ok(passed)
            }),
        None => {
            let stdout = io::stdout();
            let mut out = stdout.lock();
            execute(config, &mut out)
        }
    };
    match result {
        Ok(true) => EXIT_OK,
        Ok(false) => EXIT_FAILED,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
