//! Command-line front end shared by the `cloning-restore` binary.
//!
//! Exit codes: 0 success, 1 verification or statistical failure, 2 usage or
//! I/O error.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::channel::ErrorRates;
use crate::protocol::{CorrectionRule, Protocol};
use crate::qubit::PureQubit;
use crate::sweep::{format_g12, run_sweep, write_csv, Mode, SweepConfig};
use crate::verify::{run_verify, VerifyOptions, Z_BOUND};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "cloning-restore",
    version,
    about = "Cloning-based quantum state restoration: sweeps, self-checks and Monte Carlo runs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate fidelity over the (alpha^2, phi) plane and write CSV.
    Sweep(SweepArgs),
    /// Run the invariant suite; exit 1 if any check fails.
    Verify(VerifyArgs),
    /// Monte Carlo estimate at one input state, compared with the exact value.
    Mc(McArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Exact,
    Analytic,
    Mixed,
    Mc,
    Baseline,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Exact => Mode::Exact,
            ModeArg::Analytic => Mode::Analytic,
            ModeArg::Mixed => Mode::Mixed,
            ModeArg::Mc => Mode::Mc,
            ModeArg::Baseline => Mode::Baseline,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct RateArgs {
    /// Bit-flip probability.
    #[arg(long = "pbit", default_value_t = 0.0, value_parser = probability)]
    pub p_bit: f64,
    /// Phase-flip probability.
    #[arg(long = "pph", default_value_t = 0.0, value_parser = probability)]
    pub p_ph: f64,
}

impl RateArgs {
    fn rates(&self) -> ErrorRates {
        ErrorRates::new(self.p_bit, self.p_ph).expect("validated by the parser")
    }
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[arg(long, default_value_t = 201, value_parser = clap::value_parser!(u32).range(1..))]
    pub grid_alpha: u32,
    #[arg(long, default_value_t = 201, value_parser = clap::value_parser!(u32).range(1..))]
    pub grid_phi: u32,
    #[command(flatten)]
    pub rates: RateArgs,
    #[arg(long, value_enum, default_value_t = ModeArg::Exact)]
    pub mode: ModeArg,
    /// Trajectories per grid point (mc mode).
    #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
    pub trials: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output file, or "-" for standard output.
    #[arg(long, default_value = "-")]
    pub out: String,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    /// Override every deterministic tolerance.
    #[arg(long, value_parser = positive)]
    pub tol: Option<f64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Use the sign→σx / bit→σz correction assignment (negative control).
    #[arg(long, hide = true)]
    pub swapped_correction: bool,
}

#[derive(Debug, Clone, Args)]
pub struct McArgs {
    #[arg(long, value_parser = probability)]
    pub alpha2: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true, value_parser = finite)]
    pub phi: f64,
    #[command(flatten)]
    pub rates: RateArgs,
    #[arg(long, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub trials: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

fn parse_f64(s: &str) -> Result<f64, String> {
    s.trim()
        .parse::<f64>()
        .map_err(|e| format!("`{s}` is not a number: {e}"))
}

fn probability(s: &str) -> Result<f64, String> {
    let p = parse_f64(s)?;
    if (0.0..=1.0).contains(&p) {
        Ok(p)
    } else {
        Err(format!("{p} is outside [0, 1]"))
    }
}

fn positive(s: &str) -> Result<f64, String> {
    let x = parse_f64(s)?;
    if x > 0.0 && x.is_finite() {
        Ok(x)
    } else {
        Err(format!("{x} must be positive and finite"))
    }
}

fn finite(s: &str) -> Result<f64, String> {
    let x = parse_f64(s)?;
    if x.is_finite() {
        Ok(x)
    } else {
        Err(format!("{x} must be finite"))
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(stderr, "{text}");
                EXIT_USAGE
            } else {
                let _ = write!(stdout, "{text}");
                EXIT_OK
            };
        }
    };
    let result = match cli.command {
        Command::Sweep(a) => cmd_sweep(&a, stdout, stderr),
        Command::Verify(a) => cmd_verify(&a, stdout),
        Command::Mc(a) => cmd_mc(&a, stdout),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_USAGE
        }
    }
}

pub fn cmd_sweep(a: &SweepArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> io::Result<i32> {
    let cfg = SweepConfig {
        grid_alpha: a.grid_alpha as usize,
        grid_phi: a.grid_phi as usize,
        rates: a.rates.rates(),
        mode: a.mode.into(),
        trials: a.trials,
        seed: a.seed,
    };
    // Open the destination first so a bad path fails before any work.
    let mut file = if a.out == "-" {
        None
    } else {
        match File::create(&a.out) {
            Ok(f) => Some(BufWriter::new(f)),
            Err(e) => {
                writeln!(stderr, "error: cannot write {}: {e}", a.out)?;
                return Ok(EXIT_USAGE);
            }
        }
    };
    let sweep = match run_sweep(&cfg) {
        Ok(s) => s,
        Err(e) => {
            writeln!(stderr, "error: {e}")?;
            return Ok(EXIT_USAGE);
        }
    };
    match file.as_mut() {
        Some(f) => {
            write_csv(&sweep, f)?;
            f.flush()?;
        }
        None => write_csv(&sweep, stdout)?,
    }
    Ok(EXIT_OK)
}

pub fn cmd_verify(a: &VerifyArgs, stdout: &mut dyn Write) -> io::Result<i32> {
    let opts = VerifyOptions {
        tol: a.tol,
        seed: a.seed,
        rule: if a.swapped_correction {
            CorrectionRule::SignToX
        } else {
            CorrectionRule::SignToZ
        },
        ..VerifyOptions::default()
    };
    let report = run_verify(opts);
    writeln!(stdout, "{report}")?;
    Ok(if report.passed() { EXIT_OK } else { EXIT_FAIL })
}

pub fn cmd_mc(a: &McArgs, stdout: &mut dyn Write) -> io::Result<i32> {
    let psi = PureQubit::new(a.alpha2, a.phi).expect("validated by the parser");
    let protocol = Protocol::new(a.rates.rates());
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    let est = protocol.monte_carlo(&psi, a.trials, &mut rng);
    let exact = protocol.exact_fidelity(&psi);
    let z = est.z_score(exact);
    let pass = z.abs() <= Z_BOUND;
    writeln!(
        stdout,
        "alpha2={} phi={} pbit={} pph={} trials={} seed={}",
        format_g12(a.alpha2),
        format_g12(a.phi),
        format_g12(a.rates.p_bit),
        format_g12(a.rates.p_ph),
        a.trials,
        a.seed
    )?;
    writeln!(stdout, "mean={}", format_g12(est.mean))?;
    writeln!(stdout, "stderr={}", format_g12(est.std_err))?;
    writeln!(stdout, "exact={}", format_g12(exact))?;
    writeln!(stdout, "z={}", format_g12(z))?;
    writeln!(stdout, "{}", if pass { "PASS" } else { "FAIL" })?;
    Ok(if pass { EXIT_OK } else { EXIT_FAIL })
}
