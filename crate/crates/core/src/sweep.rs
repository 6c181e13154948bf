//! Grid sweeps over the input plane and their CSV form.
//!
//! Rows are computed in parallel and emitted in grid order. Monte Carlo
//! points each get their own ChaCha stream, selected by the grid index, so a
//! sweep is reproducible from its base seed alone.

use std::io::{self, Write};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::channel::ErrorRates;
use crate::error::{domain, Result};
use crate::protocol::{
    analytic_fidelity, baseline_direct_fidelity, baseline_enumerated_fidelity, PlaneGrid, Protocol,
};
use crate::qubit::PureQubit;

/// Which evaluator fills the `f_exact` column.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    /// Branch enumeration.
    Exact,
    /// The closed form.
    Analytic,
    /// Density-matrix propagation with Bob fed `I/2`.
    Mixed,
    /// Branch enumeration plus Monte Carlo columns.
    Mc,
    /// Computational-basis measure-and-prepare.
    Baseline,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Exact => "exact",
            Mode::Analytic => "analytic",
            Mode::Mixed => "mixed",
            Mode::Mc => "mc",
            Mode::Baseline => "baseline",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub grid_alpha: usize,
    pub grid_phi: usize,
    pub rates: ErrorRates,
    pub mode: Mode,
    pub trials: u64,
    pub seed: u64,
}

impl SweepConfig {
    pub fn validate(&self) -> Result<PlaneGrid> {
        if self.mode == Mode::Mc && self.trials == 0 {
            return Err(domain("mc mode needs at least one trial"));
        }
        PlaneGrid::new(self.grid_alpha, self.grid_phi)
    }
}

/// One grid point of a sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRecord {
    pub alpha2: f64,
    pub phi: f64,
    pub f_exact: f64,
    pub f_analytic: f64,
    pub f_mc: Option<f64>,
    pub mc_std_err: Option<f64>,
}

/// The result of a sweep: records in grid order plus the plane average.
#[derive(Debug, Clone, PartialEq)]
pub struct Sweep {
    pub mode: Mode,
    pub records: Vec<SweepRecord>,
    pub average: f64,
}

pub fn run_sweep(cfg: &SweepConfig) -> Result<Sweep> {
    let grid = cfg.validate()?;
    let protocol = Protocol::new(cfg.rates);
    let points: Vec<(usize, usize)> = grid.points().collect();
    let records: Vec<SweepRecord> = points
        .par_iter()
        .map(|&(i, j)| {
            let (alpha2, phi) = (grid.alpha2(i), grid.phi(j));
            let psi = PureQubit::new(alpha2, phi).expect("grid points are valid states");
            let mut rec = SweepRecord {
                alpha2,
                phi,
                f_exact: 0.0,
                f_analytic: analytic_fidelity(alpha2, phi),
                f_mc: None,
                mc_std_err: None,
            };
            match cfg.mode {
                Mode::Exact => rec.f_exact = protocol.exact_fidelity(&psi),
                Mode::Analytic => rec.f_exact = rec.f_analytic,
                Mode::Mixed => rec.f_exact = protocol.mixed_input_fidelity(&psi),
                Mode::Baseline => {
                    rec.f_exact = baseline_enumerated_fidelity(&psi);
                    rec.f_analytic = baseline_direct_fidelity(&psi);
                }
                Mode::Mc => {
                    rec.f_exact = protocol.exact_fidelity(&psi);
                    let mut rng = point_rng(cfg.seed, &grid, i, j);
                    let est = protocol.monte_carlo(&psi, cfg.trials, &mut rng);
                    rec.f_mc = Some(est.mean);
                    rec.mc_std_err = Some(est.std_err);
                }
            }
            rec
        })
        .collect();
    let summary: Vec<f64> = records
        .iter()
        .map(|r| r.f_mc.unwrap_or(r.f_exact))
        .collect();
    let average = grid.average(&summary);
    Ok(Sweep {
        mode: cfg.mode,
        records,
        average,
    })
}

/// Independent random stream for grid point `(i, j)`.
pub fn point_rng(seed: u64, grid: &PlaneGrid, i: usize, j: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream((i * grid.n_phi() + j) as u64);
    rng
}

/// Formats like C's `%.12g`: 12 significant digits, trailing zeros trimmed.
pub fn format_g12(x: f64) -> String {
    const DIGITS: i32 = 12;
    if x == 0.0 {
        return "0".into();
    }
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let sci = format!("{:.*e}", (DIGITS - 1) as usize, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..DIGITS).contains(&exp) {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim_zeros(mantissa), exp.abs())
    } else {
        let fixed = format!("{:.*}", (DIGITS - 1 - exp) as usize, x);
        trim_zeros(&fixed).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

pub fn csv_header(mode: Mode) -> &'static str {
    match mode {
        Mode::Mc => "alpha2,phi,f_exact,f_analytic,f_mc,mc_stderr",
        _ => "alpha2,phi,f_exact,f_analytic",
    }
}

/// Writes the header, one row per record and the `# average=` summary line.
pub fn write_csv<W: Write + ?Sized>(sweep: &Sweep, out: &mut W) -> io::Result<()> {
    writeln!(out, "{}", csv_header(sweep.mode))?;
    for r in &sweep.records {
        write!(
            out,
            "{},{},{},{}",
            format_g12(r.alpha2),
            format_g12(r.phi),
            format_g12(r.f_exact),
            format_g12(r.f_analytic)
        )?;
        if sweep.mode == Mode::Mc {
            write!(
                out,
                ",{},{}",
                format_g12(r.f_mc.unwrap_or(f64::NAN)),
                format_g12(r.mc_std_err.unwrap_or(f64::NAN))
            )?;
        }
        writeln!(out)?;
    }
    writeln!(out, "# average={}", format_g12(sweep.average))
}
