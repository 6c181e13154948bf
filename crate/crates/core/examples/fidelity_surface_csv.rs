//! Sweep the input plane and write the fidelity surface as CSV to stdout.
//!
//! ```text
//! cargo run --example fidelity_surface_csv > surface.csv
//! ```

use std::io::{self, Write};

use cloning_restore::sweep::{run_sweep, write_csv, Mode, SweepConfig};
use cloning_restore::ErrorRates;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let sweep = run_sweep(&SweepConfig {
        grid_alpha: 21,
        grid_phi: 24,
        rates: ErrorRates::new(0.25, 0.4)?,
        mode: Mode::Exact,
        trials: 0,
        seed: 0,
    })?;
    let stdout = io::stdout();
    let mut out = stdout.lock();
    write_csv(&sweep, &mut out)?;
    out.flush()?;
    eprintln!(
        "plane average {:.6} (16/27 = {:.6})",
        sweep.average,
        16.0 / 27.0
    );
    Ok(())
}
