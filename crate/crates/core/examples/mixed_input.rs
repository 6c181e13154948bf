//! Fidelity when the receiver's estimation is fed a maximally mixed input
//! instead of the transmitted state. It agrees with the branch enumeration.

use cloning_restore::{exact_fidelity, mixed_input_fidelity, ErrorRates, PureQubit};

fn main() -> cloning_restore::Result<()> {
    let rates = ErrorRates::new(0.1, 0.3)?;
    println!(
        "{:>7} {:>7} {:>14} {:>14} {:>10}",
        "alpha2", "phi", "enumerated", "mixed input", "|diff|"
    );
    for k in 0..8 {
        let a2 = k as f64 / 7.0;
        let phi = 0.8 * k as f64;
        let psi = PureQubit::new(a2, phi)?;
        let (e, m) = (exact_fidelity(&psi, rates), mixed_input_fidelity(&psi));
        println!(
            "{a2:>7.3} {:>7.3} {e:>14.10} {m:>14.10} {:>10.1e}",
            psi.phi(),
            (e - m).abs()
        );
    }
    Ok(())
}
