//! Push a state through the bit/phase-flip channel and print the error
//! distribution together with the output density matrix.

use cloning_restore::{error_channel, fidelity, DensityMatrix, ErrorRates, ErrorType, PureQubit};

fn main() -> cloning_restore::Result<()> {
    let rates = ErrorRates::new(0.25, 0.4)?;
    for e in ErrorType::ALL {
        println!("P({:<3}) = {:.4}", e.label(), rates.probability(e));
    }

    let psi = PureQubit::new(0.7, 0.9)?;
    let ch = error_channel(rates.p_bit(), rates.p_ph())?;
    println!(
        "completeness deviation: {:.2e}",
        ch.completeness_deviation()
    );

    let out = ch.apply(&DensityMatrix::pure(&psi));
    let m = out.matrix().entries();
    println!("output density matrix:");
    for row in m {
        println!(
            "  [{:>+.5}{:>+.5}i  {:>+.5}{:>+.5}i]",
            row[0].re, row[0].im, row[1].re, row[1].im
        );
    }
    println!(
        "fidelity with the input, no correction: {:.6}",
        fidelity(&psi, &out)
    );
    Ok(())
}
