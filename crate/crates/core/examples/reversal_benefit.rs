//! Compare the average fidelity of the post-measurement state with and without
//! the reversal unitary, for a handful of inputs.

use cloning_restore::{
    outcome_probability, post_measurement_state, reversed_fidelity, Outcome, PureQubit,
};

fn unreversed_fidelity(psi: &PureQubit) -> cloning_restore::Result<f64> {
    let mut f = 0.0;
    for o in Outcome::ALL {
        let p = outcome_probability(psi, o);
        if p > 0.0 {
            f += p * post_measurement_state(psi, o)?.overlap(psi);
        }
    }
    Ok(f)
}

fn main() -> cloning_restore::Result<()> {
    println!(
        "{:>7} {:>7} {:>12} {:>12}",
        "alpha2", "phi", "measured", "reversed"
    );
    for (a2, phi) in [
        (1.0, 0.0),
        (0.0, 0.0),
        (0.5, 0.0),
        (0.5, std::f64::consts::FRAC_PI_2),
        (0.8, 3.0),
        (0.2, 5.0),
    ] {
        let psi = PureQubit::new(a2, phi)?;
        println!(
            "{a2:>7.3} {phi:>7.3} {:>12.6} {:>12.6}",
            unreversed_fidelity(&psi)?,
            reversed_fidelity(&psi)
        );
    }
    Ok(())
}
