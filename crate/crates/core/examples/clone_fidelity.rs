//! Clone a few states with the universal cloner and report how well each
//! clone matches the input. Every clone has fidelity 5/6.

use cloning_restore::{fidelity, reduce_qubit, uqcm_output, PureQubit};

fn main() -> cloning_restore::Result<()> {
    let inputs = [
        ("|0>", PureQubit::zero()),
        ("|1>", PureQubit::one()),
        ("|+>", PureQubit::new(0.5, 0.0)?),
        ("|+i>", PureQubit::new(0.5, std::f64::consts::FRAC_PI_2)?),
        ("(0.3, 2.0)", PureQubit::new(0.3, 2.0)?),
    ];
    println!(
        "{:<12} {:>10} {:>10} {:>10}",
        "input", "clone 1", "clone 2", "ancilla"
    );
    for (name, psi) in inputs {
        let out = uqcm_output(&psi);
        let f: Vec<f64> = (1..=3)
            .map(|q| reduce_qubit(&out, q).map(|rho| fidelity(&psi, &rho)))
            .collect::<Result<_, _>>()?;
        println!("{name:<12} {:>10.6} {:>10.6} {:>10.6}", f[0], f[1], f[2]);
    }
    println!("expected clone fidelity 5/6 = {:.6}", 5.0 / 6.0);
    Ok(())
}
