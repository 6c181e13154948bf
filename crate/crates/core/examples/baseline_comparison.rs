//! Compare the protocol with the computational-basis measure-and-prepare
//! baseline, pointwise and averaged over the input plane.

use cloning_restore::{analytic_fidelity, baseline_direct_fidelity, plane_average, PureQubit};

fn main() -> cloning_restore::Result<()> {
    println!("{:>7} {:>10} {:>10}", "alpha2", "protocol", "baseline");
    for k in 0..=10 {
        let a2 = k as f64 / 10.0;
        let psi = PureQubit::new(a2, 0.0)?;
        println!(
            "{a2:>7.2} {:>10.6} {:>10.6}",
            analytic_fidelity(a2, 0.0),
            baseline_direct_fidelity(&psi)
        );
    }

    let protocol = plane_average(analytic_fidelity, 201, 201)?;
    let baseline = plane_average(
        |a2, phi| baseline_direct_fidelity(&PureQubit::new(a2, phi).expect("grid point")),
        201,
        201,
    )?;
    println!("plane averages: protocol {protocol:.6} (16/27), baseline {baseline:.6} (2/3)");
    Ok(())
}
