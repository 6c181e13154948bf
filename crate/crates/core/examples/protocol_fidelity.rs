//! Run the full protocol on one input under several noise settings. The
//! branch-enumerated fidelity does not depend on the error rates and matches
//! the closed form.

use cloning_restore::{analytic_fidelity, ErrorRates, Protocol, PureQubit};

fn main() -> cloning_restore::Result<()> {
    let psi = PureQubit::new(0.65, 0.8)?;
    println!(
        "closed form: {:.12}",
        analytic_fidelity(psi.alpha2(), psi.phi())
    );
    for (pb, pp) in [(0.0, 0.0), (0.25, 0.4), (0.5, 0.5), (1.0, 1.0)] {
        let protocol = Protocol::new(ErrorRates::new(pb, pp)?);
        let branches = protocol.branches(&psi);
        let total: f64 = branches.iter().map(|b| b.weight()).sum();
        println!(
            "p_bit={pb:.2} p_ph={pp:.2}  exact={:.12}  branches={}  total weight={total:.12}",
            protocol.exact_fidelity(&psi),
            branches.len(),
        );
    }
    Ok(())
}
