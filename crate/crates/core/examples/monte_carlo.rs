//! Sample protocol trajectories with a seeded generator and compare the mean
//! overlap to the exact fidelity.

use cloning_restore::{ErrorRates, Protocol, PureQubit};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> cloning_restore::Result<()> {
    let psi = PureQubit::new(0.4, 2.2)?;
    let protocol = Protocol::new(ErrorRates::new(0.25, 0.4)?);
    let mut rng = ChaCha8Rng::seed_from_u64(2024);

    println!("first trajectories:");
    for _ in 0..5 {
        let t = protocol.run_trajectory(&psi, &mut rng);
        println!(
            "  alice={} error={:<14} bob={} overlap={:.6}",
            t.alice_outcome,
            t.error_drawn.label(),
            t.bob_outcome,
            t.overlap
        );
    }

    let exact = protocol.exact_fidelity(&psi);
    for trials in [1_000, 10_000, 100_000] {
        let est = protocol.monte_carlo(&psi, trials, &mut rng);
        println!(
            "trials={trials:>7} mean={:.6} stderr={:.6} z={:+.3}",
            est.mean,
            est.std_err,
            est.z_score(exact)
        );
    }
    println!("exact={exact:.6}");
    Ok(())
}
