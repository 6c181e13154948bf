//! Print the four estimation elements, the nearest unitary to each, and how
//! far each element sits from unitarity.

use cloning_restore::{estimation_elements, hs_distance, nearest_unitary, CMat2, Outcome};

fn show(label: &str, m: &CMat2) {
    let e = m.entries();
    println!("  {label}");
    for row in e {
        println!(
            "    [{:>+8.5}{:>+8.5}i  {:>+8.5}{:>+8.5}i]",
            row[0].re, row[0].im, row[1].re, row[1].im
        );
    }
}

fn main() -> cloning_restore::Result<()> {
    let est = estimation_elements();
    for o in Outcome::ALL {
        let e = est.element(o);
        let u = nearest_unitary(e)?;
        println!("outcome {o}");
        show("E", e);
        show("U (nearest unitary)", &u);
        show("U^dagger E (reversed element)", &est.reversed_element(o));
        println!("  ||E - U||_HS = {:.6}\n", hs_distance(e, &u));
    }
    Ok(())
}
