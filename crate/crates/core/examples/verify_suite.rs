//! Run the built-in invariant suite programmatically and print its report.

use cloning_restore::verify::{run_verify, VerifyOptions};

fn main() {
    let report = run_verify(VerifyOptions::default());
    print!("{report}");
    std::process::exit(if report.passed() { 0 } else { 1 });
}
