//! Simulation of quantum state restoration through universal cloning.
//!
//! A sender clones an unknown qubit with the universal 1→2 cloner, measures
//! the two clones to estimate the state, approximately reverses the
//! measurement's back-action and transmits the signal through a bit/phase-flip
//! channel. The receiver repeats the estimation, compares outcomes to infer
//! the error and applies a Pauli correction.
//!
//! Module map:
//!
//! - [`linalg`]: 2×2 complex matrices, Hilbert–Schmidt distance, closed-form
//!   polar decomposition and nearest unitary.
//! - [`qubit`], [`channel`]: pure states, density matrices, fidelity, Kraus
//!   channels and the Pauli error channel.
//! - [`cloning`]: the cloner, the four-outcome estimation measurement and its
//!   reversal.
//! - [`protocol`]: exact, mixed-input, closed-form and Monte Carlo fidelity.
//! - [`sweep`], [`verify`], [`cli`]: plane sweeps to CSV, the invariant
//!   suite and the command-line front end.
//!
//! ```
//! use cloning_restore::{exact_fidelity, analytic_fidelity, ErrorRates, PureQubit};
//!
//! let psi = PureQubit::new(0.5, 0.0).unwrap();
//! let f = exact_fidelity(&psi, ErrorRates::new(0.2, 0.3).unwrap());
//! assert!((f - analytic_fidelity(0.5, 0.0)).abs() < 1e-10);
//! ```

pub mod channel;
pub mod cli;
pub mod cloning;
pub mod error;
pub mod linalg;
pub mod protocol;
pub mod qubit;
pub mod sweep;
pub mod verify;

pub use channel::{error_channel, ErrorRates, ErrorType, KrausChannel};
pub use cloning::{
    estimation_elements, outcome_probability, post_measurement_state, reverse, reversed_fidelity,
    uqcm_output, EstimationChannel, Outcome, Sign,
};
pub use error::{Error, Result};
pub use linalg::{hs_distance, nearest_unitary, polar_decompose, CMat2, CVec8, Polar, C64};
pub use protocol::{
    analytic_fidelity, baseline_direct_fidelity, correction_unitary, exact_fidelity,
    mixed_input_fidelity, plane_average, run_trajectory, CorrectionRule, PlaneGrid, Protocol,
    TrajectoryRecord,
};
pub use qubit::{fidelity, make_pure, reduce_qubit, DensityMatrix, PureQubit};
