//! Lifetimes of multiparty distillable entanglement in GHZ and graph states
//! exposed to independent depolarizing noise.
//!
//! * [`noise_model`]: noise strength `p = e^{-κt}` and Pauli-diagonal channels.
//! * [`ghz_analysis`]: GHZ spectrum, partial-transpose conditions and
//!   `M`-party lifetime bounds, all in the log domain.
//! * [`graph_core`]: graph states, the σ_z-pattern noise calculus and
//!   pair-distillability thresholds for lattices.
//! * [`oracle`]: a dense density-matrix engine (up to 10 qubits) that
//!   re-derives the analytic results by brute force.
//! * [`cli`]: the command-line front end and its table output.

pub mod cli;
pub mod error;
pub mod ghz_analysis;
pub mod graph_core;
pub mod noise_model;
pub mod numeric;
pub mod oracle;

pub use error::{Error, Result};
pub use noise_model::NoiseParameter;
