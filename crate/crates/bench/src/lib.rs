//! Shared parameter fixtures for the benchmark suite.

use polariton::params::{build_morse_model, EmitterModel, SystemParams};

/// Harmonic system at collective coupling 0.07, resonant cavity.
pub fn harmonic(n: u64) -> SystemParams {
    SystemParams::with_collective_g(n, 1.0, 1.0, 0.07, EmitterModel::Harmonic)
        .expect("valid parameters")
}

/// Morse system in the two-photon-resonance regime.
pub fn morse(n: u64, chi: f64) -> SystemParams {
    SystemParams::with_collective_g(n, 1.0, 1.0, 0.07, build_morse_model(chi).expect("chi"))
        .expect("valid parameters")
}
