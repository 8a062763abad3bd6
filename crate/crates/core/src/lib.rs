//! Exact eigenspectra, eigenstates and transition amplitudes for N identical
//! multilevel emitters collectively coupled to one cavity mode, in the first
//! and second excitation manifolds.
//!
//! Permutation symmetry reduces each manifold Hamiltonian to blocks of
//! dimension at most four, independent of N, so collective-strong-coupling
//! emitter counts (10^6 and far beyond) cost the same as N = 2. A brute-force
//! full-Hilbert-space oracle certifies every reduced result at small N.
//!
//! ```
//! use polariton::{solve_manifold, EmitterModel, Manifold, StateLabel, SystemParams};
//!
//! // 10^8 Morse oscillators at collective coupling 0.07, resonant cavity
//! let model = polariton::build_morse_model(0.14)?;
//! let params = SystemParams::with_collective_g(100_000_000, 1.0, 1.0, 0.07, model)?;
//! let spectrum = solve_manifold(&params, Manifold::Two)?;
//! let lower = spectrum.find(StateLabel::TwoMinus).unwrap();
//! assert!((lower.frequency - 1.86).abs() < 1e-3);
//! # Ok::<(), polariton::Error>(())
//! ```
//!
//! Module map:
//! - [`params`]: parameter records, Hopfield coefficients, the Morse
//!   anharmonicity relation
//! - [`linalg`]: dense symmetric matrices and the Jacobi eigensolver
//! - [`symbasis`]: symmetry-adapted basis coefficients and SU-label checks
//! - [`manifolds`]: reduced blocks, labeled spectra, photon content
//! - [`tcexact`]: closed-form cubic solution of the TC bipolariton block
//! - [`perturb`]: first-order anharmonic corrections about the harmonic limit
//! - [`transitions`]: dipole and photon transition amplitudes
//! - [`oracle`]: brute-force certification and collective-operator action
//! - [`analysis`]: sweeps, adiabatic tracking, avoided-crossing location

pub mod analysis;
pub mod error;
pub mod linalg;
pub mod manifolds;
pub mod oracle;
pub mod params;
pub mod perturb;
pub mod symbasis;
pub mod tcexact;
pub mod transitions;

pub use error::{Error, Result};
pub use manifolds::{
    solve_manifold, BasisLabel, Block, Irrep, LabeledSpectrum, Manifold, SpectrumEntry, StateLabel,
};
pub use params::{
    build_morse_model, derive, morse_gamma, DerivedQuantities, EmitterModel, SystemParams,
};
