//! System parameters and the derived single-excitation quantities (detuning,
//! Rabi frequency, Hopfield coefficients), plus the Morse anharmonicity map.
//!
//! Frequencies are stored in user units; the rest of the crate assumes nothing
//! beyond `omega_10 > 0`. All types are immutable after construction.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Energetic structure assumed for each emitter.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum EmitterModel {
    /// Two-level emitters; no doubly excited local state.
    TavisCummings,
    /// Three-level emitters with evenly spaced levels and bosonic couplings.
    Harmonic,
    /// Three-level emitters with mechanical (`chi`) and electrical (`gamma`)
    /// anharmonicity: `omega_12 = omega_10 (1 - chi)`,
    /// `g_12 = sqrt(2) g_01 (1 + gamma)`.
    Anharmonic { chi: f64, gamma: f64 },
}

impl EmitterModel {
    /// Mechanical anharmonicity; zero for the harmonic and TC models.
    pub fn chi(&self) -> f64 {
        match self {
            EmitterModel::Anharmonic { chi, .. } => *chi,
            _ => 0.0,
        }
    }

    /// Electrical anharmonicity. The TC model behaves as `gamma = -1`: the
    /// 1->2 coupling vanishes identically.
    pub fn gamma(&self) -> f64 {
        match self {
            EmitterModel::TavisCummings => -1.0,
            EmitterModel::Harmonic => 0.0,
            EmitterModel::Anharmonic { gamma, .. } => *gamma,
        }
    }

    pub fn is_tc(&self) -> bool {
        matches!(self, EmitterModel::TavisCummings)
    }
}

/// The single source of truth for a computation: emitter count, frequencies,
/// single-emitter coupling and emitter model.
///
/// Couplings are real and symmetric (`g_01 = g_10`); a complex phase would be
/// a gauge choice with no effect on spectra and is excluded by construction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SystemParams {
    n_emitters: u64,
    omega_cav: f64,
    omega_10: f64,
    g: f64,
    model: EmitterModel,
}

impl SystemParams {
    /// Validates and freezes a parameter record.
    pub fn new(
        n_emitters: u64,
        omega_cav: f64,
        omega_10: f64,
        g: f64,
        model: EmitterModel,
    ) -> Result<Self> {
        if n_emitters == 0 {
            return Err(Error::InvalidParams("n_emitters must be >= 1".into()));
        }
        if !(omega_10 > 0.0) || !omega_10.is_finite() {
            return Err(Error::InvalidParams(format!(
                "omega_10 must be positive and finite, got {omega_10}"
            )));
        }
        if !omega_cav.is_finite() {
            return Err(Error::InvalidParams("omega_cav must be finite".into()));
        }
        if !(g >= 0.0) || !g.is_finite() {
            return Err(Error::InvalidParams(format!(
                "coupling g must be real, nonnegative and finite, got {g}"
            )));
        }
        if let EmitterModel::Anharmonic { chi, gamma } = model {
            if !chi.is_finite() || !gamma.is_finite() {
                return Err(Error::InvalidParams("chi and gamma must be finite".into()));
            }
        }
        Ok(Self {
            n_emitters,
            omega_cav,
            omega_10,
            g,
            model,
        })
    }

    /// Convenience constructor taking the collective coupling
    /// `sqrt(N) g` instead of the per-emitter one.
    pub fn with_collective_g(
        n_emitters: u64,
        omega_cav: f64,
        omega_10: f64,
        collective_g: f64,
        model: EmitterModel,
    ) -> Result<Self> {
        let g = collective_g / (n_emitters as f64).sqrt();
        Self::new(n_emitters, omega_cav, omega_10, g, model)
    }

    pub fn n_emitters(&self) -> u64 {
        self.n_emitters
    }

    /// N as the floating value consumed by the block formulas.
    pub fn n_f(&self) -> f64 {
        self.n_emitters as f64
    }

    pub fn omega_cav(&self) -> f64 {
        self.omega_cav
    }

    pub fn omega_10(&self) -> f64 {
        self.omega_10
    }

    pub fn g(&self) -> f64 {
        self.g
    }

    pub fn model(&self) -> EmitterModel {
        self.model
    }

    pub fn collective_g(&self) -> f64 {
        self.n_f().sqrt() * self.g
    }

    /// 1->2 transition frequency `omega_10 (1 - chi)`.
    pub fn omega_12(&self) -> f64 {
        self.omega_10 * (1.0 - self.model.chi())
    }

    /// 1->2 coupling `sqrt(2) g (1 + gamma)`; identically zero for TC.
    pub fn g_12(&self) -> f64 {
        std::f64::consts::SQRT_2 * self.g * (1.0 + self.model.gamma())
    }

    /// Same parameters with a different emitter model.
    pub fn with_model(&self, model: EmitterModel) -> Self {
        Self { model, ..*self }
    }

    /// Same parameters with a different emitter count, keeping the
    /// per-emitter coupling.
    pub fn with_n(&self, n_emitters: u64) -> Result<Self> {
        Self::new(
            n_emitters,
            self.omega_cav,
            self.omega_10,
            self.g,
            self.model,
        )
    }

    /// Same parameters with a different emitter count, rescaling the
    /// per-emitter coupling so `sqrt(N) g` stays fixed.
    pub fn with_n_fixed_collective(&self, n_emitters: u64) -> Result<Self> {
        let cg = self.collective_g();
        Self::with_collective_g(n_emitters, self.omega_cav, self.omega_10, cg, self.model)
    }

    pub fn derive(&self) -> DerivedQuantities {
        derive(self)
    }
}

/// Detuning, Rabi frequency and Hopfield coefficients of the first manifold.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DerivedQuantities {
    pub detuning: f64,
    pub rabi: f64,
    pub h_plus: f64,
    pub h_minus: f64,
}

impl DerivedQuantities {
    /// Upper/lower polariton frequencies `(omega_cav + omega_10 +/- rabi)/2`.
    pub fn omega_pm(&self, p: &SystemParams) -> (f64, f64) {
        let s = p.omega_cav() + p.omega_10();
        ((s + self.rabi) / 2.0, (s - self.rabi) / 2.0)
    }
}

/// Detuning `omega_cav - omega_10`, Rabi frequency
/// `sqrt(detuning^2 + 4 N g^2)` and Hopfield coefficients
/// `h_pm = sqrt((1 pm detuning/rabi)/2)`.
///
/// At the fully decoupled degenerate point (`g = 0`, `detuning = 0`) the
/// mixing angle is undefined; the resonant limit `h_pm = 1/sqrt(2)` is
/// returned. Operations that genuinely divide by the Rabi frequency perform
/// their own degeneracy checks.
pub fn derive(p: &SystemParams) -> DerivedQuantities {
    let detuning = p.omega_cav() - p.omega_10();
    let rabi = (detuning * detuning + 4.0 * p.n_f() * p.g() * p.g()).sqrt();
    let (h_plus, h_minus) = if rabi == 0.0 {
        (
            std::f64::consts::FRAC_1_SQRT_2,
            std::f64::consts::FRAC_1_SQRT_2,
        )
    } else {
        (
            ((1.0 + detuning / rabi) / 2.0).sqrt(),
            ((1.0 - detuning / rabi) / 2.0).sqrt(),
        )
    };
    DerivedQuantities {
        detuning,
        rabi,
        h_plus,
        h_minus,
    }
}

/// Electrical anharmonicity of a Morse oscillator with mechanical
/// anharmonicity `chi`:
///
/// ```text
/// gamma = (1/2) sqrt((1 + chi)(16 - chi^2) / (2 (2 + chi))) - 1
/// ```
///
/// Valid for `0 <= chi < 4`.
pub fn morse_gamma(chi: f64) -> Result<f64> {
    if !(chi >= 0.0) {
        return Err(Error::Domain(format!(
            "morse_gamma requires chi >= 0, got {chi}"
        )));
    }
    if chi >= 4.0 {
        return Err(Error::Domain(format!(
            "morse_gamma requires chi < 4, got {chi}"
        )));
    }
    let arg = (1.0 + chi) * (16.0 - chi * chi) / (2.0 * (2.0 + chi));
    Ok(0.5 * arg.sqrt() - 1.0)
}

/// Anharmonic emitter model with `gamma` tied to `chi` through the Morse
/// relation.
pub fn build_morse_model(chi: f64) -> Result<EmitterModel> {
    Ok(EmitterModel::Anharmonic {
        chi,
        gamma: morse_gamma(chi)?,
    })
}
