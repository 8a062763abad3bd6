//! First-order perturbation theory in the anharmonicities about the harmonic
//! solution: closed-form eigenfrequency shifts and eigenvector corrections,
//! including the degenerate branch at exact cavity-emitter resonance.
//!
//! The perturbing Hamiltonian couples the doubly-excited emitter member of
//! each block to the photon-carrying member (strength `gamma sqrt(2) g`) and
//! shifts its diagonal by `-chi omega_10`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::norm;
use crate::manifolds::{
    build_blocks_m2, is_resonant, reference_states_with_branch, BasisLabel, Irrep, StateLabel,
};
use crate::params::{EmitterModel, SystemParams};

/// Perturbative branch: degenerate (resonant) or not.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Branch {
    Resonant,
    NonResonant,
}

/// Hopfield coefficients closer than this are treated as the degenerate
/// branch boundary; the non-resonant formulas are refused inside it.
const H_DEGENERACY_TOL: f64 = 1e-8;

/// First-order data for one doubly-excited eigenstate.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PtCorrection {
    pub label: StateLabel,
    pub branch: Branch,
    /// Harmonic (zeroth-order) eigenfrequency.
    pub order0_frequency: f64,
    /// First-order frequency shift.
    pub shift: f64,
    /// Basis labels of the block the vectors live in.
    pub basis: Vec<BasisLabel>,
    /// Zeroth-order eigenvector (resonant branch uses the rotated states).
    pub vec0: Option<Vec<f64>>,
    /// First-order correction, unnormalized, orthogonal to `vec0`.
    pub vec1: Option<Vec<f64>>,
}

impl PtCorrection {
    /// `vec0 + vec1`, renormalized.
    pub fn renormalized_vector(&self) -> Option<Vec<f64>> {
        let v0 = self.vec0.as_ref()?;
        let v1 = self.vec1.as_ref()?;
        let mut v: Vec<f64> = v0.iter().zip(v1).map(|(a, b)| a + b).collect();
        let n = norm(&v);
        for c in v.iter_mut() {
            *c /= n;
        }
        Some(v)
    }
}

/// Selects the perturbative branch for these parameters, rejecting the gray
/// zone where the Hopfield coefficients nearly coincide but the detuning is
/// not exactly resonant.
pub fn select_branch(p: &SystemParams) -> Result<Branch> {
    if is_resonant(p) {
        return Ok(Branch::Resonant);
    }
    let d = p.derive();
    if (d.h_plus - d.h_minus).abs() < H_DEGENERACY_TOL {
        return Err(Error::Degeneracy(format!(
            "|h+ - h-| = {:.2e} is inside the degenerate window; use exactly resonant \
             parameters (detuning 0) for the resonant branch",
            (d.h_plus - d.h_minus).abs()
        )));
    }
    Ok(Branch::NonResonant)
}

fn require_anharmonic(p: &SystemParams) -> Result<(f64, f64)> {
    match p.model() {
        EmitterModel::Anharmonic { chi, gamma } => Ok((chi, gamma)),
        other => Err(Error::InvalidParams(format!(
            "perturbation theory takes an anharmonic model, got {other:?}"
        ))),
    }
}

/// Closed-form first-order frequency shift for one state.
///
/// `resonant` switches the exact Kronecker-delta terms of the tabulated
/// expressions; it is a discrete branch, never a numeric comparison of
/// floats.
pub fn first_order_shift(
    label: StateLabel,
    n: f64,
    hp: f64,
    hm: f64,
    rabi: f64,
    omega_10: f64,
    chi: f64,
    gamma: f64,
    resonant: bool,
) -> f64 {
    let cw = chi * omega_10;
    let go = gamma * rabi;
    let delta = if resonant { 1.0 } else { 0.0 };
    match label {
        StateLabel::TwoPlus => -(hm.powi(4) / n) * (cw - 4.0 * hp * hp * go),
        StateLabel::TwoMinus => -(hp.powi(4) / n) * (cw + 4.0 * hm * hm * go),
        StateLabel::OnePlusOneMinus => {
            -(2.0 * hp * hp * hm * hm / n) * ((1.0 - delta) * cw - 2.0 * (hp * hp - hm * hm) * go)
        }
        StateLabel::TwoDarkA => -((2.0 * n - 2.0 + delta) / (2.0 * n)) * cw,
        StateLabel::OnePlusOneB => -(2.0 * hm * hm / n) * (cw - 2.0 * hp * hp * go),
        StateLabel::OneMinusOneB => -(2.0 * hp * hp / n) * (cw + 2.0 * hm * hm * go),
        StateLabel::TwoDarkB => -((n - 2.0) / n) * cw,
        StateLabel::PairC => 0.0,
        _ => f64::NAN,
    }
}

/// All tabulated rows that exist at this emitter count. The `2_DB` row is
/// included from N = 2 (where its shift is identically zero).
fn row_labels(n: u64) -> Vec<StateLabel> {
    let mut rows = vec![
        StateLabel::TwoPlus,
        StateLabel::TwoMinus,
        StateLabel::OnePlusOneMinus,
    ];
    if n >= 2 {
        rows.extend([
            StateLabel::TwoDarkA,
            StateLabel::OnePlusOneB,
            StateLabel::OneMinusOneB,
            StateLabel::TwoDarkB,
        ]);
    }
    if n >= 4 {
        rows.push(StateLabel::PairC);
    }
    rows
}

/// Tabulated first-order frequency shifts about the harmonic solution.
pub fn pt_frequencies(p: &SystemParams) -> Result<Vec<PtCorrection>> {
    let (chi, gamma) = require_anharmonic(p)?;
    let branch = select_branch(p)?;
    let d = p.derive();
    let (wp, wm) = d.omega_pm(p);
    let n = p.n_f();
    let w10 = p.omega_10();
    let order0 = |label: StateLabel| -> f64 {
        match label {
            StateLabel::TwoPlus => 2.0 * wp,
            StateLabel::TwoMinus => 2.0 * wm,
            StateLabel::OnePlusOneMinus => wp + wm,
            StateLabel::TwoDarkA | StateLabel::TwoDarkB | StateLabel::PairC => 2.0 * w10,
            StateLabel::OnePlusOneB => w10 + wp,
            StateLabel::OneMinusOneB => w10 + wm,
            _ => f64::NAN,
        }
    };
    Ok(row_labels(p.n_emitters())
        .into_iter()
        .map(|label| PtCorrection {
            label,
            branch,
            order0_frequency: order0(label),
            shift: first_order_shift(
                label,
                n,
                d.h_plus,
                d.h_minus,
                d.rabi,
                w10,
                chi,
                gamma,
                branch == Branch::Resonant,
            ),
            basis: vec![],
            vec0: None,
            vec1: None,
        })
        .collect())
}

/// Zeroth-order states plus exact first-order eigenvector corrections.
///
/// The corrections are the Rayleigh-Schrodinger projections built from the
/// analytic harmonic eigenbasis; each is orthogonal to its zeroth-order
/// state by construction. On the resonant branch the degenerate pair uses
/// the rotated zeroth-order states and the `1+1-` correction vanishes.
pub fn pt_corrections(p: &SystemParams) -> Result<Vec<PtCorrection>> {
    let (chi, gamma) = require_anharmonic(p)?;
    let branch_is_resonant = select_branch(p)? == Branch::Resonant;
    let mut rows = pt_frequencies(p)?;

    // zeroth-order data comes from the harmonic blocks at the same
    // (N, frequencies, coupling)
    let p_harm = p.with_model(EmitterModel::Harmonic);
    let blocks = build_blocks_m2(&p_harm);
    let cw = chi * p.omega_10();
    let g2 = std::f64::consts::SQRT_2 * p.g() * gamma;

    for block in &blocks {
        if block.irrep == Irrep::C {
            // scalar block: zeroth state is the basis member, no correction
            for row in rows.iter_mut().filter(|r| r.label == StateLabel::PairC) {
                row.basis = block.basis.clone();
                row.vec0 = Some(vec![1.0]);
                row.vec1 = Some(vec![0.0]);
            }
            continue;
        }
        let dim = block.basis.len();
        // perturbation within this block
        let photon_member = match block.irrep {
            Irrep::A => BasisLabel::PhotonOneA,
            _ => BasisLabel::PhotonOneB,
        };
        let two_member = match block.irrep {
            Irrep::A => BasisLabel::TwoA,
            _ => BasisLabel::TwoB,
        };
        let ip = block.basis.iter().position(|&b| b == photon_member);
        let it = block.basis.iter().position(|&b| b == two_member);
        let hprime = |u: &[f64], v: &[f64]| -> f64 {
            let mut val = 0.0;
            if let (Some(ip), Some(it)) = (ip, it) {
                val += g2 * (u[ip] * v[it] + u[it] * v[ip]);
            }
            if let Some(it) = it {
                val -= cw * u[it] * v[it];
            }
            val
        };

        let refs = reference_states_with_branch(&p_harm, block, branch_is_resonant);
        for r in &refs {
            let Some(row) = rows.iter_mut().find(|row| row.label == r.label) else {
                continue;
            };
            let mut v1 = vec![0.0; dim];
            for other in &refs {
                if other.label == r.label {
                    continue;
                }
                let de = r.frequency - other.frequency;
                if de.abs() < 1e-12 * p.omega_10() {
                    // degenerate partner: the rotated zeroth states decouple
                    continue;
                }
                let coupling = hprime(&other.vector, &r.vector);
                for (v1i, oi) in v1.iter_mut().zip(&other.vector) {
                    *v1i += oi * (coupling / de);
                }
            }
            row.basis = block.basis.clone();
            row.vec0 = Some(r.vector.clone());
            row.vec1 = Some(v1);
        }
    }
    Ok(rows)
}

/// Alias emphasizing the eigenvector part of the correction data.
pub fn pt_vectors(p: &SystemParams) -> Result<Vec<PtCorrection>> {
    pt_corrections(p)
}
