//! Dipole and photon-operator transition amplitudes between the ground
//! state, manifold 1 and manifold 2, evaluated along two independent routes:
//! a closed-form route built from analytic eigenvectors (exact for TC and
//! harmonic models, first-order for anharmonic ones) and a numeric route
//! sandwiching Jacobi eigenvectors.
//!
//! Dipole amplitudes are in units of `mu_10`. The amplitude convention is
//! `<manifold-2 state| Op |manifold-1 state>` with `Op` the raising dipole or
//! the photon creation operator; the annihilation direction is the
//! transpose. The tabulated amplitudes are defined with the harmonic 1->2
//! dipole element `sqrt(2) mu_10`; coupling anharmonicity enters the
//! Hamiltonian only.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::linalg::dot;
use crate::manifolds::{
    build_blocks_m2, reference_states, solve_manifold, BasisLabel, Irrep, LabeledSpectrum,
    Manifold, StateLabel,
};
use crate::params::{EmitterModel, SystemParams};
use crate::perturb;
use crate::tcexact;

/// Transition operator between neighboring manifolds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TransitionOperator {
    /// Collective raising dipole, amplitudes in units of `mu_10`.
    Dipole,
    /// Photon creation operator.
    PhotonCreation,
}

impl TransitionOperator {
    pub fn name(&self) -> &'static str {
        match self {
            TransitionOperator::Dipole => "dipole",
            TransitionOperator::PhotonCreation => "photon",
        }
    }
}

/// One amplitude, with whichever routes were evaluated.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TransitionReport {
    pub operator: TransitionOperator,
    /// Manifold-2 (or manifold-1 for ground transitions) state.
    pub bra: StateLabel,
    /// Manifold-1 state (or `Ground`).
    pub ket: StateLabel,
    pub model: EmitterModel,
    /// Closed-form value; `None` marks a state absent in this model ("n/a").
    pub closed_form: Option<f64>,
    pub numeric: Option<f64>,
    /// `|closed_form - numeric|` when both exist.
    pub discrepancy: Option<f64>,
}

/// Operator matrix element between symmetrized basis members.
fn op_element(op: TransitionOperator, to: BasisLabel, from: BasisLabel, n: f64) -> f64 {
    use BasisLabel::*;
    let s2 = std::f64::consts::SQRT_2;
    match (op, to, from) {
        (TransitionOperator::Dipole, PhotonOneA, OnePhoton) => n.sqrt(),
        (TransitionOperator::Dipole, PairA, OneA) => (2.0 * (n - 1.0)).sqrt(),
        (TransitionOperator::Dipole, TwoA, OneA) => s2,
        (TransitionOperator::Dipole, PairB, OneB) => (n - 2.0).sqrt(),
        (TransitionOperator::Dipole, TwoB, OneB) => s2,
        (TransitionOperator::PhotonCreation, TwoPhoton, OnePhoton) => s2,
        (TransitionOperator::PhotonCreation, PhotonOneA, OneA) => 1.0,
        (TransitionOperator::PhotonCreation, PhotonOneB, OneB) => 1.0,
        _ => 0.0,
    }
}

/// Column of the operator over a manifold-2 basis, applied to one
/// manifold-1 basis member.
fn op_column(
    op: TransitionOperator,
    m2_basis: &[BasisLabel],
    m1_member: BasisLabel,
    n: f64,
) -> Vec<f64> {
    m2_basis
        .iter()
        .map(|&b| op_element(op, b, m1_member, n))
        .collect()
}

/// Applies the operator to a manifold-1 vector expressed over `m1_basis`,
/// returning the image over `m2_basis`.
fn apply_op(
    op: TransitionOperator,
    m2_basis: &[BasisLabel],
    m1_basis: &[BasisLabel],
    m1_vec: &[f64],
    n: f64,
) -> Vec<f64> {
    let mut out = vec![0.0; m2_basis.len()];
    for (&member, &c) in m1_basis.iter().zip(m1_vec) {
        if c == 0.0 {
            continue;
        }
        for (o, e) in out.iter_mut().zip(op_column(op, m2_basis, member, n)) {
            *o += c * e;
        }
    }
    out
}

/// Closed-form manifold-1 eigenvectors over `[1_0, 1_A]` (exact).
fn m1_closed(p: &SystemParams, label: StateLabel) -> (Vec<BasisLabel>, Vec<f64>) {
    let d = p.derive();
    match label {
        StateLabel::OnePlus => (
            vec![BasisLabel::OnePhoton, BasisLabel::OneA],
            vec![d.h_plus, d.h_minus],
        ),
        StateLabel::OneMinus => (
            vec![BasisLabel::OnePhoton, BasisLabel::OneA],
            vec![-d.h_minus, d.h_plus],
        ),
        StateLabel::OneDark => (vec![BasisLabel::OneB], vec![1.0]),
        _ => unreachable!("not a manifold-1 label"),
    }
}

/// Ground-state to manifold-1 amplitudes: closed forms against the numeric
/// polariton eigenvectors.
pub fn ground_transitions(p: &SystemParams) -> Result<Vec<TransitionReport>> {
    let d = p.derive();
    let n = p.n_f();
    let spectrum = solve_manifold(p, Manifold::One)?;
    let mut out = Vec::new();
    for op in [
        TransitionOperator::Dipole,
        TransitionOperator::PhotonCreation,
    ] {
        for (bra, closed) in [
            (
                StateLabel::OnePlus,
                match op {
                    TransitionOperator::Dipole => n.sqrt() * d.h_minus,
                    TransitionOperator::PhotonCreation => d.h_plus,
                },
            ),
            (
                StateLabel::OneMinus,
                match op {
                    TransitionOperator::Dipole => n.sqrt() * d.h_plus,
                    TransitionOperator::PhotonCreation => -d.h_minus,
                },
            ),
            (StateLabel::OneDark, 0.0),
        ] {
            // operator image of the ground state over the manifold-1 basis:
            // dipole: sqrt(N) |1_A>; photon: |1_0>
            let numeric = spectrum.find(bra).map(|e| {
                e.basis
                    .iter()
                    .zip(&e.eigenvector)
                    .map(|(&b, c)| match (op, b) {
                        (TransitionOperator::Dipole, BasisLabel::OneA) => c * n.sqrt(),
                        (TransitionOperator::PhotonCreation, BasisLabel::OnePhoton) => *c,
                        _ => 0.0,
                    })
                    .sum::<f64>()
            });
            out.push(TransitionReport {
                operator: op,
                bra,
                ket: StateLabel::Ground,
                model: p.model(),
                closed_form: Some(closed),
                numeric,
                discrepancy: numeric.map(|nv| (closed - nv).abs()),
            });
        }
    }
    Ok(out)
}

/// The tabulated (bra, ket) amplitude rows between manifolds 1 and 2.
pub fn amplitude_rows() -> Vec<(Irrep, StateLabel, StateLabel)> {
    let mut rows = Vec::new();
    for bra in [
        StateLabel::TwoPlus,
        StateLabel::TwoMinus,
        StateLabel::OnePlusOneMinus,
        StateLabel::TwoDarkA,
    ] {
        for ket in [StateLabel::OnePlus, StateLabel::OneMinus] {
            rows.push((Irrep::A, bra, ket));
        }
    }
    for bra in [
        StateLabel::OnePlusOneB,
        StateLabel::OneMinusOneB,
        StateLabel::TwoDarkB,
    ] {
        rows.push((Irrep::B, bra, StateLabel::OneDark));
    }
    rows
}

/// Closed-form manifold-2 eigenvectors (or first-order approximations) per
/// label, over their block bases.
fn closed_m2_vectors(p: &SystemParams) -> Result<Vec<(StateLabel, Vec<BasisLabel>, Vec<f64>)>> {
    let mut out = Vec::new();
    match p.model() {
        EmitterModel::TavisCummings => {
            // A block: exact cubic eigenvectors over [2_0, 1_0 1_A, 1_A^2]
            let sol = tcexact::tc_exact(p)?;
            let a_basis: Vec<BasisLabel> = if p.n_emitters() >= 2 {
                vec![
                    BasisLabel::TwoPhoton,
                    BasisLabel::PhotonOneA,
                    BasisLabel::PairA,
                ]
            } else {
                vec![BasisLabel::TwoPhoton, BasisLabel::PhotonOneA]
            };
            for (slot, label) in [
                (0usize, StateLabel::TwoPlus),
                (1, StateLabel::OnePlusOneMinus),
                (2, StateLabel::TwoMinus),
            ] {
                let mut v = sol.vectors[slot].clone();
                v.truncate(a_basis.len());
                // a root living on the padded direction has no state at this
                // N (the 1+1- slot at N = 1)
                if crate::linalg::norm(&v) < 0.5 {
                    continue;
                }
                // orient along the large-N reference so signs follow the
                // same convention as the numeric path
                orient_to_reference(p, label, &a_basis, &mut v);
                out.push((label, a_basis.clone(), v));
            }
            // B block: exact 2x2 with the (N - 2)-reduced Rabi frequency
            if p.n_emitters() >= 3 {
                let d = p.derive();
                let om_b = (d.detuning * d.detuning + 4.0 * (p.n_f() - 2.0) * p.g() * p.g()).sqrt();
                let (hp_b, hm_b) = if om_b == 0.0 {
                    (
                        std::f64::consts::FRAC_1_SQRT_2,
                        std::f64::consts::FRAC_1_SQRT_2,
                    )
                } else {
                    (
                        ((1.0 + d.detuning / om_b) / 2.0).sqrt(),
                        ((1.0 - d.detuning / om_b) / 2.0).sqrt(),
                    )
                };
                let b_basis = vec![BasisLabel::PhotonOneB, BasisLabel::PairB];
                out.push((StateLabel::OnePlusOneB, b_basis.clone(), vec![hp_b, hm_b]));
                out.push((StateLabel::OneMinusOneB, b_basis, vec![-hm_b, hp_b]));
            } else if p.n_emitters() == 2 {
                let b_basis = vec![BasisLabel::PhotonOneB];
                let label = if p.derive().detuning >= 0.0 {
                    StateLabel::OnePlusOneB
                } else {
                    StateLabel::OneMinusOneB
                };
                out.push((label, b_basis, vec![1.0]));
            }
        }
        EmitterModel::Harmonic => {
            // reference states are the exact harmonic eigenvectors
            for block in build_blocks_m2(p) {
                if block.irrep == Irrep::C {
                    continue;
                }
                for r in reference_states(p, &block) {
                    out.push((r.label, block.basis.clone(), r.vector));
                }
            }
        }
        EmitterModel::Anharmonic { .. } => {
            for row in perturb::pt_corrections(p)? {
                let (Some(v0), Some(v1)) = (row.vec0, row.vec1) else {
                    continue;
                };
                if row.basis.is_empty() || row.label == StateLabel::PairC {
                    continue;
                }
                let v: Vec<f64> = v0.iter().zip(&v1).map(|(a, b)| a + b).collect();
                out.push((row.label, row.basis, v));
            }
        }
    }
    Ok(out)
}

/// Flips `v` so its overlap with the harmonic/TC reference of `label` is
/// positive (same convention as the numeric labeling path).
fn orient_to_reference(p: &SystemParams, label: StateLabel, basis: &[BasisLabel], v: &mut [f64]) {
    let block = build_blocks_m2(p)
        .into_iter()
        .find(|b| b.basis == basis)
        .expect("basis corresponds to a block");
    if let Some(r) = reference_states(p, &block)
        .into_iter()
        .find(|r| r.label == label)
    {
        if dot(&r.vector, v) < 0.0 {
            for c in v.iter_mut() {
                *c = -*c;
            }
        }
    }
}

/// Evaluates every tabulated amplitude cell along the closed-form route.
///
/// Rows whose state does not exist in the requested model carry
/// `closed_form: None` (the tables mark them "-"), never zero.
pub fn table_amplitudes(p: &SystemParams, op: TransitionOperator) -> Result<Vec<TransitionReport>> {
    let closed = closed_m2_vectors(p)?;
    let n = p.n_f();
    let mut out = Vec::new();
    for (irrep, bra, ket) in amplitude_rows() {
        if irrep == Irrep::B && p.n_emitters() < 2 {
            continue;
        }
        let closed_form = closed
            .iter()
            .find(|(l, _, _)| *l == bra)
            .map(|(_, basis, v)| {
                let (m1_basis, m1_vec) = m1_closed(p, ket);
                let image = apply_op(op, basis, &m1_basis, &m1_vec, n);
                dot(v, &image)
            });
        out.push(TransitionReport {
            operator: op,
            bra,
            ket,
            model: p.model(),
            closed_form,
            numeric: None,
            discrepancy: None,
        });
    }
    Ok(out)
}

/// Numeric amplitudes from labeled Jacobi eigenvectors, with the closed-form
/// route attached and the discrepancy reported.
pub fn numeric_amplitudes(
    p: &SystemParams,
    op: TransitionOperator,
) -> Result<Vec<TransitionReport>> {
    let mut reports = table_amplitudes(p, op)?;
    let m1 = solve_manifold(p, Manifold::One)?;
    let m2 = solve_manifold(p, Manifold::Two)?;
    for r in reports.iter_mut() {
        r.numeric = numeric_amplitude(p, op, &m1, &m2, r.bra, r.ket);
        r.discrepancy = match (r.closed_form, r.numeric) {
            (Some(c), Some(nv)) => Some((c - nv).abs()),
            _ => None,
        };
    }
    Ok(reports)
}

fn numeric_amplitude(
    p: &SystemParams,
    op: TransitionOperator,
    m1: &LabeledSpectrum,
    m2: &LabeledSpectrum,
    bra: StateLabel,
    ket: StateLabel,
) -> Option<f64> {
    let b = m2.find(bra)?;
    let k = m1.find(ket)?;
    let image = apply_op(op, &b.basis, &k.basis, &k.eigenvector, p.n_f());
    Some(dot(&b.eigenvector, &image))
}
