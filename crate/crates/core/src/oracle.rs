//! Brute-force construction and diagonalization of the full manifold
//! Hamiltonians in the localized basis, plus exact collective-operator action
//! on explicit many-body vectors. Everything here exists to certify the
//! reduced path at small N; nothing is reachable from large-N code paths.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{eigh_jacobi, SymMatrix};
use crate::manifolds::{solve_manifold, Manifold};
use crate::params::{build_morse_model, EmitterModel, SystemParams};

/// Hard cap on N for the full-basis builder (dimension 66 at N = 10).
pub const BUILD_CAP: u64 = 10;
/// Hard cap on N for certification runs.
pub const CERTIFY_CAP: u64 = 8;

/// Eigenvalue agreement tolerance for certification, in units of `omega_10`.
pub const CERTIFY_TOL: f64 = 1e-9;
/// Gap threshold for clustering degenerate eigenvalues, in units of
/// `omega_10`.
pub const CLUSTER_GAP: f64 = 1e-8;
/// Random draws are rejected when distinct clusters approach closer than
/// this, in units of `omega_10`, so degeneracy counting stays unambiguous.
pub const REDRAW_GAP: f64 = 1e-6;

/// Localized basis member of manifold 1 or 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FockState {
    /// `|1_0>`
    OnePhoton,
    /// `|1_i>`, emitter index 1-based
    OneEmitter(usize),
    /// `|2_0>`
    TwoPhoton,
    /// `|1_0 1_i>`
    PhotonEmitter(usize),
    /// `|1_m 1_n>`, `m < n`
    Pair(usize, usize),
    /// `|2_i>` (absent in the TC model)
    TwoQuanta(usize),
}

/// Ordered localized basis of one manifold.
#[derive(Debug, Clone)]
pub struct FockBasis {
    pub manifold: Manifold,
    pub members: Vec<FockState>,
}

impl FockBasis {
    pub fn index_of(&self, s: FockState) -> Option<usize> {
        self.members.iter().position(|&m| m == s)
    }

    pub fn dim(&self) -> usize {
        self.members.len()
    }
}

/// Localized basis of the requested manifold; the TC model omits the
/// doubly-excited emitter states.
pub fn fock_basis(p: &SystemParams, manifold: Manifold) -> Result<FockBasis> {
    let n = p.n_emitters();
    if n > BUILD_CAP {
        return Err(Error::Capacity(format!(
            "full-basis construction is capped at N = {BUILD_CAP}, got {n}"
        )));
    }
    let n = n as usize;
    let mut members = Vec::new();
    match manifold {
        Manifold::One => {
            members.push(FockState::OnePhoton);
            members.extend((1..=n).map(FockState::OneEmitter));
        }
        Manifold::Two => {
            members.push(FockState::TwoPhoton);
            members.extend((1..=n).map(FockState::PhotonEmitter));
            for m in 1..=n {
                for nn in (m + 1)..=n {
                    members.push(FockState::Pair(m, nn));
                }
            }
            if !p.model().is_tc() {
                members.extend((1..=n).map(FockState::TwoQuanta));
            }
        }
    }
    Ok(FockBasis { manifold, members })
}

/// Full manifold Hamiltonian in the localized basis.
#[derive(Debug, Clone)]
pub struct FullHamiltonian {
    pub basis: FockBasis,
    pub matrix: SymMatrix,
}

/// Populates the full Hamiltonian: photon hops carry Bose factors, the
/// doubly-excited emitter levels carry `omega_10 + omega_21` on the diagonal
/// and couple through `g_12`.
pub fn build_full(p: &SystemParams, manifold: Manifold) -> Result<FullHamiltonian> {
    let basis = fock_basis(p, manifold)?;
    let dim = basis.dim();
    let w0 = p.omega_cav();
    let w10 = p.omega_10();
    let g = p.g();
    let g12 = p.g_12();
    let diag_two = w10 + p.omega_12();
    let mut h = SymMatrix::zeros(dim);

    for (i, &si) in basis.members.iter().enumerate() {
        match si {
            FockState::OnePhoton => h.set(i, i, w0),
            FockState::OneEmitter(_) => h.set(i, i, w10),
            FockState::TwoPhoton => h.set(i, i, 2.0 * w0),
            FockState::PhotonEmitter(_) => h.set(i, i, w0 + w10),
            FockState::Pair(_, _) => h.set(i, i, 2.0 * w10),
            FockState::TwoQuanta(_) => h.set(i, i, diag_two),
        }
        for (j, &sj) in basis.members.iter().enumerate().skip(i + 1) {
            let v = match (si, sj) {
                (FockState::OnePhoton, FockState::OneEmitter(_)) => g,
                (FockState::TwoPhoton, FockState::PhotonEmitter(_)) => std::f64::consts::SQRT_2 * g,
                (FockState::PhotonEmitter(a), FockState::Pair(m, n)) => {
                    if a == m || a == n {
                        g
                    } else {
                        0.0
                    }
                }
                (FockState::PhotonEmitter(a), FockState::TwoQuanta(b)) => {
                    if a == b {
                        g12
                    } else {
                        0.0
                    }
                }
                _ => 0.0,
            };
            if v != 0.0 {
                h.set_sym(i, j, v);
            }
        }
    }
    Ok(FullHamiltonian { basis, matrix: h })
}

/// Dipole raising matrix element ratio `mu_21 / mu_10` used by transition
/// cross-checks. The tabulated amplitudes are defined with the harmonic
/// value `sqrt(2)`; the emitter's coupling anharmonicity enters only the
/// Hamiltonian.
pub fn mu21_harmonic() -> f64 {
    std::f64::consts::SQRT_2
}

/// Applies the collective raising dipole (units of `mu_10`) to a manifold-1
/// vector, producing a manifold-2 vector.
pub fn apply_dipole_raising(
    p: &SystemParams,
    v: &[f64],
    from: &FockBasis,
    to: &FockBasis,
) -> Result<Vec<f64>> {
    check_pair(from, to, v.len())?;
    let mut out = vec![0.0; to.dim()];
    let n = p.n_emitters() as usize;
    let mu21 = mu21_harmonic();
    for (i, &s) in from.members.iter().enumerate() {
        if v[i] == 0.0 {
            continue;
        }
        match s {
            FockState::OnePhoton => {
                for e in 1..=n {
                    out[to.index_of(FockState::PhotonEmitter(e)).unwrap()] += v[i];
                }
            }
            FockState::OneEmitter(e) => {
                for j in 1..=n {
                    if j == e {
                        continue;
                    }
                    let pair = if j < e {
                        FockState::Pair(j, e)
                    } else {
                        FockState::Pair(e, j)
                    };
                    out[to.index_of(pair).unwrap()] += v[i];
                }
                if let Some(t) = to.index_of(FockState::TwoQuanta(e)) {
                    out[t] += mu21 * v[i];
                }
            }
            _ => {
                return Err(Error::Contract(
                    "dipole raising expects a manifold-1 vector".into(),
                ))
            }
        }
    }
    Ok(out)
}

/// Applies the photon creation operator to a manifold-1 vector, producing a
/// manifold-2 vector.
pub fn apply_photon_creation(v: &[f64], from: &FockBasis, to: &FockBasis) -> Result<Vec<f64>> {
    check_pair(from, to, v.len())?;
    let mut out = vec![0.0; to.dim()];
    for (i, &s) in from.members.iter().enumerate() {
        if v[i] == 0.0 {
            continue;
        }
        match s {
            FockState::OnePhoton => {
                out[to.index_of(FockState::TwoPhoton).unwrap()] += std::f64::consts::SQRT_2 * v[i];
            }
            FockState::OneEmitter(e) => {
                out[to.index_of(FockState::PhotonEmitter(e)).unwrap()] += v[i];
            }
            _ => {
                return Err(Error::Contract(
                    "photon creation expects a manifold-1 vector".into(),
                ))
            }
        }
    }
    Ok(out)
}

fn check_pair(from: &FockBasis, to: &FockBasis, vlen: usize) -> Result<()> {
    if from.manifold != Manifold::One || to.manifold != Manifold::Two {
        return Err(Error::Contract(
            "transition operators map manifold 1 to manifold 2".into(),
        ));
    }
    if vlen != from.dim() {
        return Err(Error::Contract("vector length does not match basis".into()));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Explicit matter configuration space for SU(2)/SU(3) label checks
// ---------------------------------------------------------------------------

/// All `3^N` three-level emitter configurations, indexed base-3 with emitter 1
/// as the least significant digit.
#[derive(Debug, Clone)]
pub struct ConfigSpace {
    n: usize,
    dim: usize,
}

impl ConfigSpace {
    pub fn new(n: usize) -> Self {
        assert!(n <= 12, "configuration space grows as 3^N");
        Self {
            n,
            dim: 3usize.pow(n as u32),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn index_of(&self, cfg: &[u8]) -> usize {
        debug_assert_eq!(cfg.len(), self.n);
        cfg.iter()
            .rev()
            .fold(0usize, |acc, &d| acc * 3 + d as usize)
    }

    pub fn config_of(&self, mut idx: usize) -> Vec<u8> {
        let mut cfg = Vec::with_capacity(self.n);
        for _ in 0..self.n {
            cfg.push((idx % 3) as u8);
            idx /= 3;
        }
        cfg
    }

    fn digit(&self, idx: usize, e: usize) -> u8 {
        ((idx / 3usize.pow(e as u32)) % 3) as u8
    }

    fn with_digit(&self, idx: usize, e: usize, d: u8) -> usize {
        let p = 3usize.pow(e as u32);
        let old = (idx / p) % 3;
        (idx as i64 + (d as i64 - old as i64) * p as i64) as usize
    }
}

/// Collective matter operators acting on the configuration space.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatterOp {
    /// `J^2 = J_0^2 + (J_+ J_- + J_- J_+)/2` over the 0<->1 ladder.
    JSquared,
    /// `J_0^(0) = (n_1 - n_0)/2`.
    JZero,
    /// Hypercharge `(2/3)([J_-^(1), J_+^(1)] - J_0^(0)) = (n_0 + n_1 - 2 n_2)/3`.
    Hypercharge,
    /// `J_+^(0)`: raises one emitter 0 -> 1.
    JPlus,
    /// `J_-^(0)`: lowers one emitter 1 -> 0.
    JMinus,
}

/// Exact sparse action of a collective matter operator.
pub fn apply_matter_operator(op: MatterOp, v: &[Complex64], space: &ConfigSpace) -> Vec<Complex64> {
    assert_eq!(v.len(), space.dim());
    match op {
        MatterOp::JZero => (0..space.dim())
            .map(|i| {
                let (mut n0, mut n1) = (0i32, 0i32);
                for e in 0..space.n() {
                    match space.digit(i, e) {
                        0 => n0 += 1,
                        1 => n1 += 1,
                        _ => {}
                    }
                }
                v[i] * ((n1 - n0) as f64 / 2.0)
            })
            .collect(),
        MatterOp::Hypercharge => (0..space.dim())
            .map(|i| {
                let (mut n01, mut n2) = (0i32, 0i32);
                for e in 0..space.n() {
                    if space.digit(i, e) == 2 {
                        n2 += 1;
                    } else {
                        n01 += 1;
                    }
                }
                v[i] * ((n01 - 2 * n2) as f64 / 3.0)
            })
            .collect(),
        MatterOp::JPlus => ladder(v, space, 0, true),
        MatterOp::JMinus => ladder(v, space, 1, false),
        MatterOp::JSquared => {
            let j0v = apply_matter_operator(MatterOp::JZero, v, space);
            let mut out = apply_matter_operator(MatterOp::JZero, &j0v, space);
            let jm = apply_matter_operator(MatterOp::JMinus, v, space);
            let jpjm = apply_matter_operator(MatterOp::JPlus, &jm, space);
            let jp = apply_matter_operator(MatterOp::JPlus, v, space);
            let jmjp = apply_matter_operator(MatterOp::JMinus, &jp, space);
            for i in 0..out.len() {
                out[i] += 0.5 * (jpjm[i] + jmjp[i]);
            }
            out
        }
    }
}

/// Moves one emitter from `from_level` up (raise) or down.
fn ladder(v: &[Complex64], space: &ConfigSpace, from_level: u8, raise: bool) -> Vec<Complex64> {
    let mut out = vec![Complex64::default(); space.dim()];
    let to_level = if raise {
        from_level + 1
    } else {
        from_level - 1
    };
    for (i, &vi) in v.iter().enumerate() {
        if vi == Complex64::default() {
            continue;
        }
        for e in 0..space.n() {
            if space.digit(i, e) == from_level {
                out[space.with_digit(i, e, to_level)] += vi;
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Certification
// ---------------------------------------------------------------------------

/// Certification outcome for one manifold.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ManifoldCertification {
    pub manifold: u8,
    pub dim: usize,
    /// Largest |reduced eigenvalue - full eigenvalue| after sorting both.
    pub max_deviation: f64,
    /// Eigenvalue clusters: (representative value, full count, reduced
    /// multiplicity sum).
    pub clusters: Vec<(f64, usize, u128)>,
    pub pass: bool,
    pub message: Option<String>,
}

/// Certification outcome for one parameter set.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CertificationReport {
    pub n: u64,
    pub model: EmitterModel,
    pub manifolds: Vec<ManifoldCertification>,
    pub pass: bool,
}

/// Diagonalizes the full manifold Hamiltonians and compares the sorted
/// spectra and degeneracy pattern against the reduced path.
pub fn certify(p: &SystemParams) -> Result<CertificationReport> {
    if p.n_emitters() > CERTIFY_CAP {
        return Err(Error::Capacity(format!(
            "certification is capped at N = {CERTIFY_CAP}, got {}",
            p.n_emitters()
        )));
    }
    let tol = CERTIFY_TOL * p.omega_10();
    let gap = CLUSTER_GAP * p.omega_10();
    let mut manifolds = Vec::new();
    for m in [Manifold::One, Manifold::Two] {
        let full = build_full(p, m)?;
        let full_eig = eigh_jacobi(&full.matrix)?;
        let reduced = solve_manifold(p, m)?;

        let mut expanded: Vec<f64> = Vec::with_capacity(full.basis.dim());
        for e in &reduced.entries {
            for _ in 0..e.multiplicity as usize {
                expanded.push(e.frequency);
            }
        }
        expanded.sort_by(|a, b| a.partial_cmp(b).unwrap());

        let mut max_dev = 0.0_f64;
        let mut message = None;
        if expanded.len() != full_eig.values.len() {
            message = Some(format!(
                "dimension mismatch: reduced {} vs full {}",
                expanded.len(),
                full_eig.values.len()
            ));
        } else {
            for (r, f) in expanded.iter().zip(&full_eig.values) {
                max_dev = max_dev.max((r - f).abs());
            }
            if max_dev > tol {
                let (worst, _) = expanded
                    .iter()
                    .zip(&full_eig.values)
                    .map(|(r, f)| (*f, (r - f).abs()))
                    .max_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
                    .unwrap();
                message = Some(format!(
                    "eigenvalue deviation {max_dev:.3e} beyond {tol:.1e} near {worst:.12}"
                ));
            }
        }

        // degeneracy pattern: cluster full eigenvalues, count reduced
        // multiplicity falling inside each cluster
        let mut clusters = Vec::new();
        let vals = &full_eig.values;
        let mut start = 0;
        while start < vals.len() {
            let mut end = start + 1;
            while end < vals.len() && vals[end] - vals[end - 1] <= gap {
                end += 1;
            }
            let lo = vals[start] - gap;
            let hi = vals[end - 1] + gap;
            let mult: u128 = reduced
                .entries
                .iter()
                .filter(|e| e.frequency >= lo && e.frequency <= hi)
                .map(|e| e.multiplicity)
                .sum();
            clusters.push((vals[start], end - start, mult));
            if mult != (end - start) as u128 && message.is_none() {
                message = Some(format!(
                    "degeneracy mismatch near {:.12}: full count {} vs reduced multiplicity {}",
                    vals[start],
                    end - start,
                    mult
                ));
            }
            start = end;
        }

        let pass = message.is_none();
        manifolds.push(ManifoldCertification {
            manifold: m.as_u8(),
            dim: full.basis.dim(),
            max_deviation: max_dev,
            clusters,
            pass,
            message,
        });
    }
    let pass = manifolds.iter().all(|m| m.pass);
    Ok(CertificationReport {
        n: p.n_emitters(),
        model: p.model(),
        manifolds,
        pass,
    })
}

/// Summary of a seeded certification sweep.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GridCertification {
    pub n_max: u64,
    pub draws: u32,
    pub seed: u64,
    /// One row per (N, model): model name, N, worst deviation, pass.
    pub rows: Vec<GridRow>,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GridRow {
    pub n: u64,
    pub model: String,
    pub max_deviation: f64,
    pub pass: bool,
    pub failure: Option<String>,
}

/// Model set exercised by certification sweeps.
pub fn certification_models() -> Vec<(String, EmitterModel)> {
    vec![
        ("tc".into(), EmitterModel::TavisCummings),
        ("ho".into(), EmitterModel::Harmonic),
        (
            "morse(0.05)".into(),
            build_morse_model(0.05).expect("chi in domain"),
        ),
        (
            "morse(0.3)".into(),
            build_morse_model(0.3).expect("chi in domain"),
        ),
    ]
}

/// Runs `certify` over N in `1..=n_max`, the standard model set and `draws`
/// seeded random parameter draws each. Draws whose spectra have ambiguous
/// cluster separation are rejected and redrawn.
pub fn certify_grid(n_max: u64, draws: u32, seed: u64) -> Result<GridCertification> {
    if n_max > CERTIFY_CAP {
        return Err(Error::Capacity(format!(
            "certification is capped at N = {CERTIFY_CAP}, got n_max = {n_max}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = Vec::new();
    for n in 1..=n_max {
        for (name, model) in certification_models() {
            let mut worst = 0.0_f64;
            let mut failure = None;
            for _ in 0..draws {
                let report = loop {
                    let detuning = rng.gen_range(-0.3..0.3);
                    let collective = rng.gen_range(0.01..0.2);
                    let p =
                        SystemParams::with_collective_g(n, 1.0 + detuning, 1.0, collective, model)?;
                    let rep = certify(&p)?;
                    if clusters_well_separated(&rep) {
                        break rep;
                    }
                };
                for m in &report.manifolds {
                    worst = worst.max(m.max_deviation);
                    if !m.pass && failure.is_none() {
                        failure = m.message.clone();
                    }
                }
            }
            rows.push(GridRow {
                n,
                model: name,
                max_deviation: worst,
                pass: failure.is_none(),
                failure,
            });
        }
    }
    let pass = rows.iter().all(|r| r.pass);
    Ok(GridCertification {
        n_max,
        draws,
        seed,
        rows,
        pass,
    })
}

fn clusters_well_separated(rep: &CertificationReport) -> bool {
    rep.manifolds.iter().all(|m| {
        m.clusters
            .windows(2)
            .all(|w| (w[1].0 - w[0].0).abs() >= REDRAW_GAP)
    })
}
