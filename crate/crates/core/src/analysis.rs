//! Parameter sweeps with adiabatic eigenstate tracking, TC-vs-harmonic
//! convergence curves, and location of the avoided crossings where two-photon
//! absorption is enhanced.
//!
//! Grid points are independent computations (safe to evaluate in parallel);
//! label tracking is a sequential pass over consecutive points.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::dot;
use crate::manifolds::{
    build_blocks_m2, reference_states, solve_block, solve_manifold, Irrep, LabeledSpectrum,
    Manifold, SpectrumEntry, StateLabel,
};
use crate::params::{build_morse_model, EmitterModel, SystemParams};

/// Swept variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SweepVariable {
    /// Emitter count N (grid values rounded to the nearest integer).
    Emitters,
    /// Detuning `omega_cav - omega_10`.
    Detuning,
    /// Morse anharmonicity chi (gamma follows the Morse relation).
    Anharmonicity,
}

/// How the coupling behaves while N changes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CouplingMode {
    /// Keep `sqrt(N) g` fixed (the collective convention used by the energy
    /// spectrum figures).
    FixedCollective,
    /// Keep the per-emitter `g` fixed.
    FixedPerEmitter,
}

/// Sweep definition: variable, inclusive range, grid and base parameters.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepSpec {
    pub variable: SweepVariable,
    pub from: f64,
    pub to: f64,
    pub points: usize,
    pub log: bool,
    pub base: SystemParams,
    pub coupling_mode: CouplingMode,
    pub manifold: u8,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if self.points < 2 {
            return Err(Error::InvalidParams(
                "a sweep needs at least 2 points".into(),
            ));
        }
        if !(self.from.is_finite() && self.to.is_finite()) || self.from == self.to {
            return Err(Error::InvalidParams(
                "sweep range must be finite and non-empty".into(),
            ));
        }
        if self.log && (self.from <= 0.0 || self.to <= 0.0) {
            return Err(Error::InvalidParams(
                "log grids need positive endpoints".into(),
            ));
        }
        match self.variable {
            SweepVariable::Emitters => {
                if self.from < 1.0 || self.to < 1.0 {
                    return Err(Error::InvalidParams("emitter sweeps need N >= 1".into()));
                }
            }
            SweepVariable::Anharmonicity => {
                if self.from < 0.0 || self.to >= 4.0 {
                    return Err(Error::InvalidParams(
                        "anharmonicity sweeps live in 0 <= chi < 4".into(),
                    ));
                }
            }
            SweepVariable::Detuning => {}
        }
        Manifold::from_u8(self.manifold)?;
        Ok(())
    }

    /// Grid values, linear or geometric, endpoints included.
    pub fn grid(&self) -> Vec<f64> {
        let k = self.points;
        (0..k)
            .map(|i| {
                let t = i as f64 / (k - 1) as f64;
                if self.log {
                    (self.from.ln() + t * (self.to.ln() - self.from.ln())).exp()
                } else {
                    self.from + t * (self.to - self.from)
                }
            })
            .collect()
    }

    /// Parameters at one grid value.
    pub fn params_at(&self, value: f64) -> Result<SystemParams> {
        match self.variable {
            SweepVariable::Emitters => {
                let n = value.round().max(1.0) as u64;
                match self.coupling_mode {
                    CouplingMode::FixedCollective => self.base.with_n_fixed_collective(n),
                    CouplingMode::FixedPerEmitter => self.base.with_n(n),
                }
            }
            SweepVariable::Detuning => SystemParams::new(
                self.base.n_emitters(),
                self.base.omega_10() + value,
                self.base.omega_10(),
                self.base.g(),
                self.base.model(),
            ),
            SweepVariable::Anharmonicity => Ok(self.base.with_model(build_morse_model(value)?)),
        }
    }
}

/// Tracking ambiguity recorded during a sweep.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepWarning {
    pub point: usize,
    pub irrep: Irrep,
    pub detail: String,
}

/// One evaluated grid point.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepPoint {
    pub value: f64,
    pub spectrum: LabeledSpectrum,
}

/// Sweep output with continuity-tracked labels.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepResult {
    pub spec: SweepSpec,
    pub points: Vec<SweepPoint>,
    pub warnings: Vec<SweepWarning>,
}

impl SweepResult {
    /// Frequency curve of one tracked state.
    pub fn frequency_curve(&self, label: StateLabel) -> Vec<(f64, f64)> {
        self.points
            .iter()
            .filter_map(|pt| pt.spectrum.find(label).map(|e| (pt.value, e.frequency)))
            .collect()
    }

    /// Photon-content curve of one tracked state.
    pub fn photon_curve(&self, label: StateLabel) -> Vec<(f64, f64)> {
        self.points
            .iter()
            .filter_map(|pt| {
                pt.spectrum
                    .find(label)
                    .map(|e| (pt.value, e.photon_content))
            })
            .collect()
    }
}

/// Evaluates the spectrum over the grid, carrying adiabatic labels by
/// maximum overlap with the previous point's eigenvectors within each block.
/// The first point (and any point whose block dimensions changed) is labeled
/// against the analytic harmonic references.
pub fn run_sweep(spec: &SweepSpec) -> Result<SweepResult> {
    spec.validate()?;
    let manifold = Manifold::from_u8(spec.manifold)?;
    let mut points: Vec<SweepPoint> = Vec::with_capacity(spec.points);
    let mut warnings = Vec::new();
    for (pi, value) in spec.grid().into_iter().enumerate() {
        let p = spec.params_at(value)?;
        let mut spectrum = solve_manifold(&p, manifold)?;
        if let Some(prev) = points.last() {
            retrack_labels(&mut spectrum, &prev.spectrum, pi, &mut warnings);
        }
        points.push(SweepPoint { value, spectrum });
    }
    Ok(SweepResult {
        spec: spec.clone(),
        points,
        warnings,
    })
}

/// Overlap difference below which a tracking assignment is ambiguous.
const TRACKING_AMBIGUITY: f64 = 1e-6;

/// Relabels `current` entries by maximal overlap with same-irrep entries of
/// `previous`, falling back to the harmonic-reference labels (already in
/// place) when block dimensions differ.
fn retrack_labels(
    current: &mut LabeledSpectrum,
    previous: &LabeledSpectrum,
    point: usize,
    warnings: &mut Vec<SweepWarning>,
) {
    for irrep in [Irrep::A, Irrep::B, Irrep::C] {
        let prev: Vec<&SpectrumEntry> = previous
            .entries
            .iter()
            .filter(|e| e.irrep == irrep)
            .collect();
        let cur_idx: Vec<usize> = current
            .entries
            .iter()
            .enumerate()
            .filter(|(_, e)| e.irrep == irrep)
            .map(|(i, _)| i)
            .collect();
        if prev.is_empty() || cur_idx.is_empty() {
            continue;
        }
        if prev.len() != cur_idx.len()
            || prev[0].eigenvector.len() != current.entries[cur_idx[0]].eigenvector.len()
        {
            // dimension change (e.g. an N sweep crossing N = 2, 3, 4):
            // reference labels stand
            continue;
        }
        // overlap pairs sorted by magnitude, tie-broken by frequency
        let mut pairs: Vec<(f64, f64, usize, usize)> = Vec::new();
        for (qi, q) in prev.iter().enumerate() {
            for &ci in &cur_idx {
                let e = &current.entries[ci];
                let ov = dot(&q.eigenvector, &e.eigenvector).abs();
                pairs.push(((q.frequency - e.frequency).abs(), ov, qi, ci));
            }
        }
        pairs.sort_by(|a, b| match b.1.partial_cmp(&a.1).unwrap() {
            std::cmp::Ordering::Equal => a.0.partial_cmp(&b.0).unwrap(),
            other => other,
        });
        let mut taken_prev = vec![false; prev.len()];
        let mut assigned: Vec<Option<usize>> = vec![None; current.entries.len()];
        for (fdist, ov, qi, ci) in &pairs {
            if taken_prev[*qi] || assigned[*ci].is_some() {
                continue;
            }
            // ambiguity: another free previous entry matches this vector
            // almost as well
            if let Some((_, ov2, _, _)) = pairs
                .iter()
                .find(|(_, _, qj, cj)| cj == ci && !taken_prev[*qj] && qj != qi)
            {
                if (ov - ov2).abs() < TRACKING_AMBIGUITY {
                    warnings.push(SweepWarning {
                        point,
                        irrep,
                        detail: format!(
                            "overlap tie {ov:.9} vs {ov2:.9} resolved by frequency \
                             proximity {fdist:.3e}"
                        ),
                    });
                }
            }
            taken_prev[*qi] = true;
            assigned[*ci] = Some(*qi);
        }
        for &ci in &cur_idx {
            if let Some(qi) = assigned[ci] {
                current.entries[ci].label = prev[qi].label;
                // keep sign continuity along the sweep
                if dot(&prev[qi].eigenvector, &current.entries[ci].eigenvector) < 0.0 {
                    for c in current.entries[ci].eigenvector.iter_mut() {
                        *c = -*c;
                    }
                }
            }
        }
    }
}

/// Per-state |TC - harmonic| eigenfrequency gap across emitter counts, at
/// fixed detuning and fixed collective coupling.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GapCurve {
    pub label: StateLabel,
    /// (N, |omega_TC - omega_HO|) pairs.
    pub gaps: Vec<(u64, f64)>,
}

/// TC-vs-harmonic eigenfrequency convergence for the states both models
/// share.
pub fn tc_ho_gap(ns: &[u64], base: &SystemParams) -> Result<Vec<GapCurve>> {
    let labels = [
        StateLabel::TwoPlus,
        StateLabel::OnePlusOneMinus,
        StateLabel::TwoMinus,
        StateLabel::OnePlusOneB,
        StateLabel::OneMinusOneB,
    ];
    let mut curves: Vec<GapCurve> = labels
        .iter()
        .map(|&label| GapCurve {
            label,
            gaps: vec![],
        })
        .collect();
    for &n in ns {
        let p = base.with_n_fixed_collective(n)?;
        let tc = solve_manifold(&p.with_model(EmitterModel::TavisCummings), Manifold::Two)?;
        let ho = solve_manifold(&p.with_model(EmitterModel::Harmonic), Manifold::Two)?;
        for curve in curves.iter_mut() {
            if let (Some(t), Some(h)) = (tc.find(curve.label), ho.find(curve.label)) {
                curve.gaps.push((n, (t.frequency - h.frequency).abs()));
            }
        }
    }
    Ok(curves)
}

/// Least-squares slope of `ln(y)` against `ln(x)`.
pub fn log_log_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let (mut sx, mut sy, mut sxx, mut sxy) = (0.0, 0.0, 0.0, 0.0);
    for &(x, y) in points {
        let (lx, ly) = (x.ln(), y.ln());
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    (n * sxy - sx * sy) / (n * sxx - sx * sx)
}

/// Kind of two-photon-absorption resonance located by `find_crossing`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ResonanceKind {
    /// `omega_{2-} = 2 omega_10 - chi omega_10`: the Rabi splitting matches
    /// the anharmonic shift.
    RabiChiMatching,
    /// `omega_{1+1-} = 2 omega_10 - chi omega_10`, available only at
    /// negative detuning.
    NegativeDetuningBipolariton,
}

/// An avoided crossing between two adiabatic branches of the A block.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CrossingReport {
    pub found: bool,
    pub branches: (StateLabel, StateLabel),
    pub kind: ResonanceKind,
    /// Swept-variable value at the gap minimum.
    pub location: Option<f64>,
    pub min_gap: Option<f64>,
}

/// Relative resolution of the swept variable in the golden-section
/// refinement.
const CROSSING_RESOLUTION: f64 = 1e-5;

/// Energies of the two diabatic branches at one chi, by assignment of the
/// (chi-independent) harmonic references onto the anharmonic eigenvectors.
fn branch_energies(
    spec: &SweepSpec,
    chi: f64,
    refs: &[(StateLabel, Vec<f64>)],
) -> Result<(f64, f64)> {
    let p = spec.params_at(chi)?;
    let block = build_blocks_m2(&p)
        .into_iter()
        .find(|b| b.irrep == Irrep::A)
        .expect("A block always exists");
    let entries = solve_block(&p, &block)?;
    // assignment of the two references among the block eigenvectors
    let mut best: Vec<(f64, usize, usize)> = Vec::new();
    for (ri, (_, rv)) in refs.iter().enumerate() {
        for (ei, e) in entries.iter().enumerate() {
            best.push((dot(rv, &e.eigenvector).abs(), ri, ei));
        }
    }
    best.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap());
    let mut energy = [f64::NAN; 2];
    let mut used = vec![false; entries.len()];
    for (_, ri, ei) in best {
        if !energy[ri].is_nan() || used[ei] {
            continue;
        }
        energy[ri] = entries[ei].frequency;
        used[ei] = true;
    }
    Ok((energy[0], energy[1]))
}

/// Locates the minimum gap between two adiabatic branches over a Morse
/// anharmonicity sweep: grid bracketing followed by golden-section
/// refinement. A missing interior bracket yields `found: false`.
pub fn find_crossing(spec: &SweepSpec, pair: (StateLabel, StateLabel)) -> Result<CrossingReport> {
    if spec.variable != SweepVariable::Anharmonicity {
        return Err(Error::InvalidParams(
            "crossing location sweeps the Morse anharmonicity".into(),
        ));
    }
    spec.validate()?;
    let kind = if pair.0 == StateLabel::OnePlusOneMinus || pair.1 == StateLabel::OnePlusOneMinus {
        ResonanceKind::NegativeDetuningBipolariton
    } else {
        ResonanceKind::RabiChiMatching
    };

    // chi-independent diabatic references from the harmonic block
    let p_harm = spec.base.with_model(EmitterModel::Harmonic);
    let block = build_blocks_m2(&p_harm)
        .into_iter()
        .find(|b| b.irrep == Irrep::A)
        .expect("A block always exists");
    let refs_all = reference_states(&p_harm, &block);
    let mut refs = Vec::new();
    for want in [pair.0, pair.1] {
        match refs_all.iter().find(|r| r.label == want) {
            Some(r) => refs.push((r.label, r.vector.clone())),
            None => {
                return Err(Error::InvalidParams(format!(
                    "branch {want:?} does not exist for these parameters"
                )))
            }
        }
    }

    let grid = spec.grid();
    let gaps: Vec<f64> = grid
        .iter()
        .map(|&chi| {
            let (ea, eb) = branch_energies(spec, chi, &refs)?;
            Ok((ea - eb).abs())
        })
        .collect::<Result<_>>()?;

    // interior local minimum
    let mut bracket = None;
    for i in 1..gaps.len() - 1 {
        if gaps[i] <= gaps[i - 1] && gaps[i] <= gaps[i + 1] {
            bracket = Some(i);
            break;
        }
    }
    let Some(i) = bracket else {
        return Ok(CrossingReport {
            found: false,
            branches: pair,
            kind,
            location: None,
            min_gap: None,
        });
    };

    // golden-section refinement of the continuous gap function
    let gap_at = |chi: f64| -> Result<f64> {
        let (ea, eb) = branch_energies(spec, chi, &refs)?;
        Ok((ea - eb).abs())
    };
    let (mut a, mut b) = (grid[i - 1], grid[i + 1]);
    let inv_phi = 0.5 * (5.0_f64.sqrt() - 1.0);
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (gap_at(c)?, gap_at(d)?);
    while (b - a) > CROSSING_RESOLUTION * b.abs().max(1e-12) {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = gap_at(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = gap_at(d)?;
        }
    }
    let location = 0.5 * (a + b);
    let min_gap = gap_at(location)?;
    Ok(CrossingReport {
        found: true,
        branches: pair,
        kind,
        location: Some(location),
        min_gap: Some(min_gap),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base(n: u64, w0: f64, cg: f64, model: EmitterModel) -> SystemParams {
        SystemParams::with_collective_g(n, w0, 1.0, cg, model).unwrap()
    }

    fn chi_spec(base_p: SystemParams, from: f64, to: f64, points: usize) -> SweepSpec {
        SweepSpec {
            variable: SweepVariable::Anharmonicity,
            from,
            to,
            points,
            log: false,
            base: base_p,
            coupling_mode: CouplingMode::FixedCollective,
            manifold: 2,
        }
    }

    #[test]
    fn spec_validation() {
        let p = base(4, 1.0, 0.07, EmitterModel::Harmonic);
        let mut s = chi_spec(p, 0.01, 0.3, 10);
        s.points = 1;
        assert!(s.validate().is_err());
        s.points = 10;
        s.to = s.from;
        assert!(s.validate().is_err());
        let s2 = SweepSpec {
            variable: SweepVariable::Emitters,
            from: 0.2,
            to: 10.0,
            points: 5,
            log: false,
            base: p,
            coupling_mode: CouplingMode::FixedCollective,
            manifold: 2,
        };
        assert!(s2.validate().is_err());
    }

    #[test]
    fn params_at_honors_variable_and_coupling_mode() {
        let b = base(100, 1.05, 0.07, EmitterModel::Harmonic);
        let mut spec = chi_spec(b, 0.01, 0.3, 5);
        // anharmonicity: model follows the Morse curve
        let p = spec.params_at(0.2).unwrap();
        match p.model() {
            EmitterModel::Anharmonic { chi, gamma } => {
                assert_eq!(chi, 0.2);
                assert_eq!(gamma, crate::params::morse_gamma(0.2).unwrap());
            }
            other => panic!("expected anharmonic, got {other:?}"),
        }
        // detuning: omega_cav moves, omega_10 stays
        spec.variable = SweepVariable::Detuning;
        let p = spec.params_at(-0.08).unwrap();
        assert!((p.omega_cav() - 0.92).abs() < 1e-15);
        assert_eq!(p.omega_10(), 1.0);
        // emitters, collective convention: sqrt(N) g fixed
        spec.variable = SweepVariable::Emitters;
        let p = spec.params_at(400.0).unwrap();
        assert_eq!(p.n_emitters(), 400);
        assert!((p.collective_g() - 0.07).abs() < 1e-15);
        // emitters, per-emitter convention: g fixed
        spec.coupling_mode = CouplingMode::FixedPerEmitter;
        let p = spec.params_at(400.0).unwrap();
        assert_eq!(p.g(), spec.base.g());
    }

    #[test]
    fn dark_states_dispersionless_under_detuning() {
        // HO model: 2_DA and 2_DB stay at exactly 2 omega_10 across detuning
        let spec = SweepSpec {
            variable: SweepVariable::Detuning,
            from: -0.1,
            to: 0.1,
            points: 21,
            log: false,
            base: base(50, 1.0, 0.07, EmitterModel::Harmonic),
            coupling_mode: CouplingMode::FixedCollective,
            manifold: 2,
        };
        let result = run_sweep(&spec).unwrap();
        for label in [StateLabel::TwoDarkA, StateLabel::TwoDarkB] {
            let curve = result.frequency_curve(label);
            assert_eq!(curve.len(), 21);
            for (_, f) in curve {
                assert!((f - 2.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn chi_sweep_starts_harmonic() {
        let spec = chi_spec(base(9, 1.0, 0.07, EmitterModel::Harmonic), 0.0, 0.2, 11);
        let result = run_sweep(&spec).unwrap();
        let first = &result.points[0].spectrum;
        let ho = solve_manifold(
            &base(
                9,
                1.0,
                0.07,
                EmitterModel::Anharmonic {
                    chi: 0.0,
                    gamma: 0.0,
                },
            ),
            Manifold::Two,
        )
        .unwrap();
        for (a, b) in first.entries.iter().zip(&ho.entries) {
            assert_eq!(a.frequency, b.frequency);
        }
    }

    #[test]
    fn reverse_sweep_same_labels() {
        // range kept clear of the avoided crossings: the B-block exchange
        // sits at chi = (rabi - detuning)/2 ~ 0.049, the A-block one at
        // chi = rabi - detuning ~ 0.099 for these parameters
        let fwd = chi_spec(
            base(1000, 1.05, 0.07, EmitterModel::Harmonic),
            0.005,
            0.04,
            60,
        );
        let mut bwd = fwd.clone();
        std::mem::swap(&mut bwd.from, &mut bwd.to);
        let rf = run_sweep(&fwd).unwrap();
        let rb = run_sweep(&bwd).unwrap();
        assert!(rf.warnings.is_empty(), "{:?}", rf.warnings);
        for (pf, pb) in rf.points.iter().zip(rb.points.iter().rev()) {
            assert!((pf.value - pb.value).abs() < 1e-12);
            for (ef, eb) in pf.spectrum.entries.iter().zip(&pb.spectrum.entries) {
                assert_eq!(ef.label, eb.label, "at chi = {}", pf.value);
            }
        }
    }

    #[test]
    fn a_block_photon_trace_constant() {
        // sum of photon contents over A-block states = 2 + 1 + 0 + 0 = 3 (HO)
        for w0 in [0.9, 1.0, 1.12] {
            let p = base(17, w0, 0.07, EmitterModel::Harmonic);
            let s = solve_manifold(&p, Manifold::Two).unwrap();
            let total: f64 = s
                .entries
                .iter()
                .filter(|e| e.irrep == Irrep::A)
                .map(|e| e.photon_content)
                .sum();
            assert!(
                (total - 3.0).abs() < 1e-10,
                "trace {total} at detuning {w0}"
            );
        }
    }

    #[test]
    fn tc_ho_gap_converges() {
        let b = base(1, 1.0, 0.07, EmitterModel::Harmonic);
        let ns = [1u64, 10, 100, 1000];
        let curves = tc_ho_gap(&ns, &b).unwrap();
        let tm = curves
            .iter()
            .find(|c| c.label == StateLabel::TwoMinus)
            .unwrap();
        // N = 1 included only where the label exists in both models; gaps
        // shrink monotonically with N
        let gaps: Vec<f64> = tm.gaps.iter().map(|(_, g)| *g).collect();
        for w in gaps.windows(2) {
            assert!(w[1] < w[0]);
        }
    }

    #[test]
    fn tc_ho_slope_is_minus_one() {
        let b = base(1, 1.0, 0.07, EmitterModel::Harmonic);
        let ns = [100u64, 1000, 10_000, 100_000, 1_000_000];
        let curves = tc_ho_gap(&ns, &b).unwrap();
        let tm = curves
            .iter()
            .find(|c| c.label == StateLabel::TwoMinus)
            .unwrap();
        let pts: Vec<(f64, f64)> = tm.gaps.iter().map(|&(n, g)| (n as f64, g)).collect();
        let slope = log_log_slope(&pts);
        assert!((slope + 1.0).abs() < 0.05, "slope {slope}");
    }

    #[test]
    fn resonant_crossing_at_chi_equals_rabi() {
        // Delta = 0, rabi = 0.14: single (2_DA, 2-) crossing at chi = 0.14
        let b = base(1_000_000, 1.0, 0.07, EmitterModel::Harmonic);
        let spec = chi_spec(b, 0.02, 0.35, 100);
        let rep = find_crossing(&spec, (StateLabel::TwoDarkA, StateLabel::TwoMinus)).unwrap();
        assert!(rep.found);
        let loc = rep.location.unwrap();
        assert!((loc - 0.14).abs() < 0.05 * 0.14, "location {loc}");
        assert!(rep.min_gap.unwrap() > 0.0);
        assert_eq!(rep.kind, ResonanceKind::RabiChiMatching);
        // the 1+1- pairing has no interior bracket at resonance
        let rep2 =
            find_crossing(&spec, (StateLabel::TwoDarkA, StateLabel::OnePlusOneMinus)).unwrap();
        assert!(!rep2.found);
    }

    #[test]
    fn negative_detuning_two_crossings() {
        let b = base(1_000_000, 0.95, 0.07, EmitterModel::Harmonic);
        let rabi = b.derive().rabi;
        let spec = chi_spec(b, 0.005, 0.35, 120);
        let r1 = find_crossing(&spec, (StateLabel::TwoDarkA, StateLabel::OnePlusOneMinus)).unwrap();
        assert!(r1.found);
        assert!((r1.location.unwrap() - 0.05).abs() < 0.05 * 0.05);
        assert_eq!(r1.kind, ResonanceKind::NegativeDetuningBipolariton);
        let r2 = find_crossing(&spec, (StateLabel::TwoDarkA, StateLabel::TwoMinus)).unwrap();
        assert!(r2.found);
        let expect = 0.05 + rabi;
        assert!(
            (r2.location.unwrap() - expect).abs() < 0.05 * expect,
            "location {} vs {}",
            r2.location.unwrap(),
            expect
        );
    }

    #[test]
    fn crossing_gap_shrinks_with_n() {
        let mut last = f64::INFINITY;
        for n in [10_000u64, 1_000_000, 100_000_000] {
            let b = base(n, 1.0, 0.07, EmitterModel::Harmonic);
            let spec = chi_spec(b, 0.05, 0.3, 60);
            let rep = find_crossing(&spec, (StateLabel::TwoDarkA, StateLabel::TwoMinus)).unwrap();
            let gap = rep.min_gap.unwrap();
            assert!(gap < last, "gap {gap} did not shrink at N = {n}");
            last = gap;
        }
    }

    #[test]
    fn emitter_sweep_handles_dimension_changes() {
        let spec = SweepSpec {
            variable: SweepVariable::Emitters,
            from: 1.0,
            to: 1e10,
            points: 21,
            log: true,
            base: base(1, 1.0, 0.07, EmitterModel::Harmonic),
            coupling_mode: CouplingMode::FixedCollective,
            manifold: 2,
        };
        let result = run_sweep(&spec).unwrap();
        assert_eq!(result.points.len(), 21);
        // the purely molecular states sit at exactly 2 omega_10 wherever
        // they exist, over ten decades of N
        for label in [StateLabel::TwoDarkA, StateLabel::TwoDarkB] {
            for (_, f) in result.frequency_curve(label) {
                assert!((f - 2.0).abs() < 1e-12);
            }
        }
    }
}
