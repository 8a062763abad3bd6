//! Symmetry-adapted basis coefficients (Fourier and Schur-Weyl flavors) for
//! one and two excitations, and explicit verification of the SU(2)/SU(3)
//! labels of the symmetrized states at small N.
//!
//! Dark-state coefficients `c_n^(k)` satisfy a zero-sum and orthonormality
//! condition but the basis choice within the degenerate subspace is free; the
//! two standard choices are the Fourier basis (plane waves over emitter
//! index) and the Schur-Weyl basis (integer patterns).

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::oracle::{self, ConfigSpace};

/// Basis flavor within the degenerate dark subspaces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Flavor {
    Fourier,
    SchurWeyl,
}

/// Single-excitation dark-state coefficients `c_n^(k)`, `k` in `2..=N`.
#[derive(Debug, Clone)]
pub struct CoefficientSet1 {
    pub n: usize,
    pub k: usize,
    pub flavor: Flavor,
    pub c: Vec<Complex64>,
}

/// Two-excitation standard-irrep coefficients `c_mn^(k)` over pairs `m < n`.
#[derive(Debug, Clone)]
pub struct CoefficientSet2B {
    pub n: usize,
    pub k: usize,
    pub flavor: Flavor,
    /// `(m, n)` pairs with `1 <= m < n <= N`, lexicographic, 1-based.
    pub c: Vec<((usize, usize), Complex64)>,
}

/// Two-excitation C-irrep coefficients `c_mn^(k,l)`.
#[derive(Debug, Clone)]
pub struct CoefficientSet2C {
    pub n: usize,
    pub k: usize,
    pub l: usize,
    pub flavor: Flavor,
    pub c: Vec<((usize, usize), Complex64)>,
}

/// Lexicographic pair list `(m, n)`, `1 <= m < n <= N`.
pub fn pair_list(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(n * (n - 1) / 2);
    for m in 1..n {
        for nn in (m + 1)..=n {
            out.push((m, nn));
        }
    }
    out
}

/// Valid C-irrep labels `(k, l)`: `2 <= k < l <= N` with `l >= 4`; exactly
/// `N(N-3)/2` of them.
pub fn c_pair_labels(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for l in 4..=n {
        for k in 2..l {
            out.push((k, l));
        }
    }
    out
}

/// Schur-Weyl integer pattern `alpha_n^(k)`.
fn sw_alpha1(n: usize, k: usize, idx: usize) -> f64 {
    debug_assert!(idx >= 1 && idx <= n);
    if idx < k {
        -1.0
    } else if idx == k {
        (k - 1) as f64
    } else {
        0.0
    }
}

/// Single-excitation dark-state coefficients.
pub fn coeffs1(n: usize, k: usize, flavor: Flavor) -> Result<CoefficientSet1> {
    if n < 2 {
        return Err(Error::Unsupported(format!(
            "dark states require N >= 2, got N = {n}"
        )));
    }
    if !(2..=n).contains(&k) {
        return Err(Error::IndexRange(format!(
            "k must lie in 2..=N = 2..={n}, got {k}"
        )));
    }
    let c = match flavor {
        Flavor::Fourier => {
            let norm = 1.0 / (n as f64).sqrt();
            (1..=n)
                .map(|m| {
                    let phase = 2.0 * std::f64::consts::PI * ((k - 1) * m) as f64 / n as f64;
                    Complex64::from_polar(norm, phase)
                })
                .collect()
        }
        Flavor::SchurWeyl => {
            let norm = 1.0 / ((k * (k - 1)) as f64).sqrt();
            (1..=n)
                .map(|m| Complex64::new(sw_alpha1(n, k, m) * norm, 0.0))
                .collect()
        }
    };
    Ok(CoefficientSet1 { n, k, flavor, c })
}

/// Two-excitation standard-irrep coefficients
/// `c_mn^(k) = (c_m^(k) + c_n^(k)) / sqrt(N - 2)`.
///
/// Both the constructive form above and the closed forms (cosine
/// modulation for Fourier, `alpha_mn` pattern for Schur-Weyl) are evaluated;
/// they agree identically.
pub fn coeffs2b(n: usize, k: usize, flavor: Flavor) -> Result<CoefficientSet2B> {
    if n < 3 {
        return Err(Error::Unsupported(format!(
            "1_B^2 states do not exist for N = {n} (they require N >= 3)"
        )));
    }
    let ones = coeffs1(n, k, flavor)?;
    let root = ((n - 2) as f64).sqrt();
    let c = pair_list(n)
        .into_iter()
        .map(|(m, nn)| ((m, nn), (ones.c[m - 1] + ones.c[nn - 1]) / root))
        .collect();
    Ok(CoefficientSet2B { n, k, flavor, c })
}

/// Closed-form `c_mn^(k)` used to cross-check the constructive path.
pub fn coeffs2b_closed(n: usize, k: usize, flavor: Flavor) -> Result<CoefficientSet2B> {
    if n < 3 {
        return Err(Error::Unsupported(format!(
            "1_B^2 states do not exist for N = {n} (they require N >= 3)"
        )));
    }
    if !(2..=n).contains(&k) {
        return Err(Error::IndexRange(format!(
            "k must lie in 2..=N = 2..={n}, got {k}"
        )));
    }
    let c = pair_list(n)
        .into_iter()
        .map(|(m, nn)| {
            let v = match flavor {
                Flavor::Fourier => {
                    let nf = n as f64;
                    let arg_com = std::f64::consts::PI * ((k - 1) * (m + nn)) as f64 / nf;
                    let arg_rel =
                        std::f64::consts::PI * (k as f64 - 1.0) * (m as f64 - nn as f64) / nf;
                    Complex64::from_polar(2.0 * arg_rel.cos() / (nf * (nf - 2.0)).sqrt(), arg_com)
                }
                Flavor::SchurWeyl => {
                    let alpha = sw_alpha1(n, k, m) + sw_alpha1(n, k, nn);
                    Complex64::new(alpha / (((n - 2) * k * (k - 1)) as f64).sqrt(), 0.0)
                }
            };
            ((m, nn), v)
        })
        .collect();
    Ok(CoefficientSet2B { n, k, flavor, c })
}

/// Two-excitation C-irrep coefficients.
///
/// The Schur-Weyl construction covers any N >= 4; the Fourier flavor has a
/// closed form only for N = 4 (two members), where `(k, l)` must be one of
/// the valid labels `(2, 4)` or `(3, 4)`: the first maps to the
/// relative-wavenumber q in {0, 2} member, the second to the mixed one.
pub fn coeffs2c(n: usize, k: usize, l: usize, flavor: Flavor) -> Result<CoefficientSet2C> {
    if n < 4 {
        return Err(Error::Unsupported(format!(
            "1_C^2 states do not exist for N = {n} (they require N >= 4)"
        )));
    }
    if !c_pair_labels(n).contains(&(k, l)) {
        return Err(Error::IndexRange(format!(
            "(k, l) = ({k}, {l}) is not a valid C label for N = {n}"
        )));
    }
    let c: Vec<((usize, usize), Complex64)> = match flavor {
        Flavor::SchurWeyl => {
            let norm = ((k * (k - 1) * (l - 2) * (l - 3)) as f64).sqrt();
            pair_list(n)
                .into_iter()
                .map(|(m, nn)| {
                    let akm = sw_alpha1(n, k, m);
                    let akn = sw_alpha1(n, k, nn);
                    let alm = sw_alpha1(n, l, m);
                    let aln = sw_alpha1(n, l, nn);
                    let dml = if m == l { 1.0 } else { 0.0 };
                    let dnl = if nn == l { 1.0 } else { 0.0 };
                    let alpha = akm * aln + akn * alm - 2.0 * (akm * dnl + akn * dml);
                    ((m, nn), Complex64::new(-alpha / norm, 0.0))
                })
                .collect()
        }
        Flavor::Fourier => {
            if n != 4 {
                return Err(Error::Unsupported(
                    "the Fourier C-irrep construction has a closed form only for N = 4; \
                     use the Schur-Weyl flavor for general N"
                        .into(),
                ));
            }
            let member = if (k, l) == (2, 4) { 0 } else { 1 };
            pair_list(4)
                .into_iter()
                .map(|(m, nn)| {
                    let mf = m as f64;
                    let nf = nn as f64;
                    let rel = (std::f64::consts::PI * (mf - nf) / 2.0).cos();
                    let v = if member == 0 {
                        Complex64::from_polar(1.0, std::f64::consts::PI * (mf + nf))
                            * ((rel - 1.0) / (2.0 * 3.0_f64.sqrt()))
                    } else {
                        let e32 =
                            Complex64::from_polar(1.0, 1.5 * std::f64::consts::PI * (mf + nf));
                        let e12 =
                            Complex64::from_polar(1.0, 0.5 * std::f64::consts::PI * (mf + nf));
                        -0.5 * (e32 + e12 * rel)
                    };
                    ((m, nn), v)
                })
                .collect()
        }
    };
    Ok(CoefficientSet2C { n, k, l, flavor, c })
}

/// Totally symmetric pair coefficients of `|1_A^2>`:
/// `sqrt(2 / (N (N - 1)))` on every pair.
pub fn pair_a_coeffs(n: usize) -> Vec<((usize, usize), Complex64)> {
    let v = (2.0 / (n as f64 * (n as f64 - 1.0))).sqrt();
    pair_list(n)
        .into_iter()
        .map(|p| (p, Complex64::new(v, 0.0)))
        .collect()
}

/// Symmetrized molecular states whose SU(2)/SU(3) labels are tabulated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SymState {
    /// `|0>`
    Ground,
    /// `|1_A>`
    OneA,
    /// `|1_B(k)>`
    OneB(usize),
    /// `|1_A^2>`
    PairA,
    /// `|1_B(k)^2>`
    PairB(usize),
    /// `|1_C(k,l)^2>`
    PairC(usize, usize),
    /// `|2_A>`
    TwoA,
    /// `|2_B(k)>`
    TwoB(usize),
}

impl SymState {
    pub fn name(&self) -> String {
        match self {
            SymState::Ground => "0".into(),
            SymState::OneA => "1_A".into(),
            SymState::OneB(k) => format!("1_B({k})"),
            SymState::PairA => "1_A^2".into(),
            SymState::PairB(k) => format!("1_B({k})^2"),
            SymState::PairC(k, l) => format!("1_C({k},{l})^2"),
            SymState::TwoA => "2_A".into(),
            SymState::TwoB(k) => format!("2_B({k})"),
        }
    }

    /// Tabulated `(J, M_J, y)` for this state at emitter count `n`.
    pub fn expected_labels(&self, n: usize) -> (f64, f64, f64) {
        let nf = n as f64;
        match self {
            SymState::Ground => (nf / 2.0, -nf / 2.0, nf / 3.0),
            SymState::OneA => (nf / 2.0, 1.0 - nf / 2.0, nf / 3.0),
            SymState::OneB(_) => (nf / 2.0 - 1.0, 1.0 - nf / 2.0, nf / 3.0),
            SymState::PairA => (nf / 2.0, 2.0 - nf / 2.0, nf / 3.0),
            SymState::PairB(_) => (nf / 2.0 - 1.0, 2.0 - nf / 2.0, nf / 3.0),
            SymState::PairC(_, _) => (nf / 2.0 - 2.0, 2.0 - nf / 2.0, nf / 3.0),
            SymState::TwoA => ((nf - 1.0) / 2.0, (1.0 - nf) / 2.0, nf / 3.0 - 1.0),
            SymState::TwoB(_) => ((nf - 1.0) / 2.0, (1.0 - nf) / 2.0, nf / 3.0 - 1.0),
        }
    }
}

/// Result of verifying one symmetrized state against its tabulated labels.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SuLabelReport {
    pub state: String,
    /// Measured `(J(J+1), M_J, y)` Rayleigh quotients.
    pub measured: [f64; 3],
    /// Expected `(J(J+1), M_J, y)` from the tabulated `(J, M, y)`.
    pub expected: [f64; 3],
    /// Eigen-residual norms `|O v - <O> v|` per operator.
    pub residuals: [f64; 3],
    pub pass: bool,
}

const SU_LABEL_TOL: f64 = 1e-10;

/// Builds the symmetrized state as an explicit vector over the localized
/// emitter configuration space and measures `J^2`, `J_0` and the hypercharge
/// by direct operator action.
pub fn su_label_check(n: usize, state: SymState, flavor: Flavor) -> Result<SuLabelReport> {
    if n > 8 {
        return Err(Error::Capacity(format!(
            "explicit many-body vectors are capped at N = 8, got {n}"
        )));
    }
    if n < 1 {
        return Err(Error::InvalidParams("need at least one emitter".into()));
    }
    let space = ConfigSpace::new(n);
    let mut v = vec![Complex64::new(0.0, 0.0); space.dim()];

    let put_single = |coeffs: &[Complex64], level: u8, v: &mut [Complex64]| {
        for (i, c) in coeffs.iter().enumerate() {
            let mut cfg = vec![0u8; n];
            cfg[i] = level;
            v[space.index_of(&cfg)] += c;
        }
    };

    match state {
        SymState::Ground => {
            v[space.index_of(&vec![0u8; n])] = Complex64::new(1.0, 0.0);
        }
        SymState::OneA => {
            let c = vec![Complex64::new(1.0 / (n as f64).sqrt(), 0.0); n];
            put_single(&c, 1, &mut v);
        }
        SymState::OneB(k) => {
            let set = coeffs1(n, k, flavor)?;
            put_single(&set.c, 1, &mut v);
        }
        SymState::TwoA => {
            let c = vec![Complex64::new(1.0 / (n as f64).sqrt(), 0.0); n];
            put_single(&c, 2, &mut v);
        }
        SymState::TwoB(k) => {
            let set = coeffs1(n, k, flavor)?;
            put_single(&set.c, 2, &mut v);
        }
        SymState::PairA => {
            for ((m, nn), c) in pair_a_coeffs(n) {
                let mut cfg = vec![0u8; n];
                cfg[m - 1] = 1;
                cfg[nn - 1] = 1;
                v[space.index_of(&cfg)] += c;
            }
        }
        SymState::PairB(k) => {
            for ((m, nn), c) in coeffs2b(n, k, flavor)?.c {
                let mut cfg = vec![0u8; n];
                cfg[m - 1] = 1;
                cfg[nn - 1] = 1;
                v[space.index_of(&cfg)] += c;
            }
        }
        SymState::PairC(k, l) => {
            for ((m, nn), c) in coeffs2c(n, k, l, flavor)?.c {
                let mut cfg = vec![0u8; n];
                cfg[m - 1] = 1;
                cfg[nn - 1] = 1;
                v[space.index_of(&cfg)] += c;
            }
        }
    }

    let (jj, m, y) = state.expected_labels(n);
    let expected = [jj * (jj + 1.0), m, y];
    let mut measured = [0.0; 3];
    let mut residuals = [0.0; 3];
    for (slot, op) in [
        oracle::MatterOp::JSquared,
        oracle::MatterOp::JZero,
        oracle::MatterOp::Hypercharge,
    ]
    .into_iter()
    .enumerate()
    {
        let ov = oracle::apply_matter_operator(op, &v, &space);
        let quotient: Complex64 = v
            .iter()
            .zip(&ov)
            .map(|(a, b)| a.conj() * b)
            .sum::<Complex64>();
        measured[slot] = quotient.re;
        let res: f64 = ov
            .iter()
            .zip(&v)
            .map(|(o, vi)| (o - quotient.re * vi).norm_sqr())
            .sum::<f64>()
            .sqrt();
        residuals[slot] = res;
    }
    let pass = measured
        .iter()
        .zip(&expected)
        .all(|(m, e)| (m - e).abs() <= SU_LABEL_TOL)
        && residuals.iter().all(|r| *r <= SU_LABEL_TOL);
    Ok(SuLabelReport {
        state: state.name(),
        measured,
        expected,
        residuals,
        pass,
    })
}

/// All Table rows applicable at emitter count `n` (uses `k = 2`, and
/// `(k, l) = (2, 4)` for the C row).
pub fn su_label_rows(n: usize) -> Vec<SymState> {
    let mut rows = vec![SymState::Ground, SymState::OneA];
    if n >= 2 {
        rows.push(SymState::OneB(2));
        rows.push(SymState::PairA);
    }
    if n >= 3 {
        rows.push(SymState::PairB(2));
    }
    if n >= 4 {
        rows.push(SymState::PairC(2, 4));
    }
    rows.push(SymState::TwoA);
    if n >= 2 {
        rows.push(SymState::TwoB(2));
    }
    rows
}
