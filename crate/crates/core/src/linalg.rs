//! Dense symmetric matrices and a cyclic Jacobi eigensolver.
//!
//! Every Hamiltonian in this crate is real symmetric and small (reduced blocks
//! are at most 4x4, the brute-force oracle tops out at 66x66 for N = 10), so a
//! plain Jacobi iteration gives machine-precision spectra with no external
//! dependency and nothing to tune.

use crate::error::{Error, Result};

/// Row-major dense square matrix of `f64`.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix {
    n: usize,
    a: Vec<f64>,
}

impl SymMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            a: vec![0.0; n * n],
        }
    }

    /// Builds from explicit rows; rows must form a square matrix.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Contract("from_rows requires a square matrix".into()));
        }
        let mut a = Vec::with_capacity(n * n);
        for r in rows {
            a.extend_from_slice(r);
        }
        Ok(Self { n, a })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.a[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.a[i * self.n + j] = v;
    }

    /// Sets `(i, j)` and `(j, i)` to the same value.
    #[inline]
    pub fn set_sym(&mut self, i: usize, j: usize, v: f64) {
        self.set(i, j, v);
        self.set(j, i, v);
    }

    pub fn max_abs(&self) -> f64 {
        self.a.iter().fold(0.0_f64, |m, &v| m.max(v.abs()))
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    /// Largest absolute asymmetry `|a_ij - a_ji|`.
    pub fn asymmetry(&self) -> f64 {
        let mut worst = 0.0_f64;
        for i in 0..self.n {
            for j in 0..i {
                worst = worst.max((self.get(i, j) - self.get(j, i)).abs());
            }
        }
        worst
    }

    /// Matrix-vector product.
    pub fn mul_vec(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(v.len(), self.n);
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j) * v[j]).sum())
            .collect()
    }
}

/// Eigenvalues in ascending order with matching orthonormal eigenvectors.
#[derive(Debug, Clone)]
pub struct Eigen {
    pub values: Vec<f64>,
    /// `vectors[i]` is the eigenvector of `values[i]`.
    pub vectors: Vec<Vec<f64>>,
}

const MAX_SWEEPS: usize = 60;

/// Cyclic Jacobi diagonalization of a symmetric matrix.
///
/// Eigenvalues are returned ascending; each eigenvector has its first
/// component of magnitude above `1e-12` made positive. Rejects matrices whose
/// asymmetry exceeds `1e-12` times the largest entry.
pub fn eigh_jacobi(m: &SymMatrix) -> Result<Eigen> {
    let n = m.dim();
    let scale = m.max_abs();
    if m.asymmetry() > 1e-12 * scale.max(1e-300) {
        return Err(Error::Contract(format!(
            "eigh_jacobi requires a symmetric matrix (asymmetry {:.3e}, scale {:.3e})",
            m.asymmetry(),
            scale
        )));
    }
    if n == 0 {
        return Ok(Eigen {
            values: vec![],
            vectors: vec![],
        });
    }

    let mut a = m.clone();
    // eigenvector accumulator, v[i*n+j] = component i of column-vector j
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }

    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        let mut off = 0.0_f64;
        for p in 0..n {
            for q in (p + 1)..n {
                off += a.get(p, q).abs();
            }
        }
        if off <= f64::MIN_POSITIVE * n as f64 || off <= 1e-16 * scale.max(1e-300) {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a.get(p, q);
                if apq == 0.0 {
                    continue;
                }
                let app = a.get(p, p);
                let aqq = a.get(q, q);
                // skip rotations that cannot change anything at this precision
                if apq.abs() <= f64::EPSILON * 0.5 * (app.abs() + aqq.abs()).max(scale) * 1e-2 {
                    a.set_sym(p, q, 0.0);
                    continue;
                }
                let theta = 0.5 * (aqq - app) / apq;
                let t = if theta.abs() > 1e150 {
                    0.5 / theta
                } else {
                    let s = theta.signum();
                    s / (theta.abs() + (1.0 + theta * theta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let tau = s / (1.0 + c);
                let h = t * apq;

                a.set(p, p, app - h);
                a.set(q, q, aqq + h);
                a.set_sym(p, q, 0.0);
                for k in 0..n {
                    if k != p && k != q {
                        let akp = a.get(k, p);
                        let akq = a.get(k, q);
                        a.set_sym(k, p, akp - s * (akq + tau * akp));
                        a.set_sym(k, q, akq + s * (akp - tau * akq));
                    }
                }
                for k in 0..n {
                    let vkp = v[k * n + p];
                    let vkq = v[k * n + q];
                    v[k * n + p] = vkp - s * (vkq + tau * vkp);
                    v[k * n + q] = vkq + s * (vkp - tau * vkq);
                }
            }
        }
    }
    if !converged {
        return Err(Error::Contract(format!(
            "Jacobi iteration did not converge in {MAX_SWEEPS} sweeps (dim {n})"
        )));
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a.get(i, i).partial_cmp(&a.get(j, j)).unwrap());

    let values: Vec<f64> = order.iter().map(|&j| a.get(j, j)).collect();
    let vectors: Vec<Vec<f64>> = order
        .iter()
        .map(|&j| {
            let mut col: Vec<f64> = (0..n).map(|i| v[i * n + j]).collect();
            fix_sign(&mut col);
            col
        })
        .collect();
    Ok(Eigen { values, vectors })
}

/// First component with magnitude above 1e-12 made positive.
pub fn fix_sign(v: &mut [f64]) {
    if let Some(&lead) = v.iter().find(|c| c.abs() > 1e-12) {
        if lead < 0.0 {
            for c in v.iter_mut() {
                *c = -*c;
            }
        }
    }
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}
