//! Cyclic Jacobi diagonalization of dense symmetric matrices.
//!
//! Each sweep visits every off-diagonal pair `(p, q)` in row order and
//! annihilates it with a plane rotation, accumulating the rotations into the
//! eigenvector matrix. Rotations are skipped for entries below
//! `tol * ‖M‖_F / n`, so a sweep with no rotation certifies that the
//! off-diagonal Frobenius norm is at most `tol * ‖M‖_F`.

use crate::error::{Error, Result};
use crate::spectra::{Spectrum, SymmetricMatrix};

pub const DEFAULT_TOL: f64 = 1e-11;
pub const MAX_SWEEPS: usize = 100;

/// Eigendecomposition `M = V diag(values) Vᵀ`.
#[derive(Debug, Clone)]
pub struct Eigen {
    pub spectrum: Spectrum,
    /// Column-major `n × n`; column `k` is the unit eigenvector for
    /// `spectrum.values[k]`.
    vectors: Vec<f64>,
}

impl Eigen {
    pub fn n(&self) -> usize {
        self.spectrum.values.len()
    }

    pub fn values(&self) -> &[f64] {
        &self.spectrum.values
    }

    /// Eigenvector `k` (matching `values()[k]`).
    pub fn vector(&self, k: usize) -> &[f64] {
        let n = self.n();
        &self.vectors[k * n..(k + 1) * n]
    }

    /// Column-major eigenvector matrix, usable as a warm-start basis.
    pub fn basis(&self) -> &[f64] {
        &self.vectors
    }

    /// `Σ_k f(λ_k) v_k v_kᵀ`, skipping terms with `f(λ_k) == 0`.
    pub fn reconstruct_with(&self, f: impl Fn(f64) -> f64) -> SymmetricMatrix {
        let n = self.n();
        let mut data = vec![0.0; n * n];
        for (k, &lambda) in self.values().iter().enumerate() {
            let w = f(lambda);
            if w == 0.0 {
                continue;
            }
            let v = self.vector(k);
            for i in 0..n {
                let wi = w * v[i];
                if wi == 0.0 {
                    continue;
                }
                let row = &mut data[i * n..(i + 1) * n];
                for (r, vj) in row.iter_mut().zip(v) {
                    *r += wi * vj;
                }
            }
        }
        // symmetrize away rounding differences between (i, j) and (j, i)
        for i in 0..n {
            for j in i + 1..n {
                let avg = 0.5 * (data[i * n + j] + data[j * n + i]);
                data[i * n + j] = avg;
                data[j * n + i] = avg;
            }
        }
        SymmetricMatrix::from_raw(n, data)
    }

    pub fn reconstruct(&self) -> SymmetricMatrix {
        self.reconstruct_with(|x| x)
    }
}

/// Diagonalizes `m`. `tol` bounds the final off-diagonal Frobenius norm
/// relative to `‖m‖_F`.
pub fn eigen_sym(m: &SymmetricMatrix, tol: f64) -> Result<Eigen> {
    let n = m.n();
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    jacobi(m.as_slice().to_vec(), v, n, m.frobenius_norm(), tol)
}

/// Diagonalizes `m` starting from an orthonormal `basis` (column-major),
/// typically the eigenvectors of a nearby matrix. When the basis nearly
/// diagonalizes `m`, only one or two sweeps are needed.
pub fn eigen_sym_warm(m: &SymmetricMatrix, basis: &[f64], tol: f64) -> Result<Eigen> {
    let n = m.n();
    if basis.len() != n * n {
        return Err(Error::InvalidParameter("warm-start basis has wrong size".into()));
    }
    // a = Vᵀ M V, with V column-major: column k is basis[k*n..]
    let mut mv = vec![0.0; n * n]; // column-major M V
    for k in 0..n {
        let col = &basis[k * n..(k + 1) * n];
        for i in 0..n {
            mv[k * n + i] = m.row(i).iter().zip(col).map(|(a, b)| a * b).sum();
        }
    }
    let mut a = vec![0.0; n * n];
    for k in 0..n {
        for l in k..n {
            let x: f64 = basis[k * n..(k + 1) * n]
                .iter()
                .zip(&mv[l * n..(l + 1) * n])
                .map(|(a, b)| a * b)
                .sum();
            a[k * n + l] = x;
            a[l * n + k] = x;
        }
    }
    jacobi(a, basis.to_vec(), n, m.frobenius_norm(), tol)
}

/// `a` is row-major symmetric, `v` column-major.
fn jacobi(mut a: Vec<f64>, mut v: Vec<f64>, n: usize, norm: f64, tol: f64) -> Result<Eigen> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidParameter(format!("eigen tolerance must be positive, got {tol}")));
    }
    if a.iter().any(|x| !x.is_finite()) {
        return Err(Error::NumericFailure("matrix has non-finite entries".into()));
    }
    let target = tol * norm;
    let threshold = if n > 1 { target / n as f64 } else { 0.0 };
    let off_norm = |a: &[f64]| -> f64 {
        let mut s = 0.0;
        for p in 0..n {
            for q in p + 1..n {
                s += 2.0 * a[p * n + q] * a[p * n + q];
            }
        }
        s.sqrt()
    };

    let mut converged = off_norm(&a) <= target;
    let mut sweeps = 0;
    while !converged {
        if sweeps == MAX_SWEEPS {
            return Err(Error::NumericFailure(format!(
                "Jacobi did not converge in {MAX_SWEEPS} sweeps (n = {n})"
            )));
        }
        sweeps += 1;
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq.abs() <= threshold {
                    continue;
                }
                rotated = true;
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                a[p * n + p] = app - t * apq;
                a[q * n + q] = aqq + t * apq;
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
                for k in 0..n {
                    if k == p || k == q {
                        continue;
                    }
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    let new_kp = c * akp - s * akq;
                    let new_kq = s * akp + c * akq;
                    a[k * n + p] = new_kp;
                    a[p * n + k] = new_kp;
                    a[k * n + q] = new_kq;
                    a[q * n + k] = new_kq;
                }
                let (vp, vq) = split_columns(&mut v, n, p, q);
                for (x, y) in vp.iter_mut().zip(vq.iter_mut()) {
                    let (xp, xq) = (*x, *y);
                    *x = c * xp - s * xq;
                    *y = s * xp + c * xq;
                }
            }
        }
        converged = !rotated || off_norm(&a) <= target;
    }

    let residual = (0..n)
        .flat_map(|p| (p + 1..n).map(move |q| (p, q)))
        .fold(0.0f64, |r, (p, q)| r.max(a[p * n + q].abs()));

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[j * n + j].total_cmp(&a[i * n + i]));
    let values = order.iter().map(|&i| a[i * n + i]).collect();
    let mut vectors = Vec::with_capacity(n * n);
    for &i in &order {
        vectors.extend_from_slice(&v[i * n..(i + 1) * n]);
    }
    Ok(Eigen {
        spectrum: Spectrum { values, residual },
        vectors,
    })
}

/// Mutable views of columns `p < q` of a column-major matrix.
fn split_columns(v: &mut [f64], n: usize, p: usize, q: usize) -> (&mut [f64], &mut [f64]) {
    debug_assert!(p < q);
    let (left, right) = v.split_at_mut(q * n);
    (&mut left[p * n..(p + 1) * n], &mut right[..n])
}
