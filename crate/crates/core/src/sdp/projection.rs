use crate::error::Result;
use crate::spectra::{eigen_sym, eigen_sym_warm, Eigen, SymmetricMatrix, DEFAULT_TOL};

/// Frobenius-nearest positive semidefinite matrix: negative eigenvalues are
/// clamped to zero.
pub fn project_psd(m: &SymmetricMatrix) -> Result<SymmetricMatrix> {
    Ok(eigen_sym(m, DEFAULT_TOL)?.reconstruct_with(|x| x.max(0.0)))
}

/// PSD projection that reuses `basis` as a Jacobi warm start and returns the
/// eigendecomposition for the next call.
pub(crate) fn project_psd_warm(m: &SymmetricMatrix, basis: Option<&[f64]>) -> Result<(SymmetricMatrix, Eigen)> {
    let eig = match basis {
        Some(b) => eigen_sym_warm(m, b, DEFAULT_TOL)?,
        None => eigen_sym(m, DEFAULT_TOL)?,
    };
    Ok((eig.reconstruct_with(|x| x.max(0.0)), eig))
}

/// Euclidean projection of `v` onto `{x : x >= 0, Σx = total}` (sort-based).
pub fn project_simplex(v: &[f64], total: f64) -> Vec<f64> {
    let mut sorted = v.to_vec();
    sorted.sort_by(|a, b| b.total_cmp(a));
    let mut cumulative = 0.0;
    let mut theta = 0.0;
    for (j, &u) in sorted.iter().enumerate() {
        cumulative += u;
        let candidate = (cumulative - total) / (j + 1) as f64;
        if u - candidate > 0.0 {
            theta = candidate;
        }
    }
    v.iter().map(|&x| (x - theta).max(0.0)).collect()
}
