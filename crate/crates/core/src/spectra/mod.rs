//! Spectra of graph matrices and the matrix relations used by the bounds:
//! energy splits, Schur products and majorization.

mod jacobi;
mod matrix;

pub use jacobi::{eigen_sym, eigen_sym_warm, Eigen, DEFAULT_TOL, MAX_SWEEPS};
pub use matrix::{adjacency_matrix, degree_matrix, laplacian, signless_laplacian, SymmetricMatrix};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Eigenvalues in non-increasing order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    pub values: Vec<f64>,
    /// Largest off-diagonal magnitude left when the eigensolver stopped.
    pub residual: f64,
}

impl Spectrum {
    /// Wraps arbitrary values, sorting them non-increasingly.
    pub fn from_values(mut values: Vec<f64>) -> Self {
        values.sort_by(|a, b| b.total_cmp(a));
        Spectrum {
            values,
            residual: 0.0,
        }
    }

    pub fn max(&self) -> f64 {
        self.values[0]
    }

    pub fn min(&self) -> f64 {
        *self.values.last().unwrap()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// The spectrum of `m` at the default tolerance.
pub fn spectrum(m: &SymmetricMatrix) -> Result<Spectrum> {
    Ok(eigen_sym(m, DEFAULT_TOL)?.spectrum)
}

/// Sums of squares of the positive (`s_plus`) and negative (`s_minus`)
/// eigenvalues.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnergySplit {
    pub s_plus: f64,
    pub s_minus: f64,
}

/// Splits the squared spectrum of `m` by sign. Eigenvalues with magnitude at
/// most `zero_tol` count as zero; `None` selects `1e-9 * ‖m‖_F`.
pub fn energy_split(m: &SymmetricMatrix, zero_tol: Option<f64>) -> Result<EnergySplit> {
    let zero_tol = zero_tol.unwrap_or(1e-9 * m.frobenius_norm());
    if zero_tol < 0.0 {
        return Err(Error::InvalidParameter("zero tolerance must be non-negative".into()));
    }
    let spec = spectrum(m)?;
    let s_plus = spec.values.iter().filter(|&&x| x > zero_tol).map(|x| x * x).sum();
    let s_minus = spec.values.iter().filter(|&&x| x < -zero_tol).map(|x| x * x).sum();
    Ok(EnergySplit { s_plus, s_minus })
}

/// Entrywise (Schur/Hadamard) product.
pub fn schur_product(a: &SymmetricMatrix, b: &SymmetricMatrix) -> Result<SymmetricMatrix> {
    if a.n() != b.n() {
        return Err(Error::InvalidParameter(format!(
            "Schur product of {}x{} and {}x{} matrices",
            a.n(),
            a.n(),
            b.n(),
            b.n()
        )));
    }
    let n = a.n();
    Ok(SymmetricMatrix::from_upper_fn(n, |i, j| a.get(i, j) * b.get(i, j)))
}

/// Whether `a` majorizes `b`: every prefix sum of `a` is at least the
/// matching prefix sum of `b` (up to `tol`) and the totals agree within
/// `tol`. Both spectra must be sorted non-increasingly.
pub fn majorizes(a: &Spectrum, b: &Spectrum, tol: f64) -> Result<bool> {
    if a.len() != b.len() {
        return Err(Error::InvalidParameter(format!(
            "majorization needs equal lengths, got {} and {}",
            a.len(),
            b.len()
        )));
    }
    let (mut pa, mut pb) = (0.0, 0.0);
    let last = a.len().saturating_sub(1);
    for (l, (x, y)) in a.values.iter().zip(&b.values).enumerate() {
        pa += x;
        pb += y;
        if l < last && pa < pb - tol {
            return Ok(false);
        }
    }
    Ok((pa - pb).abs() <= tol)
}

/// Gram matrix of `n` seeded random unit vectors in `R^n`: positive
/// semidefinite with unit diagonal.
pub fn random_correlation_matrix(n: usize, seed: u64) -> Result<SymmetricMatrix> {
    if n == 0 {
        return Err(Error::InvalidParameter("correlation matrix needs n >= 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let vectors: Vec<Vec<f64>> = (0..n)
        .map(|_| loop {
            let v: Vec<f64> = (0..n).map(|_| StandardNormal.sample(&mut rng)).collect();
            let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            if norm > 1e-12 {
                break v.into_iter().map(|x| x / norm).collect();
            }
        })
        .collect();
    Ok(SymmetricMatrix::from_upper_fn(n, |i, j| {
        if i == j {
            1.0
        } else {
            vectors[i].iter().zip(&vectors[j]).map(|(a, b)| a * b).sum()
        }
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generators::{cycle, kneser};
    use crate::graph::Graph;
    use rand::Rng;
    use std::f64::consts::PI;

    #[test]
    fn laplacian_rows_sum_to_zero() {
        let g = kneser(5, 2).unwrap();
        let l = laplacian(&g);
        for i in 0..g.n() {
            assert_eq!(l.row(i).iter().sum::<f64>(), 0.0);
        }
        let spec = spectrum(&l).unwrap();
        assert!(spec.min().abs() < 1e-10);
    }

    #[test]
    fn signless_laplacian_of_c4() {
        let spec = spectrum(&signless_laplacian(&cycle(4).unwrap())).unwrap();
        for (x, y) in spec.values.iter().zip([4.0, 2.0, 2.0, 0.0]) {
            assert!((x - y).abs() < 1e-10);
        }
    }

    #[test]
    fn energy_examples() {
        let k3 = energy_split(&adjacency_matrix(&Graph::complete(3)), None).unwrap();
        assert!((k3.s_plus - 4.0).abs() < 1e-10);
        assert!((k3.s_minus - 2.0).abs() < 1e-10);

        let c5 = energy_split(&adjacency_matrix(&cycle(5).unwrap()), None).unwrap();
        let expected_plus = 4.0 + 2.0 * (2.0 * (2.0 * PI / 5.0).cos()).powi(2);
        let expected_minus = 2.0 * (2.0 * (4.0 * PI / 5.0).cos()).powi(2);
        assert!((c5.s_plus - expected_plus).abs() < 1e-10);
        assert!((c5.s_minus - expected_minus).abs() < 1e-10);
        assert!((c5.s_plus - 4.7639320225).abs() < 1e-9);
        assert!((c5.s_minus - 5.2360679775).abs() < 1e-9);

        let empty = energy_split(&adjacency_matrix(&Graph::edgeless(4)), None).unwrap();
        assert_eq!((empty.s_plus, empty.s_minus), (0.0, 0.0));
    }

    #[test]
    fn schur_identities() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let x = SymmetricMatrix::from_upper_fn(5, |_, _| rng.random_range(-2.0..2.0));
        let diag = schur_product(&SymmetricMatrix::identity(5), &x).unwrap();
        for i in 0..5 {
            for j in 0..5 {
                assert_eq!(diag.get(i, j), if i == j { x.get(i, i) } else { 0.0 });
            }
        }
        assert_eq!(schur_product(&SymmetricMatrix::ones(5), &x).unwrap(), x);
        assert!(schur_product(&x, &SymmetricMatrix::ones(4)).is_err());
    }

    #[test]
    fn schur_product_of_psd_matrices_is_psd() {
        let mut rng = ChaCha8Rng::seed_from_u64(19);
        for trial in 0..500 {
            let n = rng.random_range(1..=12);
            let a = random_correlation_matrix(n, 2 * trial).unwrap();
            let b = random_correlation_matrix(n, 2 * trial + 1).unwrap().scaled(rng.random_range(0.1..3.0));
            let min = spectrum(&schur_product(&a, &b).unwrap()).unwrap().min();
            assert!(min >= -1e-9, "trial {trial}: min eigenvalue {min}");
        }
    }

    #[test]
    fn majorization_examples() {
        let a = Spectrum::from_values(vec![2.0, 0.0, -2.0]);
        let b = Spectrum::from_values(vec![1.0, 0.0, -1.0]);
        assert!(majorizes(&a, &a, 1e-12).unwrap());
        assert!(majorizes(&a, &b, 1e-12).unwrap());
        assert!(!majorizes(&b, &a, 1e-12).unwrap());
        // equal prefixes but different totals
        let c = Spectrum::from_values(vec![2.0, 0.0, -1.0]);
        assert!(!majorizes(&c, &a, 1e-12).unwrap());
        assert!(majorizes(&a, &Spectrum::from_values(vec![1.0, 1.0]), 1e-9).is_err());
    }

    #[test]
    fn correlation_matrices() {
        for n in [1, 4, 9] {
            let phi = random_correlation_matrix(n, 42).unwrap();
            assert!((0..n).all(|i| phi.get(i, i) == 1.0));
            assert!(spectrum(&phi).unwrap().min() >= -1e-10);
            assert_eq!(phi, random_correlation_matrix(n, 42).unwrap());
        }
        assert_ne!(random_correlation_matrix(4, 1).unwrap(), random_correlation_matrix(4, 2).unwrap());
    }

    #[test]
    fn weyl_sanity_on_signless_laplacian() {
        for g in [kneser(5, 2).unwrap(), cycle(7).unwrap(), Graph::from_edges(4, [(0, 1), (0, 2), (0, 3)]).unwrap()] {
            let q = spectrum(&signless_laplacian(&g)).unwrap().max();
            let d = spectrum(&degree_matrix(&g)).unwrap().max();
            let a = spectrum(&adjacency_matrix(&g)).unwrap().max();
            assert!(q <= d + a + 1e-10);
        }
    }
}
