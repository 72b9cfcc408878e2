use std::fmt;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// A dense real symmetric matrix. Both triangles are stored and every write
/// goes to `(i, j)` and `(j, i)`, so symmetry holds exactly.
#[derive(Clone, PartialEq)]
pub struct SymmetricMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SymmetricMatrix {
    pub fn zeros(n: usize) -> Self {
        SymmetricMatrix {
            n,
            data: vec![0.0; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, 1.0);
        }
        m
    }

    /// The all-ones matrix `J`.
    pub fn ones(n: usize) -> Self {
        SymmetricMatrix {
            n,
            data: vec![1.0; n * n],
        }
    }

    /// Builds a matrix from `f(i, j)` evaluated on the upper triangle
    /// (`i <= j`).
    pub fn from_upper_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in i..n {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    /// Builds a matrix from row vectors, rejecting input that is not square
    /// or not symmetric within `1e-12` relative to its largest entry.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidParameter("matrix rows are not square".into()));
        }
        let scale = rows.iter().flatten().fold(1.0f64, |a, &x| a.max(x.abs()));
        for (i, row) in rows.iter().enumerate() {
            for (j, &x) in row.iter().enumerate().skip(i + 1) {
                if (x - rows[j][i]).abs() > 1e-12 * scale {
                    return Err(Error::InvalidParameter(format!(
                        "matrix is not symmetric at ({i}, {j})"
                    )));
                }
            }
        }
        Ok(Self::from_upper_fn(n, |i, j| rows[i][j]))
    }

    pub(crate) fn from_raw(n: usize, data: Vec<f64>) -> Self {
        debug_assert_eq!(data.len(), n * n);
        SymmetricMatrix { n, data }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: f64) {
        self.data[i * self.n + j] = value;
        self.data[j * self.n + i] = value;
    }

    /// Row-major view of all `n * n` entries.
    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub(crate) fn as_mut_slice(&mut self) -> &mut [f64] {
        &mut self.data
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    /// Sum of all entries, `<J, M>`.
    pub fn entry_sum(&self) -> f64 {
        self.data.iter().sum()
    }

    pub fn off_diagonal_sum(&self) -> f64 {
        self.entry_sum() - self.trace()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |a, &x| a.max(x.abs()))
    }

    pub fn min_entry(&self) -> f64 {
        self.data.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Frobenius inner product `<A, B> = tr(AB)`.
    pub fn dot(&self, other: &Self) -> Result<f64> {
        self.check_dim(other)?;
        Ok(self.data.iter().zip(&other.data).map(|(a, b)| a * b).sum())
    }

    pub fn distance(&self, other: &Self) -> Result<f64> {
        self.check_dim(other)?;
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt())
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self::from_raw(self.n, self.data.iter().map(|x| x * factor).collect())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        Ok(Self::from_raw(
            self.n,
            self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        ))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        Ok(Self::from_raw(
            self.n,
            self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        ))
    }

    /// `M + shift * I`.
    pub fn shifted(&self, shift: f64) -> Self {
        let mut m = self.clone();
        for i in 0..self.n {
            m.data[i * self.n + i] += shift;
        }
        m
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(v.len(), self.n);
        (0..self.n)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// The quadratic form `vᵀ M v`.
    pub fn quadratic_form(&self, v: &[f64]) -> f64 {
        self.apply(v).iter().zip(v).map(|(a, b)| a * b).sum()
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::InvalidParameter(format!(
                "dimension mismatch: {} vs {}",
                self.n, other.n
            )));
        }
        Ok(())
    }
}

impl fmt::Debug for SymmetricMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "SymmetricMatrix({}x{})", self.n, self.n)?;
        for i in 0..self.n {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        Ok(())
    }
}

/// Adjacency matrix `A`.
pub fn adjacency_matrix(g: &Graph) -> SymmetricMatrix {
    SymmetricMatrix::from_upper_fn(g.n(), |i, j| if i != j && g.has_edge(i, j) { 1.0 } else { 0.0 })
}

/// Diagonal degree matrix `D`.
pub fn degree_matrix(g: &Graph) -> SymmetricMatrix {
    let degrees = g.degrees().degrees;
    SymmetricMatrix::from_upper_fn(g.n(), |i, j| if i == j { degrees[i] as f64 } else { 0.0 })
}

/// Laplacian `L = D - A`.
pub fn laplacian(g: &Graph) -> SymmetricMatrix {
    degree_matrix(g).sub(&adjacency_matrix(g)).unwrap()
}

/// Signless Laplacian `Q = D + A`.
pub fn signless_laplacian(g: &Graph) -> SymmetricMatrix {
    degree_matrix(g).add(&adjacency_matrix(g)).unwrap()
}
