//! Closed-form spectral lower bounds on the chromatic number:
//!
//! | bound      | value                          |
//! |------------|--------------------------------|
//! | Hoffman    | `1 + μ₁ / |μₙ|`                |
//! | Lima       | `1 + 2m / (2m − n δₙ)`         |
//! | Kolotilina | `1 + μ₁ / (μ₁ − δ₁ + λ₁)`      |
//! | Ando–Lin   | `1 + max(s⁺/s⁻, s⁻/s⁺)`        |
//!
//! where `μ`, `δ`, `λ` are eigenvalues of the adjacency matrix, the signless
//! Laplacian and the Laplacian. The first three also bound the vector
//! chromatic number from below, and so do their weighted forms over
//! non-negative weight matrices supported on the edges.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::spectra::{
    self, adjacency_matrix, energy_split, laplacian, signless_laplacian, SymmetricMatrix,
};

/// Smallest denominator any bound will divide by.
pub const DIVISION_GUARD: f64 = 1e-12;

/// A symmetric non-negative matrix whose off-diagonal support lies inside
/// the edge set of a graph. The diagonal is unrestricted apart from being
/// non-negative.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightMatrix {
    matrix: SymmetricMatrix,
}

impl WeightMatrix {
    /// Validates `matrix` against `g`.
    pub fn new(g: &Graph, matrix: SymmetricMatrix) -> Result<Self> {
        if matrix.n() != g.n() {
            return Err(Error::InvalidParameter(format!(
                "weight matrix is {}x{} but the graph has {} vertices",
                matrix.n(),
                matrix.n(),
                g.n()
            )));
        }
        for i in 0..g.n() {
            for j in i..g.n() {
                let w = matrix.get(i, j);
                if !w.is_finite() || w < 0.0 {
                    return Err(Error::InvalidParameter(format!(
                        "weight ({i}, {j}) = {w} is not a non-negative number"
                    )));
                }
                if i != j && w != 0.0 && !g.has_edge(i, j) {
                    return Err(Error::InvalidParameter(format!(
                        "weight ({i}, {j}) = {w} on a non-edge"
                    )));
                }
            }
        }
        Ok(WeightMatrix { matrix })
    }

    /// The adjacency matrix as a weighting.
    pub fn adjacency(g: &Graph) -> Self {
        WeightMatrix {
            matrix: adjacency_matrix(g),
        }
    }

    /// The signless Laplacian `Q = D + A` as a weighting.
    pub fn signless_laplacian(g: &Graph) -> Self {
        WeightMatrix {
            matrix: signless_laplacian(g),
        }
    }

    pub fn matrix(&self) -> &SymmetricMatrix {
        &self.matrix
    }

    pub fn n(&self) -> usize {
        self.matrix.n()
    }

    /// The matrix with its diagonal zeroed.
    pub fn off_diagonal(&self) -> SymmetricMatrix {
        let m = &self.matrix;
        SymmetricMatrix::from_upper_fn(m.n(), |i, j| if i == j { 0.0 } else { m.get(i, j) })
    }

    /// Vertex sets of the connected components of the support graph.
    fn support_components(&self) -> Vec<Vec<usize>> {
        let m = &self.matrix;
        Graph::from_fn(m.n(), |i, j| m.get(i, j) > 0.0).connected_components()
    }

    fn restrict(&self, vertices: &[usize]) -> SymmetricMatrix {
        SymmetricMatrix::from_upper_fn(vertices.len(), |a, b| self.matrix.get(vertices[a], vertices[b]))
    }
}

fn require_edges(g: &Graph) -> Result<usize> {
    match g.edge_count() {
        0 => Err(Error::DegenerateInput(
            "the graph has no edges; spectral bounds are undefined".into(),
        )),
        m => Ok(m),
    }
}

fn guarded_ratio(num: f64, den: f64, what: &str) -> Result<f64> {
    if den <= DIVISION_GUARD {
        return Err(Error::DegenerateInput(format!(
            "{what}: denominator {den:e} is not positive"
        )));
    }
    Ok(num / den)
}

/// Weighted Hoffman bound `1 + μ₁(W) / |μₙ(W)|`. Pass
/// [`WeightMatrix::adjacency`] for the classical bound. Weightings with a
/// positive diagonal are accepted but are not lower bounds in general.
pub fn hoffman_bound(w: &WeightMatrix) -> Result<f64> {
    let spec = spectra::spectrum(w.matrix())?;
    let (mu1, mun) = (spec.max(), spec.min());
    if mun >= -DIVISION_GUARD {
        return Err(Error::DegenerateInput(format!(
            "smallest weight eigenvalue {mun:e} is not negative"
        )));
    }
    Ok(1.0 + mu1 / mun.abs())
}

/// Lima et al. bound `1 + 2m / (2m − n δₙ)`.
pub fn lima_bound(g: &Graph) -> Result<f64> {
    let m = require_edges(g)? as f64;
    let delta_n = spectra::spectrum(&signless_laplacian(g))?.min();
    let n = g.n() as f64;
    Ok(1.0 + guarded_ratio(2.0 * m, 2.0 * m - n * delta_n, "lima")?)
}

/// `1 + Σ_{i≠j} wᵢⱼ / (tr W − n λ_min(W))`. Every such value is a lower
/// bound on the vector chromatic number, and the maximum over all
/// weightings equals it; `W = Q` recovers [`lima_bound`].
pub fn generalized_lima(w: &WeightMatrix) -> Result<f64> {
    let m = w.matrix();
    let lambda_min = spectra::spectrum(m)?.min();
    let den = m.trace() - m.n() as f64 * lambda_min;
    Ok(1.0 + guarded_ratio(m.off_diagonal_sum(), den, "generalized lima")?)
}

/// Weighted Kolotilina bound. The diagonal of `w` plays the role of the
/// degree matrix `D` and the off-diagonal part the role of `A`:
/// `1 + μ₁(A) / (μ₁(A) − λ_max(D + A) + λ_max(D − A))`.
///
/// The bound needs `A` irreducible, so it is evaluated on each connected
/// component of the support and the maximum is returned. A zero diagonal
/// gives the weighted Hoffman bound; `W = Q` gives [`kolotilina_bound`].
pub fn weighted_kolotilina(w: &WeightMatrix) -> Result<f64> {
    Ok(weighted_kolotilina_components(w)?
        .into_iter()
        .map(|c| c.value)
        .fold(f64::NEG_INFINITY, f64::max))
}

/// Bound value restricted to one connected component.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComponentBound {
    pub vertices: Vec<usize>,
    pub value: f64,
}

fn weighted_kolotilina_components(w: &WeightMatrix) -> Result<Vec<ComponentBound>> {
    let mut out = Vec::new();
    for vertices in w.support_components() {
        if vertices.len() < 2 {
            continue;
        }
        let sub = w.restrict(&vertices);
        let adj = SymmetricMatrix::from_upper_fn(sub.n(), |i, j| if i == j { 0.0 } else { sub.get(i, j) });
        let diag = sub.sub(&adj)?;
        let mu1 = spectra::spectrum(&adj)?.max();
        let plus = spectra::spectrum(&diag.add(&adj)?)?.max();
        let minus = spectra::spectrum(&diag.sub(&adj)?)?.max();
        let value = 1.0 + guarded_ratio(mu1, mu1 - plus + minus, "kolotilina")?;
        out.push(ComponentBound { vertices, value });
    }
    if out.is_empty() {
        return Err(Error::DegenerateInput("weighting has no off-diagonal support".into()));
    }
    Ok(out)
}

/// Kolotilina bound `1 + μ₁ / (μ₁ − δ₁ + λ₁)`, evaluated per connected
/// component; the maximum over components is returned.
pub fn kolotilina_bound(g: &Graph) -> Result<f64> {
    require_edges(g)?;
    weighted_kolotilina(&WeightMatrix::signless_laplacian(g))
}

/// Per-component Kolotilina values for the components that have edges.
pub fn kolotilina_components(g: &Graph) -> Result<Vec<ComponentBound>> {
    require_edges(g)?;
    weighted_kolotilina_components(&WeightMatrix::signless_laplacian(g))
}

/// Ando–Lin bound `1 + max(s⁺/s⁻, s⁻/s⁺)`. Proven for the chromatic
/// number; whether it bounds the vector chromatic number is open.
pub fn ando_lin_bound(g: &Graph) -> Result<f64> {
    require_edges(g)?;
    let e = energy_split(&adjacency_matrix(g), None)?;
    ando_lin_from_energies(e.s_plus, e.s_minus)
}

fn ando_lin_from_energies(s_plus: f64, s_minus: f64) -> Result<f64> {
    if s_plus < DIVISION_GUARD || s_minus < DIVISION_GUARD {
        return Err(Error::NumericFailure(format!(
            "energy split ({s_plus:e}, {s_minus:e}) has a vanishing side; needs review"
        )));
    }
    Ok(1.0 + (s_plus / s_minus).max(s_minus / s_plus))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    Hoffman,
    Lima,
    Kolotilina,
    AndoLin,
}

/// All four bounds together with the spectral inputs they were computed
/// from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub n: usize,
    pub m: usize,
    pub hoffman: f64,
    pub lima: f64,
    pub kolotilina: f64,
    pub ando_lin: f64,
    pub mu1: f64,
    pub mu_n: f64,
    pub delta1: f64,
    pub delta_n: f64,
    pub lambda1: f64,
    pub s_plus: f64,
    pub s_minus: f64,
    pub connected: bool,
    /// Kolotilina value of each component with edges; a single entry for
    /// connected graphs.
    pub kolotilina_components: Vec<ComponentBound>,
    pub largest: BoundKind,
}

impl BoundReport {
    pub fn max_bound(&self) -> f64 {
        self.hoffman.max(self.lima).max(self.kolotilina).max(self.ando_lin)
    }

    /// The bounds proven to hold for the vector chromatic number.
    pub fn max_vector_bound(&self) -> f64 {
        self.hoffman.max(self.lima).max(self.kolotilina)
    }
}

pub fn all_bounds(g: &Graph) -> Result<BoundReport> {
    let m = require_edges(g)?;
    let n = g.n();
    let adj = spectra::spectrum(&adjacency_matrix(g))?;
    let q = spectra::spectrum(&signless_laplacian(g))?;
    let l = spectra::spectrum(&laplacian(g))?;
    let energies = energy_split(&adjacency_matrix(g), None)?;

    let (mu1, mu_n) = (adj.max(), adj.min());
    if mu_n >= -DIVISION_GUARD {
        return Err(Error::DegenerateInput(format!("μₙ = {mu_n:e} is not negative")));
    }
    let hoffman = 1.0 + mu1 / mu_n.abs();
    let (mf, nf) = (m as f64, n as f64);
    let lima = 1.0 + guarded_ratio(2.0 * mf, 2.0 * mf - nf * q.min(), "lima")?;
    let components = kolotilina_components(g)?;
    let kolotilina = components.iter().map(|c| c.value).fold(f64::NEG_INFINITY, f64::max);
    let ando_lin = ando_lin_from_energies(energies.s_plus, energies.s_minus)?;

    let largest = [
        (BoundKind::Hoffman, hoffman),
        (BoundKind::Lima, lima),
        (BoundKind::Kolotilina, kolotilina),
        (BoundKind::AndoLin, ando_lin),
    ]
    .into_iter()
    .fold((BoundKind::Hoffman, f64::NEG_INFINITY), |best, cur| if cur.1 > best.1 { cur } else { best })
    .0;

    Ok(BoundReport {
        n,
        m,
        hoffman,
        lima,
        kolotilina,
        ando_lin,
        mu1,
        mu_n,
        delta1: q.max(),
        delta_n: q.min(),
        lambda1: l.max(),
        s_plus: energies.s_plus,
        s_minus: energies.s_minus,
        connected: g.is_connected(),
        kolotilina_components: components,
        largest,
    })
}
