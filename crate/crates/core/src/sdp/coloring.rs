//! Vector colourings: unit vectors `uᵢ` with `⟨uᵢ, uⱼ⟩ ≤ −1/(k−1)` on every
//! edge.
//!
//! Feasibility of a given `k` is decided by running the splitting solver on
//! the Gram matrix `Φ` (PSD, unit diagonal, edge entries `≤ −1/(k−1)`) and
//! checking two certificates as it goes:
//!
//! * **feasible**: the PSD iterate, rescaled to unit diagonal, meets every
//!   edge bound up to [`WITNESS_SLACK`];
//! * **infeasible**: `Y = Z − X` tends to a separating direction. After
//!   zeroing it off the edge set, clamping edge entries to be non-negative
//!   and shifting it PSD, `tr Y + 2c Σ_E yᵢⱼ < 0` proves that no Gram matrix
//!   exists, because `⟨Y, Φ⟩ ≥ 0` for every PSD `Φ`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::sdp::admm::{Admm, DiagonalRule, EntryRule, Problem, SolverOptions};
use crate::spectra::{eigen_sym, spectrum, SymmetricMatrix, DEFAULT_TOL};

/// Allowed excess of an edge inner product over `−1/(k−1)` in a witness.
pub const WITNESS_SLACK: f64 = 1e-6;
pub const FEASIBILITY_MAX_ITERATIONS: usize = 50_000;
const CHECK_EVERY: usize = 10;

/// Unit vectors forming a vector `k`-colouring.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GramColoring {
    pub vectors: Vec<Vec<f64>>,
    pub k: f64,
}

impl GramColoring {
    pub fn dimension(&self) -> usize {
        self.vectors.first().map_or(0, Vec::len)
    }

    pub fn inner(&self, i: usize, j: usize) -> f64 {
        self.vectors[i].iter().zip(&self.vectors[j]).map(|(a, b)| a * b).sum()
    }

    pub fn gram(&self) -> SymmetricMatrix {
        SymmetricMatrix::from_upper_fn(self.vectors.len(), |i, j| self.inner(i, j))
    }

    /// Largest inner product across an edge.
    pub fn max_edge_inner(&self, g: &Graph) -> f64 {
        g.edges().map(|(i, j)| self.inner(i, j)).fold(f64::NEG_INFINITY, f64::max)
    }

    /// Checks unit length within `1e-7` and the edge condition within `tol`.
    pub fn is_valid_for(&self, g: &Graph, tol: f64) -> bool {
        let bound = -1.0 / (self.k - 1.0);
        self.vectors.len() == g.n()
            && self
                .vectors
                .iter()
                .all(|v| (v.iter().map(|x| x * x).sum::<f64>().sqrt() - 1.0).abs() <= 1e-7)
            && g.edges().all(|(i, j)| self.inner(i, j) <= bound + tol)
    }
}

/// Unit vectors from a Gram-like PSD matrix: rows of `V Λ^{1/2}` over the
/// positive eigenvalues, each normalised to unit length. The dimension is
/// the numerical rank.
pub fn witness_from_gram(gram: &SymmetricMatrix, k: f64) -> Result<GramColoring> {
    let eig = eigen_sym(gram, DEFAULT_TOL)?;
    let cutoff = 1e-10 * eig.values()[0].abs().max(1.0);
    let kept: Vec<usize> = (0..eig.n()).filter(|&c| eig.values()[c] > cutoff).collect();
    let vectors = (0..gram.n())
        .map(|i| {
            let row: Vec<f64> = kept
                .iter()
                .map(|&c| eig.vector(c)[i] * eig.values()[c].sqrt())
                .collect();
            let norm = row.iter().map(|x| x * x).sum::<f64>().sqrt();
            if norm == 0.0 {
                return Err(Error::NumericFailure(format!("vertex {i} has a zero Gram row")));
            }
            Ok(row.into_iter().map(|x| x / norm).collect())
        })
        .collect::<Result<_>>()?;
    Ok(GramColoring { vectors, k })
}

/// Entrywise check of `Φ ∘ (D − A) ≥ D + A/(k−1)` within `tol`.
pub fn remark_inequality_holds(g: &Graph, phi: &SymmetricMatrix, k: f64, tol: f64) -> bool {
    let degrees = g.degrees().degrees;
    (0..g.n()).all(|i| {
        (0..g.n()).all(|j| {
            let (lhs, rhs) = if i == j {
                (phi.get(i, i) * degrees[i] as f64, degrees[i] as f64)
            } else if g.has_edge(i, j) {
                (-phi.get(i, j), 1.0 / (k - 1.0))
            } else {
                (0.0, 0.0)
            };
            lhs >= rhs - tol
        })
    })
}

#[derive(Debug, Clone)]
pub struct FeasibilityResult {
    pub feasible: bool,
    /// Present when `feasible`.
    pub witness: Option<GramColoring>,
    /// When infeasibility was certified: a non-negative PSD matrix with unit
    /// trace, supported on the edges, whose entry sum exceeds `k`.
    pub certificate: Option<SymmetricMatrix>,
    /// False if the iteration cap was reached with neither certificate; the
    /// answer is then `feasible = false` and `k` is very close to the
    /// threshold.
    pub decided: bool,
    pub iterations: usize,
}

pub fn vector_coloring_feasible(g: &Graph, k: f64, eps: f64) -> Result<FeasibilityResult> {
    vector_coloring_feasible_with(
        g,
        k,
        SolverOptions {
            max_iterations: FEASIBILITY_MAX_ITERATIONS,
            ..SolverOptions::with_eps(eps)
        },
    )
}

pub fn vector_coloring_feasible_with(g: &Graph, k: f64, opts: SolverOptions) -> Result<FeasibilityResult> {
    if k.is_nan() || k < 2.0 {
        return Err(Error::InvalidParameter(format!("vector colouring needs k >= 2, got {k}")));
    }
    if g.edge_count() == 0 {
        return Err(Error::DegenerateInput("vector colouring of an edgeless graph".into()));
    }
    let bound = -1.0 / (k - 1.0);
    let problem = Problem::new(g.n(), DiagonalRule::Fixed(1.0), |i, j| {
        if g.has_edge(i, j) {
            EntryRule::AtMost(bound)
        } else {
            EntryRule::Free
        }
    });
    let mut admm = Admm::new(&problem, opts);
    while admm.iterations < opts.max_iterations {
        admm.step()?;
        if !admm.iterations.is_multiple_of(CHECK_EVERY) && !admm.residuals.converged() {
            continue;
        }
        if let Some(witness) = feasibility_witness(g, &admm.z, k)? {
            return Ok(FeasibilityResult {
                feasible: true,
                witness: Some(witness),
                certificate: None,
                decided: true,
                iterations: admm.iterations,
            });
        }
        if let Some(certificate) = infeasibility_certificate(g, &admm.z.sub(&admm.x)?, bound)? {
            return Ok(FeasibilityResult {
                feasible: false,
                witness: None,
                certificate: Some(certificate),
                decided: true,
                iterations: admm.iterations,
            });
        }
    }
    Ok(FeasibilityResult {
        feasible: false,
        witness: None,
        certificate: None,
        decided: false,
        iterations: admm.iterations,
    })
}

fn feasibility_witness(g: &Graph, z: &SymmetricMatrix, k: f64) -> Result<Option<GramColoring>> {
    let bound = -1.0 / (k - 1.0);
    let n = g.n();
    let scale: Vec<f64> = (0..n).map(|i| z.get(i, i)).collect();
    if scale.iter().any(|&d| d <= 1e-12) {
        return Ok(None);
    }
    // cheap pre-check on the rescaled PSD iterate
    let edge_ok = g
        .edges()
        .all(|(i, j)| z.get(i, j) / (scale[i] * scale[j]).sqrt() <= bound + 0.5 * WITNESS_SLACK);
    if !edge_ok {
        return Ok(None);
    }
    let phi = SymmetricMatrix::from_upper_fn(n, |i, j| z.get(i, j) / (scale[i] * scale[j]).sqrt());
    let witness = witness_from_gram(&phi, k)?;
    Ok(witness.is_valid_for(g, WITNESS_SLACK).then_some(witness))
}

fn infeasibility_certificate(g: &Graph, direction: &SymmetricMatrix, bound: f64) -> Result<Option<SymmetricMatrix>> {
    let n = g.n();
    let mut y = SymmetricMatrix::from_upper_fn(n, |i, j| {
        if i == j {
            direction.get(i, i)
        } else if g.has_edge(i, j) {
            direction.get(i, j).max(0.0)
        } else {
            0.0
        }
    });
    let shift = (-spectrum(&y)?.min()).max(0.0);
    y = y.shifted(shift);
    let trace = y.trace();
    if trace <= 1e-14 {
        return Ok(None);
    }
    let edge_sum: f64 = g.edges().map(|(i, j)| y.get(i, j)).sum();
    let sup = trace + 2.0 * bound * edge_sum;
    Ok((sup < -1e-9 * trace).then(|| y.scaled(1.0 / trace)))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BisectionResult {
    pub value: f64,
    pub lower: f64,
    pub upper: f64,
    pub steps: usize,
    /// Steps whose feasibility test hit the iteration cap undecided.
    pub undecided: usize,
}

/// Vector chromatic number as the smallest feasible `k`, found by bisection
/// over `[2, n]`. Edgeless graphs return 1.
pub fn chi_v_bisect(g: &Graph, tol: f64) -> Result<f64> {
    Ok(chi_v_bisect_with(g, tol, SolverOptions {
        max_iterations: FEASIBILITY_MAX_ITERATIONS,
        ..SolverOptions::default()
    })?
    .value)
}

pub fn chi_v_bisect_with(g: &Graph, tol: f64, opts: SolverOptions) -> Result<BisectionResult> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidParameter(format!("bisection tolerance must be positive, got {tol}")));
    }
    if g.edge_count() == 0 {
        return Ok(BisectionResult {
            value: 1.0,
            lower: 1.0,
            upper: 1.0,
            steps: 0,
            undecided: 0,
        });
    }
    // m >= 1 forces k >= 2; the regular simplex in dimension n - 1 colours K_n.
    let (mut lower, mut upper) = (2.0, g.n() as f64);
    let (mut steps, mut undecided) = (0, 0);
    while upper - lower > tol {
        let mid = 0.5 * (lower + upper);
        let result = vector_coloring_feasible_with(g, mid, opts)?;
        steps += 1;
        undecided += usize::from(!result.decided);
        if result.feasible {
            upper = mid;
        } else {
            lower = mid;
        }
    }
    Ok(BisectionResult {
        value: 0.5 * (lower + upper),
        lower,
        upper,
        steps,
        undecided,
    })
}
