//! Theta-type semidefinite programs and vector colourings.
//!
//! All three theta variants share one shape, `max ⟨J, X⟩` over `tr X = 1`,
//! `X ⪰ 0`, with per-variant rules on the off-diagonal entries of a graph
//! `h`:
//!
//! | variant     | `ij ∈ E(h)` | `ij ∉ E(h)` |
//! |-------------|-------------|-------------|
//! | `Lovasz`    | `= 0`       | free        |
//! | `Schrijver` | `= 0`       | `≥ 0`       |
//! | `Szegedy`   | `≤ 0`       | free        |
//!
//! so `ϑ′(h) ≤ ϑ(h) ≤ ϑ⁺(h)`. The vector chromatic number of `g` is the
//! Schrijver value of the complement of `g`.

mod admm;
mod coloring;
mod projection;

pub use admm::{SolverOptions, DEFAULT_EPS, DEFAULT_MAX_ITERATIONS};
pub use coloring::{
    chi_v_bisect, chi_v_bisect_with, remark_inequality_holds, vector_coloring_feasible,
    vector_coloring_feasible_with, witness_from_gram, BisectionResult, FeasibilityResult, GramColoring,
    FEASIBILITY_MAX_ITERATIONS,
};
pub use projection::{project_psd, project_simplex};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::spectra::SymmetricMatrix;
use admm::{Admm, DiagonalRule, EntryRule, Problem};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ThetaVariant {
    /// Lovász `ϑ`.
    Lovasz,
    /// Schrijver `ϑ′`: adds entrywise non-negativity.
    Schrijver,
    /// Szegedy `ϑ⁺`: edge entries only need to be non-positive.
    Szegedy,
}

impl std::str::FromStr for ThetaVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lovasz" => Ok(ThetaVariant::Lovasz),
            "schrijver" => Ok(ThetaVariant::Schrijver),
            "szegedy" => Ok(ThetaVariant::Szegedy),
            other => Err(Error::InvalidParameter(format!("unknown theta variant {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SdpStatus {
    Converged,
    MaxIterations,
    InfeasibleDetected,
}

/// Result of an SDP solve. `primal` is the polyhedral iterate: it satisfies
/// every linear constraint exactly and is PSD up to the primal residual.
#[derive(Debug, Clone)]
pub struct SdpSolution {
    pub primal: SymmetricMatrix,
    pub objective: f64,
    pub primal_residual: f64,
    pub dual_residual: f64,
    pub iterations: usize,
    pub status: SdpStatus,
}

impl SdpSolution {
    pub fn is_converged(&self) -> bool {
        self.status == SdpStatus::Converged
    }
}

fn theta_problem(h: &Graph, variant: ThetaVariant) -> Problem {
    let rule = move |i: usize, j: usize| match (variant, h.has_edge(i, j)) {
        (ThetaVariant::Lovasz | ThetaVariant::Schrijver, true) => EntryRule::Zero,
        (ThetaVariant::Lovasz, false) => EntryRule::Free,
        (ThetaVariant::Schrijver, false) => EntryRule::NonNegative,
        (ThetaVariant::Szegedy, true) => EntryRule::NonPositive,
        (ThetaVariant::Szegedy, false) => EntryRule::Free,
    };
    Problem::new(h.n(), DiagonalRule::Simplex, rule).with_objective(SymmetricMatrix::ones(h.n()))
}

/// One ADMM run from the standard starting point. Returns the converged
/// iterate, or else the one with the smallest scaled residual, with its
/// score.
fn run(problem: &Problem, opts: SolverOptions, budget: usize) -> Result<(f64, SdpSolution)> {
    let mut admm = Admm::new(problem, opts);
    let mut best: Option<(f64, SdpSolution)> = None;
    while admm.iterations < budget {
        let res = admm.step()?;
        let snapshot = |status| SdpSolution {
            primal: admm.x.clone(),
            objective: admm.objective(&admm.x),
            primal_residual: res.primal,
            dual_residual: res.dual,
            iterations: admm.iterations,
            status,
        };
        if res.converged() {
            return Ok((0.0, snapshot(SdpStatus::Converged)));
        }
        // keeping the best iterate costs a clone, so only look periodically
        let last = admm.iterations == budget;
        if (last || admm.iterations.is_multiple_of(100)) && best.as_ref().is_none_or(|(s, _)| res.score() < *s) {
            best = Some((res.score(), snapshot(SdpStatus::MaxIterations)));
        }
    }
    Ok(best.expect("budget is at least one iteration"))
}

/// Runs the ADMM to convergence or the iteration cap.
///
/// Over-relaxed ADMM occasionally settles into a slow orbit where the
/// residuals stop shrinking. The iteration budget is therefore split over
/// three runs: the requested options, then plain ADMM, then plain ADMM with
/// a larger penalty. The first converged run wins; otherwise the iterate
/// with the smallest scaled residual is returned.
pub(crate) fn solve(problem: &Problem, opts: SolverOptions) -> Result<SdpSolution> {
    if opts.eps.is_nan() || opts.eps <= 0.0 {
        return Err(Error::InvalidParameter(format!("eps must be positive, got {}", opts.eps)));
    }
    if opts.max_iterations == 0 {
        return Err(Error::InvalidParameter("max_iterations must be positive".into()));
    }
    let schedule = [
        opts,
        SolverOptions { relaxation: 1.0, ..opts },
        SolverOptions {
            relaxation: 1.0,
            rho: opts.rho * 10.0,
            ..opts
        },
    ];
    let budget = opts.max_iterations.div_ceil(schedule.len());
    let mut spent = 0;
    let mut best: Option<(f64, SdpSolution)> = None;
    for attempt in schedule {
        let (score, sol) = run(problem, attempt, budget.min(opts.max_iterations - spent))?;
        spent += sol.iterations;
        if sol.is_converged() {
            return Ok(SdpSolution { iterations: spent, ..sol });
        }
        if best.as_ref().is_none_or(|(s, _)| score < *s) {
            best = Some((score, sol));
        }
        if spent >= opts.max_iterations {
            break;
        }
    }
    let (_, sol) = best.expect("at least one run");
    Ok(SdpSolution { iterations: spent, ..sol })
}

/// Theta value of `h` for the given variant.
pub fn theta(h: &Graph, variant: ThetaVariant, eps: f64) -> Result<SdpSolution> {
    theta_with(h, variant, SolverOptions::with_eps(eps))
}

pub fn theta_with(h: &Graph, variant: ThetaVariant, opts: SolverOptions) -> Result<SdpSolution> {
    if h.n() == 1 {
        return Ok(trivial_solution(1));
    }
    solve(&theta_problem(h, variant), opts)
}

/// Vector chromatic number via `max Σ bᵢⱼ` over PSD, entrywise non-negative
/// `B` with unit trace and `bᵢⱼ = 0` on non-adjacent pairs.
///
/// An edgeless graph gets the exact value 1 without solving.
pub fn chi_v_galtman(g: &Graph, eps: f64) -> Result<SdpSolution> {
    chi_v_galtman_with(g, SolverOptions::with_eps(eps))
}

pub fn chi_v_galtman_with(g: &Graph, opts: SolverOptions) -> Result<SdpSolution> {
    if g.edge_count() == 0 {
        return Ok(trivial_solution(g.n()));
    }
    let problem = Problem::new(g.n(), DiagonalRule::Simplex, |i, j| {
        if g.has_edge(i, j) {
            EntryRule::NonNegative
        } else {
            EntryRule::Zero
        }
    })
    .with_objective(SymmetricMatrix::ones(g.n()));
    solve(&problem, opts)
}

/// `B = e₀e₀ᵀ`, optimal whenever no off-diagonal mass is allowed.
fn trivial_solution(n: usize) -> SdpSolution {
    let mut primal = SymmetricMatrix::zeros(n);
    primal.set(0, 0, 1.0);
    SdpSolution {
        primal,
        objective: 1.0,
        primal_residual: 0.0,
        dual_residual: 0.0,
        iterations: 0,
        status: SdpStatus::Converged,
    }
}
