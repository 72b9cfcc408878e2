//! Two-block ADMM for programs of the form
//!
//! ```text
//! maximize ⟨C, X⟩  subject to  X ∈ P,  X ⪰ 0
//! ```
//!
//! where `P` is a product of simple sets: one rule for the diagonal (the
//! scaled simplex, or fixed values) and one rule per off-diagonal pair.
//! Both projections are closed form. The iteration is
//!
//! ```text
//! X ← Π_P(Z − U + C/ρ)
//! Z ← Π_PSD(αX + (1−α)Z + U)
//! U ← U + αX + (1−α)Z_old − Z
//! ```

use crate::error::Result;
use crate::sdp::projection::{project_psd_warm, project_simplex};
use crate::spectra::SymmetricMatrix;

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) enum EntryRule {
    Free,
    Zero,
    NonNegative,
    NonPositive,
    AtMost(f64),
}

impl EntryRule {
    #[inline]
    fn apply(self, x: f64) -> f64 {
        match self {
            EntryRule::Free => x,
            EntryRule::Zero => 0.0,
            EntryRule::NonNegative => x.max(0.0),
            EntryRule::NonPositive => x.min(0.0),
            EntryRule::AtMost(c) => x.min(c),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) enum DiagonalRule {
    /// Non-negative diagonal summing to one (`tr X = 1`).
    Simplex,
    /// Every diagonal entry fixed to the value.
    Fixed(f64),
}

#[derive(Debug, Clone)]
pub(crate) struct Problem {
    pub n: usize,
    pub diagonal: DiagonalRule,
    /// Row-major `n × n`; only `i < j` entries are read.
    pub entries: Vec<EntryRule>,
    pub objective: Option<SymmetricMatrix>,
}

impl Problem {
    pub fn new(n: usize, diagonal: DiagonalRule, rule: impl Fn(usize, usize) -> EntryRule) -> Self {
        let mut entries = vec![EntryRule::Free; n * n];
        for i in 0..n {
            for j in i + 1..n {
                entries[i * n + j] = rule(i, j);
            }
        }
        Problem {
            n,
            diagonal,
            entries,
            objective: None,
        }
    }

    pub fn with_objective(mut self, c: SymmetricMatrix) -> Self {
        self.objective = Some(c);
        self
    }


    /// Projects a symmetric matrix onto `P` in place.
    pub fn project(&self, m: &mut SymmetricMatrix) {
        let n = self.n;
        for i in 0..n {
            for j in i + 1..n {
                let v = self.entries[i * n + j].apply(m.get(i, j));
                m.set(i, j, v);
            }
        }
        match self.diagonal {
            DiagonalRule::Simplex => {
                let diag: Vec<f64> = (0..n).map(|i| m.get(i, i)).collect();
                for (i, v) in project_simplex(&diag, 1.0).into_iter().enumerate() {
                    m.set(i, i, v);
                }
            }
            DiagonalRule::Fixed(value) => {
                for i in 0..n {
                    m.set(i, i, value);
                }
            }
        }
    }

    fn initial_point(&self) -> SymmetricMatrix {
        let mut x = match self.diagonal {
            DiagonalRule::Simplex => SymmetricMatrix::identity(self.n).scaled(1.0 / self.n as f64),
            DiagonalRule::Fixed(v) => SymmetricMatrix::identity(self.n).scaled(v),
        };
        self.project(&mut x);
        x
    }
}

/// Solver settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverOptions {
    /// Relative stopping tolerance for both residuals.
    pub eps: f64,
    pub max_iterations: usize,
    /// Initial penalty parameter.
    pub rho: f64,
    /// Over-relaxation factor in `(0, 2)`.
    pub relaxation: f64,
    /// Iterations between penalty updates.
    pub adapt_every: usize,
}

pub const DEFAULT_EPS: f64 = 1e-7;
pub const DEFAULT_MAX_ITERATIONS: usize = 200_000;

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            eps: DEFAULT_EPS,
            max_iterations: DEFAULT_MAX_ITERATIONS,
            rho: 1.0,
            relaxation: 1.6,
            adapt_every: 20,
        }
    }
}

impl SolverOptions {
    pub fn with_eps(eps: f64) -> Self {
        SolverOptions {
            eps,
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub(crate) struct Residuals {
    pub primal: f64,
    pub dual: f64,
    pub primal_tol: f64,
    pub dual_tol: f64,
}

impl Residuals {
    pub fn converged(&self) -> bool {
        self.primal <= self.primal_tol && self.dual <= self.dual_tol
    }

    /// Worst residual relative to its tolerance.
    pub fn score(&self) -> f64 {
        (self.primal / self.primal_tol).max(self.dual / self.dual_tol)
    }
}

pub(crate) struct Admm<'p> {
    problem: &'p Problem,
    opts: SolverOptions,
    pub x: SymmetricMatrix,
    pub z: SymmetricMatrix,
    u: SymmetricMatrix,
    rho: f64,
    basis: Option<Vec<f64>>,
    pub iterations: usize,
    pub residuals: Residuals,
}

impl<'p> Admm<'p> {
    pub fn new(problem: &'p Problem, opts: SolverOptions) -> Self {
        let x = problem.initial_point();
        Admm {
            problem,
            opts,
            z: x.clone(),
            x,
            u: SymmetricMatrix::zeros(problem.n),
            rho: opts.rho,
            basis: None,
            iterations: 0,
            residuals: Residuals::default(),
        }
    }

    pub fn step(&mut self) -> Result<Residuals> {
        let n = self.problem.n;
        let alpha = self.opts.relaxation;
        let inv_rho = 1.0 / self.rho;

        // X-update: polyhedral projection of Z - U + C/ρ
        let mut x = self.z.sub(&self.u)?;
        if let Some(c) = &self.problem.objective {
            for (xv, cv) in x.as_mut_slice().iter_mut().zip(c.as_slice()) {
                *xv += cv * inv_rho;
            }
        }
        self.problem.project(&mut x);

        // relaxed point and Z-update
        let relaxed = SymmetricMatrix::from_upper_fn(n, |i, j| alpha * x.get(i, j) + (1.0 - alpha) * self.z.get(i, j));
        let (z, eig) = project_psd_warm(&relaxed.add(&self.u)?, self.basis.as_deref())?;
        self.basis = Some(eig.basis().to_vec());

        for ((u, r), zv) in self.u.as_mut_slice().iter_mut().zip(relaxed.as_slice()).zip(z.as_slice()) {
            *u += r - zv;
        }

        let primal = x.distance(&z)?;
        let dual = self.rho * z.distance(&self.z)?;
        let scale_p = 1f64.max(x.frobenius_norm()).max(z.frobenius_norm());
        let scale_d = 1f64.max(self.rho * self.u.frobenius_norm());
        self.residuals = Residuals {
            primal,
            dual,
            primal_tol: self.opts.eps * scale_p,
            dual_tol: self.opts.eps * scale_d,
        };
        self.x = x;
        self.z = z;
        self.iterations += 1;

        if self.iterations.is_multiple_of(self.opts.adapt_every) {
            let rp = self.residuals.primal / self.residuals.primal_tol;
            let rd = self.residuals.dual / self.residuals.dual_tol;
            if rp > 10.0 * rd {
                self.rescale(2.0);
            } else if rd > 10.0 * rp {
                self.rescale(0.5);
            }
        }
        Ok(self.residuals)
    }

    fn rescale(&mut self, factor: f64) {
        self.rho *= factor;
        self.u = self.u.scaled(1.0 / factor);
    }

    pub fn objective(&self, m: &SymmetricMatrix) -> f64 {
        match &self.problem.objective {
            Some(c) => c.dot(m).unwrap(),
            None => 0.0,
        }
    }
}
