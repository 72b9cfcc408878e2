//! Verification records for single graphs and the circulant search.

mod checkpoint;
mod search;

pub use checkpoint::{SearchCheckpoint, CHECKPOINT_FORMAT_VERSION};
pub use search::{
    circulant_candidates, circulant_id, evaluate_circulant, is_multiplier_canonical, run_search,
    search_circulants, Candidate, SearchOptions, SearchSummary, MAX_SEARCH_N,
};

use serde::{Deserialize, Serialize};

use crate::bounds::{self, BoundReport, ComponentBound};
use crate::error::Result;
use crate::graph::oracles::{brute_force_chromatic, brute_force_clique, MAX_CHROMATIC_ORACLE_N, MAX_CLIQUE_ORACLE_N};
use crate::graph::Graph;
use crate::sdp::{self, SolverOptions, ThetaVariant, DEFAULT_EPS};

/// Slack allowed on every checked inequality.
pub const VERIFY_TOLERANCE: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RecordStatus {
    Verified,
    Violation,
    /// Ando–Lin exceeded the vector chromatic number (search only).
    Counterexample,
    /// Some SDP hit its iteration cap; values are the best iterate.
    Unverifiable,
    Edgeless,
}

/// A failed inequality `lhs ≤ rhs`, with `magnitude = lhs − rhs`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub name: String,
    pub magnitude: f64,
}

/// Everything computed for one graph. Serialized as one JSON line.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyRecord {
    pub graph_id: String,
    pub n: usize,
    pub m: usize,
    pub hoffman: Option<f64>,
    pub lima: Option<f64>,
    pub kolotilina: Option<f64>,
    pub ando_lin: Option<f64>,
    pub chi_v: f64,
    /// Lovász theta of the complement.
    pub theta: Option<f64>,
    /// Szegedy theta of the complement.
    pub theta_plus: Option<f64>,
    pub omega: Option<usize>,
    pub chi: Option<usize>,
    pub violations: Vec<Violation>,
    pub status: RecordStatus,
    pub kolotilina_components: Vec<ComponentBound>,
    pub notes: Vec<String>,
    #[serde(skip)]
    pub bounds: Option<BoundReport>,
}

impl VerifyRecord {
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("records always serialize")
    }

    pub fn has_violations(&self) -> bool {
        !self.violations.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyOptions {
    pub eps: f64,
    pub tolerance: f64,
    /// Also solve the Lovász and Szegedy programs on the complement.
    pub thetas: bool,
    /// Run the brute-force clique and chromatic oracles when within caps.
    pub oracles: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            eps: DEFAULT_EPS,
            tolerance: VERIFY_TOLERANCE,
            thetas: true,
            oracles: true,
        }
    }
}

/// Collects `lhs ≤ rhs + tol` checks.
pub(crate) struct Checks {
    tol: f64,
    violations: Vec<Violation>,
}

impl Checks {
    pub fn new(tol: f64) -> Self {
        Checks {
            tol,
            violations: Vec::new(),
        }
    }

    pub fn le(&mut self, name: &str, lhs: Option<f64>, rhs: Option<f64>) {
        if let (Some(l), Some(r)) = (lhs, rhs) {
            if l > r + self.tol {
                self.violations.push(Violation {
                    name: name.to_string(),
                    magnitude: l - r,
                });
            }
        }
    }

    pub fn into_violations(self) -> Vec<Violation> {
        self.violations
    }
}

/// Computes every bound, the vector chromatic number and, as requested, the
/// theta values and exact oracles; then checks each known inequality:
/// the three vector bounds against `χ_v`, all four bounds against `χ`, and
/// the chain `ω ≤ χ_v ≤ ϑ(Ḡ) ≤ ϑ⁺(Ḡ) ≤ χ`. Violations are recorded, never
/// raised.
pub fn verify_graph(g: &Graph, graph_id: &str, opts: &VerifyOptions) -> Result<VerifyRecord> {
    let n = g.n();
    let m = g.edge_count();
    let omega = (opts.oracles && n <= MAX_CLIQUE_ORACLE_N)
        .then(|| brute_force_clique(g))
        .transpose()?;
    let chi = (opts.oracles && n <= MAX_CHROMATIC_ORACLE_N)
        .then(|| brute_force_chromatic(g))
        .transpose()?;

    if m == 0 {
        return Ok(VerifyRecord {
            graph_id: graph_id.to_string(),
            n,
            m,
            hoffman: None,
            lima: None,
            kolotilina: None,
            ando_lin: None,
            chi_v: 1.0,
            theta: Some(1.0),
            theta_plus: Some(1.0),
            omega: Some(1),
            chi: Some(1),
            violations: Vec::new(),
            status: RecordStatus::Edgeless,
            kolotilina_components: Vec::new(),
            notes: vec![
                "edgeless graph: spectral bounds are undefined (degenerate input)".into(),
                "chi_v = 1 from the trace-normalised program; vector k-colourings require k >= 2".into(),
            ],
            bounds: None,
        });
    }

    let report = bounds::all_bounds(g)?;
    let solver = SolverOptions::with_eps(opts.eps);
    let chi_v_sol = sdp::chi_v_galtman_with(g, solver)?;
    let mut converged = chi_v_sol.is_converged();
    let chi_v = chi_v_sol.objective;

    let (theta, theta_plus) = if opts.thetas {
        let comp = g.complement();
        let lovasz = sdp::theta_with(&comp, ThetaVariant::Lovasz, solver)?;
        let szegedy = sdp::theta_with(&comp, ThetaVariant::Szegedy, solver)?;
        converged &= lovasz.is_converged() && szegedy.is_converged();
        (Some(lovasz.objective), Some(szegedy.objective))
    } else {
        (None, None)
    };

    let mut checks = Checks::new(opts.tolerance);
    let chi_f = chi.map(|c| c as f64);
    checks.le("hoffman_le_chi_v", Some(report.hoffman), Some(chi_v));
    checks.le("lima_le_chi_v", Some(report.lima), Some(chi_v));
    checks.le("kolotilina_le_chi_v", Some(report.kolotilina), Some(chi_v));
    checks.le("hoffman_le_chi", Some(report.hoffman), chi_f);
    checks.le("lima_le_chi", Some(report.lima), chi_f);
    checks.le("kolotilina_le_chi", Some(report.kolotilina), chi_f);
    checks.le("ando_lin_le_chi", Some(report.ando_lin), chi_f);
    checks.le("omega_le_chi_v", omega.map(|w| w as f64), Some(chi_v));
    checks.le("chi_v_le_theta", Some(chi_v), theta);
    checks.le("theta_le_theta_plus", theta, theta_plus);
    checks.le("theta_plus_le_chi", theta_plus, chi_f);
    checks.le("chi_v_le_chi", Some(chi_v), chi_f);
    let violations = checks.into_violations();

    let mut notes = Vec::new();
    if !report.connected {
        notes.push(format!(
            "disconnected: kolotilina evaluated on {} component(s) with edges",
            report.kolotilina_components.len()
        ));
    }
    let status = if !converged {
        RecordStatus::Unverifiable
    } else if violations.is_empty() {
        RecordStatus::Verified
    } else {
        RecordStatus::Violation
    };

    Ok(VerifyRecord {
        graph_id: graph_id.to_string(),
        n,
        m,
        hoffman: Some(report.hoffman),
        lima: Some(report.lima),
        kolotilina: Some(report.kolotilina),
        ando_lin: Some(report.ando_lin),
        chi_v,
        theta,
        theta_plus,
        omega,
        chi,
        violations,
        status,
        kolotilina_components: report.kolotilina_components.clone(),
        notes,
        bounds: Some(report),
    })
}
