//! Exhaustive search over circulant graphs for a graph whose Ando–Lin bound
//! exceeds its vector chromatic number.
//!
//! Candidates are enumerated in a fixed order: `n` ascending, then the
//! connection set as a bitmask over offsets `1..=n/2`, ascending. Each
//! candidate has a global index, which is what checkpoints store.

use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::checkpoint::{SearchCheckpoint, CHECKPOINT_FORMAT_VERSION};
use super::{Checks, RecordStatus, VerifyRecord, VERIFY_TOLERANCE};
use crate::bounds;
use crate::error::{Error, Result};
use crate::graph::generators::circulant;
use crate::sdp::{self, SolverOptions, DEFAULT_EPS};

pub const MAX_SEARCH_N: usize = 24;

/// Tightening applied to `eps` before a candidate is reported.
const REFINE_FACTOR: f64 = 1e-2;

#[derive(Debug, Clone, PartialEq)]
pub struct SearchOptions {
    pub n_min: usize,
    pub n_max: usize,
    /// Keep one connection set per orbit of `S ↦ aS mod n`, `gcd(a, n) = 1`.
    pub dedup: bool,
    /// Flag a counterexample when `ando_lin > chi_v + margin`.
    pub margin: f64,
    pub eps: f64,
    pub workers: usize,
    /// Evaluate at most this many seeded random connection sets per `n`.
    pub sample_per_n: Option<usize>,
    pub seed: u64,
    /// Candidates evaluated between checkpoints.
    pub chunk: usize,
    /// Stop after this many records in this invocation (simulates an
    /// interruption; the checkpoint stays consistent).
    pub stop_after: Option<usize>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            n_min: 3,
            n_max: 12,
            dedup: true,
            margin: 1e-5,
            eps: DEFAULT_EPS,
            workers: 1,
            sample_per_n: None,
            seed: 0,
            chunk: 16,
            stop_after: None,
        }
    }
}

impl SearchOptions {
    fn validate(&self) -> Result<()> {
        if self.n_min < 3 || self.n_min > self.n_max || self.n_max > MAX_SEARCH_N {
            return Err(Error::InvalidParameter(format!(
                "circulant search needs 3 <= n_min <= n_max <= {MAX_SEARCH_N}, got {}..{}",
                self.n_min, self.n_max
            )));
        }
        if self.workers == 0 || self.chunk == 0 {
            return Err(Error::InvalidParameter("workers and chunk must be positive".into()));
        }
        Ok(())
    }

    fn fresh_checkpoint(&self) -> SearchCheckpoint {
        SearchCheckpoint {
            format_version: CHECKPOINT_FORMAT_VERSION,
            family: "circulant".into(),
            n_min: self.n_min,
            n_max: self.n_max,
            dedup: self.dedup,
            sample_per_n: self.sample_per_n,
            rng_seed: self.seed,
            cursor: 0,
            records_written: 0,
            skipped_disconnected: 0,
            skipped_symmetric: 0,
            counterexamples: 0,
            violations: 0,
            unverifiable: 0,
        }
    }

    fn matches(&self, cp: &SearchCheckpoint) -> bool {
        cp.family == "circulant"
            && cp.n_min == self.n_min
            && cp.n_max == self.n_max
            && cp.dedup == self.dedup
            && cp.sample_per_n == self.sample_per_n
            && cp.rng_seed == self.seed
    }
}

/// One connection set in enumeration order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Candidate {
    pub index: usize,
    pub n: usize,
    pub offsets: Vec<usize>,
}

fn offsets_of(mask: u32, half: usize) -> Vec<usize> {
    (1..=half).filter(|d| mask >> (d - 1) & 1 == 1).collect()
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Bitmask of `S` after reducing each offset to `min(d, n − d)`.
fn mask_of(offsets: impl Iterator<Item = usize>, n: usize) -> u32 {
    offsets.fold(0, |acc, d| {
        let d = d % n;
        let d = d.min(n - d);
        acc | 1 << (d - 1)
    })
}

/// Whether `offsets` is the smallest bitmask in its orbit under
/// multiplication by units of `Z_n`. Multiplier-equivalent connection sets
/// give isomorphic circulants.
pub fn is_multiplier_canonical(n: usize, offsets: &[usize]) -> bool {
    let mask = mask_of(offsets.iter().copied(), n);
    (2..n)
        .filter(|&a| gcd(a, n) == 1)
        .all(|a| mask_of(offsets.iter().map(|&d| a * d), n) >= mask)
}

/// All candidates for `n_min..=n_max` with their global indices.
pub fn circulant_candidates(opts: &SearchOptions) -> Vec<Candidate> {
    let mut out = Vec::new();
    let mut index = 0;
    for n in opts.n_min..=opts.n_max {
        let half = n / 2;
        let total = (1usize << half) - 1;
        let masks: Vec<u32> = match opts.sample_per_n {
            Some(k) if k < total => {
                let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ (n as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
                let mut picked: Vec<u32> = sample(&mut rng, total, k).into_iter().map(|i| i as u32 + 1).collect();
                picked.sort_unstable();
                picked
            }
            _ => (1..=total as u32).collect(),
        };
        for mask in masks {
            out.push(Candidate {
                index,
                n,
                offsets: offsets_of(mask, half),
            });
            index += 1;
        }
    }
    out
}

pub fn circulant_id(n: usize, offsets: &[usize]) -> String {
    let list: Vec<String> = offsets.iter().map(usize::to_string).collect();
    format!("circulant:{n}:{}", list.join(","))
}

#[derive(Debug, Clone, PartialEq)]
enum Outcome {
    Record(Box<VerifyRecord>),
    SkippedDisconnected,
    SkippedSymmetric,
}

/// Bounds and vector chromatic number of one connected circulant, with the
/// proven inequalities checked at [`VERIFY_TOLERANCE`] and the Ando–Lin
/// comparison at `margin`.
pub fn evaluate_circulant(n: usize, offsets: &[usize], eps: f64, margin: f64) -> Result<VerifyRecord> {
    let g = circulant(n, offsets)?;
    let report = bounds::all_bounds(&g)?;
    let mut sol = sdp::chi_v_galtman_with(&g, SolverOptions::with_eps(eps))?;
    let mut notes = Vec::new();
    // Objective error at a given eps grows with n (about 1e-5 on K_24 at the
    // default), so a candidate is re-solved tighter before it is flagged.
    if !sol.is_converged() || report.ando_lin > sol.objective + margin {
        let tight = eps * REFINE_FACTOR;
        let refined = sdp::chi_v_galtman_with(&g, SolverOptions::with_eps(tight))?;
        if refined.is_converged() || !sol.is_converged() {
            notes.push(format!("chi_v re-solved at eps {tight:e}: {} -> {}", sol.objective, refined.objective));
            sol = refined;
        }
    }
    let chi_v = sol.objective;

    let mut checks = Checks::new(VERIFY_TOLERANCE);
    checks.le("hoffman_le_chi_v", Some(report.hoffman), Some(chi_v));
    checks.le("lima_le_chi_v", Some(report.lima), Some(chi_v));
    checks.le("kolotilina_le_chi_v", Some(report.kolotilina), Some(chi_v));
    let proven = checks.into_violations();
    let mut open = Checks::new(margin);
    open.le("ando_lin_le_chi_v", Some(report.ando_lin), Some(chi_v));
    let open = open.into_violations();

    let status = if !sol.is_converged() {
        RecordStatus::Unverifiable
    } else if !proven.is_empty() {
        RecordStatus::Violation
    } else if !open.is_empty() {
        RecordStatus::Counterexample
    } else {
        RecordStatus::Verified
    };
    let mut violations = proven;
    violations.extend(open);
    Ok(VerifyRecord {
        graph_id: circulant_id(n, offsets),
        n,
        m: report.m,
        hoffman: Some(report.hoffman),
        lima: Some(report.lima),
        kolotilina: Some(report.kolotilina),
        ando_lin: Some(report.ando_lin),
        chi_v,
        theta: None,
        theta_plus: None,
        omega: None,
        chi: None,
        violations,
        status,
        kolotilina_components: report.kolotilina_components.clone(),
        notes,
        bounds: Some(report),
    })
}

fn evaluate(candidate: &Candidate, opts: &SearchOptions) -> Result<Outcome> {
    let Candidate { n, offsets, .. } = candidate;
    if offsets.iter().fold(*n, |g, &d| gcd(g, d)) != 1 {
        return Ok(Outcome::SkippedDisconnected);
    }
    if opts.dedup && !is_multiplier_canonical(*n, offsets) {
        return Ok(Outcome::SkippedSymmetric);
    }
    evaluate_circulant(*n, offsets, opts.eps, opts.margin).map(|r| Outcome::Record(Box::new(r)))
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct SearchSummary {
    pub candidates: usize,
    pub records: usize,
    pub counterexamples: usize,
    pub violations: usize,
    pub unverifiable: usize,
    pub skipped_disconnected: usize,
    pub skipped_symmetric: usize,
    /// False when the run stopped early via `stop_after`.
    pub complete: bool,
}

impl SearchSummary {
    fn from_checkpoint(cp: &SearchCheckpoint, candidates: usize) -> Self {
        SearchSummary {
            candidates,
            records: cp.records_written,
            counterexamples: cp.counterexamples,
            violations: cp.violations,
            unverifiable: cp.unverifiable,
            skipped_disconnected: cp.skipped_disconnected,
            skipped_symmetric: cp.skipped_symmetric,
            complete: cp.cursor == candidates,
        }
    }

    /// True when nothing was flagged.
    pub fn is_clean(&self) -> bool {
        self.counterexamples == 0 && self.violations == 0
    }
}

/// Core loop: evaluates candidates from `state.cursor` onward in chunks,
/// hands each record to `sink` in enumeration order and calls `commit` at
/// every chunk boundary with the updated state.
fn drive(
    opts: &SearchOptions,
    state: &mut SearchCheckpoint,
    mut sink: impl FnMut(&VerifyRecord) -> Result<()>,
    mut commit: impl FnMut(&SearchCheckpoint) -> Result<()>,
) -> Result<SearchSummary> {
    opts.validate()?;
    let candidates = circulant_candidates(opts);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.workers)
        .build()
        .map_err(|e| Error::InvalidParameter(format!("cannot start worker pool: {e}")))?;
    let mut emitted = 0;
    while state.cursor < candidates.len() {
        let budget = opts.stop_after.map(|s| s.saturating_sub(emitted));
        if budget == Some(0) {
            break;
        }
        let end = (state.cursor + opts.chunk).min(candidates.len());
        let batch = &candidates[state.cursor..end];
        let outcomes: Vec<Result<Outcome>> = pool.install(|| batch.par_iter().map(|c| evaluate(c, opts)).collect());
        for outcome in outcomes {
            if opts.stop_after.is_some_and(|s| emitted >= s) {
                break;
            }
            match outcome? {
                Outcome::SkippedDisconnected => state.skipped_disconnected += 1,
                Outcome::SkippedSymmetric => state.skipped_symmetric += 1,
                Outcome::Record(record) => {
                    sink(&record)?;
                    emitted += 1;
                    state.records_written += 1;
                    match record.status {
                        RecordStatus::Counterexample => state.counterexamples += 1,
                        RecordStatus::Violation => state.violations += 1,
                        RecordStatus::Unverifiable => state.unverifiable += 1,
                        _ => {}
                    }
                }
            }
            state.cursor += 1;
        }
        commit(state)?;
    }
    Ok(SearchSummary::from_checkpoint(state, candidates.len()))
}

/// In-memory search: every record is passed to `sink` in enumeration order.
pub fn search_circulants(
    opts: &SearchOptions,
    sink: impl FnMut(&VerifyRecord) -> Result<()>,
) -> Result<SearchSummary> {
    let mut state = opts.fresh_checkpoint();
    drive(opts, &mut state, sink, |_| Ok(()))
}

fn io_error(path: &Path, e: std::io::Error) -> Error {
    Error::MalformedInput(format!("{}: {e}", path.display()))
}

/// Cuts `path` back to its first `lines` complete lines, discarding any
/// partially written tail from an interrupted run.
fn truncate_to_lines(path: &Path, lines: usize) -> Result<()> {
    let file = File::open(path).map_err(|e| io_error(path, e))?;
    let mut reader = BufReader::new(file);
    let mut keep = 0u64;
    let mut buf = Vec::new();
    for seen in 0..lines {
        buf.clear();
        let read = reader.read_until(b'\n', &mut buf).map_err(|e| io_error(path, e))?;
        if read == 0 || buf.last() != Some(&b'\n') {
            return Err(Error::MalformedInput(format!(
                "{} holds {seen} complete records but the checkpoint expects {lines}",
                path.display()
            )));
        }
        keep += read as u64;
    }
    let file = OpenOptions::new().write(true).open(path).map_err(|e| io_error(path, e))?;
    file.set_len(keep).map_err(|e| io_error(path, e))
}

/// File-backed search. Records are appended to `out` as JSON lines; when
/// `checkpoint` is given, progress is saved after every chunk and an
/// existing checkpoint is resumed (the output is first truncated to the
/// records the checkpoint vouches for).
pub fn run_search(opts: &SearchOptions, out: &Path, checkpoint: Option<&Path>) -> Result<SearchSummary> {
    opts.validate()?;
    let mut state = match checkpoint.filter(|p| p.exists()) {
        Some(path) => {
            let cp = SearchCheckpoint::load(path)?;
            if !opts.matches(&cp) {
                return Err(Error::InvalidParameter(format!(
                    "checkpoint {} was written for different search parameters",
                    path.display()
                )));
            }
            truncate_to_lines(out, cp.records_written)?;
            cp
        }
        None => {
            File::create(out).map_err(|e| io_error(out, e))?;
            opts.fresh_checkpoint()
        }
    };
    if let Some(path) = checkpoint {
        state.save(path)?;
    }

    let file = OpenOptions::new().append(true).open(out).map_err(|e| io_error(out, e))?;
    let writer = std::cell::RefCell::new(BufWriter::new(file));
    drive(
        opts,
        &mut state,
        |record| {
            let mut w = writer.borrow_mut();
            writeln!(w, "{}", record.to_json_line()).map_err(|e| io_error(out, e))
        },
        |state| {
            writer.borrow_mut().flush().map_err(|e| io_error(out, e))?;
            match checkpoint {
                Some(path) => state.save(path),
                None => Ok(()),
            }
        },
    )
}
