//! Acceptance run: each criterion executes at its stated tolerance and
//! prints one PASS or FAIL line. Exits non-zero if any criterion fails.
//!
//! Criteria that exercise the command line go through the built binary;
//! the property suites call the library directly.

use std::fs;
use std::panic::{self, AssertUnwindSafe};
use std::path::Path;
use std::process::{Command, ExitCode, Output};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;
use tempfile::TempDir;
use vchrom::bounds::{generalized_lima, hoffman_bound, weighted_kolotilina, WeightMatrix};
use vchrom::graph::generators::random_graph;
use vchrom::io::{parse_graph6, write_graph6};
use vchrom::sdp::{self, SolverOptions, FEASIBILITY_MAX_ITERATIONS};
use vchrom::spectra::{adjacency_matrix, energy_split, majorizes, random_correlation_matrix, schur_product, spectrum, SymmetricMatrix};
use vchrom::Graph;

type Check = Result<String, String>;
type Criterion<'a> = (u32, &'static str, Box<dyn Fn() -> Check + 'a>);

fn vchrom(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vchrom"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Runs a command that prints a single number.
fn number(args: &[&str]) -> Result<f64, String> {
    let out = vchrom(args);
    let text = String::from_utf8_lossy(&out.stdout);
    ensure(out.status.success(), || {
        format!("{args:?} exited {:?}: {}", out.status.code(), String::from_utf8_lossy(&out.stderr))
    })?;
    text.trim().parse().map_err(|e| format!("{args:?} printed {text:?}: {e}"))
}

/// Runs `bounds` and returns the named row.
fn bound(spec: &str, key: &str) -> Result<f64, String> {
    let out = vchrom(&["bounds", "--gen", spec, "--digits", "10"]);
    ensure(out.status.success(), || format!("bounds --gen {spec} failed"))?;
    let text = String::from_utf8_lossy(&out.stdout).into_owned();
    text.lines()
        .find_map(|l| l.strip_prefix(key).filter(|r| r.starts_with(' ')))
        .ok_or_else(|| format!("no {key} row for {spec}"))?
        .trim()
        .parse()
        .map_err(|e| format!("{key}: {e}"))
}

fn chi_v(spec: &str) -> Result<f64, String> {
    number(&["chiv", "--gen", spec, "--digits", "10"])
}

fn near(name: &str, got: f64, want: f64, tol: f64) -> Result<String, String> {
    ensure((got - want).abs() <= tol, || format!("{name} = {got}, expected {want} ± {tol:e}"))?;
    Ok(format!("{name} = {got:.6}"))
}

fn within(elapsed: Duration, limit_secs: u64) -> Result<(), String> {
    ensure(elapsed <= Duration::from_secs(limit_secs), || {
        format!("took {elapsed:.1?}, limit {limit_secs} s")
    })
}

fn c1_theta_c5() -> Check {
    let t = Instant::now();
    let theta = number(&["theta", "--gen", "cycle:5", "--variant", "lovasz", "--digits", "10"])?;
    within(t.elapsed(), 5)?;
    near("theta(C5)", theta, 5f64.sqrt(), 1e-4)
}

fn c2_petersen() -> Check {
    let t = Instant::now();
    let mut parts = vec![near("chi_v", chi_v("petersen")?, 2.5, 1e-4)?];
    for key in ["hoffman", "lima", "kolotilina"] {
        parts.push(near(key, bound("petersen", key)?, 2.5, 1e-6)?);
    }
    within(t.elapsed(), 10)?;
    Ok(parts.join(", "))
}

fn c3_clebsch() -> Check {
    let t = Instant::now();
    let parts = [
        near("chi_v", chi_v("clebsch")?, 8.0 / 3.0, 1e-3)?,
        near("hoffman", bound("clebsch", "hoffman")?, 8.0 / 3.0, 1e-6)?,
    ];
    within(t.elapsed(), 60)?;
    Ok(parts.join(", "))
}

fn c4_kneser() -> Check {
    let mut parts = Vec::new();
    for (p, k) in [(5, 2), (6, 2), (7, 3)] {
        let spec = format!("kneser:{p},{k}");
        parts.push(near(&format!("chi_v K({p},{k})"), chi_v(&spec)?, p as f64 / k as f64, 1e-3)?);
    }
    Ok(parts.join(", "))
}

fn c5_orthogonality() -> Check {
    let cv = near("chi_v", chi_v("orthogonality:4")?, 4.0, 1e-3)?;
    let h = near("hoffman", bound("orthogonality:4", "hoffman")?, 4.0, 1e-3)?;
    Ok(format!("{cv}, {h}"))
}

/// 10⁴ seeded connected graphs with 4 ≤ n ≤ 8, as graph6.
fn write_chain_corpus(path: &Path) -> usize {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut lines = String::new();
    let mut count = 0;
    while count < 10_000 {
        let n = rng.random_range(4..=8);
        let p = rng.random_range(0.2..0.9);
        let g = random_graph(n, p, rng.random()).unwrap();
        if !g.is_connected() {
            continue;
        }
        lines.push_str(std::str::from_utf8(&write_graph6(&g).unwrap()).unwrap());
        lines.push('\n');
        count += 1;
    }
    fs::write(path, lines).unwrap();
    count
}

fn read_records(path: &Path) -> Vec<Value> {
    fs::read_to_string(path)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

fn c6_chain(dir: &Path) -> Check {
    let corpus = dir.join("chain.g6");
    let out = dir.join("chain.jsonl");
    let count = write_chain_corpus(&corpus);
    let t = Instant::now();
    let run = vchrom(&["verify", "--corpus", corpus.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    let elapsed = t.elapsed();
    let records = read_records(&out);
    ensure(records.len() == count, || format!("{} records for {count} graphs", records.len()))?;
    let flagged: Vec<&Value> = records.iter().filter(|r| !r["violations"].as_array().unwrap().is_empty()).collect();
    ensure(flagged.is_empty(), || {
        format!("{} graphs with violations, first {}", flagged.len(), flagged[0])
    })?;
    let oracles = records.iter().all(|r| r["omega"].is_u64() && r["chi"].is_u64() && r["theta_plus"].is_f64());
    ensure(oracles, || "some record lacks omega, chi or theta_plus".into())?;
    let unverifiable = records.iter().filter(|r| r["status"] == "unverifiable").count();
    ensure(unverifiable == 0, || format!("{unverifiable} unverifiable records"))?;
    ensure(run.status.code() == Some(0), || format!("verify exited {:?}", run.status.code()))?;
    within(elapsed, 30 * 60)?;
    Ok(format!("{count} graphs, 0 violations in {elapsed:.1?}"))
}

fn c7_search(dir: &Path) -> Check {
    let out = dir.join("search.jsonl");
    let t = Instant::now();
    let run = vchrom(&[
        "search",
        "--family",
        "circulant",
        "--n",
        "3..16",
        "--no-dedup",
        "--out",
        out.to_str().unwrap(),
    ]);
    let elapsed = t.elapsed();
    ensure(run.status.code() == Some(0), || {
        format!("search exited {:?}: {}", run.status.code(), String::from_utf8_lossy(&run.stdout))
    })?;
    let records = read_records(&out);
    // every S ⊆ {1..n/2} with gcd(S ∪ {n}) = 1, counted independently
    let gcd = |mut a: usize, mut b: usize| {
        while b != 0 {
            (a, b) = (b, a % b);
        }
        a
    };
    let expected: usize = (3..=16usize)
        .map(|n| {
            (1u32..1 << (n / 2))
                .filter(|mask| (1..=n / 2).filter(|d| mask >> (d - 1) & 1 == 1).fold(n, gcd) == 1)
                .count()
        })
        .sum();
    ensure(records.len() == expected, || format!("{} records, expected {expected}", records.len()))?;
    let worst = records
        .iter()
        .map(|r| r["ando_lin"].as_f64().unwrap() - r["chi_v"].as_f64().unwrap())
        .fold(f64::NEG_INFINITY, f64::max);
    ensure(worst <= 1e-5, || format!("ando_lin exceeds chi_v by {worst:e}"))?;
    ensure(records.iter().all(|r| r["status"] == "verified"), || "a record is not verified".into())?;
    within(elapsed, 60 * 60)?;
    Ok(format!(
        "{expected} connected circulants, 0 counterexamples, max(ando_lin - chi_v) = {worst:.1e}, {elapsed:.1?}"
    ))
}

fn connected_corpus(count: usize, seed: u64) -> Vec<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let g = random_graph(rng.random_range(4..=9), rng.random_range(0.25..0.85), rng.random()).unwrap();
        if g.is_connected() {
            out.push(g);
        }
    }
    out
}

fn c8_properties() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(8);

    for trial in 0..500u64 {
        let n = 2 + (trial as usize % 11);
        let phi = random_correlation_matrix(n, trial).unwrap();
        let x = SymmetricMatrix::from_upper_fn(n, |_, _| rng.random_range(-1.0..1.0));
        let (a, b) = (spectrum(&x).unwrap(), spectrum(&schur_product(&phi, &x).unwrap()).unwrap());
        ensure(majorizes(&a, &b, 1e-8 * n as f64).unwrap(), || format!("majorization trial {trial}"))?;
    }

    let corpus = connected_corpus(200, 81);
    for g in &corpus {
        let split = energy_split(&adjacency_matrix(g), None).unwrap();
        let gap = (split.s_plus + split.s_minus - 2.0 * g.edge_count() as f64).abs();
        ensure(gap <= 1e-6, || format!("s+ + s- off by {gap:e} on {g:?}"))?;
    }

    for seed in 0..1000 {
        let g = random_graph(rng.random_range(1..=64), rng.random_range(0.0..=1.0), seed).unwrap();
        let text = write_graph6(&g).unwrap();
        ensure(parse_graph6(&text).unwrap() == g, || format!("graph6 round trip, seed {seed}"))?;
    }

    let bisect_opts = SolverOptions {
        max_iterations: FEASIBILITY_MAX_ITERATIONS,
        ..SolverOptions::default()
    };
    let mut worst_agreement: f64 = 0.0;
    for g in &corpus[..50] {
        let direct = sdp::chi_v_galtman(g, 1e-7).unwrap().objective;
        let bisect = sdp::chi_v_bisect_with(g, 1e-4, bisect_opts).unwrap().value;
        worst_agreement = worst_agreement.max((direct - bisect).abs());
    }
    ensure(worst_agreement <= 2e-3, || format!("galtman vs bisection differ by {worst_agreement:e}"))?;

    let mut draws = 0;
    for g in &corpus[..20] {
        let cap = sdp::chi_v_galtman(g, 1e-7).unwrap().objective + 1e-4;
        let mut drawn = 0;
        while drawn < 200 {
            let mut m = SymmetricMatrix::zeros(g.n());
            for (i, j) in g.edges() {
                if rng.random_bool(0.8) {
                    m.set(i, j, rng.random_range(0.0..2.0));
                }
            }
            if m.off_diagonal_sum() <= 1e-6 {
                continue;
            }
            let w = WeightMatrix::new(g, m.clone()).unwrap();
            for i in 0..g.n() {
                m.set(i, i, rng.random_range(0.0..3.0));
            }
            let wd = WeightMatrix::new(g, m).unwrap();
            for (name, value) in [
                ("weighted hoffman", hoffman_bound(&w).unwrap()),
                ("generalized lima", generalized_lima(&wd).unwrap()),
                ("weighted kolotilina", weighted_kolotilina(&wd).unwrap()),
            ] {
                ensure(value <= cap, || format!("{name} {value} above chi_v on {g:?}"))?;
            }
            drawn += 1;
            draws += 1;
        }
    }
    Ok(format!(
        "500 majorization trials, 200 energy splits, 1000 graph6 round trips, \
         galtman/bisection within {worst_agreement:.1e}, {draws} weightings"
    ))
}

fn c9_degenerate(dir: &Path) -> Check {
    let bounds = vchrom(&["bounds", "--g6", "D??"]);
    ensure(bounds.status.code() == Some(2), || "bounds on an edgeless graph did not fail".into())?;
    let err = String::from_utf8_lossy(&bounds.stderr);
    ensure(err.contains("degenerate"), || format!("unexpected error: {err}"))?;

    let out = dir.join("edgeless.jsonl");
    let run = vchrom(&["verify", "--g6", "D??", "--out", out.to_str().unwrap()]);
    ensure(run.status.code() == Some(0), || "verify on an edgeless graph failed".into())?;
    let rec = &read_records(&out)[0];
    ensure(rec["chi_v"] == 1.0 && rec["status"] == "edgeless" && rec["hoffman"].is_null(), || {
        format!("edgeless record {rec}")
    })?;

    let edges = dir.join("split.edges");
    fs::write(&edges, "9\n0 1\n1 2\n2 3\n3 4\n4 0\n5 6\n6 7\n7 5\n").unwrap();
    let out = dir.join("split.jsonl");
    let run = vchrom(&["verify", "--edges", edges.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    ensure(run.status.code() == Some(0), || "verify on a disconnected graph failed".into())?;
    let rec = &read_records(&out)[0];
    let parts: Vec<(Value, f64)> = rec["kolotilina_components"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| (c["vertices"].clone(), c["value"].as_f64().unwrap()))
        .collect();
    ensure(parts.len() == 2, || format!("components {parts:?}"))?;
    ensure((parts[0].1 - 5f64.sqrt()).abs() <= 1e-6 && (parts[1].1 - 3.0).abs() <= 1e-6, || {
        format!("component values {parts:?}")
    })?;
    let printed = String::from_utf8_lossy(&run.stdout);
    ensure(printed.contains("kolotilina on component [5, 6, 7]"), || "components not printed".into())?;
    Ok("edgeless: bounds rejected, chi_v = 1; C5 + K3: kolotilina 2.2361 and 3.0000 per component".into())
}

fn main() -> ExitCode {
    let dir = TempDir::new().unwrap();
    let path = dir.path();
    let criteria: Vec<Criterion> = vec![
        (1, "theta of the five-cycle", Box::new(c1_theta_c5)),
        (2, "Petersen graph", Box::new(c2_petersen)),
        (3, "Clebsch graph", Box::new(c3_clebsch)),
        (4, "Kneser family", Box::new(c4_kneser)),
        (5, "orthogonality graph of dimension 4", Box::new(c5_orthogonality)),
        (6, "bound and theta chain on 10^4 graphs", Box::new(move || c6_chain(path))),
        (7, "circulant search 3 <= n <= 16", Box::new(move || c7_search(path))),
        (8, "property suites", Box::new(c8_properties)),
        (9, "degenerate inputs", Box::new(move || c9_degenerate(path))),
    ];
    let mut failed = 0;
    for (id, name, check) in &criteria {
        let start = Instant::now();
        let result = panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("PASS {id} {name} ({secs:.1} s): {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL {id} {name} ({secs:.1} s): {detail}");
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
