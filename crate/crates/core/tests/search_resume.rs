//! Circulant search: determinism, checkpoint/resume and parallel output.

use std::fs;
use std::io::Write;

use tempfile::tempdir;
use vchrom::harness::{run_search, search_circulants, SearchCheckpoint, SearchOptions};

fn options() -> SearchOptions {
    SearchOptions {
        n_min: 3,
        n_max: 12,
        dedup: false,
        chunk: 7,
        ..SearchOptions::default()
    }
}

#[test]
fn small_sweep_is_clean() {
    let summary = search_circulants(&options(), |_| Ok(())).unwrap();
    assert!(summary.complete && summary.is_clean());
    assert_eq!(summary.unverifiable, 0);
    assert_eq!(summary.records + summary.skipped_disconnected, summary.candidates);
}

#[test]
fn interrupted_runs_resume_to_identical_output() {
    let dir = tempdir().unwrap();
    let whole = dir.path().join("whole.jsonl");
    let reference = run_search(&options(), &whole, None).unwrap();
    let expected = fs::read(&whole).unwrap();
    assert!(reference.records > 100);

    let out = dir.path().join("out.jsonl");
    let cp = dir.path().join("search.ckpt");
    let first = run_search(
        &SearchOptions {
            stop_after: Some(100),
            ..options()
        },
        &out,
        Some(&cp),
    )
    .unwrap();
    assert!(!first.complete);
    assert_eq!(first.records, 100);
    assert_eq!(SearchCheckpoint::load(&cp).unwrap().records_written, 100);
    assert_eq!(fs::read_to_string(&out).unwrap().lines().count(), 100);

    // two more short hops, then run to completion
    for _ in 0..2 {
        run_search(
            &SearchOptions {
                stop_after: Some(13),
                ..options()
            },
            &out,
            Some(&cp),
        )
        .unwrap();
    }
    let done = run_search(&options(), &out, Some(&cp)).unwrap();
    assert!(done.complete);
    assert_eq!(done, reference);
    assert_eq!(fs::read(&out).unwrap(), expected);
}

#[test]
fn torn_trailing_record_is_discarded_on_resume() {
    let dir = tempdir().unwrap();
    let whole = dir.path().join("whole.jsonl");
    run_search(&options(), &whole, None).unwrap();

    let out = dir.path().join("out.jsonl");
    let cp = dir.path().join("search.ckpt");
    let partial = SearchOptions {
        stop_after: Some(40),
        ..options()
    };
    run_search(&partial, &out, Some(&cp)).unwrap();
    // a crash in the middle of writing the next record
    fs::OpenOptions::new()
        .append(true)
        .open(&out)
        .unwrap()
        .write_all(b"{\"graph_id\":\"circulant:9:1,")
        .unwrap();
    run_search(&options(), &out, Some(&cp)).unwrap();
    assert_eq!(fs::read(&out).unwrap(), fs::read(&whole).unwrap());
}

#[test]
fn resume_rejects_changed_parameters() {
    let dir = tempdir().unwrap();
    let out = dir.path().join("out.jsonl");
    let cp = dir.path().join("search.ckpt");
    let partial = SearchOptions {
        stop_after: Some(5),
        ..options()
    };
    run_search(&partial, &out, Some(&cp)).unwrap();
    let changed = SearchOptions {
        n_max: 13,
        ..options()
    };
    assert!(run_search(&changed, &out, Some(&cp)).is_err());
}

#[test]
fn checkpoint_missing_records_is_an_error() {
    let dir = tempdir().unwrap();
    let out = dir.path().join("out.jsonl");
    let cp = dir.path().join("search.ckpt");
    run_search(
        &SearchOptions {
            stop_after: Some(20),
            ..options()
        },
        &out,
        Some(&cp),
    )
    .unwrap();
    fs::write(&out, "").unwrap();
    assert!(run_search(&options(), &out, Some(&cp)).is_err());
}

#[test]
fn parallel_workers_match_serial_output() {
    let dir = tempdir().unwrap();
    let serial = dir.path().join("serial.jsonl");
    let parallel = dir.path().join("parallel.jsonl");
    run_search(&options(), &serial, None).unwrap();
    run_search(
        &SearchOptions {
            workers: 3,
            chunk: 32,
            ..options()
        },
        &parallel,
        None,
    )
    .unwrap();
    assert_eq!(fs::read(&serial).unwrap(), fs::read(&parallel).unwrap());
}

#[test]
fn dedup_keeps_one_set_per_multiplier_orbit() {
    let all = search_circulants(&options(), |_| Ok(())).unwrap();
    let dedup = search_circulants(
        &SearchOptions {
            dedup: true,
            ..options()
        },
        |_| Ok(()),
    )
    .unwrap();
    assert_eq!(dedup.candidates, all.candidates);
    assert!(dedup.skipped_symmetric > 0);
    assert_eq!(
        dedup.records + dedup.skipped_symmetric + dedup.skipped_disconnected,
        dedup.candidates
    );
}
