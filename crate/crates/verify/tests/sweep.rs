//! End-to-end sweep behaviour at reduced parameters: reproducibility
//! across thread counts, store reuse, report round-tripping, and honest
//! failure under tampered floors.

use ffamily::FParams;
use verify::{
    run_with, smoke_sample, GlobalStatus, MemoryStore, NoStore, Targets, VerificationReport,
};

fn quick_params() -> FParams {
    FParams::new(20, 400, 8).unwrap()
}

fn quick_run(store: &dyn verify::WStore) -> VerificationReport {
    run_with(quick_params(), store, &Targets::smoke(), Some(&smoke_sample())).unwrap()
}

#[test]
fn report_round_trips_through_json() {
    let r = quick_run(&NoStore);
    let back = VerificationReport::from_json(&r.to_json()).unwrap();
    assert_eq!(r, back);
    assert_eq!(r.params.n0, 20);
    assert_eq!(r.cases.len(), 35);
    // Histogram buckets cover all 81 backward words.
    let total: u32 = r.restart_histogram.iter().map(|(_, n)| n).sum();
    assert_eq!(total, 81);
}

#[test]
fn identical_runs_agree_bit_for_bit_across_thread_counts() {
    let one = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap()
        .install(|| quick_run(&NoStore))
        .normalized();
    let two = rayon::ThreadPoolBuilder::new()
        .num_threads(2)
        .build()
        .unwrap()
        .install(|| quick_run(&NoStore))
        .normalized();
    assert_eq!(one, two);
}

#[test]
fn store_reuse_reproduces_the_report() {
    let store = MemoryStore::new();
    let cold = quick_run(&store).normalized();
    assert_eq!(store.len(), pattern::PATTERN_COUNT, "every window persisted");
    let warm = quick_run(&store).normalized();
    assert_eq!(cold, warm);
    assert_eq!(store.len(), pattern::PATTERN_COUNT, "no duplicate writes");
}

#[test]
fn tampered_floors_fail_with_witnesses() {
    let absurd = Targets { zero: 3.0, ..Targets::smoke() };
    let r = run_with(quick_params(), &NoStore, &absurd, Some(&smoke_sample())).unwrap();
    assert_eq!(r.global_status, GlobalStatus::Fail);
    assert!(!r.passed());
    let zero = r.worst_margins.zero.expect("zero margin present");
    assert!(zero.value < 3.0);
    assert_eq!(zero.witness.len(), 9, "witness names a window");
}

#[test]
fn sampled_sweep_reports_present_margins_consistently() {
    let r = quick_run(&NoStore);
    // The universal entries exist: the sample spans all center digits.
    for (name, m) in [
        ("zero", &r.worst_margins.zero),
        ("negpert", &r.worst_margins.negpert),
        ("pos_t0", &r.worst_margins.pos_t0),
        ("pos_t1", &r.worst_margins.pos_t1),
        ("pos_t2", &r.worst_margins.pos_t2),
    ] {
        let m = m.as_ref().unwrap_or_else(|| panic!("{name} missing"));
        assert!(m.value.is_finite());
    }
    // Forwarded cases carry exactly the computed follower floor.
    let t0 = r.worst_margins.pos_t0.as_ref().unwrap().value;
    for id in ["2.1", "2.2.1.4"] {
        let c = r.cases.iter().find(|c| c.id == id).unwrap();
        assert_eq!(c.min_margin, Some(t0));
    }
    // Each reported margin comes with a witness and vice versa.
    for c in &r.cases {
        assert_eq!(c.min_margin.is_some(), c.witness_pattern.is_some(), "case {}", c.id);
    }
    // The alternative reading appears only for the case that has one.
    for c in &r.cases {
        if c.alt_margin.is_some() {
            assert_eq!(c.id, "2.2.3.4");
        }
    }
}
