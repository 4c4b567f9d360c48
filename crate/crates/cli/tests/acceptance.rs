//! Acceptance suite: one PASS/FAIL line per criterion. All tolerances are
//! exact equality or exact comparison.
//!
//! Run with `cargo test -p blockinv --test acceptance -- --nocapture`.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::process::Command;

use blockinv_core::block::{
    k0_B, k_B, k_B_sl_upper, weighted_decomposition_sum, BlockParams, LevelWeights,
};
use blockinv_core::bounds::ledger::{check_all, summarize, Expectation, LedgerGrid};
use blockinv_core::bounds::expr::Verdict;
use blockinv_core::groups::{
    brute_class_count_of, class_count, derived_class_count, derived_order, group_order,
    parse_group_spec, GroupSpec, DEFAULT_ORDER_CAP,
};
use blockinv_core::partition::multipartition_count;
use blockinv_core::verifier::{check_conjecture, sweep, ConjVerdict, Mode, SweepGrid};
use blockinv_core::{Ell, Nat};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

type Outcome = Result<String, Vec<String>>;
type Criterion = (&'static str, fn() -> Outcome);

fn nat(v: u64) -> Nat {
    Nat::from(v)
}

fn expect_eq(fails: &mut Vec<String>, what: &str, got: Nat, want: u64) {
    if got != nat(want) {
        fails.push(format!("{what}: got {got}, want {want}"));
    }
}

fn outcome(fails: Vec<String>, detail: String) -> Outcome {
    if fails.is_empty() {
        Ok(detail)
    } else {
        Err(fails)
    }
}

fn golden_values() -> Outcome {
    let mut f = Vec::new();
    for (w, want) in [(3, 24), (6, 270), (9, 2043)] {
        expect_eq(&mut f, &format!("k(3,1,1,{w})"), k_B(&BlockParams::gl3(1, 1, w).unwrap()), want);
    }
    expect_eq(&mut f, "ell=2 1mod4 a=3 w=2", k_B(&BlockParams::gl2_one_plus_four(3, 2).unwrap()), 48);
    for (atilde, table) in [(3, &[(1, 2), (2, 12), (4, 94), (8, 2908)][..]), (2, &[(1, 2), (2, 8), (3, 16)][..])] {
        for &(w, want) in table {
            let p = BlockParams::gl2_three_mod4(atilde, w).unwrap();
            expect_eq(&mut f, &format!("3mod4 atilde={atilde} w={w}"), k_B(&p), want);
        }
    }
    for (w, want) in [(3, 9), (6, 54), (9, 27)] {
        expect_eq(&mut f, &format!("k0 ell=3 a=1 w={w}"), k0_B(&BlockParams::gl3(1, 1, w).unwrap()), want);
    }
    let sl = check_conjecture(&BlockParams::gl3(1, 1, 3).unwrap(), Mode::Sl, DEFAULT_ORDER_CAP).unwrap();
    expect_eq(&mut f, "SL a=1 w=3 k(B)", sl.kB.value, 16);
    expect_eq(&mut f, "SL a=1 w=3 k0(B)", sl.k0B.value, 6);
    expect_eq(&mut f, "SL a=1 w=6 upper bound", k_B_sl_upper(1, 6).unwrap(), 117);
    expect_eq(&mut f, "SL a=1 w=9 upper bound", k_B_sl_upper(1, 9).unwrap(), 745);
    outcome(f, "18 values".into())
}

fn group_cross_validation() -> Outcome {
    let mut f = Vec::new();
    let mut checked = 0;
    for &(text, pinned) in common::GROUP_SUITE {
        let spec = parse_group_spec(text).unwrap();
        if group_order(&spec) > nat(DEFAULT_ORDER_CAP) {
            continue;
        }
        let k = class_count(&spec);
        match brute_class_count_of(&spec, DEFAULT_ORDER_CAP) {
            Ok(b) if b == k => {}
            Ok(b) => f.push(format!("{text}: formula {k}, brute force {b}")),
            Err(e) => f.push(format!("{text}: {e}")),
        }
        if let Some(v) = pinned {
            expect_eq(&mut f, text, k, v);
        }
        checked += 1;
    }
    if checked < 12 {
        f.push(format!("only {checked} specs under the cap"));
    }
    for atilde in 2..=5u32 {
        let k = derived_class_count(&GroupSpec::semidihedral(atilde), DEFAULT_ORDER_CAP).unwrap();
        expect_eq(&mut f, &format!("k(SD') atilde={atilde}"), k, 1 << atilde);
    }
    let d = derived_order(&GroupSpec::d_factor(Ell::Three, 1, 1), DEFAULT_ORDER_CAP).unwrap();
    expect_eq(&mut f, "|D~'|", d, 9);
    outcome(f, format!("{checked} specs, 4 derived subgroups, |D~'| = 9"))
}

fn bounds_ledger() -> Outcome {
    let reports = check_all(&LedgerGrid::default());
    let sum = summarize(&reports);
    let mut f: Vec<String> = reports
        .iter()
        .filter(|r| !r.as_expected())
        .take(10)
        .map(|r| format!("{} [{}]: {:?}, expected {:?}", r.lemma_id, r.instance, r.verdict, r.expected))
        .collect();
    let undecided_plain = reports
        .iter()
        .filter(|r| r.verdict == Verdict::Undecided && r.rhs.0.iter().all(|e| e.sqrt_term.is_none()))
        .count();
    if undecided_plain > 0 {
        f.push(format!("{undecided_plain} undecided outside the sqrt family"));
    }
    let fails: Vec<_> = reports.iter().filter(|r| r.expected == Expectation::Fails).collect();
    if fails.len() != 1 || fails[0].lemma_id != "plw_p3" || fails[0].verdict != Verdict::Fails {
        f.push("registered failure set is not exactly plw_p3 at w = 3".into());
    }
    let reported: Vec<_> = reports.iter().filter(|r| r.expected == Expectation::Reported).collect();
    if reported.len() != 1 || reported[0].lemma_id != "nrcharacters_kd" {
        f.push("reported set is not exactly nrcharacters_kd at i = 1".into());
    }
    outcome(
        f,
        format!("{} instances, {} hold, {} fail (registered or reported), {} undecided", sum.total, sum.holds, sum.fails, sum.undecided),
    )
}

fn conjecture_sweeps() -> Outcome {
    let reports = sweep(&SweepGrid::default()).unwrap();
    let f: Vec<String> = reports
        .iter()
        .filter(|r| r.c1_verdict != ConjVerdict::Verified || r.c2_verdict != ConjVerdict::Verified)
        .take(10)
        .map(|r| format!("{} {:?}: C1 {}, C2 {}", r.mode, r.params, r.c1_verdict, r.c2_verdict))
        .collect();
    let sl = reports.iter().filter(|r| r.mode == Mode::Sl).count();
    outcome(f, format!("{} points ({sl} SL), all Verified", reports.len()))
}

fn oracle_equivalence() -> Outcome {
    let mut f = Vec::new();
    let config = Config { cases: 200, failure_persistence: None, ..Config::default() };
    let mut runner = TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha));
    let strategy = (
        prop_oneof![Just(Ell::Two), Just(Ell::Three)],
        prop::collection::vec(1u64..=12, 0..=3),
        1u64..=12,
        0usize..=25,
    );
    let run = runner.run(&strategy, |(ell, head, tail, w)| {
        let fast = weighted_decomposition_sum(ell, &LevelWeights::new(head.clone(), tail), w);
        prop_assert_eq!(fast, common::weighted_sum(ell.value() as usize, &head, tail, w));
        Ok(())
    });
    if let Err(e) = run {
        f.push(format!("weighted_decomposition_sum: {e}"));
    }
    for s in 1..=8usize {
        for t in 0..=12usize {
            let want = common::multipartitions_by_splits(s, t);
            if multipartition_count(s as u64, t) != want {
                f.push(format!("k({s},{t}) != {want}"));
            }
        }
    }
    outcome(f, "200 weighted sums, 104 multipartition counts".into())
}

fn determinism() -> Outcome {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_blockinv"))
            .arg("sweep")
            .env_remove("BLOCKINV_CAP")
            .output()
            .expect("spawn blockinv")
    };
    let (a, b) = (run(), run());
    let mut f = Vec::new();
    if !a.status.success() || !b.status.success() {
        f.push(format!("exit status {} / {}", a.status, b.status));
    }
    if a.stdout != b.stdout {
        f.push("reports differ".into());
    }
    if a.stdout.is_empty() {
        f.push("empty report".into());
    }
    outcome(f, format!("{} identical bytes", a.stdout.len()))
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 6] = [
        ("golden values", golden_values),
        ("group-engine cross-validation", group_cross_validation),
        ("bounds ledger", bounds_ledger),
        ("conjecture sweeps", conjecture_sweeps),
        ("oracle equivalence", oracle_equivalence),
        ("determinism", determinism),
    ];
    let mut failed = Vec::new();
    println!();
    for (n, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS {}. {name} (exact): {detail}", n + 1),
            Err(reasons) => {
                println!("FAIL {}. {name} (exact)", n + 1);
                for r in &reasons {
                    println!("     {r}");
                }
                failed.push(*name);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {}", failed.join(", "));
}
