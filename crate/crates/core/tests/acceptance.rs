//! Acceptance suite: one test per criterion, each printing a pass/fail line.
//!
//! Budget-bounded runs honor `ACCEPTANCE_BUDGET_SECS` (default 3600 seconds,
//! matching the documented `--budget 3600` envelope for the n = 4 duality
//! chain). A budget overrun degrades that criterion to n = 3 plus an explicit
//! budget-exceeded record; it is never silently skipped.

mod common;

use std::time::{Duration, Instant};

use diffdual::budget::Budget;
use diffdual::checks::run_check;
use diffdual::engine::{gb_of, module_equal, rows_of, syzygy_module};
use diffdual::error::Error;
use diffdual::gallery::{dims_table, lie_operator, linearized_curvature, CurvatureKind, Metric, MetricKind};
use diffdual::props::{prop_contravariance, prop_divergence, prop_involution, prop_nf_idempotence};
use diffdual::seq::{diff_trd, parametrization_test};

const METRICS: [MetricKind; 2] = [MetricKind::Minkowski, MetricKind::Euclid];

fn verdict(id: &str, pass: bool, detail: &str) {
    println!(
        "criterion {id}: {} — {detail}",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "criterion {id} failed: {detail}");
}

fn within(start: Instant, bound: Duration, id: &str) {
    let elapsed = start.elapsed();
    assert!(
        elapsed <= bound,
        "criterion {id} exceeded its time envelope: {elapsed:?} > {bound:?}"
    );
}

fn check_passes(name: &str, n: Option<usize>, metric: MetricKind, budget: &Budget) -> bool {
    match run_check(name, n, metric, budget) {
        Ok(r) => {
            if !r.pass {
                for w in &r.witnesses {
                    println!("  {name}: {w}");
                }
            }
            r.pass
        }
        Err(e) => {
            println!("  {name}: error {e}");
            false
        }
    }
}

#[test]
fn criterion_1_example_chain() {
    let start = Instant::now();
    let b = Budget::unlimited();
    let pass = check_passes("example23-full-chain", None, MetricKind::Minkowski, &b)
        && check_passes("paramtest-example23", None, MetricKind::Minkowski, &b);
    within(start, Duration::from_secs(5), "1");
    verdict("1", pass, "worked example: adjoint, CC chain, parametrizations");
}

#[test]
fn criterion_2_identity_suite() {
    let start = Instant::now();
    let b = Budget::unlimited();
    let mut pass = true;
    for metric in METRICS {
        for n in [2usize, 3, 4] {
            pass &= check_passes("ricci-killing-zero", Some(n), metric, &b);
            pass &= check_passes("div-einstein-zero", Some(n), metric, &b);
            pass &= check_passes("cauchy-einstein-zero", Some(n), metric, &b);
            pass &= check_passes("bar-involution", Some(n), metric, &b);
            pass &= check_passes("trace-free-kernel", Some(n), metric, &b);
            if n >= 3 {
                pass &= check_passes("elation-iso", Some(n), metric, &b);
            }
            // tr(E) = -(n-2)/2 tr(R) is asserted inside the gallery tests as
            // well; repeat it here against both metrics.
            let m = match metric {
                MetricKind::Minkowski => Metric::minkowski(n),
                MetricKind::Euclid => Metric::euclid(n),
                MetricKind::Custom => unreachable!(),
            };
            let e = linearized_curvature(&m, CurvatureKind::Einstein).unwrap();
            let tr = linearized_curvature(&m, CurvatureKind::Trace).unwrap();
            let tr_e = diffdual::gallery::trace_op(&m, e.dst(), "t").compose(&e).unwrap();
            let rhs = tr.scale(&diffdual::coeff::RatFunc::constant(
                n,
                diffdual::coeff::rat_frac(-(n as i64 - 2), 2),
            ));
            pass &= tr_e.entries_eq(&rhs);
        }
    }
    within(start, Duration::from_secs(60), "2");
    verdict("2", pass, "composition and splitting identities, n = 2..4, both metrics");
}

#[test]
fn criterion_3_self_adjointness() {
    let start = Instant::now();
    let b = Budget::unlimited();
    let mut pass = true;
    for metric in METRICS {
        for n in [3usize, 4] {
            pass &= check_passes("einstein-selfadjoint", Some(n), metric, &b);
            pass &= check_passes("ricci-not-selfadjoint", Some(n), metric, &b);
            pass &= check_passes("adricci-sigma-match", Some(n), metric, &b);
        }
    }
    within(start, Duration::from_secs(60), "3");
    verdict("3", pass, "einstein self-adjoint (packed + unpacked), ricci not, sigma = 2 ad(ricci)");
}

#[test]
fn criterion_4_gauge_reduction() {
    let start = Instant::now();
    let b = Budget::unlimited();
    let mut pass = true;
    for metric in METRICS {
        for n in [3usize, 4] {
            pass &= check_passes("gauge-reduce", Some(n), metric, &b);
            pass &= check_passes("sigma-constraint-coherence", Some(n), metric, &b);
        }
    }
    within(start, Duration::from_secs(60), "4");
    verdict("4", pass, "2E ∘ bar_inv = box + (factor ∘ divergence); constraints coherent");
}

#[test]
fn criterion_5_cc_counts_and_dims() {
    let start = Instant::now();
    let b = Budget::unlimited();
    let mut pass = true;
    for n in [2usize, 3, 4] {
        pass &= check_passes("cc-killing-count", Some(n), MetricKind::Minkowski, &b);
        pass &= check_passes("dims", Some(n), MetricKind::Minkowski, &b);
    }
    // brute-force certificate at n = 2: every true syzygy of d-degree <= 3
    // lies in the engine's module
    let m = Metric::euclid(2);
    let killing = lie_operator(&m, false).unwrap();
    let cc = syzygy_module(&killing, &b).unwrap();
    let gb = gb_of(&cc, &b).unwrap().basis;
    let oracle_rows = common::brute_force_syzygies(&killing, 3);
    pass &= !oracle_rows.is_empty();
    for row in &oracle_rows {
        let nf = gb.normal_form(row, &b).unwrap();
        if !nf.is_zero() {
            println!("  oracle syzygy escapes the engine module");
            pass = false;
        }
    }
    // and the engine's generators are sound
    for row in rows_of(&cc) {
        let mut acc = diffdual::engine::OpRow::zero(killing.src().dim(), 2);
        for (k, krow) in rows_of(&killing).iter().enumerate() {
            acc.add_assign(&krow.left_mul(row.comp(k)));
        }
        pass &= acc.is_zero();
    }
    // closed forms already pinned by the dims check; assert the headline row
    let d4 = dims_table(4);
    pass &= d4.f1_hat == 10 && d4.f2_hat == 0 && d4.f2 == 20;
    within(start, Duration::from_secs(600), "5");
    verdict("5", pass, "CC of Killing has 1/6/20 order-2 generators; dimension formulas hold");
}

#[test]
fn criterion_6_duality_chain() {
    let start = Instant::now();
    let unlimited = Budget::unlimited();
    let mut pass = true;
    // n = 3 mandatory
    pass &= check_passes("cauchy-from-adricci", Some(3), MetricKind::Minkowski, &unlimited);
    // n = 4 under the documented budget envelope; degrade with a record if
    // the budget is exhausted, never skip silently
    let budget_secs: u64 = std::env::var("ACCEPTANCE_BUDGET_SECS")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(3600);
    let budgeted = Budget::seconds(budget_secs);
    match run_check("cauchy-from-adricci", Some(4), MetricKind::Minkowski, &budgeted) {
        Ok(r) => pass &= r.pass,
        Err(Error::BudgetExceeded) => {
            println!("criterion 6: budget of {budget_secs}s exceeded at n = 4 (duality chain); n = 3 result stands");
        }
        Err(e) => {
            println!("  cauchy-from-adricci n=4: error {e}");
            pass = false;
        }
    }
    match run_check("paramtest-einstein", Some(4), MetricKind::Minkowski, &budgeted) {
        Ok(r) => {
            pass &= r.pass;
            // witness soundness: each witness row survives normal form
            let m = Metric::minkowski(4);
            let e = linearized_curvature(&m, CurvatureKind::Einstein).unwrap();
            let report = parametrization_test(&e, &unlimited).unwrap();
            pass &= !report.parametrizable && !report.witnesses.is_empty();
            let gb = gb_of(&e, &unlimited).unwrap().basis;
            for w in &report.witnesses {
                pass &= !gb.normal_form(w, &unlimited).unwrap().is_zero();
            }
            // the recomputed CC contains the input rows (one-sided inclusion)
            pass &= !module_equal(&report.recomputed_cc, &e, &unlimited).unwrap();
        }
        Err(Error::BudgetExceeded) => {
            println!("criterion 6: budget of {budget_secs}s exceeded at n = 4 (einstein parametrization test)");
        }
        Err(e) => {
            println!("  paramtest-einstein: error {e}");
            pass = false;
        }
    }
    within(start, Duration::from_secs(600 + budget_secs), "6");
    verdict("6", pass, "CC(ad ricci) = cauchy module; einstein not parametrizable at n = 4");
}

#[test]
fn criterion_7_property_suites() {
    let start = Instant::now();
    let b = Budget::unlimited();
    let mut pass = true;

    let inv = prop_involution(20260808, 200);
    pass &= inv.pass();
    println!("  involution: {}/{} ok", inv.cases - inv.failures.len(), inv.cases);

    let contra = prop_contravariance(20260809, 100);
    pass &= contra.pass();
    println!("  contravariance: {}/{} ok", contra.cases - contra.failures.len(), contra.cases);

    let div = prop_divergence(20260810, 100);
    pass &= div.pass();
    println!("  divergence certificate: {}/{} ok", div.cases - div.failures.len(), div.cases);

    let nf = prop_nf_idempotence(20260811, 50, &b).unwrap();
    pass &= nf.pass();
    println!("  nf idempotence + syzygy soundness: {}/{} ok", nf.cases - nf.failures.len(), nf.cases);

    for n in [3usize, 4] {
        let m = Metric::minkowski(n);
        let killing = lie_operator(&m, false).unwrap();
        let trd_k = diff_trd(&killing, &b).unwrap();
        println!("  diff_trd(killing) n={n}: {trd_k} (required 0)");
        pass &= trd_k == 0;
        let ricci = linearized_curvature(&m, CurvatureKind::Ricci).unwrap();
        let trd_r = diff_trd(&ricci, &b).unwrap();
        let required = n * (n - 1) / 2;
        println!("  diff_trd(ricci) n={n}: {trd_r} (required {required})");
        if trd_r != required {
            println!(
                "  note: the row rank of the linearized Ricci operator is n(n-1)/2 = {} \
                 (certified independently by evaluation), so src.dim - rank = {}; the \
                 required value equals the rank itself, not the transcendence degree",
                required,
                ricci.src().dim() - required
            );
        }
        pass &= trd_r == required;
    }

    within(start, Duration::from_secs(120), "7");
    verdict("7", pass, "seed-pinned involution/contravariance/divergence suites; rank invariants");
}
