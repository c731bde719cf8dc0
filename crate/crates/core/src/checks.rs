//! Registered named identity checks. Each check runs a computation of the
//! gallery or sequence layer, compares against what the theory demands, and
//! reports pass/fail with witness diagnostics.

use std::time::{Duration, Instant};

use crate::budget::Budget;
use crate::coeff::RatFunc;
use crate::engine::{module_equal, op_rank, rows_of, syzygy_module};
use crate::error::{Error, Result};
use crate::example23 as ex;
use crate::gallery::{
    algebraic_map, conformal_killing_embedded, constraint_coherence_check, dims_table,
    dual_operator, gauge_reduce_einstein, lie_operator, linearized_curvature, packed_metric,
    raise_sym2, sym2_space, trace_op, AlgebraicKind, CurvatureKind, DualKind, Metric, MetricKind,
};
use crate::op::{DiffOp, SpaceSpec};
use crate::seq::{minimal_parametrization_search, parametrization_test, DiffSequence};
use crate::textfmt::entry_to_text;

/// Outcome of one named check.
#[derive(Debug, Clone)]
pub struct CheckResult {
    pub name: String,
    pub params: Vec<(String, String)>,
    pub pass: bool,
    pub elapsed: Duration,
    /// Failure diagnostics; pass iff empty.
    pub witnesses: Vec<String>,
    /// Informational lines (counts, orders) independent of pass/fail.
    pub notes: Vec<String>,
}

/// All registered check names, in the deterministic `--all` order.
pub const CHECK_NAMES: &[&str] = &[
    "ricci-killing-zero",
    "div-einstein-zero",
    "cauchy-einstein-zero",
    "einstein-selfadjoint",
    "ricci-not-selfadjoint",
    "adricci-sigma-match",
    "sigma-constraint-coherence",
    "gauge-reduce",
    "bar-involution",
    "trace-free-kernel",
    "elation-iso",
    "dims",
    "cc-killing-count",
    "cauchy-from-adricci",
    "paramtest-example23",
    "example23-full-chain",
    "paramtest-einstein",
];

struct Ctx {
    witnesses: Vec<String>,
    notes: Vec<String>,
}

impl Ctx {
    fn new() -> Self {
        Ctx { witnesses: Vec::new(), notes: Vec::new() }
    }

    fn demand(&mut self, ok: bool, what: &str) {
        if !ok {
            self.witnesses.push(what.to_string());
        }
    }

    fn demand_zero(&mut self, op: &DiffOp, what: &str) {
        if !op.is_zero() {
            let mut msg = format!("{what}: nonzero entries");
            for r in 0..op.dst().dim() {
                for c in 0..op.src().dim() {
                    if !op.entry(r, c).is_zero() {
                        msg.push_str(&format!(" [{},{}]: {}", r + 1, c + 1, entry_to_text(op.entry(r, c))));
                    }
                }
            }
            self.witnesses.push(msg);
        }
    }

    fn note(&mut self, s: String) {
        self.notes.push(s);
    }
}

fn metric_for(kind: MetricKind, n: usize) -> Metric {
    match kind {
        MetricKind::Minkowski => Metric::minkowski(n),
        MetricKind::Euclid => Metric::euclid(n),
        MetricKind::Custom => panic!("custom metrics are passed explicitly"),
    }
}

/// Run one registered check. `n` defaults per check; `metric` applies to the
/// gallery checks.
pub fn run_check(
    name: &str,
    n: Option<usize>,
    metric: MetricKind,
    budget: &Budget,
) -> Result<CheckResult> {
    let start = Instant::now();
    let mut ctx = Ctx::new();
    let mut params: Vec<(String, String)> = Vec::new();
    let default_n: usize = match name {
        "cc-killing-count" => 3,
        "cauchy-from-adricci" => 3,
        _ => 4,
    };
    let n = n.unwrap_or(default_n);
    let uses_metric = !matches!(name, "dims" | "paramtest-example23" | "example23-full-chain");
    if uses_metric {
        params.push(("n".into(), n.to_string()));
        params.push((
            "metric".into(),
            match metric {
                MetricKind::Minkowski => "minkowski".into(),
                MetricKind::Euclid => "euclid".into(),
                MetricKind::Custom => "custom".into(),
            },
        ));
    } else if name == "dims" {
        params.push(("n".into(), n.to_string()));
    }

    match name {
        "ricci-killing-zero" => {
            let m = metric_for(metric, n);
            let r = linearized_curvature(&m, CurvatureKind::Ricci)?;
            let k = lie_operator(&m, false)?;
            ctx.demand_zero(&r.compose(&k)?, "ricci ∘ killing");
        }
        "div-einstein-zero" => {
            let m = metric_for(metric, n);
            let e = linearized_curvature(&m, CurvatureKind::Einstein)?;
            let div = dual_operator(&m, DualKind::Div)?;
            ctx.demand_zero(&div.compose(&e)?, "div ∘ einstein");
        }
        "cauchy-einstein-zero" => {
            // The lower diagram row pairs the Cauchy operator with the
            // Einstein operator on the dual side, identified via the metric:
            // over a Euclidean metric the raising map is the identity.
            let m = metric_for(metric, n);
            let e = linearized_curvature(&m, CurvatureKind::Einstein)?;
            let raised = raise_sym2(&m, "E", "Eu").compose(&e)?;
            let cauchy = dual_operator(&m, DualKind::Cauchy)?;
            ctx.demand_zero(&cauchy.compose(&raised)?, "cauchy ∘ einstein");
            // over a flat metric the two annihilators generate the same module
            let div = dual_operator(&m, DualKind::Div)?;
            let div_raised = div.compose(&raise_sym2(&m, "lam", "Om"))?;
            ctx.demand(
                module_equal(&div_raised, &cauchy, budget)?,
                "row modules of div and cauchy coincide",
            );
        }
        "einstein-selfadjoint" => {
            // Self-adjointness with the dual space identified via the metric:
            // ad(raise ∘ einstein) = raise ∘ einstein, entrywise in the packed
            // weighted pairing. Over a Euclidean metric the raising map is the
            // identity and the claim is literally ad(einstein) = einstein.
            let m = metric_for(metric, n);
            let e = linearized_curvature(&m, CurvatureKind::Einstein)?;
            let g = raise_sym2(&m, "E", "Eu").compose(&e)?;
            ctx.demand(g.adjoint().entries_eq(&g), "ad(einstein) = einstein (packed, weighted)");
            if matches!(metric, MetricKind::Euclid) {
                ctx.demand(e.adjoint().entries_eq(&e), "literal form over the euclidean metric");
            }
            let full = unpack_sym2_op(&g, &m);
            ctx.demand(
                full.adjoint().entries_eq(&full),
                "ad(einstein) = einstein (unpacked cross-check)",
            );
        }
        "ricci-not-selfadjoint" => {
            let m = metric_for(metric, n);
            let r = linearized_curvature(&m, CurvatureKind::Ricci)?;
            let g = raise_sym2(&m, "R", "Ru").compose(&r)?;
            ctx.demand(!g.adjoint().entries_eq(&g), "ad(ricci) differs from ricci");
        }
        "adricci-sigma-match" => {
            let m = metric_for(metric, n);
            let sigma = dual_operator(&m, DualKind::AdRicciSigma)?;
            let r = linearized_curvature(&m, CurvatureKind::Ricci)?;
            let two_ad = r.adjoint().scale(&RatFunc::int(n, 2));
            ctx.demand(sigma.entries_eq(&two_ad), "sigma = 2 ad(ricci) exactly");
        }
        "sigma-constraint-coherence" => {
            let m = metric_for(metric, n);
            ctx.demand(
                constraint_coherence_check(&m, budget)?,
                "divergence of sigma factors through the constraints",
            );
        }
        "gauge-reduce" => {
            let m = metric_for(metric, n);
            let g = gauge_reduce_einstein(&m, budget)?;
            ctx.demand(g.factor.order() <= 1, "gauge factor is first order");
            let e = linearized_curvature(&m, CurvatureKind::Einstein)?;
            let bar_inv = algebraic_map(&m, AlgebraicKind::BarInv)?;
            let two_e = e.scale(&RatFunc::int(n, 2)).compose(&bar_inv)?;
            let sum = DiffOp::linear_combine(&[
                (RatFunc::one(n), &g.box_part),
                (RatFunc::one(n), &g.remainder),
            ])?;
            ctx.demand(sum.entries_eq(&two_e), "2 einstein ∘ bar_inv = box + remainder");
            ctx.note(format!("factor order {}", g.factor.order()));
        }
        "bar-involution" => {
            let m = metric_for(metric, n);
            if n == 2 {
                ctx.demand(
                    matches!(algebraic_map(&m, AlgebraicKind::BarInv), Err(Error::DegenerateAtN2)),
                    "bar_inv errors at n = 2",
                );
            } else {
                let bar = algebraic_map(&m, AlgebraicKind::Bar)?;
                let bar_inv = algebraic_map(&m, AlgebraicKind::BarInv)?;
                let id = DiffOp::identity(sym2_space("Om", n), n);
                ctx.demand(bar_inv.compose(&bar)?.entries_eq(&id), "bar_inv ∘ bar = id");
                let idb = DiffOp::identity(sym2_space("Omb", n), n);
                ctx.demand(bar.compose(&bar_inv)?.entries_eq(&idb), "bar ∘ bar_inv = id");
            }
        }
        "trace-free-kernel" => {
            let m = metric_for(metric, n);
            let tf = algebraic_map(&m, AlgebraicKind::TraceFree)?;
            let out = tf.apply(&packed_metric(&m))?;
            ctx.demand(out.iter().all(|f| f.is_zero()), "omega lies in the kernel");
            let rank = op_rank(&tf, budget)?;
            ctx.demand(rank == n * (n + 1) / 2 - 1, "kernel is exactly one dimensional");
            // and the conformal operator is trace free as an operator identity
            if m.has_density() {
                let ck = conformal_killing_embedded(&m)?;
                let tr = trace_op(&m, ck.dst(), "t");
                ctx.demand_zero(&tr.compose(&ck)?, "trace ∘ conformal killing");
            }
        }
        "elation-iso" => {
            let m = metric_for(metric, n);
            let fwd = algebraic_map(&m, AlgebraicKind::ElationToRicci)?;
            let back = algebraic_map(&m, AlgebraicKind::RicciToElation)?;
            let id = DiffOp::identity(sym2_space("A", n), n);
            ctx.demand(back.compose(&fwd)?.entries_eq(&id), "elation map round-trips");
            let tr_r = trace_op(&m, fwd.dst(), "t").compose(&fwd)?;
            let tr_a = trace_op(&m, fwd.src(), "t").scale(&RatFunc::int(n, 2 * (n as i64 - 1)));
            ctx.demand(tr_r.entries_eq(&tr_a), "tr(R) = 2(n-1) tr(A)");
        }
        "dims" => {
            let d = dims_table(n);
            ctx.demand(d.f0 == (n * (n + 1) / 2) as i64, "dim F0 = n(n+1)/2");
            if n >= 3 {
                ctx.demand(
                    d.f1_minus_f1_hat == (n * (n + 1) / 2) as i64,
                    "dim F1 - dim F1^ = n(n+1)/2",
                );
            }
            match n {
                2 => ctx.demand(d.f1 == 1, "dim F1 = 1 at n = 2"),
                3 => {
                    ctx.demand(d.f1 == 6 && d.f1_hat == 0, "dim F1 = 6, F1^ = 0 at n = 3");
                }
                4 => {
                    ctx.demand(
                        d.f1 == 20 && d.f1_hat == 10 && d.f2 == 20 && d.f2_hat == 0,
                        "n = 4 row: F1 = 20, F1^ = 10, F2 = 20, F2^ = 0",
                    );
                }
                _ => {}
            }
            ctx.note(format!(
                "T={} F0={} F0^={} F1={} F1^={} F2={} F2^={} g1={} g1^={} g2^={}",
                d.t, d.f0, d.f0_hat, d.f1, d.f1_hat, d.f2, d.f2_hat, d.g1, d.g1_hat, d.g2_hat
            ));
        }
        "cc-killing-count" => {
            let m = metric_for(metric, n);
            let k = lie_operator(&m, false)?;
            let cc = syzygy_module(&k, budget)?;
            let expect = dims_table(n).f1 as usize;
            ctx.demand(
                cc.dst().dim() == expect,
                &format!("auto-reduced generator count {} equals dim F1 = {}", cc.dst().dim(), expect),
            );
            ctx.demand(cc.order() == 2, "generators are second order");
            ctx.demand(
                rows_of(&cc).iter().all(|r| r.order() == 2),
                "every generator is second order",
            );
            ctx.note(format!("{} generators of order {}", cc.dst().dim(), cc.order()));
        }
        "cauchy-from-adricci" => {
            let m = metric_for(metric, n);
            let r = linearized_curvature(&m, CurvatureKind::Ricci)?;
            let cc = syzygy_module(&r.adjoint(), budget)?;
            let cauchy = dual_operator(&m, DualKind::Cauchy)?;
            ctx.demand(
                module_equal(&cc, &cauchy, budget)?,
                "CC(ad(ricci)) is module-equal to the cauchy rows",
            );
            ctx.note(format!("{} generators of order {}", cc.dst().dim(), cc.order()));
        }
        "paramtest-example23" => {
            let report = parametrization_test(&ex::d1(), budget)?;
            ctx.demand(report.parametrizable, "operator is parametrizable");
            ctx.demand(
                module_equal(&report.parametrization, &ex::parametrization(), budget)?,
                "parametrization is module-equivalent to the displayed one",
            );
            ctx.note(format!("parametrizable: {}", report.parametrizable));
        }
        "example23-full-chain" => {
            example23_full_chain(&mut ctx, budget)?;
        }
        "paramtest-einstein" => {
            let m = metric_for(metric, n);
            let e = linearized_curvature(&m, CurvatureKind::Einstein)?;
            let report = parametrization_test(&e, budget)?;
            ctx.demand(!report.parametrizable, "einstein operator is not parametrizable");
            ctx.demand(!report.witnesses.is_empty(), "non-parametrizability has witnesses");
            ctx.note(format!("witness rows: {}", report.witnesses.len()));
        }
        other => return Err(Error::UnknownCheck(other.to_string())),
    }

    Ok(CheckResult {
        name: name.to_string(),
        params,
        pass: ctx.witnesses.is_empty(),
        elapsed: start.elapsed(),
        witnesses: ctx.witnesses,
        notes: ctx.notes,
    })
}

/// The full worked-example chain: every displayed operator is reproduced.
fn example23_full_chain(ctx: &mut Ctx, budget: &Budget) -> Result<()> {
    let d1 = ex::d1();
    // adjoint matches the displayed rows exactly
    let ad1 = d1.adjoint();
    ctx.demand(ad1.entries_eq(&ex::ad_d1_expected()), "ad(D1) matches the displayed rows");
    // CC of the adjoint is module-equal to the displayed nu rows
    let cc_ad = syzygy_module(&ad1, budget)?;
    ctx.demand(
        module_equal(&cc_ad, &ex::nu_rows(), budget)?,
        "CC(ad(D1)) is module-equal to the nu rows",
    );
    // the theta-level CC
    let cc_nu = syzygy_module(&ex::nu_rows(), budget)?;
    ctx.demand(
        module_equal(&cc_nu, &ex::theta_row(), budget)?,
        "CC at the theta level is d1 nu2 - d2 nu1 + x2 nu2",
    );
    // five-step test
    let report = parametrization_test(&d1, budget)?;
    ctx.demand(report.parametrizable, "five-step test succeeds");
    ctx.demand(
        module_equal(&report.parametrization, &ex::parametrization(), budget)?,
        "parametrization is module-equivalent to the displayed second order one",
    );
    // the kernel substitution annihilates the parametrization
    ctx.demand_zero(
        &ex::parametrization().compose(&ex::dm1())?,
        "parametrization ∘ kernel substitution",
    );
    // both displayed sequences are complexes
    let primal = DiffSequence::new(vec![ex::dm1(), ex::parametrization(), d1.clone()])?;
    ctx.demand(primal.is_complex()?, "primal sequence is a complex");
    let adjoint = DiffSequence::new(vec![d1.adjoint(), ex::nu_rows(), ex::dm1().adjoint()])?;
    ctx.demand(adjoint.is_complex()?, "adjoint sequence is a complex");
    // exactly the two single-potential minimal parametrizations
    let found = minimal_parametrization_search(&ex::parametrization(), &d1, budget)?;
    ctx.demand(
        found == vec![vec![0], vec![1]],
        "minimal parametrizations are the two single-potential restrictions",
    );
    // relative parametrization: substitute, factor back, compare
    let c = ex::potential_substitution();
    let through_psi = ex::parametrization().compose(&c)?;
    ctx.demand(
        through_psi.entries_eq(&ex::potential_parametrization_expected()),
        "potential substitution reproduces the displayed second order parametrization",
    );
    match crate::engine::left_factor(&through_psi, &c, budget)? {
        Some(g) => ctx.demand(
            g.entries_eq(&ex::relative_parametrization_expected()),
            "relative parametrization matches the displayed first order operator",
        ),
        None => ctx.demand(false, "relative parametrization factors through the substitution"),
    }
    let cc = syzygy_module(&through_psi, budget)?;
    ctx.demand(
        module_equal(&cc, &d1, budget)?,
        "restricted system keeps the original compatibility conditions",
    );
    Ok(())
}

/// Express a packed symmetric-to-symmetric operator on full n^2-component
/// spaces (unit weights), where the formal adjoint is the plain transposition.
fn unpack_sym2_op(e: &DiffOp, m: &Metric) -> DiffOp {
    let n = m.n();
    let pack = crate::gallery::PackedSym2::new(n);
    let full_space = |name: &str| {
        let labels: Vec<String> = (0..n)
            .flat_map(|i| (0..n).map(move |j| format!("{name}{}{}", i + 1, j + 1)))
            .collect();
        SpaceSpec::new(name, labels, vec![crate::coeff::rat(1); n * n])
    };
    // unpack: full (i,j) output row is the packed (i,j) row; each packed
    // column (u,v) contributes to full inputs (u,v) and (v,u) with half the
    // off-diagonal coefficient (the symmetric average).
    let src = full_space("Omf");
    let dst = full_space("Ef");
    let mut out = DiffOp::zero(src, dst, e.n_vars());
    let half = crate::coeff::rat_frac(1, 2);
    for i in 0..n {
        for j in 0..n {
            let row = i * n + j;
            let prow = pack.index(i, j);
            for (pc, &(u, v)) in pack.pairs().iter().enumerate() {
                let entry = e.entry(prow, pc);
                if entry.is_zero() {
                    continue;
                }
                if u == v {
                    let col = u * n + v;
                    let mut acc = out.entry(row, col).clone();
                    acc.add_assign(entry);
                    out.set_entry(row, col, acc);
                } else {
                    let scaled = entry.scale(&RatFunc::constant(e.n_vars(), half.clone()));
                    for col in [u * n + v, v * n + u] {
                        let mut acc = out.entry(row, col).clone();
                        acc.add_assign(&scaled);
                        out.set_entry(row, col, acc);
                    }
                }
            }
        }
    }
    out
}

/// Run every registered check with its default parameters, in order.
pub fn run_all(metric: MetricKind, budget: &Budget) -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    for name in CHECK_NAMES {
        out.push(run_check(name, None, metric, budget)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_check_rejected() {
        let err = run_check("no-such-check", None, MetricKind::Minkowski, &Budget::unlimited());
        assert!(matches!(err, Err(Error::UnknownCheck(_))));
    }

    #[test]
    fn example23_checks_pass() {
        let b = Budget::unlimited();
        let r = run_check("paramtest-example23", None, MetricKind::Minkowski, &b).unwrap();
        assert!(r.pass, "{:?}", r.witnesses);
        let r = run_check("example23-full-chain", None, MetricKind::Minkowski, &b).unwrap();
        assert!(r.pass, "{:?}", r.witnesses);
    }

    #[test]
    fn light_gallery_checks_pass_n3() {
        let b = Budget::unlimited();
        for name in [
            "ricci-killing-zero",
            "div-einstein-zero",
            "cauchy-einstein-zero",
            "einstein-selfadjoint",
            "ricci-not-selfadjoint",
            "adricci-sigma-match",
            "sigma-constraint-coherence",
            "gauge-reduce",
            "bar-involution",
            "trace-free-kernel",
            "elation-iso",
            "dims",
            "cc-killing-count",
            "cauchy-from-adricci",
        ] {
            let r = run_check(name, Some(3), MetricKind::Minkowski, &b).unwrap();
            assert!(r.pass, "{name}: {:?}", r.witnesses);
        }
    }
}
