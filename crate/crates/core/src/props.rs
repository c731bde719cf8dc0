//! Seed-pinned randomized property suites over the operator calculus.

use rand::Rng;

use crate::budget::Budget;
use crate::engine::{gb_of, rows_of};
use crate::error::Result;
use crate::op::{adjoint_defect, euler_divergence_test, DiffOp};
use crate::random::{random_op, rng_from_seed};

/// Outcome of one property suite.
#[derive(Debug, Clone)]
pub struct PropReport {
    pub name: String,
    pub seed: u64,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl PropReport {
    pub fn pass(&self) -> bool {
        self.failures.is_empty()
    }
}

pub const PROP_NAMES: &[&str] = &["involution", "contravariance", "divergence", "nf-idempotence"];

/// ad(ad(D)) = D exactly on random operators.
pub fn prop_involution(seed: u64, cases: usize) -> PropReport {
    let mut rng = rng_from_seed(seed);
    let mut failures = Vec::new();
    for k in 0..cases {
        let n_vars = rng.gen_range(1..=3);
        let (s, d, _) = crate::random::random_dims(&mut rng);
        let op = random_op(&mut rng, n_vars, s, d, 2, "u", "v");
        if op.adjoint().adjoint() != op {
            failures.push(format!("case {k}: ad(ad(D)) differs from D"));
        }
    }
    PropReport { name: "involution".into(), seed, cases, failures }
}

/// ad(D2 ∘ D1) = ad(D1) ∘ ad(D2) exactly on random composable pairs.
pub fn prop_contravariance(seed: u64, cases: usize) -> PropReport {
    let mut rng = rng_from_seed(seed);
    let mut failures = Vec::new();
    for k in 0..cases {
        let n_vars = rng.gen_range(1..=3);
        let (s, mid, d) = crate::random::random_dims(&mut rng);
        let d1 = random_op(&mut rng, n_vars, s, mid, 2, "u", "v");
        let d2 = random_op_with_src(&mut rng, n_vars, &d1, d);
        let lhs = d2.compose(&d1).expect("composable").adjoint();
        let rhs = d1.adjoint().compose(&d2.adjoint()).expect("composable");
        if !lhs.entries_eq(&rhs) {
            failures.push(format!("case {k}: ad(D2∘D1) differs from ad(D1)∘ad(D2)"));
        }
    }
    PropReport { name: "contravariance".into(), seed, cases, failures }
}

fn random_op_with_src(
    rng: &mut rand_chacha::ChaCha8Rng,
    n_vars: usize,
    d1: &DiffOp,
    dst_dim: usize,
) -> DiffOp {
    // share d1's target space as the source to make the pair composable
    let fresh = random_op(rng, n_vars, d1.dst().dim(), dst_dim, 2, "v", "w");
    let mut out = DiffOp::zero(d1.dst().clone(), fresh.dst().clone(), n_vars);
    for r in 0..fresh.dst().dim() {
        for c in 0..fresh.src().dim() {
            out.set_entry(r, c, fresh.entry(r, c).clone());
        }
    }
    out
}

/// The integrand <λ, Dη> - <ad(D)λ, η> (weights included) passes the Euler
/// total-divergence test for random operators.
pub fn prop_divergence(seed: u64, cases: usize) -> PropReport {
    let mut rng = rng_from_seed(seed);
    let mut failures = Vec::new();
    for k in 0..cases {
        let n_vars = rng.gen_range(1..=3);
        let (s, d, _) = crate::random::random_dims(&mut rng);
        let op = random_op(&mut rng, n_vars, s, d, 2, "u", "v");
        if !euler_divergence_test(&adjoint_defect(&op)) {
            failures.push(format!("case {k}: adjoint defect is not a total divergence"));
        }
    }
    PropReport { name: "divergence".into(), seed, cases, failures }
}

/// Normal forms are idempotent and the engine's syzygies compose to zero on
/// random operators.
pub fn prop_nf_idempotence(seed: u64, cases: usize, budget: &Budget) -> Result<PropReport> {
    let mut rng = rng_from_seed(seed);
    let mut failures = Vec::new();
    for k in 0..cases {
        let n_vars = rng.gen_range(1..=2);
        let (s, d, _) = crate::random::random_dims(&mut rng);
        let op = random_op(&mut rng, n_vars, s, d, 1, "u", "v");
        let out = gb_of(&op, budget)?;
        let probe = random_op(&mut rng, n_vars, s, 1, 2, "u", "t");
        for row in rows_of(&probe) {
            let nf1 = out.basis.normal_form(&row, budget)?;
            let nf2 = out.basis.normal_form(&nf1, budget)?;
            if nf1 != nf2 {
                failures.push(format!("case {k}: normal form is not idempotent"));
            }
        }
        let syz = crate::engine::rows_as_op(out.syzygies, op.dst().clone(), "cc", n_vars);
        if syz.dst().dim() > 0 && !syz.compose(&op)?.is_zero() {
            failures.push(format!("case {k}: syzygy does not annihilate the operator"));
        }
    }
    Ok(PropReport { name: "nf-idempotence".into(), seed, cases, failures })
}

/// Dispatch by name.
pub fn run_property(name: &str, seed: u64, cases: usize, budget: &Budget) -> Result<PropReport> {
    match name {
        "involution" => Ok(prop_involution(seed, cases)),
        "contravariance" => Ok(prop_contravariance(seed, cases)),
        "divergence" => Ok(prop_divergence(seed, cases)),
        "nf-idempotence" => prop_nf_idempotence(seed, cases, budget),
        other => Err(crate::error::Error::UnknownCheck(other.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quick_property_smoke() {
        assert!(prop_involution(1, 10).pass());
        assert!(prop_contravariance(2, 5).pass());
        assert!(prop_divergence(3, 5).pass());
        assert!(prop_nf_idempotence(4, 3, &Budget::unlimited()).unwrap().pass());
    }
}
