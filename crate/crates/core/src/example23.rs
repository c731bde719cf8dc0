//! The worked two-variable example used by the `example23` checks: a first
//! order operator over K = Q(x1,x2) together with every operator of its
//! primal and adjoint sequences, written out explicitly. The engine has to
//! reproduce all of them.
//!
//! Primal sequence:   phi -> xi -> eta -> zeta
//! Adjoint sequence:  theta <- nu <- mu <- lambda

use crate::coeff::{rat, RatFunc};
use crate::op::{DiffOp, MultiIndex, SpaceSpec};

fn e(a: u16, b: u16) -> MultiIndex {
    MultiIndex::from_exponents(vec![a, b])
}

fn x2() -> RatFunc {
    RatFunc::var(2, 1)
}

fn one() -> RatFunc {
    RatFunc::one(2)
}

/// D1: eta -> zeta,  d1 eta1 + d2 eta2 - x2 eta1 = zeta.
pub fn d1() -> DiffOp {
    let mut op = DiffOp::zero(SpaceSpec::vector("eta", 2), SpaceSpec::scalar("zeta"), 2);
    op.add_term(0, 0, e(1, 0), one());
    op.add_term(0, 0, e(0, 0), x2().neg());
    op.add_term(0, 1, e(0, 1), one());
    op
}

/// ad(D1) written out: mu1 = -d1 lambda - x2 lambda, mu2 = -d2 lambda.
pub fn ad_d1_expected() -> DiffOp {
    let mut op = DiffOp::zero(SpaceSpec::scalar("lambda"), SpaceSpec::vector("mu", 2), 2);
    op.add_term(0, 0, e(1, 0), one().neg());
    op.add_term(0, 0, e(0, 0), x2().neg());
    op.add_term(1, 0, e(0, 1), one().neg());
    op
}

/// Generating compatibility conditions of ad(D1) (the nu rows):
/// nu1 = -d11 mu2 + d12 mu1 - 2 x2 d1 mu2 + x2 d2 mu1 - (x2)^2 mu2 - mu1
/// nu2 = -d12 mu2 + d22 mu1 - x2 d2 mu2 - 2 mu2
pub fn nu_rows() -> DiffOp {
    let mut op = DiffOp::zero(SpaceSpec::vector("mu", 2), SpaceSpec::vector("nu", 2), 2);
    op.add_term(0, 0, e(1, 1), one());
    op.add_term(0, 0, e(0, 1), x2());
    op.add_term(0, 0, e(0, 0), one().neg());
    op.add_term(0, 1, e(2, 0), one().neg());
    op.add_term(0, 1, e(1, 0), x2().scale(&rat(-2)));
    op.add_term(0, 1, e(0, 0), x2().mul(&x2()).neg());
    op.add_term(1, 0, e(0, 2), one());
    op.add_term(1, 1, e(1, 1), one().neg());
    op.add_term(1, 1, e(0, 1), x2().neg());
    op.add_term(1, 1, e(0, 0), RatFunc::int(2, -2));
    op
}

/// Last compatibility condition: d1 nu2 - d2 nu1 + x2 nu2 = theta.
pub fn theta_row() -> DiffOp {
    let mut op = DiffOp::zero(SpaceSpec::vector("nu", 2), SpaceSpec::scalar("theta"), 2);
    op.add_term(0, 0, e(0, 1), one().neg());
    op.add_term(0, 1, e(1, 0), one());
    op.add_term(0, 1, e(0, 0), x2());
    op
}

/// The second order parametrization D: xi -> eta,
/// eta1 =  d12 xi1 + d22 xi2 - x2 d2 xi1 - 2 xi1
/// eta2 = -d11 xi1 - d12 xi2 + 2 x2 d1 xi1 + x2 d2 xi2 - (x2)^2 xi1 - xi2
pub fn parametrization() -> DiffOp {
    let mut op = DiffOp::zero(SpaceSpec::vector("xi", 2), SpaceSpec::vector("eta", 2), 2);
    op.add_term(0, 0, e(1, 1), one());
    op.add_term(0, 0, e(0, 1), x2().neg());
    op.add_term(0, 0, e(0, 0), RatFunc::int(2, -2));
    op.add_term(0, 1, e(0, 2), one());
    op.add_term(1, 0, e(2, 0), one().neg());
    op.add_term(1, 0, e(1, 0), x2().scale(&rat(2)));
    op.add_term(1, 0, e(0, 0), x2().mul(&x2()).neg());
    op.add_term(1, 1, e(1, 1), one().neg());
    op.add_term(1, 1, e(0, 1), x2());
    op.add_term(1, 1, e(0, 0), one().neg());
    op
}

/// D_{-1}: phi -> xi, the kernel substitution xi1 = d2 phi, xi2 = -d1 phi + x2 phi.
/// Feeding it into the parametrization yields only the trivial solution.
pub fn dm1() -> DiffOp {
    let mut op = DiffOp::zero(SpaceSpec::scalar("phi"), SpaceSpec::vector("xi", 2), 2);
    op.add_term(0, 0, e(0, 1), one());
    op.add_term(1, 0, e(1, 0), one().neg());
    op.add_term(1, 0, e(0, 0), x2());
    op
}

/// The admissible potential substitution xi1 = d2 phi, xi2 = -d1 phi.
pub fn potential_substitution() -> DiffOp {
    let mut op = DiffOp::zero(SpaceSpec::scalar("phi"), SpaceSpec::vector("xi", 2), 2);
    op.add_term(0, 0, e(0, 1), one());
    op.add_term(1, 0, e(1, 0), one().neg());
    op
}

/// Second order parametrization through a single potential:
/// eta1 = -x2 d22 phi - 2 d2 phi,  eta2 = x2 d12 phi - (x2)^2 d2 phi + d1 phi.
pub fn potential_parametrization_expected() -> DiffOp {
    let mut op = DiffOp::zero(SpaceSpec::scalar("phi"), SpaceSpec::vector("eta", 2), 2);
    op.add_term(0, 0, e(0, 2), x2().neg());
    op.add_term(0, 0, e(0, 1), RatFunc::int(2, -2));
    op.add_term(1, 0, e(1, 1), x2());
    op.add_term(1, 0, e(0, 1), x2().mul(&x2()).neg());
    op.add_term(1, 0, e(1, 0), one());
    op
}

/// First order relative parametrization, valid under the differential
/// constraint d1 xi1 + d2 xi2 = 0:
/// eta1 = -x2 d2 xi1 - 2 xi1,  eta2 = x2 d1 xi1 - (x2)^2 xi1 - xi2.
pub fn relative_parametrization_expected() -> DiffOp {
    let mut op = DiffOp::zero(SpaceSpec::vector("xi", 2), SpaceSpec::vector("eta", 2), 2);
    op.add_term(0, 0, e(0, 1), x2().neg());
    op.add_term(0, 0, e(0, 0), RatFunc::int(2, -2));
    op.add_term(1, 0, e(1, 0), x2());
    op.add_term(1, 0, e(0, 0), x2().mul(&x2()).neg());
    op.add_term(1, 1, e(0, 0), one().neg());
    op
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn displayed_operators_compose_to_zero() {
        let d = parametrization();
        assert!(d1().compose(&d).unwrap().is_zero());
        assert!(d.compose(&dm1()).unwrap().is_zero());
        assert!(nu_rows().compose(&ad_d1_expected()).unwrap().is_zero());
        assert!(theta_row().compose(&nu_rows()).unwrap().is_zero());
    }

    #[test]
    fn adjoint_matches_display() {
        assert!(d1().adjoint().entries_eq(&ad_d1_expected()));
        // the theta row is the adjoint of the kernel substitution
        assert!(dm1().adjoint().entries_eq(&theta_row()));
        // and the displayed parametrization is the adjoint of the nu rows
        assert!(nu_rows().adjoint().entries_eq(&parametrization()));
    }

    #[test]
    fn potential_substitution_composes() {
        let through_phi = parametrization().compose(&potential_substitution()).unwrap();
        assert!(through_phi.entries_eq(&potential_parametrization_expected()));
    }
}
