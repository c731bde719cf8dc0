//! Dual-side operators: the Cauchy operator, divergences, the explicit
//! adjoint-of-Ricci matrix, the gauge reduction of the Einstein operator, and
//! the coherence of the divergence constraints.

use crate::budget::Budget;
use crate::coeff::RatFunc;
use crate::engine::left_factor;
use crate::error::{Error, Result};
use crate::gallery::algebraic::{algebraic_map, AlgebraicKind};
use crate::gallery::curvature::{linearized_curvature, CurvatureKind};
use crate::gallery::lie::lie_operator;
use crate::gallery::metric::Metric;
use crate::gallery::spaces::{covector_space, sym2_space, PackedSym2};
use crate::op::{DiffOp, MultiIndex, SpaceSpec};

/// Kinds of dual-side operators.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DualKind {
    /// ad(Killing), the stress-equations operator.
    Cauchy,
    /// packed symmetric 2-tensors to covectors, omega^{ti} d_t (.)_ij.
    Div,
    /// the explicit sigma matrix, equal to 2 ad(Ricci).
    AdRicciSigma,
}

pub fn dual_operator(m: &Metric, kind: DualKind) -> Result<DiffOp> {
    match kind {
        DualKind::Cauchy => Ok(lie_operator(m, false)?.adjoint()),
        DualKind::Div => {
            if !m.is_constant() {
                return Err(Error::FlatBackgroundRequired);
            }
            Ok(div_metric(m, "Om"))
        }
        DualKind::AdRicciSigma => {
            if !m.is_constant() {
                return Err(Error::FlatBackgroundRequired);
            }
            Ok(adricci_sigma(m))
        }
    }
}

/// (div X)_j = omega^{ti} d_t X_ij.
pub fn div_metric(m: &Metric, src_prefix: &str) -> DiffOp {
    let n = m.n();
    let pack = PackedSym2::new(n);
    let mut op = DiffOp::zero(sym2_space(src_prefix, n), covector_space("w", n), n);
    for j in 0..n {
        for t in 0..n {
            for i in 0..n {
                if !m.up(t, i).is_zero() {
                    op.add_term(j, pack.index(i, j), MultiIndex::unit(n, t), m.up(t, i).clone());
                }
            }
        }
    }
    op
}

/// The plain divergence (no metric): (C X)^r = d_i X^{ri}, the differential
/// constraint rows added to the test functions.
pub fn constraint_div(n: usize, src_prefix: &str) -> DiffOp {
    let pack = PackedSym2::new(n);
    let mut op = DiffOp::zero(sym2_space(src_prefix, n), covector_space("c", n), n);
    let one = RatFunc::one(n);
    for r in 0..n {
        for i in 0..n {
            op.add_term(r, pack.index(r, i), MultiIndex::unit(n, i), one.clone());
        }
    }
    op
}

/// sigma^{rs} = Box lam^{rs} + omega^{rs} d_ij lam^{ij}
///              - omega^{sj} d_ij lam^{ri} - omega^{ri} d_ij lam^{sj},
/// on packed symmetric test functions (dumb summations folded).
fn adricci_sigma(m: &Metric) -> DiffOp {
    let n = m.n();
    let pack = PackedSym2::new(n);
    let mut op = DiffOp::zero(sym2_space("lam", n), sym2_space("sig", n), n);
    for (p, &(r, s)) in pack.pairs().iter().enumerate() {
        for i in 0..n {
            for j in 0..n {
                // Box on the diagonal column
                if !m.up(i, j).is_zero() {
                    op.add_term(p, pack.index(r, s), mu2(n, i, j), m.up(i, j).clone());
                }
                if !m.up(r, s).is_zero() {
                    op.add_term(p, pack.index(i, j), mu2(n, i, j), m.up(r, s).clone());
                }
                if !m.up(s, j).is_zero() {
                    op.add_term(p, pack.index(r, i), mu2(n, i, j), m.up(s, j).neg());
                }
                if !m.up(r, i).is_zero() {
                    op.add_term(p, pack.index(s, j), mu2(n, i, j), m.up(r, i).neg());
                }
            }
        }
    }
    op
}

fn mu2(n: usize, i: usize, j: usize) -> MultiIndex {
    MultiIndex::unit(n, i).bump(j)
}

/// The gauge reduction of the Einstein operator on barred potentials:
/// 2 E ∘ bar_inv = Box ⊗ id + remainder, with the remainder factoring
/// through the barred divergence.
#[derive(Debug, Clone)]
pub struct GaugeReduction {
    pub box_part: DiffOp,
    pub remainder: DiffOp,
    /// remainder = factor ∘ (barred divergence), exactly.
    pub factor: DiffOp,
}

pub fn gauge_reduce_einstein(m: &Metric, budget: &Budget) -> Result<GaugeReduction> {
    let n = m.n();
    if n < 3 {
        return Err(Error::DegenerateAtN2);
    }
    let einstein = linearized_curvature(m, CurvatureKind::Einstein)?;
    let bar_inv = algebraic_map(m, AlgebraicKind::BarInv)?;
    let two_e = einstein.scale(&RatFunc::int(n, 2)).compose(&bar_inv)?;
    let box_part = box_tensor_id(m, two_e.src().clone(), two_e.dst().clone());
    let remainder = two_e.sub(&box_part)?;
    let gauge_div = div_metric(m, "Omb");
    let factor = left_factor(&remainder, &gauge_div, budget)?.ok_or_else(|| {
        Error::Unsupported("gauge remainder does not factor through the divergence".into())
    })?;
    Ok(GaugeReduction { box_part, remainder, factor })
}

/// Box ⊗ identity on a packed space.
fn box_tensor_id(m: &Metric, src: SpaceSpec, dst: SpaceSpec) -> DiffOp {
    let n = m.n();
    let mut op = DiffOp::zero(src, dst, n);
    for p in 0..op.dst().dim() {
        for i in 0..n {
            for j in 0..n {
                if !m.up(i, j).is_zero() {
                    op.add_term(p, p, mu2(n, i, j), m.up(i, j).clone());
                }
            }
        }
    }
    op
}

/// True iff the plain divergence of sigma factors through the constraint
/// rows d_i lam^{ri} = 0 (it vanishes identically for flat metrics, so the
/// factorization is the zero operator; a generic second order operator fails).
pub fn constraint_coherence_check(m: &Metric, budget: &Budget) -> Result<bool> {
    let n = m.n();
    let sigma = dual_operator(m, DualKind::AdRicciSigma)?;
    let plain = constraint_div(n, "sig");
    let div_sigma = plain.compose(&sigma)?;
    let constraint = constraint_div(n, "lam");
    Ok(left_factor(&div_sigma, &constraint, budget)?.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cauchy_shape() {
        for n in [2usize, 3, 4] {
            let m = Metric::minkowski(n);
            let c = dual_operator(&m, DualKind::Cauchy).unwrap();
            assert_eq!(c.dst().dim(), n);
            assert_eq!(c.src().dim(), n * (n + 1) / 2);
            assert_eq!(c.order(), 1);
        }
    }

    #[test]
    fn div_annihilates_einstein() {
        for n in [2usize, 3] {
            let m = Metric::minkowski(n);
            let e = linearized_curvature(&m, CurvatureKind::Einstein).unwrap();
            let div = dual_operator(&m, DualKind::Div).unwrap();
            assert!(div.compose(&e).unwrap().is_zero(), "n={n}");
        }
    }

    #[test]
    fn sigma_is_twice_adjoint_ricci() {
        for n in [2usize, 3] {
            let m = Metric::minkowski(n);
            let sigma = dual_operator(&m, DualKind::AdRicciSigma).unwrap();
            let ricci = linearized_curvature(&m, CurvatureKind::Ricci).unwrap();
            let two_ad = ricci.adjoint().scale(&RatFunc::int(n, 2));
            assert!(sigma.entries_eq(&two_ad), "n={n}");
        }
    }

    #[test]
    fn gauge_reduction_small() {
        let m = Metric::euclid(3);
        let b = Budget::unlimited();
        let g = gauge_reduce_einstein(&m, &b).unwrap();
        assert_eq!(g.factor.order(), 1);
        // remainder = factor ∘ gauge divergence, exactly
        let gauge_div = div_metric(&m, "Omb");
        let recomposed = g.factor.compose(&gauge_div).unwrap();
        assert!(recomposed.entries_eq(&g.remainder));
    }

    #[test]
    fn coherence_holds_and_generic_fails() {
        let b = Budget::unlimited();
        let m = Metric::euclid(3);
        assert!(constraint_coherence_check(&m, &b).unwrap());
        // negative control: replace sigma by an asymmetric second order operator
        let n = 3;
        let mut random_op = DiffOp::zero(sym2_space("lam", n), sym2_space("sig", n), n);
        random_op.add_term(0, 1, mu2(n, 0, 0), RatFunc::one(n));
        random_op.add_term(2, 0, mu2(n, 1, 2), RatFunc::int(n, 3));
        random_op.add_term(4, 4, mu2(n, 2, 2), RatFunc::int(n, -1));
        let plain = constraint_div(n, "sig");
        let div_sigma = plain.compose(&random_op).unwrap();
        let constraint = constraint_div(n, "lam");
        assert!(left_factor(&div_sigma, &constraint, &b).unwrap().is_none());
    }
}
