//! Killing and conformal Killing operators in general (Medolaghi) form,
//! valid over variable metrics.

use crate::coeff::{rat_frac, RatFunc};
use crate::error::Result;
use crate::gallery::metric::Metric;
use crate::gallery::spaces::{sym2_space, sym2_trace_free_space, PackedSym2};
use crate::op::{DiffOp, MultiIndex, SpaceSpec};

/// The Killing operator xi -> L(xi) omega, or the conformal Killing operator
/// xi -> L(xi) density for `conformal = true` (which requires the density and
/// lands in the trace-free space of dimension n(n+1)/2 - 1).
pub fn lie_operator(m: &Metric, conformal: bool) -> Result<DiffOp> {
    if conformal {
        let full = conformal_killing_embedded(m)?;
        // drop the last packed diagonal row; the vanishing trace recovers it
        let n = m.n();
        let dst = sym2_trace_free_space("Omh", n);
        let mut out = DiffOp::zero(full.src().clone(), dst, n);
        for r in 0..out.dst().dim() {
            for c in 0..out.src().dim() {
                out.set_entry(r, c, full.entry(r, c).clone());
            }
        }
        Ok(out)
    } else {
        Ok(medolaghi(m, m_matrix(m), false, sym2_space("Om", m.n())))
    }
}

/// The conformal Killing operator with all n(n+1)/2 packed components, before
/// the projection onto the trace-free basis. Its trace vanishes identically.
pub fn conformal_killing_embedded(m: &Metric) -> Result<DiffOp> {
    let g = m.density()?.clone();
    Ok(medolaghi(m, g, true, sym2_space("Omh", m.n())))
}

fn m_matrix(m: &Metric) -> Vec<Vec<RatFunc>> {
    (0..m.n())
        .map(|i| (0..m.n()).map(|j| m.lo(i, j).clone()).collect())
        .collect()
}

/// Omega_ij = g_rj d_i xi^r + g_ir d_j xi^r + xi^r ∂_r g_ij
///            [- (2/n) g_ij d_r xi^r  in the conformal case].
fn medolaghi(m: &Metric, g: Vec<Vec<RatFunc>>, conformal: bool, dst: SpaceSpec) -> DiffOp {
    let n = m.n();
    let pack = PackedSym2::new(n);
    let src = SpaceSpec::vector("xi", n);
    let mut op = DiffOp::zero(src, dst, n);
    for k in 0..pack.dim() {
        let (i, j) = pack.pair(k);
        for r in 0..n {
            op.add_term(k, r, MultiIndex::unit(n, i), g[r][j].clone());
            op.add_term(k, r, MultiIndex::unit(n, j), g[i][r].clone());
            let dg = g[i][j].derive(r);
            if !dg.is_zero() {
                op.add_term(k, r, MultiIndex::zero(n), dg);
            }
            if conformal {
                let c = g[i][j].scale(&rat_frac(-2, n as i64));
                op.add_term(k, r, MultiIndex::unit(n, r), c);
            }
        }
    }
    op
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::rat;

    #[test]
    fn rotation_is_an_isometry() {
        // Killing over euclid(2) applied to xi = (x2, -x1) gives 0
        let m = Metric::euclid(2);
        let k = lie_operator(&m, false).unwrap();
        let xi = vec![RatFunc::var(2, 1), RatFunc::var(2, 0).neg()];
        let out = k.apply(&xi).unwrap();
        assert!(out.iter().all(|f| f.is_zero()));
        // but a shear is not
        let xi = vec![RatFunc::var(2, 1), RatFunc::zero(2)];
        let out = k.apply(&xi).unwrap();
        assert!(out.iter().any(|f| !f.is_zero()));
    }

    #[test]
    fn killing_dimensions() {
        let m = Metric::minkowski(4);
        let k = lie_operator(&m, false).unwrap();
        assert_eq!(k.src().dim(), 4);
        assert_eq!(k.dst().dim(), 10);
        assert_eq!(k.order(), 1);
    }

    #[test]
    fn variable_metric_medolaghi_term() {
        // diag(1, x1^2) has a nonzero zero-order Medolaghi term xi^r ∂_r g_ij
        let x1 = RatFunc::var(2, 0);
        let m = Metric::custom(
            2,
            vec![
                vec![RatFunc::one(2), RatFunc::zero(2)],
                vec![RatFunc::zero(2), x1.mul(&x1)],
            ],
        )
        .unwrap();
        let k = lie_operator(&m, false).unwrap();
        // row Om22, column xi1 contains the coefficient ∂_1(x1^2) = 2 x1
        let entry = k.entry(2, 0);
        assert_eq!(
            entry.coeff(&MultiIndex::zero(2)),
            Some(&x1.scale(&rat(2)))
        );
    }

    #[test]
    fn conformal_needs_density() {
        let entries = vec![
            vec![RatFunc::int(2, 2), RatFunc::zero(2)],
            vec![RatFunc::zero(2), RatFunc::one(2)],
        ];
        let m = Metric::custom(2, entries).unwrap();
        assert!(lie_operator(&m, true).is_err());
        assert!(lie_operator(&m, false).is_ok());
    }

    #[test]
    fn conformal_lands_in_trace_free() {
        let m = Metric::minkowski(4);
        let ck = lie_operator(&m, true).unwrap();
        assert_eq!(ck.dst().dim(), 9);
    }
}
