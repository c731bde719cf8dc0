//! Linearized curvature operators over a constant (flat) metric.

use crate::coeff::{rat_frac, RatFunc};
use crate::error::{Error, Result};
use crate::gallery::metric::Metric;
use crate::gallery::spaces::{sym2_space, PackedSym2};
use crate::op::{DiffOp, MultiIndex, SpaceSpec};

/// Kinds of linearized curvature operators.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurvatureKind {
    Christoffel,
    Riemann,
    Ricci,
    /// Omega -> tr(R), the scalar trace of the linearized Ricci tensor.
    Trace,
    Einstein,
    Dalembertian,
}

/// Build the requested operator; the metric must be constant.
pub fn linearized_curvature(m: &Metric, kind: CurvatureKind) -> Result<DiffOp> {
    if !m.is_constant() {
        return Err(Error::FlatBackgroundRequired);
    }
    Ok(match kind {
        CurvatureKind::Christoffel => christoffel(m),
        CurvatureKind::Riemann => riemann(m),
        CurvatureKind::Ricci => ricci(m),
        CurvatureKind::Trace => ricci_trace(m),
        CurvatureKind::Einstein => einstein(m)?,
        CurvatureKind::Dalembertian => dalembertian(m),
    })
}

fn two(n: usize) -> MultiIndex {
    MultiIndex::zero(n)
}

fn d1(n: usize, i: usize) -> MultiIndex {
    MultiIndex::unit(n, i)
}

fn d2(n: usize, i: usize, j: usize) -> MultiIndex {
    MultiIndex::unit(n, i).bump(j)
}

/// Gamma^k_ij = (1/2) omega^{kr} (d_i Om_rj + d_j Om_ir - d_r Om_ij),
/// first order, components (k, (i,j)) with i <= j.
fn christoffel(m: &Metric) -> DiffOp {
    let n = m.n();
    let pack = PackedSym2::new(n);
    let mut labels = Vec::new();
    let mut weights = Vec::new();
    for k in 0..n {
        for (i, j) in pack.pairs() {
            labels.push(format!("Gam{}{}{}", k + 1, i + 1, j + 1));
            weights.push(if i == j { crate::coeff::rat(1) } else { crate::coeff::rat(2) });
        }
    }
    let dst = SpaceSpec::new("Gam", labels, weights);
    let mut op = DiffOp::zero(sym2_space("Om", n), dst, n);
    let half = rat_frac(1, 2);
    for k in 0..n {
        for (p, &(i, j)) in pack.pairs().iter().enumerate() {
            let row = k * pack.dim() + p;
            for r in 0..n {
                let c = m.up(k, r).scale(&half);
                if c.is_zero() {
                    continue;
                }
                op.add_term(row, pack.index(r, j), d1(n, i), c.clone());
                op.add_term(row, pack.index(i, r), d1(n, j), c.clone());
                op.add_term(row, pack.index(i, j), d1(n, r), c.neg());
            }
        }
    }
    op
}

/// 2 R_ij = omega^{rs} (d_ij Om_rs + d_rs Om_ij - d_ri Om_sj - d_sj Om_ri);
/// the public operator is R itself.
fn ricci(m: &Metric) -> DiffOp {
    let n = m.n();
    let pack = PackedSym2::new(n);
    let mut op = DiffOp::zero(sym2_space("Om", n), sym2_space("R", n), n);
    let half = rat_frac(1, 2);
    for (p, &(i, j)) in pack.pairs().iter().enumerate() {
        for r in 0..n {
            for s in 0..n {
                let c = m.up(r, s).scale(&half);
                if c.is_zero() {
                    continue;
                }
                op.add_term(p, pack.index(r, s), d2(n, i, j), c.clone());
                op.add_term(p, pack.index(i, j), d2(n, r, s), c.clone());
                op.add_term(p, pack.index(s, j), d2(n, r, i), c.neg());
                op.add_term(p, pack.index(r, i), d2(n, s, j), c.neg());
            }
        }
    }
    op
}

/// tr(R) = omega^{ij} d_ij tr(Om) - omega^{ru} omega^{sv} d_rs Om_uv.
fn ricci_trace(m: &Metric) -> DiffOp {
    let n = m.n();
    let pack = PackedSym2::new(n);
    let mut op = DiffOp::zero(sym2_space("Om", n), SpaceSpec::scalar("trR"), n);
    for i in 0..n {
        for j in 0..n {
            for u in 0..n {
                for v in 0..n {
                    let c = m.up(i, j).mul(m.up(u, v));
                    if !c.is_zero() {
                        op.add_term(0, pack.index(u, v), d2(n, i, j), c);
                    }
                    let c = m.up(i, u).mul(m.up(j, v)).neg();
                    if !c.is_zero() {
                        op.add_term(0, pack.index(u, v), d2(n, i, j), c);
                    }
                }
            }
        }
    }
    op
}

/// E = R - (1/2) omega tr(R), assembled as a linear combination.
fn einstein(m: &Metric) -> Result<DiffOp> {
    let n = m.n();
    let r = ricci(m);
    let tr = ricci_trace(m);
    // omega column: scalar -> packed, wedge with the metric entries
    let pack = PackedSym2::new(n);
    let mut col = DiffOp::zero(SpaceSpec::scalar("trR"), sym2_space("E", n), n);
    for (p, &(i, j)) in pack.pairs().iter().enumerate() {
        if !m.lo(i, j).is_zero() {
            col.add_term(p, 0, two(n), m.lo(i, j).clone());
        }
    }
    let omega_tr = col.compose(&tr)?;
    let mut e = DiffOp::linear_combine(&[
        (RatFunc::one(n), &r),
        (RatFunc::constant(n, rat_frac(-1, 2)), &omega_tr),
    ])?;
    e = relabel(e, sym2_space("Om", n), sym2_space("E", n));
    Ok(e)
}

/// Box = omega^{ij} d_ij on a scalar.
fn dalembertian(m: &Metric) -> DiffOp {
    let n = m.n();
    let mut op = DiffOp::zero(SpaceSpec::scalar("phi"), SpaceSpec::scalar("boxphi"), n);
    for i in 0..n {
        for j in 0..n {
            if !m.up(i, j).is_zero() {
                op.add_term(0, 0, d2(n, i, j), m.up(i, j).clone());
            }
        }
    }
    op
}

/// Lowered linearized curvature tensor
/// R_kl,ij = (1/2)(d_il Om_kj - d_ik Om_lj - d_jl Om_ki + d_jk Om_li),
/// packed on its independent components: pairs a = (k<l), b = (i<j) with
/// a <= b, minus one component per four distinct indices (first Bianchi).
fn riemann(m: &Metric) -> DiffOp {
    let n = m.n();
    let pack = PackedSym2::new(n);
    let comps = riemann_components(n);
    let mut labels = Vec::new();
    for &((k, l), (i, j)) in &comps {
        labels.push(format!("Rm{}{}{}{}", k + 1, l + 1, i + 1, j + 1));
    }
    let weights = vec![crate::coeff::rat(1); labels.len()];
    let dst = SpaceSpec::new("Rm", labels, weights);
    let mut op = DiffOp::zero(sym2_space("Om", n), dst, n);
    let half = rat_frac(1, 2);
    let one = RatFunc::one(n);
    for (row, &((k, l), (i, j))) in comps.iter().enumerate() {
        let c = one.scale(&half);
        op.add_term(row, pack.index(k, j), d2(n, i, l), c.clone());
        op.add_term(row, pack.index(l, j), d2(n, i, k), c.neg());
        op.add_term(row, pack.index(k, i), d2(n, j, l), c.neg());
        op.add_term(row, pack.index(l, i), d2(n, j, k), c);
    }
    op
}

/// Independent components of a curvature-type tensor, count n^2(n^2-1)/12:
/// pair-major lexicographic (k<l) <= (i<j), dropping ((p,s),(q,r)) for every
/// p<q<r<s (the first Bianchi identity eliminates it).
pub fn riemann_components(n: usize) -> Vec<((usize, usize), (usize, usize))> {
    let mut skew_pairs = Vec::new();
    for a in 0..n {
        for b in (a + 1)..n {
            skew_pairs.push((a, b));
        }
    }
    let mut dropped = Vec::new();
    for p in 0..n {
        for q in (p + 1)..n {
            for r in (q + 1)..n {
                for s in (r + 1)..n {
                    dropped.push(((p, s), (q, r)));
                }
            }
        }
    }
    let mut out = Vec::new();
    for (ai, &a) in skew_pairs.iter().enumerate() {
        for &b in &skew_pairs[ai..] {
            if !dropped.contains(&(a, b)) {
                out.push((a, b));
            }
        }
    }
    out
}

fn relabel(op: DiffOp, src: SpaceSpec, dst: SpaceSpec) -> DiffOp {
    let mut out = DiffOp::zero(src, dst, op.n_vars());
    for r in 0..op.dst().dim() {
        for c in 0..op.src().dim() {
            out.set_entry(r, c, op.entry(r, c).clone());
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gallery::lie::lie_operator;

    #[test]
    fn riemann_component_counts() {
        assert_eq!(riemann_components(2).len(), 1);
        assert_eq!(riemann_components(3).len(), 6);
        assert_eq!(riemann_components(4).len(), 20);
    }

    #[test]
    fn ricci_kills_killing_n2() {
        let m = Metric::euclid(2);
        let r = linearized_curvature(&m, CurvatureKind::Ricci).unwrap();
        let k = lie_operator(&m, false).unwrap();
        assert!(r.compose(&k).unwrap().is_zero());
    }

    #[test]
    fn riemann_kills_killing_n3() {
        let m = Metric::minkowski(3);
        let rm = linearized_curvature(&m, CurvatureKind::Riemann).unwrap();
        let k = lie_operator(&m, false).unwrap();
        assert!(rm.compose(&k).unwrap().is_zero());
        assert_eq!(rm.order(), 2);
    }

    #[test]
    fn christoffel_is_first_order() {
        let m = Metric::minkowski(3);
        let g = linearized_curvature(&m, CurvatureKind::Christoffel).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.dst().dim(), 3 * 6);
    }

    #[test]
    fn einstein_trace_identity() {
        // tr(E) = -(n-2)/2 tr(R) as exact operator identity
        for n in [3usize, 4] {
            let m = Metric::minkowski(n);
            let e = linearized_curvature(&m, CurvatureKind::Einstein).unwrap();
            let tr = linearized_curvature(&m, CurvatureKind::Trace).unwrap();
            // trace of E: tr ∘ (E viewed on packed): same contraction matrix
            let tr_e = contraction(&m).compose(&e).unwrap();
            let rhs = tr.scale(&RatFunc::constant(n, rat_frac(-((n as i64) - 2), 2)));
            assert!(tr_e.entries_eq(&rhs), "n={n}");
        }
    }

    /// tr: packed S2 -> scalar, omega^{ij} X_ij.
    fn contraction(m: &Metric) -> DiffOp {
        let n = m.n();
        let pack = PackedSym2::new(n);
        let mut op = DiffOp::zero(sym2_space("E", n), SpaceSpec::scalar("tr"), n);
        for i in 0..n {
            for j in 0..n {
                if !m.up(i, j).is_zero() {
                    op.add_term(0, pack.index(i, j), MultiIndex::zero(n), m.up(i, j).clone());
                }
            }
        }
        op
    }

    #[test]
    fn ricci_from_christoffel_contraction() {
        // d_i Gam^r_rj - d_r Gam^r_ij reproduces R_ij exactly
        for n in [2usize, 3] {
            let m = Metric::minkowski(n);
            let gam = linearized_curvature(&m, CurvatureKind::Christoffel).unwrap();
            let r = linearized_curvature(&m, CurvatureKind::Ricci).unwrap();
            let pack = PackedSym2::new(n);
            // contraction operator Gam-space -> packed S2
            let mut c = DiffOp::zero(gam.dst().clone(), sym2_space("R", n), n);
            for (p, &(i, j)) in pack.pairs().iter().enumerate() {
                for rr in 0..n {
                    let col_rj = rr * pack.dim() + pack.index(rr, j);
                    c.add_term(p, col_rj, MultiIndex::unit(n, i), RatFunc::one(n));
                    let col_ij = rr * pack.dim() + pack.index(i, j);
                    c.add_term(p, col_ij, MultiIndex::unit(n, rr), RatFunc::one(n).neg());
                }
            }
            let built = c.compose(&gam).unwrap();
            assert!(built.entries_eq(&r), "n={n}");
        }
    }

    #[test]
    fn variable_metric_rejected() {
        let x1 = RatFunc::var(2, 0);
        let m = Metric::custom(
            2,
            vec![
                vec![RatFunc::one(2), RatFunc::zero(2)],
                vec![RatFunc::zero(2), x1.mul(&x1)],
            ],
        )
        .unwrap();
        assert_eq!(
            linearized_curvature(&m, CurvatureKind::Ricci).unwrap_err(),
            Error::FlatBackgroundRequired
        );
    }
}
