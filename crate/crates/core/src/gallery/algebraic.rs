//! Order-0 algebraic maps of the gallery: the bar map and its inverse, the
//! trace-free projection, the second-jet splitting maps, and the
//! symmetric/skew decomposition of 2-tensors.

use crate::coeff::{rat, rat_frac, Rat, RatFunc};
use crate::error::{Error, Result};
use crate::gallery::metric::Metric;
use crate::gallery::spaces::{sym2_space, PackedSkew2, PackedSym2};
use crate::op::{DiffOp, MultiIndex, SpaceSpec};

/// Kinds of order-0 maps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlgebraicKind {
    /// X -> X - (1/2) omega tr(X); invertible for n >= 3.
    Bar,
    /// inverse of Bar: X -> X - 1/(n-2) omega tr(X).
    BarInv,
    /// X -> X - (1/n) omega tr(X); kernel spanned by omega, never invertible.
    TraceFree,
    /// A -> (n-2) A + omega tr(A), the splitting iso with tr out = 2(n-1) tr(A).
    ElationToRicci,
    /// exact inverse of ElationToRicci (n >= 3).
    RicciToElation,
    /// full 2-tensor -> (symmetric part, skew part), packed.
    DecomposeT2,
}

pub fn algebraic_map(m: &Metric, kind: AlgebraicKind) -> Result<DiffOp> {
    let n = m.n();
    match kind {
        AlgebraicKind::Bar => Ok(trace_shift(m, rat_frac(-1, 2), "Om", "Omb")),
        AlgebraicKind::BarInv => {
            if n == 2 {
                return Err(Error::DegenerateAtN2);
            }
            Ok(trace_shift(m, rat_frac(-1, n as i64 - 2), "Omb", "Om"))
        }
        AlgebraicKind::TraceFree => Ok(trace_shift(m, rat_frac(-1, n as i64), "Om", "Omh")),
        AlgebraicKind::ElationToRicci => Ok(elation_to_ricci(m)),
        AlgebraicKind::RicciToElation => {
            if n == 2 {
                return Err(Error::DegenerateAtN2);
            }
            Ok(ricci_to_elation(m))
        }
        AlgebraicKind::DecomposeT2 => Ok(decompose_t2(n)),
    }
}

/// The trace map X -> omega^{ij} X_ij as an order-0 operator.
pub fn trace_op(m: &Metric, src: &SpaceSpec, dst_name: &str) -> DiffOp {
    let n = m.n();
    let pack = PackedSym2::new(n);
    let mut op = DiffOp::zero(src.clone(), SpaceSpec::scalar(dst_name), n);
    for i in 0..n {
        for j in 0..n {
            if !m.up(i, j).is_zero() {
                op.add_term(0, pack.index(i, j), MultiIndex::zero(n), m.up(i, j).clone());
            }
        }
    }
    op
}

/// X -> X + c * omega tr(X) on packed symmetric 2-tensors.
fn trace_shift(m: &Metric, c: Rat, src_name: &str, dst_name: &str) -> DiffOp {
    let n = m.n();
    let pack = PackedSym2::new(n);
    let mut op = DiffOp::zero(sym2_space(src_name, n), sym2_space(dst_name, n), n);
    for (p, &(i, j)) in pack.pairs().iter().enumerate() {
        op.add_term(p, p, MultiIndex::zero(n), RatFunc::one(n));
        for u in 0..n {
            for v in 0..n {
                let coeff = m.lo(i, j).mul(m.up(u, v)).scale(&c);
                if !coeff.is_zero() {
                    op.add_term(p, pack.index(u, v), MultiIndex::zero(n), coeff);
                }
            }
        }
    }
    op
}

/// A -> (n-2) A + omega tr(A). Applying the trace gives 2(n-1) tr(A).
fn elation_to_ricci(m: &Metric) -> DiffOp {
    let n = m.n();
    let pack = PackedSym2::new(n);
    let mut op = DiffOp::zero(sym2_space("A", n), sym2_space("R", n), n);
    for (p, &(i, j)) in pack.pairs().iter().enumerate() {
        op.add_term(p, p, MultiIndex::zero(n), RatFunc::int(n, n as i64 - 2));
        for u in 0..n {
            for v in 0..n {
                let coeff = m.lo(i, j).mul(m.up(u, v));
                if !coeff.is_zero() {
                    op.add_term(p, pack.index(u, v), MultiIndex::zero(n), coeff);
                }
            }
        }
    }
    op
}

/// R -> (R - omega tr(R)/(2(n-1))) / (n-2).
fn ricci_to_elation(m: &Metric) -> DiffOp {
    let n = m.n();
    let pack = PackedSym2::new(n);
    let mut op = DiffOp::zero(sym2_space("R", n), sym2_space("A", n), n);
    let inv = rat_frac(1, n as i64 - 2);
    let tr_coeff = rat_frac(-1, 2 * (n as i64 - 1));
    for (p, &(i, j)) in pack.pairs().iter().enumerate() {
        op.add_term(p, p, MultiIndex::zero(n), RatFunc::constant(n, inv.clone()));
        for u in 0..n {
            for v in 0..n {
                let coeff = m.lo(i, j).mul(m.up(u, v)).scale(&tr_coeff).scale(&inv);
                if !coeff.is_zero() {
                    op.add_term(p, pack.index(u, v), MultiIndex::zero(n), coeff);
                }
            }
        }
    }
    op
}

/// A (full n^2 components, label Aij) -> (1/2)(A + A^T) packed symmetric
/// followed by (1/2)(A - A^T) packed skew.
fn decompose_t2(n: usize) -> DiffOp {
    let sym = PackedSym2::new(n);
    let skew = PackedSkew2::new(n);
    let mut labels: Vec<String> = Vec::new();
    let mut weights: Vec<Rat> = Vec::new();
    for &(i, j) in sym.pairs() {
        labels.push(format!("S{}{}", i + 1, j + 1));
        weights.push(if i == j { rat(1) } else { rat(2) });
    }
    for &(i, j) in skew.pairs() {
        labels.push(format!("F{}{}", i + 1, j + 1));
        weights.push(rat(2));
    }
    let dst = SpaceSpec::new("SplitT2", labels, weights);
    let src_labels: Vec<String> = (0..n)
        .flat_map(|i| (0..n).map(move |j| format!("A{}{}", i + 1, j + 1)))
        .collect();
    let src = SpaceSpec::new("A", src_labels, vec![rat(1); n * n]);
    let mut op = DiffOp::zero(src, dst, n);
    let half = RatFunc::constant(n, rat_frac(1, 2));
    let full = |i: usize, j: usize| i * n + j;
    for (p, &(i, j)) in sym.pairs().iter().enumerate() {
        op.add_term(p, full(i, j), MultiIndex::zero(n), half.clone());
        op.add_term(p, full(j, i), MultiIndex::zero(n), half.clone());
    }
    let off = sym.dim();
    for (q, &(i, j)) in skew.pairs().iter().enumerate() {
        op.add_term(off + q, full(i, j), MultiIndex::zero(n), half.clone());
        op.add_term(off + q, full(j, i), MultiIndex::zero(n), half.neg());
    }
    op
}

/// Inverse of `decompose_t2`: A_ij = S_ij + F_ij (unpacking both parts).
pub fn reassemble_t2(n: usize) -> DiffOp {
    let sym = PackedSym2::new(n);
    let skew = PackedSkew2::new(n);
    let split = decompose_t2(n);
    let mut op = DiffOp::zero(split.dst().clone(), split.src().clone(), n);
    let one = RatFunc::one(n);
    for i in 0..n {
        for j in 0..n {
            let row = i * n + j;
            op.add_term(row, sym.index(i, j), MultiIndex::zero(n), one.clone());
            if let Some((q, flip)) = skew.index(i, j) {
                let c = if flip { one.neg() } else { one.clone() };
                op.add_term(row, sym.dim() + q, MultiIndex::zero(n), c);
            }
        }
    }
    op
}

/// The metric itself as a packed tuple of coefficient functions.
pub fn packed_metric(m: &Metric) -> Vec<RatFunc> {
    let pack = PackedSym2::new(m.n());
    pack.pairs().iter().map(|&(i, j)| m.lo(i, j).clone()).collect()
}

/// Index raising on packed symmetric 2-tensors: X_kl -> omega^{uk} omega^{vl} X_kl.
/// The identity over a Euclidean metric; the canonical identification of the
/// tensor space with its dual otherwise.
pub fn raise_sym2(m: &Metric, src_prefix: &str, dst_prefix: &str) -> DiffOp {
    let n = m.n();
    let pack = PackedSym2::new(n);
    let mut op = DiffOp::zero(sym2_space(src_prefix, n), sym2_space(dst_prefix, n), n);
    for (p, &(u, v)) in pack.pairs().iter().enumerate() {
        for k in 0..n {
            for l in 0..n {
                let c = m.up(u, k).mul(m.up(v, l));
                if !c.is_zero() {
                    op.add_term(p, pack.index(k, l), MultiIndex::zero(n), c);
                }
            }
        }
    }
    op
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::op_rank;
    use crate::Budget;

    #[test]
    fn bar_involution() {
        for n in 3..=6 {
            let m = Metric::minkowski(n);
            let bar = algebraic_map(&m, AlgebraicKind::Bar).unwrap();
            let bar_inv = algebraic_map(&m, AlgebraicKind::BarInv).unwrap();
            let id = bar_inv.compose(&bar).unwrap();
            assert!(id.entries_eq(&DiffOp::identity(sym2_space("Om", n), n)), "n={n}");
        }
    }

    #[test]
    fn bar_inv_degenerate_at_n2() {
        let m = Metric::euclid(2);
        assert_eq!(
            algebraic_map(&m, AlgebraicKind::BarInv).unwrap_err(),
            Error::DegenerateAtN2
        );
        assert_eq!(
            algebraic_map(&m, AlgebraicKind::RicciToElation).unwrap_err(),
            Error::DegenerateAtN2
        );
        // bar itself is fine at n = 2
        assert!(algebraic_map(&m, AlgebraicKind::Bar).is_ok());
    }

    #[test]
    fn trace_free_kernel_is_the_metric() {
        for n in [3usize, 4] {
            let m = Metric::minkowski(n);
            let tf = algebraic_map(&m, AlgebraicKind::TraceFree).unwrap();
            let out = tf.apply(&packed_metric(&m)).unwrap();
            assert!(out.iter().all(|f| f.is_zero()), "omega in kernel, n={n}");
            let rank = op_rank(&tf, &Budget::unlimited()).unwrap();
            assert_eq!(rank, n * (n + 1) / 2 - 1, "kernel is one dimensional");
        }
    }

    #[test]
    fn elation_iso_roundtrip_and_trace() {
        for n in [3usize, 4] {
            let m = Metric::minkowski(n);
            let fwd = algebraic_map(&m, AlgebraicKind::ElationToRicci).unwrap();
            let back = algebraic_map(&m, AlgebraicKind::RicciToElation).unwrap();
            let id = back.compose(&fwd).unwrap();
            assert!(id.entries_eq(&DiffOp::identity(sym2_space("A", n), n)));
            // tr(R) = 2(n-1) tr(A)
            let tr_r = trace_op(&m, fwd.dst(), "t").compose(&fwd).unwrap();
            let tr_a = trace_op(&m, fwd.src(), "t");
            let scaled = tr_a.scale(&RatFunc::int(n, 2 * (n as i64 - 1)));
            assert!(tr_r.entries_eq(&scaled));
        }
    }

    #[test]
    fn decompose_reassemble_roundtrip() {
        for n in [2usize, 3] {
            let split = decompose_t2(n);
            let back = reassemble_t2(n);
            let id = back.compose(&split).unwrap();
            assert!(id.entries_eq(&DiffOp::identity(split.src().clone(), n)));
            let id2 = split.compose(&back).unwrap();
            assert!(id2.entries_eq(&DiffOp::identity(split.dst().clone(), n)));
        }
    }
}
