//! Module-level queries on operators: compatibility conditions (syzygies),
//! row-module equality, generic rank, and left factorization.

use super::groebner::{gb_compute, GbOutput, GroebnerBasis};
use super::order::TermOrder;
use super::row::OpRow;
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::op::{DiffOp, SpaceSpec, WeylPoly};

/// The rows of an operator as elements of B^{src.dim}.
pub fn rows_of(d: &DiffOp) -> Vec<OpRow> {
    d.rows().iter().map(|r| OpRow::new(r.clone())).collect()
}

fn op_from_rows(rows: Vec<OpRow>, src: SpaceSpec, dst_name: &str, n_vars: usize) -> DiffOp {
    let dst = SpaceSpec::vector(dst_name, rows.len());
    let mut out = DiffOp::zero(src, dst, n_vars);
    for (r, row) in rows.into_iter().enumerate() {
        for (c, p) in row.into_comps().into_iter().enumerate() {
            out.set_entry(r, c, p);
        }
    }
    out
}

/// Gröbner basis of the row module of `d` under the default POT order.
pub fn gb_of(d: &DiffOp, budget: &Budget) -> Result<GbOutput> {
    gb_compute(
        &rows_of(d),
        d.src().dim(),
        d.n_vars(),
        &TermOrder::pot(d.src().dim()),
        budget,
    )
}

/// Generating set of the compatibility conditions of `d`: an operator S with
/// S ∘ d = 0 whose rows generate the full left kernel of the row map. The
/// rows are auto-reduced and presented largest leading monomial first.
pub fn syzygy_module(d: &DiffOp, budget: &Budget) -> Result<DiffOp> {
    let out = gb_of(d, budget)?;
    let s = op_from_rows(out.syzygies, d.dst().clone(), "cc", d.n_vars());
    debug_assert!(s.dst().dim() == 0 || s.compose(d)?.is_zero(), "syzygy soundness");
    Ok(s)
}

/// Row-module equality: every row of `a` reduces to zero modulo a basis of
/// `b`'s rows, and conversely. Generator presentation does not matter.
pub fn module_equal(a: &DiffOp, b: &DiffOp, budget: &Budget) -> Result<bool> {
    if a.src().dim() != b.src().dim() {
        return Err(Error::SpaceMismatch { expected: a.src().dim(), found: b.src().dim() });
    }
    let gb_b = gb_of(b, budget)?.basis;
    for row in rows_of(a) {
        if !gb_b.contains(&row, budget)? {
            return Ok(false);
        }
    }
    let gb_a = gb_of(a, budget)?.basis;
    for row in rows_of(b) {
        if !gb_a.contains(&row, budget)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Generic left row rank over the skew fraction field: the number of distinct
/// components carrying a leading term in a POT basis of the row module.
pub fn op_rank(d: &DiffOp, budget: &Budget) -> Result<usize> {
    Ok(gb_of(d, budget)?.basis.leading_components().len())
}

/// Factor `l` through `d`: when every row of `l` lies in the row module of
/// `d`, assemble G with l = G ∘ d from the tracked cofactors; otherwise None.
pub fn left_factor(l: &DiffOp, d: &DiffOp, budget: &Budget) -> Result<Option<DiffOp>> {
    if l.src().dim() != d.src().dim() {
        return Err(Error::SpaceMismatch { expected: d.src().dim(), found: l.src().dim() });
    }
    let out = gb_of(d, budget)?;
    let gb: &GroebnerBasis = &out.basis;
    let p = d.dst().dim();
    let mut g = DiffOp::zero(d.dst().clone(), l.dst().clone(), l.n_vars());
    for (r, row) in rows_of(l).into_iter().enumerate() {
        let (nf, quot) = gb.normal_form_with_trace(&row, budget)?;
        if !nf.is_zero() {
            return Ok(None);
        }
        // row = Σ_k quot_k ∘ gens_k and gens_k = cof_k · d-rows, so the r-th
        // row of G is Σ_k quot_k ∘ cof_k.
        let mut grow = OpRow::zero(p, l.n_vars());
        for (k, q) in quot.iter().enumerate() {
            if q.is_zero() {
                continue;
            }
            grow.add_assign(&gb.cofactors()[k].left_mul(q));
        }
        for (c, entry) in grow.into_comps().into_iter().enumerate() {
            g.set_entry(r, c, entry);
        }
    }
    debug_assert!(g.compose(d)?.sub(l)?.is_zero(), "exact factorization");
    Ok(Some(g))
}

/// Project rows of `d` onto a subset of source components (column restriction).
pub fn restrict_columns(d: &DiffOp, cols: &[usize]) -> DiffOp {
    let labels: Vec<String> = cols.iter().map(|&c| d.src().label(c).to_string()).collect();
    let weights = cols.iter().map(|&c| d.src().weight(c).clone()).collect();
    let src = SpaceSpec::new(d.src().name(), labels, weights);
    let mut out = DiffOp::zero(src, d.dst().clone(), d.n_vars());
    for r in 0..d.dst().dim() {
        for (k, &c) in cols.iter().enumerate() {
            out.set_entry(r, k, d.entry(r, c).clone());
        }
    }
    out
}

/// Normal form of a single operator row modulo the row module of `d`.
pub fn row_normal_form(row: &OpRow, d: &DiffOp, budget: &Budget) -> Result<OpRow> {
    gb_of(d, budget)?.basis.normal_form(row, budget)
}

/// Wrap loose rows as an operator with the given source space.
pub fn rows_as_op(rows: Vec<OpRow>, src: SpaceSpec, dst_name: &str, n_vars: usize) -> DiffOp {
    op_from_rows(rows, src, dst_name, n_vars)
}

/// Left-multiply an operator row by a scalar operator q: q ∘ row.
pub fn row_left_mul(row: &OpRow, q: &WeylPoly) -> OpRow {
    row.left_mul(q)
}
