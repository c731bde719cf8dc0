//! Left Buchberger elimination over the rational Weyl algebra, with syzygy
//! extraction through an augmented tracking block.

use std::cmp::Ordering;


use super::order::TermOrder;
use super::row::OpRow;
use crate::budget::Budget;
use crate::coeff::RatFunc;
use crate::error::Result;
use crate::op::MultiIndex;

/// A left Gröbner basis of a row module in B^m, with the cofactor expression
/// of every generator in terms of the input rows.
#[derive(Debug, Clone)]
pub struct GroebnerBasis {
    order: TermOrder,
    m: usize,
    n_vars: usize,
    gens: Vec<OpRow>,
    /// gens[k] = cofactors[k] · input_rows, exactly.
    cofactors: Vec<OpRow>,
}

/// Result of one elimination run: the basis and a generating set of the left
/// syzygies of the input rows.
#[derive(Debug, Clone)]
pub struct GbOutput {
    pub basis: GroebnerBasis,
    pub syzygies: Vec<OpRow>,
}

struct Aug {
    row: OpRow, // length m + p: real block then tracking block
    lead: (usize, MultiIndex, RatFunc),
}

/// Compute a left Gröbner basis of the module generated by `rows` in B^m,
/// together with a generating set of the syzygy module. Deterministic: pairs
/// are processed by smallest lcm monomial (normal strategy), then input order.
pub fn gb_compute(
    rows: &[OpRow],
    m: usize,
    n_vars: usize,
    order: &TermOrder,
    budget: &Budget,
) -> Result<GbOutput> {
    let p = rows.len();
    let aug_order = TermOrder::pot(m + p);
    debug_assert_eq!(order.components(), m);
    // The declared order must agree with the default on the real block for the
    // augmented run to be an elimination order; custom priorities are applied
    // by permuting up front.
    let mut basis: Vec<Aug> = Vec::new();
    let mut syzygies: Vec<OpRow> = Vec::new();

    for (i, r) in rows.iter().enumerate() {
        debug_assert_eq!(r.len(), m);
        if r.is_zero() {
            syzygies.push(OpRow::unit(p, i, n_vars));
            continue;
        }
        let mut aug = permute_real(r, order).concat(&OpRow::unit(p, i, n_vars));
        aug.contentize(&aug_order);
        let lead = aug.leading(&aug_order).expect("nonzero row");
        debug_assert!(lead.0 < m);
        basis.push(Aug { row: aug, lead });
    }

    // (i, j, common leading component, exponent lcm)
    let mut pairs: Vec<(usize, usize, usize, MultiIndex)> = Vec::new();
    for i in 0..basis.len() {
        for j in (i + 1)..basis.len() {
            if basis[i].lead.0 == basis[j].lead.0 {
                pairs.push((i, j, basis[i].lead.0, basis[i].lead.1.lcm(&basis[j].lead.1)));
            }
        }
    }

    while !pairs.is_empty() {
        budget.check()?;
        // normal strategy: smallest lcm monomial under the order, then pair indices
        let mut best = 0;
        for k in 1..pairs.len() {
            let (bi, bj, bc, bl) = &pairs[best];
            let (ki, kj, kc, kl) = &pairs[k];
            let cmp = aug_order
                .cmp_mono((*kc, kl), (*bc, bl))
                .then_with(|| (*ki, *kj).cmp(&(*bi, *bj)));
            if cmp == Ordering::Less {
                best = k;
            }
        }
        let (i, j, _, lcm) = pairs.swap_remove(best);

        let s = s_vector(&basis[i], &basis[j], &lcm, n_vars, m + p);
        let reduced = reduce_real(s, &basis, &aug_order, m, budget)?;
        if real_is_zero(&reduced, m) {
            let track = reduced.slice(m..m + p);
            if !track.is_zero() {
                let mut t = track;
                t.contentize(&TermOrder::pot(p));
                syzygies.push(t);
            }
            continue;
        }
        let mut new_row = reduced;
        new_row.contentize(&aug_order);
        let lead = new_row.leading(&aug_order).expect("nonzero");
        debug_assert!(lead.0 < m, "reduced rows keep a real leading block");
        let new_idx = basis.len();
        for k in 0..new_idx {
            if basis[k].lead.0 == lead.0 {
                pairs.push((k, new_idx, lead.0, basis[k].lead.1.lcm(&lead.1)));
            }
        }
        basis.push(Aug { row: new_row, lead });
    }

    // Inter-reduce the basis; tracking blocks ride along so cofactors stay
    // exact. A generator whose real part dies in the process was redundant:
    // its tracking block is one more syzygy.
    let mut aug_rows: Vec<OpRow> = basis.into_iter().map(|a| a.row).collect();
    auto_reduce(&mut aug_rows, &aug_order, m, budget)?;
    aug_rows.retain(|r| {
        if real_is_zero(r, m) {
            let mut t = r.slice(m..m + p);
            t.contentize(&TermOrder::pot(p));
            syzygies.push(t);
            false
        } else {
            true
        }
    });
    aug_rows.sort_by(|a, b| {
        let la = a.leading(&aug_order).expect("nonzero");
        let lb = b.leading(&aug_order).expect("nonzero");
        aug_order.cmp_mono((la.0, &la.1), (lb.0, &lb.1))
    });

    let mut gens = Vec::with_capacity(aug_rows.len());
    let mut cofactors = Vec::with_capacity(aug_rows.len());
    for r in &aug_rows {
        gens.push(unpermute_real(&r.slice(0..m), order));
        cofactors.push(r.slice(m..m + p));
    }

    // Syzygies: inter-reduce as a module in B^p and present largest first.
    let syz_order = TermOrder::pot(p);
    auto_reduce(&mut syzygies, &syz_order, p, budget)?;
    syzygies.sort_by(|a, b| {
        let la = a.leading(&syz_order).expect("nonzero");
        let lb = b.leading(&syz_order).expect("nonzero");
        syz_order.cmp_mono((lb.0, &lb.1), (la.0, &la.1))
    });

    Ok(GbOutput {
        basis: GroebnerBasis { order: order.clone(), m, n_vars, gens, cofactors },
        syzygies,
    })
}

/// Apply the component priority as a permutation so the augmented run can use
/// the default POT order (real block before tracking block).
fn permute_real(r: &OpRow, order: &TermOrder) -> OpRow {
    if order.is_default() {
        return r.clone();
    }
    let m = r.len();
    let mut comps = vec![crate::op::WeylPoly::zero(first_nvars(r)); m];
    for c in 0..m {
        comps[order.rank(c)] = r.comp(c).clone();
    }
    OpRow::new(comps)
}

fn unpermute_real(r: &OpRow, order: &TermOrder) -> OpRow {
    if order.is_default() {
        return r.clone();
    }
    let m = r.len();
    let mut comps = vec![crate::op::WeylPoly::zero(first_nvars(r)); m];
    for c in 0..m {
        comps[c] = r.comp(order.rank(c)).clone();
    }
    OpRow::new(comps)
}

fn first_nvars(r: &OpRow) -> usize {
    r.comps().iter().map(|p| p.n_vars()).next().unwrap_or(0)
}

fn s_vector(a: &Aug, b: &Aug, lcm: &MultiIndex, n_vars: usize, width: usize) -> OpRow {
    let (_, mua, lca) = &a.lead;
    let (_, mub, lcb) = &b.lead;
    let sa = lcm.checked_sub(mua).expect("lcm divisible");
    let sb = lcm.checked_sub(mub).expect("lcm divisible");
    let inv_a = lca.inv().expect("leading coefficient nonzero");
    let inv_b = lcb.inv().expect("leading coefficient nonzero");
    let mut s = OpRow::zero(width, n_vars);
    s.sub_term_mul(&inv_a.neg(), &sa, &a.row);
    s.sub_term_mul(&inv_b, &sb, &b.row);
    s
}

/// Fully reduce the real block of `v` by the basis (all of whose leading
/// monomials lie in the real block). Tracking columns follow along.
fn reduce_real(
    mut v: OpRow,
    basis: &[Aug],
    aug_order: &TermOrder,
    m: usize,
    budget: &Budget,
) -> Result<OpRow> {
    'outer: loop {
        budget.check()?;
        // largest reducible real monomial
        let mut target: Option<(usize, MultiIndex)> = None;
        for j in 0..m {
            for (mu, _) in v.comp(j).terms() {
                let reducible = basis
                    .iter()
                    .any(|g| g.lead.0 == j && g.lead.1.divides(mu));
                if reducible {
                    target = match target {
                        None => Some((j, mu.clone())),
                        Some(cur) => {
                            if aug_order.cmp_mono((j, mu), (cur.0, &cur.1)) == Ordering::Greater {
                                Some((j, mu.clone()))
                            } else {
                                Some(cur)
                            }
                        }
                    };
                }
            }
        }
        let Some((j, mu)) = target else {
            return Ok(v);
        };
        for g in basis {
            if g.lead.0 == j && g.lead.1.divides(&mu) {
                let shift = mu.checked_sub(&g.lead.1).unwrap();
                let c = v.comp(j).coeff(&mu).expect("present").clone();
                let q = c.div(&g.lead.2).expect("nonzero lc");
                v.sub_term_mul(&q, &shift, &g.row);
                // rows are defined up to a unit; removing content each step
                // keeps the rational-function coefficients from snowballing
                if !v.is_zero() {
                    v.contentize(aug_order);
                }
                continue 'outer;
            }
        }
        unreachable!("reducer found above");
    }
}

fn real_is_zero(v: &OpRow, m: usize) -> bool {
    (0..m).all(|j| v.comp(j).is_zero())
}

/// Inter-reduce a set of rows in place: drop rows that reduce to zero against
/// the others, replace rows by their reduced contentized forms. Deterministic
/// and terminating (each step strictly decreases a well-founded measure).
pub(crate) fn auto_reduce(
    rows: &mut Vec<OpRow>,
    order: &TermOrder,
    m: usize,
    budget: &Budget,
) -> Result<()> {
    rows.retain(|r| !r.is_zero());
    loop {
        budget.check()?;
        sort_rows(rows, order);
        let mut changed = false;
        let mut i = 0;
        while i < rows.len() {
            let row = rows[i].clone();
            let others: Vec<&OpRow> = rows
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != i)
                .map(|(_, r)| r)
                .collect();
            let reduced = nf_against(&row, &others, order, m, budget)?;
            if reduced.is_zero() {
                rows.remove(i);
                changed = true;
                continue;
            }
            if reduced != row {
                let mut r = reduced;
                r.contentize(order);
                rows[i] = r;
                changed = true;
            }
            i += 1;
        }
        if !changed {
            return Ok(());
        }
    }
}

fn sort_rows(rows: &mut [OpRow], order: &TermOrder) {
    rows.sort_by(|a, b| {
        let la = a.leading(order).expect("nonzero");
        let lb = b.leading(order).expect("nonzero");
        order.cmp_mono((la.0, &la.1), (lb.0, &lb.1))
    });
}

/// Normal form of `v` against an explicit list of reducers, up to a unit:
/// the working row is recontentized after each step, so the result is only
/// meaningful up to scale (callers contentize anyway).
pub(crate) fn nf_against(
    v: &OpRow,
    reducers: &[&OpRow],
    order: &TermOrder,
    m: usize,
    budget: &Budget,
) -> Result<OpRow> {
    let leads: Vec<(usize, MultiIndex, RatFunc)> = reducers
        .iter()
        .map(|r| r.leading(order).expect("nonzero reducer"))
        .collect();
    let mut out = v.clone();
    'outer: loop {
        budget.check()?;
        let mut target: Option<(usize, MultiIndex)> = None;
        for j in 0..m {
            for (mu, _) in out.comp(j).terms() {
                if leads.iter().any(|l| l.0 == j && l.1.divides(mu)) {
                    target = match target {
                        None => Some((j, mu.clone())),
                        Some(cur) => {
                            if order.cmp_mono((j, mu), (cur.0, &cur.1)) == Ordering::Greater {
                                Some((j, mu.clone()))
                            } else {
                                Some(cur)
                            }
                        }
                    };
                }
            }
        }
        let Some((j, mu)) = target else {
            return Ok(out);
        };
        for (k, l) in leads.iter().enumerate() {
            if l.0 == j && l.1.divides(&mu) {
                let shift = mu.checked_sub(&l.1).unwrap();
                let c = out.comp(j).coeff(&mu).expect("present").clone();
                let q = c.div(&l.2).expect("nonzero lc");
                out.sub_term_mul(&q, &shift, reducers[k]);
                if !out.is_zero() {
                    out.contentize(order);
                }
                continue 'outer;
            }
        }
        unreachable!();
    }
}

impl GroebnerBasis {
    pub fn gens(&self) -> &[OpRow] {
        &self.gens
    }

    pub fn cofactors(&self) -> &[OpRow] {
        &self.cofactors
    }

    pub fn order(&self) -> &TermOrder {
        &self.order
    }

    pub fn rank_m(&self) -> usize {
        self.m
    }

    /// Distinct components carrying a leading term.
    pub fn leading_components(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .gens
            .iter()
            .map(|g| g.leading(&self.order).expect("nonzero").0)
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Deterministic full normal form modulo the basis.
    pub fn normal_form(&self, v: &OpRow, budget: &Budget) -> Result<OpRow> {
        Ok(self.normal_form_with_trace(v, budget)?.0)
    }

    /// Normal form together with the quotient operators: returns (nf, q) with
    /// v = nf + Σ q_k ∘ gens[k]. Internally the working row is kept in
    /// contentized form with a tracked scale so coefficients stay bounded;
    /// the scale is divided out at the end.
    pub fn normal_form_with_trace(
        &self,
        v: &OpRow,
        budget: &Budget,
    ) -> Result<(OpRow, Vec<crate::op::WeylPoly>)> {
        use crate::op::WeylPoly;
        // invariant: out = scale * v - Σ quot_k ∘ gens[k]
        let mut quot: Vec<WeylPoly> = (0..self.gens.len())
            .map(|_| WeylPoly::zero(self.n_vars))
            .collect();
        let leads: Vec<(usize, MultiIndex, RatFunc)> = self
            .gens
            .iter()
            .map(|r| r.leading(&self.order).expect("nonzero"))
            .collect();
        let mut out = v.clone();
        let mut scale = RatFunc::one(self.n_vars);
        if !out.is_zero() {
            scale = out.contentize_scaled(&self.order);
        }
        'outer: loop {
            budget.check()?;
            let mut target: Option<(usize, MultiIndex)> = None;
            for j in 0..self.m {
                for (mu, _) in out.comp(j).terms() {
                    if leads.iter().any(|l| l.0 == j && l.1.divides(mu)) {
                        target = match target {
                            None => Some((j, mu.clone())),
                            Some(cur) => {
                                if self.order.cmp_mono((j, mu), (cur.0, &cur.1))
                                    == Ordering::Greater
                                {
                                    Some((j, mu.clone()))
                                } else {
                                    Some(cur)
                                }
                            }
                        };
                    }
                }
            }
            let Some((j, mu)) = target else {
                // undo the accumulated scale
                let inv = scale.inv().expect("unit scale");
                let nf = out.scale(&inv);
                let quot = quot.into_iter().map(|q| q.scale(&inv)).collect();
                return Ok((nf, quot));
            };
            for (k, l) in leads.iter().enumerate() {
                if l.0 == j && l.1.divides(&mu) {
                    let shift = mu.checked_sub(&l.1).unwrap();
                    let c = out.comp(j).coeff(&mu).expect("present").clone();
                    let q = c.div(&l.2).expect("nonzero lc");
                    out.sub_term_mul(&q, &shift, &self.gens[k]);
                    quot[k].add_term(shift, q);
                    if !out.is_zero() {
                        let s = out.contentize_scaled(&self.order);
                        if !s.is_one() {
                            scale = scale.mul(&s);
                            for qk in quot.iter_mut() {
                                *qk = qk.scale(&s);
                            }
                        }
                    }
                    continue 'outer;
                }
            }
            unreachable!();
        }
    }

    /// Membership test: v lies in the row module. Unlike `normal_form`, the
    /// working row is rescaled by units along the way (zero-ness is all that
    /// matters), which keeps coefficient growth bounded.
    pub fn contains(&self, v: &OpRow, budget: &Budget) -> Result<bool> {
        let leads: Vec<(usize, MultiIndex, RatFunc)> = self
            .gens
            .iter()
            .map(|r| r.leading(&self.order).expect("nonzero"))
            .collect();
        let mut out = v.clone();
        if !out.is_zero() {
            out.contentize(&self.order);
        }
        'outer: loop {
            budget.check()?;
            let mut target: Option<(usize, MultiIndex)> = None;
            for j in 0..self.m {
                for (mu, _) in out.comp(j).terms() {
                    if leads.iter().any(|l| l.0 == j && l.1.divides(mu)) {
                        target = match target {
                            None => Some((j, mu.clone())),
                            Some(cur) => {
                                if self.order.cmp_mono((j, mu), (cur.0, &cur.1))
                                    == Ordering::Greater
                                {
                                    Some((j, mu.clone()))
                                } else {
                                    Some(cur)
                                }
                            }
                        };
                    }
                }
            }
            let Some((j, mu)) = target else {
                return Ok(out.is_zero());
            };
            for (k, l) in leads.iter().enumerate() {
                if l.0 == j && l.1.divides(&mu) {
                    let shift = mu.checked_sub(&l.1).unwrap();
                    let c = out.comp(j).coeff(&mu).expect("present").clone();
                    let q = c.div(&l.2).expect("nonzero lc");
                    out.sub_term_mul(&q, &shift, &self.gens[k]);
                    if !out.is_zero() {
                        out.contentize(&self.order);
                    }
                    continue 'outer;
                }
            }
            unreachable!();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::op::WeylPoly;

    fn drv(n: usize, i: usize) -> WeylPoly {
        WeylPoly::derivative(n, i)
    }

    #[test]
    fn single_row_is_its_own_basis() {
        // D1's row (d1 - x2, d2)
        let n = 2;
        let mut a = drv(n, 0);
        a.add_term(MultiIndex::zero(n), RatFunc::var(n, 1).neg());
        let row = OpRow::new(vec![a, drv(n, 1)]);
        let out = gb_compute(&[row.clone()], 2, n, &TermOrder::pot(2), &Budget::unlimited()).unwrap();
        assert_eq!(out.basis.gens(), &[row]);
        assert!(out.syzygies.is_empty());
    }

    #[test]
    fn disjoint_components_have_no_pairs() {
        let n = 2;
        let r1 = OpRow::new(vec![drv(n, 0), WeylPoly::zero(n)]);
        let r2 = OpRow::new(vec![WeylPoly::zero(n), drv(n, 0)]);
        let out = gb_compute(
            &[r1.clone(), r2.clone()],
            2,
            n,
            &TermOrder::pot(2),
            &Budget::unlimited(),
        )
        .unwrap();
        assert_eq!(out.basis.gens().len(), 2);
        assert_eq!(out.basis.leading_components(), vec![0, 1]);
        assert!(out.syzygies.is_empty());
    }

    #[test]
    fn nf_of_member_is_zero() {
        let n = 2;
        let row = OpRow::new(vec![drv(n, 0), drv(n, 1)]);
        let out = gb_compute(&[row.clone()], 2, n, &TermOrder::pot(2), &Budget::unlimited()).unwrap();
        let shifted = row.left_mul(&drv(n, 1));
        assert!(out.basis.contains(&shifted, &Budget::unlimited()).unwrap());
        let outside = OpRow::unit(2, 0, n);
        assert!(!out.basis.contains(&outside, &Budget::unlimited()).unwrap());
    }

    #[test]
    fn cofactor_identity_holds() {
        let n = 2;
        let x2 = RatFunc::var(n, 1);
        let mut a = drv(n, 0);
        a.add_term(MultiIndex::zero(n), x2.neg());
        let rows = vec![
            OpRow::new(vec![a, drv(n, 1)]),
            OpRow::new(vec![drv(n, 1), WeylPoly::one(n)]),
        ];
        let out = gb_compute(&rows, 2, n, &TermOrder::pot(2), &Budget::unlimited()).unwrap();
        for (g, cof) in out.basis.gens().iter().zip(out.basis.cofactors()) {
            let mut acc = OpRow::zero(2, n);
            for (k, r) in rows.iter().enumerate() {
                acc.add_assign(&r.left_mul(cof.comp(k)));
            }
            assert_eq!(&acc, g, "cofactor identity");
        }
        // soundness of collected syzygies
        for s in &out.syzygies {
            let mut acc = OpRow::zero(2, n);
            for (k, r) in rows.iter().enumerate() {
                acc.add_assign(&r.left_mul(s.comp(k)));
            }
            assert!(acc.is_zero(), "syzygy composes to zero");
        }
    }
}
