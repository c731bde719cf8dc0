//! Polynomial expressions in formal jet variables u^k_mu with rational-function
//! coefficients, the Euler–Lagrange operator, and the total-divergence test.

use std::collections::BTreeMap;


use super::diffop::DiffOp;
use super::multiindex::MultiIndex;
use crate::coeff::{Rat, RatFunc};

/// A jet symbol: a component label together with a derivative multi-index.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct JetVar {
    pub label: String,
    pub mu: MultiIndex,
}

/// Power product of jet symbols (sorted, exponents positive).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct JetMono(Vec<(JetVar, u32)>);

impl JetMono {
    fn one() -> Self {
        JetMono(Vec::new())
    }

    fn var(v: JetVar) -> Self {
        JetMono(vec![(v, 1)])
    }

    fn mul(&self, other: &JetMono) -> JetMono {
        let mut out = self.0.clone();
        for (v, p) in &other.0 {
            match out.iter_mut().find(|(w, _)| w == v) {
                Some((_, q)) => *q += p,
                None => out.push((v.clone(), *p)),
            }
        }
        out.sort();
        JetMono(out)
    }
}

/// Finite sum of terms coefficient × jet monomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JetExpr {
    n_vars: usize,
    terms: BTreeMap<JetMono, RatFunc>,
}

impl JetExpr {
    pub fn zero(n_vars: usize) -> Self {
        JetExpr { n_vars, terms: BTreeMap::new() }
    }

    /// The jet symbol `label` differentiated by `mu`.
    pub fn var(n_vars: usize, label: &str, mu: MultiIndex) -> Self {
        let mut e = Self::zero(n_vars);
        e.add_term(JetMono::var(JetVar { label: label.to_string(), mu }), RatFunc::one(n_vars));
        e
    }

    pub fn coefficient(c: RatFunc) -> Self {
        let mut e = Self::zero(c.n_vars());
        e.add_term(JetMono::one(), c);
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, m: JetMono, c: RatFunc) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get().add(&c);
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.neg());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.n_vars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1.mul(c2));
            }
        }
        out
    }

    pub fn scale(&self, s: &RatFunc) -> Self {
        let mut out = Self::zero(self.n_vars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.mul(s));
        }
        out
    }

    pub fn scale_rat(&self, s: &Rat) -> Self {
        self.scale(&RatFunc::constant(self.n_vars, s.clone()))
    }

    /// Total derivative D_i: differentiates coefficients in x and bumps jet
    /// symbols by the Leibniz rule.
    pub fn total_derive(&self, i: usize) -> Self {
        let mut out = Self::zero(self.n_vars);
        for (m, c) in &self.terms {
            let dc = c.derive(i);
            if !dc.is_zero() {
                out.add_term(m.clone(), dc);
            }
            for (k, (v, p)) in m.0.iter().enumerate() {
                let bumped = JetVar { label: v.label.clone(), mu: v.mu.bump(i) };
                let mut factors = m.0.clone();
                if *p == 1 {
                    factors.remove(k);
                } else {
                    factors[k].1 -= 1;
                }
                let mono = JetMono(factors).mul(&JetMono::var(bumped));
                out.add_term(mono, c.scale(&crate::coeff::rat(*p as i64)));
            }
        }
        out
    }

    fn total_derive_multi(&self, mu: &MultiIndex) -> Self {
        let mut out = self.clone();
        for (i, &e) in mu.exponents().iter().enumerate() {
            for _ in 0..e {
                out = out.total_derive(i);
            }
        }
        out
    }

    /// Formal partial derivative with respect to one jet symbol.
    pub fn partial(&self, v: &JetVar) -> Self {
        let mut out = Self::zero(self.n_vars);
        for (m, c) in &self.terms {
            if let Some(pos) = m.0.iter().position(|(w, _)| w == v) {
                let p = m.0[pos].1;
                let mut factors = m.0.clone();
                if p == 1 {
                    factors.remove(pos);
                } else {
                    factors[pos].1 -= 1;
                }
                out.add_term(JetMono(factors), c.scale(&crate::coeff::rat(p as i64)));
            }
        }
        out
    }

    /// All component labels appearing in the expression.
    pub fn labels(&self) -> Vec<String> {
        let mut out: Vec<String> = Vec::new();
        for m in self.terms.keys() {
            for (v, _) in &m.0 {
                if !out.contains(&v.label) {
                    out.push(v.label.clone());
                }
            }
        }
        out.sort();
        out
    }

    /// Euler–Lagrange expression for one base symbol:
    /// E_u(e) = Σ_mu (-1)^{|mu|} D^mu (∂e/∂u_mu).
    pub fn euler(&self, label: &str) -> Self {
        let mut mus: Vec<MultiIndex> = Vec::new();
        for m in self.terms.keys() {
            for (v, _) in &m.0 {
                if v.label == label && !mus.contains(&v.mu) {
                    mus.push(v.mu.clone());
                }
            }
        }
        let mut acc = Self::zero(self.n_vars);
        for mu in mus {
            let p = self.partial(&JetVar { label: label.to_string(), mu: mu.clone() });
            let d = p.total_derive_multi(&mu);
            if mu.order() % 2 == 0 {
                acc = acc.add(&d);
            } else {
                acc = acc.sub(&d);
            }
        }
        acc
    }
}

/// True iff the expression is a total divergence: every Euler–Lagrange
/// expression vanishes identically.
pub fn euler_divergence_test(e: &JetExpr) -> bool {
    e.labels().iter().all(|l| e.euler(l).is_zero())
}

/// Symbolic application of an operator to the jet symbols of its source
/// space: component r of the result is Σ_c Σ_mu a_{rc,mu} u^c_mu.
pub fn jet_apply(d: &DiffOp) -> Vec<JetExpr> {
    let n = d.n_vars();
    let mut out = Vec::with_capacity(d.dst().dim());
    for r in 0..d.dst().dim() {
        let mut acc = JetExpr::zero(n);
        for c in 0..d.src().dim() {
            for (mu, a) in d.entry(r, c).terms() {
                let v = JetExpr::var(n, d.src().label(c), mu.clone());
                acc = acc.add(&v.scale(a));
            }
        }
        out.push(acc);
    }
    out
}

/// Weighted pairing ⟨test, value⟩ of a dual tuple of jet symbols (labels of
/// `space`) against a tuple of jet expressions.
pub fn weighted_pairing(
    space: &super::space::SpaceSpec,
    test_labels: &[String],
    values: &[JetExpr],
    n_vars: usize,
) -> JetExpr {
    assert_eq!(test_labels.len(), values.len());
    let mut acc = JetExpr::zero(n_vars);
    for (i, v) in values.iter().enumerate() {
        let t = JetExpr::var(n_vars, &test_labels[i], MultiIndex::zero(n_vars));
        acc = acc.add(&t.mul(v).scale_rat(space.weight(i)));
    }
    acc
}

/// The integrand ⟨λ, D η⟩_w − ⟨ad(D) λ, η⟩_w, which must be a total
/// divergence for every operator D.
pub fn adjoint_defect(d: &DiffOp) -> JetExpr {
    let n = d.n_vars();
    let lam_labels: Vec<String> = d.dst().labels().to_vec();
    let eta_labels: Vec<String> = d.src().labels().to_vec();
    let d_eta = jet_apply(d);
    let lhs = weighted_pairing(d.dst(), &lam_labels, &d_eta, n);
    let adj = d.adjoint();
    let ad_lam = jet_apply(&adj);
    let eta_exprs: Vec<JetExpr> = eta_labels
        .iter()
        .map(|l| JetExpr::var(n, l, MultiIndex::zero(n)))
        .collect();
    // ⟨ad(D)λ, η⟩ with the source-space weights
    let mut rhs = JetExpr::zero(n);
    for (i, a) in ad_lam.iter().enumerate() {
        rhs = rhs.add(&a.mul(&eta_exprs[i]).scale_rat(d.src().weight(i)));
    }
    lhs.sub(&rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::RatFunc;
    use crate::op::space::SpaceSpec;

    fn u(mu: &[u16]) -> JetExpr {
        JetExpr::var(2, "u", MultiIndex::from_exponents(mu.to_vec()))
    }

    fn v(mu: &[u16]) -> JetExpr {
        JetExpr::var(2, "v", MultiIndex::from_exponents(mu.to_vec()))
    }

    #[test]
    fn u_squared_is_not_a_divergence() {
        let e = u(&[0, 0]).mul(&u(&[0, 0]));
        assert!(!euler_divergence_test(&e));
    }

    #[test]
    fn expanded_divergence_is_a_divergence() {
        // d1(u v) = u1 v + u v1
        let e = u(&[1, 0]).mul(&v(&[0, 0])).add(&u(&[0, 0]).mul(&v(&[1, 0])));
        assert!(euler_divergence_test(&e));
    }

    #[test]
    fn adjoint_defect_is_divergence_for_example() {
        let src = SpaceSpec::vector("eta", 2);
        let dst = SpaceSpec::scalar("zeta");
        let mut d1 = DiffOp::zero(src, dst, 2);
        d1.add_term(0, 0, MultiIndex::unit(2, 0), RatFunc::one(2));
        d1.add_term(0, 0, MultiIndex::zero(2), RatFunc::var(2, 1).neg());
        d1.add_term(0, 1, MultiIndex::unit(2, 1), RatFunc::one(2));
        assert!(euler_divergence_test(&adjoint_defect(&d1)));
    }

    #[test]
    fn variable_coefficient_euler() {
        // e = x2 * u1 is not a divergence: E_u = -d1(x2) = 0? No: E_u(e)
        // = -D_1(x2) = 0, so it IS a divergence (e = d1(x2 u) since x2 is
        // x1-independent). Check the x2-direction variant too, where
        // e = x2 u2 has E_u = -D_2(x2) = -1 != 0.
        let e1 = u(&[1, 0]).scale(&RatFunc::var(2, 1));
        assert!(euler_divergence_test(&e1));
        let e2 = u(&[0, 1]).scale(&RatFunc::var(2, 1));
        assert!(!euler_divergence_test(&e2));
    }
}
