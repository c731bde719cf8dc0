//! Scalar differential operators: finite sums a(x) d^mu in normal form
//! (coefficients to the left of the derivatives), with the rational Weyl
//! algebra product d_i ∘ a = a d_i + ∂_i a.

use std::collections::BTreeMap;
use std::fmt;


use super::multiindex::MultiIndex;
use crate::coeff::RatFunc;

/// One matrix entry of a differential operator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeylPoly {
    n_vars: usize,
    terms: BTreeMap<MultiIndex, RatFunc>,
}

impl WeylPoly {
    pub fn zero(n_vars: usize) -> Self {
        WeylPoly { n_vars, terms: BTreeMap::new() }
    }

    pub fn constant(c: RatFunc) -> Self {
        let mut p = Self::zero(c.n_vars());
        p.add_term(MultiIndex::zero(c.n_vars()), c);
        p
    }

    pub fn one(n_vars: usize) -> Self {
        Self::constant(RatFunc::one(n_vars))
    }

    /// The derivative d_i (0-based i).
    pub fn derivative(n_vars: usize, i: usize) -> Self {
        let mut p = Self::zero(n_vars);
        p.add_term(MultiIndex::unit(n_vars, i), RatFunc::one(n_vars));
        p
    }

    pub fn term(c: RatFunc, mu: MultiIndex) -> Self {
        let mut p = Self::zero(c.n_vars());
        p.add_term(mu, c);
        p
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &RatFunc)> {
        self.terms.iter()
    }

    pub fn coeff(&self, mu: &MultiIndex) -> Option<&RatFunc> {
        self.terms.get(mu)
    }

    /// Max |mu| with nonzero coefficient; 0 for the zero entry.
    pub fn order(&self) -> u32 {
        self.terms.keys().map(|m| m.order()).max().unwrap_or(0)
    }

    /// Leading term under grevlex.
    pub fn leading(&self) -> Option<(&MultiIndex, &RatFunc)> {
        self.terms.iter().next_back()
    }

    pub fn add_term(&mut self, mu: MultiIndex, c: RatFunc) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(mu) {
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

    pub fn add_assign(&mut self, other: &Self) {
        for (mu, c) in &other.terms {
            self.add_term(mu.clone(), c.clone());
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn sub_assign(&mut self, other: &Self) {
        for (mu, c) in &other.terms {
            self.add_term(mu.clone(), c.neg());
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.sub_assign(other);
        out
    }

    pub fn neg(&self) -> Self {
        WeylPoly {
            n_vars: self.n_vars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect(),
        }
    }

    /// Multiplication by the function s on the left: s · Σ a d^mu = Σ (s a) d^mu.
    pub fn scale(&self, s: &RatFunc) -> Self {
        if s.is_zero() {
            return Self::zero(self.n_vars);
        }
        let mut out = Self::zero(self.n_vars);
        for (mu, c) in &self.terms {
            out.add_term(mu.clone(), c.mul(s));
        }
        out
    }

    /// Left multiplication by the single term c·d^kappa:
    /// (c d^kappa) ∘ Σ a d^mu = Σ_{nu<=kappa} C(kappa,nu) c ∂^{kappa-nu}(a) d^{nu+mu}.
    pub fn left_mul_term(&self, c: &RatFunc, kappa: &MultiIndex) -> Self {
        let mut out = Self::zero(self.n_vars);
        if c.is_zero() {
            return out;
        }
        for (mu, a) in &self.terms {
            if a.is_polynomial() && a.numerator().degree() == 0 {
                // constant coefficient: all Leibniz corrections vanish
                out.add_term(kappa.add(mu), c.mul(a));
                continue;
            }
            for nu in kappa.subindices() {
                let da = a.derive_multi(kappa.checked_sub(&nu).unwrap().exponents());
                if da.is_zero() {
                    continue;
                }
                let coeff = c.mul(&da).scale(&kappa.binom(&nu));
                out.add_term(nu.add(mu), coeff);
            }
        }
        out
    }

    /// Operator composition self ∘ other.
    pub fn compose(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.n_vars);
        for (kappa, c) in &self.terms {
            out.add_assign(&other.left_mul_term(c, kappa));
        }
        out
    }

    /// Formal adjoint without pairing weights: a d^mu becomes the normal form
    /// of (-1)^{|mu|} d^mu ∘ a.
    pub fn raw_adjoint(&self) -> Self {
        let mut out = Self::zero(self.n_vars);
        for (mu, a) in &self.terms {
            let sign = if mu.order() % 2 == 0 {
                RatFunc::one(self.n_vars)
            } else {
                RatFunc::one(self.n_vars).neg()
            };
            if a.is_polynomial() && a.numerator().degree() == 0 {
                out.add_term(mu.clone(), a.mul(&sign));
                continue;
            }
            for nu in mu.subindices() {
                let da = a.derive_multi(mu.checked_sub(&nu).unwrap().exponents());
                if da.is_zero() {
                    continue;
                }
                out.add_term(nu.clone(), da.mul(&sign).scale(&mu.binom(&nu)));
            }
        }
        out
    }

    /// Apply to a rational function: Σ a ∂^mu(f).
    pub fn apply(&self, f: &RatFunc) -> RatFunc {
        let mut acc = RatFunc::zero(self.n_vars);
        for (mu, a) in &self.terms {
            let df = f.derive_multi(mu.exponents());
            if !df.is_zero() {
                acc = acc.add(&a.mul(&df));
            }
        }
        acc
    }
}

impl fmt::Display for WeylPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| b.0.cmp_graded_lex(a.0));
        for (k, (mu, c)) in terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            if mu.is_zero() {
                write!(f, "({})", c)?;
            } else if c.is_one() {
                write!(f, "{}", mu)?;
            } else {
                write!(f, "({}) {}", c, mu)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::rat;

    fn d(i: usize) -> WeylPoly {
        WeylPoly::derivative(2, i)
    }

    fn x2() -> RatFunc {
        RatFunc::var(2, 1)
    }

    #[test]
    fn weyl_relation() {
        // d2 ∘ x2 = x2 d2 + 1
        let m = WeylPoly::constant(x2());
        let prod = d(1).compose(&m);
        let mut expect = WeylPoly::term(x2(), MultiIndex::unit(2, 1));
        expect.add_term(MultiIndex::zero(2), RatFunc::one(2));
        assert_eq!(prod, expect);
        // but x2 ∘ d2 = x2 d2
        let prod2 = m.compose(&d(1));
        assert_eq!(prod2, WeylPoly::term(x2(), MultiIndex::unit(2, 1)));
    }

    #[test]
    fn composition_associates() {
        let a = d(0).add(&WeylPoly::constant(x2().mul(&x2())));
        let b = d(1).compose(&d(1)).add(&WeylPoly::constant(RatFunc::var(2, 0)));
        let c = d(0).compose(&WeylPoly::constant(x2()));
        let left = a.compose(&b).compose(&c);
        let right = a.compose(&b.compose(&c));
        assert_eq!(left, right);
    }

    #[test]
    fn adjoint_of_first_order() {
        // ad(d1 - x2) = -d1 - x2
        let op = d(0).sub(&WeylPoly::constant(x2()));
        let adj = op.raw_adjoint();
        let expect = d(0).neg().sub(&WeylPoly::constant(x2()));
        assert_eq!(adj, expect);
        // involution
        assert_eq!(adj.raw_adjoint(), op);
    }

    #[test]
    fn adjoint_is_antihomomorphism() {
        let p = d(0).compose(&d(1)).add(&WeylPoly::constant(x2()));
        let q = d(1).scale(&x2()).add(&WeylPoly::one(2));
        let lhs = p.compose(&q).raw_adjoint();
        let rhs = q.raw_adjoint().compose(&p.raw_adjoint());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn apply_leibniz() {
        // (x2 d2)(x2^2) = 2 x2^2
        let op = d(1).scale(&x2());
        let val = op.apply(&x2().mul(&x2()));
        assert_eq!(val, x2().mul(&x2()).scale(&rat(2)));
    }
}
