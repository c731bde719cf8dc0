//! Rows of free modules over the rational Weyl algebra.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::order::TermOrder;
use crate::coeff::{MultiPoly, RatFunc};
use crate::op::{MultiIndex, WeylPoly};

/// An element of B^m: one scalar operator per component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OpRow {
    comps: Vec<WeylPoly>,
}

impl OpRow {
    pub fn new(comps: Vec<WeylPoly>) -> Self {
        OpRow { comps }
    }

    pub fn zero(m: usize, n_vars: usize) -> Self {
        OpRow { comps: (0..m).map(|_| WeylPoly::zero(n_vars)).collect() }
    }

    /// Unit row e_i.
    pub fn unit(m: usize, i: usize, n_vars: usize) -> Self {
        let mut r = Self::zero(m, n_vars);
        r.comps[i] = WeylPoly::one(n_vars);
        r
    }

    pub fn len(&self) -> usize {
        self.comps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn comp(&self, i: usize) -> &WeylPoly {
        &self.comps[i]
    }

    pub fn comps(&self) -> &[WeylPoly] {
        &self.comps
    }

    pub fn into_comps(self) -> Vec<WeylPoly> {
        self.comps
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|p| p.is_zero())
    }

    pub fn order(&self) -> u32 {
        self.comps.iter().map(|p| p.order()).max().unwrap_or(0)
    }

    /// Concatenation (used for the augmented elimination module).
    pub fn concat(&self, other: &OpRow) -> OpRow {
        let mut comps = self.comps.clone();
        comps.extend(other.comps.iter().cloned());
        OpRow { comps }
    }

    pub fn slice(&self, range: std::ops::Range<usize>) -> OpRow {
        OpRow { comps: self.comps[range].to_vec() }
    }

    /// Leading module monomial with its coefficient under `order`.
    pub fn leading(&self, order: &TermOrder) -> Option<(usize, MultiIndex, RatFunc)> {
        let mut best: Option<(usize, &MultiIndex, &RatFunc)> = None;
        for (j, p) in self.comps.iter().enumerate() {
            if let Some((mu, c)) = p.leading() {
                best = match best {
                    None => Some((j, mu, c)),
                    Some(cur) => {
                        if order.cmp_mono((j, mu), (cur.0, cur.1)) == std::cmp::Ordering::Greater {
                            Some((j, mu, c))
                        } else {
                            Some(cur)
                        }
                    }
                };
            }
        }
        best.map(|(j, mu, c)| (j, mu.clone(), c.clone()))
    }

    pub fn add_assign(&mut self, other: &OpRow) {
        for (a, b) in self.comps.iter_mut().zip(&other.comps) {
            a.add_assign(b);
        }
    }

    pub fn sub_assign(&mut self, other: &OpRow) {
        for (a, b) in self.comps.iter_mut().zip(&other.comps) {
            a.sub_assign(b);
        }
    }

    pub fn neg(&self) -> OpRow {
        OpRow { comps: self.comps.iter().map(|p| p.neg()).collect() }
    }

    pub fn scale(&self, s: &RatFunc) -> OpRow {
        OpRow { comps: self.comps.iter().map(|p| p.scale(s)).collect() }
    }

    /// self -= (c · d^kappa) ∘ other, componentwise.
    pub fn sub_term_mul(&mut self, c: &RatFunc, kappa: &MultiIndex, other: &OpRow) {
        for (a, b) in self.comps.iter_mut().zip(&other.comps) {
            if !b.is_zero() {
                a.sub_assign(&b.left_mul_term(c, kappa));
            }
        }
    }

    /// Left multiplication by a scalar operator q: q ∘ self.
    pub fn left_mul(&self, q: &WeylPoly) -> OpRow {
        let mut out = OpRow::zero(self.len(), q.n_vars());
        for (kappa, c) in q.terms() {
            for (o, s) in out.comps.iter_mut().zip(&self.comps) {
                if !s.is_zero() {
                    o.add_assign(&s.left_mul_term(c, kappa));
                }
            }
        }
        out
    }

    /// Normalize by a unit to integral primitive form: clear denominators,
    /// remove the polynomial and rational content, and make the leading
    /// coefficient (under `order`) positive. Keeps coefficient growth bounded.
    pub fn contentize(&mut self, order: &TermOrder) {
        let _ = self.contentize_scaled(order);
    }

    /// As `contentize`, returning the unit multiplier that was applied
    /// (`new = multiplier * old`).
    pub fn contentize_scaled(&mut self, order: &TermOrder) -> RatFunc {
        let n_vars = self
            .comps
            .iter()
            .map(|p| p.n_vars())
            .next()
            .unwrap_or(0);
        let mut multiplier = RatFunc::one(n_vars);
        if self.is_zero() {
            return multiplier;
        }
        // clear denominators
        let mut den = MultiPoly::one(n_vars);
        for p in &self.comps {
            for (_, c) in p.terms() {
                if !c.denominator().is_one() {
                    den = MultiPoly::lcm(&den, c.denominator());
                }
            }
        }
        if !den.is_one() {
            let d = RatFunc::from_poly(den);
            for p in self.comps.iter_mut() {
                *p = p.scale(&d);
            }
            multiplier = multiplier.mul(&d);
        }
        // polynomial content
        let mut content = MultiPoly::zero(n_vars);
        'outer: for p in &self.comps {
            for (_, c) in p.terms() {
                debug_assert!(c.is_polynomial());
                content = MultiPoly::gcd(&content, c.numerator());
                if content.is_one() {
                    break 'outer;
                }
            }
        }
        if !content.is_one() && !content.is_zero() {
            let inv = RatFunc::from_poly(content).inv().expect("nonzero content");
            for p in self.comps.iter_mut() {
                *p = p.scale(&inv);
            }
            multiplier = multiplier.mul(&inv);
        }
        // joint rational normalization
        let mut den_lcm = BigInt::one();
        let mut num_gcd = BigInt::zero();
        for p in &self.comps {
            for (_, c) in p.terms() {
                for (_, k) in c.numerator().terms() {
                    den_lcm = den_lcm.lcm(k.denom());
                    num_gcd = num_gcd.gcd(k.numer());
                }
            }
        }
        let mut scale = BigRational::new(den_lcm, num_gcd);
        let (lj, lmu, _) = self.leading(order).expect("nonzero row");
        let lead = self.comps[lj].coeff(&lmu).unwrap();
        if (lead.numerator().leading_coeff() * &scale).is_negative() {
            scale = -scale;
        }
        if !scale.is_one() {
            let s = RatFunc::constant(n_vars, scale);
            for p in self.comps.iter_mut() {
                *p = p.scale(&s);
            }
            multiplier = multiplier.mul(&s);
        }
        multiplier
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::rat_frac;

    #[test]
    fn contentize_clears_denominators_and_content() {
        let n = 2;
        let x1 = RatFunc::var(n, 0);
        // row = [ (x1/2) d1 + x1^2 ] in B^1
        let mut p = WeylPoly::term(x1.scale(&rat_frac(1, 2)), MultiIndex::unit(n, 0));
        p.add_term(MultiIndex::zero(n), x1.mul(&x1));
        let mut row = OpRow::new(vec![p]);
        row.contentize(&TermOrder::pot(1));
        // expect [ d1 + 2 x1 ]
        let mut expect = WeylPoly::derivative(n, 0);
        expect.add_term(MultiIndex::zero(n), x1.scale(&crate::coeff::rat(2)));
        assert_eq!(row.comp(0), &expect);
    }

    #[test]
    fn leading_respects_pot() {
        let n = 2;
        let ord = TermOrder::pot(2);
        let row = OpRow::new(vec![
            WeylPoly::constant(RatFunc::one(n)),
            WeylPoly::derivative(n, 0).compose(&WeylPoly::derivative(n, 0)),
        ]);
        let (j, mu, _) = row.leading(&ord).unwrap();
        assert_eq!(j, 0);
        assert!(mu.is_zero());
    }
}
