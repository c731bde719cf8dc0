//! Rational functions over Q(x1,...,xn) in canonical reduced form.

use std::fmt;

use num_traits::{One, Zero};

use super::multipoly::{rat, MultiPoly, Rat};
use crate::error::{Error, Result};

/// Reduced fraction of multivariate polynomials. The denominator is nonzero,
/// coprime to the numerator, and monic under graded-lex, which makes equality
/// a structural comparison.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatFunc {
    num: MultiPoly,
    den: MultiPoly,
}

impl RatFunc {
    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        Ok(Self::reduced(num, den))
    }

    fn reduced(mut num: MultiPoly, mut den: MultiPoly) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return RatFunc { den: MultiPoly::one(num.n_vars()), num };
        }
        if !den.is_one() {
            let trace = std::env::var("DIFFDUAL_RF_TRACE").is_ok();
            if trace {
                eprintln!("reduced: gcd deg ({},{}) terms ({},{})", num.degree(), den.degree(), num.num_terms(), den.num_terms());
            }
            let g = MultiPoly::gcd(&num, &den);
            if trace {
                eprintln!("reduced: gcd done deg {}", g.degree());
            }
            if !g.is_one() {
                num = num.div_exact(&g).expect("gcd divides");
                den = den.div_exact(&g).expect("gcd divides");
            }
            if trace {
                eprintln!("reduced: div done");
            }
        }
        let lc = den.leading_coeff();
        if !lc.is_one() {
            let inv = Rat::one() / lc;
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        RatFunc { num, den }
    }

    pub fn zero(n_vars: usize) -> Self {
        RatFunc { num: MultiPoly::zero(n_vars), den: MultiPoly::one(n_vars) }
    }

    pub fn one(n_vars: usize) -> Self {
        RatFunc { num: MultiPoly::one(n_vars), den: MultiPoly::one(n_vars) }
    }

    pub fn constant(n_vars: usize, c: Rat) -> Self {
        RatFunc { num: MultiPoly::constant(n_vars, c), den: MultiPoly::one(n_vars) }
    }

    pub fn int(n_vars: usize, c: i64) -> Self {
        Self::constant(n_vars, rat(c))
    }

    /// x_idx with 0-based idx.
    pub fn var(n_vars: usize, idx: usize) -> Self {
        RatFunc { num: MultiPoly::var(n_vars, idx), den: MultiPoly::one(n_vars) }
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        RatFunc { den: MultiPoly::one(p.n_vars()), num: p }
    }

    pub fn n_vars(&self) -> usize {
        self.num.n_vars()
    }

    pub fn numerator(&self) -> &MultiPoly {
        &self.num
    }

    pub fn denominator(&self) -> &MultiPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// Some(c) when the value is a constant rational.
    pub fn as_constant(&self) -> Option<Rat> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.n_vars(), other.n_vars());
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if let (Some(a), Some(b)) = (self.as_constant(), other.as_constant()) {
            return Self::constant(self.n_vars(), a + b);
        }
        if self.den == other.den {
            return Self::reduced(self.num.add(&other.num), self.den.clone());
        }
        let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        let den = self.den.mul(&other.den);
        Self::reduced(num, den)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.n_vars(), other.n_vars());
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.n_vars());
        }
        if let Some(c) = self.as_constant() {
            return other.scale(&c);
        }
        if let Some(c) = other.as_constant() {
            return self.scale(&c);
        }
        Self::reduced(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero(self.n_vars());
        }
        RatFunc { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        if self.is_zero() {
            return Ok(self.clone());
        }
        Ok(Self::reduced(self.num.mul(&other.den), self.den.mul(&other.num)))
    }

    pub fn inv(&self) -> Result<Self> {
        Self::one(self.n_vars()).div(self)
    }

    /// Integer power; negative exponents invert (error on zero base).
    pub fn pow(&self, e: i64) -> Result<Self> {
        if e < 0 {
            return self.inv()?.pow(-e);
        }
        Ok(Self::reduced(self.num.pow(e as u32), self.den.pow(e as u32)))
    }

    /// Exact partial derivative with respect to variable `idx` (0-based),
    /// via the quotient rule.
    pub fn derive(&self, idx: usize) -> Self {
        if self.den.is_one() {
            return Self::from_poly(self.num.derive(idx));
        }
        let num = self
            .num
            .derive(idx)
            .mul(&self.den)
            .sub(&self.num.mul(&self.den.derive(idx)));
        let den = self.den.mul(&self.den);
        Self::reduced(num, den)
    }

    /// Iterated derivative d^mu where `mu` lists the order per variable.
    pub fn derive_multi(&self, mu: &[u16]) -> Self {
        let mut out = self.clone();
        for (i, &e) in mu.iter().enumerate() {
            for _ in 0..e {
                out = out.derive(i);
                if out.is_zero() {
                    return out;
                }
            }
        }
        out
    }

    pub fn eval(&self, point: &[Rat]) -> Result<Rat> {
        if point.len() != self.n_vars() {
            return Err(Error::LengthMismatch { expected: self.n_vars(), found: point.len() });
        }
        let d = self.den.eval(point);
        if d.is_zero() {
            return Err(Error::PoleAtEvaluationPoint);
        }
        Ok(self.num.eval(point) / d)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            let num = if self.num.num_terms() > 1 {
                format!("({})", self.num)
            } else {
                format!("{}", self.num)
            };
            let den = if self.den.num_terms() > 1 {
                format!("({})", self.den)
            } else {
                format!("{}", self.den)
            };
            write!(f, "{}/{}", num, den)
        }
    }
}

impl From<MultiPoly> for RatFunc {
    fn from(p: MultiPoly) -> Self {
        Self::from_poly(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::multipoly::rat_frac;

    fn x2(n_vars: usize) -> RatFunc {
        RatFunc::var(n_vars, 1)
    }

    #[test]
    fn additive_inverse() {
        let a = x2(2).pow(1).unwrap();
        assert!(a.add(&a.neg()).is_zero());
    }

    #[test]
    fn square_of_x2() {
        // (x2)*(x2) = (x2)^2
        let a = x2(2);
        assert_eq!(a.mul(&a), a.pow(2).unwrap());
    }

    #[test]
    fn self_division_is_one() {
        let a = RatFunc::var(2, 0).div(&x2(2)).unwrap(); // x1/x2
        assert!(a.div(&a).unwrap().is_one());
    }

    #[test]
    fn division_by_zero_rejected() {
        let z = RatFunc::zero(2);
        assert_eq!(x2(2).div(&z), Err(Error::ZeroDivisor));
    }

    #[test]
    fn derive_examples() {
        // d/dx2 x2 = 1
        assert!(x2(2).derive(1).is_one());
        // d/dx2 (x2)^2 = 2 x2
        assert_eq!(x2(2).pow(2).unwrap().derive(1), x2(2).scale(&rat(2)));
        // d/dx1 (x2/x1) = -x2/x1^2   (quotient rule)
        let f = x2(2).div(&RatFunc::var(2, 0)).unwrap();
        let expect = x2(2)
            .neg()
            .div(&RatFunc::var(2, 0).pow(2).unwrap())
            .unwrap();
        assert_eq!(f.derive(0), expect);
    }

    #[test]
    fn eval_examples() {
        // x2 at (3,5) -> 5
        assert_eq!(x2(2).eval(&[rat(3), rat(5)]).unwrap(), rat(5));
        // (x2)^2 - x2 at (0,2) -> 2
        let p = x2(2).pow(2).unwrap().sub(&x2(2));
        assert_eq!(p.eval(&[rat(0), rat(2)]).unwrap(), rat(2));
        // 1/x1 at (0,1) -> pole
        let f = RatFunc::var(2, 0).inv().unwrap();
        assert_eq!(f.eval(&[rat(0), rat(1)]), Err(Error::PoleAtEvaluationPoint));
    }

    #[test]
    fn canonical_monic_denominator() {
        // (1) / (2 x1) normalizes to (1/2) / x1
        let f = RatFunc::one(1)
            .div(&RatFunc::var(1, 0).scale(&rat(2)))
            .unwrap();
        assert_eq!(f.denominator(), &MultiPoly::var(1, 0));
        assert_eq!(f.numerator(), &MultiPoly::constant(1, rat_frac(1, 2)));
    }
}
