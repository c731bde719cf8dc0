//! Sparse multivariate polynomials over Q with exact gcd.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Exponent vector of a monomial; ordered graded-lexicographically so that
/// BTreeMap iteration ends at the leading monomial.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u16>);

impl Monomial {
    pub fn unit(n_vars: usize) -> Self {
        Monomial(vec![0; n_vars])
    }

    pub fn var(n_vars: usize, idx: usize) -> Self {
        let mut e = vec![0; n_vars];
        e[idx] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn is_unit(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Exact division; None when some exponent would go negative.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut e = Vec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(&other.0) {
            if a < b {
                return None;
            }
            e.push(a - b);
        }
        Some(Monomial(e))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => self.0.cmp(&other.0),
            ord => ord,
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial with exact rational coefficients.
/// Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPoly {
    n_vars: usize,
    terms: BTreeMap<Monomial, Rat>,
}

impl MultiPoly {
    pub fn zero(n_vars: usize) -> Self {
        MultiPoly { n_vars, terms: BTreeMap::new() }
    }

    pub fn one(n_vars: usize) -> Self {
        Self::constant(n_vars, Rat::one())
    }

    pub fn constant(n_vars: usize, c: Rat) -> Self {
        let mut p = Self::zero(n_vars);
        if !c.is_zero() {
            p.terms.insert(Monomial::unit(n_vars), c);
        }
        p
    }

    /// x_idx with 0-based idx.
    pub fn var(n_vars: usize, idx: usize) -> Self {
        assert!(idx < n_vars, "variable index out of range");
        let mut p = Self::zero(n_vars);
        p.terms.insert(Monomial::var(n_vars, idx), Rat::one());
        p
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .map(|(m, c)| m.is_unit() && c.is_one())
                .unwrap_or(false)
    }

    /// Some(c) when the polynomial is a constant (including zero).
    pub fn as_constant(&self) -> Option<Rat> {
        if self.terms.is_empty() {
            return Some(Rat::zero());
        }
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            if m.is_unit() {
                return Some(c.clone());
            }
        }
        None
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Leading (monomial, coefficient) under graded-lex.
    pub fn leading(&self) -> Option<(&Monomial, &Rat)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> Rat {
        self.leading().map(|(_, c)| c.clone()).unwrap_or_else(Rat::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        debug_assert!(
            c.numer().bits() + c.denom().bits() < 1_000_000,
            "coefficient bit explosion"
        );
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.n_vars, other.n_vars);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        debug_assert_eq!(self.n_vars, other.n_vars);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        MultiPoly {
            n_vars: self.n_vars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.n_vars, other.n_vars);
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.n_vars);
        }
        if let Some(c) = self.as_constant() {
            return other.scale(&c);
        }
        if let Some(c) = other.as_constant() {
            return self.scale(&c);
        }
        let mut out = Self::zero(self.n_vars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero(self.n_vars);
        }
        MultiPoly {
            n_vars: self.n_vars,
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.n_vars);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Partial derivative with respect to variable `idx` (0-based).
    pub fn derive(&self, idx: usize) -> Self {
        assert!(idx < self.n_vars);
        let mut out = Self::zero(self.n_vars);
        for (m, c) in &self.terms {
            let e = m.0[idx];
            if e > 0 {
                let mut m2 = m.clone();
                m2.0[idx] = e - 1;
                out.add_term(m2, c * rat(e as i64));
            }
        }
        out
    }

    pub fn eval(&self, point: &[Rat]) -> Rat {
        assert_eq!(point.len(), self.n_vars);
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    t *= &point[i];
                }
            }
            acc += t;
        }
        acc
    }

    /// Exact division: Some(q) with self = q * other, None when not divisible.
    pub fn div_exact(&self, other: &Self) -> Option<Self> {
        debug_assert_eq!(self.n_vars, other.n_vars);
        assert!(!other.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Some(Self::zero(self.n_vars));
        }
        if let Some(c) = other.as_constant() {
            return Some(self.scale(&(Rat::one() / c)));
        }
        let (lm, lc) = other.leading().unwrap();
        let mut rem = self.clone();
        let mut quot = Self::zero(self.n_vars);
        while let Some((rm, rc)) = rem.leading() {
            let qm = rm.div(lm)?;
            let qc = rc / lc;
            // rem -= (qc * qm) * other
            for (m, c) in &other.terms {
                rem.add_term(qm.mul(m), -(&qc * c));
            }
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    /// Rational r with r * self integer-primitive (coprime integer coefficients),
    /// sign chosen so the leading coefficient of r * self is positive.
    fn primitive_scale(&self) -> Rat {
        assert!(!self.is_zero());
        let mut den_lcm = BigInt::one();
        let mut num_gcd = BigInt::zero();
        for c in self.terms.values() {
            den_lcm = den_lcm.lcm(c.denom());
            num_gcd = num_gcd.gcd(c.numer());
        }
        let mut r = Rat::new(den_lcm, num_gcd);
        if (self.leading_coeff() * &r).is_negative() {
            r = -r;
        }
        r
    }

    /// Integer-primitive form with positive leading coefficient.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.primitive_scale())
    }

    /// Componentwise minimum exponent over all terms (the largest monomial
    /// dividing the polynomial).
    fn min_support(&self) -> Monomial {
        let mut out: Option<Vec<u16>> = None;
        for m in self.terms.keys() {
            match out {
                None => out = Some(m.0.clone()),
                Some(ref mut v) => {
                    for (x, y) in v.iter_mut().zip(&m.0) {
                        *x = (*x).min(*y);
                    }
                }
            }
        }
        Monomial(out.unwrap_or_else(|| vec![0; self.n_vars]))
    }

    /// Divide by a monomial dividing every term.
    fn shift_down(&self, m: &Monomial) -> Self {
        MultiPoly {
            n_vars: self.n_vars,
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.div(m).expect("monomial divides all terms"), c.clone()))
                .collect(),
        }
    }

    fn monomial(n_vars: usize, m: Monomial) -> Self {
        let mut p = Self::zero(n_vars);
        p.add_term(m, Rat::one());
        p
    }

    /// Highest variable index occurring, if any.
    fn main_var(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for m in self.terms.keys() {
            for (i, &e) in m.0.iter().enumerate().rev() {
                if e > 0 {
                    best = Some(best.map_or(i, |b| b.max(i)));
                    break;
                }
            }
        }
        best
    }

    fn degree_in(&self, idx: usize) -> u16 {
        self.terms.keys().map(|m| m.0[idx]).max().unwrap_or(0)
    }

    /// Coefficients by degree in variable `idx`, constant term first.
    fn coeffs_in(&self, idx: usize) -> Vec<MultiPoly> {
        let d = self.degree_in(idx) as usize;
        let mut out = vec![Self::zero(self.n_vars); d + 1];
        for (m, c) in &self.terms {
            let e = m.0[idx] as usize;
            let mut m2 = m.clone();
            m2.0[idx] = 0;
            out[e].add_term(m2, c.clone());
        }
        out
    }

    fn from_coeffs_in(idx: usize, coeffs: &[MultiPoly], n_vars: usize) -> MultiPoly {
        let mut out = Self::zero(n_vars);
        for (e, p) in coeffs.iter().enumerate() {
            for (m, c) in &p.terms {
                let mut m2 = m.clone();
                m2.0[idx] += e as u16;
                out.add_term(m2, c.clone());
            }
        }
        out
    }

    /// Content with respect to variable `idx`: gcd of the coefficient polynomials.
    fn content_in(&self, idx: usize) -> MultiPoly {
        let mut g = Self::zero(self.n_vars);
        for p in self.coeffs_in(idx) {
            if !p.is_zero() {
                g = Self::gcd(&g, &p);
                if g.as_constant().is_some() {
                    break;
                }
            }
        }
        g
    }

    /// Degree in each variable.
    fn degrees(&self) -> Vec<u16> {
        let mut out = vec![0u16; self.n_vars];
        for m in self.terms.keys() {
            for (i, &e) in m.0.iter().enumerate() {
                out[i] = out[i].max(e);
            }
        }
        out
    }

    /// Leading coefficient with respect to one variable: the coefficient
    /// polynomial of the top power of x_k.
    fn leading_coeff_in(&self, k: usize) -> MultiPoly {
        let d = self.degree_in(k);
        let mut out = Self::zero(self.n_vars);
        for (m, c) in &self.terms {
            if m.0[k] == d {
                let mut m2 = m.clone();
                m2.0[k] = 0;
                out.add_term(m2, c.clone());
            }
        }
        out
    }

    /// Univariate image: substitute x_i -> point[i] for all i != k.
    fn eval_except(&self, k: usize, point: &[Rat]) -> Vec<Rat> {
        let d = self.degree_in(k) as usize;
        let mut out = vec![Rat::zero(); d + 1];
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if i == k {
                    continue;
                }
                for _ in 0..e {
                    t *= &point[i];
                }
            }
            out[m.0[k] as usize] += t;
        }
        out
    }

    /// Certified upper bound check: true when gcd(a, b) provably has degree 0
    /// in every variable (so the primitive gcd is 1). Uses the bound
    /// deg_k gcd <= deg gcd(a|_tau, b|_tau) for any evaluation point tau that
    /// keeps the leading x_k coefficient of one input alive.
    fn coprime_by_evaluation(a: &Self, b: &Self) -> bool {
        let da = a.degrees();
        let db = b.degrees();
        'vars: for k in 0..a.n_vars {
            if da[k] == 0 || db[k] == 0 {
                continue; // gcd cannot involve x_k
            }
            let lc = a.leading_coeff_in(k);
            // deterministic points, a few retries to dodge lc zeros
            for offset in 0..4i64 {
                let point: Vec<Rat> = (0..a.n_vars)
                    .map(|i| rat(2 + offset + (i as i64) * 3 + (k as i64)))
                    .collect();
                if lc.eval(&point).is_zero() {
                    continue;
                }
                let ua = a.eval_except(k, &point);
                let ub = b.eval_except(k, &point);
                if uni_gcd_degree(ua, ub) == 0 {
                    continue 'vars; // certified: x_k absent from the gcd
                } else {
                    return false; // gcd may involve x_k
                }
            }
            return false; // no usable point found
        }
        true
    }

    /// Polynomial gcd over Q, returned integer-primitive with positive leading
    /// coefficient (1 for coprime inputs). Primitive PRS in the top variable.
    /// Inputs are normalized to primitive integer form first so the remainder
    /// sequence runs entirely over integers; an exact evaluation bound prunes
    /// the (typical) coprime case before any recursion.
    pub fn gcd(a: &Self, b: &Self) -> Self {
        debug_assert_eq!(a.n_vars, b.n_vars);
        if a.is_zero() {
            return if b.is_zero() { b.clone() } else { b.primitive() };
        }
        if b.is_zero() {
            return a.primitive();
        }
        if a.as_constant().is_some() || b.as_constant().is_some() {
            return Self::one(a.n_vars);
        }
        // common monomial factor first: x^min(support) splits off exactly
        let ma = a.min_support();
        let mb = b.min_support();
        let shared = Monomial(ma.0.iter().zip(&mb.0).map(|(x, y)| *x.min(y)).collect());
        if !shared.is_unit() {
            let a2 = a.shift_down(&shared);
            let b2 = b.shift_down(&shared);
            let mut g = Self::gcd(&a2, &b2);
            g = g.mul(&Self::monomial(a.n_vars, shared));
            return g.primitive();
        }
        let a = a.primitive();
        let b = b.primitive();
        // a single-term input makes the gcd a pure monomial, already split off
        if a.num_terms() == 1 || b.num_terms() == 1 {
            return Self::one(a.n_vars);
        }
        if Self::coprime_by_evaluation(&a, &b) {
            return Self::one(a.n_vars);
        }
        // the gcd only involves variables positive in both inputs; when that
        // is a single variable the gcd is the fold of univariate gcds over
        // the coefficient groups, with no remainder sequence at all
        let da = a.degrees();
        let db = b.degrees();
        let shared_vars: Vec<usize> =
            (0..a.n_vars).filter(|&i| da[i] > 0 && db[i] > 0).collect();
        if shared_vars.is_empty() {
            return Self::one(a.n_vars);
        }
        if shared_vars.len() == 1 {
            return Self::univariate_shared_gcd(&a, &b, shared_vars[0]);
        }
        // heuristic gcd by big-integer evaluation with exact verification;
        // falls back to the subresultant chain when unlucky
        if let Some(g) = Self::gcd_heuristic(&a, &b) {
            return g;
        }
        let k = a.main_var().unwrap().max(b.main_var().unwrap());
        let ca = a.content_in(k);
        let cb = b.content_in(k);
        let cg = Self::gcd(&ca, &cb);
        let pa = a.div_exact(&ca).expect("content divides").primitive();
        let pb = b.div_exact(&cb).expect("content divides").primitive();

        // subresultant remainder sequence in x_k: each remainder is divided
        // by a predicted factor with a single exact division, so no content
        // recursion is needed along the chain
        let (mut u, mut v) = if pa.degree_in(k) >= pb.degree_in(k) {
            (pa, pb)
        } else {
            (pb, pa)
        };
        let one = Self::one(a.n_vars);
        let mut g = one.clone();
        let mut h = one.clone();
        loop {
            if v.degree_in(k) == 0 {
                // v nonzero and free of x_k: primitive parts coprime in x_k
                u = one;
                break;
            }
            let delta = (u.degree_in(k) - v.degree_in(k)) as u32;
            let r = Self::pseudo_rem(&u, &v, k);
            u = v;
            if r.is_zero() {
                break;
            }
            let divisor = g.mul(&h.pow(delta));
            v = r.div_exact(&divisor).expect("subresultant factor divides");
            g = u.leading_coeff_in_full(k);
            h = if delta == 0 {
                h
            } else if delta == 1 {
                g.clone()
            } else {
                // h = g^delta / h^(delta-1), an exact division
                g.pow(delta)
                    .div_exact(&h.pow(delta - 1))
                    .expect("subresultant h update divides")
            };
        }
        // one content extraction at the end of the chain
        let c = u.content_in(k);
        let pp = u.div_exact(&c).expect("content divides");
        cg.mul(&pp).primitive()
    }

    /// Leading coefficient in x_k including the other variables.
    fn leading_coeff_in_full(&self, k: usize) -> MultiPoly {
        self.leading_coeff_in(k)
    }

    /// Max absolute value of the (integer) coefficients.
    fn height(&self) -> BigInt {
        let mut h = BigInt::zero();
        for c in self.terms.values() {
            debug_assert!(c.denom().is_one());
            let a = c.numer().abs();
            if a > h {
                h = a;
            }
        }
        h
    }

    /// Substitute x_e := xi (an integer), collapsing that variable.
    fn subst_int(&self, e: usize, xi: &BigInt) -> Self {
        let mut out = Self::zero(self.n_vars);
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for _ in 0..m.0[e] {
                t *= Rat::from_integer(xi.clone());
            }
            let mut m2 = m.clone();
            m2.0[e] = 0;
            out.add_term(m2, t);
        }
        out
    }

    /// Coefficient-wise symmetric remainder mod xi, mapped into (-xi/2, xi/2].
    fn smod(&self, xi: &BigInt) -> Self {
        let half = xi / 2;
        let mut out = Self::zero(self.n_vars);
        for (m, c) in &self.terms {
            debug_assert!(c.denom().is_one());
            let mut r = c.numer().mod_floor(xi);
            if r > half {
                r -= xi;
            }
            out.add_term(m.clone(), Rat::from_integer(r));
        }
        out
    }

    /// Heuristic gcd: evaluate the last shared variable at a large integer,
    /// recurse on the image, reconstruct the coefficients from the base-xi
    /// digits, and verify by exact division. Inputs are integer-primitive
    /// with at least two shared variables. None when every attempt fails.
    fn gcd_heuristic(a: &Self, b: &Self) -> Option<Self> {
        let da = a.degrees();
        let db = b.degrees();
        let e = (0..a.n_vars).rev().find(|&i| da[i] > 0 && db[i] > 0)?;
        let mut xi: BigInt = (a.height().max(b.height()) + 1i32) * 2i32 + 29i32;
        for _ in 0..4 {
            let ia = a.subst_int(e, &xi);
            let ib = b.subst_int(e, &xi);
            let gamma = if ia.active_vars() == 0 || ib.active_vars() == 0 {
                // integer gcd of the collapsed values
                let ga = ia.as_constant()?.numer().clone();
                let gb = ib.as_constant()?.numer().clone();
                Self::constant(a.n_vars, Rat::from_integer(ga.gcd(&gb)))
            } else {
                Self::gcd(&ia, &ib)
            };
            // xi-adic reconstruction of the x_e coefficients
            let mut g = Self::zero(a.n_vars);
            let mut rest = gamma;
            let mut power = 0u16;
            let mut ok = true;
            while !rest.is_zero() {
                if power as u32 > da[e].min(db[e]) as u32 {
                    ok = false;
                    break;
                }
                let digit = rest.smod(&xi);
                for (m, c) in &digit.terms {
                    let mut m2 = m.clone();
                    m2.0[e] = power;
                    g.add_term(m2, c.clone());
                }
                rest = rest.sub(&digit).div_int(&xi);
                power += 1;
            }
            if ok && !g.is_zero() {
                let g = g.primitive();
                if a.div_exact(&g).is_some() && b.div_exact(&g).is_some() {
                    return Some(g);
                }
            }
            xi = xi * 7i32 + 9i32;
        }
        None
    }

    fn active_vars(&self) -> usize {
        self.degrees().iter().filter(|&&d| d > 0).count()
    }

    /// Divide every (integer) coefficient by xi exactly.
    fn div_int(&self, xi: &BigInt) -> Self {
        let mut out = Self::zero(self.n_vars);
        for (m, c) in &self.terms {
            debug_assert!(c.denom().is_one());
            let (q, r) = c.numer().div_rem(xi);
            debug_assert!(r.is_zero(), "xi-adic digit removal is exact");
            out.add_term(m.clone(), Rat::from_integer(q));
        }
        out
    }

    /// gcd when x_k is the only variable positive in both inputs: the gcd
    /// lies in Q[x_k] and divides every coefficient group, so it is the fold
    /// of exact integer univariate gcds. No remainder sequence, no swell.
    fn univariate_shared_gcd(a: &Self, b: &Self, k: usize) -> Self {
        let mut acc: Option<Vec<BigInt>> = None;
        for poly in [a, b] {
            for (_, group) in poly.groups_in(k) {
                let next = match acc {
                    None => uni_primitive_int(group),
                    Some(prev) => uni_gcd_int(prev, uni_primitive_int(group)),
                };
                if next.len() == 1 {
                    return Self::one(a.n_vars);
                }
                acc = Some(next);
            }
        }
        let g = acc.expect("nonzero inputs");
        let mut out = Self::zero(a.n_vars);
        for (e, c) in g.into_iter().enumerate() {
            if !c.is_zero() {
                let mut m = vec![0u16; a.n_vars];
                m[k] = e as u16;
                out.add_term(Monomial(m), Rat::from_integer(c));
            }
        }
        out.primitive()
    }

    /// Coefficient vectors in x_k, grouped by the monomial in the remaining
    /// variables.
    fn groups_in(&self, k: usize) -> BTreeMap<Monomial, Vec<Rat>> {
        let d = self.degree_in(k) as usize;
        let mut out: BTreeMap<Monomial, Vec<Rat>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut rest = m.clone();
            let e = rest.0[k] as usize;
            rest.0[k] = 0;
            let entry = out.entry(rest).or_insert_with(|| vec![Rat::zero(); d + 1]);
            entry[e] += c;
        }
        out
    }

    /// Exact pseudo-remainder of u by v in variable k:
    /// lc(v)^(deg_k u - deg_k v + 1) * u  mod  v, with that normalization
    /// applied in full (the subresultant chain depends on it).
    fn pseudo_rem(u: &Self, v: &Self, k: usize) -> Self {
        let n_vars = u.n_vars;
        let mut uc = u.coeffs_in(k);
        let vc = v.coeffs_in(k);
        let dv = vc.len() - 1;
        let lv = vc[dv].clone();
        let du0 = u.degree_in(k) as usize;
        let mut rounds = 0u32;
        loop {
            while uc.len() > 1 && uc.last().unwrap().is_zero() {
                uc.pop();
            }
            let du = uc.len() - 1;
            if uc[du].is_zero() || du < dv {
                break;
            }
            rounds += 1;
            let lead = uc[du].clone();
            for c in uc.iter_mut() {
                *c = c.mul(&lv);
            }
            // subtract lead * y^(du-dv) * v
            for (j, vcj) in vc.iter().enumerate() {
                let t = lead.mul(vcj);
                uc[du - dv + j] = uc[du - dv + j].sub(&t);
            }
        }
        // top up to the exact lc(v)^(du0-dv+1) normalization
        let needed = (du0 + 1 - dv) as u32;
        if rounds < needed {
            let factor = lv.pow(needed - rounds);
            for c in uc.iter_mut() {
                *c = c.mul(&factor);
            }
        }
        Self::from_coeffs_in(k, &uc, n_vars)
    }

    pub fn lcm(a: &Self, b: &Self) -> Self {
        if a.is_zero() || b.is_zero() {
            return Self::zero(a.n_vars);
        }
        let g = Self::gcd(a, b);
        a.mul(b).div_exact(&g).expect("gcd divides product").primitive()
    }
}

fn uni_trim(v: &mut Vec<BigInt>) {
    while v.len() > 1 && v.last().map(|c| c.is_zero()).unwrap_or(false) {
        v.pop();
    }
}

fn uni_is_zero(v: &[BigInt]) -> bool {
    v.iter().all(|c| c.is_zero())
}

fn uni_primitive(v: &mut Vec<BigInt>) {
    let mut g = BigInt::zero();
    for c in v.iter() {
        g = g.gcd(c);
    }
    if v.last().map(|c| c.is_negative()).unwrap_or(false) {
        g = -g;
    }
    if !g.is_zero() && !g.is_one() {
        for c in v.iter_mut() {
            *c = &*c / &g;
        }
    }
}

/// Clear denominators and remove the integer content.
fn uni_primitive_int(v: Vec<Rat>) -> Vec<BigInt> {
    let mut den = BigInt::one();
    for c in &v {
        den = den.lcm(c.denom());
    }
    let mut out: Vec<BigInt> = v.into_iter().map(|c| c.numer() * (&den / c.denom())).collect();
    uni_trim(&mut out);
    uni_primitive(&mut out);
    out
}

/// Primitive gcd of univariate integer polynomials (coefficient vectors,
/// index = power), by a primitive pseudo-remainder sequence: exact, with
/// bounded coefficient growth.
fn uni_gcd_int(a: Vec<BigInt>, b: Vec<BigInt>) -> Vec<BigInt> {
    let mut u = a;
    let mut v = b;
    uni_trim(&mut u);
    uni_trim(&mut v);
    if uni_is_zero(&u) {
        uni_primitive(&mut v);
        return v;
    }
    if uni_is_zero(&v) {
        uni_primitive(&mut u);
        return u;
    }
    if u.len() < v.len() {
        std::mem::swap(&mut u, &mut v);
    }
    loop {
        if v.len() == 1 {
            return vec![BigInt::one()]; // nonzero constant divides everything
        }
        // pseudo-remainder u mod v with primitive reduction
        let lv = v.last().unwrap().clone();
        while u.len() >= v.len() && !uni_is_zero(&u) {
            let q = u.last().unwrap().clone();
            let shift = u.len() - v.len();
            for c in u.iter_mut() {
                *c = &*c * &lv;
            }
            for (i, vc) in v.iter().enumerate() {
                let t = vc * &q;
                u[shift + i] = &u[shift + i] - &t;
            }
            uni_trim(&mut u);
            uni_primitive(&mut u);
        }
        if uni_is_zero(&u) {
            uni_primitive(&mut v);
            return v;
        }
        std::mem::swap(&mut u, &mut v);
    }
}

/// Degree of the gcd of two univariate polynomials with rational coefficients.
fn uni_gcd_degree(a: Vec<Rat>, b: Vec<Rat>) -> usize {
    uni_gcd_int(uni_primitive_int(a), uni_primitive_int(b)).len() - 1
}

fn fmt_rat(c: &Rat) -> String {
    if c.denom().is_one() {
        format!("{}", c.numer())
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for MultiPoly {
    /// Canonical form: terms in descending graded-lex order, `x<i>` variables 1-based.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let mag = if neg { -c.clone() } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            if !mag.is_one() || m.is_unit() {
                factors.push(fmt_rat(&mag));
            }
            for (i, &e) in m.0.iter().enumerate() {
                if e == 1 {
                    factors.push(format!("x{}", i + 1));
                } else if e > 1 {
                    factors.push(format!("x{}^{}", i + 1, e));
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(n: usize, i: usize) -> MultiPoly {
        MultiPoly::var(n, i)
    }

    #[test]
    fn arithmetic_basics() {
        let a = x(2, 0).mul(&x(2, 0)).add(&x(2, 1)); // x1^2 + x2
        let b = x(2, 1).neg();
        assert_eq!(a.add(&b), x(2, 0).mul(&x(2, 0)));
        assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn derive_and_eval() {
        // d/dx2 (x2^2) = 2 x2
        let p = x(2, 1).pow(2);
        assert_eq!(p.derive(1), x(2, 1).scale(&rat(2)));
        // (x2^2 - x2) at (0, 2) = 2
        let q = p.sub(&x(2, 1));
        assert_eq!(q.eval(&[rat(0), rat(2)]), rat(2));
    }

    #[test]
    fn exact_division() {
        let a = x(2, 0).add(&x(2, 1)); // x1 + x2
        let b = x(2, 0).sub(&x(2, 1)); // x1 - x2
        let prod = a.mul(&b);
        assert_eq!(prod.div_exact(&a).unwrap(), b);
        assert!(a.div_exact(&b).is_none());
    }

    #[test]
    fn gcd_multivariate() {
        let n = 2;
        let a = x(n, 0).add(&x(n, 1)); // x1 + x2
        let b = x(n, 0); // x1
        let p1 = a.mul(&b).mul(&a); // x1 (x1+x2)^2
        let p2 = a.mul(&b.pow(3)); // x1^3 (x1+x2)
        let g = MultiPoly::gcd(&p1, &p2);
        assert_eq!(g, a.mul(&b));
    }

    #[test]
    fn gcd_coprime_is_one() {
        let a = x(2, 0).pow(2).add(&MultiPoly::one(2));
        let b = x(2, 1).sub(&MultiPoly::constant(2, rat(3)));
        assert!(MultiPoly::gcd(&a, &b).is_one());
    }

    #[test]
    fn display_canonical() {
        let p = x(2, 0).pow(2).sub(&x(2, 1).scale(&rat_frac(1, 2)));
        assert_eq!(p.to_string(), "x1^2 - 1/2*x2");
    }
}
