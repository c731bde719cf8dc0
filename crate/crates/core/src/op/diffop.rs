//! Matrices of differential operators between labeled component spaces.

use num_traits::One;

use super::multiindex::MultiIndex;
use super::space::SpaceSpec;
use super::weyl::WeylPoly;
use crate::coeff::RatFunc;
use crate::error::{Error, Result};

/// A linear differential operator `src -> dst`: a dst.dim × src.dim matrix of
/// scalar operators over a common set of base variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiffOp {
    src: SpaceSpec,
    dst: SpaceSpec,
    n_vars: usize,
    rows: Vec<Vec<WeylPoly>>,
}

impl DiffOp {
    pub fn zero(src: SpaceSpec, dst: SpaceSpec, n_vars: usize) -> Self {
        let rows = (0..dst.dim())
            .map(|_| (0..src.dim()).map(|_| WeylPoly::zero(n_vars)).collect())
            .collect();
        DiffOp { src, dst, n_vars, rows }
    }

    pub fn identity(space: SpaceSpec, n_vars: usize) -> Self {
        let mut op = Self::zero(space.clone(), space, n_vars);
        for i in 0..op.dst.dim() {
            op.rows[i][i] = WeylPoly::one(n_vars);
        }
        op
    }

    /// Order-0 operator from a matrix of coefficient functions.
    pub fn from_matrix(src: SpaceSpec, dst: SpaceSpec, entries: Vec<Vec<RatFunc>>) -> Self {
        let n_vars = entries
            .iter()
            .flat_map(|r| r.iter())
            .map(|c| c.n_vars())
            .next()
            .expect("nonempty matrix");
        let mut op = Self::zero(src, dst, n_vars);
        for (r, row) in entries.into_iter().enumerate() {
            for (c, f) in row.into_iter().enumerate() {
                if !f.is_zero() {
                    op.rows[r][c] = WeylPoly::constant(f);
                }
            }
        }
        op
    }

    pub fn src(&self) -> &SpaceSpec {
        &self.src
    }

    pub fn dst(&self) -> &SpaceSpec {
        &self.dst
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn entry(&self, r: usize, c: usize) -> &WeylPoly {
        &self.rows[r][c]
    }

    pub fn row(&self, r: usize) -> &[WeylPoly] {
        &self.rows[r]
    }

    pub fn rows(&self) -> &[Vec<WeylPoly>] {
        &self.rows
    }

    pub fn set_entry(&mut self, r: usize, c: usize, p: WeylPoly) {
        assert_eq!(p.n_vars(), self.n_vars);
        self.rows[r][c] = p;
    }

    pub fn add_term(&mut self, r: usize, c: usize, mu: MultiIndex, coeff: RatFunc) {
        self.rows[r][c].add_term(mu, coeff);
    }

    /// Max |mu| over all entries.
    pub fn order(&self) -> u32 {
        self.rows
            .iter()
            .flat_map(|r| r.iter())
            .map(|p| p.order())
            .max()
            .unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.iter().all(|p| p.is_zero()))
    }

    /// Entrywise equality ignoring space names (used by self-adjointness
    /// checks, where the dual spaces carry different name tags).
    pub fn entries_eq(&self, other: &Self) -> bool {
        self.src.dim() == other.src.dim()
            && self.dst.dim() == other.dst.dim()
            && self.rows == other.rows
    }

    fn check_vars(&self, other: &Self) -> Result<()> {
        if self.n_vars != other.n_vars {
            return Err(Error::VariableCountMismatch { left: self.n_vars, right: other.n_vars });
        }
        Ok(())
    }

    /// Composition self ∘ other (apply `other` first).
    pub fn compose(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        if self.src.dim() != other.dst.dim() {
            return Err(Error::SpaceMismatch { expected: self.src.dim(), found: other.dst.dim() });
        }
        let mut out = Self::zero(other.src.clone(), self.dst.clone(), self.n_vars);
        for r in 0..self.dst.dim() {
            for c in 0..other.src.dim() {
                let mut acc = WeylPoly::zero(self.n_vars);
                for k in 0..self.src.dim() {
                    let left = &self.rows[r][k];
                    let right = &other.rows[k][c];
                    if left.is_zero() || right.is_zero() {
                        continue;
                    }
                    acc.add_assign(&left.compose(right));
                }
                out.rows[r][c] = acc;
            }
        }
        Ok(out)
    }

    /// Entrywise exact linear combination Σ s_k · D_k; all operands must share
    /// source and target dimensions.
    pub fn linear_combine(terms: &[(RatFunc, &DiffOp)]) -> Result<Self> {
        let (_, first) = terms.first().expect("nonempty combination");
        let mut out = Self::zero(first.src.clone(), first.dst.clone(), first.n_vars);
        for (s, op) in terms {
            first.check_vars(op)?;
            if op.src.dim() != first.src.dim() || op.dst.dim() != first.dst.dim() {
                return Err(Error::SpaceMismatch { expected: first.src.dim(), found: op.src.dim() });
            }
            for r in 0..out.dst.dim() {
                for c in 0..out.src.dim() {
                    out.rows[r][c].add_assign(&op.rows[r][c].scale(s));
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, s: &RatFunc) -> Self {
        let mut out = self.clone();
        for r in 0..out.dst.dim() {
            for c in 0..out.src.dim() {
                out.rows[r][c] = out.rows[r][c].scale(s);
            }
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        Self::linear_combine(&[
            (RatFunc::one(self.n_vars), self),
            (RatFunc::one(self.n_vars).neg(), other),
        ])
    }

    /// Apply to a tuple of rational functions.
    pub fn apply(&self, f: &[RatFunc]) -> Result<Vec<RatFunc>> {
        if f.len() != self.src.dim() {
            return Err(Error::LengthMismatch { expected: self.src.dim(), found: f.len() });
        }
        let mut out = Vec::with_capacity(self.dst.dim());
        for row in &self.rows {
            let mut acc = RatFunc::zero(self.n_vars);
            for (p, fc) in row.iter().zip(f) {
                if !p.is_zero() {
                    acc = acc.add(&p.apply(fc));
                }
            }
            out.push(acc);
        }
        Ok(out)
    }

    /// Formal adjoint with respect to the weighted pairings of src and dst:
    /// entry (c, r) of the result is (w_dst_r / w_src_c) times the raw adjoint
    /// of entry (r, c); the dual spaces keep dimensions and weights.
    pub fn adjoint(&self) -> Self {
        let mut out = Self::zero(self.dst.dual(), self.src.dual(), self.n_vars);
        for r in 0..self.dst.dim() {
            for c in 0..self.src.dim() {
                if self.rows[r][c].is_zero() {
                    continue;
                }
                let w = self.dst.weight(r) / self.src.weight(c);
                let mut adj = self.rows[r][c].raw_adjoint();
                if !w.is_one() {
                    adj = adj.scale(&RatFunc::constant(self.n_vars, w));
                }
                out.rows[c][r] = adj;
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::rat;

    /// Example operator: d1 eta1 + d2 eta2 - x2 eta1 = zeta over Q(x1,x2).
    pub fn d1_example() -> DiffOp {
        let src = SpaceSpec::vector("eta", 2);
        let dst = SpaceSpec::scalar("zeta");
        let mut op = DiffOp::zero(src, dst, 2);
        op.add_term(0, 0, MultiIndex::unit(2, 0), RatFunc::one(2));
        op.add_term(0, 0, MultiIndex::zero(2), RatFunc::var(2, 1).neg());
        op.add_term(0, 1, MultiIndex::unit(2, 1), RatFunc::one(2));
        op
    }

    #[test]
    fn adjoint_matches_integration_by_parts() {
        // ad(D1): mu1 = -d1 lambda - x2 lambda, mu2 = -d2 lambda
        let adj = d1_example().adjoint();
        assert_eq!(adj.src().dim(), 1);
        assert_eq!(adj.dst().dim(), 2);
        let mut mu1 = WeylPoly::derivative(2, 0).neg();
        mu1.add_term(MultiIndex::zero(2), RatFunc::var(2, 1).neg());
        let mu2 = WeylPoly::derivative(2, 1).neg();
        assert_eq!(adj.entry(0, 0), &mu1);
        assert_eq!(adj.entry(1, 0), &mu2);
    }

    #[test]
    fn adjoint_involution_on_example() {
        let d1 = d1_example();
        assert_eq!(d1.adjoint().adjoint(), d1);
    }

    #[test]
    fn identity_composition() {
        let d1 = d1_example();
        let id_src = DiffOp::identity(d1.src().clone(), 2);
        let id_dst = DiffOp::identity(d1.dst().clone(), 2);
        assert_eq!(d1.compose(&id_src).unwrap(), d1);
        assert_eq!(id_dst.compose(&d1).unwrap(), d1);
    }

    #[test]
    fn kernel_substitution_annihilates_parametrization() {
        // xi1 = d2 phi, xi2 = -d1 phi + x2 phi kills the second order
        // parametrization (only the trivial eta remains).
        let d = crate::example23::parametrization();
        let c = crate::example23::dm1();
        assert!(d.compose(&c).unwrap().is_zero());
    }

    #[test]
    fn apply_example() {
        // D1 applied to (x1, x2) = 1 + 1 - x2 x1 = 2 - x1 x2
        let d1 = d1_example();
        let out = d1.apply(&[RatFunc::var(2, 0), RatFunc::var(2, 1)]).unwrap();
        let expect = RatFunc::int(2, 2).sub(&RatFunc::var(2, 0).mul(&RatFunc::var(2, 1)));
        assert_eq!(out, vec![expect]);
    }

    #[test]
    fn linear_combine_cancels() {
        let d1 = d1_example();
        let z = DiffOp::linear_combine(&[
            (RatFunc::one(2), &d1),
            (RatFunc::int(2, -1), &d1),
        ])
        .unwrap();
        assert!(z.is_zero());
        let doubled_half = d1.scale(&RatFunc::constant(2, rat(2))).scale(&RatFunc::constant(2, crate::coeff::rat_frac(1, 2)));
        assert_eq!(doubled_half, d1);
    }
}
