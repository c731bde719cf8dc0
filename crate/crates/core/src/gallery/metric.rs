//! Metrics: symmetric invertible coefficient matrices with exact inverse,
//! determinant, and (when available) the associated unimodular density.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::coeff::{rat, Rat, RatFunc};
use crate::error::{Error, Result};

/// Preset metric families for the gallery.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MetricKind {
    /// diag(1, -1, ..., -1)
    Minkowski,
    /// identity
    Euclid,
    /// caller-supplied symmetric matrix
    Custom,
}

/// A non-degenerate metric over Q(x1..xn): the matrix, its exact inverse and
/// determinant, and the density (|det|^{-1/n} times the metric) whenever
/// |det| has an exact rational n-th root.
#[derive(Debug, Clone)]
pub struct Metric {
    n: usize,
    omega: Vec<Vec<RatFunc>>,
    inverse: Vec<Vec<RatFunc>>,
    det: RatFunc,
    density: Option<Vec<Vec<RatFunc>>>,
}

impl Metric {
    pub fn minkowski(n: usize) -> Self {
        let entries = diag(n, |i| if i == 0 { rat(1) } else { rat(-1) });
        Self::custom(n, entries).expect("preset is invertible")
    }

    pub fn euclid(n: usize) -> Self {
        let entries = diag(n, |_| rat(1));
        Self::custom(n, entries).expect("preset is invertible")
    }

    pub fn custom(n: usize, omega: Vec<Vec<RatFunc>>) -> Result<Self> {
        assert!(n >= 2, "metrics need n >= 2");
        assert_eq!(omega.len(), n);
        for row in &omega {
            assert_eq!(row.len(), n);
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if omega[i][j] != omega[j][i] {
                    return Err(Error::NonSymmetricMetric);
                }
            }
        }
        let (inverse, det) = invert(&omega, n)?;
        let density = density_of(&omega, &det, n);
        Ok(Metric { n, omega, inverse, det, density })
    }

    pub fn make(kind: MetricKind, n: usize, entries: Option<Vec<Vec<RatFunc>>>) -> Result<Self> {
        match kind {
            MetricKind::Minkowski => Ok(Self::minkowski(n)),
            MetricKind::Euclid => Ok(Self::euclid(n)),
            MetricKind::Custom => {
                let entries = entries.expect("custom metric needs entries");
                Self::custom(n, entries)
            }
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// omega_ij
    pub fn lo(&self, i: usize, j: usize) -> &RatFunc {
        &self.omega[i][j]
    }

    /// omega^{ij}
    pub fn up(&self, i: usize, j: usize) -> &RatFunc {
        &self.inverse[i][j]
    }

    pub fn det(&self) -> &RatFunc {
        &self.det
    }

    /// The density matrix, when |det| is an exact n-th power in Q.
    pub fn density(&self) -> Result<&Vec<Vec<RatFunc>>> {
        self.density.as_ref().ok_or(Error::DensityUnavailable)
    }

    pub fn has_density(&self) -> bool {
        self.density.is_some()
    }

    /// All entries free of the base variables.
    pub fn is_constant(&self) -> bool {
        self.omega
            .iter()
            .flat_map(|r| r.iter())
            .all(|c| c.as_constant().is_some())
    }
}

fn diag(n: usize, f: impl Fn(usize) -> Rat) -> Vec<Vec<RatFunc>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        RatFunc::constant(n, f(i))
                    } else {
                        RatFunc::zero(n)
                    }
                })
                .collect()
        })
        .collect()
}

/// Gauss-Jordan over the fraction field; returns (inverse, determinant).
fn invert(m: &[Vec<RatFunc>], n: usize) -> Result<(Vec<Vec<RatFunc>>, RatFunc)> {
    let mut a: Vec<Vec<RatFunc>> = m.to_vec();
    let mut inv: Vec<Vec<RatFunc>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { RatFunc::one(n) } else { RatFunc::zero(n) })
                .collect()
        })
        .collect();
    let mut det = RatFunc::one(n);
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero()).ok_or(Error::SingularMetric)?;
        if pivot != col {
            a.swap(pivot, col);
            inv.swap(pivot, col);
            det = det.neg();
        }
        let p = a[col][col].clone();
        det = det.mul(&p);
        let pinv = p.inv()?;
        for j in 0..n {
            a[col][j] = a[col][j].mul(&pinv);
            inv[col][j] = inv[col][j].mul(&pinv);
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for j in 0..n {
                    let t = a[col][j].mul(&f);
                    a[r][j] = a[r][j].sub(&t);
                    let t = inv[col][j].mul(&f);
                    inv[r][j] = inv[r][j].sub(&t);
                }
            }
        }
    }
    Ok((inv, det))
}

/// |det|^{-1/n} omega, defined when det is a nonzero constant whose absolute
/// value is a perfect n-th power in Q.
fn density_of(omega: &[Vec<RatFunc>], det: &RatFunc, n: usize) -> Option<Vec<Vec<RatFunc>>> {
    let c = det.as_constant()?;
    let root = rational_nth_root(&c.abs(), n as u32)?;
    let scale = RatFunc::constant(n, Rat::one() / root);
    Some(
        omega
            .iter()
            .map(|row| row.iter().map(|e| e.mul(&scale)).collect())
            .collect(),
    )
}

fn rational_nth_root(q: &Rat, n: u32) -> Option<Rat> {
    if q.is_zero() {
        return None;
    }
    let num = int_nth_root(q.numer(), n)?;
    let den = int_nth_root(q.denom(), n)?;
    Some(Rat::new(num, den))
}

fn int_nth_root(v: &BigInt, n: u32) -> Option<BigInt> {
    if v.is_negative() {
        return None;
    }
    let r = v.nth_root(n);
    if num_traits::pow::pow(r.clone(), n as usize) == *v {
        Some(r)
    } else {
        None
    }
}
