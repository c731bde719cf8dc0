//! Derivative multi-indices d^mu.

use std::cmp::Ordering;
use std::fmt;

use crate::coeff::{rat, Rat};

/// Exponent vector of a derivative monomial d^mu. `Ord` is graded reverse
/// lexicographic, the monomial order used by the elimination engine.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiIndex(Vec<u16>);

impl MultiIndex {
    pub fn zero(n_vars: usize) -> Self {
        MultiIndex(vec![0; n_vars])
    }

    /// Single first-order derivative d_i (0-based i).
    pub fn unit(n_vars: usize, i: usize) -> Self {
        let mut e = vec![0; n_vars];
        e[i] = 1;
        MultiIndex(e)
    }

    pub fn from_exponents(e: Vec<u16>) -> Self {
        MultiIndex(e)
    }

    pub fn exponents(&self) -> &[u16] {
        &self.0
    }

    pub fn n_vars(&self) -> usize {
        self.0.len()
    }

    /// |mu|, the total order.
    pub fn order(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn add(&self, other: &MultiIndex) -> MultiIndex {
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn bump(&self, i: usize) -> MultiIndex {
        let mut e = self.0.clone();
        e[i] += 1;
        MultiIndex(e)
    }

    /// Componentwise difference; None when some entry would go negative.
    pub fn checked_sub(&self, other: &MultiIndex) -> Option<MultiIndex> {
        let mut e = Vec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(&other.0) {
            if a < b {
                return None;
            }
            e.push(a - b);
        }
        Some(MultiIndex(e))
    }

    pub fn divides(&self, other: &MultiIndex) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, other: &MultiIndex) -> MultiIndex {
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    /// All nu with nu <= mu componentwise (lexicographic enumeration).
    pub fn subindices(&self) -> Vec<MultiIndex> {
        let mut out = vec![MultiIndex::zero(self.0.len())];
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let mut next = Vec::with_capacity(out.len() * (e as usize + 1));
            for base in &out {
                for k in 0..=e {
                    let mut v = base.0.clone();
                    v[i] = k;
                    next.push(MultiIndex(v));
                }
            }
            out = next;
        }
        out
    }

    /// Product of componentwise binomial coefficients C(mu_i, nu_i).
    pub fn binom(&self, nu: &MultiIndex) -> Rat {
        let mut acc: i64 = 1;
        for (&m, &n) in self.0.iter().zip(&nu.0) {
            acc *= binom_u16(m, n);
        }
        rat(acc)
    }

    /// Graded-lex comparison, used only for canonical printing.
    pub fn cmp_graded_lex(&self, other: &MultiIndex) -> Ordering {
        match self.order().cmp(&other.order()) {
            Ordering::Equal => self.0.cmp(&other.0),
            ord => ord,
        }
    }
}

fn binom_u16(m: u16, n: u16) -> i64 {
    if n > m {
        return 0;
    }
    let n = n.min(m - n) as i64;
    let mut acc: i64 = 1;
    for k in 0..n {
        acc = acc * (m as i64 - k) / (k + 1);
    }
    acc
}

impl Ord for MultiIndex {
    /// Graded reverse lexicographic: higher total order wins; on ties the
    /// index with the smaller exponent in the last differing position wins.
    fn cmp(&self, other: &Self) -> Ordering {
        match self.order().cmp(&other.order()) {
            Ordering::Equal => {
                for (a, b) in self.0.iter().zip(&other.0).rev() {
                    match a.cmp(b) {
                        Ordering::Less => return Ordering::Greater,
                        Ordering::Greater => return Ordering::Less,
                        Ordering::Equal => {}
                    }
                }
                Ordering::Equal
            }
            ord => ord,
        }
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "d{{")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", e)?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mi(e: &[u16]) -> MultiIndex {
        MultiIndex::from_exponents(e.to_vec())
    }

    #[test]
    fn grevlex_order() {
        // degree dominates
        assert!(mi(&[2, 0]) > mi(&[0, 1]));
        // same degree: smaller last exponent is larger
        assert!(mi(&[1, 1]) > mi(&[0, 2]));
        assert!(mi(&[2, 0]) > mi(&[1, 1]));
        // three variables: d1 d3 < d2^2
        assert!(mi(&[1, 0, 1]) < mi(&[0, 2, 0]));
    }

    #[test]
    fn subindices_count() {
        assert_eq!(mi(&[2, 1]).subindices().len(), 6);
        assert_eq!(mi(&[0, 0]).subindices(), vec![mi(&[0, 0])]);
    }

    #[test]
    fn binomials() {
        assert_eq!(mi(&[2, 1]).binom(&mi(&[1, 0])), rat(2));
        assert_eq!(mi(&[2, 2]).binom(&mi(&[1, 1])), rat(4));
        assert_eq!(mi(&[1, 0]).binom(&mi(&[0, 1])), rat(0));
    }
}
