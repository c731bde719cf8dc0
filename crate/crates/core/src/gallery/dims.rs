//! Closed-form dimension tables for the primal and conformal sequences.

/// Dimension table at a fixed base dimension n. Conformal entries use the
/// closed forms valid for n >= 3 (they are reported verbatim below that).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimsTable {
    pub n: usize,
    /// dim T = n
    pub t: i64,
    /// dim F0 = n(n+1)/2
    pub f0: i64,
    /// dim F0^ = n(n+1)/2 - 1
    pub f0_hat: i64,
    /// dim F1 = n^2(n^2-1)/12
    pub f1: i64,
    /// dim F1^ = n(n+1)(n+2)(n-3)/12
    pub f1_hat: i64,
    /// dim F2 = n^2(n^2-1)(n-2)/24
    pub f2: i64,
    /// dim F2^ = n(n^2-1)(n+2)(n-4)/24
    pub f2_hat: i64,
    /// dim g1 = n(n-1)/2
    pub g1: i64,
    /// dim g1^ = n(n-1)/2 + 1
    pub g1_hat: i64,
    /// dim g2^ = n (the elations)
    pub g2_hat: i64,
    /// dim S_q T* for q = 0..=4
    pub s_q: Vec<i64>,
    /// dim Λ^r T* for r = 0..=n
    pub lambda_r: Vec<i64>,
    /// dim F1 - dim F1^ (equals n(n+1)/2 for n >= 3)
    pub f1_minus_f1_hat: i64,
}

pub fn dims_table(n: usize) -> DimsTable {
    assert!(n >= 2);
    let ni = n as i64;
    let f1 = ni * ni * (ni * ni - 1) / 12;
    let f1_hat = ni * (ni + 1) * (ni + 2) * (ni - 3) / 12;
    DimsTable {
        n,
        t: ni,
        f0: ni * (ni + 1) / 2,
        f0_hat: ni * (ni + 1) / 2 - 1,
        f1,
        f1_hat,
        f2: ni * ni * (ni * ni - 1) * (ni - 2) / 24,
        f2_hat: ni * (ni * ni - 1) * (ni + 2) * (ni - 4) / 24,
        g1: ni * (ni - 1) / 2,
        g1_hat: ni * (ni - 1) / 2 + 1,
        g2_hat: ni,
        s_q: (0..=4).map(|q| binom(ni + q - 1, q)).collect(),
        lambda_r: (0..=ni).map(|r| binom(ni, r)).collect(),
        f1_minus_f1_hat: f1 - f1_hat,
    }
}

fn binom(n: i64, k: i64) -> i64 {
    if k < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc = 1i64;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn four_dimensional_row() {
        let d = dims_table(4);
        assert_eq!(d.t, 4);
        assert_eq!(d.f0, 10);
        assert_eq!(d.f0_hat, 9);
        assert_eq!(d.f1, 20);
        assert_eq!(d.f1_hat, 10);
        assert_eq!(d.f2, 20);
        assert_eq!(d.f2_hat, 0);
        assert_eq!(d.f1_minus_f1_hat, 10); // n(n+1)/2
    }

    #[test]
    fn three_dimensional_row() {
        let d = dims_table(3);
        assert_eq!(d.f1, 6);
        assert_eq!(d.f1_hat, 0);
        assert_eq!(d.f2, 3);
        assert_eq!(d.f1_minus_f1_hat, 6);
        assert_eq!(d.g1, 3);
        assert_eq!(d.g1_hat, 4);
        assert_eq!(d.g2_hat, 3);
    }

    #[test]
    fn two_dimensional_row() {
        let d = dims_table(2);
        assert_eq!(d.f1, 1);
        assert_eq!(d.f2, 0);
        assert_eq!(d.s_q, vec![1, 2, 3, 4, 5]);
        assert_eq!(d.lambda_r, vec![1, 2, 1]);
    }
}
