//! Index packing for symmetric and skew 2-tensor component spaces.

use crate::op::SpaceSpec;

/// Packed symmetric index pairs (i, j), i <= j, lexicographic, 0-based.
#[derive(Debug, Clone)]
pub struct PackedSym2 {
    n: usize,
    pairs: Vec<(usize, usize)>,
}

impl PackedSym2 {
    pub fn new(n: usize) -> Self {
        let mut pairs = Vec::new();
        for i in 0..n {
            for j in i..n {
                pairs.push((i, j));
            }
        }
        PackedSym2 { n, pairs }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.pairs.len()
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    /// Packed position of the unordered pair {i, j}.
    pub fn index(&self, i: usize, j: usize) -> usize {
        let (a, b) = if i <= j { (i, j) } else { (j, i) };
        a * self.n - (a * a - a) / 2 + (b - a)
    }

    pub fn pair(&self, k: usize) -> (usize, usize) {
        self.pairs[k]
    }
}

/// Packed skew index pairs (i, j), i < j, lexicographic, 0-based.
#[derive(Debug, Clone)]
pub struct PackedSkew2 {
    pairs: Vec<(usize, usize)>,
}

impl PackedSkew2 {
    pub fn new(n: usize) -> Self {
        let mut pairs = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                pairs.push((i, j));
            }
        }
        PackedSkew2 { pairs }
    }

    pub fn dim(&self) -> usize {
        self.pairs.len()
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn index(&self, i: usize, j: usize) -> Option<(usize, bool)> {
        if i == j {
            return None;
        }
        let (a, b, flip) = if i < j { (i, j, false) } else { (j, i, true) };
        let k = self.pairs.iter().position(|&p| p == (a, b)).expect("pair in range");
        Some((k, flip))
    }
}

/// Packed symmetric 2-tensor space with weight 1 on diagonal, 2 off.
pub fn sym2_space(prefix: &str, n: usize) -> SpaceSpec {
    SpaceSpec::packed_sym2(prefix, n)
}

/// Trace-free packed space: the packed components without the last diagonal
/// one (recoverable from the vanishing trace for the preset metrics).
pub fn sym2_trace_free_space(prefix: &str, n: usize) -> SpaceSpec {
    let full = SpaceSpec::packed_sym2(prefix, n);
    let keep = full.dim() - 1;
    SpaceSpec::new(
        full.name(),
        full.labels()[..keep].to_vec(),
        full.weights()[..keep].to_vec(),
    )
}

/// Covector space v1..vn.
pub fn covector_space(prefix: &str, n: usize) -> SpaceSpec {
    SpaceSpec::vector(prefix, n)
}
