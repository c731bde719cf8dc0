//! Labeled component spaces with pairing weights.

use num_traits::{One, Signed};

use crate::coeff::{rat, Rat};

/// A named component space: a label per component and a positive pairing
/// weight per component. Packed symmetric 2-tensors carry weight 1 on the
/// diagonal and 2 off it so that the packed pairing equals the full dumb
/// summation over both index positions.
///
/// Labels are presentation data; equality compares name, dimension and
/// weights only.
#[derive(Debug, Clone)]
pub struct SpaceSpec {
    name: String,
    labels: Vec<String>,
    weights: Vec<Rat>,
}

impl SpaceSpec {
    pub fn new(name: &str, labels: Vec<String>, weights: Vec<Rat>) -> Self {
        assert_eq!(labels.len(), weights.len(), "one weight per component");
        assert!(weights.iter().all(|w| w.is_positive()), "weights are positive");
        SpaceSpec { name: name.to_string(), labels, weights }
    }

    /// Dimension-`dim` space with components `name1..namedim` and unit weights.
    pub fn vector(name: &str, dim: usize) -> Self {
        let labels = (1..=dim).map(|i| format!("{name}{i}")).collect();
        Self::new(name, labels, vec![Rat::one(); dim])
    }

    /// Scalar space with a single component named after the space.
    pub fn scalar(name: &str) -> Self {
        Self::new(name, vec![name.to_string()], vec![Rat::one()])
    }

    /// Packed symmetric 2-tensor space on n base indices: components `(i,j)`
    /// with i <= j in lexicographic order, weight 1 on the diagonal and 2 off.
    pub fn packed_sym2(name: &str, n: usize) -> Self {
        let mut labels = Vec::new();
        let mut weights = Vec::new();
        for i in 1..=n {
            for j in i..=n {
                labels.push(format!("{name}{i}{j}"));
                weights.push(if i == j { Rat::one() } else { rat(2) });
            }
        }
        Self::new(name, labels, weights)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn weights(&self) -> &[Rat] {
        &self.weights
    }

    pub fn weight(&self, i: usize) -> &Rat {
        &self.weights[i]
    }

    /// Dual space: same components and weights, name tagged with a trailing
    /// `*` (stripped again on double duals, so dual is an involution).
    pub fn dual(&self) -> Self {
        let name = match self.name.strip_suffix('*') {
            Some(base) => base.to_string(),
            None => format!("{}*", self.name),
        };
        SpaceSpec { name, labels: self.labels.clone(), weights: self.weights.clone() }
    }
}

impl PartialEq for SpaceSpec {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && self.labels.len() == other.labels.len() && self.weights == other.weights
    }
}

impl Eq for SpaceSpec {}
