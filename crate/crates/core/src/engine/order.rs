//! Position-over-term module monomial order.

use std::cmp::Ordering;

use crate::op::MultiIndex;

/// POT order on module monomials (component, d-exponent): components are
/// compared first through a declared priority (earlier in the priority list
/// means larger), ties broken by graded reverse lexicographic comparison of
/// the exponents. The default priority puts lower component indices first.
#[derive(Debug, Clone)]
pub struct TermOrder {
    /// rank[comp] = position in the priority list; smaller rank compares larger.
    rank: Vec<usize>,
}

impl TermOrder {
    /// Default POT order on `m` components: lower component index first.
    pub fn pot(m: usize) -> Self {
        TermOrder { rank: (0..m).collect() }
    }

    /// POT order with an explicit priority list: `priority[0]` is the largest
    /// component (eliminated first).
    pub fn with_priority(priority: &[usize]) -> Self {
        let mut rank = vec![usize::MAX; priority.len()];
        for (pos, &comp) in priority.iter().enumerate() {
            rank[comp] = pos;
        }
        assert!(rank.iter().all(|&r| r != usize::MAX), "priority must be a permutation");
        TermOrder { rank }
    }

    pub fn components(&self) -> usize {
        self.rank.len()
    }

    /// Position of a component in the priority list (0 = largest).
    pub fn rank(&self, comp: usize) -> usize {
        self.rank[comp]
    }

    pub fn is_default(&self) -> bool {
        self.rank.iter().enumerate().all(|(i, &r)| i == r)
    }

    pub fn cmp_mono(&self, a: (usize, &MultiIndex), b: (usize, &MultiIndex)) -> Ordering {
        match self.rank[a.0].cmp(&self.rank[b.0]) {
            Ordering::Less => Ordering::Greater,
            Ordering::Greater => Ordering::Less,
            Ordering::Equal => a.1.cmp(b.1),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn position_dominates() {
        let ord = TermOrder::pot(2);
        let big = MultiIndex::from_exponents(vec![5, 5]);
        let small = MultiIndex::zero(2);
        // component 0 beats component 1 regardless of exponents
        assert_eq!(ord.cmp_mono((0, &small), (1, &big)), Ordering::Greater);
        assert_eq!(ord.cmp_mono((1, &big), (1, &small)), Ordering::Greater);
    }
}
