//! Differential sequences and duality algorithms: complex checks, the
//! five-step parametrization test, differential transcendence degree, and
//! potential-restriction helpers.

use crate::budget::Budget;
use crate::engine::{
    gb_of, module_equal, op_rank, restrict_columns, rows_of, syzygy_module, OpRow,
};
use crate::error::{Error, Result};
use crate::op::DiffOp;

/// An ordered chain of operators with matching adjacent spaces.
#[derive(Debug, Clone)]
pub struct DiffSequence {
    ops: Vec<DiffOp>,
}

impl DiffSequence {
    pub fn new(ops: Vec<DiffOp>) -> Result<Self> {
        assert!(!ops.is_empty(), "sequences are nonempty");
        for pair in ops.windows(2) {
            if pair[1].src().dim() != pair[0].dst().dim() {
                return Err(Error::SpaceMismatch {
                    expected: pair[0].dst().dim(),
                    found: pair[1].src().dim(),
                });
            }
        }
        Ok(DiffSequence { ops })
    }

    pub fn ops(&self) -> &[DiffOp] {
        &self.ops
    }

    /// True iff every adjacent composition vanishes identically.
    pub fn is_complex(&self) -> Result<bool> {
        for pair in self.ops.windows(2) {
            if !pair[1].compose(&pair[0])?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Record of the five-step parametrization test
/// D1 => ad(D1) => ad(D) => ad(ad(D)) = D => D1'.
#[derive(Debug, Clone)]
pub struct ParamReport {
    pub input: DiffOp,
    pub adjoint1: DiffOp,
    /// Generating compatibility conditions of `adjoint1` ("ad(D)").
    pub candidate: DiffOp,
    /// ad(candidate): the would-be parametrization D.
    pub parametrization: DiffOp,
    /// Compatibility conditions of the parametrization ("D1'").
    pub recomputed_cc: DiffOp,
    /// module_equal(recomputed_cc, input)
    pub parametrizable: bool,
    /// Rows of D1' with nonzero normal form modulo the row module of D1;
    /// empty exactly when parametrizable.
    pub witnesses: Vec<OpRow>,
}

/// Run the five-step test on `d1`. The returned parametrization satisfies
/// d1 ∘ D = 0 always; `parametrizable` states whether its compatibility
/// conditions recover exactly the row module of `d1`.
pub fn parametrization_test(d1: &DiffOp, budget: &Budget) -> Result<ParamReport> {
    let adjoint1 = d1.adjoint();
    let candidate = syzygy_module(&adjoint1, budget)?;
    let parametrization = candidate.adjoint();
    let recomputed_cc = syzygy_module(&parametrization, budget)?;
    debug_assert!(d1.compose(&parametrization)?.is_zero());

    let gb_input = gb_of(d1, budget)?.basis;
    let mut witnesses = Vec::new();
    for row in rows_of(&recomputed_cc) {
        if !gb_input.contains(&row, budget)? {
            witnesses.push(row);
        }
    }
    // Rows of d1 always lie in the recomputed module, so one inclusion suffices.
    let parametrizable = witnesses.is_empty();
    Ok(ParamReport {
        input: d1.clone(),
        adjoint1,
        candidate,
        parametrization,
        recomputed_cc,
        parametrizable,
        witnesses,
    })
}

/// Differential transcendence degree: src dimension minus generic row rank.
pub fn diff_trd(d: &DiffOp, budget: &Budget) -> Result<usize> {
    Ok(d.src().dim() - op_rank(d, budget)?)
}

/// Substitute potentials: compose `d` with a parametrization `c` of a
/// constraint, yielding the operator on the new potentials.
pub fn restrict_potentials(d: &DiffOp, c: &DiffOp) -> Result<DiffOp> {
    d.compose(c)
}

/// All maximal proper column subsets of the parametrization `d` whose
/// column-restricted operator still has compatibility conditions equal to the
/// row module of `d1`. Exhaustive for src dimensions up to 12.
pub fn minimal_parametrization_search(
    d: &DiffOp,
    d1: &DiffOp,
    budget: &Budget,
) -> Result<Vec<Vec<usize>>> {
    if !d1.compose(d)?.is_zero() {
        return Err(Error::NotAParametrization);
    }
    if !module_equal(&syzygy_module(d, budget)?, d1, budget)? {
        return Err(Error::NotAParametrization);
    }
    let m = d.src().dim();
    if m > 12 {
        return Err(Error::Unsupported(format!(
            "column subset search limited to 12 potentials, got {m}"
        )));
    }
    let mut survivors: Vec<Vec<usize>> = Vec::new();
    for size in (1..m).rev() {
        for subset in subsets_of_size(m, size) {
            if survivors.iter().any(|s| subset.iter().all(|c| s.contains(c))) {
                continue; // contained in a larger surviving subset
            }
            let restricted = restrict_columns(d, &subset);
            let cc = syzygy_module(&restricted, budget)?;
            if module_equal(&cc, d1, budget)? {
                survivors.push(subset);
            }
        }
    }
    Ok(survivors)
}

fn subsets_of_size(m: usize, size: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, m: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..m {
            cur.push(i);
            rec(i + 1, m, size, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    let mut cur = Vec::new();
    rec(0, m, size, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::RatFunc;
    use crate::example23 as ex;
    use crate::op::{MultiIndex, SpaceSpec};

    #[test]
    fn displayed_sequences_are_complexes() {
        let primal = DiffSequence::new(vec![ex::dm1(), ex::parametrization(), ex::d1()]).unwrap();
        assert!(primal.is_complex().unwrap());
        let adjoint = DiffSequence::new(vec![
            ex::d1().adjoint(),
            ex::nu_rows(),
            ex::dm1().adjoint(),
        ])
        .unwrap();
        assert!(adjoint.is_complex().unwrap());
        // a non-complex: d1 twice on a scalar
        let mut d = DiffOp::zero(SpaceSpec::scalar("u"), SpaceSpec::scalar("v"), 2);
        d.add_term(0, 0, MultiIndex::unit(2, 0), RatFunc::one(2));
        let seq = DiffSequence::new(vec![d.clone(), d]).unwrap();
        assert!(!seq.is_complex().unwrap());
    }

    #[test]
    fn five_step_test_on_example() {
        let b = Budget::unlimited();
        let report = parametrization_test(&ex::d1(), &b).unwrap();
        assert!(report.parametrizable);
        assert!(report.witnesses.is_empty());
        assert!(report.adjoint1.entries_eq(&ex::ad_d1_expected()));
        assert!(module_equal(&report.candidate, &ex::nu_rows(), &b).unwrap());
        assert!(module_equal(&report.parametrization, &ex::parametrization(), &b).unwrap());
        assert!(ex::d1().compose(&report.parametrization).unwrap().is_zero());
    }

    #[test]
    fn gradient_curl_sanity() {
        // scalar phi -> (d1 phi, d2 phi), CC is the curl d2 g1 - d1 g2;
        // the curl is parametrized by the gradient.
        let b = Budget::unlimited();
        let mut grad = DiffOp::zero(SpaceSpec::scalar("phi"), SpaceSpec::vector("g", 2), 2);
        grad.add_term(0, 0, MultiIndex::unit(2, 0), RatFunc::one(2));
        grad.add_term(1, 0, MultiIndex::unit(2, 1), RatFunc::one(2));
        let curl = syzygy_module(&grad, &b).unwrap();
        assert_eq!(curl.dst().dim(), 1);
        let report = parametrization_test(&curl, &b).unwrap();
        assert!(report.parametrizable);
    }

    #[test]
    fn diff_trd_examples() {
        let b = Budget::unlimited();
        // zero operator on m unknowns has diff trd m
        let zero = DiffOp::zero(SpaceSpec::vector("u", 3), SpaceSpec::vector("v", 2), 2);
        assert_eq!(diff_trd(&zero, &b).unwrap(), 3);
        // the example operator has rank 1 on 2 unknowns
        assert_eq!(diff_trd(&ex::d1(), &b).unwrap(), 1);
    }

    #[test]
    fn minimal_parametrizations_of_example() {
        let b = Budget::unlimited();
        let found = minimal_parametrization_search(&ex::parametrization(), &ex::d1(), &b).unwrap();
        assert_eq!(found, vec![vec![0], vec![1]]);
    }

    #[test]
    fn search_rejects_non_parametrization() {
        let b = Budget::unlimited();
        // the zero operator composes to zero but does not generate the CC
        let zero_cc = DiffOp::zero(ex::parametrization().dst().clone(), SpaceSpec::scalar("z"), 2);
        let err = minimal_parametrization_search(&ex::parametrization(), &zero_cc, &b);
        assert!(matches!(err, Err(Error::NotAParametrization)));
    }

    #[test]
    fn single_potential_has_no_proper_restriction() {
        let b = Budget::unlimited();
        let mut grad = DiffOp::zero(SpaceSpec::scalar("phi"), SpaceSpec::vector("g", 2), 2);
        grad.add_term(0, 0, MultiIndex::unit(2, 0), RatFunc::one(2));
        grad.add_term(1, 0, MultiIndex::unit(2, 1), RatFunc::one(2));
        let curl = syzygy_module(&grad, &b).unwrap();
        let found = minimal_parametrization_search(&grad, &curl, &b).unwrap();
        assert!(found.is_empty());
    }

    #[test]
    fn relative_parametrization_reproduced() {
        // Substitute xi = (d2 psi, -d1 psi), factor back through the
        // substitution, and compare with the displayed first order operator.
        let b = Budget::unlimited();
        let d = ex::parametrization();
        let c = ex::potential_substitution();
        let through_psi = restrict_potentials(&d, &c).unwrap();
        let g = crate::engine::left_factor(&through_psi, &c, &b).unwrap().unwrap();
        assert!(g.entries_eq(&ex::relative_parametrization_expected()));
        // the composed system still generates the same compatibility conditions
        let cc = syzygy_module(&through_psi, &b).unwrap();
        assert!(module_equal(&cc, &ex::d1(), &b).unwrap());
    }
}
