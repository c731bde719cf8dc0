//! Test-side oracles, independent of the engine's elimination path.

use diffdual::coeff::{Rat, RatFunc};
use diffdual::engine::OpRow;
use diffdual::op::{DiffOp, MultiIndex, WeylPoly};
use num_traits::Zero;

/// All derivative multi-indices over `n_vars` with |mu| <= max_deg.
pub fn multi_indices_up_to(n_vars: usize, max_deg: u16) -> Vec<MultiIndex> {
    let mut out = Vec::new();
    let mut cur = vec![0u16; n_vars];
    loop {
        if cur.iter().map(|&e| e as u32).sum::<u32>() <= max_deg as u32 {
            out.push(MultiIndex::from_exponents(cur.clone()));
        }
        // odometer
        let mut i = 0;
        loop {
            if i == n_vars {
                out.sort();
                return out;
            }
            cur[i] += 1;
            if cur[i] <= max_deg {
                break;
            }
            cur[i] = 0;
            i += 1;
        }
    }
}

/// Brute-force left syzygies of a constant-coefficient operator by linear
/// algebra over Q on the coefficient unknowns: all rows t with t ∘ d = 0 and
/// d-degree <= max_deg, as a basis of the solution space. Completely
/// independent of the Gröbner engine.
pub fn brute_force_syzygies(d: &DiffOp, max_deg: u16) -> Vec<OpRow> {
    let n_vars = d.n_vars();
    let p = d.dst().dim();
    let m = d.src().dim();
    let mus = multi_indices_up_to(n_vars, max_deg);
    let unknowns: Vec<(usize, MultiIndex)> = (0..p)
        .flat_map(|k| mus.iter().map(move |mu| (k, mu.clone())))
        .collect();

    // constant coefficient check and extraction
    let coeff_at = |k: usize, j: usize, nu: &MultiIndex| -> Rat {
        match d.entry(k, j).coeff(nu) {
            Some(c) => c
                .as_constant()
                .expect("brute-force oracle needs constant coefficients"),
            None => Rat::zero(),
        }
    };

    // target monomials: component j, exponent kappa with |kappa| <= max_deg + order(d)
    let target_mus = multi_indices_up_to(n_vars, max_deg + d.order() as u16);
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    for j in 0..m {
        for kappa in &target_mus {
            let mut row = Vec::with_capacity(unknowns.len());
            for (k, mu) in &unknowns {
                // coefficient of d^kappa in (d^mu ∘ entry(k, j)); constant
                // coefficients commute, so it is the coefficient at kappa - mu.
                let c = match kappa.checked_sub(mu) {
                    Some(nu) => coeff_at(*k, j, &nu),
                    None => Rat::zero(),
                };
                row.push(c);
            }
            if row.iter().any(|c| !c.is_zero()) {
                rows.push(row);
            }
        }
    }

    let basis = nullspace(&rows, unknowns.len());
    basis
        .into_iter()
        .map(|sol| {
            let mut comps = vec![WeylPoly::zero(n_vars); p];
            for (c, (k, mu)) in sol.into_iter().zip(&unknowns) {
                if !c.is_zero() {
                    comps[*k].add_term(mu.clone(), RatFunc::constant(n_vars, c));
                }
            }
            OpRow::new(comps)
        })
        .collect()
}

/// Exact nullspace basis of a rational matrix (rows are equations).
fn nullspace(rows: &[Vec<Rat>], cols: usize) -> Vec<Vec<Rat>> {
    let mut mat: Vec<Vec<Rat>> = rows.to_vec();
    let mut pivot_col_of_row: Vec<usize> = Vec::new();
    let mut r = 0usize;
    for c in 0..cols {
        let Some(pr) = (r..mat.len()).find(|&i| !mat[i][c].is_zero()) else {
            continue;
        };
        mat.swap(r, pr);
        let inv = Rat::from_integer(1.into()) / mat[r][c].clone();
        for x in mat[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..mat.len() {
            if i != r && !mat[i][c].is_zero() {
                let f = mat[i][c].clone();
                for k in 0..cols {
                    let t = &mat[r][k] * &f;
                    mat[i][k] = &mat[i][k] - &t;
                }
            }
        }
        pivot_col_of_row.push(c);
        r += 1;
        if r == mat.len() {
            break;
        }
    }
    let pivot_cols: Vec<usize> = pivot_col_of_row.clone();
    let free_cols: Vec<usize> = (0..cols).filter(|c| !pivot_cols.contains(c)).collect();
    let mut basis = Vec::new();
    for &fc in &free_cols {
        let mut v = vec![Rat::zero(); cols];
        v[fc] = Rat::from_integer(1.into());
        for (row_idx, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = -mat[row_idx][fc].clone();
        }
        basis.push(v);
    }
    basis
}
