//! Seeded random operators and coefficient data for the property suites.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::coeff::{rat, MultiPoly, Rat, RatFunc};
use crate::op::{DiffOp, MultiIndex, SpaceSpec};

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random polynomial of total degree <= `max_deg` with small integer
/// coefficients (sparse).
pub fn random_poly(rng: &mut ChaCha8Rng, n_vars: usize, max_deg: u16) -> MultiPoly {
    let mut p = MultiPoly::zero(n_vars);
    let terms = rng.gen_range(0..=3);
    for _ in 0..terms {
        let mut exps = vec![0u16; n_vars];
        let mut left = max_deg;
        for e in exps.iter_mut() {
            *e = rng.gen_range(0..=left);
            left -= *e;
        }
        let c = rng.gen_range(-4i64..=4);
        p.add_term(crate::coeff::Monomial(exps), rat(c));
    }
    p
}

pub fn random_ratfunc(rng: &mut ChaCha8Rng, n_vars: usize, max_deg: u16) -> RatFunc {
    RatFunc::from_poly(random_poly(rng, n_vars, max_deg))
}

fn random_weights(rng: &mut ChaCha8Rng, dim: usize) -> Vec<Rat> {
    (0..dim).map(|_| rat(rng.gen_range(1..=3))).collect()
}

/// A random operator: n_vars <= 3, order <= `max_order`, dims <= 3,
/// polynomial coefficients of degree <= 2, random positive pairing weights.
pub fn random_op(
    rng: &mut ChaCha8Rng,
    n_vars: usize,
    src_dim: usize,
    dst_dim: usize,
    max_order: u16,
    src_name: &str,
    dst_name: &str,
) -> DiffOp {
    let src_labels = (1..=src_dim).map(|i| format!("{src_name}{i}")).collect();
    let dst_labels = (1..=dst_dim).map(|i| format!("{dst_name}{i}")).collect();
    let src = SpaceSpec::new(src_name, src_labels, random_weights(rng, src_dim));
    let dst = SpaceSpec::new(dst_name, dst_labels, random_weights(rng, dst_dim));
    let mut op = DiffOp::zero(src, dst, n_vars);
    for r in 0..dst_dim {
        for c in 0..src_dim {
            let terms = rng.gen_range(0..=2);
            for _ in 0..terms {
                let mut exps = vec![0u16; n_vars];
                let mut left = max_order;
                for e in exps.iter_mut() {
                    *e = rng.gen_range(0..=left);
                    left -= *e;
                }
                let coeff = random_ratfunc(rng, n_vars, 2);
                if !coeff.is_zero() {
                    op.add_term(r, c, MultiIndex::from_exponents(exps), coeff);
                }
            }
        }
    }
    op
}

/// Random dims in 1..=3 for the operator suites.
pub fn random_dims(rng: &mut ChaCha8Rng) -> (usize, usize, usize) {
    (
        rng.gen_range(1..=3),
        rng.gen_range(1..=3),
        rng.gen_range(1..=3),
    )
}
