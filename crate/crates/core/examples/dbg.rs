use diffdual::coeff::{MultiPoly, Monomial, Rat};
use diffdual::random::rng_from_seed;
use rand::Rng;

fn rnd_poly(rng: &mut rand_chacha::ChaCha8Rng, n: usize, maxdeg: u16, terms: usize) -> MultiPoly {
    let mut p = MultiPoly::zero(n);
    for _ in 0..rng.gen_range(1..=terms) {
        let exps: Vec<u16> = (0..n).map(|_| rng.gen_range(0..=maxdeg)).collect();
        let num: i64 = rng.gen_range(-9..=9);
        p.add_term(Monomial(exps), Rat::from_integer(num.into()));
    }
    p
}

fn main() {
    let mut rng = rng_from_seed(7);
    for case in 0..30000 {
        let a = rnd_poly(&mut rng, 3, 3, 4);
        let b = rnd_poly(&mut rng, 3, 3, 4);
        let f = rnd_poly(&mut rng, 3, 2, 3);
        let af = a.mul(&f);
        let bf = b.mul(&f);
        if af.is_zero() || bf.is_zero() { continue; }
        let g = MultiPoly::gcd(&af, &bf);
        if af.div_exact(&g).is_none() || bf.div_exact(&g).is_none() {
            println!("case {case}: BAD GCD");
            println!("a = {a}");
            println!("b = {b}");
            println!("f = {f}");
            println!("g = {g}");
            return;
        }
    }
    println!("30000 cases ok");
}
