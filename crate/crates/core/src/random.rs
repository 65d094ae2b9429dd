//! Seeded random inputs for the property and verification suites.

use rand::Rng;

use crate::exact_poly::{LaurentPoly, Monomial, Rational, Vars};

/// Nonzero integer in `[-bound, bound]`.
pub fn small_nonzero<R: Rng>(rng: &mut R, bound: i64) -> i64 {
    loop {
        let v = rng.gen_range(-bound..=bound);
        if v != 0 {
            return v;
        }
    }
}

pub fn small_rational<R: Rng>(rng: &mut R, bound: i64) -> Rational {
    Rational::new(rng.gen_range(-bound..=bound), rng.gen_range(1..=bound.max(1)))
}

/// Exponent vector with nonnegative entries and total degree `<= max_deg`.
pub fn random_exponents<R: Rng>(rng: &mut R, nvars: usize, max_deg: usize) -> Vec<i64> {
    let mut e = vec![0i64; nvars];
    if nvars == 0 {
        return e;
    }
    let deg = rng.gen_range(0..=max_deg);
    for _ in 0..deg {
        e[rng.gen_range(0..nvars)] += 1;
    }
    e
}

/// Polynomial (no negative exponents) with up to `max_terms` terms.
pub fn random_poly<R: Rng>(rng: &mut R, vars: &Vars, max_terms: usize, max_deg: usize) -> LaurentPoly {
    let terms = rng.gen_range(1..=max_terms.max(1));
    let mut out = LaurentPoly::zero(vars);
    for _ in 0..terms {
        let m = Monomial::from_exps(random_exponents(rng, vars.len(), max_deg));
        let c = Rational::from_integer(small_nonzero(rng, 5));
        out = &out + &LaurentPoly::monomial(vars, m, c).expect("nonnegative exponents");
    }
    out
}

/// Like `random_poly` but never zero.
pub fn random_nonzero_poly<R: Rng>(rng: &mut R, vars: &Vars, max_terms: usize, max_deg: usize) -> LaurentPoly {
    loop {
        let p = random_poly(rng, vars, max_terms, max_deg);
        if !p.is_zero() {
            return p;
        }
    }
}
