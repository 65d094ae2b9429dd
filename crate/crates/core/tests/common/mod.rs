//! Independent reference computations shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeMap;

use polystrata::algebra_an::PoissonParams;
use polystrata::algebra_kn::QuantumParams;
use polystrata::{Gen, LaurentPoly, Monomial, Rational, Vars};

pub fn r(a: i64, b: i64) -> Rational {
    Rational::new(a, b)
}

pub fn ints(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| Rational::from_integer(x)).collect()
}

fn mono(vars: &Vars, c: Rational, gens: &[Gen]) -> LaurentPoly {
    let mut e = vec![0i64; vars.len()];
    for g in gens {
        e[g.index()] += 1;
    }
    LaurentPoly::monomial(vars, Monomial::from_exps(e), c).unwrap()
}

/// `Σ_{k<=i} (q_k - p_k) y_k x_k`.
pub fn omega(p: &PoissonParams, i: usize) -> LaurentPoly {
    let v = p.vars();
    (1..=i).fold(LaurentPoly::zero(v), |acc, k| {
        &acc + &mono(v, p.q(k) - p.p(k), &[Gen::Y(k), Gen::X(k)])
    })
}

/// `{a, b}` read off the bracket table of `A_n` as written in the source
/// (the `i < j` rows and the diagonal `{x_i, y_i}`), extended by antisymmetry.
pub fn table_entry(p: &PoissonParams, a: Gen, b: Gen) -> LaurentPoly {
    let v = p.vars();
    use Gen::*;
    match (a, b) {
        _ if a == b => LaurentPoly::zero(v),
        (X(i), Y(j)) if i == j => &mono(v, p.q(i).clone(), &[Y(i), X(i)]) + &omega(p, i - 1),
        (Y(i), X(j)) if i == j => -table_entry(p, b, a),
        _ if a.level() > b.level() => -table_entry(p, b, a),
        (Y(i), Y(j)) => mono(v, p.gamma(i, j).clone(), &[a, b]),
        (X(i), Y(j)) => mono(v, p.p(j) - p.gamma(i, j), &[a, b]),
        (Y(i), X(j)) => mono(v, -(p.q(i) + p.gamma(i, j)), &[a, b]),
        (X(i), X(j)) => mono(v, p.q(i) - p.p(j) + p.gamma(i, j), &[a, b]),
    }
}

/// `Σ_{a,b} ∂_a f ∂_b g {a, b}`.
pub fn bracket(p: &PoissonParams, f: &LaurentPoly, g: &LaurentPoly) -> LaurentPoly {
    let gens = Gen::all(p.n());
    let df: Vec<LaurentPoly> = gens.iter().map(|a| f.derivative(a.index())).collect();
    let dg: Vec<LaurentPoly> = gens.iter().map(|a| g.derivative(a.index())).collect();
    let mut out = LaurentPoly::zero(p.vars());
    for (ia, &a) in gens.iter().enumerate() {
        if df[ia].is_zero() {
            continue;
        }
        for (ib, &b) in gens.iter().enumerate() {
            if ia == ib || dg[ib].is_zero() {
                continue;
            }
            out = &out + &(&(&df[ia] * &dg[ib]) * &table_entry(p, a, b));
        }
    }
    out
}

/// Word-level element of `K_n`: words in generator indices.
pub type Words = BTreeMap<Vec<usize>, Rational>;

/// `c` with `hi · lo = c · lo · hi`, from the defining relations (for `hi > lo`, not an `x_i y_i` pair).
fn swap_coeff(q: &QuantumParams, hi: Gen, lo: Gen) -> Rational {
    use Gen::*;
    let one = Rational::one();
    match (hi, lo) {
        (Y(j), Y(i)) => &one / q.gamma(i, j),
        (Y(j), X(i)) => q.gamma(i, j) / q.p(j),
        (X(j), Y(i)) => q.q(i) * q.gamma(i, j),
        (X(j), X(i)) => q.p(j) / &(q.q(i) * q.gamma(i, j)),
    }
}

fn add(out: &mut Words, w: Vec<usize>, c: Rational) {
    let e = out.entry(w.clone()).or_insert_with(Rational::zero);
    *e += &c;
    if e.is_zero() {
        out.remove(&w);
    }
}

/// Bubble-sort every word into ordered form, one adjacent swap at a time.
pub fn normalize(q: &QuantumParams, mut f: Words) -> Words {
    let mut done = Words::new();
    while let Some((w, c)) = f.pop_first() {
        let Some(k) = (0..w.len().saturating_sub(1)).find(|&k| w[k] > w[k + 1]) else {
            add(&mut done, w, c);
            continue;
        };
        let (hi, lo) = (Gen::from_index(w[k]), Gen::from_index(w[k + 1]));
        let splice = |mid: &[usize]| {
            let mut v = w[..k].to_vec();
            v.extend_from_slice(mid);
            v.extend_from_slice(&w[k + 2..]);
            v
        };
        match (hi, lo) {
            (Gen::X(i), Gen::Y(j)) if i == j => {
                add(&mut f, splice(&[lo.index(), hi.index()]), &c * q.q(i));
                for m in 1..i {
                    let qp = q.q(m) - q.p(m);
                    add(&mut f, splice(&[Gen::Y(m).index(), Gen::X(m).index()]), &c * &qp);
                }
            }
            _ => add(&mut f, splice(&[lo.index(), hi.index()]), &c * &swap_coeff(q, hi, lo)),
        }
    }
    done
}

pub fn words_of(p: &LaurentPoly) -> Words {
    p.terms()
        .iter()
        .map(|(m, c)| {
            let w = m
                .exps()
                .iter()
                .enumerate()
                .flat_map(|(k, &e)| std::iter::repeat_n(k, e as usize))
                .collect();
            (w, c.clone())
        })
        .collect()
}

pub fn words_mul(a: &Words, b: &Words) -> Words {
    let mut out = Words::new();
    for (wa, ca) in a {
        for (wb, cb) in b {
            let mut w = wa.clone();
            w.extend_from_slice(wb);
            add(&mut out, w, ca * cb);
        }
    }
    out
}

/// Ordered words back to a commutative-looking polynomial on the `K_n` variables.
pub fn words_to_poly(vars: &Vars, f: &Words) -> LaurentPoly {
    let mut out = LaurentPoly::zero(vars);
    for (w, c) in f {
        let mut e = vec![0i64; vars.len()];
        for &k in w {
            e[k] += 1;
        }
        out = &out + &LaurentPoly::monomial(vars, Monomial::from_exps(e), c.clone()).unwrap();
    }
    out
}

/// All subsets of `{Ω_i, y_i, x_i}` satisfying: `y_i` or `x_i` in `T` iff `Ω_i` and `Ω_{i-1}` in `T`.
/// Encoded as bitmasks, 3 bits per level (Ω, y, x).
pub fn admissible_masks(n: usize) -> Vec<u32> {
    (0u32..1 << (3 * n))
        .filter(|&m| {
            let bit = |i: usize, k: usize| m >> (3 * (i - 1) + k) & 1 == 1;
            (1..=n).all(|i| {
                let prev = i == 1 || bit(i - 1, 0);
                (bit(i, 1) || bit(i, 2)) == (bit(i, 0) && prev)
            })
        })
        .collect()
}

/// Number of exponent vectors of total degree `<= d` in `nv` variables avoiding every multiple of `leads`.
pub fn standard_count(nv: usize, leads: &[Vec<i64>], d: usize) -> u128 {
    fn rec(k: usize, nv: usize, left: usize, e: &mut Vec<i64>, leads: &[Vec<i64>]) -> u128 {
        if k == nv {
            let hit = leads.iter().any(|l| l.iter().zip(e.iter()).all(|(a, b)| a <= b));
            return u128::from(!hit);
        }
        let mut total = 0;
        for x in 0..=left {
            e[k] = x as i64;
            total += rec(k + 1, nv, left - x, e, leads);
        }
        e[k] = 0;
        total
    }
    rec(0, nv, d, &mut vec![0; nv], leads)
}

/// Smallest `k` with the `(k+1)`-st forward difference identically zero on the last half of `vals`.
pub fn growth_degree(vals: &[u128]) -> usize {
    let mut cur: Vec<i128> = vals.iter().map(|&v| v as i128).collect();
    let mut k = 0;
    loop {
        let next: Vec<i128> = cur.windows(2).map(|w| w[1] - w[0]).collect();
        let tail = &next[next.len() / 2..];
        if tail.iter().all(|&v| v == 0) {
            return k;
        }
        cur = next;
        k += 1;
    }
}
