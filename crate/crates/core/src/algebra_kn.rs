//! The quantized algebras `K_n` in PBW normal form, the matrix `s_n`, and quantum tori.

use std::collections::HashMap;
use std::sync::Arc;

use rand::Rng;
use serde::Serialize;

use crate::admissible::{lower_names, upper_names, Gen};
use crate::error::{Error, Result};
use crate::exact_poly::{LaurentPoly, Monomial, PolyError, Rational, VarSpec, Vars, DEFAULT_STEP_BUDGET};

/// Multiplicative parameters: `γ_ji = γ_ij⁻¹`, `γ_ii = 1`, `p_i q_i⁻¹ ∉ {1, -1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuantumParams {
    n: usize,
    gamma: Vec<Vec<Rational>>,
    p: Vec<Rational>,
    q: Vec<Rational>,
    #[serde(skip)]
    vars: Vars,
}

fn ints(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| Rational::from_integer(x)).collect()
}

impl QuantumParams {
    pub fn new(gamma: Vec<Vec<Rational>>, p: Vec<Rational>, q: Vec<Rational>) -> Result<Self> {
        let n = p.len();
        if q.len() != n || gamma.len() != n || gamma.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidParams("dimension mismatch".into()));
        }
        for i in 0..n {
            if p[i].is_zero() || q[i].is_zero() {
                return Err(Error::InvalidParams(format!("p{0}, q{0} must be nonzero", i + 1)));
            }
            let ratio = &p[i] / &q[i];
            if ratio.abs().is_one() {
                return Err(Error::InvalidParams(format!(
                    "p{0}/q{0} = {ratio} is a root of unity",
                    i + 1
                )));
            }
            if !gamma[i][i].is_one() {
                return Err(Error::InvalidParams(format!("gamma[{0}][{0}] must be 1", i + 1)));
            }
            for j in 0..n {
                if gamma[i][j].is_zero() || &gamma[i][j] * &gamma[j][i] != Rational::one() {
                    return Err(Error::InvalidParams(format!(
                        "gamma is not multiplicatively skew at ({}, {})",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        let vars = Arc::new(VarSpec::new(lower_names(n))?);
        Ok(QuantumParams { n, gamma, p, q, vars })
    }

    /// `upper` lists `γ_12, γ_13, ..., γ_23, ...`.
    pub fn from_upper(upper: &[Rational], p: Vec<Rational>, q: Vec<Rational>) -> Result<Self> {
        let n = p.len();
        if upper.len() != n * n.saturating_sub(1) / 2 {
            return Err(Error::InvalidParams("wrong number of gamma entries".into()));
        }
        let mut gamma = vec![vec![Rational::one(); n]; n];
        let mut it = upper.iter();
        for i in 0..n {
            for j in i + 1..n {
                let g = it.next().unwrap().clone();
                gamma[j][i] = g.recip().ok_or_else(|| Error::InvalidParams("gamma entry is zero".into()))?;
                gamma[i][j] = g;
            }
        }
        Self::new(gamma, p, q)
    }

    /// `n = 2`, `γ_12 = 2`, `P = (2, 8)`, `Q = (4, 32)`.
    pub fn canonical_q() -> Self {
        Self::from_upper(&ints(&[2]), ints(&[2, 8]), ints(&[4, 32])).unwrap()
    }

    /// `γ = (2, 4, 2)`, `P = (2, 8, 4)`, `Q = (4, 32, 64)`.
    pub fn canonical_q3() -> Self {
        Self::from_upper(&ints(&[2, 4, 2]), ints(&[2, 8, 4]), ints(&[4, 32, 64])).unwrap()
    }

    /// Signed powers of 2 and 3 with small exponents.
    pub fn random<R: Rng>(rng: &mut R, n: usize) -> Self {
        let draw = |rng: &mut R| {
            let a = Rational::from_integer(2).pow(rng.gen_range(-2..=2)).unwrap();
            let b = Rational::from_integer(3).pow(rng.gen_range(-1..=1)).unwrap();
            let s = if rng.gen_bool(0.2) { -Rational::one() } else { Rational::one() };
            a * b * s
        };
        let upper: Vec<Rational> = (0..n * n.saturating_sub(1) / 2).map(|_| draw(rng)).collect();
        loop {
            let p: Vec<Rational> = (0..n).map(|_| draw(rng)).collect();
            let q: Vec<Rational> = (0..n).map(|_| draw(rng)).collect();
            if let Ok(params) = Self::from_upper(&upper, p, q) {
                return params;
            }
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn gamma(&self, i: usize, j: usize) -> &Rational {
        &self.gamma[i - 1][j - 1]
    }

    pub fn p(&self, i: usize) -> &Rational {
        &self.p[i - 1]
    }

    pub fn q(&self, i: usize) -> &Rational {
        &self.q[i - 1]
    }

    pub fn qp(&self, i: usize) -> Rational {
        self.q(i) - self.p(i)
    }

    pub fn gamma_matrix(&self) -> &[Vec<Rational>] {
        &self.gamma
    }

    pub fn p_vec(&self) -> &[Rational] {
        &self.p
    }

    pub fn q_vec(&self) -> &[Rational] {
        &self.q
    }

    /// All `p_i, q_i, γ_ij` (i < j), the generators of the parameter group.
    pub fn group_generators(&self) -> Vec<Rational> {
        let mut out: Vec<Rational> = self.p.iter().chain(&self.q).cloned().collect();
        for i in 0..self.n {
            for j in i + 1..self.n {
                out.push(self.gamma[i][j].clone());
            }
        }
        out
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }
}

/// Multiplicative skew matrix with `Z_a Z_b = s_ab Z_b Z_a` on `Y_1, X_1, ..., Y_n, X_n`.
pub fn s_matrix(params: &QuantumParams) -> Vec<Vec<Rational>> {
    let n = params.n;
    let mut s = vec![vec![Rational::one(); 2 * n]; 2 * n];
    let mut set = |a: Gen, b: Gen, v: Rational| {
        s[b.index()][a.index()] = v.recip().expect("nonzero parameters");
        s[a.index()][b.index()] = v;
    };
    for i in 1..=n {
        set(Gen::X(i), Gen::Y(i), params.q(i).clone());
        for j in i + 1..=n {
            let g = params.gamma(i, j);
            let gi = g.recip().unwrap();
            set(Gen::Y(i), Gen::Y(j), g.clone());
            set(Gen::X(i), Gen::Y(j), params.p(j) * &gi);
            set(Gen::Y(i), Gen::X(j), params.q(i).recip().unwrap() * &gi);
            set(Gen::X(i), Gen::X(j), params.q(i) / params.p(j) * g);
        }
    }
    s
}

/// Element of `K_n` as a combination of standard monomials `y_1^{a_1} x_1^{b_1} ⋯`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NCElement(LaurentPoly);

impl NCElement {
    pub fn zero(params: &QuantumParams) -> Self {
        NCElement(LaurentPoly::zero(params.vars()))
    }

    pub fn one(params: &QuantumParams) -> Self {
        NCElement(LaurentPoly::one(params.vars()))
    }

    pub fn gen(params: &QuantumParams, g: Gen) -> Self {
        NCElement(LaurentPoly::gen(params.vars(), g.index()))
    }

    /// Read a commutative polynomial as a combination of ordered monomials.
    pub fn from_poly(params: &QuantumParams, p: &LaurentPoly) -> Result<Self> {
        Ok(NCElement(p.lift(params.vars())?))
    }

    pub fn as_poly(&self) -> &LaurentPoly {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        NCElement(self.0.scale(c))
    }

    pub fn add(&self, o: &NCElement) -> Self {
        NCElement(&self.0 + &o.0)
    }

    pub fn sub(&self, o: &NCElement) -> Self {
        NCElement(&self.0 - &o.0)
    }
}

impl std::fmt::Display for NCElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

/// Multiplier for `K_n` holding the matrix `s_n` and a per-instance memo.
pub struct KnMultiplier<'a> {
    params: &'a QuantumParams,
    s: Vec<Vec<Rational>>,
    memo: HashMap<(Monomial, usize), LaurentPoly>,
    steps: usize,
    budget: usize,
}

impl<'a> KnMultiplier<'a> {
    pub fn new(params: &'a QuantumParams) -> Self {
        KnMultiplier {
            params,
            s: s_matrix(params),
            memo: HashMap::new(),
            steps: 0,
            budget: DEFAULT_STEP_BUDGET,
        }
    }

    pub fn with_budget(mut self, budget: usize) -> Self {
        self.budget = budget;
        self
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    fn tick(&mut self) -> Result<()> {
        self.steps += 1;
        if self.steps > self.budget {
            return Err(PolyError::BudgetExceeded(self.budget).into());
        }
        Ok(())
    }

    /// Standard monomial times one generator.
    fn mul_gen(&mut self, m: &Monomial, g: usize) -> Result<LaurentPoly> {
        let vars = self.params.vars().clone();
        let nv = vars.len();
        let top = m.support().last();
        let t = match top {
            Some(t) if t > g => t,
            _ => return Ok(LaurentPoly::monomial(&vars, m.mul(&Monomial::var(nv, g)), Rational::one())?),
        };
        if let Some(hit) = self.memo.get(&(m.clone(), g)) {
            return Ok(hit.clone());
        }
        self.tick()?;
        let rest = m.div(&Monomial::var(nv, t));
        let rest_poly = LaurentPoly::monomial(&vars, rest, Rational::one())?;
        let (gt, gg) = (Gen::from_index(t), Gen::from_index(g));
        let out = match (gt, gg) {
            (Gen::X(i), Gen::Y(j)) if i == j => {
                // x_i y_i = q_i y_i x_i + Σ_{k<i} (q_k - p_k) y_k x_k
                let mut acc = self
                    .mul_poly_word(&rest_poly, &[g, t])?
                    .scale(self.params.q(i));
                for k in 1..i {
                    let w = [Gen::Y(k).index(), Gen::X(k).index()];
                    acc = &acc + &self.mul_poly_word(&rest_poly, &w)?.scale(&self.params.qp(k));
                }
                acc
            }
            _ => {
                let c = self.s[t][g].clone();
                self.mul_poly_word(&rest_poly, &[g, t])?.scale(&c)
            }
        };
        self.memo.insert((m.clone(), g), out.clone());
        Ok(out)
    }

    /// `f · Z_{w_1} Z_{w_2} ⋯`.
    fn mul_poly_word(&mut self, f: &LaurentPoly, word: &[usize]) -> Result<LaurentPoly> {
        let mut cur = f.clone();
        for &g in word {
            let mut next = LaurentPoly::zero(f.vars());
            for (m, c) in cur.terms() {
                next = &next + &self.mul_gen(m, g)?.scale(c);
            }
            cur = next;
        }
        Ok(cur)
    }

    pub fn mul(&mut self, f: &NCElement, g: &NCElement) -> Result<NCElement> {
        let mut out = LaurentPoly::zero(self.params.vars());
        for (m, c) in g.0.terms() {
            let word: Vec<usize> = m
                .exps()
                .iter()
                .enumerate()
                .flat_map(|(k, &e)| std::iter::repeat_n(k, e as usize))
                .collect();
            out = &out + &self.mul_poly_word(&f.0, &word)?.scale(c);
        }
        Ok(NCElement(out))
    }

    /// Product of a word of generators, left to right.
    pub fn word(&mut self, gens: &[Gen]) -> Result<NCElement> {
        let w: Vec<usize> = gens.iter().map(|g| g.index()).collect();
        Ok(NCElement(self.mul_poly_word(&LaurentPoly::one(self.params.vars()), &w)?))
    }
}

/// Product in `K_n`, rewritten to normal form.
pub fn nc_multiply(params: &QuantumParams, f: &NCElement, g: &NCElement) -> Result<NCElement> {
    KnMultiplier::new(params).mul(f, g)
}

/// `Ω_i = Σ_{k ≤ i} (q_k - p_k) y_k x_k`.
pub fn omega_q(params: &QuantumParams, i: usize) -> Result<NCElement> {
    if i > params.n {
        return Err(Error::IndexOutOfRange { index: i, n: params.n });
    }
    let v = params.vars();
    let mut out = LaurentPoly::zero(v);
    for k in 1..=i {
        let yx = &LaurentPoly::gen(v, Gen::Y(k).index()) * &LaurentPoly::gen(v, Gen::X(k).index());
        out = &out + &yx.scale(&params.qp(k));
    }
    Ok(NCElement(out))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NormalityEntry {
    pub generator: String,
    /// `λ` with `Ω_i g = λ g Ω_i`, if such a scalar exists.
    pub lambda: Option<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NormalityReport {
    pub i: usize,
    pub entries: Vec<NormalityEntry>,
    pub ok: bool,
}

/// For each generator `g`, find `λ_g` with `Ω_i · g = λ_g · g · Ω_i`.
pub fn normality_check(params: &QuantumParams, i: usize) -> Result<NormalityReport> {
    if i == 0 {
        return Err(Error::IndexOutOfRange { index: i, n: params.n });
    }
    let om = omega_q(params, i)?;
    let mut mult = KnMultiplier::new(params);
    let mut entries = Vec::new();
    for g in Gen::all(params.n) {
        let ge = NCElement::gen(params, g);
        let left = mult.mul(&om, &ge)?;
        let right = mult.mul(&ge, &om)?;
        let lambda = right.0.leading().and_then(|(m, c)| {
            let l = left.0.coeff(m) / c;
            (right.scale(&l) == left).then_some(l)
        });
        entries.push(NormalityEntry {
            generator: g.lower(),
            lambda,
        });
    }
    let ok = entries.iter().all(|e| e.lambda.is_some());
    Ok(NormalityReport { i, entries, ok })
}

/// `R(s_n)` modulo killed generators, localized at inverted ones.
#[derive(Clone, Debug)]
pub struct QTorus {
    s: Vec<Vec<Rational>>,
    vars: Vars,
    killed: Vec<bool>,
}

/// Element of a `QTorus`: a combination of ordered Laurent monomials in `Y_1, X_1, ...`.
pub type QTorusElement = LaurentPoly;

impl QTorus {
    pub fn new(s: Vec<Vec<Rational>>, kill: &[Gen], invert: &[Gen]) -> Result<Self> {
        let n = s.len() / 2;
        if let Some(g) = kill.iter().find(|g| invert.contains(g)) {
            return Err(Error::KillInvertOverlap(g.upper()));
        }
        let inv: Vec<String> = invert.iter().map(|g| g.upper()).collect();
        let vars = Arc::new(VarSpec::new(upper_names(n))?.with_invertible(&inv)?);
        let mut killed = vec![false; 2 * n];
        for g in kill {
            killed[g.index()] = true;
        }
        Ok(QTorus { s, vars, killed })
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn is_killed(&self, g: Gen) -> bool {
        self.killed[g.index()]
    }

    pub fn zero(&self) -> QTorusElement {
        LaurentPoly::zero(&self.vars)
    }

    pub fn constant(&self, c: Rational) -> QTorusElement {
        LaurentPoly::constant(&self.vars, c)
    }

    /// The generator, or zero if killed.
    pub fn gen(&self, g: Gen) -> QTorusElement {
        if self.is_killed(g) {
            self.zero()
        } else {
            LaurentPoly::gen(&self.vars, g.index())
        }
    }

    pub fn gen_inverse(&self, g: Gen) -> Result<QTorusElement> {
        Ok(LaurentPoly::gen(&self.vars, g.index()).inverse()?)
    }

    /// `Π_{a > b} s_ab^{u_a v_b}`.
    pub fn twist(&self, u: &Monomial, v: &Monomial) -> Rational {
        let mut out = Rational::one();
        for a in 0..u.len() {
            if u.exp(a) == 0 {
                continue;
            }
            for b in 0..a {
                let e = u.exp(a) * v.exp(b);
                if e != 0 {
                    out *= &self.s[a][b].pow(e).expect("nonzero entries");
                }
            }
        }
        out
    }

    fn touches_killed(&self, m: &Monomial) -> bool {
        m.support().any(|k| self.killed[k])
    }

    pub fn mul(&self, f: &QTorusElement, g: &QTorusElement) -> QTorusElement {
        let mut out = self.zero();
        for (mu, cu) in f.terms() {
            for (mv, cv) in g.terms() {
                let m = mu.mul(mv);
                if self.touches_killed(&m) {
                    continue;
                }
                let c = self.twist(mu, mv) * cu * cv;
                out = &out + &LaurentPoly::monomial(&self.vars, m, c).expect("exponents admitted by both factors");
            }
        }
        out
    }

    /// Inverse of a single term whose variables are all invertible.
    pub fn inverse(&self, f: &QTorusElement) -> Result<QTorusElement> {
        let (m, c) = match f.terms().iter().next() {
            Some(t) if f.len() == 1 => t,
            _ => return Err(PolyError::NotInvertible.into()),
        };
        let inv = Monomial::one(m.len()).div(m);
        if !self.vars.admits(&inv) {
            return Err(PolyError::NotInvertible.into());
        }
        let k = (self.twist(m, &inv) * c).recip().expect("nonzero term");
        Ok(LaurentPoly::monomial(&self.vars, inv, k)?)
    }

    pub fn pow(&self, f: &QTorusElement, k: i64) -> Result<QTorusElement> {
        let base = if k < 0 { self.inverse(f)? } else { f.clone() };
        let mut out = self.constant(Rational::one());
        for _ in 0..k.unsigned_abs() {
            out = self.mul(&out, &base);
        }
        Ok(out)
    }

    pub fn product(&self, factors: &[QTorusElement]) -> QTorusElement {
        factors
            .iter()
            .fold(self.constant(Rational::one()), |acc, f| self.mul(&acc, f))
    }
}

pub fn qtorus(params: &QuantumParams, kill: &[Gen], invert: &[Gen]) -> Result<QTorus> {
    QTorus::new(s_matrix(params), kill, invert)
}
