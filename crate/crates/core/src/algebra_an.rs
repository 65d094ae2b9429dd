//! The Poisson algebras `A_n` on `y_1, x_1, ..., y_n, x_n`: bracket table, iterated
//! presentation, `Ω`-elements, the torus action `K`, the matrix `r_n`, and quotient systems.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::Rng;
use serde::Serialize;

use crate::admissible::{lower_names, AdmissibleSet, Element, Gen};
use crate::error::{Error, Result};
use crate::exact_poly::{LaurentPoly, Monomial, Rational, ReductionSystem, Rule, VarSpec, Vars};
use crate::poisson::{
    derivation_check, DoubleExtensionSpec, PoissonDerivation, PoissonStructure,
};
use crate::random::{random_nonzero_poly, random_poly, small_nonzero};

/// Parameters `(Γ, P, Q)` with `Γ` skew-symmetric and `p_i ≠ q_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PoissonParams {
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

impl PoissonParams {
    pub fn new(gamma: Vec<Vec<Rational>>, p: Vec<Rational>, q: Vec<Rational>) -> Result<Self> {
        let n = p.len();
        if q.len() != n || gamma.len() != n || gamma.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidParams("dimension mismatch".into()));
        }
        for i in 0..n {
            if !gamma[i][i].is_zero() {
                return Err(Error::InvalidParams(format!("gamma[{0}][{0}] must be 0", i + 1)));
            }
            for j in 0..n {
                if gamma[i][j] != -&gamma[j][i] {
                    return Err(Error::InvalidParams(format!(
                        "gamma is not skew-symmetric at ({}, {})",
                        i + 1,
                        j + 1
                    )));
                }
            }
            if p[i] == q[i] {
                return Err(Error::InvalidParams(format!("p{0} = q{0}", i + 1)));
            }
        }
        let vars = Arc::new(VarSpec::new(lower_names(n))?);
        Ok(PoissonParams { n, gamma, p, q, vars })
    }

    /// `upper` lists `γ_12, γ_13, ..., γ_1n, γ_23, ...`.
    pub fn from_upper(upper: &[Rational], p: Vec<Rational>, q: Vec<Rational>) -> Result<Self> {
        let n = p.len();
        if upper.len() != n * n.saturating_sub(1) / 2 {
            return Err(Error::InvalidParams("wrong number of gamma entries".into()));
        }
        let mut gamma = vec![vec![Rational::zero(); n]; n];
        let mut it = upper.iter();
        for i in 0..n {
            for j in i + 1..n {
                let g = it.next().unwrap().clone();
                gamma[j][i] = -&g;
                gamma[i][j] = g;
            }
        }
        Self::new(gamma, p, q)
    }

    /// `n = 2`, `γ_12 = 1`, `P = (2, 3)`, `Q = (5, 7)`.
    pub fn canonical_a() -> Self {
        Self::from_upper(&ints(&[1]), ints(&[2, 3]), ints(&[5, 7])).unwrap()
    }

    /// `n = 2`, `γ_12 = 1`, `P = (1, 3)`, `Q = (2, 5)`: the additive image of the canonical quantum instance.
    pub fn canonical_phi() -> Self {
        Self::from_upper(&ints(&[1]), ints(&[1, 3]), ints(&[2, 5])).unwrap()
    }

    /// Three-level analogue of `canonical_phi`: `γ = (1, 2, 1)`, `P = (1, 3, 2)`, `Q = (2, 5, 6)`.
    pub fn canonical_phi3() -> Self {
        Self::from_upper(&ints(&[1, 2, 1]), ints(&[1, 3, 2]), ints(&[2, 5, 6])).unwrap()
    }

    /// Small integer parameters, rejecting `p_i = q_i`.
    pub fn random<R: Rng>(rng: &mut R, n: usize) -> Self {
        let upper: Vec<Rational> = (0..n * n.saturating_sub(1) / 2)
            .map(|_| Rational::from_integer(rng.gen_range(-3..=3)))
            .collect();
        let mut p = Vec::new();
        let mut q = Vec::new();
        for _ in 0..n {
            loop {
                let (a, b) = (small_nonzero(rng, 4), small_nonzero(rng, 4));
                if a != b {
                    p.push(Rational::from_integer(a));
                    q.push(Rational::from_integer(b));
                    break;
                }
            }
        }
        Self::from_upper(&upper, p, q).expect("valid by construction")
    }

    /// Parameters of the subalgebra on the first `j` levels.
    pub fn truncate(&self, j: usize) -> Self {
        let gamma = self.gamma[..j].iter().map(|r| r[..j].to_vec()).collect();
        Self::new(gamma, self.p[..j].to_vec(), self.q[..j].to_vec()).expect("sub-parameters stay valid")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// 1-based accessors.
    pub fn gamma(&self, i: usize, j: usize) -> &Rational {
        &self.gamma[i - 1][j - 1]
    }

    pub fn p(&self, i: usize) -> &Rational {
        &self.p[i - 1]
    }

    pub fn q(&self, i: usize) -> &Rational {
        &self.q[i - 1]
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

    /// `q_i - p_i`.
    pub fn qp(&self, i: usize) -> Rational {
        self.q(i) - self.p(i)
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn gen(&self, g: Gen) -> LaurentPoly {
        LaurentPoly::gen(&self.vars, g.index())
    }

    pub fn y(&self, i: usize) -> LaurentPoly {
        self.gen(Gen::Y(i))
    }

    pub fn x(&self, i: usize) -> LaurentPoly {
        self.gen(Gen::X(i))
    }
}

fn term(vars: &Vars, c: Rational, gens: &[Gen]) -> LaurentPoly {
    let mut m = Monomial::one(vars.len());
    for g in gens {
        m = m.mul(&Monomial::var(vars.len(), g.index()));
    }
    LaurentPoly::monomial(vars, m, c).expect("nonnegative")
}

/// `Ω_i = Σ_{k ≤ i} (q_k - p_k) y_k x_k` over `vars` (which must contain `y_k, x_k`).
pub fn omega_in(vars: &Vars, params: &PoissonParams, i: usize) -> Result<LaurentPoly> {
    if i > params.n {
        return Err(Error::IndexOutOfRange { index: i, n: params.n });
    }
    let mut out = LaurentPoly::zero(vars);
    for k in 1..=i {
        let yk = LaurentPoly::var(vars, &Gen::Y(k).lower())?;
        let xk = LaurentPoly::var(vars, &Gen::X(k).lower())?;
        out = &out + &(&yk * &xk).scale(&params.qp(k));
    }
    Ok(out)
}

pub fn omega(params: &PoissonParams, i: usize) -> Result<LaurentPoly> {
    omega_in(params.vars(), params, i)
}

/// The bracket table on `y_1, x_1, ..., y_n, x_n`, Jacobi-validated.
pub fn build_an(params: &PoissonParams) -> Result<PoissonStructure> {
    let v = params.vars();
    let n = params.n;
    let mut s = PoissonStructure::trivial(v);
    for i in 1..=n {
        let (yi, xi) = (Gen::Y(i), Gen::X(i));
        let e = &term(v, -params.q(i), &[yi, xi]) - &omega(params, i - 1)?;
        s.set(yi.index(), xi.index(), e)?;
        for j in i + 1..=n {
            let (yj, xj) = (Gen::Y(j), Gen::X(j));
            let g = params.gamma(i, j);
            s.set(yi.index(), yj.index(), term(v, g.clone(), &[yi, yj]))?;
            s.set(yi.index(), xj.index(), term(v, -(params.q(i) + g), &[yi, xj]))?;
            s.set(xi.index(), yj.index(), term(v, params.p(j) - g, &[xi, yj]))?;
            s.set(xi.index(), xj.index(), term(v, params.q(i) - params.p(j) + g, &[xi, xj]))?;
        }
    }
    Ok(s.validated()?)
}

/// One step `A_j = (A_{j-1}; α_j, β_j, -q_j, -Ω_{j-1})` with eigenvalue `d = p_j`.
#[derive(Clone, Debug)]
pub struct PresentationLevel {
    pub j: usize,
    pub spec: DoubleExtensionSpec,
}

impl PresentationLevel {
    pub fn alpha(&self) -> &PoissonDerivation {
        &self.spec.alpha
    }

    pub fn beta(&self) -> &PoissonDerivation {
        &self.spec.beta
    }

    /// `δ_j` on `A_{j-1}[y_j]`: zero on `A_{j-1}`, `y_j ↦ -Ω_{j-1}`.
    pub fn delta(&self) -> Result<PoissonDerivation> {
        let base = self.spec.base.vars();
        let mut names = base.names().to_vec();
        names.push(Gen::Y(self.j).lower());
        let v: Vars = Arc::new(VarSpec::new(names)?);
        let mut images = vec![LaurentPoly::zero(&v); v.len()];
        images[v.len() - 1] = self.spec.u.lift(&v)?;
        Ok(PoissonDerivation::new(&v, images)?)
    }
}

#[derive(Clone, Debug)]
pub struct IteratedPresentation {
    pub levels: Vec<PresentationLevel>,
    /// `Ω_0, ..., Ω_n` over the variables of `A_n`.
    pub omegas: Vec<LaurentPoly>,
}

fn ground() -> PoissonStructure {
    PoissonStructure::trivial(&Arc::new(VarSpec::new(Vec::<String>::new()).expect("empty")))
}

pub fn iterated_presentation(params: &PoissonParams) -> Result<IteratedPresentation> {
    let mut levels = Vec::new();
    for j in 1..=params.n {
        let base = if j == 1 { ground() } else { build_an(&params.truncate(j - 1))? };
        let bv = base.vars().clone();
        let mut a = Vec::new();
        let mut b = Vec::new();
        for i in 1..j {
            let g = params.gamma(i, j);
            a.push(g.clone());
            a.push(params.p(j) - g);
            b.push(-(params.q(i) + g));
            b.push(params.q(i) - params.p(j) + g);
        }
        let spec = DoubleExtensionSpec {
            alpha: PoissonDerivation::diagonal(&bv, &a)?,
            beta: PoissonDerivation::diagonal(&bv, &b)?,
            c: -params.q(j),
            u: -&omega_in(&bv, &params.truncate(j - 1), j - 1)?,
            d: Some(params.p(j).clone()),
            base,
        };
        levels.push(PresentationLevel { j, spec });
    }
    let omegas = (0..=params.n).map(|i| omega(params, i)).collect::<Result<_>>()?;
    Ok(IteratedPresentation { levels, omegas })
}

/// Rebuild `A_n` by successive double extensions and compare with `build_an` level by level.
pub fn consistency_check(params: &PoissonParams) -> Result<PoissonStructure> {
    let pres = iterated_presentation(params)?;
    let mut cur = ground();
    for level in &pres.levels {
        let j = level.j;
        let mut spec = level.spec.clone();
        spec.base = cur;
        cur = spec.extend(&Gen::Y(j).lower(), &Gen::X(j).lower())?;
        let direct = build_an(&params.truncate(j))?;
        let v = direct.vars().clone();
        for a in 0..v.len() {
            for b in a + 1..v.len() {
                let want = direct.entry(a, b);
                let got = cur.entry(a, b).lift(&v)?;
                if want != got {
                    return Err(Error::Mismatch {
                        level: j,
                        entry: [v.name(a).to_string(), v.name(b).to_string()],
                        expected: want.to_string(),
                        got: got.to_string(),
                    });
                }
            }
        }
    }
    Ok(cur)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub identity: String,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub checks: Vec<IdentityCheck>,
    pub ok: bool,
}

impl IdentityReport {
    pub fn from_checks(checks: Vec<IdentityCheck>) -> Self {
        let ok = checks.iter().all(|c| c.ok);
        IdentityReport { checks, ok }
    }

    pub fn failures(&self) -> Vec<&str> {
        self.checks.iter().filter(|c| !c.ok).map(|c| c.identity.as_str()).collect()
    }
}

/// `{y_i, Ω_j}`, `{x_i, Ω_j}`, `{Ω_i, Ω_j}` and the two expressions of `Ω_{i-1}`, `Ω_i`
/// through `{x_i, y_i}`.
pub fn verify_lemma_2_3(params: &PoissonParams) -> Result<IdentityReport> {
    let s = build_an(params)?;
    let n = params.n;
    let om: Vec<LaurentPoly> = (0..=n).map(|i| omega(params, i)).collect::<Result<_>>()?;
    let mut checks = Vec::new();
    let mut push = |identity: String, ok: bool| checks.push(IdentityCheck { identity, ok });
    for i in 1..=n {
        let (y, x) = (params.y(i), params.x(i));
        for j in 1..=n {
            let (cy, cx) = if i <= j {
                (-params.q(i), params.q(i).clone())
            } else {
                (-params.p(i), params.p(i).clone())
            };
            let lhs = s.bracket(&y, &om[j])?;
            push(format!("{{y{i}, Omega{j}}} = {cy} y{i} Omega{j}"), lhs == (&y * &om[j]).scale(&cy));
            let lhs = s.bracket(&x, &om[j])?;
            push(format!("{{x{i}, Omega{j}}} = {cx} x{i} Omega{j}"), lhs == (&x * &om[j]).scale(&cx));
        }
        for j in 1..=n {
            push(format!("{{Omega{i}, Omega{j}}} = 0"), s.bracket(&om[i], &om[j])?.is_zero());
        }
        let xy = s.bracket(&x, &y)?;
        let yx = &y * &x;
        push(
            format!("Omega{} = {{x{i}, y{i}}} - q{i} y{i} x{i}", i - 1),
            om[i - 1] == &xy - &yx.scale(params.q(i)),
        );
        push(
            format!("Omega{i} = {{x{i}, y{i}}} - p{i} y{i} x{i}"),
            om[i] == &xy - &yx.scale(params.p(i)),
        );
    }
    Ok(IdentityReport::from_checks(checks))
}

/// Weight vector `(h_1, ..., h_{2n})` with `h_{2i-1} + h_{2i}` independent of `i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KElement {
    h: Vec<Rational>,
}

impl KElement {
    pub fn new(h: Vec<Rational>) -> Result<Self> {
        if !h.len().is_multiple_of(2) {
            return Err(Error::NotInK(format!("odd length {}", h.len())));
        }
        let sums: Vec<Rational> = h.chunks(2).map(|c| &c[0] + &c[1]).collect();
        if let Some(k) = sums.iter().position(|s| s != &sums[0]) {
            return Err(Error::NotInK(format!(
                "pair sums differ: level 1 has {}, level {} has {}",
                sums[0],
                k + 1,
                sums[k]
            )));
        }
        Ok(KElement { h })
    }

    pub fn from_ints(h: &[i64]) -> Result<Self> {
        Self::new(ints(h))
    }

    /// `e_{2i-1} - e_{2i}` for each `i`, and `(1, 0, 1, 0, ...)`.
    pub fn basis(n: usize) -> Vec<KElement> {
        let mut out = Vec::new();
        for i in 0..n {
            let mut h = vec![Rational::zero(); 2 * n];
            h[2 * i] = Rational::one();
            h[2 * i + 1] = -Rational::one();
            out.push(KElement { h });
        }
        let h = (0..2 * n)
            .map(|k| if k % 2 == 0 { Rational::one() } else { Rational::zero() })
            .collect();
        out.push(KElement { h });
        out
    }

    pub fn weights(&self) -> &[Rational] {
        &self.h
    }

    pub fn n(&self) -> usize {
        self.h.len() / 2
    }

    pub fn derivation(&self, vars: &Vars) -> Result<PoissonDerivation> {
        Ok(PoissonDerivation::diagonal(vars, &self.h)?)
    }
}

/// `Σ_i (h_{2i-1} y_i ∂/∂y_i + h_{2i} x_i ∂/∂x_i) f`.
pub fn k_action(params: &PoissonParams, h: &KElement, f: &LaurentPoly) -> Result<LaurentPoly> {
    if h.n() != params.n {
        return Err(Error::NotInK(format!("expected {} weights, got {}", 2 * params.n, h.h.len())));
    }
    Ok(h.derivation(f.vars())?.apply(f)?)
}

#[derive(Clone, Debug, Serialize)]
pub struct Eigendata {
    pub f: Vec<Rational>,
    pub g: Vec<Rational>,
    pub report: IdentityReport,
}

/// The pair `f, g` acting as `α_n` / `β_n` on the top level of the presentation.
pub fn eigendata(params: &PoissonParams) -> Result<Eigendata> {
    let n = params.n;
    let mut f = Vec::new();
    let mut g = Vec::new();
    for i in 1..n {
        let gm = params.gamma(i, n);
        f.push(gm.clone());
        f.push(params.p(n) - gm);
        g.push(-(params.q(i) + gm));
        g.push(params.q(i) - params.p(n) + gm);
    }
    f.push(Rational::one());
    f.push(params.p(n) - Rational::one());
    g.push(-params.q(n));
    g.push(params.qp(n));

    let mut checks = Vec::new();
    let fk = KElement::new(f.clone());
    let gk = KElement::new(g.clone());
    checks.push(IdentityCheck { identity: "f in K".into(), ok: fk.is_ok() });
    checks.push(IdentityCheck { identity: "g in K".into(), ok: gk.is_ok() });
    if let (Ok(fk), Ok(gk)) = (fk, gk) {
        let pres = iterated_presentation(params)?;
        let top = pres.levels.last().expect("n >= 1");
        let s = build_an(params)?;
        let df = fk.derivation(s.vars())?;
        let dg = gk.derivation(s.vars())?;
        for k in 0..2 * (n - 1) {
            let gen = Gen::from_index(k);
            let x = params.gen(gen);
            let a = top.alpha().image(k).lift(s.vars())?;
            let b = top.beta().image(k).lift(s.vars())?;
            checks.push(IdentityCheck {
                identity: format!("f({0}) = alpha_n({0})", gen.lower()),
                ok: df.apply(&x)? == a,
            });
            checks.push(IdentityCheck {
                identity: format!("g({0}) = beta_n({0})", gen.lower()),
                ok: dg.apply(&x)? == b,
            });
        }
        let yn = params.y(n);
        let xn = params.x(n);
        checks.push(IdentityCheck {
            identity: format!("f(y{n}) = y{n}"),
            ok: df.apply(&yn)? == yn,
        });
        checks.push(IdentityCheck {
            identity: format!("g(y{n}) = -q{n} y{n}"),
            ok: dg.apply(&yn)? == yn.scale(&-params.q(n)),
        });
        checks.push(IdentityCheck {
            identity: format!("g(x{n}) = (q{n} - p{n}) x{n}"),
            ok: dg.apply(&xn)? == xn.scale(&params.qp(n)),
        });
        checks.push(IdentityCheck {
            identity: "f, g are Poisson derivations".into(),
            ok: derivation_check(&s, &df) && derivation_check(&s, &dg),
        });
    }
    Ok(Eigendata {
        f,
        g,
        report: IdentityReport::from_checks(checks),
    })
}

/// Skew matrix `r` with `{Z_a, Z_b} = r_ab Z_a Z_b` on `Y_1, X_1, ..., Y_n, X_n`.
pub fn r_matrix(params: &PoissonParams) -> Vec<Vec<Rational>> {
    let n = params.n;
    let mut r = vec![vec![Rational::zero(); 2 * n]; 2 * n];
    let mut set = |a: Gen, b: Gen, v: Rational| {
        r[b.index()][a.index()] = -&v;
        r[a.index()][b.index()] = v;
    };
    for i in 1..=n {
        set(Gen::Y(i), Gen::X(i), -params.q(i));
        for j in i + 1..=n {
            let g = params.gamma(i, j);
            set(Gen::Y(i), Gen::Y(j), g.clone());
            set(Gen::Y(i), Gen::X(j), -(params.q(i) + g));
            set(Gen::X(i), Gen::Y(j), params.p(j) - g);
            set(Gen::X(i), Gen::X(j), params.q(i) - params.p(j) + g);
        }
    }
    r
}

/// Polynomial of a member of `{Ω_i, y_i, x_i}`.
pub fn element_poly(params: &PoissonParams, e: Element) -> Result<LaurentPoly> {
    match e {
        Element::Y(i) => Ok(params.y(i)),
        Element::X(i) => Ok(params.x(i)),
        Element::Omega(i) => omega(params, i),
    }
}

/// Rewriting rules for `A_n / ⟨T⟩`.
pub fn quotient_system(params: &PoissonParams, t: &AdmissibleSet) -> Result<ReductionSystem> {
    if t.n() != params.n {
        return Err(Error::NotAdmissible(format!("{t} has n = {}, params have n = {}", t.n(), params.n)));
    }
    let v = params.vars();
    let nv = v.len();
    let mut rules: Vec<Rule> = Vec::new();
    for i in 1..=params.n {
        if t.y(i) {
            rules.push(Rule {
                lead: Monomial::var(nv, Gen::Y(i).index()),
                replacement: LaurentPoly::zero(v),
            });
        }
        if t.x(i) {
            rules.push(Rule {
                lead: Monomial::var(nv, Gen::X(i).index()),
                replacement: LaurentPoly::zero(v),
            });
        }
    }
    for i in 1..=params.n {
        if t.omega_only(i) {
            let lower = ReductionSystem::new(v, rules.clone())?;
            let c = params.qp(i).recip().expect("p_i != q_i");
            let rhs = lower.reduce(&omega(params, i - 1)?.scale(&-c))?;
            let lead = Monomial::var(nv, Gen::Y(i).index()).mul(&Monomial::var(nv, Gen::X(i).index()));
            rules.push(Rule { lead, replacement: rhs });
        }
    }
    Ok(ReductionSystem::new(v, rules)?)
}

/// Generators of `⟨T⟩` as polynomials.
pub fn ideal_generators(params: &PoissonParams, t: &AdmissibleSet) -> Result<Vec<(Element, LaurentPoly)>> {
    t.elements()
        .into_iter()
        .map(|e| Ok((e, element_poly(params, e)?)))
        .collect()
}

/// `reduce({t, g}) = 0` for every generator `t` of `⟨T⟩` and every algebra generator `g`.
pub fn poisson_ideal_check(params: &PoissonParams, t: &AdmissibleSet) -> Result<IdentityReport> {
    let s = build_an(params)?;
    let sys = quotient_system(params, t)?;
    let mut checks = Vec::new();
    for (e, tp) in ideal_generators(params, t)? {
        checks.push(IdentityCheck {
            identity: format!("{e} reduces to 0"),
            ok: sys.reduce(&tp)?.is_zero(),
        });
        for (k, g) in s.gens().iter().enumerate() {
            let r = sys.reduce(&s.bracket(&tp, g)?)?;
            checks.push(IdentityCheck {
                identity: format!("{{{e}, {}}} in <T>", s.vars().name(k)),
                ok: r.is_zero(),
            });
        }
    }
    Ok(IdentityReport::from_checks(checks))
}

/// `reduce(h(t)) = 0` for the basis `h` of `K` and generators `t` of `⟨T⟩`.
pub fn k_stability_check(params: &PoissonParams, t: &AdmissibleSet) -> Result<IdentityReport> {
    let sys = quotient_system(params, t)?;
    let mut checks = Vec::new();
    for (b, h) in KElement::basis(params.n).iter().enumerate() {
        for (e, tp) in ideal_generators(params, t)? {
            let r = sys.reduce(&k_action(params, h, &tp)?)?;
            checks.push(IdentityCheck {
                identity: format!("h{b}({e}) in <T>"),
                ok: r.is_zero(),
            });
        }
    }
    Ok(IdentityReport::from_checks(checks))
}

/// Randomized rule order reaches the deterministic normal form on `trials` random inputs.
/// Returns the number of disagreements.
pub fn confluence_check<R: Rng>(
    params: &PoissonParams,
    t: &AdmissibleSet,
    trials: usize,
    rng: &mut R,
) -> Result<usize> {
    let sys = quotient_system(params, t)?;
    let mut bad = 0;
    for _ in 0..trials {
        let f = random_poly(rng, params.vars(), 5, 4);
        if sys.reduce(&f)? != sys.reduce_randomized(&f, rng)? {
            bad += 1;
        }
    }
    Ok(bad)
}

/// Probabilistic primeness witness: products of random nonzero normal forms stay nonzero.
/// Returns the number of zero products found.
pub fn zero_divisor_smoke<R: Rng>(
    params: &PoissonParams,
    t: &AdmissibleSet,
    trials: usize,
    rng: &mut R,
) -> Result<usize> {
    let sys = quotient_system(params, t)?;
    let mut zeros = 0;
    let mut done = 0;
    while done < trials {
        let f = sys.reduce(&random_nonzero_poly(rng, params.vars(), 4, 3))?;
        let g = sys.reduce(&random_nonzero_poly(rng, params.vars(), 4, 3))?;
        if f.is_zero() || g.is_zero() {
            continue;
        }
        done += 1;
        if sys.reduce(&(&f * &g))?.is_zero() {
            zeros += 1;
        }
    }
    Ok(zeros)
}

/// Log-canonical coefficients read off a bracket table: `{g_a, g_b} = c g_a g_b + (other terms)`.
pub fn log_canonical_part(s: &PoissonStructure) -> Vec<Vec<Rational>> {
    let v = s.vars();
    let nv = v.len();
    let mut out = vec![vec![Rational::zero(); nv]; nv];
    for a in 0..nv {
        for b in 0..nv {
            let m = Monomial::var(nv, a).mul(&Monomial::var(nv, b));
            out[a][b] = s.entry(a, b).coeff(&m);
        }
    }
    out
}

/// Bracket table keyed by generator names, for reports.
pub fn named_table(s: &PoissonStructure) -> BTreeMap<String, String> {
    s.table()
        .iter()
        .map(|((i, j), p)| (format!("{{{}, {}}}", s.vars().name(*i), s.vars().name(*j)), p.to_string()))
        .collect()
}
