//! Stratum isomorphisms on both sides, the homomorphism `φ` from the
//! multiplicative parameter group to the additive one, and the stratum report.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::ToPrimitive;
use serde::Serialize;

use crate::admissible::{enumerate, gk_dimension, upper_names, AdmissibleSet, Element, Gen};
use crate::algebra_an::{build_an, element_poly, omega, r_matrix, IdentityCheck, IdentityReport, PoissonParams};
use crate::algebra_kn::{qtorus, s_matrix, QTorus, QuantumParams};
use crate::error::{Error, Result};
use crate::exact_poly::{group_analysis, LaurentPoly, Monomial, Rational, VarSpec, Vars};
use crate::poisson::PoissonStructure;

/// Which formula a generator `x_i` is sent by.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum XCase {
    /// `x_i ∈ T`.
    Killed,
    /// `x_i ∉ T`, `Ω_{i-1} ∈ T`.
    Plain,
    /// `y_i, x_i ∉ T`, `Ω_i ∈ T`, `Ω_{i-1} ∉ T`.
    TailOnly,
    /// `y_i, x_i, Ω_{i-1}, Ω_i ∉ T`.
    Full,
}

pub fn x_case(t: &AdmissibleSet, i: usize) -> XCase {
    if t.x(i) {
        XCase::Killed
    } else if t.omega(i - 1) {
        XCase::Plain
    } else if t.omega_only(i) {
        XCase::TailOnly
    } else {
        XCase::Full
    }
}

/// Image of one generator, independent of the side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ImageShape {
    Zero,
    Gen(Gen),
    /// `X_i - c Y_i⁻¹ Y_{i-1} X_{i-1}`.
    GenMinusTail(usize, Rational),
    /// `-c Y_i⁻¹ Y_{i-1} X_{i-1}`.
    Tail(usize, Rational),
}

/// `(q_i - p_i)⁻¹ (q_{i-1} - p_{i-1})`, with `qp[k] = q_{k+1} - p_{k+1}`.
pub fn hat_coefficient(qp: &[Rational], i: usize) -> Rational {
    &qp[i - 2] / &qp[i - 1]
}

/// Shapes of the images of `y_1, x_1, ..., y_n, x_n`.
pub fn image_shapes(t: &AdmissibleSet, qp: &[Rational]) -> Vec<(Gen, ImageShape)> {
    let mut out = Vec::with_capacity(2 * t.n());
    for i in 1..=t.n() {
        let y = if t.y(i) { ImageShape::Zero } else { ImageShape::Gen(Gen::Y(i)) };
        out.push((Gen::Y(i), y));
        let x = match x_case(t, i) {
            XCase::Killed => ImageShape::Zero,
            XCase::Plain => ImageShape::Gen(Gen::X(i)),
            XCase::TailOnly => ImageShape::Tail(i, hat_coefficient(qp, i)),
            XCase::Full => ImageShape::GenMinusTail(i, hat_coefficient(qp, i)),
        };
        out.push((Gen::X(i), x));
    }
    out
}

/// Generator images in a localized quotient target.
#[derive(Clone, Debug)]
pub struct GeneratorMap {
    pub t: AdmissibleSet,
    pub shapes: Vec<(Gen, ImageShape)>,
    pub kill: Vec<Gen>,
    pub invert: Vec<Gen>,
    pub target: Vars,
    /// Indexed by `Gen::index`.
    pub images: Vec<LaurentPoly>,
}

impl GeneratorMap {
    pub fn image(&self, g: Gen) -> &LaurentPoly {
        &self.images[g.index()]
    }

    pub fn named_images(&self) -> BTreeMap<String, String> {
        Gen::all(self.t.n())
            .into_iter()
            .map(|g| (g.lower(), self.image(g).to_string()))
            .collect()
    }
}

fn u_t(t: &AdmissibleSet) -> Vec<Gen> {
    (1..=t.n()).filter(|&i| !t.y(i)).map(Gen::Y).collect()
}

fn check_n(t: &AdmissibleSet, n: usize) -> Result<()> {
    if t.n() != n {
        return Err(Error::NotAdmissible(format!("{t} has n = {}, params have n = {n}", t.n())));
    }
    Ok(())
}

/// Laurent ring on `Y_1, X_1, ...` with every `Y_i` invertible.
pub fn ambient_vars(n: usize) -> Vars {
    let ys: Vec<String> = (1..=n).map(|i| Gen::Y(i).upper()).collect();
    Arc::new(VarSpec::new(upper_names(n)).and_then(|v| v.with_invertible(&ys)).expect("distinct names"))
}

fn realize_commutative(vars: &Vars, shape: &ImageShape) -> LaurentPoly {
    let g = |g: Gen| LaurentPoly::gen(vars, g.index());
    let tail = |i: usize, c: &Rational| {
        let nv = vars.len();
        let mut e = vec![0; nv];
        e[Gen::Y(i).index()] = -1;
        e[Gen::Y(i - 1).index()] = 1;
        e[Gen::X(i - 1).index()] = 1;
        LaurentPoly::monomial(vars, Monomial::from_exps(e), -c).expect("Y invertible in ambient")
    };
    match shape {
        ImageShape::Zero => LaurentPoly::zero(vars),
        ImageShape::Gen(x) => g(*x),
        ImageShape::GenMinusTail(i, c) => &g(Gen::X(*i)) + &tail(*i, c),
        ImageShape::Tail(i, c) => tail(*i, c),
    }
}

/// Ψ′_T images in the ambient ring, before killing `η(T)`. The tail-only case
/// is lifted as `X_i - c Y_i⁻¹ Y_{i-1} X_{i-1}`, which agrees with it modulo `X_i ∈ η(T)`.
pub fn psi_prime_raw(params: &PoissonParams, t: &AdmissibleSet) -> Result<Vec<LaurentPoly>> {
    check_n(t, params.n())?;
    let qp: Vec<Rational> = (1..=params.n()).map(|i| params.qp(i)).collect();
    let amb = ambient_vars(params.n());
    Ok(image_shapes(t, &qp)
        .into_iter()
        .map(|(_, s)| match s {
            ImageShape::Tail(i, c) => ImageShape::GenMinusTail(i, c),
            s => s,
        })
        .map(|s| realize_commutative(&amb, &s))
        .collect())
}

/// Drop every term involving a killed variable, then move to `target`.
fn project(p: &LaurentPoly, killed: &[Gen], target: &Vars) -> Result<LaurentPoly> {
    let mut out = LaurentPoly::zero(p.vars());
    for (m, c) in p.terms() {
        if killed.iter().all(|g| m.exp(g.index()) == 0) {
            out = &out + &LaurentPoly::monomial(p.vars(), m.clone(), c.clone())?;
        }
    }
    Ok(out.lift(target)?)
}

/// Log-canonical structure with matrix `r_n` on the variables outside `η(T)`,
/// with `Y_i` inverted for `y_i ∉ T`.
pub fn psi_target(params: &PoissonParams, t: &AdmissibleSet) -> Result<PoissonStructure> {
    check_n(t, params.n())?;
    let eta = t.eta();
    let survivors: Vec<Gen> = Gen::all(params.n()).into_iter().filter(|g| !eta.contains(g)).collect();
    let inv: Vec<String> = u_t(t).iter().map(|g| g.upper()).collect();
    let vars = Arc::new(VarSpec::new(survivors.iter().map(|g| g.upper()))?.with_invertible(&inv)?);
    let r = r_matrix(params);
    let mut entries = Vec::new();
    for (a, ga) in survivors.iter().enumerate() {
        for (b, gb) in survivors.iter().enumerate().skip(a + 1) {
            let c = &r[ga.index()][gb.index()];
            if c.is_zero() {
                continue;
            }
            let prod = &LaurentPoly::gen(&vars, a) * &LaurentPoly::gen(&vars, b);
            entries.push(((a, b), prod.scale(c)));
        }
    }
    Ok(PoissonStructure::new(&vars, entries)?)
}

pub fn psi_prime(params: &PoissonParams, t: &AdmissibleSet) -> Result<GeneratorMap> {
    let target = psi_target(params, t)?;
    let raw = psi_prime_raw(params, t)?;
    let kill = t.eta();
    let images = raw
        .iter()
        .map(|p| project(p, &kill, target.vars()))
        .collect::<Result<Vec<_>>>()?;
    let qp: Vec<Rational> = (1..=params.n()).map(|i| params.qp(i)).collect();
    Ok(GeneratorMap {
        t: t.clone(),
        shapes: image_shapes(t, &qp),
        invert: u_t(t),
        kill,
        target: target.vars().clone(),
        images,
    })
}

/// Ψ′_T of an arbitrary element of `A_n`.
pub fn psi_apply(map: &GeneratorMap, f: &LaurentPoly) -> Result<LaurentPoly> {
    Ok(f.substitute(&map.images, &map.target)?)
}

fn target_product(vars: &Vars, gens: &[Gen]) -> Result<LaurentPoly> {
    let mut out = LaurentPoly::one(vars);
    for g in gens {
        match vars.index_of(&g.upper()) {
            Some(k) => out = &out * &LaurentPoly::gen(vars, k),
            None => return Ok(LaurentPoly::zero(vars)),
        }
    }
    Ok(out)
}

/// Brackets of generator pairs, `Ψ′(Ω_i)`, vanishing on `T`, and the units `𝒴_T ↦ 𝒰_T`.
pub fn verify_psi(params: &PoissonParams, t: &AdmissibleSet) -> Result<IdentityReport> {
    let src = build_an(params)?;
    let target = psi_target(params, t)?;
    let map = psi_prime(params, t)?;
    let tv = target.vars().clone();
    let gens = Gen::all(params.n());
    let mut checks = Vec::new();
    let mut push = |identity: String, lhs: &LaurentPoly, rhs: &LaurentPoly| {
        let ok = lhs == rhs;
        let identity = if ok { identity } else { format!("{identity}: residual {}", lhs - rhs) };
        checks.push(IdentityCheck { identity, ok });
    };
    for (a, &ga) in gens.iter().enumerate() {
        for &gb in &gens[a + 1..] {
            let br = src.bracket(&params.gen(ga), &params.gen(gb))?;
            let lhs = psi_apply(&map, &br)?;
            let rhs = target.bracket(map.image(ga), map.image(gb))?;
            push(format!("Psi{{{}, {}}} = {{Psi {0}, Psi {1}}}", ga.lower(), gb.lower()), &lhs, &rhs);
        }
    }
    for i in 1..=params.n() {
        let lhs = psi_apply(&map, &omega(params, i)?)?;
        let rhs = target_product(&tv, &[Gen::Y(i), Gen::X(i)])?.scale(&params.qp(i));
        push(format!("Psi(Omega{i}) = (q{i} - p{i}) Y{i} X{i}"), &lhs, &rhs);
    }
    for e in t.elements() {
        let lhs = psi_apply(&map, &element_poly(params, e)?)?;
        push(format!("Psi({e}) = 0"), &lhs, &LaurentPoly::zero(&tv));
    }
    let units_ok = (1..=params.n()).filter(|&i| !t.y(i)).all(|i| {
        let im = map.image(Gen::Y(i));
        im.len() == 1 && im.inverse().is_ok() && Some(im) == target_product(&tv, &[Gen::Y(i)]).ok().as_ref()
    }) && u_t(t) == t.derived().u_t_generators;
    checks.push(IdentityCheck {
        identity: "Psi maps the y-units onto the Y-units".into(),
        ok: units_ok,
    });
    Ok(IdentityReport::from_checks(checks))
}

/// For `T ⊆ T′`: every term of `Ψ′_T(g) - Ψ′_{T′}(g)` lies in the ideal generated by `η(T′)`.
pub fn nested_congruence(params: &PoissonParams, t: &AdmissibleSet, t2: &AdmissibleSet) -> Result<IdentityReport> {
    if !t.is_subset(t2) {
        return Err(Error::NotAdmissible(format!("{t} is not contained in {t2}")));
    }
    let a = psi_prime_raw(params, t)?;
    let b = psi_prime_raw(params, t2)?;
    let eta2 = t2.eta();
    let checks = Gen::all(params.n())
        .into_iter()
        .map(|g| {
            let diff = &a[g.index()] - &b[g.index()];
            let ok = diff
                .terms()
                .keys()
                .all(|m| eta2.iter().any(|e| m.exp(e.index()) > 0));
            IdentityCheck {
                identity: format!("Psi_{t}({g}) = Psi_{t2}({g}) mod eta", g = g.lower()),
                ok,
            }
        })
        .collect();
    Ok(IdentityReport::from_checks(checks))
}

fn realize_quantum(torus: &QTorus, shape: &ImageShape) -> Result<LaurentPoly> {
    let tail = |i: usize, c: &Rational| -> Result<LaurentPoly> {
        let w = [
            torus.gen_inverse(Gen::Y(i))?,
            torus.gen(Gen::Y(i - 1)),
            torus.gen(Gen::X(i - 1)),
        ];
        Ok(torus.product(&w).scale(&-c))
    };
    Ok(match shape {
        ImageShape::Zero => torus.zero(),
        ImageShape::Gen(g) => torus.gen(*g),
        ImageShape::GenMinusTail(i, c) => &torus.gen(Gen::X(*i)) + &tail(*i, c)?,
        ImageShape::Tail(i, c) => tail(*i, c)?,
    })
}

fn upsilon_with_torus(params: &QuantumParams, t: &AdmissibleSet) -> Result<(GeneratorMap, QTorus)> {
    check_n(t, params.n())?;
    let kill = t.eta();
    let invert = u_t(t);
    let torus = qtorus(params, &kill, &invert)?;
    let qp: Vec<Rational> = (1..=params.n()).map(|i| params.qp(i)).collect();
    let shapes = image_shapes(t, &qp);
    let images = shapes
        .iter()
        .map(|(_, s)| realize_quantum(&torus, s))
        .collect::<Result<Vec<_>>>()?;
    let map = GeneratorMap {
        t: t.clone(),
        shapes,
        kill,
        invert,
        target: torus.vars().clone(),
        images,
    };
    Ok((map, torus))
}

/// Υ′_T with images in the quantum torus quotient.
pub fn upsilon_prime(params: &QuantumParams, t: &AdmissibleSet) -> Result<GeneratorMap> {
    Ok(upsilon_with_torus(params, t)?.0)
}

/// Every defining relation of `K_n` vanishes on the images, and `Υ′(Ω_i) = (q_i - p_i) Y_i X_i`.
pub fn verify_upsilon(params: &QuantumParams, t: &AdmissibleSet) -> Result<IdentityReport> {
    let (map, torus) = upsilon_with_torus(params, t)?;
    let s = s_matrix(params);
    let gens = Gen::all(params.n());
    let im = |g: Gen| map.image(g);
    let yx = |k: usize| torus.mul(im(Gen::Y(k)), im(Gen::X(k)));
    let mut checks = Vec::new();
    for (b, &gb) in gens.iter().enumerate() {
        for &ga in &gens[b + 1..] {
            // Z_a Z_b with a > b
            let mut residual = &torus.mul(im(ga), im(gb)) - &torus.mul(im(gb), im(ga)).scale(&s[ga.index()][gb.index()]);
            let label = match (ga, gb) {
                (Gen::X(i), Gen::Y(j)) if i == j => {
                    for k in 1..i {
                        residual = &residual - &yx(k).scale(&params.qp(k));
                    }
                    format!("x{i} y{i} - q{i} y{i} x{i} - Omega{}", i - 1)
                }
                _ => format!("{} {} - s {} {}", ga.lower(), gb.lower(), gb.lower(), ga.lower()),
            };
            let ok = residual.is_zero();
            let identity = if ok { label } else { format!("{label}: residual {residual}") };
            checks.push(IdentityCheck { identity, ok });
        }
    }
    for i in 1..=params.n() {
        let mut lhs = torus.zero();
        for k in 1..=i {
            lhs = &lhs + &yx(k).scale(&params.qp(k));
        }
        let rhs = torus.mul(&torus.gen(Gen::Y(i)), &torus.gen(Gen::X(i))).scale(&params.qp(i));
        let ok = lhs == rhs;
        let label = format!("Upsilon(Omega{i}) = (q{i} - p{i}) Y{i} X{i}");
        let identity = if ok { label } else { format!("{label}: residual {}", &lhs - &rhs) };
        checks.push(IdentityCheck { identity, ok });
    }
    for e in t.elements() {
        let ok = match e {
            Element::Y(i) => im(Gen::Y(i)).is_zero(),
            Element::X(i) => im(Gen::X(i)).is_zero(),
            Element::Omega(i) => (1..=i)
                .fold(torus.zero(), |acc, k| &acc + &yx(k).scale(&params.qp(k)))
                .is_zero(),
        };
        checks.push(IdentityCheck {
            identity: format!("Upsilon({e}) = 0"),
            ok,
        });
    }
    Ok(IdentityReport::from_checks(checks))
}

/// Homomorphism from the multiplicative parameter group into the rationals,
/// fixed by its values on primes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PhiSpec {
    pub weights: BTreeMap<u64, Rational>,
    pub p: Vec<Rational>,
    pub q: Vec<Rational>,
    pub gamma: Vec<Vec<Rational>>,
    pub injective_on_group: bool,
    pub minus_one_in_group: bool,
}

impl PhiSpec {
    /// `φ(a) = Σ_p e_p(a) w_p`; the sign of `a` is ignored.
    pub fn apply(&self, a: &Rational) -> Result<Rational> {
        phi_value(&self.weights, a)
    }

    /// Errors if `-1` lies in the group or `φ` is not injective on it.
    pub fn ensure_hypotheses(&self) -> Result<()> {
        if self.minus_one_in_group {
            return Err(Error::Phi("-1 lies in the parameter group".into()));
        }
        if !self.injective_on_group {
            return Err(Error::Phi("phi is not injective on the parameter group".into()));
        }
        Ok(())
    }

    pub fn poisson_params(&self) -> Result<PoissonParams> {
        PoissonParams::new(self.gamma.clone(), self.p.clone(), self.q.clone())
    }
}

fn phi_value(weights: &BTreeMap<u64, Rational>, a: &Rational) -> Result<Rational> {
    let f = a.factor().ok_or_else(|| Error::Phi("phi is undefined at 0".into()))?;
    let mut out = Rational::zero();
    for (prime, e) in &f.exponents {
        let key = prime.to_u64().ok_or_else(|| Error::Phi(format!("prime {prime} too large")))?;
        let w = weights
            .get(&key)
            .ok_or_else(|| Error::Phi(format!("no weight for prime {prime}")))?;
        out += &(w * &Rational::from_integer(*e));
    }
    Ok(out)
}

/// Primes occurring in the parameters, ascending.
pub fn parameter_primes(params: &QuantumParams) -> Vec<u64> {
    let mut out: Vec<u64> = params
        .group_generators()
        .iter()
        .filter_map(|g| g.factor())
        .flat_map(|f| f.exponents.into_keys())
        .filter_map(|p| p.to_u64())
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// `{p ↦ 1}` when exactly one prime occurs.
pub fn default_weights(params: &QuantumParams) -> Option<BTreeMap<u64, Rational>> {
    match parameter_primes(params).as_slice() {
        [p] => Some(BTreeMap::from([(*p, Rational::one())])),
        _ => None,
    }
}

pub fn phi_hom(params: &QuantumParams, weights: &BTreeMap<u64, Rational>) -> Result<PhiSpec> {
    let n = params.n();
    let ph = |a: &Rational| phi_value(weights, a);
    let p = params.p_vec().iter().map(ph).collect::<Result<Vec<_>>>()?;
    let q = params.q_vec().iter().map(ph).collect::<Result<Vec<_>>>()?;
    for i in 0..n {
        if p[i] == q[i] {
            return Err(Error::Phi(format!("phi(p{0}) = phi(q{0}) = {1}", i + 1, p[i])));
        }
    }
    let gamma = params
        .gamma_matrix()
        .iter()
        .map(|row| row.iter().map(ph).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let gens = params.group_generators();
    let ga = group_analysis(&gens)?;
    let nonzero = gens.iter().map(ph).collect::<Result<Vec<_>>>()?.iter().any(|v| !v.is_zero());
    Ok(PhiSpec {
        weights: weights.clone(),
        p,
        q,
        gamma,
        injective_on_group: ga.lattice_rank == 0 || (ga.lattice_rank == 1 && nonzero),
        minus_one_in_group: ga.contains_minus_one,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct StratumRecord {
    #[serde(rename = "T")]
    pub t: AdmissibleSet,
    pub eta: Vec<Gen>,
    pub length: usize,
    pub gk_dim: usize,
    pub psi_ok: bool,
    pub upsilon_ok: bool,
    pub psi_images: BTreeMap<String, String>,
    pub upsilon_images: BTreeMap<String, String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Grade {
    Homeomorphism,
    Quotient,
}

#[derive(Clone, Debug, Serialize)]
pub struct MapReport {
    pub n: usize,
    pub params: QuantumParams,
    pub phi: PhiSpec,
    pub strata: Vec<StratumRecord>,
    pub grade: Grade,
}

impl MapReport {
    pub fn all_ok(&self) -> bool {
        self.strata.iter().all(|s| s.psi_ok && s.upsilon_ok)
    }
}

/// Pairs each admissible `T` on the Poisson side with the same `T` on the quantum side.
pub fn quotient_map_report(params: &QuantumParams, weights: &BTreeMap<u64, Rational>) -> Result<MapReport> {
    let phi = phi_hom(params, weights)?;
    let pp = phi.poisson_params()?;
    let mut strata = Vec::new();
    for t in enumerate(params.n()) {
        let psi = psi_prime(&pp, &t)?;
        let ups = upsilon_prime(params, &t)?;
        strata.push(StratumRecord {
            eta: t.eta(),
            length: t.length(),
            gk_dim: gk_dimension(&t),
            psi_ok: verify_psi(&pp, &t)?.ok,
            upsilon_ok: verify_upsilon(params, &t)?.ok,
            psi_images: psi.named_images(),
            upsilon_images: ups.named_images(),
            t,
        });
    }
    let grade = if phi.injective_on_group && !phi.minus_one_in_group {
        Grade::Homeomorphism
    } else {
        Grade::Quotient
    };
    Ok(MapReport {
        n: params.n(),
        params: params.clone(),
        phi,
        strata,
        grade,
    })
}
