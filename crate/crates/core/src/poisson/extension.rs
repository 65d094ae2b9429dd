use crate::exact_poly::{LaurentPoly, Rational};

use super::{derivation_residual, PoissonDerivation, PoissonError, PoissonStructure};

/// Residual of the Ore compatibility condition on the pair `(a, b)`:
/// `δ{a,b} - {δa,b} - {a,δb} - (δ(a)α(b) - α(a)δ(b))`.
pub fn ore_residual(
    s: &PoissonStructure,
    alpha: &PoissonDerivation,
    delta: &PoissonDerivation,
    i: usize,
    j: usize,
) -> Result<LaurentPoly, PoissonError> {
    let g = s.gens();
    let lhs = &(&delta.apply(&s.entry(i, j))? - &s.bracket(delta.image(i), &g[j])?)
        - &s.bracket(&g[i], delta.image(j))?;
    let rhs = &(delta.image(i) * alpha.image(j)) - &(alpha.image(i) * delta.image(j));
    Ok(&lhs - &rhs)
}

/// The Poisson-Ore extension `A[x; α, δ]` with `{a, x} = α(a) x + δ(a)`.
pub fn ore_extend(
    s: &PoissonStructure,
    alpha: &PoissonDerivation,
    delta: &PoissonDerivation,
    new_var: &str,
) -> Result<PoissonStructure, PoissonError> {
    let names = |i: usize, j: usize| [s.vars().name(i).to_string(), s.vars().name(j).to_string()];
    if let Some((i, j, r)) = derivation_residual(s, alpha)? {
        return Err(PoissonError::NotPoissonDerivation {
            pair: names(i, j),
            residual: r,
        });
    }
    let n = s.vars().len();
    for i in 0..n {
        for j in i + 1..n {
            let r = ore_residual(s, alpha, delta, i, j)?;
            if !r.is_zero() {
                return Err(PoissonError::Compatibility {
                    pair: names(i, j),
                    residual: r,
                });
            }
        }
    }
    let vars = s.extended_spec(new_var)?;
    let x = LaurentPoly::gen(&vars, n);
    let mut out = PoissonStructure::trivial(&vars);
    for ((i, j), p) in s.table() {
        out.set(*i, *j, p.clone())?;
    }
    for i in 0..n {
        let a = alpha.image(i).lift(&vars)?;
        let d = delta.image(i).lift(&vars)?;
        out.set(i, n, &(&a * &x) + &d)?;
    }
    Ok(out)
}

/// Data `(A; α, β, c, u)` for `A[y; α][x; β, δ]` with `{y, x} = c y x + u`.
#[derive(Clone, Debug)]
pub struct DoubleExtensionSpec {
    pub base: PoissonStructure,
    pub alpha: PoissonDerivation,
    pub beta: PoissonDerivation,
    pub c: Rational,
    pub u: LaurentPoly,
    /// Eigenvalue with `α(u) = d u`, `β(u) = -d u`.
    pub d: Option<Rational>,
}

impl DoubleExtensionSpec {
    /// Check the defining conditions on generators.
    pub fn check(&self) -> Result<(), PoissonError> {
        let s = &self.base;
        let fail = |m: String| Err(PoissonError::SpecViolation(m));
        let ab = self.alpha.compose_on_gens(&self.beta)?;
        let ba = self.beta.compose_on_gens(&self.alpha)?;
        for (i, (p, q)) in ab.iter().zip(&ba).enumerate() {
            if p != q {
                return fail(format!("alpha and beta do not commute on {}", s.vars().name(i)));
            }
        }
        for (i, g) in s.gens().iter().enumerate() {
            let lhs = s.bracket(g, &self.u)?;
            let rhs = &(self.alpha.image(i) + self.beta.image(i)) * &self.u;
            if lhs != rhs {
                return fail(format!("{{{}, u}} != (alpha+beta)({0}) u", s.vars().name(i)));
            }
        }
        if let Some(d) = &self.d {
            if self.alpha.apply(&self.u)? != self.u.scale(d) {
                return fail("alpha(u) != d u".into());
            }
            if self.beta.apply(&self.u)? != self.u.scale(&-d) {
                return fail("beta(u) != -d u".into());
            }
            if (&self.c + d).is_zero() {
                return fail("c + d = 0".into());
            }
        }
        Ok(())
    }

    /// Build `base[y, x]` by two Ore extensions.
    pub fn extend(&self, y: &str, x: &str) -> Result<PoissonStructure, PoissonError> {
        self.check()?;
        let n = self.base.vars().len();
        let zero = PoissonDerivation::zero(self.base.vars());
        let a1 = ore_extend(&self.base, &self.alpha, &zero, y)?;
        let v1 = a1.vars().clone();
        let y_poly = LaurentPoly::gen(&v1, n);
        let beta1 = self.beta.extend(&v1, vec![y_poly.scale(&self.c)])?;
        let delta1 = PoissonDerivation::zero(self.base.vars()).extend(&v1, vec![self.u.lift(&v1)?])?;
        ore_extend(&a1, &beta1, &delta1, x)
    }

    /// `z = (c + d) y x + u` in the extension whose last two variables are `y, x`.
    pub fn normal_element(&self, ext: &PoissonStructure) -> Result<LaurentPoly, PoissonError> {
        let d = self
            .d
            .as_ref()
            .ok_or_else(|| PoissonError::SpecViolation("no eigenvalue d supplied".into()))?;
        let v = ext.vars();
        let n = v.len();
        let yx = &LaurentPoly::gen(v, n - 2) * &LaurentPoly::gen(v, n - 1);
        Ok(&yx.scale(&(&self.c + d)) + &self.u.lift(v)?)
    }
}

/// Build the double extension named `y, x`.
pub fn double_extend(spec: &DoubleExtensionSpec, y: &str, x: &str) -> Result<PoissonStructure, PoissonError> {
    spec.extend(y, x)
}
