use std::collections::BTreeMap;

use crate::exact_poly::{same_vars, LaurentPoly, PolyError, Rational, Vars};

use super::{PoissonError, PoissonStructure};

/// A derivation given by its values on generators, extended by the Leibniz rule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoissonDerivation {
    vars: Vars,
    images: Vec<LaurentPoly>,
}

impl PoissonDerivation {
    pub fn new(vars: &Vars, images: Vec<LaurentPoly>) -> Result<Self, PoissonError> {
        if images.len() != vars.len() {
            return Err(PoissonError::InvalidTable(format!(
                "derivation needs {} images, got {}",
                vars.len(),
                images.len()
            )));
        }
        let images = images.iter().map(|p| p.lift(vars)).collect::<Result<_, _>>()?;
        Ok(PoissonDerivation {
            vars: vars.clone(),
            images,
        })
    }

    pub fn zero(vars: &Vars) -> Self {
        PoissonDerivation {
            vars: vars.clone(),
            images: vec![LaurentPoly::zero(vars); vars.len()],
        }
    }

    /// Images by generator name; unnamed generators map to zero.
    pub fn from_named(vars: &Vars, images: &[(&str, LaurentPoly)]) -> Result<Self, PoissonError> {
        let mut d = Self::zero(vars);
        for (name, p) in images {
            let i = vars.require(name)?;
            d.images[i] = p.lift(vars)?;
        }
        Ok(d)
    }

    /// `g_i ↦ s_i g_i`.
    pub fn diagonal(vars: &Vars, scalars: &[Rational]) -> Result<Self, PoissonError> {
        let images = vars
            .gens()
            .into_iter()
            .zip(scalars)
            .map(|(g, s)| g.scale(s))
            .collect::<Vec<_>>();
        Self::new(vars, images)
    }

    /// Hamiltonian derivation `{h, -}`.
    pub fn hamiltonian(s: &PoissonStructure, h: &LaurentPoly) -> Result<Self, PoissonError> {
        let images = s.gens().iter().map(|g| s.bracket(h, g)).collect::<Result<_, _>>()?;
        Self::new(s.vars(), images)
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn images(&self) -> &[LaurentPoly] {
        &self.images
    }

    pub fn image(&self, i: usize) -> &LaurentPoly {
        &self.images[i]
    }

    /// `Σ_i D(g_i) ∂f/∂g_i`.
    pub fn apply(&self, f: &LaurentPoly) -> Result<LaurentPoly, PoissonError> {
        if !same_vars(f.vars(), &self.vars) {
            return Err(PolyError::VarSpecMismatch.into());
        }
        let mut out = LaurentPoly::zero(&self.vars);
        for (i, im) in self.images.iter().enumerate() {
            if im.is_zero() {
                continue;
            }
            let d = f.derivative(i);
            if !d.is_zero() {
                out = &out + &(im * &d);
            }
        }
        Ok(out)
    }

    /// Composition `self ∘ other` on generators (a map, not a derivation in general).
    pub fn compose_on_gens(&self, other: &PoissonDerivation) -> Result<Vec<LaurentPoly>, PoissonError> {
        other.images.iter().map(|p| self.apply(p)).collect()
    }

    /// Same images over a larger spec, with `extra` images for the appended variables.
    pub(crate) fn extend(&self, vars: &Vars, extra: Vec<LaurentPoly>) -> Result<Self, PoissonError> {
        let mut images = self.images.clone();
        images.extend(extra);
        Self::new(vars, images)
    }

    pub fn to_named(&self) -> BTreeMap<String, LaurentPoly> {
        self.images
            .iter()
            .enumerate()
            .map(|(i, p)| (self.vars.name(i).to_string(), p.clone()))
            .collect()
    }
}

/// `D({a,b}) - {D a, b} - {a, D b}` on the first generator pair where it is nonzero.
pub fn derivation_residual(
    s: &PoissonStructure,
    d: &PoissonDerivation,
) -> Result<Option<(usize, usize, LaurentPoly)>, PoissonError> {
    let g = s.gens();
    for i in 0..g.len() {
        for j in i + 1..g.len() {
            let lhs = d.apply(&s.entry(i, j))?;
            let r1 = s.bracket(d.image(i), &g[j])?;
            let r2 = s.bracket(&g[i], d.image(j))?;
            let res = &(&lhs - &r1) - &r2;
            if !res.is_zero() {
                return Ok(Some((i, j, res)));
            }
        }
    }
    Ok(None)
}

/// True iff `d` is a Poisson derivation, checked on generator pairs.
pub fn derivation_check(s: &PoissonStructure, d: &PoissonDerivation) -> bool {
    matches!(derivation_residual(s, d), Ok(None))
}
