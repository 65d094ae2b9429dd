use std::collections::BTreeMap;
use std::sync::Arc;

use crate::exact_poly::{same_vars, LaurentPoly, PolyError, VarSpec, Vars};

use super::PoissonError;

/// Bracket table on the generators of a (Laurent) polynomial ring.
///
/// Only entries `(i, j)` with `i < j` are stored; missing entries are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoissonStructure {
    vars: Vars,
    table: BTreeMap<(usize, usize), LaurentPoly>,
}

impl PoissonStructure {
    pub fn new(
        vars: &Vars,
        entries: impl IntoIterator<Item = ((usize, usize), LaurentPoly)>,
    ) -> Result<Self, PoissonError> {
        let mut s = PoissonStructure::trivial(vars);
        for ((i, j), p) in entries {
            s.set(i, j, p)?;
        }
        Ok(s)
    }

    /// All brackets zero.
    pub fn trivial(vars: &Vars) -> Self {
        PoissonStructure {
            vars: vars.clone(),
            table: BTreeMap::new(),
        }
    }

    /// Set `{g_i, g_j} = p` (and implicitly `{g_j, g_i} = -p`).
    pub fn set(&mut self, i: usize, j: usize, p: LaurentPoly) -> Result<(), PoissonError> {
        let n = self.vars.len();
        if i == j || i >= n || j >= n {
            return Err(PoissonError::InvalidTable(format!("entry ({i}, {j})")));
        }
        let p = p.lift(&self.vars)?;
        let (key, p) = if i < j { ((i, j), p) } else { ((j, i), -&p) };
        if p.is_zero() {
            self.table.remove(&key);
        } else {
            self.table.insert(key, p);
        }
        Ok(())
    }

    pub fn set_named(&mut self, a: &str, b: &str, p: LaurentPoly) -> Result<(), PoissonError> {
        let (i, j) = (self.vars.require(a)?, self.vars.require(b)?);
        self.set(i, j, p)
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn gens(&self) -> Vec<LaurentPoly> {
        self.vars.gens()
    }

    pub fn gen(&self, name: &str) -> Result<LaurentPoly, PoissonError> {
        Ok(LaurentPoly::var(&self.vars, name)?)
    }

    /// Stored upper-triangular entries.
    pub fn table(&self) -> &BTreeMap<(usize, usize), LaurentPoly> {
        &self.table
    }

    /// `{g_i, g_j}` for any pair of indices.
    pub fn entry(&self, i: usize, j: usize) -> LaurentPoly {
        use std::cmp::Ordering::*;
        match i.cmp(&j) {
            Equal => LaurentPoly::zero(&self.vars),
            Less => self.table.get(&(i, j)).cloned().unwrap_or_else(|| LaurentPoly::zero(&self.vars)),
            Greater => -&self.entry(j, i),
        }
    }

    pub fn entry_named(&self, a: &str, b: &str) -> Result<LaurentPoly, PoissonError> {
        Ok(self.entry(self.vars.require(a)?, self.vars.require(b)?))
    }

    /// The biderivation extending the table.
    pub fn bracket(&self, f: &LaurentPoly, g: &LaurentPoly) -> Result<LaurentPoly, PoissonError> {
        if !same_vars(f.vars(), &self.vars) || !same_vars(g.vars(), &self.vars) {
            return Err(PolyError::VarSpecMismatch.into());
        }
        let n = self.vars.len();
        let df: Vec<Option<LaurentPoly>> = (0..n).map(|i| nonzero(f.derivative(i))).collect();
        let dg: Vec<Option<LaurentPoly>> = (0..n).map(|i| nonzero(g.derivative(i))).collect();
        let mut out = LaurentPoly::zero(&self.vars);
        for ((i, j), t) in &self.table {
            let mut s = LaurentPoly::zero(&self.vars);
            if let (Some(a), Some(b)) = (&df[*i], &dg[*j]) {
                s = &s + &(a * b);
            }
            if let (Some(a), Some(b)) = (&df[*j], &dg[*i]) {
                s = &s - &(a * b);
            }
            if !s.is_zero() {
                out = &out + &(t * &s);
            }
        }
        Ok(out)
    }

    /// `{{f,g},h} + {{g,h},f} + {{h,f},g}`.
    pub fn jacobiator(
        &self,
        f: &LaurentPoly,
        g: &LaurentPoly,
        h: &LaurentPoly,
    ) -> Result<LaurentPoly, PoissonError> {
        let a = self.bracket(&self.bracket(f, g)?, h)?;
        let b = self.bracket(&self.bracket(g, h)?, f)?;
        let c = self.bracket(&self.bracket(h, f)?, g)?;
        Ok(&(&a + &b) + &c)
    }

    /// First generator triple with a nonzero jacobiator.
    pub fn jacobi_failure(&self) -> Option<(usize, usize, usize, LaurentPoly)> {
        let g = self.gens();
        let n = g.len();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let r = self.jacobiator(&g[i], &g[j], &g[k]).expect("generators share the spec");
                    if !r.is_zero() {
                        return Some((i, j, k, r));
                    }
                }
            }
        }
        None
    }

    pub fn jacobi_check(&self) -> bool {
        self.jacobi_failure().is_none()
    }

    /// Return `self` if the Jacobi identity holds on generator triples.
    pub fn validated(self) -> Result<Self, PoissonError> {
        match self.jacobi_failure() {
            None => Ok(self),
            Some((i, j, k, r)) => Err(PoissonError::Jacobi {
                triple: [i, j, k].map(|t| self.vars.name(t).to_string()),
                residual: r,
            }),
        }
    }

    /// Same table over a spec with the named variables made invertible.
    pub fn localize<S: AsRef<str>>(&self, invert: &[S]) -> Result<Self, PoissonError> {
        let vars: Vars = Arc::new(self.vars.with_invertible(invert)?);
        let mut table = BTreeMap::new();
        for (k, p) in &self.table {
            table.insert(*k, p.lift(&vars)?);
        }
        Ok(PoissonStructure { vars, table })
    }

    /// Map `g ↦ γ(g)` with `{g, z} = γ(g) z`, if every such quotient exists.
    pub fn is_poisson_normal(
        &self,
        z: &LaurentPoly,
    ) -> Result<Option<BTreeMap<String, LaurentPoly>>, PoissonError> {
        if z.is_zero() {
            return Err(PoissonError::ZeroElement);
        }
        let mut out = BTreeMap::new();
        for (i, g) in self.gens().iter().enumerate() {
            let b = self.bracket(g, z)?;
            match b.exact_div(z)? {
                Some(q) => {
                    out.insert(self.vars.name(i).to_string(), q);
                }
                None => return Ok(None),
            }
        }
        Ok(Some(out))
    }

    /// A copy over a spec with extra (non-invertible) variables appended.
    pub(crate) fn extended_spec(&self, name: &str) -> Result<Vars, PoissonError> {
        let mut names: Vec<String> = self.vars.names().to_vec();
        names.push(name.to_string());
        let base = VarSpec::new(names)?;
        let inv: Vec<&str> = (0..self.vars.len())
            .filter(|&i| self.vars.is_invertible(i))
            .map(|i| self.vars.name(i))
            .collect();
        Ok(Arc::new(base.with_invertible(&inv)?))
    }
}

fn nonzero(p: LaurentPoly) -> Option<LaurentPoly> {
    (!p.is_zero()).then_some(p)
}
