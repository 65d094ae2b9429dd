//! Variable declarations and Laurent monomials.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use super::PolyError;

/// Ordered variable names with per-variable Laurent flags.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct VarSpec {
    names: Vec<String>,
    invertible: Vec<bool>,
}

/// Shared handle; polynomials over the same algebra point at one spec.
pub type Vars = Arc<VarSpec>;

impl VarSpec {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self, PolyError> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        for (i, a) in names.iter().enumerate() {
            if names[..i].contains(a) {
                return Err(PolyError::DuplicateVariable(a.clone()));
            }
        }
        let invertible = vec![false; names.len()];
        Ok(VarSpec { names, invertible })
    }

    pub fn shared<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Vars, PolyError> {
        Self::new(names).map(Arc::new)
    }

    /// Copy with the named variables marked invertible.
    pub fn with_invertible<S: AsRef<str>>(&self, names: &[S]) -> Result<Self, PolyError> {
        let mut out = self.clone();
        for n in names {
            let i = self.require(n.as_ref())?;
            out.invertible[i] = true;
        }
        Ok(out)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn is_invertible(&self, i: usize) -> bool {
        self.invertible[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn require(&self, name: &str) -> Result<usize, PolyError> {
        self.index_of(name)
            .ok_or_else(|| PolyError::UnknownVariable(name.to_string()))
    }

    pub fn admits(&self, m: &Monomial) -> bool {
        m.len() == self.len()
            && m.exps().iter().zip(&self.invertible).all(|(&e, &inv)| e >= 0 || inv)
    }
}

/// Exponent vector indexed by a `VarSpec`.
///
/// `Ord` is the reduction order: signed total degree, then exponents compared
/// from the last variable backwards.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(Vec<i64>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn from_exps(exps: Vec<i64>) -> Self {
        Monomial(exps)
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exps(&self) -> &[i64] {
        &self.0
    }

    pub fn exp(&self, i: usize) -> i64 {
        self.0[i]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn abs_degree(&self) -> i64 {
        self.0.iter().map(|e| e.abs()).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn pow(&self, k: i64) -> Monomial {
        Monomial(self.0.iter().map(|e| e * k).collect())
    }

    /// Componentwise `self <= other`.
    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn with_exp(&self, i: usize, e: i64) -> Monomial {
        let mut v = self.0.clone();
        v[i] = e;
        Monomial(v)
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(|(_, &e)| e != 0).map(|(i, _)| i)
    }

    pub fn display<'a>(&'a self, vars: &'a VarSpec) -> MonomialDisplay<'a> {
        MonomialDisplay { m: self, vars }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            for (a, b) in self.0.iter().zip(&other.0).rev() {
                match a.cmp(b) {
                    Ordering::Equal => continue,
                    o => return o,
                }
            }
            self.0.len().cmp(&other.0.len())
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub struct MonomialDisplay<'a> {
    m: &'a Monomial,
    vars: &'a VarSpec,
}

impl fmt::Display for MonomialDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.m.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            f.write_str(self.vars.name(i))?;
            if e != 1 {
                write!(f, "^{e}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}
