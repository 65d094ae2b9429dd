//! Sparse Laurent polynomials with exact rational coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::{Monomial, PolyError, Rational, VarSpec, Vars};

/// Finite sum of rational multiples of monomials, in canonical form.
///
/// Terms iterate in ascending monomial order, so the leading term is last.
#[derive(Clone, Debug)]
pub struct LaurentPoly {
    vars: Vars,
    terms: BTreeMap<Monomial, Rational>,
}

pub(crate) fn same_vars(a: &Vars, b: &Vars) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl PartialEq for LaurentPoly {
    fn eq(&self, other: &Self) -> bool {
        same_vars(&self.vars, &other.vars) && self.terms == other.terms
    }
}

impl Eq for LaurentPoly {}

impl LaurentPoly {
    pub fn zero(vars: &Vars) -> Self {
        LaurentPoly {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(vars: &Vars) -> Self {
        Self::constant(vars, Rational::one())
    }

    pub fn constant(vars: &Vars, c: Rational) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(vars.len()), c);
        }
        p
    }

    /// The `i`-th generator.
    pub fn gen(vars: &Vars, i: usize) -> Self {
        let mut p = Self::zero(vars);
        p.terms.insert(Monomial::var(vars.len(), i), Rational::one());
        p
    }

    pub fn var(vars: &Vars, name: &str) -> Result<Self, PolyError> {
        Ok(Self::gen(vars, vars.require(name)?))
    }

    pub fn monomial(vars: &Vars, m: Monomial, c: Rational) -> Result<Self, PolyError> {
        if !vars.admits(&m) {
            return Err(PolyError::NotAdmitted(m.display(vars).to_string()));
        }
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        Ok(p)
    }

    pub fn from_terms(
        vars: &Vars,
        terms: impl IntoIterator<Item = (Monomial, Rational)>,
    ) -> Result<Self, PolyError> {
        let mut p = Self::zero(vars);
        for (m, c) in terms {
            if !vars.admits(&m) {
                return Err(PolyError::NotAdmitted(m.display(vars).to_string()));
            }
            p.add_term(m, &c);
        }
        Ok(p)
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Rational> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// `Some(c)` if the polynomial is the constant `c` (zero included).
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn lowest(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next()
    }

    /// Largest absolute degree of any term; 0 for the zero polynomial.
    pub fn total_degree(&self) -> i64 {
        self.terms.keys().map(Monomial::abs_degree).max().unwrap_or(0)
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: &Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check(&self, other: &LaurentPoly) -> Result<(), PolyError> {
        if same_vars(&self.vars, &other.vars) {
            Ok(())
        } else {
            Err(PolyError::VarSpecMismatch)
        }
    }

    pub fn checked_add(&self, other: &LaurentPoly) -> Result<Self, PolyError> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &LaurentPoly) -> Result<Self, PolyError> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), &-c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &LaurentPoly) -> Result<Self, PolyError> {
        self.check(other)?;
        let mut out = Self::zero(&self.vars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), &(ca * cb));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        LaurentPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    /// Multiply by `c * m`; `m` must be admitted by the spec.
    pub fn mul_term(&self, m: &Monomial, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        LaurentPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(k, a)| (k.mul(m), a * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(&self.vars);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Inverse of a single invertible term.
    pub fn inverse(&self) -> Result<Self, PolyError> {
        if self.terms.len() != 1 {
            return Err(PolyError::NotInvertible);
        }
        let (m, c) = self.terms.iter().next().unwrap();
        let inv = Monomial::one(m.len()).div(m);
        if !self.vars.admits(&inv) {
            return Err(PolyError::NotInvertible);
        }
        let mut p = Self::zero(&self.vars);
        p.terms.insert(inv, c.recip().expect("stored coefficients are nonzero"));
        Ok(p)
    }

    /// Integer power; negative exponents need an invertible single term.
    pub fn pow_i(&self, k: i64) -> Result<Self, PolyError> {
        if k >= 0 {
            Ok(self.pow(k as u32))
        } else {
            Ok(self.inverse()?.pow(k.unsigned_abs() as u32))
        }
    }

    /// Partial derivative with respect to the `i`-th variable.
    pub fn derivative(&self, i: usize) -> Self {
        let mut out = Self::zero(&self.vars);
        for (m, c) in &self.terms {
            let e = m.exp(i);
            if e != 0 {
                out.add_term(m.with_exp(i, e - 1), &(c * Rational::from_integer(e)));
            }
        }
        out
    }

    pub fn partial(&self, name: &str) -> Result<Self, PolyError> {
        Ok(self.derivative(self.vars.require(name)?))
    }

    /// Substitute `images[i]` for variable `i`. Images share the target spec.
    pub fn substitute(&self, images: &[LaurentPoly], target: &Vars) -> Result<Self, PolyError> {
        if images.len() != self.vars.len() {
            return Err(PolyError::VarSpecMismatch);
        }
        for im in images {
            if !same_vars(im.vars(), target) {
                return Err(PolyError::VarSpecMismatch);
            }
        }
        let mut cache: Vec<BTreeMap<i64, LaurentPoly>> = vec![BTreeMap::new(); images.len()];
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            let mut t = Self::constant(target, c.clone());
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !cache[i].contains_key(&e) {
                    let p = images[i].pow_i(e)?;
                    cache[i].insert(e, p);
                }
                t = &t * &cache[i][&e];
                if t.is_zero() {
                    break;
                }
            }
            out = &out + &t;
        }
        Ok(out)
    }

    /// Re-express over another spec by matching variable names.
    pub fn lift(&self, target: &Vars) -> Result<Self, PolyError> {
        if same_vars(&self.vars, target) {
            return Ok(self.clone());
        }
        let map: Vec<Option<usize>> = self.vars.names().iter().map(|n| target.index_of(n)).collect();
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            let mut e = vec![0; target.len()];
            for (i, &k) in m.exps().iter().enumerate() {
                if k == 0 {
                    continue;
                }
                match map[i] {
                    Some(j) => e[j] = k,
                    None => return Err(PolyError::UnknownVariable(self.vars.name(i).to_string())),
                }
            }
            let m = Monomial::from_exps(e);
            if !target.admits(&m) {
                return Err(PolyError::NotAdmitted(m.display(target).to_string()));
            }
            out.add_term(m, c);
        }
        Ok(out)
    }

    /// Exact quotient `self / z` in the Laurent ring, or `None` if `z` does not divide.
    pub fn exact_div(&self, z: &LaurentPoly) -> Result<Option<Self>, PolyError> {
        self.check(z)?;
        let (lz, cz) = z.leading().ok_or(PolyError::ZeroDivisor)?;
        let (lz, cz) = (lz.clone(), cz.clone());
        let Some((lo_f, _)) = self.lowest() else {
            return Ok(Some(Self::zero(&self.vars)));
        };
        // every quotient term lies between low(f)/low(z) and lead(f)/lead(z)
        let floor = lo_f.div(z.lowest().unwrap().0);
        let mut rem = self.clone();
        let mut q = Self::zero(&self.vars);
        while let Some((m, c)) = rem.leading() {
            let t = m.div(&lz);
            if t < floor || !self.vars.admits(&t) {
                return Ok(None);
            }
            let k = c / &cz;
            rem = &rem - &z.mul_term(&t, &k);
            q.add_term(t, &k);
        }
        Ok(Some(q))
    }

    pub fn display(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for LaurentPoly {
    /// Descending monomial order, e.g. `7*y2*x2 + 3*y1*x1 - 1/2*x1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_one() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{}", m.display(&self.vars))?;
            } else {
                write!(f, "{a}*{}", m.display(&self.vars))?;
            }
        }
        Ok(())
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_add(rhs).expect("polynomials over different variable specs")
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_sub(rhs).expect("polynomials over different variable specs")
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_mul(rhs).expect("polynomials over different variable specs")
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(&-Rational::one())
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: LaurentPoly) -> LaurentPoly {
        &self + &rhs
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl VarSpec {
    /// Generators `0..len` as polynomials.
    pub fn gens(self: &Arc<Self>) -> Vec<LaurentPoly> {
        (0..self.len()).map(|i| LaurentPoly::gen(self, i)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(a: i64, b: i64) -> Rational {
        Rational::new(a, b)
    }

    fn spec() -> Vars {
        Arc::new(
            VarSpec::new(["y1", "x1", "y2", "x2"])
                .unwrap()
                .with_invertible(&["y1", "y2"])
                .unwrap(),
        )
    }

    #[test]
    fn difference_of_squares() {
        let v = spec();
        let y = LaurentPoly::var(&v, "y1").unwrap();
        let x = LaurentPoly::var(&v, "x1").unwrap();
        let lhs = &(&y + &x) * &(&y - &x);
        let rhs = &y.pow(2) - &x.pow(2);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn power_rule_negative_exponent() {
        let v = spec();
        let f = LaurentPoly::monomial(&v, Monomial::from_exps(vec![-1, 1, 0, 0]), r(1, 1)).unwrap();
        let d = f.partial("y1").unwrap();
        let want = LaurentPoly::monomial(&v, Monomial::from_exps(vec![-2, 1, 0, 0]), r(-1, 1)).unwrap();
        assert_eq!(d, want);
    }

    #[test]
    fn coefficients_combine() {
        let v = spec();
        let m = Monomial::from_exps(vec![1, 1, -1, 0]);
        let a = LaurentPoly::monomial(&v, m.clone(), r(3, 4)).unwrap();
        let b = LaurentPoly::monomial(&v, m.clone(), r(1, 4)).unwrap();
        assert_eq!(&a + &b, LaurentPoly::monomial(&v, m, r(1, 1)).unwrap());
        assert!((&a - &a).is_zero());
    }

    #[test]
    fn errors() {
        let v = spec();
        let w: Vars = Arc::new(VarSpec::new(["t"]).unwrap());
        let a = LaurentPoly::one(&v);
        let b = LaurentPoly::one(&w);
        assert!(matches!(a.checked_add(&b), Err(PolyError::VarSpecMismatch)));
        assert!(matches!(a.partial("z"), Err(PolyError::UnknownVariable(_))));
        assert!(LaurentPoly::monomial(&v, Monomial::from_exps(vec![0, -1, 0, 0]), r(1, 1)).is_err());
    }

    #[test]
    fn display_order() {
        let v = spec();
        let g = v.gens();
        let p = &(&g[2] * &g[3]).scale(&r(7, 1)) + &(&g[0] * &g[1]).scale(&r(3, 1));
        assert_eq!(p.to_string(), "7*y2*x2 + 3*y1*x1");
        let q = &g[1].scale(&r(-1, 2)) + &LaurentPoly::constant(&v, r(-2, 1));
        assert_eq!(q.to_string(), "-1/2*x1 - 2");
        assert_eq!(LaurentPoly::zero(&v).to_string(), "0");
    }

    #[test]
    fn exact_division() {
        let v = spec();
        let g = v.gens();
        let z = &(&g[0] * &g[1]) + &g[2];
        let q = &g[3].pow(2) - &g[0];
        let f = &z * &q;
        assert_eq!(f.exact_div(&z).unwrap(), Some(q));
        let not = &g[1] + &g[3];
        assert_eq!(not.exact_div(&z).unwrap(), None);
        // y1 is a unit
        assert_eq!(g[1].exact_div(&g[0]).unwrap().unwrap().to_string(), "y1^-1*x1");
        assert_eq!(g[0].exact_div(&g[1]).unwrap(), None);
    }

    #[test]
    fn substitution() {
        let v = spec();
        let g = v.gens();
        // y1 -> y1 + x1, others fixed
        let mut im = g.clone();
        im[0] = &g[0] + &g[1];
        let f = &g[0].pow(2) * &g[2];
        let s = f.substitute(&im, &v).unwrap();
        assert_eq!(s, &(&g[0] + &g[1]).pow(2) * &g[2]);
    }
}
