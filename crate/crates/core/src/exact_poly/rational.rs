//! Exact rational scalars with a prime-factored view.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::PolyError;

/// An exact rational number in lowest terms with a positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Rational(BigRational);

/// `value = sign * prod(p^e)`; zero has no factorization.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PrimeFactorization {
    pub negative: bool,
    pub exponents: BTreeMap<BigUint, i64>,
}

impl Rational {
    /// Panics if `den == 0`.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_integer(n: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_bigs(num: BigInt, den: BigInt) -> Option<Self> {
        if den.is_zero() {
            None
        } else {
            Some(Rational(BigRational::new(num, den)))
        }
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Rational(self.0.recip()))
        }
    }

    pub fn checked_div(&self, other: &Rational) -> Option<Self> {
        if other.is_zero() {
            None
        } else {
            Some(Rational(&self.0 / &other.0))
        }
    }

    /// Integer power; `None` for a negative power of zero.
    pub fn pow(&self, exp: i64) -> Option<Self> {
        if exp < 0 && self.is_zero() {
            return None;
        }
        let e = exp.unsigned_abs();
        let mut base = if exp < 0 { self.0.recip() } else { self.0.clone() };
        let mut acc = BigRational::one();
        let mut k = e;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        Some(Rational(acc))
    }

    pub fn to_i64(&self) -> Option<i64> {
        if self.0.is_integer() {
            self.0.numer().to_i64()
        } else {
            None
        }
    }

    /// Sign plus prime exponents. `None` for zero.
    pub fn factor(&self) -> Option<PrimeFactorization> {
        if self.is_zero() {
            return None;
        }
        let mut exponents = BTreeMap::new();
        for (p, e) in factor_natural(self.numer().magnitude()) {
            *exponents.entry(p).or_insert(0) += e as i64;
        }
        for (p, e) in factor_natural(self.denom().magnitude()) {
            *exponents.entry(p).or_insert(0) -= e as i64;
        }
        exponents.retain(|_, e| *e != 0);
        Some(PrimeFactorization {
            negative: self.is_negative(),
            exponents,
        })
    }
}

impl PrimeFactorization {
    pub fn value(&self) -> Rational {
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        for (p, &e) in &self.exponents {
            let pe = num_traits::pow(BigInt::from(p.clone()), e.unsigned_abs() as usize);
            if e > 0 {
                num *= pe;
            } else {
                den *= pe;
            }
        }
        if self.negative {
            num = -num;
        }
        Rational(BigRational::new(num, den))
    }
}

/// Trial division. Inputs in this crate are parameter scalars, so they stay small.
fn factor_natural(n: &BigUint) -> Vec<(BigUint, u32)> {
    let mut out = Vec::new();
    let mut rest = n.clone();
    if rest <= BigUint::one() {
        return out;
    }
    let mut d = BigUint::from(2u32);
    while &d * &d <= rest {
        let mut count = 0u32;
        loop {
            let (q, r) = rest.div_rem(&d);
            if !r.is_zero() {
                break;
            }
            rest = q;
            count += 1;
        }
        if count > 0 {
            out.push((d.clone(), count));
        }
        d += 1u32;
    }
    if rest > BigUint::one() {
        out.push((rest, 1));
    }
    out
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

impl From<BigRational> for Rational {
    fn from(r: BigRational) -> Self {
        Rational(r)
    }
}

impl FromStr for Rational {
    type Err = PolyError;

    /// Accepts `a`, `-a`, `a/b` with optional surrounding whitespace.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || PolyError::ParseRational(s.to_string());
        let t = s.trim();
        let (num, den) = match t.split_once('/') {
            Some((a, b)) => (a.trim(), b.trim()),
            None => (t, "1"),
        };
        let num = BigInt::from_str(num).map_err(|_| bad())?;
        let den = BigInt::from_str(den).map_err(|_| bad())?;
        Rational::from_bigs(num, den).ok_or_else(bad)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Str(String),
            Int(i64),
        }
        match Repr::deserialize(deserializer)? {
            Repr::Str(s) => s.parse().map_err(serde::de::Error::custom),
            Repr::Int(n) => Ok(Rational::from_integer(n)),
        }
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational($tr::$method(&self.0, &rhs.0))
            }
        }
        impl $tr<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational($tr::$method(self.0, rhs.0))
            }
        }
        impl $tr<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational($tr::$method(self.0, &rhs.0))
            }
        }
        impl $tr<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational($tr::$method(&self.0, rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
// Division by zero panics, as for BigRational; use `checked_div` on untrusted input.
forward_binop!(Div, div);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        self.0 -= &rhs.0;
    }
}

impl MulAssign<&Rational> for Rational {
    fn mul_assign(&mut self, rhs: &Rational) {
        self.0 *= &rhs.0;
    }
}

impl Signed for Rational {
    fn abs(&self) -> Self {
        Rational(self.0.abs())
    }
    fn abs_sub(&self, other: &Self) -> Self {
        Rational(self.0.abs_sub(&other.0))
    }
    fn signum(&self) -> Self {
        Rational(self.0.signum())
    }
    fn is_positive(&self) -> bool {
        self.0.is_positive()
    }
    fn is_negative(&self) -> bool {
        self.0.is_negative()
    }
}

impl num_traits::Num for Rational {
    type FromStrRadixErr = <BigRational as num_traits::Num>::FromStrRadixErr;
    fn from_str_radix(s: &str, radix: u32) -> Result<Self, Self::FromStrRadixErr> {
        BigRational::from_str_radix(s, radix).map(Rational)
    }
}

impl std::ops::Rem for Rational {
    type Output = Rational;
    fn rem(self, rhs: Rational) -> Rational {
        Rational(self.0 % rhs.0)
    }
}

impl Zero for Rational {
    fn zero() -> Self {
        Rational::zero()
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl One for Rational {
    fn one() -> Self {
        Rational::one()
    }
}

impl std::iter::Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |a, b| a + b)
    }
}

impl std::iter::Product for Rational {
    fn product<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::one(), |a, b| a * b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form() {
        assert_eq!(Rational::new(6, -4), Rational::new(-3, 2));
        assert_eq!(Rational::new(0, 5), Rational::zero());
        assert!(Rational::new(-3, 2).denom() > &BigInt::zero());
    }

    #[test]
    fn parse_and_display() {
        let r: Rational = " -3/4 ".parse().unwrap();
        assert_eq!(r, Rational::new(-3, 4));
        assert_eq!(r.to_string(), "-3/4");
        assert_eq!("12".parse::<Rational>().unwrap().to_string(), "12");
        assert!("1/0".parse::<Rational>().is_err());
        assert!("abc".parse::<Rational>().is_err());
    }

    #[test]
    fn factor_examples() {
        let f = Rational::new(-12, 5).factor().unwrap();
        assert!(f.negative);
        assert_eq!(f.exponents.get(&BigUint::from(2u32)), Some(&2));
        assert_eq!(f.exponents.get(&BigUint::from(3u32)), Some(&1));
        assert_eq!(f.exponents.get(&BigUint::from(5u32)), Some(&-1));
        assert_eq!(f.value(), Rational::new(-12, 5));
        assert!(Rational::zero().factor().is_none());
        assert!(Rational::one().factor().unwrap().exponents.is_empty());
    }

    #[test]
    fn powers() {
        assert_eq!(Rational::new(2, 3).pow(3), Some(Rational::new(8, 27)));
        assert_eq!(Rational::new(2, 3).pow(-2), Some(Rational::new(9, 4)));
        assert_eq!(Rational::zero().pow(-1), None);
        assert_eq!(Rational::zero().pow(0), Some(Rational::one()));
    }

    #[test]
    fn serde_as_string() {
        let r = Rational::new(5, 7);
        let s = serde_json::to_string(&r).unwrap();
        assert_eq!(s, "\"5/7\"");
        let back: Rational = serde_json::from_str(&s).unwrap();
        assert_eq!(back, r);
        let int: Rational = serde_json::from_str("3").unwrap();
        assert_eq!(int, Rational::from_integer(3));
    }
}
