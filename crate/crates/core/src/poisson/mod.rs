//! Poisson brackets on (Laurent) polynomial rings, Ore extensions, normal elements.

mod derivation;
mod extension;
mod structure;

pub use derivation::{derivation_check, derivation_residual, PoissonDerivation};
pub use extension::{double_extend, ore_extend, ore_residual, DoubleExtensionSpec};
pub use structure::PoissonStructure;

use crate::exact_poly::{LaurentPoly, PolyError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PoissonError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("invalid bracket table: {0}")]
    InvalidTable(String),
    #[error("Jacobi identity fails on ({}, {}, {}): {residual}", triple[0], triple[1], triple[2])]
    Jacobi { triple: [String; 3], residual: LaurentPoly },
    #[error("not a Poisson derivation on ({}, {}): residual {residual}", pair[0], pair[1])]
    NotPoissonDerivation { pair: [String; 2], residual: LaurentPoly },
    #[error("Ore compatibility fails on ({}, {}): residual {residual}", pair[0], pair[1])]
    Compatibility { pair: [String; 2], residual: LaurentPoly },
    #[error("double extension data invalid: {0}")]
    SpecViolation(String),
    #[error("element must be nonzero")]
    ZeroElement,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_poly::{Rational, VarSpec, Vars};
    use std::sync::Arc;

    fn r(n: i64) -> Rational {
        Rational::from_integer(n)
    }

    fn ground() -> PoissonStructure {
        PoissonStructure::trivial(&Arc::new(VarSpec::new(Vec::<String>::new()).unwrap()))
    }

    fn example_one() -> (DoubleExtensionSpec, PoissonStructure) {
        let v: Vars = Arc::new(VarSpec::new(["b", "c"]).unwrap());
        let base = PoissonStructure::trivial(&v);
        let alpha = PoissonDerivation::diagonal(&v, &[r(-2), r(-2)]).unwrap();
        let beta = PoissonDerivation::diagonal(&v, &[r(2), r(2)]).unwrap();
        let g = v.gens();
        let spec = DoubleExtensionSpec {
            base,
            alpha,
            beta,
            c: r(0),
            u: (&g[0] * &g[1]).scale(&r(4)),
            d: Some(r(-4)),
        };
        let ext = double_extend(&spec, "a", "d").unwrap();
        (spec, ext)
    }

    #[test]
    fn example_one_brackets() {
        let (_, s) = example_one();
        let [b, c, a, d] = ["b", "c", "a", "d"].map(|n| s.gen(n).unwrap());
        let e = |x: &LaurentPoly, y: &LaurentPoly| s.bracket(x, y).unwrap();
        assert_eq!(e(&b, &a), (&b * &a).scale(&r(-2)));
        assert_eq!(e(&c, &a), (&c * &a).scale(&r(-2)));
        assert_eq!(e(&b, &d), (&b * &d).scale(&r(2)));
        assert_eq!(e(&c, &d), (&c * &d).scale(&r(2)));
        assert_eq!(e(&a, &d), (&b * &c).scale(&r(4)));
        assert!(e(&b, &c).is_zero());
        assert!(s.jacobi_check());
    }

    #[test]
    fn example_one_normal_element() {
        let (spec, s) = example_one();
        let z = spec.normal_element(&s).unwrap();
        let [b, c, a, d] = ["b", "c", "a", "d"].map(|n| s.gen(n).unwrap());
        assert_eq!(z, &(&a * &d).scale(&r(-4)) + &(&b * &c).scale(&r(4)));
        let eig = s.is_poisson_normal(&z).unwrap().expect("normal");
        assert!(eig["b"].is_zero());
        assert!(eig["c"].is_zero());
        // {y,z} = c y z and {x,z} = -c x z with c = 0
        assert!(eig["a"].is_zero());
        assert!(eig["d"].is_zero());
        let _ = (b, c, a, d);
    }

    #[test]
    fn example_two_weyl() {
        let spec = DoubleExtensionSpec {
            base: ground(),
            alpha: PoissonDerivation::zero(ground().vars()),
            beta: PoissonDerivation::zero(ground().vars()),
            c: r(0),
            u: LaurentPoly::one(ground().vars()),
            d: None,
        };
        let s = double_extend(&spec, "y", "x").unwrap();
        assert_eq!(s.entry_named("y", "x").unwrap(), LaurentPoly::one(s.vars()));
    }

    #[test]
    fn torus_case() {
        let v: Vars = Arc::new(VarSpec::new(["t"]).unwrap());
        let spec = DoubleExtensionSpec {
            base: PoissonStructure::trivial(&v),
            alpha: PoissonDerivation::zero(&v),
            beta: PoissonDerivation::zero(&v),
            c: r(1),
            u: LaurentPoly::zero(&v),
            d: None,
        };
        let s = double_extend(&spec, "y", "x").unwrap();
        let [t, y, x] = ["t", "y", "x"].map(|n| s.gen(n).unwrap());
        assert_eq!(s.bracket(&y, &x).unwrap(), &y * &x);
        assert!(s.bracket(&t, &y).unwrap().is_zero());
        assert!(s.bracket(&t, &x).unwrap().is_zero());
    }

    fn a_one() -> PoissonStructure {
        let v: Vars = Arc::new(VarSpec::new(["y1"]).unwrap());
        let base = PoissonStructure::trivial(&v);
        let alpha = PoissonDerivation::diagonal(&v, &[r(-5)]).unwrap();
        ore_extend(&base, &alpha, &PoissonDerivation::zero(&v), "x1").unwrap()
    }

    #[test]
    fn ore_extend_rank_one() {
        let s = a_one();
        let [y, x] = ["y1", "x1"].map(|n| s.gen(n).unwrap());
        assert_eq!(s.bracket(&y, &x).unwrap(), (&y * &x).scale(&r(-5)));
        assert_eq!(s.table().len(), 1);
    }

    #[test]
    fn ore_extend_trivial() {
        let v: Vars = Arc::new(VarSpec::new(["a", "b"]).unwrap());
        let base = PoissonStructure::trivial(&v);
        let z = PoissonDerivation::zero(&v);
        let s = ore_extend(&base, &z, &z, "x").unwrap();
        assert!(s.table().is_empty());
    }

    fn weyl_base() -> PoissonStructure {
        let v: Vars = Arc::new(VarSpec::new(["y", "x"]).unwrap());
        let mut s = PoissonStructure::trivial(&v);
        s.set(0, 1, LaurentPoly::one(&v)).unwrap();
        s
    }

    #[test]
    fn ore_compatibility_constant_delta_is_accepted() {
        // both sides of the compatibility condition vanish on (y, x)
        let s = weyl_base();
        let v = s.vars().clone();
        let alpha = PoissonDerivation::zero(&v);
        let delta = PoissonDerivation::from_named(&v, &[("y", LaurentPoly::one(&v))]).unwrap();
        assert!(ore_residual(&s, &alpha, &delta, 0, 1).unwrap().is_zero());
        assert!(ore_extend(&s, &alpha, &delta, "t").is_ok());
    }

    #[test]
    fn ore_compatibility_failure_reports_residual() {
        let s = weyl_base();
        let v = s.vars().clone();
        let alpha = PoissonDerivation::zero(&v);
        let delta = PoissonDerivation::from_named(&v, &[("y", LaurentPoly::var(&v, "y").unwrap())]).unwrap();
        match ore_extend(&s, &alpha, &delta, "t") {
            Err(PoissonError::Compatibility { pair, residual }) => {
                assert_eq!(pair, ["y".to_string(), "x".to_string()]);
                assert_eq!(residual, LaurentPoly::constant(&v, r(-1)));
            }
            other => panic!("expected compatibility failure, got {other:?}"),
        }
    }

    #[test]
    fn localized_bracket() {
        let s = a_one().localize(&["y1"]).unwrap();
        let v = s.vars().clone();
        let yinv = LaurentPoly::var(&v, "y1").unwrap().inverse().unwrap();
        let x = LaurentPoly::var(&v, "x1").unwrap();
        assert_eq!(s.bracket(&yinv, &x).unwrap(), (&yinv * &x).scale(&r(5)));
        assert_eq!(a_one().localize::<&str>(&[]).unwrap(), a_one());
    }

    #[test]
    fn localization_matches_quotient_rule() {
        // {a s^-1, b t^-1} against the explicit quotient formula
        let s = a_one().localize(&["y1"]).unwrap();
        let v = s.vars().clone();
        let y = LaurentPoly::var(&v, "y1").unwrap();
        let x = LaurentPoly::var(&v, "x1").unwrap();
        let (a, sd) = (&x * &x, y.clone());
        let (b, td) = (&y + &x, y.pow(2));
        let lhs = s
            .bracket(&(&a * &sd.inverse().unwrap()), &(&b * &td.inverse().unwrap()))
            .unwrap();
        let br = |p: &LaurentPoly, q: &LaurentPoly| s.bracket(p, q).unwrap();
        let num = &(&(&(&br(&a, &b) * &(&sd * &td)) - &(&br(&a, &td) * &(&b * &sd)))
            - &(&br(&sd, &b) * &(&a * &td)))
            + &(&br(&sd, &td) * &(&a * &b));
        let den = &sd.pow(2) * &td.pow(2);
        assert_eq!(lhs, &num * &den.inverse().unwrap());
    }

    #[test]
    fn hamiltonian_is_derivation() {
        let (_, s) = example_one();
        let h = &s.gen("a").unwrap() * &s.gen("b").unwrap();
        let d = PoissonDerivation::hamiltonian(&s, &h).unwrap();
        assert!(derivation_check(&s, &d));
    }

    #[test]
    fn zero_is_not_normal() {
        let s = a_one();
        assert!(matches!(
            s.is_poisson_normal(&LaurentPoly::zero(s.vars())),
            Err(PoissonError::ZeroElement)
        ));
    }

    #[test]
    fn double_extension_checks_conditions() {
        let v: Vars = Arc::new(VarSpec::new(["b"]).unwrap());
        let spec = DoubleExtensionSpec {
            base: PoissonStructure::trivial(&v),
            alpha: PoissonDerivation::diagonal(&v, &[r(1)]).unwrap(),
            beta: PoissonDerivation::zero(&v),
            c: r(0),
            // {b, u} = 0 but (α+β)(b) u = b^2 ≠ 0
            u: LaurentPoly::var(&v, "b").unwrap(),
            d: None,
        };
        assert!(matches!(spec.check(), Err(PoissonError::SpecViolation(_))));
    }
}
