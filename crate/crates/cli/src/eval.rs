//! Evaluating parsed expressions in one of the four supported algebras.

use polystrata::admissible::AdmissibleSet;
use polystrata::algebra_an::omega;
use polystrata::correspondence::psi_target;
use polystrata::{
    build_an, omega_q, qtorus, Gen, KnMultiplier, LaurentPoly, NCElement, PoissonParams, PoissonStructure, PolyError,
    QTorus, QuantumParams, Vars,
};

use crate::error::CliError;
use crate::expr::{Expr, Var, VarKind};

enum Kind<'a> {
    /// `A_n` on `y_i, x_i`.
    Poisson { params: &'a PoissonParams, s: PoissonStructure },
    /// Log-canonical torus on `Y_i, X_i` with every `Y_i` invertible.
    PoissonTorus(PoissonStructure),
    Quantum { params: &'a QuantumParams, m: KnMultiplier<'a> },
    QuantumTorus(QTorus),
}

pub struct Evaluator<'a> {
    n: usize,
    kind: Kind<'a>,
}

fn unknown(v: &Var) -> CliError {
    PolyError::UnknownVariable(v.to_string()).into()
}

/// Lowercase names and `Omega` live in `A_n` or `K_n`, uppercase names in the matching torus.
fn wants_upper(e: &Expr) -> Result<bool, CliError> {
    let vars = e.vars();
    let upper = vars.iter().any(|v| v.kind.is_upper());
    if upper {
        if let Some(v) = vars.iter().find(|v| !v.kind.is_upper()) {
            return Err(CliError::Usage(format!(
                "{v} cannot be combined with Y/X variables in one expression"
            )));
        }
    }
    Ok(upper)
}

impl<'a> Evaluator<'a> {
    pub fn poisson(params: &'a PoissonParams, sample: &[&Expr]) -> Result<Self, CliError> {
        let upper = sample.iter().try_fold(false, |acc, e| Ok::<_, CliError>(acc | wants_upper(e)?))?;
        let kind = if upper {
            Kind::PoissonTorus(psi_target(params, &AdmissibleSet::empty(params.n()))?)
        } else {
            Kind::Poisson {
                params,
                s: build_an(params)?,
            }
        };
        Ok(Evaluator { n: params.n(), kind })
    }

    pub fn quantum(params: &'a QuantumParams, sample: &Expr, budget: usize) -> Result<Self, CliError> {
        let kind = if wants_upper(sample)? {
            let ys: Vec<Gen> = (1..=params.n()).map(Gen::Y).collect();
            Kind::QuantumTorus(qtorus(params, &[], &ys)?)
        } else {
            Kind::Quantum {
                params,
                m: KnMultiplier::new(params).with_budget(budget),
            }
        };
        Ok(Evaluator { n: params.n(), kind })
    }

    pub fn vars(&self) -> &Vars {
        match &self.kind {
            Kind::Poisson { s, .. } | Kind::PoissonTorus(s) => s.vars(),
            Kind::Quantum { params, .. } => params.vars(),
            Kind::QuantumTorus(t) => t.vars(),
        }
    }

    fn var(&self, v: &Var) -> Result<LaurentPoly, CliError> {
        let in_range = match v.kind {
            VarKind::Omega => v.index <= self.n,
            _ => (1..=self.n).contains(&v.index),
        };
        if !in_range {
            return Err(unknown(v));
        }
        let g = match v.kind {
            VarKind::LowerY | VarKind::UpperY => Gen::Y(v.index),
            VarKind::LowerX | VarKind::UpperX => Gen::X(v.index),
            VarKind::Omega => {
                return match &self.kind {
                    Kind::Poisson { params, .. } => Ok(omega(params, v.index)?),
                    Kind::Quantum { params, .. } => Ok(omega_q(params, v.index)?.as_poly().clone()),
                    _ => Err(unknown(v)),
                }
            }
        };
        let upper_side = matches!(self.kind, Kind::PoissonTorus(_) | Kind::QuantumTorus(_));
        if upper_side != v.kind.is_upper() {
            return Err(unknown(v));
        }
        Ok(LaurentPoly::gen(self.vars(), g.index()))
    }

    fn mul(&mut self, a: &LaurentPoly, b: &LaurentPoly) -> Result<LaurentPoly, CliError> {
        Ok(match &mut self.kind {
            Kind::Poisson { .. } | Kind::PoissonTorus(_) => a * b,
            Kind::Quantum { params, m } => {
                let (a, b) = (NCElement::from_poly(params, a)?, NCElement::from_poly(params, b)?);
                m.mul(&a, &b)?.as_poly().clone()
            }
            Kind::QuantumTorus(t) => t.mul(a, b),
        })
    }

    fn pow(&mut self, a: &LaurentPoly, k: i64) -> Result<LaurentPoly, CliError> {
        match &self.kind {
            Kind::Poisson { .. } | Kind::PoissonTorus(_) => return Ok(a.pow_i(k)?),
            Kind::QuantumTorus(t) => return Ok(t.pow(a, k)?),
            Kind::Quantum { .. } if k < 0 => return Err(PolyError::NotInvertible.into()),
            Kind::Quantum { .. } => {}
        }
        let mut out = LaurentPoly::one(self.vars());
        for _ in 0..k {
            out = self.mul(&out, a)?;
        }
        Ok(out)
    }

    pub fn eval(&mut self, e: &Expr) -> Result<LaurentPoly, CliError> {
        Ok(match e {
            Expr::Num(c) => LaurentPoly::constant(self.vars(), c.clone()),
            Expr::Var(v) => self.var(v)?,
            Expr::Neg(a) => -self.eval(a)?,
            Expr::Sum(a, b) => &self.eval(a)? + &self.eval(b)?,
            Expr::Diff(a, b) => &self.eval(a)? - &self.eval(b)?,
            Expr::Product(a, b) => {
                let (a, b) = (self.eval(a)?, self.eval(b)?);
                self.mul(&a, &b)?
            }
            Expr::Power(a, k) => {
                let a = self.eval(a)?;
                self.pow(&a, *k)?
            }
            Expr::Bracket(a, b) => {
                let (a, b) = (self.eval(a)?, self.eval(b)?);
                match &self.kind {
                    Kind::Poisson { s, .. } | Kind::PoissonTorus(s) => s.bracket(&a, &b)?,
                    _ => return Err(CliError::Usage("brackets are only defined in poisson mode".into())),
                }
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_expr;

    fn poisson(src: &str) -> String {
        let p = PoissonParams::canonical_a();
        let e = parse_expr(src).unwrap();
        Evaluator::poisson(&p, &[&e]).unwrap().eval(&e).unwrap().to_string()
    }

    fn quantum(src: &str) -> Result<String, CliError> {
        let q = QuantumParams::canonical_q();
        let e = parse_expr(src).unwrap();
        Ok(Evaluator::quantum(&q, &e, 10_000)?.eval(&e)?.to_string())
    }

    #[test]
    fn poisson_side() {
        assert_eq!(poisson("{x2, y2}"), "7*y2*x2 + 3*y1*x1");
        assert_eq!(poisson("Omega1"), "3*y1*x1");
        assert_eq!(poisson("y1^2 x1 - (1/3) Omega1"), poisson("y1^2*x1 - y1*x1"));
        assert_eq!(poisson("{Y1, X1}"), "-5*Y1*X1");
        assert_eq!(poisson("{y1, 2}"), "0");
        assert_eq!(poisson("Omega0 + 1"), "1");
    }

    #[test]
    fn quantum_side() {
        assert_eq!(quantum("x1 y1").unwrap(), "4*y1*x1");
        assert_eq!(quantum("x2 y2 - 32 y2 x2").unwrap(), "2*y1*x1");
        assert_eq!(quantum("Y2^-1 Y2").unwrap(), "1");
        assert!(quantum("{y1, x1}").is_err());
        assert!(quantum("y1^-1").is_err());
    }

    #[test]
    fn resolution_errors() {
        let p = PoissonParams::canonical_a();
        for src in ["y3", "y0", "Omega3", "X1^-1"] {
            let e = parse_expr(src).unwrap();
            assert!(Evaluator::poisson(&p, &[&e]).unwrap().eval(&e).is_err(), "{src}");
        }
        let e = parse_expr("y1 Y1").unwrap();
        assert!(Evaluator::poisson(&p, &[&e]).is_err());
    }
}
