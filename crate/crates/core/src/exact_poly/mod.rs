//! Exact arithmetic: rationals, Laurent monomials and polynomials, rule-based reduction.

mod group;
mod monomial;
mod poly;
mod rational;
mod reduce;

pub use group::{group_analysis, GroupAnalysis};
pub use monomial::{Monomial, MonomialDisplay, VarSpec, Vars};
pub use poly::LaurentPoly;
pub(crate) use poly::same_vars;
pub use rational::{PrimeFactorization, Rational};
pub use reduce::{ReductionSystem, Rule, DEFAULT_STEP_BUDGET};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("cannot parse rational {0:?}")]
    ParseRational(String),
    #[error("duplicate variable {0}")]
    DuplicateVariable(String),
    #[error("unknown variable {0}")]
    UnknownVariable(String),
    #[error("operands live over different variable specs")]
    VarSpecMismatch,
    #[error("monomial {0} has a negative exponent on a non-invertible variable")]
    NotAdmitted(String),
    #[error("division by zero")]
    ZeroDivisor,
    #[error("element is not an invertible monomial")]
    NotInvertible,
    #[error("rewrite budget of {0} steps exceeded")]
    BudgetExceeded(usize),
    #[error("invalid rule: {0}")]
    InvalidRule(String),
    #[error("generator {0} is zero")]
    ZeroGenerator(usize),
}
