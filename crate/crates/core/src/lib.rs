//! Exact computation with multiparameter Poisson polynomial algebras, their
//! quantized counterparts, and the admissible-set stratification relating them.

pub mod admissible;
pub mod algebra_an;
pub mod algebra_kn;
pub mod correspondence;
mod error;
pub mod exact_poly;
pub mod poisson;
pub mod random;
pub mod suites;

pub use admissible::{AdmissibleSet, Element, Gen};
pub use algebra_an::{build_an, KElement, PoissonParams};
pub use algebra_kn::{nc_multiply, omega_q, qtorus, s_matrix, KnMultiplier, NCElement, QTorus, QuantumParams};
pub use correspondence::{phi_hom, psi_prime, quotient_map_report, upsilon_prime, verify_psi, verify_upsilon, GeneratorMap, MapReport, PhiSpec};
pub use error::{Error, Result};
pub use exact_poly::{
    group_analysis, GroupAnalysis, LaurentPoly, Monomial, PolyError, Rational, ReductionSystem,
    Rule, VarSpec, Vars,
};
pub use poisson::{
    derivation_check, double_extend, ore_extend, DoubleExtensionSpec, PoissonDerivation,
    PoissonError, PoissonStructure,
};
