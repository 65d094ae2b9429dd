//! JSON run configuration. Rationals are written as strings, `"a/b"`.

use std::collections::BTreeMap;
use std::path::Path;

use serde::Deserialize;

use polystrata::admissible::AdmissibleSet;
use polystrata::correspondence::default_weights;
use polystrata::{phi_hom, PoissonParams, QuantumParams, Rational};

use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Poisson,
    Quantum,
    Paired,
}

/// Either the full `n × n` matrix or its strict upper triangle, row by row.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum GammaSpec {
    Matrix(Vec<Vec<Rational>>),
    Upper(Vec<Rational>),
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub mode: Mode,
    #[serde(default)]
    pub n: Option<usize>,
    #[serde(default)]
    pub gamma: Option<GammaSpec>,
    pub p: Vec<Rational>,
    pub q: Vec<Rational>,
    /// Keyed by prime, e.g. `{"2": "1"}`.
    #[serde(default)]
    pub phi_weights: Option<BTreeMap<String, Rational>>,
    /// Admissible sets as lists of element names.
    #[serde(default)]
    pub sets: Vec<Vec<String>>,
}

/// A validated configuration.
#[derive(Clone, Debug)]
pub struct Setup {
    pub mode: Mode,
    pub n: usize,
    pub poisson: Option<PoissonParams>,
    pub quantum: Option<QuantumParams>,
    pub weights: Option<BTreeMap<u64, Rational>>,
    pub sets: Vec<AdmissibleSet>,
}

fn bad(msg: impl std::fmt::Display) -> CliError {
    CliError::Config(msg.to_string())
}

impl Config {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(bad)
    }

    pub fn load(path: &Path) -> Result<Setup, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| bad(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)?.validate()
    }

    pub fn validate(self) -> Result<Setup, CliError> {
        let n = self.p.len();
        if let Some(k) = self.n {
            if k != n {
                return Err(bad(format!("n = {k} but p has {n} entries")));
            }
        }
        if n == 0 {
            return Err(bad("p and q must be nonempty"));
        }
        if self.q.len() != n {
            return Err(bad(format!("p has {n} entries but q has {}", self.q.len())));
        }

        let weights = match &self.phi_weights {
            None => None,
            Some(w) => Some(
                w.iter()
                    .map(|(k, v)| {
                        let p: u64 = k.parse().map_err(|_| bad(format!("phi_weights key {k:?} is not a prime")))?;
                        Ok((p, v.clone()))
                    })
                    .collect::<Result<BTreeMap<_, _>, CliError>>()?,
            ),
        };

        let gamma = self.gamma.unwrap_or(GammaSpec::Upper(Vec::new()));
        let mut setup = Setup {
            mode: self.mode,
            n,
            poisson: None,
            quantum: None,
            weights,
            sets: Vec::new(),
        };
        match self.mode {
            Mode::Poisson => {
                setup.poisson = Some(match gamma {
                    GammaSpec::Matrix(g) => PoissonParams::new(g, self.p, self.q)?,
                    GammaSpec::Upper(u) => PoissonParams::from_upper(&u, self.p, self.q)?,
                });
            }
            Mode::Quantum | Mode::Paired => {
                let q = match gamma {
                    GammaSpec::Matrix(g) => QuantumParams::new(g, self.p, self.q)?,
                    GammaSpec::Upper(u) => QuantumParams::from_upper(&u, self.p, self.q)?,
                };
                if self.mode == Mode::Paired {
                    if setup.weights.is_none() {
                        setup.weights = default_weights(&q);
                    }
                    let Some(w) = &setup.weights else {
                        return Err(bad("paired mode needs phi_weights: the parameters involve more than one prime"));
                    };
                    let phi = phi_hom(&q, w)?;
                    setup.poisson = Some(phi.poisson_params()?);
                }
                setup.quantum = Some(q);
            }
        }
        setup.sets = self
            .sets
            .iter()
            .map(|names| AdmissibleSet::parse(n, names))
            .collect::<Result<_, _>>()?;
        Ok(setup)
    }
}
