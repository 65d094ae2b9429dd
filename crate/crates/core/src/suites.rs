//! Named verification suites, each runnable on its own with a fixed seed.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::admissible::enumerate;
use crate::algebra_an::{
    build_an, confluence_check, k_stability_check, poisson_ideal_check, verify_lemma_2_3, IdentityReport,
    PoissonParams,
};
use crate::algebra_kn::{KnMultiplier, NCElement, QuantumParams};
use crate::correspondence::{nested_congruence, verify_psi, verify_upsilon};
use crate::error::Result;
use crate::random::random_nonzero_poly;

pub const SUITES: [&str; 7] = [
    "jacobi",
    "lemma2.3",
    "confluence",
    "kstable",
    "associativity",
    "psi",
    "upsilon",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteOutcome {
    pub suite: String,
    pub status: Status,
    pub checks: usize,
    /// At most 20 entries.
    pub failures: Vec<String>,
}

/// What the suites run against. Poisson-only suites skip without `poisson`, and so on.
#[derive(Clone, Debug)]
pub struct SuiteInput {
    pub poisson: Option<PoissonParams>,
    pub quantum: Option<QuantumParams>,
    pub seed: u64,
    pub trials: usize,
}

impl SuiteInput {
    pub fn new(poisson: Option<PoissonParams>, quantum: Option<QuantumParams>) -> Self {
        SuiteInput {
            poisson,
            quantum,
            seed: 0,
            trials: 100,
        }
    }
}

#[derive(Default)]
struct Tally {
    checks: usize,
    failures: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok && self.failures.len() < 20 {
            self.failures.push(what());
        }
    }

    fn report(&mut self, prefix: &str, r: &IdentityReport) {
        for c in &r.checks {
            self.check(c.ok, || format!("{prefix}{}", c.identity));
        }
    }

    fn finish(self, suite: &str) -> SuiteOutcome {
        let status = if self.failures.is_empty() { Status::Pass } else { Status::Fail };
        SuiteOutcome {
            suite: suite.into(),
            status,
            checks: self.checks,
            failures: self.failures,
        }
    }
}

fn skipped(suite: &str) -> SuiteOutcome {
    SuiteOutcome {
        suite: suite.into(),
        status: Status::Skipped,
        checks: 0,
        failures: Vec::new(),
    }
}

fn jacobi(p: &PoissonParams, input: &SuiteInput) -> Result<Tally> {
    let mut t = Tally::default();
    let s = match build_an(p) {
        Ok(s) => s,
        Err(e) => {
            t.check(false, || e.to_string());
            return Ok(t);
        }
    };
    t.check(s.jacobi_failure().is_none(), || "Jacobi identity on generators".into());
    let mut rng = ChaCha8Rng::seed_from_u64(input.seed);
    for _ in 0..input.trials {
        let f = random_nonzero_poly(&mut rng, p.vars(), 3, 3);
        let g = random_nonzero_poly(&mut rng, p.vars(), 3, 3);
        let h = random_nonzero_poly(&mut rng, p.vars(), 3, 3);
        let fg = s.bracket(&f, &g)?;
        t.check(fg == -s.bracket(&g, &f)?, || format!("antisymmetry on {f}, {g}"));
        let lhs = s.bracket(&f, &(&g * &h))?;
        let rhs = &(&s.bracket(&f, &g)? * &h) + &(&g * &s.bracket(&f, &h)?);
        t.check(lhs == rhs, || format!("Leibniz on {f}, {g}, {h}"));
    }
    Ok(t)
}

fn associativity(q: &QuantumParams, input: &SuiteInput) -> Result<Tally> {
    let mut t = Tally::default();
    let mut rng = ChaCha8Rng::seed_from_u64(input.seed);
    let mut m = KnMultiplier::new(q);
    for _ in 0..input.trials {
        let [a, b, c] = [0, 1, 2].map(|_| NCElement::from_poly(q, &random_nonzero_poly(&mut rng, q.vars(), 2, 4)));
        let (a, b, c) = (a?, b?, c?);
        let ab = m.mul(&a, &b)?;
        let bc = m.mul(&b, &c)?;
        t.check(m.mul(&ab, &c)? == m.mul(&a, &bc)?, || format!("(ab)c = a(bc) on {a}, {b}, {c}"));
    }
    Ok(t)
}

/// Run one named suite.
pub fn run_suite(name: &str, input: &SuiteInput) -> Result<SuiteOutcome> {
    let p = input.poisson.as_ref();
    let q = input.quantum.as_ref();
    let tally = match (name, p, q) {
        ("jacobi", Some(p), _) => jacobi(p, input)?,
        ("lemma2.3", Some(p), _) => {
            let mut t = Tally::default();
            t.report("", &verify_lemma_2_3(p)?);
            t
        }
        ("confluence", Some(p), _) => {
            let mut t = Tally::default();
            let mut rng = ChaCha8Rng::seed_from_u64(input.seed);
            for ts in enumerate(p.n()) {
                let bad = confluence_check(p, &ts, input.trials, &mut rng)?;
                t.check(bad == 0, || format!("{ts}: {bad} of {} inputs disagree", input.trials));
            }
            t
        }
        ("kstable", Some(p), _) => {
            let mut t = Tally::default();
            for ts in enumerate(p.n()) {
                t.report(&format!("{ts}: "), &poisson_ideal_check(p, &ts)?);
                t.report(&format!("{ts}: "), &k_stability_check(p, &ts)?);
            }
            t
        }
        ("associativity", _, Some(q)) => associativity(q, input)?,
        ("psi", Some(p), _) => {
            let mut t = Tally::default();
            let all = enumerate(p.n());
            for ts in &all {
                t.report(&format!("{ts}: "), &verify_psi(p, ts)?);
            }
            if p.n() <= 2 {
                for a in &all {
                    for b in all.iter().filter(|b| a.is_subset(b)) {
                        t.report("", &nested_congruence(p, a, b)?);
                    }
                }
            }
            t
        }
        ("upsilon", _, Some(q)) => {
            let mut t = Tally::default();
            for ts in enumerate(q.n()) {
                t.report(&format!("{ts}: "), &verify_upsilon(q, &ts)?);
            }
            t
        }
        (s, _, _) if SUITES.contains(&s) => return Ok(skipped(s)),
        (s, _, _) => {
            return Err(crate::Error::InvalidParams(format!(
                "unknown suite {s:?}; expected one of {} or all",
                SUITES.join(", ")
            )))
        }
    };
    Ok(tally.finish(name))
}

/// Every suite, in the order of `SUITES`.
pub fn run_all(input: &SuiteInput) -> Result<Vec<SuiteOutcome>> {
    SUITES.iter().map(|s| run_suite(s, input)).collect()
}
