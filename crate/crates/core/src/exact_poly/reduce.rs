//! Commutative rule-based reduction to normal form.

use rand::Rng;

use super::poly::same_vars;
use super::{LaurentPoly, Monomial, PolyError, Rational, Vars};

pub const DEFAULT_STEP_BUDGET: usize = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rule {
    pub lead: Monomial,
    pub replacement: LaurentPoly,
}

/// Rewrite rules `lead -> replacement`, each strictly decreasing in the monomial order.
#[derive(Clone, Debug)]
pub struct ReductionSystem {
    vars: Vars,
    rules: Vec<Rule>,
    budget: usize,
}

impl ReductionSystem {
    pub fn new(vars: &Vars, rules: Vec<Rule>) -> Result<Self, PolyError> {
        for (k, r) in rules.iter().enumerate() {
            let shown = r.lead.display(vars).to_string();
            if !same_vars(r.replacement.vars(), vars) {
                return Err(PolyError::VarSpecMismatch);
            }
            if r.lead.exps().iter().any(|&e| e < 0) || r.lead.is_one() || r.lead.len() != vars.len() {
                return Err(PolyError::InvalidRule(format!("bad leading monomial {shown}")));
            }
            if let Some((m, _)) = r.replacement.leading() {
                if *m >= r.lead {
                    return Err(PolyError::InvalidRule(format!(
                        "replacement of {shown} does not decrease"
                    )));
                }
            }
            if rules[..k].iter().any(|o| o.lead == r.lead) {
                return Err(PolyError::InvalidRule(format!("duplicate leading monomial {shown}")));
            }
        }
        Ok(ReductionSystem {
            vars: vars.clone(),
            rules,
            budget: DEFAULT_STEP_BUDGET,
        })
    }

    pub fn empty(vars: &Vars) -> Self {
        ReductionSystem {
            vars: vars.clone(),
            rules: Vec::new(),
            budget: DEFAULT_STEP_BUDGET,
        }
    }

    pub fn with_budget(mut self, budget: usize) -> Self {
        self.budget = budget;
        self
    }

    pub fn budget(&self) -> usize {
        self.budget
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn is_reducible(&self, m: &Monomial) -> bool {
        self.rules.iter().any(|r| r.lead.divides(m))
    }

    /// Normal form: repeatedly rewrite the largest reducible term.
    pub fn reduce(&self, f: &LaurentPoly) -> Result<LaurentPoly, PolyError> {
        self.run(f, |work| {
            work.terms()
                .iter()
                .rev()
                .find_map(|(m, _)| self.rules.iter().position(|r| r.lead.divides(m)).map(|k| (m.clone(), k)))
        })
    }

    /// Same normal form, but each step picks a random reducible term and a random matching rule.
    pub fn reduce_randomized<R: Rng>(&self, f: &LaurentPoly, rng: &mut R) -> Result<LaurentPoly, PolyError> {
        self.run(f, |work| {
            let cands: Vec<(&Monomial, Vec<usize>)> = work
                .terms()
                .keys()
                .filter_map(|m| {
                    let ks: Vec<usize> = (0..self.rules.len()).filter(|&k| self.rules[k].lead.divides(m)).collect();
                    (!ks.is_empty()).then_some((m, ks))
                })
                .collect();
            if cands.is_empty() {
                return None;
            }
            let (m, ks) = &cands[rng.gen_range(0..cands.len())];
            Some(((*m).clone(), ks[rng.gen_range(0..ks.len())]))
        })
    }

    fn run(
        &self,
        f: &LaurentPoly,
        mut pick: impl FnMut(&LaurentPoly) -> Option<(Monomial, usize)>,
    ) -> Result<LaurentPoly, PolyError> {
        if !same_vars(f.vars(), &self.vars) {
            return Err(PolyError::VarSpecMismatch);
        }
        let mut work = f.clone();
        let mut steps = 0usize;
        while let Some((m, k)) = pick(&work) {
            steps += 1;
            if steps > self.budget {
                return Err(PolyError::BudgetExceeded(self.budget));
            }
            let rule = &self.rules[k];
            let c: Rational = work.coeff(&m);
            let cofactor = m.div(&rule.lead);
            let mut removed = LaurentPoly::zero(&self.vars);
            removed.add_term(m, &c);
            work = &(&work - &removed) + &rule.replacement.mul_term(&cofactor, &c);
        }
        Ok(work)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_poly::VarSpec;
    use rand::SeedableRng;
    use std::sync::Arc;

    fn vars() -> Vars {
        Arc::new(VarSpec::new(["y1", "x1", "y2", "x2"]).unwrap())
    }

    #[test]
    fn single_rewrite() {
        let v = vars();
        let g = v.gens();
        let rule = Rule {
            lead: Monomial::from_exps(vec![1, 1, 0, 0]),
            replacement: LaurentPoly::constant(&v, Rational::new(-3, 4)),
        };
        let sys = ReductionSystem::new(&v, vec![rule]).unwrap();
        let f = &g[0] * &g[1].pow(2);
        assert_eq!(sys.reduce(&f).unwrap(), g[1].scale(&Rational::new(-3, 4)));
    }

    #[test]
    fn kill_rules() {
        let v = vars();
        let g = v.gens();
        let kill = |i: usize| Rule {
            lead: Monomial::var(4, i),
            replacement: LaurentPoly::zero(&v),
        };
        let sys = ReductionSystem::new(&v, vec![kill(0)]).unwrap();
        assert_eq!(sys.reduce(&g[2].pow(3)).unwrap(), g[2].pow(3));
        let sys = ReductionSystem::new(&v, vec![kill(1)]).unwrap();
        assert!(sys.reduce(&g[1]).unwrap().is_zero());
    }

    #[test]
    fn rejects_non_decreasing_rule() {
        let v = vars();
        let g = v.gens();
        let bad = Rule {
            lead: Monomial::var(4, 0),
            replacement: g[3].clone(),
        };
        assert!(ReductionSystem::new(&v, vec![bad]).is_err());
    }

    #[test]
    fn budget_is_enforced() {
        let v = vars();
        let g = v.gens();
        let rule = Rule {
            lead: Monomial::var(4, 1),
            replacement: g[0].clone(),
        };
        let sys = ReductionSystem::new(&v, vec![rule]).unwrap().with_budget(2);
        assert!(matches!(sys.reduce(&g[1].pow(5)), Err(PolyError::BudgetExceeded(2))));
    }

    #[test]
    fn randomized_agrees_on_confluent_system() {
        let v = vars();
        let g = v.gens();
        let rules = vec![
            Rule {
                lead: Monomial::var(4, 0),
                replacement: LaurentPoly::zero(&v),
            },
            Rule {
                lead: Monomial::from_exps(vec![0, 0, 1, 1]),
                replacement: LaurentPoly::zero(&v),
            },
        ];
        let sys = ReductionSystem::new(&v, rules).unwrap();
        let f = &(&(&g[0] + &g[1]) * &(&g[2] * &g[3])) + &g[3].pow(2);
        let det = sys.reduce(&f).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            assert_eq!(sys.reduce_randomized(&f, &mut rng).unwrap(), det);
        }
    }
}
