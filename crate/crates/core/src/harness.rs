//! Seeded randomized suites: axiom validity, reduction soundness and
//! agreement between the quotient-based `box` and the subset oracle.

use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::axioms::{AxiomName, FormulaGenerator, Fragment, ModelGenerator};
use crate::checker::{box_oracle, Evaluator};
use crate::rewrite::reduce_to_epistemic;
use crate::syntax::Formula;

#[derive(Clone, Debug)]
pub struct RandTestConfig {
    pub seed: u64,
    pub cases: usize,
    pub max_worlds: usize,
    pub agents: Vec<String>,
    pub atoms: Vec<String>,
}

impl Default for RandTestConfig {
    fn default() -> Self {
        RandTestConfig {
            seed: 0,
            cases: 1000,
            max_worlds: 6,
            agents: vec!["a".into(), "b".into()],
            atoms: vec!["p".into(), "q".into(), "r".into()],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteResult {
    pub name: &'static str,
    pub cases: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
}

impl fmt::Display for SuiteResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} cases, {} failures",
            self.name, self.cases, self.failures
        )?;
        if let Some(first) = &self.first_failure {
            write!(f, " (first: {first})")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RandTestReport {
    pub suites: Vec<SuiteResult>,
}

impl RandTestReport {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(|s| s.failures == 0)
    }
}

impl fmt::Display for RandTestReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.suites {
            writeln!(f, "{s}")?;
        }
        write!(
            f,
            "{}",
            if self.passed() {
                "all suites passed"
            } else {
                "FAILURES"
            }
        )
    }
}

struct Tally {
    name: &'static str,
    cases: usize,
    failures: usize,
    first_failure: Option<String>,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Tally {
            name,
            cases: 0,
            failures: 0,
            first_failure: None,
        }
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(describe());
            }
        }
    }

    fn finish(self) -> SuiteResult {
        SuiteResult {
            name: self.name,
            cases: self.cases,
            failures: self.failures,
            first_failure: self.first_failure,
        }
    }
}

/// Runs every suite with `config.cases` cases each.
pub fn run(config: &RandTestConfig) -> RandTestReport {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let models = ModelGenerator::new(
        config.max_worlds,
        config.agents.clone(),
        config.atoms.clone(),
    );
    let small_models = ModelGenerator {
        max_worlds: config.max_worlds.min(5),
        ..models.clone()
    };
    let formulas = |fragment, size| {
        FormulaGenerator::new(fragment, size)
            .with_atoms(config.atoms.clone())
            .with_agents(config.agents.clone())
            .with_max_box_depth(1)
    };
    let apal = formulas(Fragment::Apal, 8);
    let epistemic = formulas(Fragment::Epistemic, 6);
    let pal = formulas(Fragment::Pal, 14);

    let mut ev = Evaluator::new();

    let mut axioms = Tally::new("axiom-validity");
    for i in 0..config.cases {
        let axiom = AxiomName::SCHEMAS[i % AxiomName::SCHEMAS.len()];
        let psi = if axiom == AxiomName::A13 {
            epistemic.generate(&mut rng)
        } else {
            apal.generate(&mut rng)
        };
        let agent = config
            .agents
            .choose(&mut rng)
            .cloned()
            .unwrap_or_else(|| "a".into());
        let atom = config
            .atoms
            .choose(&mut rng)
            .cloned()
            .unwrap_or_else(|| "p".into());
        let f = axiom.instance(
            apal.generate(&mut rng),
            psi,
            apal.generate(&mut rng),
            &agent,
            &atom,
        );
        let m = models.generate(&mut rng);
        axioms.record(ev.valid_on(&m, &f), || {
            format!("{axiom} instance {f} on {}", m.to_json())
        });
        ev = reset_if_large(ev);
    }

    let mut reduction = Tally::new("reduction-soundness");
    for _ in 0..config.cases {
        let f = pal.generate(&mut rng);
        let m = models.generate(&mut rng);
        let reduced = reduce_to_epistemic(&f)
            .expect("pal formulas are box-free")
            .result;
        let ok = ev.truth_set(&m, &f) == ev.truth_set(&m, &reduced);
        reduction.record(ok, || format!("{f} vs {reduced} on {}", m.to_json()));
        ev = reset_if_large(ev);
    }

    let mut oracle = Tally::new("box-oracle");
    for _ in 0..config.cases {
        let inner = apal.generate(&mut rng);
        let m = small_models.generate(&mut rng);
        let quotient = ev.truth_set(&m, &Formula::boxed(inner.clone()));
        let w = rng.gen_range(0..m.world_count());
        let name = &m.worlds()[w];
        let ok = box_oracle(&m, name, &inner) == Ok(quotient.contains(w));
        oracle.record(ok, || format!("box {inner} at {name} on {}", m.to_json()));
        ev = reset_if_large(ev);
    }

    RandTestReport {
        suites: vec![axioms.finish(), reduction.finish(), oracle.finish()],
    }
}

fn reset_if_large(ev: Evaluator) -> Evaluator {
    match ev.cache() {
        Some(c) if c.len() > 200_000 => Evaluator::new(),
        _ => ev,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_run_passes_and_is_deterministic() {
        let config = RandTestConfig {
            cases: 40,
            seed: 11,
            ..RandTestConfig::default()
        };
        let report = run(&config);
        assert!(report.passed(), "{report}");
        assert_eq!(report, run(&config));
        assert_eq!(report.suites.len(), 3);
    }
}
