//! The finitary part of the APAL axiom system: schema recognition,
//! propositional tautology checking and derivation checking.

mod derivation;
mod generate;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::syntax::{Formula, NecessityForm};

pub use derivation::{
    check_derivation, parse_derivation, Derivation, DerivationError, DerivationStep, Justification,
    Verdict,
};
pub use generate::{
    enumerate_models, gen_formula, gen_model, FormulaGenerator, Fragment, ModelGenerator,
};

/// Cap on opaque letters for truth-table checking.
pub const MAX_TAUTOLOGY_LETTERS: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AxiomName {
    A0,
    A1,
    A2,
    A3,
    A4,
    A5,
    A6,
    A7,
    A8,
    A9,
    A10,
    A11,
    A12,
    A13,
}

impl AxiomName {
    pub const ALL: [AxiomName; 14] = [
        AxiomName::A0,
        AxiomName::A1,
        AxiomName::A2,
        AxiomName::A3,
        AxiomName::A4,
        AxiomName::A5,
        AxiomName::A6,
        AxiomName::A7,
        AxiomName::A8,
        AxiomName::A9,
        AxiomName::A10,
        AxiomName::A11,
        AxiomName::A12,
        AxiomName::A13,
    ];

    /// The schemas other than A0, in matching order.
    pub const SCHEMAS: [AxiomName; 13] = [
        AxiomName::A1,
        AxiomName::A2,
        AxiomName::A3,
        AxiomName::A4,
        AxiomName::A5,
        AxiomName::A6,
        AxiomName::A7,
        AxiomName::A8,
        AxiomName::A9,
        AxiomName::A10,
        AxiomName::A11,
        AxiomName::A12,
        AxiomName::A13,
    ];

    /// Instantiates the schema. `phi`, `psi`, `chi` fill the schema's
    /// metavariables in order of first appearance; A7 uses `atom` for its
    /// atom position. A13 is only an axiom when `psi` is epistemic.
    pub fn instance(
        self,
        phi: Formula,
        psi: Formula,
        chi: Formula,
        agent: &str,
        atom: &str,
    ) -> Formula {
        use Formula as F;
        let k = |f: Formula| F::know(agent, f);
        let ann = F::announce;
        match self {
            AxiomName::A0 => F::implies(phi.clone(), F::implies(psi, phi)),
            AxiomName::A1 => F::implies(
                k(F::implies(phi.clone(), psi.clone())),
                F::implies(k(phi), k(psi)),
            ),
            AxiomName::A2 => F::implies(
                ann(phi.clone(), F::implies(psi.clone(), chi.clone())),
                F::implies(ann(phi.clone(), psi), ann(phi, chi)),
            ),
            AxiomName::A3 => F::implies(
                F::boxed(F::implies(phi.clone(), psi.clone())),
                F::implies(F::boxed(phi), F::boxed(psi)),
            ),
            AxiomName::A4 => F::implies(k(phi.clone()), phi),
            AxiomName::A5 => F::implies(k(phi.clone()), k(k(phi))),
            AxiomName::A6 => F::implies(phi.clone(), k(F::considers_possible(agent, phi))),
            AxiomName::A7 => {
                let p = F::atom(atom);
                F::iff(ann(phi.clone(), p.clone()), F::implies(phi, p))
            }
            AxiomName::A8 => F::iff(ann(phi.clone(), F::Bottom), F::neg(phi)),
            AxiomName::A9 => F::iff(
                ann(phi.clone(), F::neg(psi.clone())),
                F::implies(phi.clone(), F::neg(ann(phi, psi))),
            ),
            AxiomName::A10 => F::iff(
                ann(phi.clone(), F::or(psi.clone(), chi.clone())),
                F::or(ann(phi.clone(), psi), ann(phi, chi)),
            ),
            AxiomName::A11 => F::iff(
                ann(phi.clone(), k(psi.clone())),
                F::implies(phi.clone(), k(ann(phi, psi))),
            ),
            AxiomName::A12 => F::iff(
                ann(phi.clone(), ann(psi.clone(), chi.clone())),
                ann(F::announce_dual(phi, psi), chi),
            ),
            AxiomName::A13 => F::implies(F::boxed(phi.clone()), ann(psi, phi)),
        }
    }
}

impl fmt::Display for AxiomName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FromStr for AxiomName {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        AxiomName::ALL
            .into_iter()
            .find(|a| a.to_string() == s)
            .ok_or_else(|| format!("unknown axiom `{s}`"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TautologyError {
    #[error("{found} opaque letters exceed the truth-table limit of {limit}")]
    TooManyLetters { found: usize, limit: usize },
}

/// Whether `f` is an instance of a propositional tautology, treating atoms,
/// knowledge, announcement and `box` subformulas as opaque letters.
pub fn is_tautology_instance(f: &Formula) -> Result<bool, TautologyError> {
    let mut letters: Vec<&Formula> = Vec::new();
    fn collect<'a>(f: &'a Formula, letters: &mut Vec<&'a Formula>) {
        match f {
            Formula::Bottom => {}
            Formula::Neg(g) => collect(g, letters),
            Formula::Or(l, r) => {
                collect(l, letters);
                collect(r, letters);
            }
            _ => {
                if !letters.contains(&f) {
                    letters.push(f);
                }
            }
        }
    }
    collect(f, &mut letters);
    if letters.len() > MAX_TAUTOLOGY_LETTERS {
        return Err(TautologyError::TooManyLetters {
            found: letters.len(),
            limit: MAX_TAUTOLOGY_LETTERS,
        });
    }

    fn eval(f: &Formula, letters: &[&Formula], assignment: u32) -> bool {
        match f {
            Formula::Bottom => false,
            Formula::Neg(g) => !eval(g, letters, assignment),
            Formula::Or(l, r) => eval(l, letters, assignment) || eval(r, letters, assignment),
            _ => {
                let i = letters.iter().position(|l| *l == f).unwrap();
                assignment & (1 << i) != 0
            }
        }
    }
    Ok((0..1u32 << letters.len()).all(|a| eval(f, &letters, a)))
}

fn imp(f: &Formula) -> Option<(&Formula, &Formula)> {
    f.as_implication()
}

fn iff(f: &Formula) -> Option<(&Formula, &Formula)> {
    f.as_equivalence()
}

fn know(f: &Formula) -> Option<(&str, &Formula)> {
    match f {
        Formula::Know(a, g) => Some((a, g)),
        _ => None,
    }
}

fn ann(f: &Formula) -> Option<(&Formula, &Formula)> {
    match f {
        Formula::Announce(a, c) => Some((a, c)),
        _ => None,
    }
}

fn boxed(f: &Formula) -> Option<&Formula> {
    match f {
        Formula::Box(g) => Some(g),
        _ => None,
    }
}

fn neg(f: &Formula) -> Option<&Formula> {
    match f {
        Formula::Neg(g) => Some(g),
        _ => None,
    }
}

/// Whether `f` is an instance of the named schema.
pub fn is_instance(f: &Formula, axiom: AxiomName) -> bool {
    let matched = match axiom {
        AxiomName::A0 => return is_tautology_instance(f).unwrap_or(false),
        AxiomName::A1 => (|| {
            let (lhs, rhs) = imp(f)?;
            let (a, inner) = know(lhs)?;
            let (phi, psi) = imp(inner)?;
            let (kphi, kpsi) = imp(rhs)?;
            let (a1, phi1) = know(kphi)?;
            let (a2, psi1) = know(kpsi)?;
            Some(a == a1 && a == a2 && phi == phi1 && psi == psi1)
        })(),
        AxiomName::A2 => (|| {
            let (lhs, rhs) = imp(f)?;
            let (phi, inner) = ann(lhs)?;
            let (psi, chi) = imp(inner)?;
            let (l, r) = imp(rhs)?;
            let (phi1, psi1) = ann(l)?;
            let (phi2, chi1) = ann(r)?;
            Some(phi == phi1 && phi == phi2 && psi == psi1 && chi == chi1)
        })(),
        AxiomName::A3 => (|| {
            let (lhs, rhs) = imp(f)?;
            let (phi, psi) = imp(boxed(lhs)?)?;
            let (l, r) = imp(rhs)?;
            Some(boxed(l)? == phi && boxed(r)? == psi)
        })(),
        AxiomName::A4 => (|| {
            let (lhs, rhs) = imp(f)?;
            let (_, phi) = know(lhs)?;
            Some(phi == rhs)
        })(),
        AxiomName::A5 => (|| {
            let (lhs, rhs) = imp(f)?;
            let (a, phi) = know(lhs)?;
            let (a1, inner) = know(rhs)?;
            let (a2, phi1) = know(inner)?;
            Some(a == a1 && a == a2 && phi == phi1)
        })(),
        AxiomName::A6 => (|| {
            let (phi, rhs) = imp(f)?;
            let (a, inner) = know(rhs)?;
            let (a1, negated) = know(neg(inner)?)?;
            Some(a == a1 && neg(negated)? == phi)
        })(),
        AxiomName::A7 => (|| {
            let (lhs, rhs) = iff(f)?;
            let (phi, p) = ann(lhs)?;
            let (phi1, p1) = imp(rhs)?;
            Some(matches!(p, Formula::Atom(_)) && phi == phi1 && p == p1)
        })(),
        AxiomName::A8 => (|| {
            let (lhs, rhs) = iff(f)?;
            let (phi, bot) = ann(lhs)?;
            Some(*bot == Formula::Bottom && neg(rhs)? == phi)
        })(),
        AxiomName::A9 => (|| {
            let (lhs, rhs) = iff(f)?;
            let (phi, negated) = ann(lhs)?;
            let psi = neg(negated)?;
            let (phi1, r) = imp(rhs)?;
            let (phi2, psi1) = ann(neg(r)?)?;
            Some(phi == phi1 && phi == phi2 && psi == psi1)
        })(),
        AxiomName::A10 => (|| {
            let (lhs, rhs) = iff(f)?;
            let (phi, inner) = ann(lhs)?;
            let Formula::Or(psi, chi) = inner else {
                return None;
            };
            let Formula::Or(l, r) = rhs else { return None };
            let (phi1, psi1) = ann(l)?;
            let (phi2, chi1) = ann(r)?;
            Some(phi == phi1 && phi == phi2 && **psi == *psi1 && **chi == *chi1)
        })(),
        AxiomName::A11 => (|| {
            let (lhs, rhs) = iff(f)?;
            let (phi, inner) = ann(lhs)?;
            let (a, psi) = know(inner)?;
            let (phi1, r) = imp(rhs)?;
            let (a1, inner1) = know(r)?;
            let (phi2, psi1) = ann(inner1)?;
            Some(a == a1 && phi == phi1 && phi == phi2 && psi == psi1)
        })(),
        AxiomName::A12 => (|| {
            let (lhs, rhs) = iff(f)?;
            let (phi, inner) = ann(lhs)?;
            let (psi, chi) = ann(inner)?;
            let (dual, chi1) = ann(rhs)?;
            Some(*dual == Formula::announce_dual(phi.clone(), psi.clone()) && chi == chi1)
        })(),
        AxiomName::A13 => (|| {
            let (lhs, rhs) = imp(f)?;
            let phi = boxed(lhs)?;
            let (psi, phi1) = ann(rhs)?;
            Some(phi == phi1 && psi.is_epistemic())
        })(),
    };
    matched.unwrap_or(false)
}

/// The first schema among A1..A13 that `f` instantiates, else A0 when `f` is
/// a tautology instance.
pub fn match_axiom(f: &Formula) -> Option<AxiomName> {
    AxiomName::SCHEMAS
        .into_iter()
        .find(|&a| is_instance(f, a))
        .or_else(|| is_instance(f, AxiomName::A0).then_some(AxiomName::A0))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum R4Error {
    #[error("announcement `{0}` is not epistemic")]
    NonEpistemic(Formula),
}

/// A finite sample of the infinitary rule's premises and its conclusion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct R4Instance {
    pub premises: Vec<Formula>,
    pub conclusion: Formula,
}

/// `nf([ψ]f)` for each supplied epistemic `ψ`, and the conclusion `nf(box f)`.
pub fn r4_premises(
    nf: &NecessityForm,
    f: &Formula,
    announcements: &[Formula],
) -> Result<R4Instance, R4Error> {
    let premises = announcements
        .iter()
        .map(|psi| {
            if psi.is_epistemic() {
                Ok(nf.fill(Formula::announce(psi.clone(), f.clone())))
            } else {
                Err(R4Error::NonEpistemic(psi.clone()))
            }
        })
        .collect::<Result<_, _>>()?;
    Ok(R4Instance {
        premises,
        conclusion: nf.fill(Formula::boxed(f.clone())),
    })
}
