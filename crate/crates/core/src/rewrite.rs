//! Elimination of public announcements from `box`-free formulas using the
//! reduction axioms as left-to-right rewrite rules.

use std::fmt;

use thiserror::Error;

use crate::syntax::Formula;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RewriteError {
    #[error("formula contains `box`; only box-free formulas can be reduced: {0}")]
    NotBoxFree(Formula),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rule {
    /// `[φ]p` to `φ -> p`
    A7,
    /// `[φ]false` to `~φ`
    A8,
    /// `[φ]~ψ` to `φ -> ~[φ]ψ`
    A9,
    /// `[φ](ψ | χ)` to `[φ]ψ | [φ]χ`
    A10,
    /// `[φ]K a ψ` to `φ -> K a [φ]ψ`
    A11,
    /// `[φ][ψ]χ` to `[<φ>ψ]χ`
    A12,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Child-index path from the root; announcements number their announced
/// formula 0 and continuation 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Path(pub Vec<usize>);

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("/");
        }
        for i in &self.0 {
            write!(f, "/{i}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteStep {
    pub rule: Rule,
    pub position: Path,
    pub before: Formula,
    pub after: Formula,
}

impl fmt::Display for RewriteStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} @ {}: {} ==> {}",
            self.rule, self.position, self.before, self.after
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteTrace {
    pub start: Formula,
    pub steps: Vec<RewriteStep>,
    pub result: Formula,
}

impl fmt::Display for RewriteTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for step in &self.steps {
            writeln!(f, "{step}")?;
        }
        Ok(())
    }
}

/// Termination measure: additive on every constructor except announcements,
/// where `weight([φ]ψ) = (4 + weight(φ)) * weight(ψ)`.
pub fn weight(f: &Formula) -> u64 {
    match f {
        Formula::Atom(_) | Formula::Bottom => 1,
        Formula::Neg(g) | Formula::Know(_, g) | Formula::Box(g) => weight(g).saturating_add(1),
        Formula::Or(l, r) => weight(l).saturating_add(weight(r)).saturating_add(1),
        Formula::Announce(a, c) => weight(a).saturating_add(4).saturating_mul(weight(c)),
    }
}

/// The rule that rewrites `f` at its root, with the result.
pub fn apply_at_root(f: &Formula) -> Option<(Rule, Formula)> {
    let Formula::Announce(phi, cont) = f else {
        return None;
    };
    let phi = phi.as_ref();
    let out = match cont.as_ref() {
        Formula::Atom(_) => (Rule::A7, Formula::implies(phi.clone(), (**cont).clone())),
        Formula::Bottom => (Rule::A8, Formula::neg(phi.clone())),
        Formula::Neg(psi) => (
            Rule::A9,
            Formula::implies(
                phi.clone(),
                Formula::neg(Formula::announce(phi.clone(), (**psi).clone())),
            ),
        ),
        Formula::Or(psi, chi) => (
            Rule::A10,
            Formula::or(
                Formula::announce(phi.clone(), (**psi).clone()),
                Formula::announce(phi.clone(), (**chi).clone()),
            ),
        ),
        Formula::Know(agent, psi) => (
            Rule::A11,
            Formula::implies(
                phi.clone(),
                Formula::know(
                    agent.clone(),
                    Formula::announce(phi.clone(), (**psi).clone()),
                ),
            ),
        ),
        Formula::Announce(psi, chi) => (
            Rule::A12,
            Formula::announce(
                Formula::announce_dual(phi.clone(), (**psi).clone()),
                (**chi).clone(),
            ),
        ),
        Formula::Box(_) => return None,
    };
    Some(out)
}

// Redex search order: an announcement's announced formula first, then the
// announcement itself, then its continuation; other nodes left to right.
fn find_redex(f: &Formula, path: &mut Vec<usize>) -> Option<(Rule, Formula)> {
    match f {
        Formula::Announce(announced, continuation) => {
            path.push(0);
            if let Some(hit) = find_redex(announced, path) {
                return Some(hit);
            }
            path.pop();
            if let Some(hit) = apply_at_root(f) {
                return Some(hit);
            }
            path.push(1);
            if let Some(hit) = find_redex(continuation, path) {
                return Some(hit);
            }
            path.pop();
            None
        }
        _ => {
            for (i, c) in f.children().into_iter().enumerate() {
                path.push(i);
                if let Some(hit) = find_redex(c, path) {
                    return Some(hit);
                }
                path.pop();
            }
            None
        }
    }
}

fn replace_at(f: &Formula, path: &[usize], replacement: Formula) -> Formula {
    let mut out = f.clone();
    let mut slot = &mut out;
    for &i in path {
        slot = slot.child_mut(i).expect("path points into the formula");
    }
    *slot = replacement;
    out
}

/// One rewrite step, or `None` when `f` has no announcement left.
pub fn reduce_step(f: &Formula) -> Result<Option<RewriteStep>, RewriteError> {
    if !f.is_box_free() {
        return Err(RewriteError::NotBoxFree(f.clone()));
    }
    Ok(step_unchecked(f))
}

fn step_unchecked(f: &Formula) -> Option<RewriteStep> {
    let mut path = Vec::new();
    let (rule, rhs) = find_redex(f, &mut path)?;
    let after = replace_at(f, &path, rhs);
    Some(RewriteStep {
        rule,
        position: Path(path),
        before: f.clone(),
        after,
    })
}

/// Rewrites to a fixed point; the result is epistemic.
pub fn reduce_to_epistemic(f: &Formula) -> Result<RewriteTrace, RewriteError> {
    if !f.is_box_free() {
        return Err(RewriteError::NotBoxFree(f.clone()));
    }
    let mut steps = Vec::new();
    let mut current = f.clone();
    while let Some(step) = step_unchecked(&current) {
        debug_assert!(weight(&step.after) < weight(&step.before));
        current = step.after.clone();
        steps.push(step);
    }
    Ok(RewriteTrace {
        start: f.clone(),
        steps,
        result: current,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse, render};

    fn p(s: &str) -> Formula {
        parse(s).unwrap()
    }

    #[test]
    fn weights() {
        assert_eq!(weight(&p("p")), 1);
        assert_eq!(weight(&p("[p]q")), 5);
        assert_eq!(weight(&p("[p]~q")), 10);
        assert_eq!(weight(&p("p -> ~[p]q")), 9);
    }

    #[test]
    fn single_steps() {
        let step = reduce_step(&p("[p]q")).unwrap().unwrap();
        assert_eq!(step.rule, Rule::A7);
        assert_eq!(step.after, p("p -> q"));
        assert_eq!(step.position, Path(vec![]));

        assert_eq!(reduce_step(&p("K a p")).unwrap(), None);

        let step = reduce_step(&p("[p][q]r")).unwrap().unwrap();
        assert_eq!(step.rule, Rule::A12);
        assert_eq!(step.after, p("[~[p]~q]r"));
        assert_eq!(step.after, p("[<p>q]r"));

        assert!(reduce_step(&p("box p")).is_err());
    }

    #[test]
    fn step_positions() {
        let step = reduce_step(&p("q | K a [p]false")).unwrap().unwrap();
        assert_eq!(step.rule, Rule::A8);
        assert_eq!(step.position, Path(vec![1, 0]));
        assert_eq!(step.after, p("q | K a ~p"));
        assert_eq!(
            step.to_string(),
            "A8 @ /1/0: q | K a [p] false ==> q | K a ~p"
        );
    }

    #[test]
    fn announced_formula_reduced_first() {
        let step = reduce_step(&p("[[p]q]r")).unwrap().unwrap();
        assert_eq!(step.position, Path(vec![0]));
        assert_eq!(step.rule, Rule::A7);
    }

    #[test]
    fn full_reductions() {
        let trace = reduce_to_epistemic(&p("[p]K a q")).unwrap();
        assert_eq!(render(&trace.result), "p -> K a (p -> q)");
        assert_eq!(
            trace.steps.iter().map(|s| s.rule).collect::<Vec<_>>(),
            [Rule::A11, Rule::A7]
        );

        let trace = reduce_to_epistemic(&p("p | q")).unwrap();
        assert!(trace.steps.is_empty());
        assert_eq!(trace.result, p("p | q"));

        let trace = reduce_to_epistemic(&p("[p][q]r")).unwrap();
        assert_eq!(trace.steps[0].rule, Rule::A12);
        assert!(trace.result.is_epistemic());
        for w in trace.steps.windows(2) {
            assert_eq!(w[0].after, w[1].before);
        }
    }
}
