use std::fmt;

use thiserror::Error;

use super::{is_instance, AxiomName};
use crate::syntax::{parse, Formula, ParseError};

/// How a step is justified. Step references are 1-based, as in derivation files.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Justification {
    Axiom(AxiomName),
    /// Modus ponens from `from` and the implication at `implication`.
    R0 {
        from: usize,
        implication: usize,
    },
    /// Knowledge necessitation.
    R1 {
        from: usize,
        agent: String,
    },
    /// Announcement necessitation.
    R2 {
        from: usize,
        announced: Formula,
    },
    /// `box` necessitation.
    R3 {
        from: usize,
    },
}

impl Justification {
    fn references(&self) -> Vec<usize> {
        match self {
            Justification::Axiom(_) => vec![],
            Justification::R0 { from, implication } => vec![*from, *implication],
            Justification::R1 { from, .. }
            | Justification::R2 { from, .. }
            | Justification::R3 { from } => vec![*from],
        }
    }
}

impl fmt::Display for Justification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Justification::Axiom(a) => write!(f, "{a}"),
            Justification::R0 { from, implication } => write!(f, "R0 {from} {implication}"),
            Justification::R1 { from, agent } => write!(f, "R1 {from} {agent}"),
            Justification::R2 { from, announced } => write!(f, "R2 {from} [{announced}]"),
            Justification::R3 { from } => write!(f, "R3 {from}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationStep {
    pub formula: Formula,
    pub justification: Justification,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Derivation {
    pub steps: Vec<DerivationStep>,
}

impl Derivation {
    pub fn push(&mut self, formula: Formula, justification: Justification) -> usize {
        self.steps.push(DerivationStep {
            formula,
            justification,
        });
        self.steps.len()
    }

    /// The formula proved by the last step.
    pub fn conclusion(&self) -> Option<&Formula> {
        self.steps.last().map(|s| &s.formula)
    }
}

impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, step) in self.steps.iter().enumerate() {
            writeln!(f, "{}. {} ; {}", i + 1, step.formula, step.justification)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Accept,
    /// `step` is 1-based.
    Reject {
        step: usize,
        reason: String,
    },
}

impl Verdict {
    pub fn is_accept(&self) -> bool {
        matches!(self, Verdict::Accept)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Accept => f.write_str("accept"),
            Verdict::Reject { step, reason } => write!(f, "reject at step {step}: {reason}"),
        }
    }
}

/// Checks every step against its cited axiom schema or rule.
pub fn check_derivation(d: &Derivation) -> Verdict {
    for (i, step) in d.steps.iter().enumerate() {
        let n = i + 1;
        let reject = |reason: String| Verdict::Reject { step: n, reason };
        if let Some(bad) = step
            .justification
            .references()
            .into_iter()
            .find(|&r| r == 0 || r >= n)
        {
            return reject(format!(
                "reference to step {bad}, which does not precede it"
            ));
        }
        let premise = |r: usize| &d.steps[r - 1].formula;
        let f = &step.formula;
        match &step.justification {
            Justification::Axiom(a) => {
                if !is_instance(f, *a) {
                    return reject(format!("not an instance of {a}"));
                }
            }
            Justification::R0 { from, implication } => {
                match premise(*implication).as_implication() {
                    Some((ante, cons)) if ante == premise(*from) && cons == f => {}
                    _ => {
                        return reject(format!(
                            "no implication premise: step {implication} is not `{} -> {}`",
                            premise(*from),
                            f
                        ))
                    }
                }
            }
            Justification::R1 { from, agent } => {
                if *f != Formula::know(agent.clone(), premise(*from).clone()) {
                    return reject(format!("not K {agent} applied to step {from}"));
                }
            }
            Justification::R2 { from, announced } => {
                if *f != Formula::announce(announced.clone(), premise(*from).clone()) {
                    return reject(format!("not [{announced}] applied to step {from}"));
                }
            }
            Justification::R3 { from } => {
                if *f != Formula::boxed(premise(*from).clone()) {
                    return reject(format!("not box applied to step {from}"));
                }
            }
        }
    }
    Verdict::Accept
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DerivationError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: formula: {source}")]
    Formula {
        line: usize,
        #[source]
        source: ParseError,
    },
}

/// Reads the line format `<n>. <formula> ; <justification>`.
///
/// Blank lines and text after `#` are ignored; steps must be numbered 1, 2, ...
pub fn parse_derivation(text: &str) -> Result<Derivation, DerivationError> {
    let mut d = Derivation::default();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap().trim();
        if content.is_empty() {
            continue;
        }
        let syntax = |message: String| DerivationError::Syntax { line, message };
        let (number, rest) = content
            .split_once('.')
            .ok_or_else(|| syntax("expected `<n>. <formula> ; <justification>`".into()))?;
        let number: usize = number
            .trim()
            .parse()
            .map_err(|_| syntax(format!("bad step number `{}`", number.trim())))?;
        if number != d.steps.len() + 1 {
            return Err(syntax(format!(
                "step numbered {number}, expected {}",
                d.steps.len() + 1
            )));
        }
        let (formula, just) = rest
            .rsplit_once(';')
            .ok_or_else(|| syntax("missing `; <justification>`".into()))?;
        let formula =
            parse(formula.trim()).map_err(|source| DerivationError::Formula { line, source })?;
        let justification = parse_justification(just.trim()).map_err(syntax)?;
        d.push(formula, justification);
    }
    Ok(d)
}

fn parse_justification(text: &str) -> Result<Justification, String> {
    let (rule, args) = text.split_once(char::is_whitespace).unwrap_or((text, ""));
    let args = args.trim();
    let index = |s: &str| {
        s.parse::<usize>()
            .map_err(|_| format!("bad step reference `{s}`"))
    };
    let mut words = args.split_whitespace();
    let mut next = |what: &str| words.next().ok_or_else(|| format!("{rule} needs {what}"));
    match rule {
        "R0" => {
            let from = index(next("a premise step")?)?;
            let implication = index(next("an implication step")?)?;
            Ok(Justification::R0 { from, implication })
        }
        "R1" => {
            let from = index(next("a premise step")?)?;
            let agent = next("an agent")?.to_string();
            Ok(Justification::R1 { from, agent })
        }
        "R2" => {
            let (from, announced) = args
                .split_once(char::is_whitespace)
                .ok_or("R2 needs a premise step and `[formula]`")?;
            let from = index(from)?;
            let announced = announced
                .trim()
                .strip_prefix('[')
                .and_then(|s| s.strip_suffix(']'))
                .ok_or("R2 announcement must be written `[formula]`")?;
            let announced = parse(announced).map_err(|e| e.to_string())?;
            Ok(Justification::R2 { from, announced })
        }
        "R3" => Ok(Justification::R3 {
            from: index(next("a premise step")?)?,
        }),
        "R4" => Err("R4 has infinitely many premises and cannot justify a step".into()),
        _ => {
            if !args.is_empty() {
                return Err(format!("unexpected arguments after {rule}"));
            }
            rule.parse::<AxiomName>().map(Justification::Axiom)
        }
    }
}
