//! Formulas of arbitrary public announcement logic.
//!
//! Only the primitive constructs are stored. Every derived connective
//! (`&`, `->`, `<->`, `true`, the dual knowledge operator, `<φ>ψ` and `dia`)
//! is built through its abbreviation, so two formulas that mean the same
//! abbreviation are structurally equal.

mod measures;
mod necessity;
mod parser;
mod render;

use std::collections::BTreeSet;

pub use measures::{box_depth, less, size, Order};
pub use necessity::NecessityForm;
pub use parser::{parse, ParseError, ParseErrorKind};
pub use render::render;

/// A formula over atoms and agents named by strings.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Atom(String),
    Bottom,
    Neg(Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Know(String, Box<Formula>),
    /// `[announced] continuation`
    Announce(Box<Formula>, Box<Formula>),
    /// Arbitrary announcement: the continuation holds after every epistemic announcement.
    Box(Box<Formula>),
}

/// Which operator families occur in a formula.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FragmentFlags {
    pub box_free: bool,
    pub announcement_free: bool,
    pub epistemic: bool,
}

impl Formula {
    pub fn atom(name: impl Into<String>) -> Self {
        Formula::Atom(name.into())
    }

    pub fn bottom() -> Self {
        Formula::Bottom
    }

    /// `true`, i.e. `~false`.
    pub fn top() -> Self {
        Formula::neg(Formula::Bottom)
    }

    pub fn neg(f: Formula) -> Self {
        Formula::Neg(Box::new(f))
    }

    pub fn or(left: Formula, right: Formula) -> Self {
        Formula::Or(Box::new(left), Box::new(right))
    }

    /// `left & right` as `~(~left | ~right)`.
    pub fn and(left: Formula, right: Formula) -> Self {
        Formula::neg(Formula::or(Formula::neg(left), Formula::neg(right)))
    }

    /// `antecedent -> consequent` as `~antecedent | consequent`.
    pub fn implies(antecedent: Formula, consequent: Formula) -> Self {
        Formula::or(Formula::neg(antecedent), consequent)
    }

    /// `left <-> right` as `(left -> right) & (right -> left)`.
    pub fn iff(left: Formula, right: Formula) -> Self {
        Formula::and(
            Formula::implies(left.clone(), right.clone()),
            Formula::implies(right, left),
        )
    }

    pub fn know(agent: impl Into<String>, f: Formula) -> Self {
        Formula::Know(agent.into(), Box::new(f))
    }

    /// The dual of knowledge, `~K a ~f`.
    pub fn considers_possible(agent: impl Into<String>, f: Formula) -> Self {
        Formula::neg(Formula::know(agent, Formula::neg(f)))
    }

    pub fn announce(announced: Formula, continuation: Formula) -> Self {
        Formula::Announce(Box::new(announced), Box::new(continuation))
    }

    /// `<announced> continuation` as `~[announced] ~continuation`.
    pub fn announce_dual(announced: Formula, continuation: Formula) -> Self {
        Formula::neg(Formula::announce(announced, Formula::neg(continuation)))
    }

    pub fn boxed(f: Formula) -> Self {
        Formula::Box(Box::new(f))
    }

    /// `dia f` as `~box ~f`.
    pub fn diamond(f: Formula) -> Self {
        Formula::neg(Formula::boxed(Formula::neg(f)))
    }

    /// Immediate subformulas, left to right. For announcements the announced
    /// formula comes first.
    pub fn children(&self) -> Vec<&Formula> {
        match self {
            Formula::Atom(_) | Formula::Bottom => Vec::new(),
            Formula::Neg(f) | Formula::Know(_, f) | Formula::Box(f) => vec![f],
            Formula::Or(l, r) | Formula::Announce(l, r) => vec![l, r],
        }
    }

    pub(crate) fn child_mut(&mut self, index: usize) -> Option<&mut Formula> {
        match (self, index) {
            (Formula::Neg(f) | Formula::Know(_, f) | Formula::Box(f), 0) => Some(f),
            (Formula::Or(l, _) | Formula::Announce(l, _), 0) => Some(l),
            (Formula::Or(_, r) | Formula::Announce(_, r), 1) => Some(r),
            _ => None,
        }
    }

    /// Subformula reached by following child indices from the root.
    pub fn at_path(&self, path: &[usize]) -> Option<&Formula> {
        path.iter()
            .try_fold(self, |f, &i| f.children().get(i).copied())
    }

    /// Number of nodes in the syntax tree.
    pub fn node_count(&self) -> usize {
        1 + self
            .children()
            .iter()
            .map(|c| c.node_count())
            .sum::<usize>()
    }

    /// Proper subformulas (the formula itself is excluded).
    pub fn subformulas(&self) -> BTreeSet<Formula> {
        let mut out = BTreeSet::new();
        fn walk(f: &Formula, out: &mut BTreeSet<Formula>) {
            for c in f.children() {
                if out.insert(c.clone()) {
                    walk(c, out);
                }
            }
        }
        walk(self, &mut out);
        out
    }

    /// Proper subformulas together with the formula itself.
    pub fn subformulas_with_self(&self) -> BTreeSet<Formula> {
        let mut out = self.subformulas();
        out.insert(self.clone());
        out
    }

    pub fn classify(&self) -> FragmentFlags {
        fn walk(f: &Formula, flags: &mut FragmentFlags) {
            match f {
                Formula::Box(_) => flags.box_free = false,
                Formula::Announce(..) => flags.announcement_free = false,
                _ => {}
            }
            for c in f.children() {
                walk(c, flags);
            }
        }
        let mut flags = FragmentFlags {
            box_free: true,
            announcement_free: true,
            epistemic: true,
        };
        walk(self, &mut flags);
        flags.epistemic = flags.box_free && flags.announcement_free;
        flags
    }

    pub fn is_epistemic(&self) -> bool {
        self.classify().epistemic
    }

    pub fn is_box_free(&self) -> bool {
        self.classify().box_free
    }

    /// Atom names occurring in the formula.
    pub fn atoms(&self) -> BTreeSet<&str> {
        let mut out = BTreeSet::new();
        fn walk<'a>(f: &'a Formula, out: &mut BTreeSet<&'a str>) {
            if let Formula::Atom(p) = f {
                out.insert(p.as_str());
            }
            for c in f.children() {
                walk(c, out);
            }
        }
        walk(self, &mut out);
        out
    }

    /// Matches `~antecedent | consequent`.
    pub fn as_implication(&self) -> Option<(&Formula, &Formula)> {
        match self {
            Formula::Or(l, r) => match l.as_ref() {
                Formula::Neg(a) => Some((a, r)),
                _ => None,
            },
            _ => None,
        }
    }

    /// Matches `~(~left | ~right)`.
    pub fn as_conjunction(&self) -> Option<(&Formula, &Formula)> {
        match self {
            Formula::Neg(inner) => match inner.as_ref() {
                Formula::Or(l, r) => match (l.as_ref(), r.as_ref()) {
                    (Formula::Neg(a), Formula::Neg(b)) => Some((a, b)),
                    _ => None,
                },
                _ => None,
            },
            _ => None,
        }
    }

    /// Matches the expansion of `left <-> right`.
    pub fn as_equivalence(&self) -> Option<(&Formula, &Formula)> {
        let (forward, backward) = self.as_conjunction()?;
        let (a, b) = forward.as_implication()?;
        let (b2, a2) = backward.as_implication()?;
        (a == a2 && b == b2).then_some((a, b))
    }
}

impl std::fmt::Display for Formula {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&render(self))
    }
}

impl std::str::FromStr for Formula {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}
