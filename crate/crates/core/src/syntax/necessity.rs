use super::Formula;

/// A context with exactly one hole, built from implications, knowledge and
/// announcements. Every chain of `rest` links ends in the single [`NecessityForm::Hole`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum NecessityForm {
    Hole,
    /// `antecedent -> rest`
    Implies(Formula, Box<NecessityForm>),
    Know(String, Box<NecessityForm>),
    /// `[announced] rest`
    Announce(Formula, Box<NecessityForm>),
}

impl NecessityForm {
    pub fn implies(antecedent: Formula, rest: NecessityForm) -> Self {
        NecessityForm::Implies(antecedent, Box::new(rest))
    }

    pub fn know(agent: impl Into<String>, rest: NecessityForm) -> Self {
        NecessityForm::Know(agent.into(), Box::new(rest))
    }

    pub fn announce(announced: Formula, rest: NecessityForm) -> Self {
        NecessityForm::Announce(announced, Box::new(rest))
    }

    /// Replaces the hole with `f`.
    pub fn fill(&self, f: Formula) -> Formula {
        match self {
            NecessityForm::Hole => f,
            NecessityForm::Implies(a, rest) => Formula::implies(a.clone(), rest.fill(f)),
            NecessityForm::Know(agent, rest) => Formula::know(agent.clone(), rest.fill(f)),
            NecessityForm::Announce(a, rest) => Formula::announce(a.clone(), rest.fill(f)),
        }
    }

    /// Number of context layers around the hole.
    pub fn depth(&self) -> usize {
        match self {
            NecessityForm::Hole => 0,
            NecessityForm::Implies(_, rest)
            | NecessityForm::Know(_, rest)
            | NecessityForm::Announce(_, rest) => 1 + rest.depth(),
        }
    }
}
