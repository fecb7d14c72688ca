//! Finite S5 Kripke models.
//!
//! Each agent's accessibility relation is stored as a partition of the
//! worlds, so reflexivity, symmetry and transitivity hold by construction.

mod partition;

use std::collections::{BTreeMap, HashMap, HashSet};

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use partition::{bisim_quotient, quotient_model, ClosedSupersets, Partition};

/// A set of worlds, indexed by document order.
pub type WorldSet = FixedBitSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("malformed model document: {0}")]
    Malformed(String),
    #[error("nonempty domain required")]
    EmptyDomain,
    #[error("empty identifier in {0}")]
    EmptyIdentifier(&'static str),
    #[error("duplicate world `{0}`")]
    DuplicateWorld(String),
    #[error("duplicate agent `{0}`")]
    DuplicateAgent(String),
    #[error("no relation given for agent `{0}`")]
    MissingRelation(String),
    #[error("relation given for undeclared agent `{0}`")]
    UndeclaredAgent(String),
    #[error("unknown world `{world}` in {context}")]
    UnknownWorld { context: String, world: String },
    #[error("agent `{agent}`: blocks not disjoint (world `{world}` appears twice)")]
    BlocksNotDisjoint { agent: String, world: String },
    #[error("agent `{agent}`: blocks not covering (world `{world}` missing)")]
    BlocksNotCovering { agent: String, world: String },
    #[error("agent `{0}`: empty block")]
    EmptyBlock(String),
    #[error("restriction to an empty set of worlds")]
    EmptyRestriction,
    #[error("restriction mentions world index {0} outside the model")]
    RestrictionOutside(usize),
}

/// The JSON document layout of a model file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelDocument {
    pub worlds: Vec<String>,
    #[serde(default)]
    pub agents: Vec<String>,
    #[serde(default)]
    pub relations: BTreeMap<String, Vec<Vec<String>>>,
    #[serde(default)]
    pub valuation: BTreeMap<String, Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct AgentPartition {
    // blocks ordered by their first world
    blocks: Vec<WorldSet>,
    class_of: Vec<usize>,
}

impl AgentPartition {
    fn from_class_ids(ids: &[usize], n: usize) -> Self {
        let mut renumber: HashMap<usize, usize> = HashMap::new();
        let mut blocks: Vec<WorldSet> = Vec::new();
        let mut class_of = Vec::with_capacity(n);
        for (w, id) in ids.iter().enumerate() {
            let next = renumber.len();
            let b = *renumber.entry(*id).or_insert(next);
            if b == blocks.len() {
                blocks.push(WorldSet::with_capacity(n));
            }
            blocks[b].insert(w);
            class_of.push(b);
        }
        AgentPartition { blocks, class_of }
    }
}

/// A finite multi-agent S5 model with a finite atom signature.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KripkeModel {
    worlds: Vec<String>,
    agents: Vec<String>,
    relations: Vec<AgentPartition>,
    valuation: BTreeMap<String, WorldSet>,
}

impl KripkeModel {
    /// Builds a model from world names, per-agent blocks and per-atom world lists.
    pub fn from_parts(
        worlds: Vec<String>,
        relations: Vec<(String, Vec<Vec<String>>)>,
        valuation: Vec<(String, Vec<String>)>,
    ) -> Result<Self, ModelError> {
        if worlds.is_empty() {
            return Err(ModelError::EmptyDomain);
        }
        let n = worlds.len();
        let mut index = HashMap::new();
        for (i, w) in worlds.iter().enumerate() {
            if w.is_empty() {
                return Err(ModelError::EmptyIdentifier("worlds"));
            }
            if index.insert(w.as_str(), i).is_some() {
                return Err(ModelError::DuplicateWorld(w.clone()));
            }
        }
        let lookup = |context: &str, w: &str| {
            index
                .get(w)
                .copied()
                .ok_or_else(|| ModelError::UnknownWorld {
                    context: context.to_string(),
                    world: w.to_string(),
                })
        };

        let mut agents = Vec::new();
        let mut parts = Vec::new();
        let mut seen_agents = HashSet::new();
        for (agent, blocks) in relations {
            if agent.is_empty() {
                return Err(ModelError::EmptyIdentifier("agents"));
            }
            if !seen_agents.insert(agent.clone()) {
                return Err(ModelError::DuplicateAgent(agent));
            }
            let mut ids = vec![usize::MAX; n];
            for (b, block) in blocks.iter().enumerate() {
                if block.is_empty() {
                    return Err(ModelError::EmptyBlock(agent));
                }
                for w in block {
                    let i = lookup(&format!("relation of agent `{agent}`"), w)?;
                    if ids[i] != usize::MAX {
                        return Err(ModelError::BlocksNotDisjoint {
                            agent,
                            world: w.clone(),
                        });
                    }
                    ids[i] = b;
                }
            }
            if let Some(missing) = ids.iter().position(|&id| id == usize::MAX) {
                return Err(ModelError::BlocksNotCovering {
                    agent,
                    world: worlds[missing].clone(),
                });
            }
            parts.push(AgentPartition::from_class_ids(&ids, n));
            agents.push(agent);
        }

        let mut val = BTreeMap::new();
        for (atom, ws) in valuation {
            if atom.is_empty() {
                return Err(ModelError::EmptyIdentifier("valuation"));
            }
            let mut set = WorldSet::with_capacity(n);
            for w in &ws {
                set.insert(lookup(&format!("valuation of `{atom}`"), w)?);
            }
            val.insert(atom, set);
        }

        Ok(KripkeModel {
            worlds,
            agents,
            relations: parts,
            valuation: val,
        })
    }

    pub fn from_document(doc: ModelDocument) -> Result<Self, ModelError> {
        let declared: HashSet<&String> = doc.agents.iter().collect();
        if let Some(extra) = doc.relations.keys().find(|a| !declared.contains(a)) {
            return Err(ModelError::UndeclaredAgent(extra.clone()));
        }
        let mut relations = Vec::new();
        let mut relation_map = doc.relations;
        for agent in doc.agents {
            // a repeated agent has already lost its entry
            let blocks = match relation_map.remove(&agent) {
                Some(b) => b,
                None if relations.iter().any(|(a, _)| *a == agent) => {
                    return Err(ModelError::DuplicateAgent(agent))
                }
                None => return Err(ModelError::MissingRelation(agent)),
            };
            relations.push((agent, blocks));
        }
        KripkeModel::from_parts(doc.worlds, relations, doc.valuation.into_iter().collect())
    }

    pub fn to_document(&self) -> ModelDocument {
        let names = |set: &WorldSet| set.ones().map(|i| self.worlds[i].clone()).collect();
        ModelDocument {
            worlds: self.worlds.clone(),
            agents: self.agents.clone(),
            relations: self
                .agents
                .iter()
                .zip(&self.relations)
                .map(|(a, part)| (a.clone(), part.blocks.iter().map(names).collect()))
                .collect(),
            valuation: self
                .valuation
                .iter()
                .map(|(p, set)| (p.clone(), names(set)))
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_document()).expect("model documents always serialize")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(&self.to_document()).expect("model documents always serialize")
    }

    /// Canonical serialization used to identify a model in caches.
    pub fn fingerprint(&self) -> String {
        self.to_json()
    }

    pub fn worlds(&self) -> &[String] {
        &self.worlds
    }

    pub fn world_count(&self) -> usize {
        self.worlds.len()
    }

    pub fn world_index(&self, name: &str) -> Option<usize> {
        self.worlds.iter().position(|w| w == name)
    }

    pub fn agents(&self) -> &[String] {
        &self.agents
    }

    pub fn agent_index(&self, name: &str) -> Option<usize> {
        self.agents.iter().position(|a| a == name)
    }

    /// Blocks of the given agent's partition, ordered by first world.
    pub fn blocks(&self, agent: usize) -> &[WorldSet] {
        &self.relations[agent].blocks
    }

    /// Block index of `world` in the agent's partition.
    pub fn class_of(&self, agent: usize, world: usize) -> usize {
        self.relations[agent].class_of[world]
    }

    /// Whether `v` is accessible from `w` for the agent.
    pub fn related(&self, agent: usize, w: usize, v: usize) -> bool {
        self.class_of(agent, w) == self.class_of(agent, v)
    }

    /// Atoms of the signature, in sorted order.
    pub fn atoms(&self) -> impl Iterator<Item = &str> {
        self.valuation.keys().map(String::as_str)
    }

    /// Worlds where the atom holds; `None` for atoms outside the signature.
    pub fn valuation(&self, atom: &str) -> Option<&WorldSet> {
        self.valuation.get(atom)
    }

    pub fn all_worlds(&self) -> WorldSet {
        let mut set = WorldSet::with_capacity(self.worlds.len());
        set.insert_range(..);
        set
    }

    pub fn empty_set(&self) -> WorldSet {
        WorldSet::with_capacity(self.worlds.len())
    }

    /// Resolves world names to a set.
    pub fn world_set<S: AsRef<str>>(&self, names: &[S]) -> Result<WorldSet, ModelError> {
        let mut set = self.empty_set();
        for name in names {
            let i = self
                .world_index(name.as_ref())
                .ok_or_else(|| ModelError::UnknownWorld {
                    context: "world set".into(),
                    world: name.as_ref().to_string(),
                })?;
            set.insert(i);
        }
        Ok(set)
    }

    /// Names of the worlds in a set, in document order.
    pub fn names_of(&self, set: &WorldSet) -> Vec<&str> {
        set.ones().map(|i| self.worlds[i].as_str()).collect()
    }

    /// The submodel on `keep`: blocks and valuation are intersected with it.
    pub fn restrict(&self, keep: &WorldSet) -> Result<KripkeModel, ModelError> {
        if let Some(outside) = keep.ones().find(|&i| i >= self.worlds.len()) {
            return Err(ModelError::RestrictionOutside(outside));
        }
        if keep.is_clear() {
            return Err(ModelError::EmptyRestriction);
        }
        let kept: Vec<usize> = keep.ones().collect();
        let m = kept.len();
        let shrink = |set: &WorldSet| {
            let mut out = WorldSet::with_capacity(m);
            for (new, &old) in kept.iter().enumerate() {
                if set.contains(old) {
                    out.insert(new);
                }
            }
            out
        };
        let relations = self
            .relations
            .iter()
            .map(|part| {
                let ids: Vec<usize> = kept.iter().map(|&old| part.class_of[old]).collect();
                AgentPartition::from_class_ids(&ids, m)
            })
            .collect();
        Ok(KripkeModel {
            worlds: kept.iter().map(|&i| self.worlds[i].clone()).collect(),
            agents: self.agents.clone(),
            relations,
            valuation: self
                .valuation
                .iter()
                .map(|(p, set)| (p.clone(), shrink(set)))
                .collect(),
        })
    }

    /// Restriction by world names.
    pub fn restrict_to<S: AsRef<str>>(&self, names: &[S]) -> Result<KripkeModel, ModelError> {
        self.restrict(&self.world_set(names)?)
    }
}

/// Parses and validates a JSON model document.
pub fn load_model(document: &str) -> Result<KripkeModel, ModelError> {
    let doc: ModelDocument =
        serde_json::from_str(document).map_err(|e| ModelError::Malformed(e.to_string()))?;
    KripkeModel::from_document(doc)
}

/// Lifts a set of a restricted model back to the indices of the original,
/// given the set the restriction kept.
pub(crate) fn lift(sub: &WorldSet, kept: &WorldSet) -> WorldSet {
    let mut out = WorldSet::with_capacity(kept.len());
    for (new, old) in kept.ones().enumerate() {
        if sub.contains(new) {
            out.insert(old);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) const M1: &str = r#"{"worlds": ["w","v"], "agents": ["a"],
        "relations": {"a": [["w","v"]]}, "valuation": {"p": ["w"]}}"#;

    #[test]
    fn load_two_world_model() {
        let m = load_model(M1).unwrap();
        assert_eq!(m.worlds(), ["w", "v"]);
        assert_eq!(m.blocks(0).len(), 1);
        assert!(m.related(0, 0, 1));
        assert_eq!(m.names_of(m.valuation("p").unwrap()), ["w"]);
        assert!(m.valuation("q").is_none());
    }

    #[test]
    fn validation_errors() {
        let bad = r#"{"worlds": ["w","v"], "agents": ["a"],
            "relations": {"a": [["w"],["w","v"]]}, "valuation": {}}"#;
        let err = load_model(bad).unwrap_err();
        assert!(matches!(err, ModelError::BlocksNotDisjoint { .. }));
        assert!(err.to_string().contains("blocks not disjoint"));

        let empty = r#"{"worlds": [], "agents": [], "relations": {}, "valuation": {}}"#;
        let err = load_model(empty).unwrap_err();
        assert_eq!(err, ModelError::EmptyDomain);
        assert_eq!(err.to_string(), "nonempty domain required");

        let uncovered = r#"{"worlds": ["w","v"], "agents": ["a"], "relations": {"a": [["w"]]}}"#;
        assert!(matches!(
            load_model(uncovered),
            Err(ModelError::BlocksNotCovering { .. })
        ));

        let unknown = r#"{"worlds": ["w"], "valuation": {"p": ["x"]}}"#;
        assert!(matches!(
            load_model(unknown),
            Err(ModelError::UnknownWorld { .. })
        ));

        let missing = r#"{"worlds": ["w"], "agents": ["a"]}"#;
        assert_eq!(
            load_model(missing),
            Err(ModelError::MissingRelation("a".into()))
        );

        let undeclared = r#"{"worlds": ["w"], "relations": {"b": [["w"]]}}"#;
        assert_eq!(
            load_model(undeclared),
            Err(ModelError::UndeclaredAgent("b".into()))
        );

        assert!(matches!(load_model("{"), Err(ModelError::Malformed(_))));
        assert!(matches!(
            load_model(r#"{"worlds": ["w","w"]}"#),
            Err(ModelError::DuplicateWorld(_))
        ));
    }

    #[test]
    fn restriction() {
        let m = load_model(M1).unwrap();
        let r = m.restrict_to(&["w"]).unwrap();
        assert_eq!(r.worlds(), ["w"]);
        assert_eq!(r.names_of(r.valuation("p").unwrap()), ["w"]);
        assert_eq!(r.blocks(0).len(), 1);

        assert_eq!(m.restrict(&m.all_worlds()).unwrap(), m);
        assert_eq!(
            m.restrict(&m.empty_set()),
            Err(ModelError::EmptyRestriction)
        );
    }

    #[test]
    fn restriction_splits_nothing_but_drops_empty_blocks() {
        let doc = r#"{"worlds": ["a","b","c","d"], "agents": ["x"],
            "relations": {"x": [["a","c"],["b","d"]]}, "valuation": {}}"#;
        let m = load_model(doc).unwrap();
        let r = m.restrict_to(&["a", "c", "d"]).unwrap();
        assert_eq!(
            r.to_document().relations["x"],
            vec![vec!["a", "c"], vec!["d"]]
        );
    }

    #[test]
    fn json_round_trip() {
        let doc = r#"{"worlds": ["x","y","z"], "agents": ["b","a"],
            "relations": {"a": [["z"],["x","y"]], "b": [["y"],["z","x"]]},
            "valuation": {"q": [], "p": ["z","x"]}}"#;
        let m = load_model(doc).unwrap();
        assert_eq!(load_model(&m.to_json()).unwrap(), m);
        assert_eq!(m.agents(), ["b", "a"]);
    }
}
