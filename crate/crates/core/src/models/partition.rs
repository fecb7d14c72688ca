use std::collections::HashMap;

use super::{KripkeModel, ModelError, WorldSet};

/// A partition of a model's worlds into blocks, ordered by first world.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    worlds: Vec<String>,
    blocks: Vec<WorldSet>,
    class_of: Vec<usize>,
}

impl Partition {
    fn from_class_ids(worlds: &[String], ids: &[usize]) -> Self {
        let n = worlds.len();
        let mut renumber = HashMap::new();
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
        Partition {
            worlds: worlds.to_vec(),
            blocks,
            class_of,
        }
    }

    pub fn blocks(&self) -> &[WorldSet] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn class_of(&self, world: usize) -> usize {
        self.class_of[world]
    }

    /// Block contents as world names.
    pub fn named_blocks(&self) -> Vec<Vec<&str>> {
        self.blocks
            .iter()
            .map(|b| b.ones().map(|i| self.worlds[i].as_str()).collect())
            .collect()
    }

    /// Whether `set` is a union of blocks.
    pub fn is_closed(&self, set: &WorldSet) -> bool {
        self.blocks
            .iter()
            .all(|b| b.is_subset(set) || b.is_disjoint(set))
    }

    /// Unions of blocks that contain the block of `world` (by name).
    pub fn closed_supersets(&self, world: &str) -> Result<ClosedSupersets<'_>, ModelError> {
        let w = self.worlds.iter().position(|x| x == world).ok_or_else(|| {
            ModelError::UnknownWorld {
                context: "partition".into(),
                world: world.to_string(),
            }
        })?;
        Ok(self.closed_supersets_of(w))
    }

    /// Every nonempty union of blocks, each exactly once.
    pub fn unions(&self) -> impl Iterator<Item = WorldSet> + '_ {
        ClosedSupersets {
            partition: self,
            base: WorldSet::with_capacity(self.worlds.len()),
            others: (0..self.blocks.len()).collect(),
            counter: Some(Vec::new()),
        }
        .skip(1)
    }

    /// Unions of blocks containing the block of world index `world`:
    /// 2^(k-1) sets for k blocks, in binary-counter order over the other blocks.
    pub fn closed_supersets_of(&self, world: usize) -> ClosedSupersets<'_> {
        let own = self.class_of[world];
        ClosedSupersets {
            partition: self,
            base: self.blocks[own].clone(),
            others: (0..self.blocks.len()).filter(|&b| b != own).collect(),
            counter: Some(Vec::new()),
        }
    }
}

/// Iterator over the bisimulation-closed sets containing a fixed world.
pub struct ClosedSupersets<'a> {
    partition: &'a Partition,
    base: WorldSet,
    others: Vec<usize>,
    // bit i selects others[i]; None once exhausted
    counter: Option<Vec<bool>>,
}

impl Iterator for ClosedSupersets<'_> {
    type Item = WorldSet;

    fn next(&mut self) -> Option<WorldSet> {
        let bits = self.counter.as_mut()?;
        bits.resize(self.others.len(), false);
        let mut set = self.base.clone();
        for (i, &on) in bits.iter().enumerate() {
            if on {
                set.union_with(&self.partition.blocks[self.others[i]]);
            }
        }
        // advance the binary counter; overflow ends the stream
        match bits.iter().position(|b| !b) {
            Some(first_zero) => {
                for b in &mut bits[..first_zero] {
                    *b = false;
                }
                bits[first_zero] = true;
            }
            None => self.counter = None,
        }
        Some(set)
    }
}

/// Coarsest partition where blocks agree on every signature atom and every
/// block sees the same set of blocks through each agent's relation.
pub fn bisim_quotient(m: &KripkeModel) -> Partition {
    let n = m.world_count();
    let atom_sets: Vec<&WorldSet> = m.atoms().filter_map(|p| m.valuation(p)).collect();

    let mut ids = number_by_signature((0..n).map(|w| {
        atom_sets
            .iter()
            .map(|s| s.contains(w))
            .collect::<Vec<bool>>()
    }));
    let mut count = ids.iter().max().map_or(0, |&c| c + 1);

    loop {
        // classes visible from each agent block
        let views: Vec<Vec<Vec<usize>>> = (0..m.agents().len())
            .map(|a| {
                m.blocks(a)
                    .iter()
                    .map(|block| {
                        let mut seen: Vec<usize> = block.ones().map(|v| ids[v]).collect();
                        seen.sort_unstable();
                        seen.dedup();
                        seen
                    })
                    .collect()
            })
            .collect();
        let next = number_by_signature((0..n).map(|w| {
            let view: Vec<&Vec<usize>> = (0..views.len())
                .map(|a| &views[a][m.class_of(a, w)])
                .collect();
            (ids[w], view)
        }));
        let next_count = next.iter().max().map_or(0, |&c| c + 1);
        ids = next;
        if next_count == count {
            break;
        }
        count = next_count;
    }

    Partition::from_class_ids(m.worlds(), &ids)
}

// Assigns class ids by first occurrence of each signature in document order.
fn number_by_signature<K: std::hash::Hash + Eq>(sigs: impl Iterator<Item = K>) -> Vec<usize> {
    let mut table = HashMap::new();
    sigs.map(|s| {
        let next = table.len();
        *table.entry(s).or_insert(next)
    })
    .collect()
}

/// The model whose worlds are the blocks of `part` (named after their first
/// world), with induced relations and valuation.
pub fn quotient_model(m: &KripkeModel, part: &Partition) -> KripkeModel {
    let name = |b: usize| m.worlds()[part.blocks[b].ones().next().unwrap()].clone();
    let worlds: Vec<String> = (0..part.len()).map(name).collect();
    let relations = (0..m.agents().len())
        .map(|a| {
            // blocks sharing an agent class are related; bisimilar worlds see
            // the same blocks, so merging per class yields an equivalence
            let mut group: Vec<usize> = (0..part.len()).collect();
            fn root(group: &mut [usize], mut b: usize) -> usize {
                while group[b] != b {
                    group[b] = group[group[b]];
                    b = group[b];
                }
                b
            }
            for class in m.blocks(a) {
                let mut members = class.ones().map(|w| part.class_of[w]);
                let first = members.next().unwrap();
                for b in members {
                    let (x, y) = (root(&mut group, first), root(&mut group, b));
                    group[x.max(y)] = x.min(y);
                }
            }
            let mut grouped: Vec<Vec<String>> = Vec::new();
            let mut slot: HashMap<usize, usize> = HashMap::new();
            for b in 0..part.len() {
                let r = root(&mut group, b);
                let next = grouped.len();
                let i = *slot.entry(r).or_insert(next);
                if i == grouped.len() {
                    grouped.push(Vec::new());
                }
                grouped[i].push(worlds[b].clone());
            }
            (m.agents()[a].clone(), grouped)
        })
        .collect();
    let valuation = m
        .atoms()
        .map(|p| {
            let set = m.valuation(p).unwrap();
            let holds = (0..part.len())
                .filter(|&b| set.contains(part.blocks[b].ones().next().unwrap()))
                .map(|b| worlds[b].clone())
                .collect();
            (p.to_string(), holds)
        })
        .collect();
    KripkeModel::from_parts(worlds, relations, valuation)
        .expect("quotient of a valid model is valid")
}
