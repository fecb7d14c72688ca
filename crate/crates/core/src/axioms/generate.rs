//! Deterministic random formulas and models for randomized testing.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::models::KripkeModel;
use crate::syntax::{size, Formula};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Fragment {
    /// No announcements, no `box`.
    Epistemic,
    /// No `box`.
    Pal,
    /// Everything.
    Apal,
}

impl std::str::FromStr for Fragment {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "epistemic" => Ok(Fragment::Epistemic),
            "pal" => Ok(Fragment::Pal),
            "apal" => Ok(Fragment::Apal),
            _ => Err(format!("unknown fragment `{s}`")),
        }
    }
}

/// Random formulas with `size` at most `max_size`.
#[derive(Clone, Debug)]
pub struct FormulaGenerator {
    pub atoms: Vec<String>,
    pub agents: Vec<String>,
    pub fragment: Fragment,
    pub max_size: u64,
    pub max_box_depth: Option<u32>,
}

impl FormulaGenerator {
    pub fn new(fragment: Fragment, max_size: u64) -> Self {
        FormulaGenerator {
            atoms: vec!["p".into(), "q".into(), "r".into()],
            agents: vec!["a".into(), "b".into()],
            fragment,
            max_size: max_size.max(1),
            max_box_depth: None,
        }
    }

    pub fn with_atoms<S: Into<String>>(mut self, atoms: impl IntoIterator<Item = S>) -> Self {
        self.atoms = atoms.into_iter().map(Into::into).collect();
        self
    }

    pub fn with_agents<S: Into<String>>(mut self, agents: impl IntoIterator<Item = S>) -> Self {
        self.agents = agents.into_iter().map(Into::into).collect();
        self
    }

    pub fn with_max_box_depth(mut self, depth: u32) -> Self {
        self.max_box_depth = Some(depth);
        self
    }

    pub fn generate<R: Rng + ?Sized>(&self, rng: &mut R) -> Formula {
        let f = self.grow(rng, self.max_size, self.max_box_depth.unwrap_or(u32::MAX));
        debug_assert!(size(&f) <= self.max_size);
        f
    }

    fn leaf<R: Rng + ?Sized>(&self, rng: &mut R) -> Formula {
        match self.atoms.choose(rng) {
            Some(p) if rng.gen_bool(0.85) => Formula::atom(p.clone()),
            _ => Formula::Bottom,
        }
    }

    fn grow<R: Rng + ?Sized>(&self, rng: &mut R, budget: u64, boxes: u32) -> Formula {
        #[derive(Clone, Copy)]
        enum Node {
            Leaf,
            Neg,
            Or,
            Know,
            Announce,
            Box,
        }
        let mut choices = vec![(Node::Leaf, 2)];
        if budget >= 2 {
            choices.push((Node::Neg, 2));
            if !self.agents.is_empty() {
                choices.push((Node::Know, 2));
            }
            if self.fragment == Fragment::Apal && boxes > 0 {
                choices.push((Node::Box, 1));
            }
        }
        if budget >= 3 {
            choices.push((Node::Or, 3));
        }
        if budget >= 4 && self.fragment != Fragment::Epistemic {
            choices.push((Node::Announce, 2));
        }
        let node = choices.choose_weighted(rng, |c| c.1).unwrap().0;
        match node {
            Node::Leaf => self.leaf(rng),
            Node::Neg => Formula::neg(self.grow(rng, budget - 1, boxes)),
            Node::Know => {
                let agent = self.agents.choose(rng).unwrap().clone();
                Formula::know(agent, self.grow(rng, budget - 1, boxes))
            }
            Node::Box => Formula::boxed(self.grow(rng, budget - 1, boxes - 1)),
            Node::Or => {
                let left = rng.gen_range(1..=budget - 2);
                Formula::or(
                    self.grow(rng, left, boxes),
                    self.grow(rng, budget - 1 - left, boxes),
                )
            }
            Node::Announce => {
                let cont = rng.gen_range(1..=(budget - 1) / 3);
                Formula::announce(
                    self.grow(rng, budget - 3 * cont, boxes),
                    self.grow(rng, cont, boxes),
                )
            }
        }
    }
}

/// A formula determined by `seed`, over atoms `p, q, r` and agents `a, b`.
pub fn gen_formula(seed: u64, max_size: u64, fragment: Fragment) -> Formula {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    FormulaGenerator::new(fragment, max_size).generate(&mut rng)
}

/// Random S5 models: worlds `w0, w1, ...`, random partitions and valuation.
#[derive(Clone, Debug)]
pub struct ModelGenerator {
    pub max_worlds: usize,
    pub agents: Vec<String>,
    pub atoms: Vec<String>,
}

impl ModelGenerator {
    pub fn new<A: Into<String>, P: Into<String>>(
        max_worlds: usize,
        agents: impl IntoIterator<Item = A>,
        atoms: impl IntoIterator<Item = P>,
    ) -> Self {
        ModelGenerator {
            max_worlds: max_worlds.max(1),
            agents: agents.into_iter().map(Into::into).collect(),
            atoms: atoms.into_iter().map(Into::into).collect(),
        }
    }

    pub fn generate<R: Rng + ?Sized>(&self, rng: &mut R) -> KripkeModel {
        let n = rng.gen_range(1..=self.max_worlds);
        let worlds: Vec<String> = (0..n).map(|i| format!("w{i}")).collect();
        let relations = self
            .agents
            .iter()
            .map(|a| {
                let labels: Vec<usize> = (0..n).map(|_| rng.gen_range(0..n)).collect();
                let mut blocks: Vec<Vec<String>> = vec![Vec::new(); n];
                for (w, &l) in labels.iter().enumerate() {
                    blocks[l].push(worlds[w].clone());
                }
                blocks.retain(|b| !b.is_empty());
                (a.clone(), blocks)
            })
            .collect();
        let valuation = self
            .atoms
            .iter()
            .map(|p| {
                let holds = worlds
                    .iter()
                    .filter(|_| rng.gen_bool(0.5))
                    .cloned()
                    .collect();
                (p.clone(), holds)
            })
            .collect();
        KripkeModel::from_parts(worlds, relations, valuation).expect("generated models are valid")
    }
}

/// A model determined by `seed`.
pub fn gen_model(seed: u64, max_worlds: usize, agents: &[&str], atoms: &[&str]) -> KripkeModel {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    ModelGenerator::new(max_worlds, agents.iter().copied(), atoms.iter().copied())
        .generate(&mut rng)
}

/// Every model with 1..=`max_worlds` worlds over the given agents and atoms,
/// one representative per isomorphism class (world renaming).
pub fn enumerate_models(max_worlds: usize, agents: &[&str], atoms: &[&str]) -> Vec<KripkeModel> {
    let mut out = Vec::new();
    for n in 1..=max_worlds {
        let partitions = set_partitions(n);
        let perms = permutations(n);
        let mut seen = BTreeSet::new();
        let mut rel_choice = vec![0usize; agents.len()];
        loop {
            for valuation in 0u64..(1u64 << (n * atoms.len())) {
                let labels: Vec<&Vec<usize>> = rel_choice.iter().map(|&i| &partitions[i]).collect();
                let key = perms
                    .iter()
                    .map(|perm| canonical_key(perm, &labels, valuation, n, atoms.len()))
                    .min()
                    .unwrap();
                if seen.insert(key) {
                    out.push(build(n, agents, atoms, &labels, valuation));
                }
            }
            // next combination of agent partitions
            let mut i = 0;
            while i < rel_choice.len() {
                rel_choice[i] += 1;
                if rel_choice[i] < partitions.len() {
                    break;
                }
                rel_choice[i] = 0;
                i += 1;
            }
            if i == rel_choice.len() {
                break;
            }
        }
    }
    out
}

fn build(
    n: usize,
    agents: &[&str],
    atoms: &[&str],
    labels: &[&Vec<usize>],
    valuation: u64,
) -> KripkeModel {
    let worlds: Vec<String> = (0..n).map(|i| format!("w{i}")).collect();
    let relations = agents
        .iter()
        .zip(labels)
        .map(|(a, lab)| {
            let k = lab.iter().max().unwrap() + 1;
            let mut blocks = vec![Vec::new(); k];
            for (w, &l) in lab.iter().enumerate() {
                blocks[l].push(worlds[w].clone());
            }
            (a.to_string(), blocks)
        })
        .collect();
    let val = atoms
        .iter()
        .enumerate()
        .map(|(j, p)| {
            let holds = (0..n)
                .filter(|w| valuation & (1 << (j * n + w)) != 0)
                .map(|w| worlds[w].clone())
                .collect();
            (p.to_string(), holds)
        })
        .collect();
    KripkeModel::from_parts(worlds, relations, val).expect("enumerated models are valid")
}

// Relabels worlds by `perm` and renormalizes block labels by first occurrence.
fn canonical_key(
    perm: &[usize],
    labels: &[&Vec<usize>],
    valuation: u64,
    n: usize,
    atoms: usize,
) -> (Vec<Vec<usize>>, Vec<bool>) {
    let rels = labels
        .iter()
        .map(|lab| {
            let mut renum = vec![usize::MAX; n];
            let mut next = 0;
            (0..n)
                .map(|new| {
                    let l = lab[perm[new]];
                    if renum[l] == usize::MAX {
                        renum[l] = next;
                        next += 1;
                    }
                    renum[l]
                })
                .collect()
        })
        .collect();
    let val = (0..atoms)
        .flat_map(|j| (0..n).map(move |new| (j, new)))
        .map(|(j, new)| valuation & (1 << (j * n + perm[new])) != 0)
        .collect();
    (rels, val)
}

// Restricted growth strings: all set partitions of 0..n.
fn set_partitions(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    fn go(prefix: &mut Vec<usize>, n: usize, max: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        let limit = if prefix.is_empty() { 0 } else { max + 1 };
        for l in 0..=limit {
            prefix.push(l);
            go(prefix, n, max.max(l), out);
            prefix.pop();
        }
    }
    go(&mut Vec::new(), n, 0, &mut out);
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..n {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::load_model;
    use crate::syntax::box_depth;

    #[test]
    fn formulas_are_deterministic_and_bounded() {
        for seed in 0..200 {
            let f = gen_formula(seed, 5, Fragment::Epistemic);
            assert!(size(&f) <= 5);
            assert!(f.is_epistemic());
            assert_eq!(f, gen_formula(seed, 5, Fragment::Epistemic));
        }
    }

    #[test]
    fn fragments_are_respected() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let pal = FormulaGenerator::new(Fragment::Pal, 20);
        let apal = FormulaGenerator::new(Fragment::Apal, 20).with_max_box_depth(1);
        let mut saw_box = false;
        let mut saw_announce = false;
        for _ in 0..2000 {
            assert!(pal.generate(&mut rng).is_box_free());
            let f = apal.generate(&mut rng);
            assert!(box_depth(&f) <= 1);
            let flags = f.classify();
            saw_box |= !flags.box_free;
            saw_announce |= !flags.announcement_free;
        }
        assert!(saw_box && saw_announce);
    }

    #[test]
    fn models() {
        let m = gen_model(3, 1, &["a"], &["p"]);
        assert_eq!(m.world_count(), 1);
        for seed in 0..50 {
            let m = gen_model(seed, 6, &["a", "b"], &["p", "q"]);
            assert_eq!(load_model(&m.to_json()).unwrap(), m);
            assert_eq!(m, gen_model(seed, 6, &["a", "b"], &["p", "q"]));
        }
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(set_partitions(4).len(), 15);
        assert_eq!(permutations(3).len(), 6);
        // one world, two atoms: four valuations
        assert_eq!(enumerate_models(1, &["a"], &["p", "q"]).len(), 4);
        // up to two worlds, one atom: two one-world models, then
        // {same block, split} x {both, one, none} valuations
        assert_eq!(enumerate_models(2, &["a"], &["p"]).len(), 2 + 3 + 3);
    }
}
