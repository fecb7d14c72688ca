//! Truth sets of formulas on finite S5 models.
//!
//! The arbitrary-announcement operator quantifies over epistemic
//! announcements. On a finite model with a finite signature the truth sets of
//! epistemic formulas are exactly the unions of bisimulation classes, so `box`
//! is evaluated by restricting the model to every such union.

use std::collections::HashMap;

use thiserror::Error;

use crate::models::{bisim_quotient, lift, KripkeModel, WorldSet};
use crate::syntax::Formula;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CheckError {
    #[error("unknown world `{0}`")]
    UnknownWorld(String),
    #[error("model has {worlds} worlds; subset enumeration supports at most {limit}")]
    TooManyWorlds { worlds: usize, limit: usize },
}

/// Memoized truth sets keyed by model fingerprint and formula.
#[derive(Debug, Default)]
pub struct TruthSetCache {
    entries: HashMap<(String, Formula), WorldSet>,
    hits: u64,
}

impl TruthSetCache {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn hits(&self) -> u64 {
        self.hits
    }

    pub fn clear(&mut self) {
        self.entries.clear();
        self.hits = 0;
    }
}

/// Evaluates formulas, optionally memoizing announcement and `box` nodes.
///
/// An evaluator owns its cache; share results across threads by giving each
/// thread its own evaluator.
#[derive(Debug)]
pub struct Evaluator {
    cache: Option<TruthSetCache>,
}

impl Default for Evaluator {
    fn default() -> Self {
        Self::new()
    }
}

impl Evaluator {
    pub fn new() -> Self {
        Evaluator {
            cache: Some(TruthSetCache::default()),
        }
    }

    pub fn uncached() -> Self {
        Evaluator { cache: None }
    }

    pub fn cache(&self) -> Option<&TruthSetCache> {
        self.cache.as_ref()
    }

    pub fn truth_set(&mut self, m: &KripkeModel, f: &Formula) -> WorldSet {
        let fp = self.cache.as_ref().map(|_| m.fingerprint());
        self.eval(m, fp.as_deref(), f)
    }

    pub fn satisfies(
        &mut self,
        m: &KripkeModel,
        world: &str,
        f: &Formula,
    ) -> Result<bool, CheckError> {
        let w = m
            .world_index(world)
            .ok_or_else(|| CheckError::UnknownWorld(world.to_string()))?;
        Ok(self.truth_set(m, f).contains(w))
    }

    pub fn valid_on(&mut self, m: &KripkeModel, f: &Formula) -> bool {
        self.truth_set(m, f).count_ones(..) == m.world_count()
    }

    fn eval(&mut self, m: &KripkeModel, fp: Option<&str>, f: &Formula) -> WorldSet {
        let memo = matches!(f, Formula::Announce(..) | Formula::Box(_));
        if memo {
            if let (Some(cache), Some(fp)) = (self.cache.as_mut(), fp) {
                // TODO: keying by an interned fingerprint id would avoid the String clone per lookup
                if let Some(hit) = cache.entries.get(&(fp.to_string(), f.clone())) {
                    cache.hits += 1;
                    return hit.clone();
                }
            }
        }
        let result = self.compute(m, fp, f);
        if memo {
            if let (Some(cache), Some(fp)) = (self.cache.as_mut(), fp) {
                cache
                    .entries
                    .insert((fp.to_string(), f.clone()), result.clone());
            }
        }
        result
    }

    fn compute(&mut self, m: &KripkeModel, fp: Option<&str>, f: &Formula) -> WorldSet {
        match f {
            Formula::Atom(p) => m.valuation(p).cloned().unwrap_or_else(|| m.empty_set()),
            Formula::Bottom => m.empty_set(),
            Formula::Neg(g) => {
                let mut s = self.eval(m, fp, g);
                s.toggle_range(..);
                s
            }
            Formula::Or(l, r) => {
                let mut s = self.eval(m, fp, l);
                s.union_with(&self.eval(m, fp, r));
                s
            }
            Formula::Know(agent, g) => {
                let s = self.eval(m, fp, g);
                match m.agent_index(agent) {
                    Some(a) => {
                        let mut out = m.empty_set();
                        for block in m.blocks(a) {
                            if block.is_subset(&s) {
                                out.union_with(block);
                            }
                        }
                        out
                    }
                    // undeclared agents have the identity relation
                    None => s,
                }
            }
            Formula::Announce(announced, continuation) => {
                let kept = self.eval(m, fp, announced);
                if kept.is_clear() {
                    return m.all_worlds();
                }
                let inner = self.in_restriction(m, &kept, continuation);
                let mut out = kept;
                out.toggle_range(..);
                out.union_with(&inner);
                out
            }
            Formula::Box(g) => {
                let part = bisim_quotient(m);
                let mut out = m.all_worlds();
                for u in part.unions() {
                    let holds = self.in_restriction(m, &u, g);
                    // worlds of u where g fails after announcing u
                    let mut failing = u;
                    failing.difference_with(&holds);
                    out.difference_with(&failing);
                }
                out
            }
        }
    }

    // Truth set of `f` in m restricted to `kept`, as a subset of m's worlds.
    fn in_restriction(&mut self, m: &KripkeModel, kept: &WorldSet, f: &Formula) -> WorldSet {
        let sub = m.restrict(kept).expect("restriction to a nonempty subset");
        let fp = self.cache.as_ref().map(|_| sub.fingerprint());
        let inner = self.eval(&sub, fp.as_deref(), f);
        lift(&inner, kept)
    }
}

/// Truth set of `f` in `m`, using a fresh memoizing evaluator.
pub fn truth_set(m: &KripkeModel, f: &Formula) -> WorldSet {
    Evaluator::new().truth_set(m, f)
}

/// Truth set of `f` in `m` with no memoization.
pub fn truth_set_uncached(m: &KripkeModel, f: &Formula) -> WorldSet {
    Evaluator::uncached().truth_set(m, f)
}

pub fn satisfies(m: &KripkeModel, world: &str, f: &Formula) -> Result<bool, CheckError> {
    Evaluator::new().satisfies(m, world, f)
}

/// Whether `f` holds at every world of `m`.
pub fn valid_on(m: &KripkeModel, f: &Formula) -> bool {
    Evaluator::new().valid_on(m, f)
}

/// Largest model the subset oracle accepts.
pub const ORACLE_WORLD_LIMIT: usize = 24;

/// Independent check of `box inner` at `world`: enumerates every subset of the
/// worlds that contains `world`, keeps the ones closed under bisimilarity and
/// evaluates `inner` on each restriction.
pub fn box_oracle(m: &KripkeModel, world: &str, inner: &Formula) -> Result<bool, CheckError> {
    let w = m
        .world_index(world)
        .ok_or_else(|| CheckError::UnknownWorld(world.to_string()))?;
    let n = m.world_count();
    if n > ORACLE_WORLD_LIMIT {
        return Err(CheckError::TooManyWorlds {
            worlds: n,
            limit: ORACLE_WORLD_LIMIT,
        });
    }
    let part = bisim_quotient(m);
    for mask in 0u32..(1u32 << n) {
        if mask & (1 << w) == 0 {
            continue;
        }
        let mut u = m.empty_set();
        for i in (0..n).filter(|i| mask & (1 << i) != 0) {
            u.insert(i);
        }
        if !part.is_closed(&u) {
            continue;
        }
        let sub = m.restrict(&u).expect("u contains world");
        if !satisfies(&sub, world, inner)? {
            return Ok(false);
        }
    }
    Ok(true)
}
