//! Shared fixtures and a deliberately naive reference semantics.
//!
//! The reference evaluator works on explicit relation matrices, computes
//! bisimilarity as a greatest fixed point over world pairs and evaluates `box`
//! by trying every bisimulation-closed subset. It shares no code with the
//! library's checker.

#![allow(dead_code)]

use std::collections::BTreeMap;
use std::path::PathBuf;

use apal::axioms::{FormulaGenerator, Fragment, ModelGenerator};
use apal::{Formula, KripkeModel};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const M1: &str = r#"{"worlds": ["w","v"], "agents": ["a"],
    "relations": {"a": [["w","v"]]}, "valuation": {"p": ["w"]}}"#;

pub fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus")
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn formulas(fragment: Fragment, max_size: u64, max_box_depth: u32) -> FormulaGenerator {
    FormulaGenerator::new(fragment, max_size).with_max_box_depth(max_box_depth)
}

pub fn models(max_worlds: usize) -> ModelGenerator {
    ModelGenerator::new(max_worlds, ["a", "b"], ["p", "q", "r"])
}

pub fn f(text: &str) -> Formula {
    apal::parse(text).unwrap_or_else(|e| panic!("{text}: {e}"))
}

/// Independent size recursion.
pub fn ref_size(f: &Formula) -> u64 {
    match f {
        Formula::Atom(_) | Formula::Bottom => 1,
        Formula::Neg(g) | Formula::Know(_, g) | Formula::Box(g) => ref_size(g) + 1,
        Formula::Or(g, h) => ref_size(g) + ref_size(h) + 1,
        Formula::Announce(g, h) => ref_size(g) + 3 * ref_size(h),
    }
}

#[derive(Clone, Debug)]
pub struct RefModel {
    pub names: Vec<String>,
    pub rel: BTreeMap<String, Vec<Vec<bool>>>,
    pub val: BTreeMap<String, Vec<bool>>,
}

impl RefModel {
    pub fn new(m: &KripkeModel) -> Self {
        let doc = m.to_document();
        let n = doc.worlds.len();
        let idx = |w: &String| doc.worlds.iter().position(|x| x == w).unwrap();
        let rel = doc
            .relations
            .iter()
            .map(|(a, blocks)| {
                let mut r = vec![vec![false; n]; n];
                for b in blocks {
                    for x in b {
                        for y in b {
                            r[idx(x)][idx(y)] = true;
                        }
                    }
                }
                (a.clone(), r)
            })
            .collect();
        let val = doc
            .valuation
            .iter()
            .map(|(p, ws)| {
                let mut v = vec![false; n];
                for w in ws {
                    v[idx(w)] = true;
                }
                (p.clone(), v)
            })
            .collect();
        RefModel {
            names: doc.worlds,
            rel,
            val,
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    fn sees(&self, agent: &str, x: usize, y: usize) -> bool {
        match self.rel.get(agent) {
            Some(r) => r[x][y],
            None => x == y,
        }
    }

    pub fn restrict(&self, keep: &[bool]) -> RefModel {
        let kept: Vec<usize> = (0..self.len()).filter(|&i| keep[i]).collect();
        RefModel {
            names: kept.iter().map(|&i| self.names[i].clone()).collect(),
            rel: self
                .rel
                .iter()
                .map(|(a, r)| {
                    let sub = kept
                        .iter()
                        .map(|&x| kept.iter().map(|&y| r[x][y]).collect())
                        .collect();
                    (a.clone(), sub)
                })
                .collect(),
            val: self
                .val
                .iter()
                .map(|(p, v)| (p.clone(), kept.iter().map(|&i| v[i]).collect()))
                .collect(),
        }
    }

    /// Largest bisimulation, as a pair matrix.
    pub fn bisimilar(&self) -> Vec<Vec<bool>> {
        let n = self.len();
        let mut z = vec![vec![true; n]; n];
        for x in 0..n {
            for y in 0..n {
                z[x][y] = self.val.values().all(|v| v[x] == v[y]);
            }
        }
        loop {
            let mut changed = false;
            for x in 0..n {
                for y in 0..n {
                    if !z[x][y] {
                        continue;
                    }
                    let forth = |x: usize, y: usize, z: &Vec<Vec<bool>>, flip: bool| {
                        self.rel.keys().all(|a| {
                            (0..n).filter(|&x2| self.sees(a, x, x2)).all(|x2| {
                                (0..n).any(|y2| {
                                    self.sees(a, y, y2) && if flip { z[y2][x2] } else { z[x2][y2] }
                                })
                            })
                        })
                    };
                    if !forth(x, y, &z, false) || !forth(y, x, &z, true) {
                        z[x][y] = false;
                        changed = true;
                    }
                }
            }
            if !changed {
                return z;
            }
        }
    }

    pub fn eval(&self, f: &Formula) -> Vec<bool> {
        let n = self.len();
        match f {
            Formula::Atom(p) => self.val.get(p).cloned().unwrap_or(vec![false; n]),
            Formula::Bottom => vec![false; n],
            Formula::Neg(g) => self.eval(g).into_iter().map(|b| !b).collect(),
            Formula::Or(g, h) => {
                let (g, h) = (self.eval(g), self.eval(h));
                (0..n).map(|i| g[i] || h[i]).collect()
            }
            Formula::Know(a, g) => {
                let g = self.eval(g);
                (0..n)
                    .map(|x| (0..n).all(|y| !self.sees(a, x, y) || g[y]))
                    .collect()
            }
            Formula::Announce(g, h) => {
                let s = self.eval(g);
                let sub = self.restrict(&s);
                let t = sub.eval(h);
                let mut k = 0;
                (0..n)
                    .map(|x| {
                        if s[x] {
                            k += 1;
                            t[k - 1]
                        } else {
                            true
                        }
                    })
                    .collect()
            }
            Formula::Box(g) => {
                let z = self.bisimilar();
                let mut out = vec![true; n];
                for mask in 1u32..(1 << n) {
                    let u: Vec<bool> = (0..n).map(|i| mask & (1 << i) != 0).collect();
                    let closed = (0..n).all(|x| (0..n).all(|y| !z[x][y] || u[x] == u[y]));
                    if !closed {
                        continue;
                    }
                    let sub = self.restrict(&u);
                    let t = sub.eval(g);
                    let mut k = 0;
                    for x in 0..n {
                        if u[x] {
                            out[x] &= t[k];
                            k += 1;
                        }
                    }
                }
                out
            }
        }
    }

    pub fn truth_names(&self, f: &Formula) -> Vec<String> {
        let t = self.eval(f);
        (0..self.len())
            .filter(|&i| t[i])
            .map(|i| self.names[i].clone())
            .collect()
    }
}

pub fn names(m: &KripkeModel, f: &Formula) -> Vec<String> {
    m.names_of(&apal::truth_set(m, f))
        .into_iter()
        .map(String::from)
        .collect()
}

/// Every union of bisimulation blocks, each restricted model.
pub fn closed_restrictions(m: &KripkeModel) -> Vec<KripkeModel> {
    apal::bisim_quotient(m)
        .unions()
        .map(|u| m.restrict(&u).unwrap())
        .collect()
}
