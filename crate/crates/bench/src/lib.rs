//! Deterministic fixtures shared by the benchmarks.

use apal::axioms::{FormulaGenerator, Fragment, ModelGenerator};
use apal::{Formula, KripkeModel};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// `count` random models with up to `max_worlds` worlds over agents `a, b`
/// and atoms `p, q, r`.
pub fn models(seed: u64, count: usize, max_worlds: usize) -> Vec<KripkeModel> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let gen = ModelGenerator::new(max_worlds, ["a", "b"], ["p", "q", "r"]);
    (0..count).map(|_| gen.generate(&mut rng)).collect()
}

pub fn formulas(seed: u64, count: usize, fragment: Fragment, max_size: u64) -> Vec<Formula> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let gen = FormulaGenerator::new(fragment, max_size).with_max_box_depth(2);
    (0..count).map(|_| gen.generate(&mut rng)).collect()
}

/// `[p_0][p_1]...[p_{n-1}] q`, the worst case for nested-announcement reduction.
pub fn announcement_chain(n: usize) -> Formula {
    (0..n).rev().fold(Formula::atom("q"), |acc, i| {
        Formula::announce(Formula::atom(format!("p{i}")), acc)
    })
}
