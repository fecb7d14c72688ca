//! Toolkit for arbitrary public announcement logic over finite S5 models.
//!
//! - [`syntax`]: formulas, parsing and printing, size and `box`-depth measures
//! - [`models`]: Kripke models, restriction, bisimulation quotients
//! - [`checker`]: truth sets, including the arbitrary-announcement operator
//! - [`rewrite`]: reduction of announcement formulas to epistemic ones
//! - [`axioms`]: schema recognition, derivation checking, random generators
//! - [`harness`]: seeded randomized validity suites

pub mod axioms;
pub mod checker;
pub mod harness;
pub mod models;
pub mod rewrite;
pub mod syntax;

pub use axioms::{
    check_derivation, match_axiom, parse_derivation, AxiomName, Derivation, Fragment, Verdict,
};
pub use checker::{box_oracle, satisfies, truth_set, valid_on, CheckError, Evaluator};
pub use models::{bisim_quotient, load_model, KripkeModel, ModelError, Partition, WorldSet};
pub use rewrite::{reduce_step, reduce_to_epistemic, RewriteStep, RewriteTrace, Rule};
pub use syntax::{
    box_depth, less, parse, render, size, Formula, FragmentFlags, NecessityForm, Order,
};
