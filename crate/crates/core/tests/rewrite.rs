mod common;

use apal::axioms::Fragment;
use apal::rewrite::{apply_at_root, weight, RewriteError};
use apal::{less, load_model, reduce_step, reduce_to_epistemic, render, Formula, Order, Rule};
use common::*;
use proptest::prelude::*;

/// Independent weight recursion: announcements multiply, everything else adds.
fn ref_weight(f: &Formula) -> u64 {
    match f {
        Formula::Atom(_) | Formula::Bottom => 1,
        Formula::Neg(g) | Formula::Know(_, g) | Formula::Box(g) => ref_weight(g) + 1,
        Formula::Or(g, h) => ref_weight(g) + ref_weight(h) + 1,
        Formula::Announce(g, h) => (4 + ref_weight(g)) * ref_weight(h),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn reduction_is_sound_and_terminating(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let f = formulas(Fragment::Pal, 24, 0).generate(&mut rng);
        let m = models(5).generate(&mut rng);
        let trace = reduce_to_epistemic(&f).unwrap();
        prop_assert!(trace.result.is_epistemic());
        prop_assert!(trace.steps.len() as u64 <= weight(&f));
        prop_assert_eq!(weight(&f), ref_weight(&f));
        let reference = RefModel::new(&m);
        let expected = reference.eval(&f);
        prop_assert_eq!(reference.eval(&trace.result), expected.clone());
        let mut current = trace.start.clone();
        for step in &trace.steps {
            prop_assert!(weight(&step.after) < weight(&step.before));
            // the step rewrites one position of the current formula
            let redex = step.before.at_path(&step.position.0).unwrap();
            let (rule, rhs) = apply_at_root(redex).unwrap();
            prop_assert_eq!(rule, step.rule);
            prop_assert_eq!(reference.eval(&step.after), expected.clone());
            prop_assert_eq!(&step.before, &current);
            prop_assert_eq!(step.after.at_path(&step.position.0), Some(&rhs));
            current = step.after.clone();
        }
        prop_assert_eq!(current, trace.result);
    }

    #[test]
    fn every_rule_lowers_weight(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let gen = formulas(Fragment::Apal, 14, 2);
        let (phi, psi, chi) = (gen.generate(&mut rng), gen.generate(&mut rng), gen.generate(&mut rng));
        let redexes = [
            Formula::announce(phi.clone(), Formula::atom("p")),
            Formula::announce(phi.clone(), Formula::Bottom),
            Formula::announce(phi.clone(), Formula::neg(psi.clone())),
            Formula::announce(phi.clone(), Formula::or(psi.clone(), chi.clone())),
            Formula::announce(phi.clone(), Formula::know("a", psi.clone())),
            Formula::announce(phi.clone(), Formula::announce(psi.clone(), chi.clone())),
        ];
        for (redex, expected) in redexes.iter().zip([Rule::A7, Rule::A8, Rule::A9, Rule::A10, Rule::A11, Rule::A12]) {
            let (rule, rhs) = apply_at_root(redex).unwrap();
            prop_assert_eq!(rule, expected);
            prop_assert!(ref_weight(&rhs) < ref_weight(redex), "{} ==> {}", redex, rhs);
        }
    }

    #[test]
    fn progress(seed in any::<u64>()) {
        let f = formulas(Fragment::Pal, 16, 0).generate(&mut rng(seed));
        prop_assert_eq!(reduce_step(&f).unwrap().is_none(), f.is_epistemic());
    }

    #[test]
    fn size_facts_align_with_steps(seed in any::<u64>()) {
        let f = formulas(Fragment::Pal, 24, 0).generate(&mut rng(seed));
        for step in reduce_to_epistemic(&f).unwrap().steps {
            let redex = step.before.at_path(&step.position.0).unwrap();
            let Formula::Announce(phi, cont) = redex else { unreachable!() };
            let smaller = match (step.rule, cont.as_ref()) {
                (Rule::A9, Formula::Neg(psi)) => {
                    Formula::neg(Formula::announce((**phi).clone(), (**psi).clone()))
                }
                (Rule::A11, Formula::Know(a, psi)) => {
                    Formula::know(a.clone(), Formula::announce((**phi).clone(), (**psi).clone()))
                }
                (Rule::A12, Formula::Announce(psi, chi)) => Formula::announce(
                    Formula::announce_dual((**phi).clone(), (**psi).clone()),
                    (**chi).clone(),
                ),
                _ => continue,
            };
            prop_assert!(less(&smaller, redex, Order::Size));
        }
    }
}

#[test]
fn documented_examples() {
    assert_eq!(weight(&f("p")), 1);
    assert_eq!(weight(&f("[p]q")), 5);
    assert_eq!(weight(&f("[p]~q")), 10);
    assert_eq!(weight(&f("p -> ~[p]q")), 9);

    let step = reduce_step(&f("[p]q")).unwrap().unwrap();
    assert_eq!(
        (step.rule, render(&step.after)),
        (Rule::A7, "p -> q".to_string())
    );
    assert!(reduce_step(&f("K a p")).unwrap().is_none());
    let step = reduce_step(&f("[p][q]r")).unwrap().unwrap();
    assert_eq!(step.rule, Rule::A12);
    assert_eq!(step.after, f("[<p>q]r"));
    assert_eq!(step.after, f("[~[p]~q]r"));

    let trace = reduce_to_epistemic(&f("[p]K a q")).unwrap();
    assert_eq!(render(&trace.result), "p -> K a (p -> q)");
    let rules: Vec<Rule> = trace.steps.iter().map(|s| s.rule).collect();
    assert_eq!(rules, [Rule::A11, Rule::A7]);
    let m1 = load_model(M1).unwrap();
    assert_eq!(
        names(&m1, &trace.result),
        RefModel::new(&m1).truth_names(&f("[p]K a q"))
    );

    let trace = reduce_to_epistemic(&f("p | q")).unwrap();
    assert!(trace.steps.is_empty());
    assert_eq!(trace.result, f("p | q"));

    let trace = reduce_to_epistemic(&f("[p][q]r")).unwrap();
    assert_eq!(trace.steps[0].rule, Rule::A12);
    assert!(trace.result.is_epistemic());

    assert!(matches!(
        reduce_to_epistemic(&f("[p] box q")),
        Err(RewriteError::NotBoxFree(_))
    ));
}
