//! Evaluates first- and second-order sentences in small groups and in their
//! endomorphism rings, with and without guard hints.

use pgroup_logic::eval::{evaluate_with, EvalOptions, ModelBinding, Structure};
use pgroup_logic::formulas::{infer_language, parse};
use pgroup_logic::pgroup::PGroupShape;

const SENTENCES: &[(&str, &str)] = &[
    ("addition commutes", "(forall x (forall y (exists z (and (plus z x y) (plus z y x)))))"),
    ("exponent two", "(forall x (exists z (and (plus z x x) (plus z z z))))"),
    ("multiplication commutes", "(forall x (forall y (exists u (and (times u x y) (times u y x)))))"),
    (
        "a proper nonzero subgroup exists",
        "(exists2 (P 1 subgroup) (and (exists x (and (pred P x) (not (plus x x x)))) (exists y (not (pred P y)))))",
    ),
    (
        "negation is an endomorphism",
        "(exists2 (F 2 endo) (forall x (forall y (implies (pred F x y) (exists z (and (plus z x y) (plus z z z)))))))",
    ),
];

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let shapes: Vec<PGroupShape> = ["p=2;exps=1", "p=2;exps=2", "p=2;exps=1,1", "p=3;exps=1"]
        .iter()
        .map(|s| s.parse())
        .collect::<Result<_, _>>()?;
    for (name, text) in SENTENCES {
        let f = parse(text)?;
        println!("{name}");
        for shape in &shapes {
            for structure in [Structure::group(shape)?, Structure::ring(shape)?] {
                if !infer_language(&f).is_some_and(|lang| structure.accepts(lang)) {
                    continue;
                }
                let kind = if structure.is_ring() { "End" } else { "group" };
                let (truth, stats) = evaluate_with(&ModelBinding::new(structure), &f, &EvalOptions::default())?;
                println!("  {kind:<5} {shape:<14} {truth:<5}  {} expansions", stats.expansions);
            }
        }
    }

    // With the subgroup hint switched off the quantifier runs over every
    // subset instead of every subgroup; the guard keeps the answer the same.
    let f = parse(
        "(forall2 (P 1 subgroup) (implies (and (exists x (pred P x)) (forall x (forall y (implies (and (pred P x) (pred P y)) (exists z (and (plus z x y) (pred P z))))))) (exists z (and (plus z z z) (pred P z)))))",
    )?;
    let binding = ModelBinding::new(Structure::group(&"p=2;exps=1,1".parse()?)?);
    let (hinted, with) = evaluate_with(&binding, &f, &EvalOptions::default())?;
    let (plain, without) = evaluate_with(&binding, &f, &EvalOptions { use_hints: false, ..EvalOptions::default() })?;
    assert_eq!(hinted, plain);
    println!(
        "hints: {} relations enumerated with, {} without",
        with.relations_enumerated, without.relations_enumerated
    );
    Ok(())
}
