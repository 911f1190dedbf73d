//! Translates ring sentences into second-order group sentences by both
//! methods and checks that the ring and the group agree.

use pgroup_logic::eval::{evaluate_with, EvalOptions, ModelBinding, Structure};
use pgroup_logic::formulas::{parse, to_compact};
use pgroup_logic::pgroup::PGroupShape;
use pgroup_logic::verify::Method;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let sentence = parse("(exists x (exists y (exists u (and (times u x y) (not (times u y x))))))")?;
    let shapes: Vec<PGroupShape> = ["p=2;exps=1", "p=2;exps=1,1", "p=2;exps=1,2", "p=3;exps=1"]
        .iter()
        .map(|s| s.parse())
        .collect::<Result<_, _>>()?;
    let opts = EvalOptions::default();
    for method in [Method::Endomorphisms, Method::BasicSubgroup] {
        println!("method {method}");
        for shape in &shapes {
            let translated = method.translate(&sentence, shape.p())?;
            let ring = ModelBinding::new(Structure::ring(shape)?);
            let group = ModelBinding::new(Structure::group(shape)?);
            let (in_ring, _) = evaluate_with(&ring, &sentence, &opts)?;
            let (in_group, stats) = evaluate_with(&group, &translated, &opts)?;
            assert_eq!(in_ring, in_group, "{method} on {shape}");
            println!(
                "  {shape:<14} ring {in_ring:<5} group {in_group:<5} ({} characters, {} relations enumerated)",
                to_compact(&translated).len(),
                stats.relations_enumerated
            );
        }
    }
    Ok(())
}
