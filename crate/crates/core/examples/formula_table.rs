//! Evaluates catalog formulas on every subgroup of a group and compares the
//! resulting extensions with direct computations.

use pgroup_logic::eval::{Checker, EvalOptions, Relation, Structure, Valuation};
use pgroup_logic::formulas::PredVar;
use pgroup_logic::translate::{build_group_formula, GroupDefFormulaKind};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let shape = "p=2;exps=1,2".parse()?;
    let structure = Structure::group(&shape)?;
    let group = structure.as_group().expect("group structure");
    let opts = EvalOptions::default();
    let p = PredVar::unary("P");
    let kinds = [GroupDefFormulaKind::Cycl, GroupDefFormulaKind::Serv, GroupDefFormulaKind::Base];
    let mut checkers = kinds
        .iter()
        .map(|&k| {
            Checker::new(&structure, &build_group_formula(k, &k.default_params(shape.p()))?, &opts).map_err(Into::into)
        })
        .collect::<Result<Vec<_>, Box<dyn std::error::Error>>>()?;

    println!("subgroups of {shape}");
    println!("{:<12} {:>5} {:>6} {:>6}", "invariants", "Cycl", "Serv", "Base");
    for h in group.subgroups() {
        let v = Valuation::new().with_pred(p.clone(), Relation::unary(h.clone()));
        let values = checkers.iter_mut().map(|c| c.check(&v)).collect::<Result<Vec<_>, _>>()?;
        assert_eq!(values[0], group.is_cyclic(&h));
        assert_eq!(values[1], group.is_pure(&h));
        assert_eq!(values[2], h.count() == group.size());
        println!("{:<12} {:>5} {:>6} {:>6}", format!("{:?}", group.invariants(&h)), values[0], values[1], values[2]);
    }
    Ok(())
}
