//! Endomorphism rings as matrices: sizes, idempotents and centers.

use pgroup_logic::endoring::{endo_count_formula, Endomorphism, RingTable};
use pgroup_logic::pgroup::{shapes_up_to, FiniteGroup};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    println!("{:<16} {:>6} {:>11} {:>9} {:>7}", "group", "|End|", "idempotents", "primitive", "center");
    for shape in shapes_up_to(2, 3).into_iter().chain(shapes_up_to(3, 2)) {
        let ring = RingTable::new(&shape, 1 << 12)?;
        assert_eq!(ring.size() as u128, endo_count_formula(&shape));
        let idempotents = ring.idempotents();
        let primitive = idempotents.iter().filter(|&&e| ring.is_primitive_idempotent(e)).count();
        println!(
            "{:<16} {:>6} {:>11} {:>9} {:>7}",
            shape.to_string(),
            ring.size(),
            idempotents.len(),
            primitive,
            ring.center().len()
        );
    }

    // A projection of Z/2 + Z/4 and what it does to every element.
    let shape = "p=2;exps=1,2".parse()?;
    let group = FiniteGroup::new(&shape, 64)?;
    let projection = Endomorphism::new(&shape, vec![vec![0, 0], vec![0, 1]])?;
    assert!(projection.is_idempotent());
    for a in group.elements() {
        println!("{a} -> {}", projection.apply(a)?);
    }
    Ok(())
}
