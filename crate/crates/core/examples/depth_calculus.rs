//! Depths of points under self-maps of a finite set, their extensions to
//! direct sums of cyclic groups, and beautiful linear combinations.

use pgroup_logic::combinations::enumerate_beautiful;
use pgroup_logic::depth::{check_commuting_depths, check_extension_depths, depths, FunctionGraph};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // A tail 1 -> 2 -> 3 feeding a 2-cycle on 4 and 5, plus a stray point 6 -> 1.
    let h: FunctionGraph = "domain=1..6; map=2,3,4,5,4,1".parse()?;
    for (x, d) in depths(&h).iter().enumerate() {
        println!("depth of {} is {d}", x + 1);
    }

    let squared = h.then(&h);
    let commuting = check_commuting_depths(&h, &squared)?;
    println!("h against h^2: {} points checked, {} violations", commuting.checked, commuting.violations.len());

    let small: FunctionGraph = "domain=1..3; map=2,3,3".parse()?;
    let extension = check_extension_depths(&small, 2, 2)?;
    println!("extension of {small} over Z/4: {} elements, holds: {}", extension.checked, extension.holds());

    for (n, p, l) in [(2, 2, 2), (2, 3, 1), (3, 2, 1)] {
        println!("beautiful combinations for n={n}, p={p}, l={l}: {:?}", enumerate_beautiful(n, p, l)?);
    }
    Ok(())
}
