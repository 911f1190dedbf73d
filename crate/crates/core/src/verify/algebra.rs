use std::collections::BTreeSet;

use itertools::Itertools;
use rayon::prelude::*;

use super::Tallies;
use crate::combinations::enumerate_beautiful;
use crate::depth::{
    check_commuting_depths, check_extension_depths, depths, extend_to_direct_sum, Depth, FunctionGraph,
};
use crate::endoring::{count_endos_by_generator_images, endo_count_formula, Endomorphism, RingTable};
use crate::error::VerifyError;
use crate::pgroup::{shapes_up_to, PGroupShape};

/// Rings at most this large get the brute-force center check.
const CENTER_LIMIT: usize = 4096;

fn ring_fact_shapes(max_order: u128) -> Vec<PGroupShape> {
    [2, 3].into_iter().flat_map(|p| shapes_up_to(p, 4)).filter(|s| s.cardinality() <= max_order).collect()
}

fn center_is_scalar(shape: &PGroupShape) -> Result<Option<bool>, VerifyError> {
    if endo_count_formula(shape) > CENTER_LIMIT as u128 {
        return Ok(None);
    }
    let ring = RingTable::new(shape, CENTER_LIMIT)?;
    let center: BTreeSet<usize> = ring.center().into_iter().collect();
    let modulus = shape.p().pow(shape.max_exp());
    let scalars: BTreeSet<usize> =
        (0..modulus).map(|k| ring.index_of(&Endomorphism::scalar(shape, k))).collect::<Result<_, _>>()?;
    Ok(Some(center == scalars && scalars.len() as u64 == modulus))
}

/// Endomorphism counts and centers for p in {2, 3} and total exponent at most 4.
pub fn ring_facts(max_order: u128) -> Result<Tallies, VerifyError> {
    let shapes = ring_fact_shapes(max_order);
    let centers: Vec<Option<bool>> = shapes.par_iter().map(center_is_scalar).collect::<Result<_, _>>()?;
    let mut t = Tallies::new();
    for (s, center) in shapes.iter().zip(centers) {
        let (counted, formula) = (count_endos_by_generator_images(s), endo_count_formula(s));
        t.record("ring-size", counted == formula, || format!("{s}: counted {counted}, formula {formula}"));
        if let Some(ok) = center {
            t.record("center-is-scalar", ok, || format!("{s}: center is not the scalars"));
        }
    }
    Ok(t)
}

/// Infinite depth exactly on the eventual image, which is the union of the cycles.
fn depth_matches_cycles(h: &FunctionGraph) -> bool {
    let n = h.len();
    let mut image: BTreeSet<usize> = (0..n).collect();
    for _ in 0..n {
        image = image.iter().map(|&x| h.apply(x)).collect();
    }
    depths(h).iter().enumerate().all(|(x, d)| (*d == Depth::Infinite) == image.contains(&x))
}

fn power(h: &FunctionGraph, k: usize) -> FunctionGraph {
    (0..k).fold(FunctionGraph::identity(h.len()), |acc, _| acc.then(h))
}

/// Exhaustive depth checks on small function graphs plus the
/// beautiful-combination classification.
pub fn depth_suite() -> Result<Tallies, VerifyError> {
    let mut t = Tallies::new();
    for n in 1..=5 {
        for h in FunctionGraph::all(n) {
            t.record("infinite-depth-on-cycles", depth_matches_cycles(&h), || h.to_string());
        }
    }

    let cases = (1..=3).flat_map(FunctionGraph::all).cartesian_product([(2u64, 1u32), (2, 2), (3, 1)]).collect_vec();
    let reports: Vec<_> =
        cases.par_iter().map(|(h, (p, l))| check_extension_depths(h, *p, *l)).collect::<Result<_, _>>()?;
    for ((h, (p, l)), r) in cases.iter().zip(reports) {
        t.record("extension-lower-bound", r.lower_bound.is_empty(), || format!("{h} over Z/{p}^{l}"));
        t.record("extension-equality", r.equality.is_empty(), || format!("{h} over Z/{p}^{l}"));
    }

    for n in 1..=4 {
        for h in FunctionGraph::all(n) {
            for k in 0..=n + 1 {
                let hk = power(&h, k);
                for (a, b) in [(&h, &hk), (&hk, &h)] {
                    let r = check_commuting_depths(a, b)?;
                    t.record("commuting-depths", r.holds(), || format!("{a} against {b}"));
                }
            }
        }
    }

    for (h1, h2) in FunctionGraph::all(3).cartesian_product(FunctionGraph::all(3).collect_vec()) {
        let composed = extend_to_direct_sum(&h1.then(&h2), 2, 2)?;
        let separately = extend_to_direct_sum(&h1, 2, 2)?.compose(&extend_to_direct_sum(&h2, 2, 2)?)?;
        t.record("extension-composition", composed == separately, || format!("{h1} then {h2}"));
    }

    for (n, p, l) in [(2, 2, 2), (2, 3, 1), (3, 2, 1)] {
        let found = enumerate_beautiful(n, p, l)?;
        let units: Vec<Vec<u64>> = (0..n).map(|i| (0..n).map(|j| u64::from(i == j)).collect()).collect();
        let same = found.iter().sorted().eq(units.iter().sorted());
        t.record("beautiful-are-projections", same, || format!("n={n}, p={p}, l={l}: found {found:?}"));
    }
    Ok(t)
}
