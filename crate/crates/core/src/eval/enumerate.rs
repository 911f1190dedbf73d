//! Candidate relations for predicate quantifiers.

use itertools::Itertools;

use super::relation::{tuple_space, Relation};
use super::structure::Structure;
use crate::bits::BitSet;
use crate::endoring::endo_count_formula;
use crate::error::{EvalError, GroupError};
use crate::formulas::Guard;
use crate::pgroup::FiniteGroup;

/// Upper bound on generator-image tuples tried when building homomorphisms.
const HOM_SEARCH_CAP: u128 = 1 << 24;

/// Number of subsets of an `m`-set with at most `k` elements, saturating.
pub fn bounded_subset_count(m: usize, k: usize) -> u128 {
    let mut total: u128 = 0;
    let mut binom: u128 = 1;
    for j in 0..=k.min(m) {
        total = total.saturating_add(binom);
        binom = binom.saturating_mul((m - j) as u128) / (j as u128 + 1);
    }
    total
}

/// All relations of at most `max_size` tuples, by size and then lexicographically.
pub fn relations_by_size(arity: usize, carrier: usize, max_size: usize) -> impl Iterator<Item = Relation> {
    let m = tuple_space(arity, carrier);
    (0..=max_size.min(m))
        .flat_map(move |k| (0..m).combinations(k).map(move |c| Relation::from_indices(arity, carrier, c)))
}

/// Every relation of the given arity; errors above the full-enumeration cap.
pub fn full_relations(name: &str, arity: usize, carrier: usize, cap: usize) -> Result<Vec<Relation>, EvalError> {
    let m = tuple_space(arity, carrier);
    if m > cap {
        return Err(EvalError::SecondOrderCap { name: name.to_string(), size: m as u128, cap: cap as u128 });
    }
    Ok(relations_by_size(arity, carrier, m).collect())
}

/// Relations with at most `kappa` tuples. The number of relations is bounded
/// by `2^cap`, matching the full-enumeration budget.
pub fn bounded_relations(
    name: &str,
    arity: usize,
    carrier: usize,
    kappa: usize,
    cap: usize,
) -> Result<Vec<Relation>, EvalError> {
    let m = tuple_space(arity, carrier);
    let count = bounded_subset_count(m, kappa);
    let budget = 1u128.checked_shl(cap as u32).unwrap_or(u128::MAX);
    if count > budget {
        return Err(EvalError::SecondOrderCap { name: name.to_string(), size: count, cap: budget });
    }
    Ok(relations_by_size(arity, carrier, kappa).collect())
}

/// Graphs of all homomorphisms from the subgroup generated by `set` into the group.
pub fn hom_graphs_from(group: &FiniteGroup, set: &BitSet) -> Result<Vec<Relation>, EvalError> {
    let n = group.size();
    let domain = group.closure(set.iter());
    // Greedy generating set of the domain.
    let mut gens = Vec::new();
    let mut span = group.closure([]);
    for x in domain.iter() {
        if !span.contains(x) {
            gens.push(x);
            span = group.closure(gens.iter().copied());
        }
    }
    // A generator of order d can only go to elements killed by d.
    let targets: Vec<Vec<usize>> = gens
        .iter()
        .map(|&g| {
            let d = group.order_of(g);
            (0..n).filter(|&y| d.is_multiple_of(group.order_of(y))).collect()
        })
        .collect();
    let tries: u128 = targets.iter().map(|t| t.len() as u128).product();
    if tries > HOM_SEARCH_CAP {
        return Err(
            GroupError::CapExceeded { what: "homomorphism search".into(), needed: tries, cap: HOM_SEARCH_CAP }.into()
        );
    }
    let mut out = Vec::new();
    let mut map: Vec<Option<usize>> = vec![None; n];
    let mut queue = Vec::with_capacity(n);
    let mut digits = vec![0usize; gens.len()];
    loop {
        let images: Vec<usize> = digits.iter().zip(&targets).map(|(&d, t)| t[d]).collect();
        map.iter_mut().for_each(|m| *m = None);
        map[0] = Some(0);
        queue.clear();
        queue.push(0);
        let mut consistent = true;
        let mut head = 0;
        'bfs: while head < queue.len() {
            let h = queue[head];
            head += 1;
            let fh = map[h].expect("visited");
            for (&g, &img) in gens.iter().zip(&images) {
                let t = group.add(h, g);
                let ft = group.add(fh, img);
                match map[t] {
                    None => {
                        map[t] = Some(ft);
                        queue.push(t);
                    }
                    Some(prev) if prev != ft => {
                        consistent = false;
                        break 'bfs;
                    }
                    Some(_) => {}
                }
            }
        }
        if consistent {
            out.push(Relation::from_indices(2, n, map.iter().enumerate().filter_map(|(x, y)| y.map(|y| x * n + y))));
        }
        // Odometer step, last generator fastest.
        let mut k = digits.len();
        loop {
            if k == 0 {
                return Ok(out);
            }
            k -= 1;
            digits[k] += 1;
            if digits[k] < targets[k].len() {
                break;
            }
            digits[k] = 0;
        }
    }
}

/// The relations a registered guard yields on a structure.
///
/// `param` is the unary relation a `HomGraphFromSubset` guard is applied to;
/// `max_ring` bounds the size of End(A) for `EndoGraph`.
pub fn guard_enumerator(
    structure: &Structure,
    guard: &Guard,
    arity: usize,
    param: Option<&Relation>,
    max_ring: usize,
) -> Result<Vec<Relation>, EvalError> {
    let unknown = |context: &str| EvalError::UnknownGuard { guard: format!("{guard:?}"), context: context.to_string() };
    let group = structure.as_group().ok_or_else(|| unknown("ring structures"))?;
    match guard {
        Guard::Subgroup => {
            if arity != 1 {
                return Err(unknown(&format!("arity {arity}")));
            }
            Ok(group.subgroups().into_iter().map(Relation::unary).collect())
        }
        Guard::EndoGraph => {
            if arity != 2 {
                return Err(unknown(&format!("arity {arity}")));
            }
            let needed = endo_count_formula(group.shape());
            if needed > max_ring as u128 {
                return Err(GroupError::CapExceeded {
                    what: format!("End({})", group.shape()),
                    needed,
                    cap: max_ring as u128,
                }
                .into());
            }
            hom_graphs_from(group, &BitSet::full(group.size()))
        }
        Guard::HomGraphFromSubset(name) => {
            if arity != 2 {
                return Err(unknown(&format!("arity {arity}")));
            }
            let set = param.ok_or_else(|| EvalError::Unbound(name.clone()))?;
            if set.arity() != 1 || set.carrier() != group.size() {
                return Err(unknown("a parameter that is not a unary relation on the group"));
            }
            hom_graphs_from(group, set.bits())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::endoring::endo_count_formula;
    use crate::pgroup::PGroupShape;

    fn group(spec: &str) -> Structure {
        Structure::group(&spec.parse::<PGroupShape>().unwrap()).unwrap()
    }

    #[test]
    fn subset_counts() {
        assert_eq!(bounded_subset_count(4, 4), 16);
        assert_eq!(bounded_subset_count(4, 10), 16);
        assert_eq!(bounded_subset_count(5, 2), 1 + 5 + 10);
        assert_eq!(relations_by_size(1, 4, 2).count(), 11);
        let sizes: Vec<usize> = relations_by_size(1, 3, 3).map(|r| r.len()).collect();
        assert!(sizes.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn caps_are_errors() {
        assert!(matches!(full_relations("P", 2, 5, 16), Err(EvalError::SecondOrderCap { .. })));
        assert_eq!(full_relations("P", 2, 2, 16).unwrap().len(), 16);
        assert!(bounded_relations("P", 2, 8, 2, 16).is_ok());
        assert!(bounded_relations("P", 2, 8, 64, 16).is_err());
    }

    #[test]
    fn guard_counts() {
        let z4 = group("p=2;exps=2");
        assert_eq!(guard_enumerator(&z4, &Guard::EndoGraph, 2, None, 1 << 16).unwrap().len(), 4);
        let v4 = group("p=2;exps=1,1");
        assert_eq!(guard_enumerator(&v4, &Guard::Subgroup, 1, None, 1 << 16).unwrap().len(), 5);
        assert_eq!(guard_enumerator(&v4, &Guard::EndoGraph, 2, None, 1 << 16).unwrap().len(), 16);
        assert!(matches!(
            guard_enumerator(&v4, &Guard::Subgroup, 2, None, 1 << 16),
            Err(EvalError::UnknownGuard { .. })
        ));
        let ring = Structure::ring(&"p=2;exps=1".parse().unwrap()).unwrap();
        assert!(guard_enumerator(&ring, &Guard::Subgroup, 1, None, 1 << 16).is_err());
    }

    #[test]
    fn endo_graphs_match_ring_size() {
        for spec in ["p=2;exps=", "p=2;exps=1,2", "p=3;exps=1,1", "p=2;exps=1,1,1", "p=2;exps=1,3"] {
            let s = group(spec);
            let graphs = guard_enumerator(&s, &Guard::EndoGraph, 2, None, 1 << 16).unwrap();
            assert_eq!(graphs.len() as u128, endo_count_formula(s.shape()), "{spec}");
            assert!(graphs.iter().all(|g| g.len() == s.size()));
        }
    }

    #[test]
    fn hom_graphs_from_cyclic_subgroup() {
        // Homs from {0,2} in Z/4 send 2 to an element of order at most 2.
        let s = group("p=2;exps=2");
        let g = s.as_group().unwrap();
        let param = Relation::unary(BitSet::from_indices(4, [2]));
        let homs = guard_enumerator(&s, &Guard::HomGraphFromSubset("B".into()), 2, Some(&param), 1 << 16).unwrap();
        assert_eq!(homs.len(), 2);
        for h in &homs {
            assert_eq!(h.len(), 2);
            assert!(h.contains(&[0, 0]));
        }
        assert_eq!(hom_graphs_from(g, &BitSet::new(4)).unwrap().len(), 1);
    }
}
