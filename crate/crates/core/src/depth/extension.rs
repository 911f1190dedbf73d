use serde::{Deserialize, Serialize};

use super::graph::{depths, Depth, FunctionGraph};
use crate::endoring::Endomorphism;
use crate::error::{DepthError, GroupError};
use crate::pgroup::{FiniteGroup, PGroupShape};

/// Largest homogeneous group `check_extension_depths` builds by default (`|I| = 4`, `p^l = 9`).
pub const DEFAULT_EXTENSION_BUDGET: usize = 6561;

/// The additive extension of `h` to `⊕_{i∈I} Z(p^l)`, sending the basis
/// element `a_i` to `a_{h(i)}`.
pub fn extend_to_direct_sum(h: &FunctionGraph, prime: u64, exp: u32) -> Result<Endomorphism, DepthError> {
    let shape = PGroupShape::homogeneous(prime, exp, h.len())?;
    let mut matrix = vec![vec![0u64; h.len()]; h.len()];
    for i in 0..h.len() {
        matrix[h.apply(i)][i] += 1;
    }
    Ok(Endomorphism::new(&shape, matrix)?)
}

/// An endomorphism as a self-map on the element indices of `group`.
pub fn action_graph(group: &FiniteGroup, e: &Endomorphism) -> Result<FunctionGraph, DepthError> {
    let map = group
        .elements()
        .iter()
        .map(|a| e.apply(a).map(|b| group.index_of(&b)))
        .collect::<Result<Vec<_>, GroupError>>()?;
    FunctionGraph::new(map)
}

/// A nonzero element whose depth under the extension breaks the expected bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub coords: Vec<u64>,
    pub depth: Depth,
    pub bound: Depth,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtensionDepthReport {
    pub graph: FunctionGraph,
    pub prime: u64,
    pub exp: u32,
    /// Nonzero elements checked.
    pub checked: usize,
    /// Depth below the minimum index depth over some representation.
    pub lower_bound: Vec<Violation>,
    /// Depth differing from the minimum index depth over the support.
    pub equality: Vec<Violation>,
}

impl ExtensionDepthReport {
    pub fn holds(&self) -> bool {
        self.lower_bound.is_empty() && self.equality.is_empty()
    }
}

pub fn check_extension_depths(h: &FunctionGraph, prime: u64, exp: u32) -> Result<ExtensionDepthReport, DepthError> {
    check_extension_depths_with_budget(h, prime, exp, DEFAULT_EXTENSION_BUDGET)
}

/// Computes the depth of every nonzero element of `⊕ Z(p^l)` under `h̃`
/// directly, and compares it with the depths of the indices in its support.
///
/// Every representation `Σ k_j a_{t_j}` of `v` uses a set of indices
/// containing the support of `v`, so the lower bound is checked over all
/// such supersets. The zero element has infinite depth and is skipped.
pub fn check_extension_depths_with_budget(
    h: &FunctionGraph,
    prime: u64,
    exp: u32,
    budget: usize,
) -> Result<ExtensionDepthReport, DepthError> {
    let size = (prime as u128).checked_pow(exp * h.len() as u32).unwrap_or(u128::MAX);
    if size > budget as u128 {
        return Err(DepthError::Budget(format!("the group has {size} elements, budget is {budget}")));
    }
    let shape = PGroupShape::homogeneous(prime, exp, h.len())?;
    let group = FiniteGroup::new(&shape, budget)?;
    let ext = action_graph(&group, &extend_to_direct_sum(h, prime, exp)?)?;
    let element_depths = depths(&ext);
    let index_depths = depths(h);
    let n = h.len();
    let mut report = ExtensionDepthReport {
        graph: h.clone(),
        prime,
        exp,
        checked: 0,
        lower_bound: Vec::new(),
        equality: Vec::new(),
    };
    for (idx, v) in group.elements().iter().enumerate() {
        let support: u32 = (0..n).filter(|&i| v.coords[i] != 0).fold(0, |m, i| m | 1 << i);
        if support == 0 {
            continue;
        }
        report.checked += 1;
        let got = element_depths[idx];
        let min_over =
            |set: u32| (0..n).filter(|i| set >> i & 1 == 1).map(|i| index_depths[i]).min().expect("nonempty");
        let violation = |bound| Violation { coords: v.coords.clone(), depth: got, bound };
        for superset in (0u32..1 << n).filter(|s| s & support == support) {
            let bound = min_over(superset);
            if got < bound {
                report.lower_bound.push(violation(bound));
            }
        }
        let exact = min_over(support);
        if got != exact {
            report.equality.push(violation(exact));
        }
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommutingDepthReport {
    pub checked: usize,
    /// Points `x` with `Dp(x, h1) > Dp(h2(x), h1)`.
    pub violations: Vec<usize>,
}

impl CommutingDepthReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks `Dp(x, h1) ≤ Dp(h2(x), h1)` at every point for commuting `h1`, `h2`.
pub fn check_commuting_depths(h1: &FunctionGraph, h2: &FunctionGraph) -> Result<CommutingDepthReport, DepthError> {
    if h1.len() != h2.len() || !h1.commutes_with(h2) {
        return Err(DepthError::NotCommuting);
    }
    let d = depths(h1);
    let violations = (0..h1.len()).filter(|&x| d[x] > d[h2.apply(x)]).collect();
    Ok(CommutingDepthReport { checked: h1.len(), violations })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn graph(text: &str) -> FunctionGraph {
        text.parse().unwrap()
    }

    #[test]
    fn extensions_of_small_maps() {
        let shape = PGroupShape::homogeneous(2, 1, 3).unwrap();
        assert_eq!(extend_to_direct_sum(&FunctionGraph::identity(3), 2, 1).unwrap(), Endomorphism::identity(&shape));
        let swap = extend_to_direct_sum(&graph("domain=1..2; map=2,1"), 2, 1).unwrap();
        assert_eq!(swap.matrix(), &[vec![0, 1], vec![1, 0]]);
        let merge = extend_to_direct_sum(&graph("domain=1..2; map=1,1"), 2, 2).unwrap();
        let g = FiniteGroup::new(merge.shape(), 64).unwrap();
        let sum = g.elements().iter().find(|a| a.coords == [1, 1]).unwrap();
        assert_eq!(merge.apply(sum).unwrap().coords, vec![2, 0]);
    }

    #[test]
    fn chain_example_depths() {
        let h = graph("domain=1..3; map=2,3,3");
        let shape = PGroupShape::homogeneous(2, 1, 3).unwrap();
        let group = FiniteGroup::new(&shape, 64).unwrap();
        let d = depths(&action_graph(&group, &extend_to_direct_sum(&h, 2, 1).unwrap()).unwrap());
        let at = |coords: [u64; 3]| d[group.elements().iter().position(|a| a.coords == coords).unwrap()];
        assert_eq!(at([1, 1, 0]), Depth::Finite(0));
        assert_eq!(at([0, 0, 1]), Depth::Infinite);
        assert_eq!(at([0, 0, 0]), Depth::Infinite);
        assert!(check_extension_depths(&h, 2, 1).unwrap().holds());
    }

    #[test]
    fn extension_depths_hold_on_every_small_map() {
        for (prime, exp) in [(2, 1), (2, 2), (3, 1)] {
            for n in 1..=3 {
                for h in FunctionGraph::all(n) {
                    let report = check_extension_depths(&h, prime, exp).unwrap();
                    assert!(report.holds(), "{h} over Z({prime}^{exp}): {report:?}");
                    assert_eq!(report.checked, (prime.pow(exp * n as u32) - 1) as usize);
                }
            }
        }
    }

    #[test]
    fn extension_check_respects_the_budget() {
        let h = FunctionGraph::identity(5);
        assert!(matches!(check_extension_depths(&h, 3, 2), Err(DepthError::Budget(_))));
    }

    #[test]
    fn extension_preserves_composition() {
        for h1 in FunctionGraph::all(3) {
            for h2 in FunctionGraph::all(3) {
                let composed = extend_to_direct_sum(&h1.then(&h2), 3, 1).unwrap();
                let separately = extend_to_direct_sum(&h1, 3, 1)
                    .unwrap()
                    .compose(&extend_to_direct_sum(&h2, 3, 1).unwrap())
                    .unwrap();
                assert_eq!(composed, separately);
            }
        }
    }

    #[test]
    fn commuting_depths_on_small_maps() {
        for n in 1..=6 {
            for h in FunctionGraph::all(n) {
                assert!(check_commuting_depths(&h, &FunctionGraph::identity(n)).unwrap().holds());
                assert!(check_commuting_depths(&h, &h).unwrap().holds(), "{h}");
            }
        }
        let a = graph("domain=1..3; map=2,3,3");
        let b = graph("domain=1..3; map=1,1,1");
        assert!(matches!(check_commuting_depths(&a, &b), Err(DepthError::NotCommuting)));
    }

    #[test]
    fn commuting_with_identity_is_equality() {
        let h = graph("domain=1..4; map=2,3,3,1");
        let d = depths(&h);
        let id = FunctionGraph::identity(4);
        assert!((0..4).all(|x| d[x] == d[id.apply(x)]));
        assert!(check_commuting_depths(&h, &id).unwrap().holds());
    }

    proptest! {
        #[test]
        fn powers_of_one_map_keep_depth_order(map in prop::collection::vec(0usize..8, 1..8), k in 0usize..5) {
            let n = map.len();
            let h = FunctionGraph::new(map.into_iter().map(|y| y % n).collect()).unwrap();
            let mut power = FunctionGraph::identity(n);
            for _ in 0..k {
                power = power.then(&h);
            }
            prop_assert!(check_commuting_depths(&h, &power).unwrap().holds());
            prop_assert!(check_commuting_depths(&power, &h).unwrap().holds());
        }
    }
}
