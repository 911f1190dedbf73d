//! Finite abelian p-groups `Z(p^e1) ⊕ … ⊕ Z(p^er)` and the subgroup oracles
//! (closure, purity, divisibility) that definable formulas are checked against.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bits::BitSet;
use crate::error::GroupError;

/// Default cap on the group order for subgroup enumeration.
pub const DEFAULT_GROUP_CAP: usize = 64;

/// Groups at most this large keep a full addition table.
const TABLE_LIMIT: usize = 1024;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Exponent of `p` in `n`; `None` for `n == 0`.
pub fn valuation(p: u64, mut n: u64) -> Option<u32> {
    if n == 0 {
        return None;
    }
    let mut v = 0;
    while n.is_multiple_of(p) {
        n /= p;
        v += 1;
    }
    Some(v)
}

/// Isomorphism type of a finite abelian p-group: prime and sorted exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PGroupShape {
    p: u64,
    exps: Vec<u32>,
}

/// A group element as a tuple of residues, one per cyclic summand.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupElement {
    pub coords: Vec<u64>,
}

/// The p-height of an element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Height {
    Finite(u32),
    Infinite,
}

impl PGroupShape {
    pub fn new(p: u64, mut exps: Vec<u32>) -> Result<Self, GroupError> {
        if !is_prime(p) {
            return Err(GroupError::NotPrime(p));
        }
        if let Some(&e) = exps.iter().find(|&&e| e == 0) {
            return Err(GroupError::ZeroExponent(e));
        }
        exps.sort_unstable();
        Ok(PGroupShape { p, exps })
    }

    /// The elementary abelian or homogeneous group `Z(p^l)^n`.
    pub fn homogeneous(p: u64, l: u32, n: usize) -> Result<Self, GroupError> {
        Self::new(p, vec![l; n])
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn rank(&self) -> usize {
        self.exps.len()
    }

    pub fn max_exp(&self) -> u32 {
        self.exps.last().copied().unwrap_or(0)
    }

    pub fn modulus(&self, i: usize) -> u64 {
        self.p.pow(self.exps[i])
    }

    pub fn cardinality(&self) -> u128 {
        (self.p as u128).pow(self.exps.iter().sum())
    }

    /// Least `n` with `nA = 0`.
    pub fn exponent(&self) -> u64 {
        self.p.pow(self.max_exp())
    }

    /// `(exponent, multiplicity)` pairs in ascending exponent order.
    pub fn multiplicities(&self) -> Vec<(u32, usize)> {
        let mut out: Vec<(u32, usize)> = Vec::new();
        for &e in &self.exps {
            match out.last_mut() {
                Some((last, count)) if *last == e => *count += 1,
                _ => out.push((e, 1)),
            }
        }
        out
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement { coords: vec![0; self.rank()] }
    }

    /// Builds an element, reducing each coordinate modulo its summand order.
    pub fn element(&self, coords: &[u64]) -> Result<GroupElement, GroupError> {
        if coords.len() != self.rank() {
            return Err(GroupError::InvalidElement(format!(
                "expected {} coordinates, got {}",
                self.rank(),
                coords.len()
            )));
        }
        Ok(GroupElement { coords: coords.iter().enumerate().map(|(i, &c)| c % self.modulus(i)).collect() })
    }

    fn check(&self, a: &GroupElement) -> Result<(), GroupError> {
        if a.coords.len() != self.rank() || a.coords.iter().enumerate().any(|(i, &c)| c >= self.modulus(i)) {
            return Err(GroupError::ShapeMismatch(format!("{a} is not an element of {self}")));
        }
        Ok(())
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement, GroupError> {
        self.check(a)?;
        self.check(b)?;
        Ok(GroupElement { coords: (0..self.rank()).map(|i| (a.coords[i] + b.coords[i]) % self.modulus(i)).collect() })
    }

    pub fn neg(&self, a: &GroupElement) -> Result<GroupElement, GroupError> {
        self.check(a)?;
        Ok(GroupElement {
            coords: (0..self.rank()).map(|i| (self.modulus(i) - a.coords[i]) % self.modulus(i)).collect(),
        })
    }

    pub fn scale(&self, k: u64, a: &GroupElement) -> Result<GroupElement, GroupError> {
        self.check(a)?;
        Ok(GroupElement {
            coords: (0..self.rank())
                .map(|i| {
                    let m = self.modulus(i) as u128;
                    ((k as u128 % m) * a.coords[i] as u128 % m) as u64
                })
                .collect(),
        })
    }

    /// Least power of `p` annihilating `a`, read off the coordinate valuations.
    pub fn order(&self, a: &GroupElement) -> Result<u64, GroupError> {
        self.check(a)?;
        let m = a
            .coords
            .iter()
            .enumerate()
            .filter_map(|(i, &c)| valuation(self.p, c).map(|v| self.exps[i] - v))
            .max()
            .unwrap_or(0);
        Ok(self.p.pow(m))
    }

    /// Greatest `m` such that `p^m x = a` is solvable, found by scanning the group.
    pub fn height(&self, a: &GroupElement) -> Result<Height, GroupError> {
        self.check(a)?;
        if a.coords.iter().all(|&c| c == 0) {
            return Ok(Height::Infinite);
        }
        let mut m = 0;
        loop {
            let n = self.p.pow(m + 1);
            let solvable = self.elements().any(|x| self.scale(n, &x).ok().as_ref() == Some(a));
            if !solvable {
                return Ok(Height::Finite(m));
            }
            m += 1;
        }
    }

    /// All elements in lexicographic coordinate order.
    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        let total = self.cardinality();
        (0..total).map(move |mut idx| {
            let mut coords = vec![0; self.rank()];
            for i in (0..self.rank()).rev() {
                let m = self.modulus(i) as u128;
                coords[i] = (idx % m) as u64;
                idx /= m;
            }
            GroupElement { coords }
        })
    }
}

impl fmt::Display for PGroupShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let exps: Vec<String> = self.exps.iter().map(u32::to_string).collect();
        write!(f, "p={};exps={}", self.p, exps.join(","))
    }
}

impl FromStr for PGroupShape {
    type Err = GroupError;

    /// Parses `p=<prime>;exps=<comma list>`, case-insensitive, whitespace ignored.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || GroupError::BadSpec(s.to_string());
        let cleaned: String = s.chars().filter(|c| !c.is_whitespace()).collect::<String>().to_lowercase();
        let mut p = None;
        let mut exps = None;
        for part in cleaned.split(';').filter(|part| !part.is_empty()) {
            let (key, value) = part.split_once('=').ok_or_else(bad)?;
            match key {
                "p" => p = Some(value.parse::<u64>().map_err(|_| bad())?),
                "exps" => {
                    let list: Result<Vec<u32>, _> =
                        value.split(',').filter(|v| !v.is_empty()).map(|v| v.parse::<u32>()).collect();
                    exps = Some(list.map_err(|_| bad())?);
                }
                _ => return Err(bad()),
            }
        }
        PGroupShape::new(p.ok_or_else(bad)?, exps.ok_or_else(bad)?)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(u64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A subgroup given by its sorted member list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SubgroupSet {
    pub shape: PGroupShape,
    pub members: Vec<GroupElement>,
}

impl SubgroupSet {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, a: &GroupElement) -> bool {
        self.members.binary_search(a).is_ok()
    }
}

/// An indexed copy of a finite group; element `i` is the `i`-th element in
/// lexicographic order, so index order and member order agree.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    shape: PGroupShape,
    elems: Vec<GroupElement>,
    strides: Vec<usize>,
    add_table: Option<Vec<u32>>,
    neg: Vec<u32>,
}

impl FiniteGroup {
    pub fn new(shape: &PGroupShape, cap: usize) -> Result<Self, GroupError> {
        let order = shape.cardinality();
        if order > cap as u128 {
            return Err(GroupError::CapExceeded { what: format!("group {shape}"), needed: order, cap: cap as u128 });
        }
        let n = order as usize;
        let elems: Vec<GroupElement> = shape.elements().collect();
        let mut strides = vec![1usize; shape.rank()];
        for i in (0..shape.rank().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * shape.modulus(i + 1) as usize;
        }
        let mut group = FiniteGroup { shape: shape.clone(), elems, strides, add_table: None, neg: Vec::new() };
        group.neg = (0..n).map(|i| group.index_of(&shape.neg(&group.elems[i]).unwrap()) as u32).collect();
        if n <= TABLE_LIMIT {
            let mut table = vec![0u32; n * n];
            for i in 0..n {
                for j in 0..n {
                    table[i * n + j] = group.add_slow(i, j) as u32;
                }
            }
            group.add_table = Some(table);
        }
        Ok(group)
    }

    pub fn shape(&self) -> &PGroupShape {
        &self.shape
    }

    pub fn size(&self) -> usize {
        self.elems.len()
    }

    pub fn element(&self, i: usize) -> &GroupElement {
        &self.elems[i]
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elems
    }

    pub fn index_of(&self, a: &GroupElement) -> usize {
        a.coords.iter().zip(&self.strides).map(|(&c, &s)| c as usize * s).sum()
    }

    fn add_slow(&self, i: usize, j: usize) -> usize {
        let mut idx = 0;
        for k in 0..self.shape.rank() {
            let m = self.shape.modulus(k);
            idx += ((self.elems[i].coords[k] + self.elems[j].coords[k]) % m) as usize * self.strides[k];
        }
        idx
    }

    #[inline]
    pub fn add(&self, i: usize, j: usize) -> usize {
        match &self.add_table {
            Some(t) => t[i * self.elems.len() + j] as usize,
            None => self.add_slow(i, j),
        }
    }

    #[inline]
    pub fn neg(&self, i: usize) -> usize {
        self.neg[i] as usize
    }

    pub fn scale(&self, k: u64, i: usize) -> usize {
        let e = self.shape.scale(k, &self.elems[i]).expect("element of this group");
        self.index_of(&e)
    }

    pub fn order_of(&self, i: usize) -> u64 {
        self.shape.order(&self.elems[i]).expect("element of this group")
    }

    /// `{k·g}` for all `k`.
    pub fn cyclic(&self, g: usize) -> BitSet {
        let mut set = BitSet::new(self.size());
        let mut x = 0;
        loop {
            if !set.insert(x) {
                break;
            }
            x = self.add(x, g);
        }
        set
    }

    /// `H + ⟨g⟩` for a subgroup `H`.
    fn join_cyclic(&self, h: &BitSet, g: usize) -> BitSet {
        let mut out = h.clone();
        let multiples: Vec<usize> = self.cyclic(g).iter().collect();
        for x in h.iter() {
            for &m in &multiples {
                out.insert(self.add(x, m));
            }
        }
        out
    }

    /// Smallest subgroup containing the given indices.
    pub fn closure(&self, gens: impl IntoIterator<Item = usize>) -> BitSet {
        let mut h = BitSet::from_indices(self.size(), [0]);
        for g in gens {
            if !h.contains(g) {
                h = self.join_cyclic(&h, g);
            }
        }
        h
    }

    pub fn is_subgroup(&self, set: &BitSet) -> bool {
        set.contains(0) && set.iter().all(|a| set.iter().all(|b| set.contains(self.add(a, b))))
    }

    /// Every subgroup once, in canonical order (lexicographic on member lists).
    pub fn subgroups(&self) -> Vec<BitSet> {
        let trivial = BitSet::from_indices(self.size(), [0]);
        let mut seen: HashSet<BitSet> = HashSet::from([trivial.clone()]);
        let mut queue = VecDeque::from([trivial]);
        let mut all = Vec::new();
        while let Some(h) = queue.pop_front() {
            for g in 0..self.size() {
                if !h.contains(g) {
                    let k = self.join_cyclic(&h, g);
                    if seen.insert(k.clone()) {
                        queue.push_back(k);
                    }
                }
            }
            all.push(h);
        }
        all.sort_by_cached_key(|s| s.iter().collect::<Vec<_>>());
        all
    }

    /// `{n·x : x ∈ set}`.
    pub fn multiply_set(&self, n: u64, set: &BitSet) -> BitSet {
        BitSet::from_indices(self.size(), set.iter().map(|x| self.scale(n, x)))
    }

    pub fn is_pure(&self, h: &BitSet) -> bool {
        let whole = BitSet::full(self.size());
        (0..=self.shape.max_exp()).all(|k| {
            let n = self.shape.p.pow(k);
            let nh = self.multiply_set(n, h);
            let na = self.multiply_set(n, &whole);
            let mut meet = h.clone();
            for x in h.iter() {
                if !na.contains(x) {
                    meet.remove(x);
                }
            }
            nh == meet
        })
    }

    /// `A = pA + H`.
    pub fn quotient_is_divisible(&self, h: &BitSet) -> bool {
        let pa = self.multiply_set(self.shape.p, &BitSet::full(self.size()));
        let mut sum = BitSet::new(self.size());
        for x in pa.iter() {
            for y in h.iter() {
                sum.insert(self.add(x, y));
            }
        }
        sum.count() == self.size()
    }

    /// `H = pH`.
    pub fn is_divisible(&self, h: &BitSet) -> bool {
        self.multiply_set(self.shape.p, h) == *h
    }

    /// Exhaustive search for a complement `K` with `H ∩ K = 0` and `H + K = A`.
    pub fn has_complement(&self, h: &BitSet) -> bool {
        let target = self.size() / h.count();
        self.subgroups().iter().any(|k| k.count() == target && h.iter().all(|x| x == 0 || !k.contains(x)))
    }

    pub fn is_cyclic(&self, h: &BitSet) -> bool {
        h.iter().any(|g| self.cyclic(g) == *h)
    }

    /// Exponents (ascending) of the cyclic decomposition of the subgroup `h`.
    pub fn invariants(&self, h: &BitSet) -> Vec<u32> {
        let p = self.shape.p;
        let log = |mut n: usize| {
            let mut v = 0u32;
            while n > 1 {
                n /= p as usize;
                v += 1;
            }
            v
        };
        let ranks: Vec<u32> = (0..=self.shape.max_exp())
            .map(|k| log(h.iter().filter(|&x| self.scale(p.pow(k), x) == 0).count()))
            .collect();
        let mut out = Vec::new();
        for k in 1..ranks.len() {
            let at_least_k = ranks[k] - ranks[k - 1];
            let at_least_next = if k + 1 < ranks.len() { ranks[k + 1] - ranks[k] } else { 0 };
            for _ in 0..(at_least_k - at_least_next) {
                out.push(k as u32);
            }
        }
        out
    }

    pub fn to_subgroup_set(&self, h: &BitSet) -> SubgroupSet {
        SubgroupSet { shape: self.shape.clone(), members: h.iter().map(|i| self.elems[i].clone()).collect() }
    }

    pub fn bits_of(&self, s: &SubgroupSet) -> Result<BitSet, GroupError> {
        if s.shape != self.shape {
            return Err(GroupError::ShapeMismatch(format!("{} vs {}", s.shape, self.shape)));
        }
        Ok(BitSet::from_indices(self.size(), s.members.iter().map(|m| self.index_of(m))))
    }
}

fn group_for(shape: &PGroupShape) -> Result<FiniteGroup, GroupError> {
    FiniteGroup::new(shape, 1 << 16)
}

/// Smallest subgroup containing `gens`.
pub fn subgroup_closure(shape: &PGroupShape, gens: &[GroupElement]) -> Result<SubgroupSet, GroupError> {
    let g = group_for(shape)?;
    for a in gens {
        shape.check(a)?;
    }
    let h = g.closure(gens.iter().map(|a| g.index_of(a)));
    Ok(g.to_subgroup_set(&h))
}

/// All subgroups in canonical order; errors when the group order exceeds `cap`.
pub fn enumerate_subgroups(shape: &PGroupShape, cap: usize) -> Result<Vec<SubgroupSet>, GroupError> {
    let g = FiniteGroup::new(shape, cap)?;
    Ok(g.subgroups().iter().map(|h| g.to_subgroup_set(h)).collect())
}

pub fn is_pure(h: &SubgroupSet) -> Result<bool, GroupError> {
    let g = group_for(&h.shape)?;
    Ok(g.is_pure(&g.bits_of(h)?))
}

pub fn quotient_is_divisible(h: &SubgroupSet) -> Result<bool, GroupError> {
    let g = group_for(&h.shape)?;
    Ok(g.quotient_is_divisible(&g.bits_of(h)?))
}

pub fn is_divisible_subgroup(h: &SubgroupSet) -> Result<bool, GroupError> {
    let g = group_for(&h.shape)?;
    Ok(g.is_divisible(&g.bits_of(h)?))
}

/// Every shape with the given prime and total exponent at most `max_total`.
pub fn shapes_up_to(p: u64, max_total: u32) -> Vec<PGroupShape> {
    fn partitions(rest: u32, max_part: u32, acc: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        out.push(acc.clone());
        for part in (1..=max_part.min(rest)).rev() {
            acc.push(part);
            partitions(rest - part, part, acc, out);
            acc.pop();
        }
    }
    let mut all = Vec::new();
    partitions(max_total, max_total, &mut Vec::new(), &mut all);
    let mut shapes: Vec<PGroupShape> =
        all.into_iter().map(|exps| PGroupShape::new(p, exps).expect("prime given")).collect();
    shapes.sort_by_key(|s| (s.cardinality(), s.exps().to_vec()));
    shapes
}

/// Every shape of order at most `max_order`, ordered by (order, p, exponents).
pub fn shapes_of_order_at_most(max_order: u128) -> Vec<PGroupShape> {
    let mut shapes = vec![PGroupShape::new(2, vec![]).expect("2 is prime")];
    for p in (2..=max_order as u64).filter(|&p| is_prime(p)) {
        let mut total = 0;
        while (p as u128).pow(total + 1) <= max_order {
            total += 1;
        }
        shapes.extend(shapes_up_to(p, total).into_iter().filter(|s| s.rank() > 0));
    }
    shapes.sort_by_key(|s| (s.cardinality(), s.p(), s.exps().to_vec()));
    shapes
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z2z4() -> PGroupShape {
        PGroupShape::new(2, vec![1, 2]).unwrap()
    }

    fn el(s: &PGroupShape, c: &[u64]) -> GroupElement {
        s.element(c).unwrap()
    }

    #[test]
    fn shape_validation() {
        assert_eq!(PGroupShape::new(4, vec![1]), Err(GroupError::NotPrime(4)));
        assert_eq!(PGroupShape::new(2, vec![0]), Err(GroupError::ZeroExponent(0)));
        assert_eq!(PGroupShape::new(3, vec![2, 1]).unwrap().exps(), &[1, 2]);
        assert_eq!(z2z4().cardinality(), 8);
        assert_eq!(PGroupShape::new(2, vec![]).unwrap().cardinality(), 1);
    }

    #[test]
    fn spec_text_round_trip() {
        let s: PGroupShape = " P = 2 ; EXPS = 2,1 ".parse().unwrap();
        assert_eq!(s, z2z4());
        assert_eq!(s.to_string(), "p=2;exps=1,2");
        let zero: PGroupShape = "p=3;exps=".parse().unwrap();
        assert_eq!(zero.rank(), 0);
        assert!("p=2".parse::<PGroupShape>().is_err());
        assert!("p=6;exps=1".parse::<PGroupShape>().is_err());
    }

    #[test]
    fn arithmetic_examples() {
        let s = z2z4();
        assert_eq!(s.add(&el(&s, &[1, 3]), &el(&s, &[1, 2])).unwrap(), el(&s, &[0, 1]));
        let a = el(&s, &[1, 3]);
        assert_eq!(s.add(&a, &s.zero()).unwrap(), a);
        assert_eq!(s.add(&a, &s.neg(&a).unwrap()).unwrap(), s.zero());
        let other = PGroupShape::new(2, vec![1]).unwrap();
        assert!(matches!(s.add(&a, &other.zero()), Err(GroupError::ShapeMismatch(_))));
    }

    #[test]
    fn order_and_height_examples() {
        let s = z2z4();
        assert_eq!(s.order(&el(&s, &[1, 2])).unwrap(), 2);
        assert_eq!(s.order(&el(&s, &[0, 1])).unwrap(), 4);
        assert_eq!(s.order(&s.zero()).unwrap(), 1);
        assert_eq!(s.height(&el(&s, &[0, 2])).unwrap(), Height::Finite(1));
        assert_eq!(s.height(&el(&s, &[1, 0])).unwrap(), Height::Finite(0));
        assert_eq!(s.height(&s.zero()).unwrap(), Height::Infinite);
    }

    #[test]
    fn closure_examples() {
        let z4 = PGroupShape::new(2, vec![2]).unwrap();
        assert_eq!(subgroup_closure(&z4, &[]).unwrap().members, vec![z4.zero()]);
        assert_eq!(subgroup_closure(&z4, &[el(&z4, &[2])]).unwrap().len(), 2);
        let v4 = PGroupShape::new(2, vec![1, 1]).unwrap();
        assert_eq!(subgroup_closure(&v4, &[el(&v4, &[1, 0]), el(&v4, &[0, 1])]).unwrap().len(), 4);
    }

    /// Brute-force oracle: closures of every subset, deduplicated.
    fn subgroups_by_subsets(g: &FiniteGroup) -> usize {
        let n = g.size();
        let mut found = HashSet::new();
        for mask in 0u64..(1 << n) {
            found.insert(g.closure((0..n).filter(|i| mask >> i & 1 == 1)));
        }
        found.len()
    }

    #[test]
    fn subgroup_counts_match_subset_oracle() {
        for exps in [vec![2], vec![1, 1], vec![1, 2], vec![1, 1, 1], vec![3]] {
            let shape = PGroupShape::new(2, exps).unwrap();
            let g = FiniteGroup::new(&shape, 64).unwrap();
            assert_eq!(g.subgroups().len(), subgroups_by_subsets(&g), "{shape}");
        }
        let counts: Vec<usize> = [vec![2], vec![1, 1], vec![1, 2]]
            .into_iter()
            .map(|e| enumerate_subgroups(&PGroupShape::new(2, e).unwrap(), 64).unwrap().len())
            .collect();
        assert_eq!(counts, vec![3, 5, 8]);
    }

    #[test]
    fn subgroup_enumeration_is_canonical_and_capped() {
        let subs = enumerate_subgroups(&z2z4(), 64).unwrap();
        assert_eq!(subs[0].members, vec![z2z4().zero()]);
        for w in subs.windows(2) {
            assert!(w[0].members < w[1].members);
        }
        let big = PGroupShape::new(2, vec![1; 7]).unwrap();
        assert!(matches!(enumerate_subgroups(&big, 64), Err(GroupError::CapExceeded { .. })));
    }

    #[test]
    fn purity_examples() {
        let s = z2z4();
        let g = FiniteGroup::new(&s, 64).unwrap();
        assert!(g.is_pure(&BitSet::full(8)));
        assert!(g.is_pure(&BitSet::from_indices(8, [0])));
        // <(1,2)> = {0,(1,2)}: 2A = {0,(0,2)} meets it in {0} and 2H = {0}.
        let h = g.closure([g.index_of(&el(&s, &[1, 2]))]);
        assert!(g.is_pure(&h));
        // <(0,2)> lies in 2A but 2H = 0.
        let h2 = g.closure([g.index_of(&el(&s, &[0, 2]))]);
        assert!(!g.is_pure(&h2));
    }

    #[test]
    fn divisibility_examples() {
        let z2 = PGroupShape::new(2, vec![1]).unwrap();
        let g = FiniteGroup::new(&z2, 64).unwrap();
        assert!(g.quotient_is_divisible(&BitSet::full(2)));
        assert!(!g.quotient_is_divisible(&BitSet::from_indices(2, [0])));
        assert!(!g.is_divisible(&BitSet::full(2)));
        assert!(g.is_divisible(&BitSet::from_indices(2, [0])));
        let z4 = PGroupShape::new(2, vec![2]).unwrap();
        let g4 = FiniteGroup::new(&z4, 64).unwrap();
        assert!(!g4.quotient_is_divisible(&BitSet::from_indices(4, [0, 2])));
    }

    #[test]
    fn invariants_of_subgroups() {
        let s = z2z4();
        let g = FiniteGroup::new(&s, 64).unwrap();
        assert_eq!(g.invariants(&BitSet::full(8)), vec![1, 2]);
        assert_eq!(g.invariants(&BitSet::from_indices(8, [0])), Vec::<u32>::new());
        let h = g.closure([g.index_of(&el(&s, &[0, 1]))]);
        assert_eq!(g.invariants(&h), vec![2]);
    }

    #[test]
    fn shape_lists() {
        let shapes = shapes_of_order_at_most(8);
        let texts: Vec<String> = shapes.iter().map(|s| s.to_string()).collect();
        assert_eq!(
            texts,
            vec![
                "p=2;exps=",
                "p=2;exps=1",
                "p=3;exps=1",
                "p=2;exps=1,1",
                "p=2;exps=2",
                "p=5;exps=1",
                "p=7;exps=1",
                "p=2;exps=1,1,1",
                "p=2;exps=1,2",
                "p=2;exps=3"
            ]
        );
        assert_eq!(shapes_up_to(3, 4).len(), 5 + 3 + 2 + 1 + 1);
    }
}
