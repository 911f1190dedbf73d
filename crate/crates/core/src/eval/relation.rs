use std::fmt;

use crate::bits::BitSet;

/// A relation of fixed arity over a carrier `0..carrier`.
///
/// Tuples are indexed lexicographically, first coordinate most significant.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Relation {
    arity: usize,
    carrier: usize,
    bits: BitSet,
}

impl Relation {
    pub fn empty(arity: usize, carrier: usize) -> Self {
        Relation { arity, carrier, bits: BitSet::new(tuple_space(arity, carrier)) }
    }

    /// A relation from tuple indices in `0..carrier^arity`.
    pub fn from_indices(arity: usize, carrier: usize, items: impl IntoIterator<Item = usize>) -> Self {
        Relation { arity, carrier, bits: BitSet::from_indices(tuple_space(arity, carrier), items) }
    }

    pub fn from_tuples<'a>(arity: usize, carrier: usize, tuples: impl IntoIterator<Item = &'a [usize]>) -> Self {
        let mut rel = Self::empty(arity, carrier);
        for t in tuples {
            rel.insert(t);
        }
        rel
    }

    pub fn unary(set: BitSet) -> Self {
        Relation { arity: 1, carrier: set.len(), bits: set }
    }

    /// The graph `{(i, map[i])}` of a map on the carrier.
    pub fn graph(map: &[usize]) -> Self {
        let n = map.len();
        Self::from_indices(2, n, map.iter().enumerate().map(|(i, &j)| i * n + j))
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn carrier(&self) -> usize {
        self.carrier
    }

    pub fn bits(&self) -> &BitSet {
        &self.bits
    }

    /// Number of tuples in the relation.
    pub fn len(&self) -> usize {
        self.bits.count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn index(&self, tuple: &[usize]) -> usize {
        debug_assert_eq!(tuple.len(), self.arity);
        tuple.iter().fold(0, |acc, &x| acc * self.carrier + x)
    }

    #[inline]
    pub fn contains(&self, tuple: &[usize]) -> bool {
        tuple.iter().all(|&x| x < self.carrier) && self.bits.contains(self.index(tuple))
    }

    pub fn insert(&mut self, tuple: &[usize]) {
        assert!(tuple.len() == self.arity && tuple.iter().all(|&x| x < self.carrier), "tuple outside the carrier");
        let i = self.index(tuple);
        self.bits.insert(i);
    }

    pub fn tuples(&self) -> Vec<Vec<usize>> {
        self.bits
            .iter()
            .map(|mut i| {
                let mut t = vec![0; self.arity];
                for slot in t.iter_mut().rev() {
                    *slot = i % self.carrier;
                    i /= self.carrier;
                }
                t
            })
            .collect()
    }
}

impl fmt::Debug for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.arity == 1 {
            f.debug_set().entries(self.bits.iter()).finish()
        } else {
            f.debug_set().entries(self.tuples()).finish()
        }
    }
}

/// `carrier^arity`, saturating.
pub fn tuple_space(arity: usize, carrier: usize) -> usize {
    (0..arity).fold(1usize, |acc, _| acc.saturating_mul(carrier))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tuple_indexing_is_lexicographic() {
        let r = Relation::from_tuples(2, 3, [&[0, 2][..], &[2, 1][..]]);
        assert!(r.contains(&[0, 2]));
        assert!(!r.contains(&[2, 0]));
        assert!(!r.contains(&[3, 0]));
        assert_eq!(r.tuples(), vec![vec![0, 2], vec![2, 1]]);
        assert_eq!(Relation::graph(&[1, 1, 0]).tuples(), vec![vec![0, 1], vec![1, 1], vec![2, 0]]);
        assert_eq!(tuple_space(3, 4), 64);
        assert_eq!(tuple_space(0, 4), 1);
    }
}
