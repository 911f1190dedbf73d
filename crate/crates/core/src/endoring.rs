//! End(A) as constrained integer matrices.
//!
//! Products follow the left-to-right convention: `compose(f, g)` applies `f`
//! first and then `g`, so its matrix is `M_g · M_f`. The ring-to-group
//! translations depend on this orientation.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bits::BitSet;
use crate::error::GroupError;
use crate::pgroup::{FiniteGroup, GroupElement, PGroupShape, SubgroupSet};

/// Default cap on the number of ring elements a table may hold.
pub const DEFAULT_RING_CAP: usize = 1 << 16;

/// Rings at most this large get precomputed operation tables.
const TABLE_LIMIT: usize = 1024;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Endomorphism {
    shape: PGroupShape,
    matrix: Vec<Vec<u64>>,
}

/// `p^{max(e_i - e_j, 0)}`: every entry `m[i][j]` must be a multiple of this.
fn entry_step(shape: &PGroupShape, i: usize, j: usize) -> u64 {
    let (ei, ej) = (shape.exps()[i], shape.exps()[j]);
    shape.p().pow(ei.saturating_sub(ej))
}

/// Number of admissible values for entry `(i, j)`: `p^{min(e_i, e_j)}`.
fn entry_radix(shape: &PGroupShape, i: usize, j: usize) -> u64 {
    let (ei, ej) = (shape.exps()[i], shape.exps()[j]);
    shape.p().pow(ei.min(ej))
}

/// `Π p^{min(e_i, e_j)}`.
pub fn endo_count_formula(shape: &PGroupShape) -> u128 {
    let r = shape.rank();
    let mut total = 1u128;
    for i in 0..r {
        for j in 0..r {
            total *= entry_radix(shape, i, j) as u128;
        }
    }
    total
}

/// Counts homomorphisms by brute force over generator images: a tuple of images
/// defines an endomorphism exactly when each image is killed by the order of
/// its generator.
pub fn count_endos_by_generator_images(shape: &PGroupShape) -> u128 {
    let elems: Vec<GroupElement> = shape.elements().collect();
    let orders: Vec<u64> = elems.iter().map(|a| shape.order(a).expect("own element")).collect();
    let r = shape.rank();
    let admissible: Vec<Vec<bool>> =
        (0..r).map(|j| orders.iter().map(|&o| shape.modulus(j).is_multiple_of(o)).collect()).collect();
    let n = elems.len();
    let mut digits = vec![0usize; r];
    let mut count = 0u128;
    if r == 0 {
        return 1;
    }
    loop {
        if digits.iter().enumerate().all(|(j, &d)| admissible[j][d]) {
            count += 1;
        }
        let mut k = 0;
        loop {
            digits[k] += 1;
            if digits[k] < n {
                break;
            }
            digits[k] = 0;
            k += 1;
            if k == r {
                return count;
            }
        }
    }
}

impl Endomorphism {
    /// Validates dimensions and the divisibility constraint, reducing entries
    /// modulo their row's summand order.
    pub fn new(shape: &PGroupShape, matrix: Vec<Vec<u64>>) -> Result<Self, GroupError> {
        let r = shape.rank();
        if matrix.len() != r || matrix.iter().any(|row| row.len() != r) {
            return Err(GroupError::InvalidMatrix(format!("expected a {r}x{r} matrix")));
        }
        let mut reduced = matrix;
        for (i, row) in reduced.iter_mut().enumerate() {
            for (j, entry) in row.iter_mut().enumerate() {
                *entry %= shape.modulus(i);
                let step = entry_step(shape, i, j);
                if !entry.is_multiple_of(step) {
                    return Err(GroupError::InvalidMatrix(format!(
                        "entry ({i},{j}) = {entry} is not a multiple of {step}"
                    )));
                }
            }
        }
        Ok(Endomorphism { shape: shape.clone(), matrix: reduced })
    }

    pub fn scalar(shape: &PGroupShape, n: u64) -> Self {
        let r = shape.rank();
        let matrix = (0..r).map(|i| (0..r).map(|j| if i == j { n % shape.modulus(i) } else { 0 }).collect()).collect();
        Endomorphism { shape: shape.clone(), matrix }
    }

    pub fn identity(shape: &PGroupShape) -> Self {
        Self::scalar(shape, 1)
    }

    pub fn zero(shape: &PGroupShape) -> Self {
        Self::scalar(shape, 0)
    }

    pub fn shape(&self) -> &PGroupShape {
        &self.shape
    }

    pub fn matrix(&self) -> &[Vec<u64>] {
        &self.matrix
    }

    fn same_shape(&self, other: &PGroupShape) -> Result<(), GroupError> {
        if &self.shape != other {
            return Err(GroupError::ShapeMismatch(format!("{} vs {}", self.shape, other)));
        }
        Ok(())
    }

    pub fn apply(&self, a: &GroupElement) -> Result<GroupElement, GroupError> {
        let s = &self.shape;
        s.add(a, &s.zero())?;
        let coords = (0..s.rank())
            .map(|i| {
                let m = s.modulus(i) as u128;
                let sum: u128 = (0..s.rank()).map(|j| self.matrix[i][j] as u128 * a.coords[j] as u128 % m).sum();
                (sum % m) as u64
            })
            .collect();
        Ok(GroupElement { coords })
    }

    /// Apply `self` first, then `g`.
    pub fn compose(&self, g: &Endomorphism) -> Result<Endomorphism, GroupError> {
        self.same_shape(&g.shape)?;
        let s = &self.shape;
        let r = s.rank();
        let matrix = (0..r)
            .map(|i| {
                let m = s.modulus(i) as u128;
                (0..r)
                    .map(|j| {
                        let sum: u128 = (0..r).map(|k| g.matrix[i][k] as u128 * self.matrix[k][j] as u128 % m).sum();
                        (sum % m) as u64
                    })
                    .collect()
            })
            .collect();
        Ok(Endomorphism { shape: s.clone(), matrix })
    }

    pub fn add(&self, g: &Endomorphism) -> Result<Endomorphism, GroupError> {
        self.same_shape(&g.shape)?;
        let s = &self.shape;
        let matrix = self
            .matrix
            .iter()
            .zip(&g.matrix)
            .enumerate()
            .map(|(i, (a, b))| a.iter().zip(b).map(|(x, y)| (x + y) % s.modulus(i)).collect())
            .collect();
        Ok(Endomorphism { shape: s.clone(), matrix })
    }

    pub fn neg(&self) -> Endomorphism {
        let s = &self.shape;
        let matrix = self
            .matrix
            .iter()
            .enumerate()
            .map(|(i, row)| row.iter().map(|x| (s.modulus(i) - x) % s.modulus(i)).collect())
            .collect();
        Endomorphism { shape: s.clone(), matrix }
    }

    pub fn scale(&self, n: u64) -> Endomorphism {
        Endomorphism::scalar(&self.shape, n).compose(self).expect("same shape")
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.iter().flatten().all(|&x| x == 0)
    }

    pub fn is_idempotent(&self) -> bool {
        self.compose(self).expect("same shape") == *self
    }
}

impl fmt::Display for Endomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .matrix
            .iter()
            .map(|row| format!("[{}]", row.iter().map(u64::to_string).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "[{}]", rows.join(","))
    }
}

/// End(A) enumerated as a finite carrier. Element `i` is the `i`-th matrix
/// in lexicographic row-major order, so index 0 is the zero map.
#[derive(Clone, Debug)]
pub struct RingTable {
    shape: PGroupShape,
    size: usize,
    /// Per entry (row-major): step and radix.
    steps: Vec<u64>,
    radices: Vec<u64>,
    /// Decoded matrices, `rank²` entries per element.
    entries: Vec<u32>,
    add_table: Option<Vec<u32>>,
    mul_table: Option<Vec<u32>>,
    one: usize,
}

/// Enumerates End(A); errors when the ring would exceed `cap` elements.
pub fn enumerate_endos(shape: &PGroupShape, cap: usize) -> Result<RingTable, GroupError> {
    RingTable::new(shape, cap)
}

impl RingTable {
    pub fn new(shape: &PGroupShape, cap: usize) -> Result<Self, GroupError> {
        let needed = endo_count_formula(shape);
        if needed > cap as u128 {
            return Err(GroupError::CapExceeded { what: format!("End({shape})"), needed, cap: cap as u128 });
        }
        let r = shape.rank();
        let mut steps = Vec::with_capacity(r * r);
        let mut radices = Vec::with_capacity(r * r);
        for i in 0..r {
            for j in 0..r {
                steps.push(entry_step(shape, i, j));
                radices.push(entry_radix(shape, i, j));
            }
        }
        let size = needed as usize;
        let mut entries = vec![0u32; size * r * r];
        for idx in 0..size {
            let mut rest = idx as u64;
            for k in (0..r * r).rev() {
                entries[idx * r * r + k] = ((rest % radices[k]) * steps[k]) as u32;
                rest /= radices[k];
            }
        }
        let mut table =
            RingTable { shape: shape.clone(), size, steps, radices, entries, add_table: None, mul_table: None, one: 0 };
        table.one = table.index_of(&Endomorphism::identity(shape))?;
        if size <= TABLE_LIMIT {
            let mut add = vec![0u32; size * size];
            let mut mul = vec![0u32; size * size];
            for i in 0..size {
                for j in 0..size {
                    add[i * size + j] = table.add_slow(i, j) as u32;
                    mul[i * size + j] = table.mul_slow(i, j) as u32;
                }
            }
            table.add_table = Some(add);
            table.mul_table = Some(mul);
        }
        Ok(table)
    }

    pub fn shape(&self) -> &PGroupShape {
        &self.shape
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn one(&self) -> usize {
        self.one
    }

    fn rank(&self) -> usize {
        self.shape.rank()
    }

    fn row(&self, idx: usize) -> &[u32] {
        let rr = self.rank() * self.rank();
        &self.entries[idx * rr..(idx + 1) * rr]
    }

    fn encode(&self, flat: &[u64]) -> usize {
        let mut idx = 0u64;
        for (k, &v) in flat.iter().enumerate() {
            idx = idx * self.radices[k] + v / self.steps[k];
        }
        idx as usize
    }

    pub fn element(&self, idx: usize) -> Endomorphism {
        let r = self.rank();
        let row = self.row(idx);
        let matrix = (0..r).map(|i| (0..r).map(|j| row[i * r + j] as u64).collect()).collect();
        Endomorphism { shape: self.shape.clone(), matrix }
    }

    pub fn elements(&self) -> impl Iterator<Item = Endomorphism> + '_ {
        (0..self.size).map(|i| self.element(i))
    }

    pub fn index_of(&self, f: &Endomorphism) -> Result<usize, GroupError> {
        f.same_shape(&self.shape)?;
        let flat: Vec<u64> = f.matrix.iter().flatten().copied().collect();
        Ok(self.encode(&flat))
    }

    fn add_slow(&self, a: usize, b: usize) -> usize {
        let r = self.rank();
        let (x, y) = (self.row(a), self.row(b));
        let flat: Vec<u64> = (0..r * r).map(|k| (x[k] as u64 + y[k] as u64) % self.shape.modulus(k / r)).collect();
        self.encode(&flat)
    }

    /// `a` first, then `b`: matrix `M_b · M_a`.
    fn mul_slow(&self, a: usize, b: usize) -> usize {
        let r = self.rank();
        let (ma, mb) = (self.row(a), self.row(b));
        let mut flat = vec![0u64; r * r];
        for i in 0..r {
            let m = self.shape.modulus(i);
            for j in 0..r {
                let mut sum = 0u64;
                for k in 0..r {
                    sum = (sum + mb[i * r + k] as u64 * ma[k * r + j] as u64) % m;
                }
                flat[i * r + j] = sum;
            }
        }
        self.encode(&flat)
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        match &self.add_table {
            Some(t) => t[a * self.size + b] as usize,
            None => self.add_slow(a, b),
        }
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        match &self.mul_table {
            Some(t) => t[a * self.size + b] as usize,
            None => self.mul_slow(a, b),
        }
    }

    pub fn neg(&self, a: usize) -> usize {
        let r = self.rank();
        let x = self.row(a);
        let flat: Vec<u64> = (0..r * r)
            .map(|k| {
                let m = self.shape.modulus(k / r);
                (m - x[k] as u64) % m
            })
            .collect();
        self.encode(&flat)
    }

    pub fn is_idempotent(&self, e: usize) -> bool {
        self.mul(e, e) == e
    }

    pub fn idempotents(&self) -> Vec<usize> {
        (0..self.size).filter(|&e| self.is_idempotent(e)).collect()
    }

    /// Exhaustive search for a splitting into two nonzero orthogonal idempotents.
    pub fn is_primitive_idempotent(&self, e: usize) -> bool {
        if e == 0 || !self.is_idempotent(e) {
            return false;
        }
        let minus_e = self.neg(e);
        !(1..self.size).any(|t1| {
            let t2 = self.neg(self.add(t1, minus_e));
            t2 != 0
                && self.is_idempotent(t1)
                && self.is_idempotent(t2)
                && self.mul(t1, t2) == 0
                && self.mul(t2, t1) == 0
        })
    }

    /// Brute-force commutant of the whole ring.
    pub fn center(&self) -> Vec<usize> {
        (0..self.size).filter(|&c| (0..self.size).all(|f| self.mul(c, f) == self.mul(f, c))).collect()
    }

    pub fn image_bits(&self, group: &FiniteGroup, f: usize) -> BitSet {
        let map = self.element(f);
        BitSet::from_indices(
            group.size(),
            group.elements().iter().map(|a| group.index_of(&map.apply(a).expect("same shape"))),
        )
    }

    pub fn kernel_bits(&self, group: &FiniteGroup, f: usize) -> BitSet {
        let map = self.element(f);
        BitSet::from_indices(
            group.size(),
            (0..group.size())
                .filter(|&i| map.apply(group.element(i)).expect("same shape").coords.iter().all(|&c| c == 0)),
        )
    }
}

/// Free-standing form of the primitivity test for a single endomorphism.
pub fn is_primitive_idempotent(e: &Endomorphism, table: &RingTable) -> Result<bool, GroupError> {
    Ok(table.is_primitive_idempotent(table.index_of(e)?))
}

pub fn center(table: &RingTable) -> Vec<Endomorphism> {
    table.center().into_iter().map(|c| table.element(c)).collect()
}

pub fn image(f: &Endomorphism) -> Result<SubgroupSet, GroupError> {
    let g = FiniteGroup::new(f.shape(), 1 << 16)?;
    let mut members: Vec<GroupElement> = g.elements().iter().map(|a| f.apply(a)).collect::<Result<_, _>>()?;
    members.sort();
    members.dedup();
    Ok(SubgroupSet { shape: f.shape().clone(), members })
}

pub fn kernel(f: &Endomorphism) -> Result<SubgroupSet, GroupError> {
    let g = FiniteGroup::new(f.shape(), 1 << 16)?;
    let zero = f.shape().zero();
    let mut members = Vec::new();
    for a in g.elements() {
        if f.apply(a)? == zero {
            members.push(a.clone());
        }
    }
    Ok(SubgroupSet { shape: f.shape().clone(), members })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shape(p: u64, exps: &[u32]) -> PGroupShape {
        PGroupShape::new(p, exps.to_vec()).unwrap()
    }

    fn diag(s: &PGroupShape, d: &[u64]) -> Endomorphism {
        let r = s.rank();
        Endomorphism::new(s, (0..r).map(|i| (0..r).map(|j| if i == j { d[i] } else { 0 }).collect()).collect()).unwrap()
    }

    #[test]
    fn constraint_is_enforced() {
        let s = shape(2, &[1, 2]);
        // Row 1 (order 4) column 0 (order 2) must be even.
        assert!(Endomorphism::new(&s, vec![vec![1, 1], vec![1, 1]]).is_err());
        assert!(Endomorphism::new(&s, vec![vec![1, 1], vec![2, 1]]).is_ok());
        assert!(Endomorphism::new(&s, vec![vec![1]]).is_err());
    }

    #[test]
    fn apply_examples() {
        let s = shape(2, &[1, 2]);
        let f = Endomorphism::new(&s, vec![vec![1, 1], vec![2, 1]]).unwrap();
        let a = s.element(&[1, 1]).unwrap();
        assert_eq!(f.apply(&a).unwrap(), s.element(&[0, 3]).unwrap());
        assert_eq!(Endomorphism::identity(&s).apply(&a).unwrap(), a);
        assert_eq!(Endomorphism::zero(&s).apply(&a).unwrap(), s.zero());
        assert_eq!(f.to_string(), "[[1,1],[2,1]]");
    }

    #[test]
    fn compose_orientation() {
        let s = shape(2, &[1, 1]);
        let f = Endomorphism::new(&s, vec![vec![1, 1], vec![0, 1]]).unwrap();
        let g = Endomorphism::new(&s, vec![vec![1, 0], vec![1, 1]]).unwrap();
        let fg = f.compose(&g).unwrap();
        for a in s.elements() {
            assert_eq!(fg.apply(&a).unwrap(), g.apply(&f.apply(&a).unwrap()).unwrap());
        }
        assert_ne!(fg, g.compose(&f).unwrap());
        assert_eq!(f.compose(&Endomorphism::identity(&s)).unwrap(), f);
        assert!(Endomorphism::zero(&s).compose(&f).unwrap().is_zero());
        let e = diag(&shape(2, &[1, 2]), &[1, 0]);
        assert_eq!(e.compose(&e).unwrap(), e);
    }

    /// Oracle: every integer matrix with entries below the row moduli, filtered by
    /// the homomorphism condition checked on all group elements.
    fn count_by_matrix_scan(s: &PGroupShape) -> usize {
        let r = s.rank();
        let cells: Vec<u64> = (0..r * r).map(|k| s.modulus(k / r)).collect();
        let total: u64 = cells.iter().product();
        let mut count = 0;
        for mut idx in 0..total {
            let mut m = vec![vec![0u64; r]; r];
            for k in (0..r * r).rev() {
                m[k / r][k % r] = idx % cells[k];
                idx /= cells[k];
            }
            // Well defined iff each column, scaled by its generator's order, vanishes.
            let ok = (0..r).all(|j| (0..r).all(|i| (m[i][j] * s.modulus(j)).is_multiple_of(s.modulus(i))));
            if ok {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn ring_sizes() {
        assert_eq!(enumerate_endos(&shape(2, &[1, 2]), DEFAULT_RING_CAP).unwrap().size(), 32);
        assert_eq!(enumerate_endos(&shape(2, &[1, 1]), DEFAULT_RING_CAP).unwrap().size(), 16);
        assert_eq!(enumerate_endos(&shape(2, &[2]), DEFAULT_RING_CAP).unwrap().size(), 4);
        for s in [shape(2, &[1, 2]), shape(2, &[1, 1, 2]), shape(3, &[1, 2]), shape(2, &[2, 3])] {
            assert_eq!(count_by_matrix_scan(&s) as u128, endo_count_formula(&s), "{s}");
            assert_eq!(count_endos_by_generator_images(&s), endo_count_formula(&s), "{s}");
        }
        assert!(matches!(enumerate_endos(&shape(2, &[1, 1, 1, 1]), 100), Err(GroupError::CapExceeded { .. })));
    }

    #[test]
    fn table_matches_matrix_arithmetic() {
        let s = shape(2, &[1, 2]);
        let t = enumerate_endos(&s, DEFAULT_RING_CAP).unwrap();
        assert!(t.element(0).is_zero());
        assert_eq!(t.element(t.one()), Endomorphism::identity(&s));
        for a in 0..t.size() {
            assert_eq!(t.index_of(&t.element(a)).unwrap(), a);
            for b in 0..t.size() {
                let (fa, fb) = (t.element(a), t.element(b));
                assert_eq!(t.element(t.add(a, b)), fa.add(&fb).unwrap());
                assert_eq!(t.element(t.mul(a, b)), fa.compose(&fb).unwrap());
            }
        }
    }

    #[test]
    fn primitive_idempotent_examples() {
        let s = shape(2, &[1, 2]);
        let t = enumerate_endos(&s, DEFAULT_RING_CAP).unwrap();
        assert!(is_primitive_idempotent(&diag(&s, &[1, 0]), &t).unwrap());
        assert!(!is_primitive_idempotent(&Endomorphism::identity(&s), &t).unwrap());
        assert!(!is_primitive_idempotent(&Endomorphism::zero(&s), &t).unwrap());
    }

    #[test]
    fn center_examples() {
        let sizes: Vec<usize> = [shape(2, &[1, 2]), shape(2, &[1, 1]), shape(2, &[2])]
            .iter()
            .map(|s| center(&enumerate_endos(s, DEFAULT_RING_CAP).unwrap()).len())
            .collect();
        assert_eq!(sizes, vec![4, 2, 4]);
        let s = shape(2, &[1, 2]);
        let c = center(&enumerate_endos(&s, DEFAULT_RING_CAP).unwrap());
        let scalars: Vec<Endomorphism> = (0..4).map(|n| Endomorphism::scalar(&s, n)).collect();
        for z in &c {
            assert!(scalars.contains(z));
        }
    }

    #[test]
    fn image_kernel_examples() {
        let s = shape(2, &[1, 2]);
        let id = Endomorphism::identity(&s);
        assert_eq!(image(&id).unwrap().len(), 8);
        assert_eq!(kernel(&id).unwrap().len(), 1);
        let z = Endomorphism::zero(&s);
        assert_eq!(image(&z).unwrap().len(), 1);
        assert_eq!(kernel(&z).unwrap().len(), 8);
        let e = diag(&s, &[1, 0]);
        assert_eq!(image(&e).unwrap().len(), 2);
        assert_eq!(kernel(&e).unwrap().len(), 4);
    }
}
