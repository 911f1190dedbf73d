//! Linear combinations over `Z(p^l)` and the classification of the beautiful ones:
//! those stable under diagonal substitution and fixing constant tuples.

use std::fmt;

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{DepthError, GroupError};
use crate::pgroup::is_prime;

/// Default cap on the number of variable assignments the substitution check may visit.
pub const DEFAULT_BEAUTIFUL_BUDGET: u128 = 1 << 24;

/// `k1·x1 + … + kn·xn` over `Z(p^l)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LinearCombination {
    coeffs: Vec<u64>,
    modulus: u64,
}

impl LinearCombination {
    pub fn new(coeffs: Vec<u64>, prime: u64, exp: u32) -> Result<Self, DepthError> {
        if !is_prime(prime) {
            return Err(GroupError::NotPrime(prime).into());
        }
        if exp == 0 {
            return Err(GroupError::ZeroExponent(exp).into());
        }
        if coeffs.is_empty() {
            return Err(DepthError::NoVariables);
        }
        let modulus = prime.pow(exp);
        if let Some(&k) = coeffs.iter().find(|&&k| k >= modulus) {
            return Err(GroupError::InvalidElement(format!("coefficient {k} is not below {modulus}")).into());
        }
        Ok(LinearCombination { coeffs, modulus })
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn arity(&self) -> usize {
        self.coeffs.len()
    }

    pub fn eval(&self, xs: &[u64]) -> u64 {
        self.coeffs.iter().zip(xs).map(|(k, x)| k * x % self.modulus).sum::<u64>() % self.modulus
    }

    /// The nonzero terms as `(variable index, coefficient)` pairs.
    pub fn reduced(&self) -> Vec<(usize, u64)> {
        self.coeffs.iter().copied().enumerate().filter(|&(_, k)| k != 0).collect()
    }

    /// `τ(x, …, x) = x` for every `x`.
    pub fn is_idempotent(&self) -> bool {
        (0..self.modulus).all(|x| self.eval(&vec![x; self.arity()]) == x)
    }

    /// `τ(τ(x¹), …, τ(xⁿ)) = τ(x¹₁, …, xⁿₙ)` for every `n × n` matrix of values.
    pub fn substitutes_diagonally(&self, budget: u128) -> Result<bool, DepthError> {
        let n = self.arity();
        let cases = (self.modulus as u128).checked_pow((n * n) as u32).unwrap_or(u128::MAX);
        if cases > budget {
            return Err(DepthError::Budget(format!("{cases} substitution instances, budget is {budget}")));
        }
        let ok = (0..n * n).map(|_| 0..self.modulus).multi_cartesian_product().all(|flat| {
            let inner: Vec<u64> = flat.chunks(n).map(|row| self.eval(row)).collect();
            let diagonal: Vec<u64> = (0..n).map(|i| flat[i * n + i]).collect();
            self.eval(&inner) == self.eval(&diagonal)
        });
        Ok(ok)
    }
}

impl fmt::Display for LinearCombination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self.coeffs.iter().enumerate().map(|(i, k)| format!("{k}x{}", i + 1)).collect();
        write!(f, "{} (mod {})", terms.join(" + "), self.modulus)
    }
}

pub fn is_beautiful(k: &[u64], prime: u64, exp: u32) -> Result<bool, DepthError> {
    is_beautiful_with_budget(k, prime, exp, DEFAULT_BEAUTIFUL_BUDGET)
}

/// Both conditions checked by evaluation over `Z(p^l)`; the cheap idempotence
/// condition runs first.
pub fn is_beautiful_with_budget(k: &[u64], prime: u64, exp: u32, budget: u128) -> Result<bool, DepthError> {
    let tau = LinearCombination::new(k.to_vec(), prime, exp)?;
    let cases = (tau.modulus as u128).checked_pow((k.len() * k.len()) as u32).unwrap_or(u128::MAX);
    if cases > budget {
        return Err(DepthError::Budget(format!("{cases} substitution instances, budget is {budget}")));
    }
    if !tau.is_idempotent() {
        return Ok(false);
    }
    tau.substitutes_diagonally(budget)
}

/// All beautiful coefficient tuples of length `n`, in lexicographic order.
pub fn enumerate_beautiful(n: usize, prime: u64, exp: u32) -> Result<Vec<Vec<u64>>, DepthError> {
    LinearCombination::new(vec![0; n], prime, exp)?;
    let modulus = prime.pow(exp);
    let tuples: Vec<Vec<u64>> = (0..n).map(|_| 0..modulus).multi_cartesian_product().collect();
    let verdicts: Result<Vec<bool>, DepthError> = tuples.par_iter().map(|k| is_beautiful(k, prime, exp)).collect();
    Ok(tuples.into_iter().zip(verdicts?).filter(|(_, b)| *b).map(|(k, _)| k).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit_vectors(n: usize) -> Vec<Vec<u64>> {
        (0..n).rev().map(|i| (0..n).map(|j| u64::from(i == j)).collect()).collect()
    }

    #[test]
    fn two_variables_mod_four() {
        assert_eq!(enumerate_beautiful(2, 2, 2).unwrap(), vec![vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn projections_are_beautiful() {
        for (prime, exp) in [(2, 1), (2, 2), (3, 1), (5, 1)] {
            for n in 1..=3 {
                let mut k = vec![0; n];
                k[0] = 1;
                assert!(is_beautiful(&k, prime, exp).unwrap());
            }
        }
    }

    #[test]
    fn non_projections_fail() {
        assert!(!is_beautiful(&[2, 3], 2, 2).unwrap());
        // Coefficients summing to one that are not a projection break substitution.
        assert!(!is_beautiful(&[2, 2], 3, 1).unwrap());
        assert!(LinearCombination::new(vec![2, 2], 3, 1).unwrap().is_idempotent());
    }

    #[test]
    fn classification_matches_the_algebraic_consequence() {
        for (n, prime, exp) in [(1, 2, 1), (2, 2, 1), (3, 2, 1), (2, 3, 1), (3, 3, 1), (2, 2, 2), (3, 2, 2), (2, 5, 1)]
        {
            let found = enumerate_beautiful(n, prime, exp).unwrap();
            assert_eq!(found, unit_vectors(n), "n={n} p={prime} l={exp}");
            let m = prime.pow(exp);
            for k in &found {
                assert_eq!(k.iter().sum::<u64>() % m, 1);
                for (i, j) in (0..n).cartesian_product(0..n) {
                    let delta = if i == j { k[i] } else { 0 };
                    assert_eq!(k[i] * k[j] % m, delta);
                }
            }
        }
    }

    #[test]
    fn bad_inputs_are_rejected() {
        assert!(matches!(is_beautiful(&[4, 0], 2, 2), Err(DepthError::Group(_))));
        assert!(matches!(is_beautiful(&[1], 4, 1), Err(DepthError::Group(GroupError::NotPrime(4)))));
        assert!(matches!(is_beautiful(&[1, 0, 0, 0], 3, 2), Err(DepthError::Budget(_))));
        assert!(matches!(enumerate_beautiful(0, 2, 1), Err(DepthError::NoVariables)));
    }

    #[test]
    fn reduced_form_drops_zero_terms() {
        let tau = LinearCombination::new(vec![0, 3, 0, 1], 2, 2).unwrap();
        assert_eq!(tau.reduced(), vec![(1, 3), (3, 1)]);
        assert_eq!(tau.eval(&[1, 1, 1, 1]), 0);
    }
}
