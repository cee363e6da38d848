//! Exact scalars and the combinatorics shared by every other module.
//!
//! Indices are 1-based everywhere: a multi-index over `C^n` holds entries in
//! `1..=n`, matching the basis `e_1, ..., e_n`.

mod partition;
mod perm;
mod scalar;

use std::fmt;
use std::ops::{Add, Mul, Neg};

use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub use partition::{rectangle_dimension, Partition};
pub use perm::{
    as_permutation, inversion_count, inversion_sign, next_permutation, AllPermutations, Permutation,
};
pub use scalar::Scalar;

/// Index of a basis tensor `e_{i_1} ⊗ ... ⊗ e_{i_m}`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiIndex(Vec<usize>);

impl MultiIndex {
    pub fn new(entries: Vec<usize>) -> Self {
        MultiIndex(entries)
    }

    /// Checks every entry is in `1..=n`.
    pub fn checked(entries: Vec<usize>, n: usize) -> Result<Self> {
        if let Some(bad) = entries.iter().find(|&&x| x == 0 || x > n) {
            return Err(Error::Validation(format!(
                "index {bad} out of range 1..={n} in {entries:?}"
            )));
        }
        Ok(MultiIndex(entries))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<usize> {
        self.0
    }

    pub fn concat(&self, other: &MultiIndex) -> MultiIndex {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        MultiIndex(v)
    }

    pub fn has_repeats(&self) -> bool {
        let mut sorted = self.0.clone();
        sorted.sort_unstable();
        sorted.windows(2).any(|w| w[0] == w[1])
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl From<Vec<usize>> for MultiIndex {
    fn from(v: Vec<usize>) -> Self {
        MultiIndex(v)
    }
}

/// Coefficient ring for tensors and evaluators: exact rationals, or
/// polynomials over them.
pub trait Coeff:
    Clone + PartialEq + fmt::Debug + Zero + One + Neg<Output = Self> + Add<Output = Self> + Mul<Output = Self>
{
    fn from_scalar(s: Scalar) -> Self;
}

impl Coeff for Scalar {
    fn from_scalar(s: Scalar) -> Self {
        s
    }
}
