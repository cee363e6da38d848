use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Nonincreasing sequence of positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::Validation(format!("{parts:?} has a zero part")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Validation(format!("{parts:?} is not nonincreasing")));
        }
        Ok(Partition { parts })
    }

    /// The `rows × cols` rectangle `(cols, cols, ..., cols)`.
    pub fn rectangle(rows: usize, cols: usize) -> Self {
        if cols == 0 {
            return Partition { parts: Vec::new() };
        }
        Partition {
            parts: vec![cols; rows],
        }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn weight(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Part `i` (0-based), zero past the end.
    pub fn part(&self, i: usize) -> usize {
        self.parts.get(i).copied().unwrap_or(0)
    }

    /// Column lengths of the Young diagram.
    pub fn conjugate(&self) -> Partition {
        let cols = self.part(0);
        let parts = (0..cols)
            .map(|j| self.parts.iter().take_while(|&&p| p > j).count())
            .collect();
        Partition { parts }
    }

    /// Hook length of every box, row by row.
    pub fn hook_lengths(&self) -> Vec<Vec<usize>> {
        let conj = self.conjugate();
        self.parts
            .iter()
            .enumerate()
            .map(|(i, &row)| {
                (0..row)
                    .map(|j| (row - j - 1) + (conj.part(j) - i - 1) + 1)
                    .collect()
            })
            .collect()
    }

    /// Number of standard Young tableaux: `|λ|! / Π hooks`.
    pub fn standard_tableaux(&self) -> BigUint {
        let numer = (1..=self.weight()).fold(BigUint::one(), |acc, i| acc * i);
        let denom = self
            .hook_lengths()
            .iter()
            .flatten()
            .fold(BigUint::one(), |acc, &h| acc * h);
        numer / denom
    }
}

/// Dimension of the `SL_n`-invariants in the m-th tensor power of `C^n`: the
/// number of standard tableaux of the `n × (m/n)` rectangle, or zero when
/// `n` does not divide `m`.
pub fn rectangle_dimension(n: usize, m: usize) -> BigUint {
    if n == 0 || !m.is_multiple_of(n) {
        return BigUint::zero();
    }
    Partition::rectangle(n, m / n).standard_tableaux()
}
