use std::fmt;

use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::kernel::Scalar;

/// Dense `n × n` matrix of exact rationals. Indices are 1-based.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SquareMatrix {
    dim: usize,
    entries: Vec<Scalar>,
}

impl SquareMatrix {
    pub fn zeros(dim: usize) -> Self {
        SquareMatrix {
            dim,
            entries: vec![Scalar::zero(); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 1..=dim {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let dim = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != dim) {
            return Err(Error::DimensionMismatch(format!(
                "row of length {} in a matrix with {dim} rows",
                bad.len()
            )));
        }
        Ok(SquareMatrix {
            dim,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// Convenience constructor for integer test data.
    pub fn from_i64(rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Scalar::from(x)).collect())
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[(i - 1) * self.dim + (j - 1)]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Scalar) {
        self.entries[(i - 1) * self.dim + (j - 1)] = value;
    }

    pub fn rows(&self) -> Vec<Vec<Scalar>> {
        self.entries
            .chunks(self.dim.max(1))
            .take(self.dim)
            .map(|r| r.to_vec())
            .collect()
    }

    pub fn transpose(&self) -> SquareMatrix {
        let mut t = Self::zeros(self.dim);
        for i in 1..=self.dim {
            for j in 1..=self.dim {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, rhs: &SquareMatrix) -> Result<SquareMatrix> {
        if self.dim != rhs.dim {
            return Err(Error::DimensionMismatch(format!(
                "{0}x{0} times {1}x{1}",
                self.dim, rhs.dim
            )));
        }
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 1..=n {
            for j in 1..=n {
                let v: Scalar = (1..=n).map(|l| self.get(i, l) * rhs.get(l, j)).sum();
                out.set(i, j, v);
            }
        }
        Ok(out)
    }

    pub fn is_antisymmetric(&self) -> bool {
        (1..=self.dim).all(|i| (i..=self.dim).all(|j| *self.get(i, j) == -self.get(j, i)))
    }

    /// Permutes rows and columns: `out[i][j] = self[rows(i)][cols(j)]`.
    pub fn permuted(&self, rows: &[usize], cols: &[usize]) -> SquareMatrix {
        let mut out = Self::zeros(self.dim);
        for i in 1..=self.dim {
            for j in 1..=self.dim {
                out.set(i, j, self.get(rows[i - 1], cols[j - 1]).clone());
            }
        }
        out
    }

    /// The elementary transvection `I + c·E_{ij}`, `i ≠ j`.
    pub fn transvection(dim: usize, i: usize, j: usize, c: Scalar) -> SquareMatrix {
        assert!(i != j, "transvection needs i != j");
        let mut m = Self::identity(dim);
        m.set(i, j, c);
        m
    }

    /// Diagonal matrix with the given entries.
    pub fn diagonal(diag: Vec<Scalar>) -> SquareMatrix {
        let mut m = Self::zeros(diag.len());
        for (i, d) in diag.into_iter().enumerate() {
            m.set(i + 1, i + 1, d);
        }
        m
    }
}

impl fmt::Debug for SquareMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.rows()).finish()
    }
}

/// Small nonzero rational with numerator in `[-3, 3]` and denominator in
/// `[1, 3]`.
pub fn small_rational<R: Rng>(rng: &mut R) -> Scalar {
    loop {
        let p: i64 = rng.gen_range(-3..=3);
        if p != 0 {
            return Scalar::new(p, rng.gen_range(1..=3i64));
        }
    }
}

/// Product of `factors` random transvections `I + c·E_{ij}` drawn from `rng`.
/// The determinant is exactly one by construction.
pub fn random_special_linear_with<R: Rng>(rng: &mut R, n: usize, factors: usize) -> SquareMatrix {
    assert!(n >= 2, "SL_n sampling needs n >= 2");
    let mut g = SquareMatrix::identity(n);
    for _ in 0..factors {
        let i = rng.gen_range(1..=n);
        let mut j = rng.gen_range(1..n);
        if j >= i {
            j += 1;
        }
        let t = SquareMatrix::transvection(n, i, j, small_rational(rng));
        g = t.mul(&g).expect("same dimension");
    }
    g
}

/// Matrix of independent small rationals, zero with probability 1/8.
pub fn random_matrix_with<R: Rng>(rng: &mut R, n: usize) -> SquareMatrix {
    let mut m = SquareMatrix::zeros(n);
    for i in 1..=n {
        for j in 1..=n {
            if !rng.gen_ratio(1, 8) {
                m.set(i, j, small_rational(rng));
            }
        }
    }
    m
}

/// Antisymmetric matrix with small rational entries above the diagonal.
pub fn random_antisymmetric_with<R: Rng>(rng: &mut R, n: usize) -> SquareMatrix {
    let mut m = SquareMatrix::zeros(n);
    for i in 1..=n {
        for j in i + 1..=n {
            let v = small_rational(rng);
            m.set(j, i, -&v);
            m.set(i, j, v);
        }
    }
    m
}

/// Seeded form of [`random_special_linear_with`].
pub fn random_special_linear(n: usize, seed: u64, factors: usize) -> SquareMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_special_linear_with(&mut rng, n, factors)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::determinant;

    #[test]
    fn zero_factors_is_identity() {
        assert_eq!(random_special_linear(2, 7, 0), SquareMatrix::identity(2));
    }

    #[test]
    fn transvection_products_have_unit_determinant() {
        let g = random_special_linear(3, 42, 6);
        assert_ne!(g, SquareMatrix::identity(3));
        assert_eq!(determinant(&g.rows()), Scalar::one());
        for seed in 0..20 {
            let g = random_special_linear(4, seed, 10);
            assert_eq!(determinant(&g.rows()), Scalar::one());
        }
    }

    #[test]
    fn seeded_sampling_is_reproducible() {
        assert_eq!(random_special_linear(3, 9, 5), random_special_linear(3, 9, 5));
        assert_ne!(random_special_linear(3, 9, 5), random_special_linear(3, 10, 5));
    }

    #[test]
    fn rejects_ragged_rows() {
        assert!(SquareMatrix::from_rows(vec![vec![Scalar::one()], vec![]]).is_err());
    }
}
