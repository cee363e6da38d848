//! Evaluators for the hyperpfaffian, the classical Pfaffian, the permanent
//! and the determinant, each paired with an independent oracle.
//!
//! The hyperpfaffian of `p` in `⊗^{2k} C^n` (with `n = 2k·d`) is
//! `⟨v, p^{⊗d}⟩`, where `v` pairs each permutation basis tensor to its sign.
//! Expanding `p^{⊗d}` sums over ordered `d`-tuples of entries of `p`; only
//! tuples whose concatenated multi-index is a permutation of `1..=n`
//! survive. Such a tuple is an ordered cover of `{1..n}` by `d` disjoint
//! entries. Every block has even length `2k`, so reordering blocks never
//! changes the sign, and each unordered cover contributes `d!` times the
//! value of any one ordering.
//!
//! [`hyperpfaffian`] enumerates unordered covers by backtracking; the
//! oracle [`hyperpfaffian_expand`] materializes `p^{⊗d}` and pairs it.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::kernel::{inversion_sign, Coeff, Permutation, Scalar};
use crate::linalg;
use crate::tensor::{SparseTensor, SquareMatrix};

/// Default cap on the number of expanded terms `(#entries)^d` in
/// [`hyperpfaffian_expand`].
pub const DEFAULT_EXPANSION_BUDGET: u64 = 10_000_000;

/// A tensor in `⊗^{2k} C^n` with `2k | n`.
#[derive(Clone, Debug, PartialEq)]
pub struct HyperpfaffianInstance<C = Scalar> {
    k: usize,
    tensor: SparseTensor<C>,
}

impl<C: Coeff> HyperpfaffianInstance<C> {
    pub fn new(k: usize, tensor: SparseTensor<C>) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidInstance("k must be positive".into()));
        }
        if tensor.order() != 2 * k {
            return Err(Error::InvalidInstance(format!(
                "tensor order {} is not 2k = {}",
                tensor.order(),
                2 * k
            )));
        }
        let n = tensor.dim();
        if n == 0 || !n.is_multiple_of(2 * k) {
            return Err(Error::InvalidInstance(format!(
                "2k = {} does not divide n = {n}",
                2 * k
            )));
        }
        Ok(HyperpfaffianInstance { k, tensor })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.tensor.dim()
    }

    /// The degree `n / 2k`.
    pub fn d(&self) -> usize {
        self.n() / (2 * self.k)
    }

    pub fn tensor(&self) -> &SparseTensor<C> {
        &self.tensor
    }
}

/// Size of a backtracking search.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    /// Partial covers visited, including the root.
    pub nodes: u64,
    /// Complete covers reached.
    pub leaves: u64,
}

/// `⟨v, p^{⊗d}⟩` by backtracking over covers of `{1..n}`.
pub fn hyperpfaffian<C: Coeff>(inst: &HyperpfaffianInstance<C>) -> C {
    hyperpfaffian_with_stats(inst).0
}

/// [`hyperpfaffian`] together with the size of the search tree.
///
/// The search always extends the cover at the smallest uncovered index,
/// branching over every entry of `p` that contains it and whose indices
/// are all uncovered and pairwise distinct. The sign of a complete cover is
/// the inversion parity of its concatenated multi-index.
pub fn hyperpfaffian_with_stats<C: Coeff>(inst: &HyperpfaffianInstance<C>) -> (C, SearchStats) {
    let n = inst.n();
    let d = inst.d();
    let entries: Vec<(&[usize], &C)> = inst
        .tensor
        .iter()
        .filter(|(idx, _)| !idx.has_repeats())
        .map(|(idx, c)| (idx.entries(), c))
        .collect();
    let mut containing: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
    for (e, (idx, _)) in entries.iter().enumerate() {
        for &i in idx.iter() {
            containing[i].push(e);
        }
    }

    let mut search = CoverSearch {
        entries: &entries,
        containing: &containing,
        covered: vec![false; n + 1],
        chosen: Vec::with_capacity(d),
        sequence: Vec::with_capacity(n),
        stats: SearchStats::default(),
        total: C::zero(),
    };
    search.extend(1, C::one());
    let total = search.total;
    let stats = search.stats;
    (C::from_scalar(Scalar::factorial(d as u64)) * total, stats)
}

struct CoverSearch<'a, C> {
    entries: &'a [(&'a [usize], &'a C)],
    containing: &'a [Vec<usize>],
    covered: Vec<bool>,
    chosen: Vec<usize>,
    sequence: Vec<usize>,
    stats: SearchStats,
    total: C,
}

impl<C: Coeff> CoverSearch<'_, C> {
    fn extend(&mut self, from: usize, product: C) {
        self.stats.nodes += 1;
        let Some(next) = (from..self.covered.len()).find(|&i| !self.covered[i]) else {
            self.stats.leaves += 1;
            self.sequence.clear();
            for &e in &self.chosen {
                self.sequence.extend_from_slice(self.entries[e].0);
            }
            let term = if inversion_sign(&self.sequence) > 0 {
                product
            } else {
                -product
            };
            self.total = std::mem::replace(&mut self.total, C::zero()) + term;
            return;
        };
        for &e in &self.containing[next] {
            let (idx, c) = self.entries[e];
            if idx.iter().any(|&i| self.covered[i]) {
                continue;
            }
            for &i in idx {
                self.covered[i] = true;
            }
            self.chosen.push(e);
            self.extend(next + 1, product.clone() * c.clone());
            self.chosen.pop();
            for &i in idx {
                self.covered[i] = false;
            }
        }
    }
}

/// Number of terms `(#entries)^d` that [`hyperpfaffian_expand`] would
/// materialize.
pub fn expansion_size<C: Coeff>(inst: &HyperpfaffianInstance<C>) -> BigUint {
    BigUint::from(inst.tensor.len()).pow(inst.d() as u32)
}

/// Oracle: materializes `p^{⊗d}` and pairs it with the antisymmetrizer.
pub fn hyperpfaffian_expand<C: Coeff>(inst: &HyperpfaffianInstance<C>, budget: u64) -> Result<C> {
    let size = expansion_size(inst);
    if size.to_u64().is_none_or(|s| s > budget) {
        return Err(Error::budget("full hyperpfaffian expansion", size, budget));
    }
    if inst.tensor.is_empty() {
        return Ok(C::zero());
    }
    inst.tensor.tensor_power(inst.d()).pair_with_antisymmetrizer()
}

/// The order-2 tensor `Σ A_ij e_i ⊗ e_j`.
pub fn matrix_to_tensor(a: &SquareMatrix) -> SparseTensor {
    let n = a.dim();
    let mut t = SparseTensor::new(n, 2);
    for i in 1..=n {
        for j in 1..=n {
            t.add_term(vec![i, j].into(), a.get(i, j).clone());
        }
    }
    t
}

/// Perfect-matching Pfaffian of an antisymmetric matrix of even size,
/// expanded along the first row.
pub fn classical_pfaffian(a: &SquareMatrix) -> Result<Scalar> {
    if !a.is_antisymmetric() {
        return Err(Error::Validation("matrix is not antisymmetric".into()));
    }
    if !a.dim().is_multiple_of(2) {
        return Err(Error::Validation(format!(
            "Pfaffian needs even size, got {}",
            a.dim()
        )));
    }
    let rest: Vec<usize> = (1..=a.dim()).collect();
    Ok(pfaffian_rec(a, &rest))
}

fn pfaffian_rec(a: &SquareMatrix, rest: &[usize]) -> Scalar {
    let Some((&first, others)) = rest.split_first() else {
        return Scalar::one();
    };
    let mut acc = Scalar::zero();
    for (pos, &j) in others.iter().enumerate() {
        let aij = a.get(first, j);
        if aij.is_zero() {
            continue;
        }
        let remaining: Vec<usize> = others.iter().copied().filter(|&x| x != j).collect();
        let term = aij * &pfaffian_rec(a, &remaining);
        if pos % 2 == 0 {
            acc += term;
        } else {
            acc -= &term;
        }
    }
    acc
}

/// Permanent by Ryser's inclusion–exclusion formula, visiting column
/// subsets in Gray-code order so each step updates the row sums with one
/// column: `O(2^n · n)`.
pub fn permanent(a: &SquareMatrix) -> Scalar {
    let n = a.dim();
    if n == 0 {
        return Scalar::one();
    }
    assert!(n < 64, "Ryser permanent limited to n < 64");
    let mut row_sums = vec![Scalar::zero(); n];
    let mut in_set = vec![false; n];
    let mut total = Scalar::zero();
    for step in 1u64..(1u64 << n) {
        let col = step.trailing_zeros() as usize;
        in_set[col] = !in_set[col];
        for (i, sum) in row_sums.iter_mut().enumerate() {
            if in_set[col] {
                *sum += a.get(i + 1, col + 1);
            } else {
                *sum -= a.get(i + 1, col + 1);
            }
        }
        let size = in_set.iter().filter(|&&b| b).count();
        let prod: Scalar = row_sums.iter().product();
        if (n - size).is_multiple_of(2) {
            total += prod;
        } else {
            total -= &prod;
        }
    }
    total
}

/// Permanent as the sum over all `n!` permutations.
pub fn permanent_naive(a: &SquareMatrix) -> Scalar {
    Permutation::all(a.dim())
        .map(|p| (1..=a.dim()).map(|i| a.get(i, p.apply(i))).product::<Scalar>())
        .sum()
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn determinant(a: &SquareMatrix) -> Scalar {
    linalg::determinant(&a.rows())
}

/// Determinant as the signed sum over all `n!` permutations.
pub fn determinant_leibniz(a: &SquareMatrix) -> Scalar {
    Permutation::all(a.dim())
        .map(|p| {
            let prod: Scalar = (1..=a.dim()).map(|i| a.get(i, p.apply(i))).product();
            if p.sign() > 0 {
                prod
            } else {
                -prod
            }
        })
        .sum()
}
