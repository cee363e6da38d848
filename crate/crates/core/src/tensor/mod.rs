//! Sparse exact tensors in the m-th tensor power of `C^n`.
//!
//! Entries are keyed by [`MultiIndex`] in a `BTreeMap`, so iteration order
//! (and therefore every printed or serialized tensor) is lexicographic and
//! deterministic. Zero coefficients are never stored.

pub mod format;
mod matrix;

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::kernel::{as_permutation, Coeff, MultiIndex, Permutation, Scalar};

pub use matrix::{
    random_antisymmetric_with, random_matrix_with, random_special_linear, random_special_linear_with,
    small_rational, SquareMatrix,
};

#[derive(Clone, Debug, PartialEq)]
pub struct SparseTensor<C = Scalar> {
    dim: usize,
    order: usize,
    entries: BTreeMap<MultiIndex, C>,
}

impl<C: Coeff> SparseTensor<C> {
    /// The zero tensor.
    pub fn new(dim: usize, order: usize) -> Self {
        SparseTensor {
            dim,
            order,
            entries: BTreeMap::new(),
        }
    }

    /// Builds a tensor from explicit entries, rejecting wrong lengths,
    /// out-of-range indices, duplicate multi-indices and zero coefficients.
    pub fn from_entries<I>(dim: usize, order: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<usize>, C)>,
    {
        let mut t = Self::new(dim, order);
        for (idx, c) in entries {
            let idx = t.check_index(idx)?;
            if c.is_zero() {
                return Err(Error::Validation(format!("zero coefficient at {idx:?}")));
            }
            match t.entries.entry(idx) {
                Entry::Occupied(e) => {
                    return Err(Error::Validation(format!("duplicate multi-index {:?}", e.key())))
                }
                Entry::Vacant(e) => {
                    e.insert(c);
                }
            }
        }
        Ok(t)
    }

    /// `c · e_{i_1} ⊗ ... ⊗ e_{i_m}`.
    pub fn basis(dim: usize, index: Vec<usize>, c: C) -> Result<Self> {
        let order = index.len();
        Self::from_entries(dim, order, [(index, c)].into_iter().filter(|(_, c)| !c.is_zero()))
    }

    fn check_index(&self, idx: Vec<usize>) -> Result<MultiIndex> {
        if idx.len() != self.order {
            return Err(Error::Validation(format!(
                "multi-index {idx:?} has length {}, tensor order is {}",
                idx.len(),
                self.order
            )));
        }
        MultiIndex::checked(idx, self.dim)
    }

    /// Adds `c` to the coefficient at `idx`, dropping the entry if it
    /// cancels to zero. Panics if `idx` does not fit the tensor shape.
    pub fn add_term(&mut self, idx: MultiIndex, c: C) {
        assert!(
            idx.len() == self.order && idx.entries().iter().all(|&x| x >= 1 && x <= self.dim),
            "multi-index {idx:?} does not fit a tensor of order {} over dimension {}",
            self.order,
            self.dim
        );
        accumulate(&mut self.entries, idx, c);
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Number of stored (nonzero) entries.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, idx: &[usize]) -> Option<&C> {
        self.entries.get(&MultiIndex::new(idx.to_vec()))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&MultiIndex, &C)> {
        self.entries.iter()
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = Self::new(self.dim, self.order);
        for (idx, v) in &self.entries {
            accumulate(&mut out.entries, idx.clone(), v.clone() * c.clone());
        }
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        let mut out = self.clone();
        for (idx, v) in &other.entries {
            accumulate(&mut out.entries, idx.clone(), v.clone());
        }
        Ok(out)
    }

    fn check_same_shape(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim || self.order != other.order {
            return Err(Error::DimensionMismatch(format!(
                "tensors of shape (n={}, m={}) and (n={}, m={})",
                self.dim, self.order, other.dim, other.order
            )));
        }
        Ok(())
    }

    /// `self ⊗ other`: multi-indices concatenate, coefficients multiply.
    pub fn tensor_product(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(format!(
                "tensor product over dimensions {} and {}",
                self.dim, other.dim
            )));
        }
        let mut out = Self::new(self.dim, self.order + other.order);
        for (a, x) in &self.entries {
            for (b, y) in &other.entries {
                accumulate(&mut out.entries, a.concat(b), x.clone() * y.clone());
            }
        }
        Ok(out)
    }

    /// `t^{⊗d}` for `d ≥ 1`.
    pub fn tensor_power(&self, d: usize) -> Self {
        assert!(d >= 1, "tensor power needs d >= 1");
        let mut acc = self.clone();
        for _ in 1..d {
            acc = acc.tensor_product(self).expect("same dimension");
        }
        acc
    }

    pub fn map_coeffs<D: Coeff>(&self, mut f: impl FnMut(&C) -> D) -> SparseTensor<D> {
        let mut out = SparseTensor::new(self.dim, self.order);
        for (idx, v) in &self.entries {
            accumulate(&mut out.entries, idx.clone(), f(v));
        }
        out
    }

    /// `⟨v, t⟩` where `v = e_1 ∧ ... ∧ e_n` is normalized so that
    /// `⟨v, e_{σ(1)} ⊗ ... ⊗ e_{σ(n)}⟩ = sign(σ)`. Entries whose
    /// multi-index repeats an index pair to zero.
    pub fn pair_with_antisymmetrizer(&self) -> Result<C> {
        if self.order != self.dim {
            return Err(Error::DimensionMismatch(format!(
                "pairing with the antisymmetrizer needs order = dimension, got m={} n={}",
                self.order, self.dim
            )));
        }
        let mut acc = C::zero();
        for (idx, c) in &self.entries {
            if let Some(p) = as_permutation(idx) {
                acc = if p.sign() > 0 {
                    acc + c.clone()
                } else {
                    acc + (-c.clone())
                };
            }
        }
        Ok(acc)
    }

    /// Whether `t` is unchanged by every permutation of its `m / b`
    /// contiguous blocks of `b` slots. Checked on adjacent block
    /// transpositions, which generate all block permutations.
    pub fn is_block_symmetric(&self, block: usize) -> Result<bool> {
        if block == 0 || !self.order.is_multiple_of(block) {
            return Err(Error::Validation(format!(
                "block size {block} does not divide tensor order {}",
                self.order
            )));
        }
        let blocks = self.order / block;
        for swap in 0..blocks.saturating_sub(1) {
            let lo = swap * block;
            let mut swapped = BTreeMap::new();
            for (idx, c) in &self.entries {
                let mut e = idx.entries().to_vec();
                let (left, right) = e[lo..lo + 2 * block].split_at_mut(block);
                left.swap_with_slice(right);
                swapped.insert(MultiIndex::new(e), c.clone());
            }
            if swapped != self.entries {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl SparseTensor<Scalar> {
    /// `g · t`, acting by `g` on every slot and re-expanding in the standard
    /// basis. Expands one slot at a time and drops cancelled entries after
    /// each pass.
    pub fn apply_group_element(&self, g: &SquareMatrix) -> Result<Self> {
        if g.dim() != self.dim {
            return Err(Error::DimensionMismatch(format!(
                "{0}x{0} group element acting on a tensor over C^{1}",
                g.dim(),
                self.dim
            )));
        }
        let mut current = self.entries.clone();
        for slot in 0..self.order {
            let mut next = BTreeMap::new();
            for (idx, c) in &current {
                let l = idx.entries()[slot];
                for i in 1..=self.dim {
                    let gil = g.get(i, l);
                    if gil.is_zero() {
                        continue;
                    }
                    let mut e = idx.entries().to_vec();
                    e[slot] = i;
                    accumulate(&mut next, MultiIndex::new(e), c * gil);
                }
            }
            current = next;
        }
        Ok(SparseTensor {
            dim: self.dim,
            order: self.order,
            entries: current,
        })
    }

    /// Action of the Lie algebra element `E_{ij}` by the derivation rule:
    /// the sum over slots of replacing a `j` in that slot with `i`.
    pub fn lie_action(&self, i: usize, j: usize) -> Self {
        let mut out = Self::new(self.dim, self.order);
        for (idx, c) in &self.entries {
            for slot in 0..self.order {
                if idx.entries()[slot] == j {
                    let mut e = idx.entries().to_vec();
                    e[slot] = i;
                    accumulate(&mut out.entries, MultiIndex::new(e), c.clone());
                }
            }
        }
        out
    }

    /// The materialized antisymmetrizer `v` in `⊗^n C^n`: `sign(σ)` at every
    /// permutation multi-index, `n!` entries in total.
    pub fn antisymmetrizer(n: usize) -> Self {
        let mut t = Self::new(n, n);
        for p in Permutation::all(n) {
            let sign = Scalar::from(p.sign() as i64);
            t.entries.insert(MultiIndex::new(p.images().to_vec()), sign);
        }
        t
    }
}

fn accumulate<C: Coeff>(map: &mut BTreeMap<MultiIndex, C>, idx: MultiIndex, c: C) {
    if c.is_zero() {
        return;
    }
    match map.entry(idx) {
        Entry::Vacant(e) => {
            e.insert(c);
        }
        Entry::Occupied(mut e) => {
            let sum = e.get().clone() + c;
            if sum.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = sum;
            }
        }
    }
}

/// Random sparse tensor with up to `count` distinct entries and small
/// rational coefficients. When `order ≤ dim`, three quarters of the drawn
/// multi-indices have pairwise distinct entries so that pairings with the
/// antisymmetrizer are rarely trivially zero.
pub fn random_sparse_tensor<R: Rng>(rng: &mut R, dim: usize, order: usize, count: usize) -> SparseTensor {
    let mut t = SparseTensor::new(dim, order);
    let pool: Vec<usize> = (1..=dim).collect();
    for _ in 0..count {
        let idx: Vec<usize> = if order <= dim && rng.gen_ratio(3, 4) {
            pool.choose_multiple(rng, order).copied().collect()
        } else {
            (0..order).map(|_| rng.gen_range(1..=dim)).collect()
        };
        let idx = MultiIndex::new(idx);
        t.entries.entry(idx).or_insert_with(|| small_rational(rng));
    }
    t
}
