//! Fraction-free exact elimination over the integers.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::kernel::Scalar;

/// Sparse integer vector: `(coordinate, value)` pairs sorted by coordinate,
/// with no zero values.
pub type SparseVec = Vec<(usize, BigInt)>;

/// Scales each row by the lcm of its denominators. Returns the integer rows
/// and the product of the scale factors.
pub fn clear_denominators(rows: &[Vec<Scalar>]) -> (Vec<Vec<BigInt>>, BigInt) {
    let mut total = BigInt::one();
    let rows = rows
        .iter()
        .map(|row| {
            let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            total *= &lcm;
            row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect()
        })
        .collect();
    (rows, total)
}

/// Determinant of a square integer matrix by Bareiss elimination. Every
/// intermediate division is exact.
pub fn bareiss_determinant(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Exact determinant of a rational matrix: clear denominators row by row,
/// then run Bareiss.
pub fn determinant(rows: &[Vec<Scalar>]) -> Scalar {
    let (ints, scale) = clear_denominators(rows);
    Scalar::new(bareiss_determinant(ints), scale)
}

/// Integer type usable by [`Echelon`]. Arithmetic returns `None` on
/// overflow; `BigInt` never overflows.
pub trait EchelonInt: Clone + PartialEq + Sized {
    fn zero_int() -> Self;
    fn is_zero_int(&self) -> bool;
    fn is_one_int(&self) -> bool;
    fn is_negative_int(&self) -> bool;
    fn gcd_int(&self, other: &Self) -> Self;
    fn neg_int(&self) -> Option<Self>;
    fn mul_int(&self, other: &Self) -> Option<Self>;
    fn sub_int(&self, other: &Self) -> Option<Self>;
    /// Exact division.
    fn div_exact(&self, other: &Self) -> Self;
}

impl EchelonInt for i64 {
    fn zero_int() -> Self {
        0
    }
    fn is_zero_int(&self) -> bool {
        *self == 0
    }
    fn is_one_int(&self) -> bool {
        *self == 1
    }
    fn is_negative_int(&self) -> bool {
        *self < 0
    }
    fn gcd_int(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn neg_int(&self) -> Option<Self> {
        self.checked_neg()
    }
    fn mul_int(&self, other: &Self) -> Option<Self> {
        self.checked_mul(*other)
    }
    fn sub_int(&self, other: &Self) -> Option<Self> {
        self.checked_sub(*other)
    }
    fn div_exact(&self, other: &Self) -> Self {
        self / other
    }
}

impl EchelonInt for BigInt {
    fn zero_int() -> Self {
        Zero::zero()
    }
    fn is_zero_int(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_one_int(&self) -> bool {
        One::is_one(self)
    }
    fn is_negative_int(&self) -> bool {
        Signed::is_negative(self)
    }
    fn gcd_int(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn neg_int(&self) -> Option<Self> {
        Some(-self)
    }
    fn mul_int(&self, other: &Self) -> Option<Self> {
        Some(self * other)
    }
    fn sub_int(&self, other: &Self) -> Option<Self> {
        Some(self - other)
    }
    fn div_exact(&self, other: &Self) -> Self {
        self / other
    }
}

/// Arithmetic overflowed the integer type of an [`Echelon`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Overflow;

/// Incremental row echelon form over `Z`, used to compute exact ranks of
/// large sparse systems.
///
/// Each stored row is primitive (content 1) with a positive leading value and
/// is keyed by its leading coordinate. Inserting a row cross-multiplies
/// against existing pivots, which never introduces fractions.
pub struct Echelon<T = BigInt> {
    pivots: HashMap<usize, Vec<(usize, T)>>,
}

impl<T: EchelonInt> Default for Echelon<T> {
    fn default() -> Self {
        Echelon {
            pivots: HashMap::new(),
        }
    }
}

impl<T: EchelonInt> Echelon<T> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Inserts `row` (sorted by coordinate); returns whether it was
    /// independent of the rows inserted so far.
    pub fn try_insert(&mut self, mut row: Vec<(usize, T)>) -> Result<bool, Overflow> {
        row.retain(|(_, v)| !v.is_zero_int());
        debug_assert!(row.windows(2).all(|w| w[0].0 < w[1].0));
        make_primitive(&mut row)?;
        while let Some((lead, _)) = row.first() {
            let Some(pivot) = self.pivots.get(lead) else {
                let lead = *lead;
                self.pivots.insert(lead, row);
                return Ok(true);
            };
            row = eliminate(&row, pivot)?;
            make_primitive(&mut row)?;
        }
        Ok(false)
    }
}

impl Echelon<BigInt> {
    /// Inserts `row`; returns true if it was independent of earlier rows.
    pub fn insert(&mut self, row: SparseVec) -> bool {
        self.try_insert(row).expect("BigInt arithmetic does not overflow")
    }
}

/// `p·row - r·pivot` where `p`, `r` are the leading values divided by their
/// gcd; the leading coordinate cancels.
fn eliminate<T: EchelonInt>(row: &[(usize, T)], pivot: &[(usize, T)]) -> Result<Vec<(usize, T)>, Overflow> {
    let g = row[0].1.gcd_int(&pivot[0].1);
    let row_scale = pivot[0].1.div_exact(&g);
    let pivot_scale = row[0].1.div_exact(&g);
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (1, 1);
    while i < row.len() || j < pivot.len() {
        let take_row = j >= pivot.len() || (i < row.len() && row[i].0 < pivot[j].0);
        let take_pivot = i >= row.len() || (j < pivot.len() && pivot[j].0 < row[i].0);
        if take_row {
            out.push((row[i].0, row[i].1.mul_int(&row_scale).ok_or(Overflow)?));
            i += 1;
        } else if take_pivot {
            let v = pivot[j]
                .1
                .mul_int(&pivot_scale)
                .and_then(|v| v.neg_int())
                .ok_or(Overflow)?;
            out.push((pivot[j].0, v));
            j += 1;
        } else {
            let a = row[i].1.mul_int(&row_scale).ok_or(Overflow)?;
            let b = pivot[j].1.mul_int(&pivot_scale).ok_or(Overflow)?;
            let v = a.sub_int(&b).ok_or(Overflow)?;
            if !v.is_zero_int() {
                out.push((row[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    Ok(out)
}

fn make_primitive<T: EchelonInt>(row: &mut [(usize, T)]) -> Result<(), Overflow> {
    let Some((_, first)) = row.first() else {
        return Ok(());
    };
    let negative = first.is_negative_int();
    let mut g = T::zero_int();
    for (_, v) in row.iter() {
        g = g.gcd_int(v);
        if g.is_one_int() {
            break;
        }
    }
    if negative {
        g = g.neg_int().ok_or(Overflow)?;
    }
    if !g.is_one_int() {
        for (_, v) in row.iter_mut() {
            *v = v.div_exact(&g);
        }
    }
    Ok(())
}

/// Rank of a collection of sparse integer vectors.
pub fn sparse_rank(rows: impl IntoIterator<Item = SparseVec>) -> usize {
    let mut ech = Echelon::new();
    for row in rows {
        ech.insert(row);
    }
    ech.rank()
}

/// Rank of sparse vectors with machine-word entries. Eliminates in `i64`
/// and reruns in `BigInt` if any intermediate value overflows.
pub fn small_sparse_rank(rows: impl IntoIterator<Item = Vec<(usize, i64)>>) -> usize {
    let rows: Vec<Vec<(usize, i64)>> = rows.into_iter().collect();
    let mut fast = Echelon::<i64>::new();
    let fits = rows
        .iter()
        .try_for_each(|r| fast.try_insert(r.clone()).map(|_| ()));
    match fits {
        Ok(()) => fast.rank(),
        Err(Overflow) => sparse_rank(
            rows.into_iter()
                .map(|r| r.into_iter().map(|(k, v)| (k, BigInt::from(v))).collect()),
        ),
    }
}

/// Rank of a dense rational matrix.
pub fn rank(rows: &[Vec<Scalar>]) -> usize {
    let (ints, _) = clear_denominators(rows);
    sparse_rank(ints.into_iter().map(|row| {
        row.into_iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .collect()
    }))
}
