//! Brute-force dimensions of `SL_n`-invariant subspaces of `⊗^m C^n`.
//!
//! A vector is `SL_n`-invariant iff it is killed by the Lie algebra
//! `sl_n` (the group is connected), and `sl_n` is generated by the simple
//! raising and lowering operators `E_{i,i+1}` and `E_{i+1,i}`. The
//! invariant dimension is therefore the dimension of the joint kernel of
//! those `2(n-1)` operators, each acting on tensors by the derivation
//! rule. The kernel is computed by exact rank over the integers.
//!
//! The operators shift the weight (the multiset of indices) of a basis
//! tensor by a fixed amount, so the stacked system is block diagonal by
//! source weight and each weight space is eliminated separately.
//!
//! With a block size `b`, the computation is restricted to tensors that
//! are symmetric under permuting the `m / b` contiguous blocks. The basis
//! there is given by orbit sums, each represented by its lexicographically
//! smallest block ordering.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::kernel::{next_permutation, rectangle_dimension};
use crate::linalg::small_sparse_rank;
use crate::tensor::SparseTensor;

/// Default cap on `n^m`: covers `n = 2, m ≤ 14` and `n = 3, m ≤ 9`.
pub const DEFAULT_BASIS_BUDGET: u64 = 20_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct InvariantDimensionQuery {
    pub n: usize,
    pub m: usize,
    pub block: Option<usize>,
}

impl InvariantDimensionQuery {
    pub fn new(n: usize, m: usize, block: Option<usize>) -> Result<Self> {
        if n == 0 || m == 0 {
            return Err(Error::Validation("n and m must be positive".into()));
        }
        if let Some(b) = block {
            if b == 0 || !m.is_multiple_of(b) {
                return Err(Error::Validation(format!(
                    "block size {b} does not divide m = {m}"
                )));
            }
        }
        Ok(InvariantDimensionQuery { n, m, block })
    }

    /// `n^m`, saturating.
    pub fn ambient_dimension(&self) -> u64 {
        (self.n as u64).saturating_pow(self.m as u32)
    }
}

/// Joint kernel dimension of the simple generators on `⊗^m C^n`, or on its
/// block-symmetric subspace when `q.block` is set.
pub fn invariant_dimension_bruteforce(q: &InvariantDimensionQuery, budget: u64) -> Result<usize> {
    let ambient = q.ambient_dimension();
    if ambient > budget {
        return Err(Error::budget(
            format!("invariant dimension for n={} m={}", q.n, q.m),
            ambient,
            budget,
        ));
    }
    let block = q.block.unwrap_or(q.m);
    let generators: Vec<(usize, usize)> = (1..q.n).flat_map(|i| [(i, i + 1), (i + 1, i)]).collect();

    let mut by_weight: BTreeMap<Vec<usize>, Vec<Vec<usize>>> = BTreeMap::new();
    for idx in all_indices(q.n, q.m) {
        if q.block.is_some() && !is_canonical(&idx, block) {
            continue;
        }
        by_weight.entry(weight(&idx, q.n)).or_default().push(idx);
    }

    let mut kernel = 0;
    for basis in by_weight.values() {
        let mut images: Vec<BTreeMap<(Vec<usize>, usize), i64>> = Vec::with_capacity(basis.len());
        for col in basis {
            let orbit = if q.block.is_some() {
                block_orbit(col, block)
            } else {
                vec![col.clone()]
            };
            let mut image = BTreeMap::new();
            for (g, &(i, j)) in generators.iter().enumerate() {
                for w in &orbit {
                    for slot in 0..q.m {
                        if w[slot] != j {
                            continue;
                        }
                        let mut target = w.clone();
                        target[slot] = i;
                        if q.block.is_some() && !is_canonical(&target, block) {
                            continue;
                        }
                        *image.entry((target, g)).or_insert(0) += 1;
                    }
                }
            }
            images.push(image);
        }

        // Rows are numbered in descending (target, generator) order. With
        // columns taken in ascending order this keeps fill-in low.
        let mut keys: Vec<&(Vec<usize>, usize)> = images.iter().flat_map(|img| img.keys()).collect();
        keys.sort_unstable_by(|a, b| b.cmp(a));
        keys.dedup();
        let row_of: HashMap<&(Vec<usize>, usize), usize> =
            keys.into_iter().enumerate().map(|(r, k)| (k, r)).collect();
        let columns = images.iter().map(|img| {
            let mut v: Vec<(usize, i64)> = img
                .iter()
                .filter(|(_, &c)| c != 0)
                .map(|(k, &c)| (row_of[k], c))
                .collect();
            v.sort_unstable();
            v
        });
        kernel += basis.len() - small_sparse_rank(columns);
    }
    Ok(kernel)
}

/// Schur–Weyl prediction: standard tableaux of the `n × (m/n)` rectangle,
/// zero when `n ∤ m`.
pub fn invariant_dimension_predicted(n: usize, m: usize) -> usize {
    rectangle_dimension(n, m)
        .to_usize()
        .expect("invariant dimension fits in usize")
}

fn all_indices(n: usize, m: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut next = Some(vec![1; m]);
    std::iter::from_fn(move || {
        let current = next.take()?;
        let mut succ = current.clone();
        for slot in (0..m).rev() {
            if succ[slot] < n {
                succ[slot] += 1;
                next = Some(succ);
                break;
            }
            succ[slot] = 1;
        }
        Some(current)
    })
}

fn weight(idx: &[usize], n: usize) -> Vec<usize> {
    let mut w = vec![0; n];
    for &i in idx {
        w[i - 1] += 1;
    }
    w
}

fn is_canonical(idx: &[usize], block: usize) -> bool {
    idx.chunks(block)
        .collect::<Vec<_>>()
        .windows(2)
        .all(|w| w[0] <= w[1])
}

/// Distinct block rearrangements of `idx`.
fn block_orbit(idx: &[usize], block: usize) -> Vec<Vec<usize>> {
    let mut blocks: Vec<&[usize]> = idx.chunks(block).collect();
    blocks.sort();
    let mut out = Vec::new();
    loop {
        out.push(blocks.concat());
        if !next_permutation(&mut blocks) {
            break;
        }
    }
    out
}

/// Outcome of one item of [`verify_proposition`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CheckStatus {
    /// Confirmed by exact computation.
    Verified,
    /// Too large for the brute-force budget; only the arithmetic
    /// prediction was checked, and it holds.
    PredictedOnly,
    Failed(String),
}

impl CheckStatus {
    pub fn passed(&self) -> bool {
        !matches!(self, CheckStatus::Failed(_))
    }

    fn label(&self) -> &'static str {
        match self {
            CheckStatus::Verified => "verified",
            CheckStatus::PredictedOnly => "predicted-only",
            CheckStatus::Failed(_) => "failed",
        }
    }
}

/// One lower degree `d' < n/2k`: the tensor order `2k·d'` and what was
/// established about invariants there.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LowerDegreeCheck {
    pub degree: usize,
    pub order: usize,
    pub brute_force: Option<usize>,
    pub status: CheckStatus,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropositionReport {
    pub k: usize,
    pub n: usize,
    pub d: usize,
    pub lower_degrees: Vec<LowerDegreeCheck>,
    /// Invariant dimension of the block-symmetric subspace at degree `d`.
    pub top_dimension: Option<usize>,
    pub top_status: CheckStatus,
    pub antisymmetrizer_status: CheckStatus,
}

impl PropositionReport {
    pub fn passed(&self) -> bool {
        self.lower_degrees.iter().all(|c| c.status.passed())
            && self.top_status.passed()
            && self.antisymmetrizer_status.passed()
    }

    /// `key=value` lines.
    pub fn to_records(&self) -> String {
        let mut out = format!("k={}\nn={}\nd={}\n", self.k, self.n, self.d);
        for c in &self.lower_degrees {
            out += &format!(
                "lower_degree={} order={} brute_force={} status={}\n",
                c.degree,
                c.order,
                opt(c.brute_force),
                c.status.label()
            );
        }
        out += &format!(
            "top_dimension={}\ntop_status={}\nantisymmetrizer_status={}\npassed={}\n",
            opt(self.top_dimension),
            self.top_status.label(),
            self.antisymmetrizer_status.label(),
            self.passed()
        );
        out
    }
}

fn opt(v: Option<usize>) -> String {
    v.map_or_else(|| "-".to_string(), |v| v.to_string())
}

impl fmt::Display for PropositionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "invariants of degree d on ⊗^{} C^{} (d = {})",
            2 * self.k,
            self.n,
            self.d
        )?;
        for c in &self.lower_degrees {
            write!(
                f,
                "  degree {} (order {}): {} ∤ {}, brute force {}",
                c.degree,
                c.order,
                self.n,
                c.order,
                opt(c.brute_force)
            )?;
            writeln!(f, " [{}]", describe(&c.status))?;
        }
        writeln!(
            f,
            "  degree {}: block-symmetric invariant dimension {} [{}]",
            self.d,
            opt(self.top_dimension),
            describe(&self.top_status)
        )?;
        writeln!(
            f,
            "  antisymmetrizer block-symmetric and killed by sl_{}: [{}]",
            self.n,
            describe(&self.antisymmetrizer_status)
        )?;
        write!(f, "  result: {}", if self.passed() { "PASS" } else { "FAIL" })
    }
}

fn describe(s: &CheckStatus) -> String {
    match s {
        CheckStatus::Failed(why) => format!("failed: {why}"),
        other => other.label().to_string(),
    }
}

/// Checks that `⊗^{2k} C^n` has no invariants of degree `0 < d' < n/2k`
/// and a one-dimensional space of them at `d = n/2k`, spanned by the
/// antisymmetrizer.
///
/// Lower degrees are settled arithmetically (`n ∤ 2k·d'`) and, where the
/// budget allows, by brute force on the full `⊗^{2kd'} C^n` (which
/// contains the symmetric power). Degree `d` is brute-forced on the
/// block-symmetric subspace with blocks of size `2k`.
pub fn verify_proposition(k: usize, n: usize, budget: u64) -> Result<PropositionReport> {
    if k == 0 || n == 0 || !n.is_multiple_of(2 * k) {
        return Err(Error::InvalidInstance(format!(
            "2k = {} must divide n = {n}",
            2 * k
        )));
    }
    let d = n / (2 * k);

    let mut lower_degrees = Vec::new();
    for degree in 1..d {
        let order = 2 * k * degree;
        let q = InvariantDimensionQuery::new(n, order, None)?;
        let (brute_force, status) = if order.is_multiple_of(n) {
            (None, CheckStatus::Failed(format!("{n} divides {order}")))
        } else {
            match invariant_dimension_bruteforce(&q, budget) {
                Ok(0) => (Some(0), CheckStatus::Verified),
                Ok(dim) => (Some(dim), CheckStatus::Failed(format!("found {dim} invariants"))),
                Err(Error::Budget { .. }) => (None, CheckStatus::PredictedOnly),
                Err(e) => return Err(e),
            }
        };
        lower_degrees.push(LowerDegreeCheck {
            degree,
            order,
            brute_force,
            status,
        });
    }

    let q = InvariantDimensionQuery::new(n, n, Some(2 * k))?;
    let (top_dimension, top_status) = match invariant_dimension_bruteforce(&q, budget) {
        Ok(1) => (Some(1), CheckStatus::Verified),
        Ok(dim) => (
            Some(dim),
            CheckStatus::Failed(format!("dimension {dim}, expected 1")),
        ),
        Err(Error::Budget { .. }) if invariant_dimension_predicted(n, n) == 1 => {
            (None, CheckStatus::PredictedOnly)
        }
        Err(Error::Budget { .. }) => (None, CheckStatus::Failed("prediction is not 1".into())),
        Err(e) => return Err(e),
    };

    Ok(PropositionReport {
        k,
        n,
        d,
        lower_degrees,
        top_dimension,
        top_status,
        antisymmetrizer_status: check_antisymmetrizer(n, 2 * k),
    })
}

/// Largest `n` for which the antisymmetrizer (with `n!` entries) is
/// materialized.
pub const MAX_MATERIALIZED_ANTISYMMETRIZER: usize = 8;

fn check_antisymmetrizer(n: usize, block: usize) -> CheckStatus {
    if n > MAX_MATERIALIZED_ANTISYMMETRIZER {
        return CheckStatus::PredictedOnly;
    }
    let v = SparseTensor::antisymmetrizer(n);
    match v.is_block_symmetric(block) {
        Ok(true) => {}
        Ok(false) => return CheckStatus::Failed(format!("not symmetric under blocks of {block}")),
        Err(e) => return CheckStatus::Failed(e.to_string()),
    }
    for i in 1..=n {
        for j in 1..=n {
            if i != j && !v.lie_action(i, j).is_empty() {
                return CheckStatus::Failed(format!("E_{{{i},{j}}} does not kill v"));
            }
        }
    }
    CheckStatus::Verified
}
