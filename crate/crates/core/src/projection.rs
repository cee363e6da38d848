//! Symbolic check that the hyperpfaffian projects to the permanent.
//!
//! For `n = 2kd` the tensor
//!
//! ```text
//! p = Σ_{i,j=0}^{d-1} x_{i+1,j+1} · e_{1+2ki} ⊗ ... ⊗ e_{k+2ki} ⊗ e_{k+1+2kj} ⊗ ... ⊗ e_{2k+2kj}
//! ```
//!
//! is linear in the variables `x_{i,j}`. Evaluating the hyperpfaffian at
//! `p` gives `d!·per_d` when `k` is even and `d!·det_d` when `k` is odd.
//! The reference polynomials here are built by direct expansion over the
//! symmetric group, independently of the evaluators in
//! [`crate::invariants`].

use std::fmt;

use num_traits::One;

use crate::error::{Error, Result};
use crate::invariants::{hyperpfaffian, HyperpfaffianInstance};
use crate::kernel::{inversion_sign, Permutation, Scalar};
use crate::poly::{Monomial, Polynomial};
use crate::tensor::SparseTensor;

/// Degrees at or above this are refused unless forced.
pub const SYMBOLIC_DEGREE_LIMIT: usize = 5;

pub type SymbolicTensor = SparseTensor<Polynomial>;

/// Name of the variable `x_{i,j}` (1-based).
pub fn variable(i: usize, j: usize) -> String {
    format!("x_{{{i},{j}}}")
}

/// Slots of the projection entry for the 0-based block pair `(i, j)`: the
/// first half of block `i` followed by the second half of block `j`.
pub fn projection_index(k: usize, i: usize, j: usize) -> Vec<usize> {
    let first = (1..=k).map(|s| s + 2 * k * i);
    let second = (k + 1..=2 * k).map(|s| s + 2 * k * j);
    first.chain(second).collect()
}

/// The order-`2k` symbolic tensor over `C^{2kd}` with one entry
/// `x_{i+1,j+1}` per block pair.
pub fn build_projection_tensor(k: usize, d: usize) -> Result<SymbolicTensor> {
    if k == 0 || d == 0 {
        return Err(Error::Validation("k and d must be positive".into()));
    }
    let entries = (0..d).flat_map(|i| {
        (0..d).map(move |j| (projection_index(k, i, j), Polynomial::var(variable(i + 1, j + 1))))
    });
    SparseTensor::from_entries(2 * k * d, 2 * k, entries)
}

fn check_degree(d: usize, force: bool) -> Result<()> {
    if d >= SYMBOLIC_DEGREE_LIMIT && !force {
        // leaves of the cover search: (d!)^2
        let leaves = Scalar::factorial(d as u64).pow(2);
        let limit = (1..SYMBOLIC_DEGREE_LIMIT as u64).product::<u64>().pow(2);
        return Err(Error::budget(
            format!("symbolic expansion at d = {d} without force"),
            leaves,
            limit,
        ));
    }
    Ok(())
}

/// The hyperpfaffian of [`build_projection_tensor`], computed by the same
/// backtracking evaluator with polynomial coefficients.
pub fn symbolic_hyperpfaffian(k: usize, d: usize, force: bool) -> Result<Polynomial> {
    check_degree(d, force)?;
    let inst = HyperpfaffianInstance::new(k, build_projection_tensor(k, d)?)?;
    Ok(hyperpfaffian(&inst))
}

fn check_block_permutation(seq: &[usize], d: usize, what: &str) -> Result<()> {
    let mut seen = vec![false; d];
    if seq.len() != d
        || seq
            .iter()
            .any(|&x| x >= d || std::mem::replace(&mut seen[x], true))
    {
        return Err(Error::Validation(format!(
            "{what} = {seq:?} is not a permutation of 0..{d}"
        )));
    }
    Ok(())
}

/// Inversion sign of the concatenated multi-index of the leaf that picks
/// block pairs `(i_1, j_1), ..., (i_d, j_d)`. Both sequences must be
/// permutations of `0..d`.
pub fn leaf_sign(k: usize, i: &[usize], j: &[usize]) -> Result<i8> {
    let d = i.len();
    check_block_permutation(i, d, "i")?;
    check_block_permutation(j, d, "j")?;
    let sequence: Vec<usize> = i
        .iter()
        .zip(j)
        .flat_map(|(&a, &b)| projection_index(k, a, b))
        .collect();
    Ok(inversion_sign(&sequence))
}

/// `Σ_σ Π_i x_{i,σ(i)}` over `S_d`.
pub fn permanent_polynomial(d: usize) -> Polynomial {
    leibniz_polynomial(d, false)
}

/// `Σ_σ sign(σ) Π_i x_{i,σ(i)}` over `S_d`.
pub fn determinant_polynomial(d: usize) -> Polynomial {
    leibniz_polynomial(d, true)
}

fn leibniz_polynomial(d: usize, signed: bool) -> Polynomial {
    let mut out = Polynomial::default();
    for p in Permutation::all(d) {
        let m = Monomial::from_powers((1..=d).map(|i| (variable(i, p.apply(i)), 1)));
        let c = if signed && p.sign() < 0 {
            -Scalar::one()
        } else {
            Scalar::one()
        };
        out.add_term(m, c);
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    Permanent,
    Determinant,
}

impl Target {
    pub fn for_k(k: usize) -> Self {
        if k.is_multiple_of(2) {
            Target::Permanent
        } else {
            Target::Determinant
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Target::Permanent => "permanent",
            Target::Determinant => "determinant",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProjectionReport {
    pub k: usize,
    pub d: usize,
    pub target: Target,
    /// The hyperpfaffian at the projection tensor.
    pub lhs: Polynomial,
    /// `d!` times the permanent or determinant polynomial.
    pub rhs: Polynomial,
}

impl ProjectionReport {
    pub fn equal(&self) -> bool {
        self.lhs == self.rhs
    }

    pub fn parity(&self) -> &'static str {
        if self.k.is_multiple_of(2) {
            "even"
        } else {
            "odd"
        }
    }

    pub fn to_records(&self) -> String {
        format!(
            "k={}\nd={}\nparity={}\ntarget={}\nequal={}\nterms_lhs={}\nterms_rhs={}\n",
            self.k,
            self.d,
            self.parity(),
            self.target.name(),
            self.equal(),
            self.lhs.len(),
            self.rhs.len()
        )
    }
}

impl fmt::Display for ProjectionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "projection of Pf_{{{},{}}} (k = {}, d = {})",
            self.k,
            2 * self.k * self.d,
            self.k,
            self.d
        )?;
        writeln!(f, "  hyperpfaffian ({} terms): {}", self.lhs.len(), self.lhs)?;
        writeln!(
            f,
            "  {}!·{}_{} ({} terms): {}",
            self.d,
            self.target.name(),
            self.d,
            self.rhs.len(),
            self.rhs
        )?;
        write!(f, "  equal: {}", self.equal())
    }
}

/// Compares the symbolic hyperpfaffian with `d!·per_d` (even `k`) or
/// `d!·det_d` (odd `k`).
pub fn verify_projection_theorem(k: usize, d: usize, force: bool) -> Result<ProjectionReport> {
    let lhs = symbolic_hyperpfaffian(k, d, force)?;
    let target = Target::for_k(k);
    let reference = match target {
        Target::Permanent => permanent_polynomial(d),
        Target::Determinant => determinant_polynomial(d),
    };
    let rhs = reference.scale(&Scalar::factorial(d as u64));
    Ok(ProjectionReport {
        k,
        d,
        target,
        lhs,
        rhs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::next_permutation;

    fn x(i: usize, j: usize) -> Polynomial {
        Polynomial::var(variable(i, j))
    }

    fn c(v: i64) -> Polynomial {
        Polynomial::constant(Scalar::from(v))
    }

    #[test]
    fn projection_tensor_shape() {
        let t = build_projection_tensor(1, 1).unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!(t.get(&[1, 2]), Some(&x(1, 1)));

        let t = build_projection_tensor(2, 2).unwrap();
        assert_eq!((t.dim(), t.order(), t.len()), (8, 4, 4));
        assert_eq!(t.get(&[1, 2, 7, 8]), Some(&x(1, 2)));
        for (idx, _) in t.iter() {
            assert!(!idx.has_repeats());
        }
        assert!(build_projection_tensor(0, 2).is_err());
    }

    #[test]
    fn symbolic_examples() {
        assert_eq!(symbolic_hyperpfaffian(2, 1, false).unwrap(), x(1, 1));
        assert_eq!(
            symbolic_hyperpfaffian(2, 2, false).unwrap(),
            c(2) * (x(1, 1) * x(2, 2) + x(1, 2) * x(2, 1))
        );
        assert_eq!(
            symbolic_hyperpfaffian(1, 2, false).unwrap(),
            c(2) * (x(1, 1) * x(2, 2) - x(1, 2) * x(2, 1))
        );
    }

    #[test]
    fn degree_limit() {
        assert!(matches!(
            symbolic_hyperpfaffian(2, 5, false),
            Err(Error::Budget { .. })
        ));
        assert!(verify_projection_theorem(1, 5, false).is_err());
    }

    #[test]
    fn leaf_sign_examples() {
        for k in 1..=3 {
            assert_eq!(leaf_sign(k, &[0, 1, 2], &[0, 1, 2]).unwrap(), 1);
        }
        assert_eq!(leaf_sign(2, &[1, 0], &[0, 1]).unwrap(), 1);
        assert_eq!(leaf_sign(1, &[1, 0], &[0, 1]).unwrap(), -1);
        assert!(leaf_sign(1, &[0, 0], &[0, 1]).is_err());
        assert!(leaf_sign(1, &[0, 1], &[0, 2]).is_err());
        assert!(leaf_sign(1, &[0, 1], &[0]).is_err());
    }

    // k=2, i=(1,0), j=(0,1): blocks (5,6,3,4) and (1,2,7,8), counted by hand
    #[test]
    fn leaf_sign_hand_count() {
        let seq = [5, 6, 3, 4, 1, 2, 7, 8];
        let mut inv = 0;
        for a in 0..seq.len() {
            for b in a + 1..seq.len() {
                if seq[a] > seq[b] {
                    inv += 1;
                }
            }
        }
        assert_eq!(inv, 12);
        assert_eq!(projection_index(2, 1, 0), vec![5, 6, 3, 4]);
    }

    #[test]
    fn reference_polynomials() {
        let per3 = permanent_polynomial(3);
        assert_eq!(per3.len(), 6);
        assert!(per3.terms().all(|(m, c)| m.degree() == 3 && *c == Scalar::one()));
        let det2 = determinant_polynomial(2);
        assert_eq!(det2, x(1, 1) * x(2, 2) - x(1, 2) * x(2, 1));
    }

    #[test]
    fn theorem_small_cases() {
        let r = verify_projection_theorem(2, 2, false).unwrap();
        assert!(r.equal());
        assert_eq!((r.lhs.len(), r.rhs.len()), (2, 2));
        assert_eq!(r.target, Target::Permanent);

        let r = verify_projection_theorem(2, 3, false).unwrap();
        assert!(r.equal());
        assert_eq!(r.lhs.len(), 6);

        let r = verify_projection_theorem(1, 3, false).unwrap();
        assert!(r.equal());
        assert_eq!(r.target, Target::Determinant);
        assert_eq!(
            r.to_records(),
            "k=1\nd=3\nparity=odd\ntarget=determinant\nequal=true\nterms_lhs=6\nterms_rhs=6\n"
        );
    }

    #[test]
    fn leaf_sign_law_exhaustive_small() {
        let sign = |p: &[usize]| {
            Permutation::new(p.iter().map(|x| x + 1).collect())
                .unwrap()
                .sign()
        };
        for d in 1..=3 {
            let mut i: Vec<usize> = (0..d).collect();
            loop {
                let mut j: Vec<usize> = (0..d).collect();
                loop {
                    for k in 1..=3 {
                        let expected = (sign(&i) * sign(&j)).pow(k as u32);
                        assert_eq!(leaf_sign(k, &i, &j).unwrap(), expected);
                    }
                    if !next_permutation(&mut j) {
                        break;
                    }
                }
                if !next_permutation(&mut i) {
                    break;
                }
            }
        }
    }

    #[test]
    fn coefficients_are_signed_factorials() {
        for (k, d) in [(1, 1), (1, 4), (2, 4), (3, 3)] {
            let poly = symbolic_hyperpfaffian(k, d, false).unwrap();
            let fact = Scalar::factorial(d as u64);
            assert_eq!(poly.len(), (1..=d).product::<usize>());
            for p in Permutation::all(d) {
                let m = Monomial::from_powers((1..=d).map(|i| (variable(i, p.apply(i)), 1)));
                let sign = if k % 2 == 1 && p.sign() < 0 {
                    -Scalar::one()
                } else {
                    Scalar::one()
                };
                assert!(m.is_multilinear() && m.degree() == d as u32);
                assert_eq!(poly.coefficient(&m), fact.clone() * sign);
            }
        }
    }

    #[test]
    fn numeric_consistency() {
        use rand::SeedableRng;
        use std::collections::HashMap;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for (k, d) in [(1, 2), (2, 2), (1, 3), (2, 3), (3, 2)] {
            let poly = symbolic_hyperpfaffian(k, d, false).unwrap();
            let tensor = build_projection_tensor(k, d).unwrap();
            for _ in 0..50 {
                let mut values = HashMap::new();
                for i in 1..=d {
                    for j in 1..=d {
                        values.insert(variable(i, j), crate::tensor::small_rational(&mut rng));
                    }
                }
                let numeric = tensor.map_coeffs(|p| p.evaluate(&values).unwrap());
                let inst = HyperpfaffianInstance::new(k, numeric).unwrap();
                assert_eq!(poly.evaluate(&values).unwrap(), hyperpfaffian(&inst));
            }
        }
    }
}
