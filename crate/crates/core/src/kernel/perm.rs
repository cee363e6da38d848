use crate::error::{Error, Result};

use super::MultiIndex;

/// Number of pairs `i < j` with `seq[i] > seq[j]`, by merge sort in
/// `O(len log len)`.
pub fn inversion_count<T: Ord + Copy>(seq: &[T]) -> u64 {
    fn sort_count<T: Ord + Copy>(buf: &mut [T], scratch: &mut Vec<T>) -> u64 {
        let len = buf.len();
        if len < 2 {
            return 0;
        }
        let mid = len / 2;
        let mut count = sort_count(&mut buf[..mid], scratch) + sort_count(&mut buf[mid..], scratch);
        scratch.clear();
        let (mut i, mut j) = (0, mid);
        while i < mid && j < len {
            if buf[j] < buf[i] {
                count += (mid - i) as u64;
                scratch.push(buf[j]);
                j += 1;
            } else {
                scratch.push(buf[i]);
                i += 1;
            }
        }
        scratch.extend_from_slice(&buf[i..mid]);
        scratch.extend_from_slice(&buf[j..]);
        buf.copy_from_slice(scratch);
        count
    }

    let mut buf = seq.to_vec();
    let mut scratch = Vec::with_capacity(buf.len());
    sort_count(&mut buf, &mut scratch)
}

/// `+1` for an even number of inversions, `-1` otherwise.
pub fn inversion_sign<T: Ord + Copy>(seq: &[T]) -> i8 {
    if inversion_count(seq).is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// A bijection of `{1, ..., n}`, stored as its image sequence.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x == 0 || x > n || std::mem::replace(&mut seen[x - 1], true) {
                return Err(Error::Validation(format!(
                    "{images:?} is not a permutation of 1..={n}"
                )));
            }
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (1..=n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// Image of `i` (1-based).
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(
            self.len(),
            other.len(),
            "composing permutations of different degree"
        );
        Permutation {
            images: other.images.iter().map(|&i| self.apply(i)).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.len()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x - 1] = i + 1;
        }
        Permutation { images }
    }

    /// Sign via inversion counting.
    pub fn sign(&self) -> i8 {
        inversion_sign(&self.images)
    }

    /// Sign via cycle decomposition: `(-1)^(n - #cycles)`.
    pub fn sign_by_cycles(&self) -> i8 {
        let n = self.len();
        let mut seen = vec![false; n];
        let mut cycles = 0;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            cycles += 1;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.images[i] - 1;
            }
        }
        if (n - cycles).is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// All permutations of `{1..n}` in lexicographic order.
    pub fn all(n: usize) -> AllPermutations {
        AllPermutations {
            next: Some((1..=n).collect()),
        }
    }
}

/// Lexicographic enumeration of the symmetric group.
pub struct AllPermutations {
    next: Option<Vec<usize>>,
}

impl Iterator for AllPermutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        if next_permutation(&mut succ) {
            self.next = Some(succ);
        }
        Some(Permutation { images: current })
    }
}

/// Advances `seq` to its lexicographic successor; false when already last.
pub fn next_permutation<T: Ord>(seq: &mut [T]) -> bool {
    if seq.len() < 2 {
        return false;
    }
    let mut i = seq.len() - 1;
    while i > 0 && seq[i - 1] >= seq[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = seq.len() - 1;
    while seq[j] <= seq[i - 1] {
        j -= 1;
    }
    seq.swap(i - 1, j);
    seq[i..].reverse();
    true
}

/// Interprets a length-`n` multi-index over `{1..n}` as a permutation, or
/// `None` if some index repeats.
pub fn as_permutation(index: &MultiIndex) -> Option<Permutation> {
    let n = index.len();
    let mut seen = vec![false; n];
    for &x in index.entries() {
        if x == 0 || x > n || std::mem::replace(&mut seen[x - 1], true) {
            return None;
        }
    }
    Some(Permutation {
        images: index.entries().to_vec(),
    })
}
