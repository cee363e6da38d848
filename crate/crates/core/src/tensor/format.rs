//! The `hpft 1` tensor text format.
//!
//! ```text
//! hpft 1
//! n <n> m <m>
//! <i1> <i2> ... <im> <p/q>
//! ```
//!
//! One stored entry per line, 1-based indices. Blank lines and lines
//! starting with `#` are ignored.
//!
//! Square matrices are plain rows of `p/q` entries, one row per line or
//! separated by `;`.

use std::fmt::Write;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::kernel::{MultiIndex, Scalar};

use super::{SparseTensor, SquareMatrix};

pub fn parse_tensor(text: &str) -> Result<SparseTensor> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    match lines.next() {
        Some((_, "hpft 1")) => {}
        Some((no, other)) => return Err(Error::parse(no, format!("expected `hpft 1`, found `{other}`"))),
        None => return Err(Error::parse(1, "empty input")),
    }

    let (no, header) = lines
        .next()
        .ok_or_else(|| Error::parse(2, "missing `n <n> m <m>` line"))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    let (n, m) = match fields.as_slice() {
        ["n", n, "m", m] => {
            let n: usize = n
                .parse()
                .map_err(|_| Error::parse(no, format!("bad dimension `{n}`")))?;
            let m: usize = m
                .parse()
                .map_err(|_| Error::parse(no, format!("bad order `{m}`")))?;
            (n, m)
        }
        _ => {
            return Err(Error::parse(
                no,
                format!("expected `n <n> m <m>`, found `{header}`"),
            ))
        }
    };
    if n == 0 || m == 0 {
        return Err(Error::parse(no, "dimension and order must be positive"));
    }

    let mut tensor = SparseTensor::new(n, m);
    for (no, line) in lines {
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != m + 1 {
            return Err(Error::parse(
                no,
                format!(
                    "expected {m} indices and a coefficient, found {} fields",
                    fields.len()
                ),
            ));
        }
        let idx = fields[..m]
            .iter()
            .map(|f| {
                f.parse::<usize>()
                    .ok()
                    .filter(|&i| (1..=n).contains(&i))
                    .ok_or_else(|| Error::parse(no, format!("index `{f}` out of range 1..={n}")))
            })
            .collect::<Result<Vec<_>>>()?;
        let c: Scalar = fields[m]
            .parse()
            .map_err(|e: Error| Error::parse(no, e.to_string()))?;
        if c.is_zero() {
            return Err(Error::parse(no, "zero coefficient"));
        }
        let idx = MultiIndex::new(idx);
        if tensor.entries.contains_key(&idx) {
            return Err(Error::parse(no, format!("duplicate multi-index {idx:?}")));
        }
        tensor.entries.insert(idx, c);
    }
    Ok(tensor)
}

pub fn write_tensor(t: &SparseTensor) -> String {
    let mut out = format!("hpft 1\nn {} m {}\n", t.dim(), t.order());
    for (idx, c) in t.iter() {
        for i in idx.entries() {
            write!(out, "{i} ").unwrap();
        }
        writeln!(out, "{c}").unwrap();
    }
    out
}

pub fn parse_matrix(text: &str) -> Result<SquareMatrix> {
    let mut rows = Vec::new();
    for (no, line) in text.lines().enumerate() {
        for row in line.split(';').map(str::trim).filter(|r| !r.is_empty()) {
            let entries = row
                .split_whitespace()
                .map(|f| {
                    f.parse::<Scalar>()
                        .map_err(|e| Error::parse(no + 1, e.to_string()))
                })
                .collect::<Result<Vec<_>>>()?;
            rows.push((no + 1, entries));
        }
    }
    let n = rows.len();
    if n == 0 {
        return Err(Error::parse(1, "empty matrix"));
    }
    if let Some((no, r)) = rows.iter().find(|(_, r)| r.len() != n) {
        return Err(Error::parse(
            *no,
            format!("row has {} entries, expected {n}", r.len()),
        ));
    }
    SquareMatrix::from_rows(rows.into_iter().map(|(_, r)| r).collect())
}

pub fn write_matrix(a: &SquareMatrix) -> String {
    let mut out = String::new();
    for row in a.rows() {
        let cells: Vec<String> = row.iter().map(Scalar::to_string).collect();
        writeln!(out, "{}", cells.join(" ")).unwrap();
    }
    out
}
