//! Sparse binary parity-check matrices and syndrome encoding.

mod alist;
mod construct;

pub use alist::{load_alist, save_alist};
pub use construct::gallager_construct;

use crate::error::{Error, Result};

/// An `m x n` binary matrix held as both row and column adjacency lists.
///
/// Rows index checks (syndrome positions), columns index source bits. Both
/// lists are sorted and describe the same set of nonzero entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseParityMatrix {
    n: usize,
    rows: Vec<Vec<usize>>,
    cols: Vec<Vec<usize>>,
}

impl SparseParityMatrix {
    /// Builds a matrix with `n` columns from its row lists.
    pub fn from_rows(n: usize, rows: Vec<Vec<usize>>) -> Result<Self> {
        let mut cols = vec![Vec::new(); n];
        let mut sorted = Vec::with_capacity(rows.len());
        for (j, mut row) in rows.into_iter().enumerate() {
            row.sort_unstable();
            for w in row.windows(2) {
                if w[0] == w[1] {
                    return Err(Error::InvalidParameter(format!(
                        "row {j} lists column {} twice",
                        w[0]
                    )));
                }
            }
            for &i in &row {
                if i >= n {
                    return Err(Error::InvalidParameter(format!(
                        "row {j} references column {i}, but n = {n}"
                    )));
                }
                cols[i].push(j);
            }
            sorted.push(row);
        }
        Ok(SparseParityMatrix {
            n,
            rows: sorted,
            cols,
        })
    }

    /// The `n x n` identity: the uncompressed corner point (rate 1).
    pub fn identity(n: usize) -> Self {
        SparseParityMatrix {
            n,
            rows: (0..n).map(|i| vec![i]).collect(),
            cols: (0..n).map(|i| vec![i]).collect(),
        }
    }

    /// Stacks the rows of `other` below the rows of `self`.
    pub fn stack(&self, other: &SparseParityMatrix) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::LengthMismatch {
                what: "stacked matrix column count",
                expected: self.n,
                found: other.n,
            });
        }
        let rows = self.rows.iter().chain(&other.rows).cloned().collect();
        SparseParityMatrix::from_rows(self.n, rows)
    }

    /// Unit rows revealing the listed columns directly.
    pub fn selector(n: usize, columns: impl IntoIterator<Item = usize>) -> Result<Self> {
        SparseParityMatrix::from_rows(n, columns.into_iter().map(|i| vec![i]).collect())
    }

    /// Column count, the source block length.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Row count, the syndrome length.
    pub fn m(&self) -> usize {
        self.rows.len()
    }

    /// Nominal compression rate `m / n`.
    pub fn rate(&self) -> f64 {
        self.m() as f64 / self.n as f64
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn cols(&self) -> &[Vec<usize>] {
        &self.cols
    }

    pub fn row(&self, j: usize) -> &[usize] {
        &self.rows[j]
    }

    pub fn col(&self, i: usize) -> &[usize] {
        &self.cols[i]
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn is_identity(&self) -> bool {
        self.m() == self.n && self.rows.iter().enumerate().all(|(j, r)| r == &[j])
    }

    /// Checks the structural invariants: indices in range, sorted without
    /// duplicates, and rows/cols describing the same entries.
    pub fn validate(&self) -> Result<()> {
        let m = self.m();
        let fail = |msg: String| Err(Error::InvalidParameter(msg));
        for (j, row) in self.rows.iter().enumerate() {
            if row.windows(2).any(|w| w[0] >= w[1]) {
                return fail(format!("row {j} is not strictly increasing"));
            }
            if let Some(&i) = row.iter().find(|&&i| i >= self.n) {
                return fail(format!("row {j} references column {i} >= {}", self.n));
            }
        }
        if self.cols.len() != self.n {
            return fail(format!(
                "{} column lists for n = {}",
                self.cols.len(),
                self.n
            ));
        }
        for (i, col) in self.cols.iter().enumerate() {
            if col.windows(2).any(|w| w[0] >= w[1]) {
                return fail(format!("column {i} is not strictly increasing"));
            }
            for &j in col {
                if j >= m {
                    return fail(format!("column {i} references row {j} >= {m}"));
                }
                if self.rows[j].binary_search(&i).is_err() {
                    return fail(format!(
                        "entry ({j}, {i}) is in column list but not row list"
                    ));
                }
            }
        }
        let col_nnz: usize = self.cols.iter().map(Vec::len).sum();
        if col_nnz != self.nnz() {
            return fail("row and column lists disagree on entry count".into());
        }
        Ok(())
    }

    /// Rank over GF(2). The true rate of the code is `rank / n`.
    pub fn rank_gf2(&self) -> usize {
        let words = self.n.div_ceil(64);
        let mut rows: Vec<Vec<u64>> = self
            .rows
            .iter()
            .map(|r| {
                let mut w = vec![0u64; words];
                for &i in r {
                    w[i / 64] |= 1 << (i % 64);
                }
                w
            })
            .collect();
        let mut rank = 0;
        for col in 0..self.n {
            let (word, bit) = (col / 64, 1u64 << (col % 64));
            let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][word] & bit != 0) else {
                continue;
            };
            rows.swap(rank, pivot);
            let pivot_row = rows[rank].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank && row[word] & bit != 0 {
                    for (a, b) in row.iter_mut().zip(&pivot_row) {
                        *a ^= b;
                    }
                }
            }
            rank += 1;
        }
        rank
    }
}

/// A syndrome `s = H u` over GF(2).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Syndrome {
    bits: Vec<u8>,
}

impl Syndrome {
    pub fn from_bits(bits: Vec<u8>) -> Result<Self> {
        if !crate::is_bits(&bits) {
            return Err(Error::InvalidParameter(
                "syndrome bits must be 0 or 1".into(),
            ));
        }
        Ok(Syndrome { bits })
    }

    pub fn zeros(m: usize) -> Self {
        Syndrome { bits: vec![0; m] }
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn xor(&self, other: &Syndrome) -> Syndrome {
        Syndrome {
            bits: self
                .bits
                .iter()
                .zip(&other.bits)
                .map(|(a, b)| a ^ b)
                .collect(),
        }
    }
}

/// Compresses `u` to its syndrome under `h`.
pub fn syndrome(h: &SparseParityMatrix, u: &[u8]) -> Result<Syndrome> {
    if u.len() != h.n() {
        return Err(Error::LengthMismatch {
            what: "source block",
            expected: h.n(),
            found: u.len(),
        });
    }
    if !crate::is_bits(u) {
        return Err(Error::InvalidParameter("source bits must be 0 or 1".into()));
    }
    let bits = h
        .rows()
        .iter()
        .map(|row| row.iter().fold(0u8, |acc, &i| acc ^ u[i]))
        .collect();
    Ok(Syndrome { bits })
}

#[cfg(test)]
pub(crate) fn tiny_matrix() -> SparseParityMatrix {
    SparseParityMatrix::from_rows(3, vec![vec![0, 1], vec![1, 2]]).unwrap()
}
