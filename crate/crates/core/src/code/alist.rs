//! MacKay's alist interchange format.
//!
//! ```text
//! n m
//! max_col_weight max_row_weight
//! <n column weights>
//! <m row weights>
//! <n lines: 1-based row indices of each column>
//! <m lines: 1-based column indices of each row>
//! ```
//!
//! Zero entries are accepted as padding on read and never written. Indices in
//! error messages are 1-based, as in the file.

use std::fmt::Write as _;

use super::SparseParityMatrix;
use crate::error::{Error, Result};

struct Lines<'a> {
    inner: Vec<(usize, &'a str)>,
    next: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        let mut inner: Vec<(usize, &str)> =
            text.lines().enumerate().map(|(k, l)| (k + 1, l)).collect();
        while inner.last().is_some_and(|(_, l)| l.trim().is_empty()) {
            inner.pop();
        }
        Lines { inner, next: 0 }
    }

    fn numbers(&mut self, what: &str) -> Result<(usize, Vec<usize>)> {
        let Some(&(line, text)) = self.inner.get(self.next) else {
            let line = self.inner.last().map_or(1, |(l, _)| l + 1);
            return Err(Error::alist(
                line,
                format!("unexpected end of file, expected {what}"),
            ));
        };
        self.next += 1;
        let values = text
            .split_whitespace()
            .map(|tok| {
                tok.parse::<usize>().map_err(|_| {
                    Error::alist(
                        line,
                        format!("'{tok}' is not a non-negative integer ({what})"),
                    )
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok((line, values))
    }

    /// An empty line that was stripped from the end of the file reads as empty.
    fn adjacency_line(&mut self, declared: usize, what: &str) -> Result<(usize, Vec<usize>)> {
        if declared == 0 && self.next >= self.inner.len() {
            self.next += 1;
            return Ok((self.inner.last().map_or(1, |(l, _)| l + 1), Vec::new()));
        }
        self.numbers(what)
    }

    fn exactly(&mut self, count: usize, what: &str) -> Result<(usize, Vec<usize>)> {
        let (line, values) = self.adjacency_line(count, what)?;
        if values.len() != count {
            return Err(Error::alist(
                line,
                format!("expected {count} values for {what}, found {}", values.len()),
            ));
        }
        Ok((line, values))
    }
}

/// Reads one adjacency line; returns sorted 0-based indices.
fn adjacency(
    line: usize,
    values: &[usize],
    label: &str,
    declared: usize,
    bound: usize,
) -> Result<Vec<usize>> {
    let mut entries: Vec<usize> = values.iter().copied().filter(|&v| v != 0).collect();
    if entries.len() != declared {
        return Err(Error::alist(
            line,
            format!(
                "{label} declares weight {declared} but lists {} entries",
                entries.len()
            ),
        ));
    }
    if let Some(&bad) = entries.iter().find(|&&v| v > bound) {
        return Err(Error::alist(
            line,
            format!("{label} index {bad} out of range 1..={bound}"),
        ));
    }
    entries.sort_unstable();
    if let Some(w) = entries.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::alist(
            line,
            format!("{label} lists index {} twice", w[0]),
        ));
    }
    Ok(entries.into_iter().map(|v| v - 1).collect())
}

/// Parses an alist document.
pub fn load_alist(text: &str) -> Result<SparseParityMatrix> {
    let mut lines = Lines::new(text);
    let (_, dims) = lines.exactly(2, "header \"n m\"")?;
    let (n, m) = (dims[0], dims[1]);
    let (max_line, maxes) = lines.exactly(2, "maximum weights")?;
    let (max_col, max_row) = (maxes[0], maxes[1]);
    let (cw_line, col_weights) = lines.exactly(n, "column weights")?;
    let (rw_line, row_weights) = lines.exactly(m, "row weights")?;
    if let Some((i, w)) = col_weights.iter().enumerate().find(|(_, &w)| w > max_col) {
        return Err(Error::alist(
            cw_line,
            format!(
                "column {} weight {w} exceeds maximum {max_col} declared on line {max_line}",
                i + 1
            ),
        ));
    }
    if let Some((j, w)) = row_weights.iter().enumerate().find(|(_, &w)| w > max_row) {
        return Err(Error::alist(
            rw_line,
            format!(
                "row {} weight {w} exceeds maximum {max_row} declared on line {max_line}",
                j + 1
            ),
        ));
    }

    let mut col_entries = Vec::with_capacity(n);
    for (i, &w) in col_weights.iter().enumerate() {
        let (line, values) = lines.adjacency_line(w, "column adjacency")?;
        col_entries.push(adjacency(
            line,
            &values,
            &format!("column {}", i + 1),
            w,
            m,
        )?);
    }
    let mut rows = Vec::with_capacity(m);
    let mut row_lines = Vec::with_capacity(m);
    for (j, &w) in row_weights.iter().enumerate() {
        let (line, values) = lines.adjacency_line(w, "row adjacency")?;
        rows.push(adjacency(line, &values, &format!("row {}", j + 1), w, n)?);
        row_lines.push(line);
    }
    if let Some(&(line, _)) = lines.inner.get(lines.next) {
        return Err(Error::alist(line, "trailing content after row adjacency"));
    }

    let h = SparseParityMatrix::from_rows(n, rows)?;
    for (i, listed) in col_entries.iter().enumerate() {
        if listed != h.col(i) {
            let j = listed
                .iter()
                .chain(h.col(i))
                .find(|&&j| listed.contains(&j) != h.col(i).contains(&j))
                .copied()
                .expect("column lists differ");
            return Err(Error::alist(
                row_lines[j],
                format!(
                    "row {} and column {} disagree about entry ({}, {})",
                    j + 1,
                    i + 1,
                    j + 1,
                    i + 1
                ),
            ));
        }
    }
    Ok(h)
}

/// Writes `h` in canonical alist form.
pub fn save_alist(h: &SparseParityMatrix) -> String {
    let join = |values: &mut dyn Iterator<Item = usize>| {
        values.map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
    };
    let max_col = h.cols().iter().map(Vec::len).max().unwrap_or(0);
    let max_row = h.rows().iter().map(Vec::len).max().unwrap_or(0);
    let mut out = String::new();
    let _ = writeln!(out, "{} {}", h.n(), h.m());
    let _ = writeln!(out, "{max_col} {max_row}");
    let _ = writeln!(out, "{}", join(&mut h.cols().iter().map(Vec::len)));
    let _ = writeln!(out, "{}", join(&mut h.rows().iter().map(Vec::len)));
    for col in h.cols() {
        let _ = writeln!(out, "{}", join(&mut col.iter().map(|j| j + 1)));
    }
    for row in h.rows() {
        let _ = writeln!(out, "{}", join(&mut row.iter().map(|i| i + 1)));
    }
    out
}
