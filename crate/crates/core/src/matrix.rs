//! Dense and coordinate-list integer matrices.
//!
//! Differential blocks are assembled sparsely (they have at most a handful
//! of entries per column); Smith normal form works on the dense form.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

/// A dense row-major integer matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMat {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMat {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> Self {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == n_cols));
        IntMat {
            rows: n_rows,
            cols: n_cols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: i64) {
        self.data[r * self.cols + c] = value;
    }

    pub fn add(&mut self, r: usize, c: usize, value: i64) {
        self.data[r * self.cols + c] += value;
    }

    pub fn row_slice(&self, r: usize) -> &[i64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn entries(&self) -> &[i64] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows)
                .all(|r| (0..self.cols).all(|c| self.get(r, c) == i64::from(r == c)))
    }

    /// Matrix product `self · rhs`.
    pub fn matmul(&self, rhs: &IntMat) -> IntMat {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in matmul");
        let mut out = IntMat::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    out.add(i, j, a * rhs.get(k, j));
                }
            }
        }
        out
    }
}

impl fmt::Debug for IntMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMat {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row_slice(r))?;
        }
        write!(f, "]")
    }
}

/// A sparse matrix in coordinate-list form, entries sorted by (row, col).
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct SparseMat {
    pub rows: usize,
    pub cols: usize,
    /// `(row, col, value)` triples with no duplicates and no zeros.
    pub entries: Vec<(u32, u32, i64)>,
}

impl SparseMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMat {
            rows,
            cols,
            entries: Vec::new(),
        }
    }

    /// Builds from unsorted triples, merging duplicates and dropping zeros.
    pub fn from_triples(
        rows: usize,
        cols: usize,
        triples: impl IntoIterator<Item = (usize, usize, i64)>,
    ) -> Self {
        let mut acc: HashMap<(u32, u32), i64> = HashMap::new();
        for (r, c, v) in triples {
            debug_assert!(r < rows && c < cols);
            *acc.entry((r as u32, c as u32)).or_insert(0) += v;
        }
        let mut entries: Vec<(u32, u32, i64)> = acc
            .into_iter()
            .filter(|&(_, v)| v != 0)
            .map(|((r, c), v)| (r, c, v))
            .collect();
        entries.sort_unstable();
        SparseMat {
            rows,
            cols,
            entries,
        }
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn to_dense(&self) -> IntMat {
        let mut m = IntMat::zeros(self.rows, self.cols);
        for &(r, c, v) in &self.entries {
            m.set(r as usize, c as usize, v);
        }
        m
    }

    /// Sparse product `self · rhs`, for the d∘d = 0 checks.
    pub fn matmul(&self, rhs: &SparseMat) -> SparseMat {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in matmul");
        // Group the left factor by column so each right entry is scanned once.
        let mut by_col: HashMap<u32, Vec<(u32, i64)>> = HashMap::new();
        for &(r, c, v) in &self.entries {
            by_col.entry(c).or_default().push((r, v));
        }
        let mut acc: HashMap<(u32, u32), i64> = HashMap::new();
        for &(mid, c, v) in &rhs.entries {
            if let Some(lefts) = by_col.get(&mid) {
                for &(r, w) in lefts {
                    *acc.entry((r, c)).or_insert(0) += w * v;
                }
            }
        }
        let mut entries: Vec<(u32, u32, i64)> = acc
            .into_iter()
            .filter(|&(_, v)| v != 0)
            .map(|((r, c), v)| (r, c, v))
            .collect();
        entries.sort_unstable();
        SparseMat {
            rows: self.rows,
            cols: rhs.cols,
            entries,
        }
    }
}
