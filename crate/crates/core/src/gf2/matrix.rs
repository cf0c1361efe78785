use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::BitVec;
use crate::error::Error;

/// A sparse binary matrix stored as sorted row supports.
///
/// Construction and exchange use the sparse form; elimination converts to
/// bit-packed rows internally (see [`super::elim`]).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    nrows: usize,
    ncols: usize,
    rows: Vec<Vec<usize>>,
}

impl BitMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        BitMatrix {
            nrows,
            ncols,
            rows: vec![Vec::new(); nrows],
        }
    }

    pub fn identity(n: usize) -> Self {
        BitMatrix {
            nrows: n,
            ncols: n,
            rows: (0..n).map(|i| vec![i]).collect(),
        }
    }

    /// Builds a matrix from `(row, col)` positions holding 1.
    ///
    /// Positions must be in range and pairwise distinct.
    pub fn from_entries<I>(nrows: usize, ncols: usize, entries: I) -> Result<Self, Error>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); nrows];
        for (r, c) in entries {
            if r >= nrows || c >= ncols {
                return Err(Error::InvalidMatrix(format!(
                    "entry ({r}, {c}) outside a {nrows}x{ncols} matrix"
                )));
            }
            if !rows[r].insert(c) {
                return Err(Error::InvalidMatrix(format!("duplicate entry ({r}, {c})")));
            }
        }
        Ok(BitMatrix {
            nrows,
            ncols,
            rows: rows.into_iter().map(|s| s.into_iter().collect()).collect(),
        })
    }

    /// Stacks row vectors; every row must have length `ncols`.
    pub fn from_rows(ncols: usize, rows: &[BitVec]) -> Self {
        for r in rows {
            assert_eq!(r.len(), ncols, "row length does not match column count");
        }
        BitMatrix {
            nrows: rows.len(),
            ncols,
            rows: rows.iter().map(BitVec::support).collect(),
        }
    }

    /// Places each vector as a column; every column must have length `nrows`.
    pub fn from_columns(nrows: usize, cols: &[BitVec]) -> Self {
        BitMatrix::from_rows(nrows, cols).transpose()
    }

    pub fn from_dense(bits: &[Vec<bool>], ncols: usize) -> Self {
        let rows: Vec<BitVec> = bits
            .iter()
            .map(|r| {
                assert_eq!(r.len(), ncols);
                BitVec::from_bools(r)
            })
            .collect();
        BitMatrix::from_rows(ncols, &rows)
    }

    #[inline]
    pub fn nrows(&self) -> usize {
        self.nrows
    }

    #[inline]
    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].binary_search(&c).is_ok()
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        assert!(r < self.nrows && c < self.ncols, "position out of range");
        let row = &mut self.rows[r];
        match (row.binary_search(&c), value) {
            (Ok(pos), false) => {
                row.remove(pos);
            }
            (Err(pos), true) => row.insert(pos, c),
            _ => {}
        }
    }

    pub fn flip(&mut self, r: usize, c: usize) {
        let v = self.get(r, c);
        self.set(r, c, !v);
    }

    /// Sorted column indices of row `r`.
    pub fn row_support(&self, r: usize) -> &[usize] {
        &self.rows[r]
    }

    pub fn row(&self, r: usize) -> BitVec {
        BitVec::from_indices(self.ncols, self.rows[r].iter().copied())
    }

    pub fn rows(&self) -> Vec<BitVec> {
        (0..self.nrows).map(|r| self.row(r)).collect()
    }

    pub fn column(&self, c: usize) -> BitVec {
        BitVec::from_indices(
            self.nrows,
            (0..self.nrows).filter(|&r| self.rows[r].binary_search(&c).is_ok()),
        )
    }

    pub fn columns(&self) -> Vec<BitVec> {
        self.transpose().rows()
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(r, cols)| cols.iter().map(move |&c| (r, c)))
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(Vec::is_empty)
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut rows = vec![Vec::new(); self.ncols];
        for (r, cols) in self.rows.iter().enumerate() {
            for &c in cols {
                rows[c].push(r);
            }
        }
        BitMatrix {
            nrows: self.ncols,
            ncols: self.nrows,
            rows,
        }
    }

    pub fn mul_vec(&self, v: &BitVec) -> BitVec {
        assert_eq!(v.len(), self.ncols, "vector length does not match column count");
        BitVec::from_indices(
            self.nrows,
            (0..self.nrows).filter(|&r| self.rows[r].iter().filter(|&&c| v.get(c)).count() % 2 == 1),
        )
    }

    /// Matrix product `self · other`.
    pub fn mul(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(
            self.ncols, other.nrows,
            "inner dimensions differ: {}x{} · {}x{}",
            self.nrows, self.ncols, other.nrows, other.ncols
        );
        let packed: Vec<BitVec> = other.rows();
        let rows = self
            .rows
            .iter()
            .map(|cols| {
                let mut acc = BitVec::zeros(other.ncols);
                for &c in cols {
                    acc.xor_assign(&packed[c]);
                }
                acc.support()
            })
            .collect();
        BitMatrix {
            nrows: self.nrows,
            ncols: other.ncols,
            rows,
        }
    }

    /// Appends the rows of `other` below `self`.
    pub fn vstack(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.ncols, other.ncols, "column counts differ in vstack");
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        BitMatrix {
            nrows: self.nrows + other.nrows,
            ncols: self.ncols,
            rows,
        }
    }

    /// Appends the columns of `other` right of `self`.
    pub fn hstack(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.nrows, other.nrows, "row counts differ in hstack");
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| a.iter().copied().chain(b.iter().map(|c| c + self.ncols)).collect())
            .collect();
        BitMatrix {
            nrows: self.nrows,
            ncols: self.ncols + other.ncols,
            rows,
        }
    }

    pub fn push_row(&mut self, row: &BitVec) {
        assert_eq!(row.len(), self.ncols, "row length does not match column count");
        self.rows.push(row.support());
        self.nrows += 1;
    }

    pub fn select_rows(&self, which: &[usize]) -> BitMatrix {
        BitMatrix {
            nrows: which.len(),
            ncols: self.ncols,
            rows: which.iter().map(|&r| self.rows[r].clone()).collect(),
        }
    }

    pub fn to_dense(&self) -> Vec<Vec<bool>> {
        self.rows
            .iter()
            .map(|cols| {
                let mut row = vec![false; self.ncols];
                for &c in cols {
                    row[c] = true;
                }
                row
            })
            .collect()
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.nrows, self.ncols)?;
        for r in 0..self.nrows.min(32) {
            writeln!(f, "  {}", self.row(r))?;
        }
        Ok(())
    }
}

/// JSON exchange form: `{rows, cols, entries: [[r, c], ...]}`.
#[derive(Serialize, Deserialize)]
struct MatrixRepr {
    rows: usize,
    cols: usize,
    entries: Vec<[usize; 2]>,
}

impl Serialize for BitMatrix {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        MatrixRepr {
            rows: self.nrows,
            cols: self.ncols,
            entries: self.entries().map(|(r, c)| [r, c]).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for BitMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = MatrixRepr::deserialize(deserializer)?;
        BitMatrix::from_entries(repr.rows, repr.cols, repr.entries.into_iter().map(|[r, c]| (r, c)))
            .map_err(serde::de::Error::custom)
    }
}
