//! Binary relations between finite carriers as bit-matrices.

use std::fmt;

use crate::bitset::BitSet;
use crate::error::{Error, Result};

/// A relation `R ⊆ rows × cols`.
///
/// Rows and columns are both materialized so that the forward image `R[a]`
/// and the converse image `Rᵀ[β]` are single lookups.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RawRelation {
    rows: usize,
    cols: usize,
    by_row: Vec<BitSet>,
    by_col: Vec<BitSet>,
}

fn transpose_sets(len: usize, sets: &[BitSet]) -> Vec<BitSet> {
    let mut out = vec![BitSet::empty(sets.len()); len];
    for (i, set) in sets.iter().enumerate() {
        for j in set {
            out[j].insert(i);
        }
    }
    out
}

impl RawRelation {
    pub fn empty(rows: usize, cols: usize) -> Self {
        RawRelation {
            rows,
            cols,
            by_row: vec![BitSet::empty(cols); rows],
            by_col: vec![BitSet::empty(rows); cols],
        }
    }

    pub fn full(rows: usize, cols: usize) -> Self {
        RawRelation {
            rows,
            cols,
            by_row: vec![BitSet::full(cols); rows],
            by_col: vec![BitSet::full(rows); cols],
        }
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> bool) -> Self {
        let by_row = (0..rows)
            .map(|r| BitSet::from_indices(cols, (0..cols).filter(|&c| f(r, c))))
            .collect();
        Self::from_rows(cols, by_row).expect("rows built to size")
    }

    /// Builds from row images `R[a]`, each of length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<BitSet>) -> Result<Self> {
        for row in &rows {
            Error::check_dim("relation row", cols, row.len())?;
        }
        let by_col = transpose_sets(cols, &rows);
        Ok(RawRelation {
            rows: rows.len(),
            cols,
            by_row: rows,
            by_col,
        })
    }

    /// Builds from column images `Rᵀ[β]`, each of length `rows`.
    pub fn from_cols(rows: usize, cols: Vec<BitSet>) -> Result<Self> {
        for col in &cols {
            Error::check_dim("relation column", rows, col.len())?;
        }
        let by_row = transpose_sets(rows, &cols);
        Ok(RawRelation {
            rows,
            cols: cols.len(),
            by_row,
            by_col: cols,
        })
    }

    pub fn from_pairs(
        rows: usize,
        cols: usize,
        pairs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let mut by_row = vec![BitSet::empty(cols); rows];
        for (r, c) in pairs {
            if r >= rows {
                return Err(Error::dim("relation row index", rows, r));
            }
            if c >= cols {
                return Err(Error::dim("relation column index", cols, c));
            }
            by_row[r].insert(c);
        }
        Self::from_rows(cols, by_row)
    }

    /// Builds from a row-major bitstring of length `rows * cols`.
    pub fn from_row_major(rows: usize, cols: usize, bits: &BitSet) -> Result<Self> {
        Error::check_dim("row-major relation bits", rows * cols, bits.len())?;
        Ok(Self::from_fn(rows, cols, |r, c| bits.contains(r * cols + c)))
    }

    pub fn to_row_major(&self) -> BitSet {
        BitSet::from_indices(
            self.rows * self.cols,
            self.pairs().map(|(r, c)| r * self.cols + c),
        )
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        self.by_row[r].contains(c)
    }

    /// The forward image `R[r]`.
    #[inline]
    pub fn row(&self, r: usize) -> &BitSet {
        &self.by_row[r]
    }

    /// The converse image `Rᵀ[c]`.
    #[inline]
    pub fn col(&self, c: usize) -> &BitSet {
        &self.by_col[c]
    }

    pub fn row_sets(&self) -> &[BitSet] {
        &self.by_row
    }

    pub fn col_sets(&self) -> &[BitSet] {
        &self.by_col
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.by_row
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |c| (r, c)))
    }

    pub fn count(&self) -> usize {
        self.by_row.iter().map(BitSet::count).sum()
    }

    pub fn transpose(&self) -> RawRelation {
        RawRelation {
            rows: self.cols,
            cols: self.rows,
            by_row: self.by_col.clone(),
            by_col: self.by_row.clone(),
        }
    }

    pub fn same_shape(&self, other: &RawRelation) -> bool {
        self.rows == other.rows && self.cols == other.cols
    }

    pub fn is_subset(&self, other: &RawRelation) -> bool {
        self.same_shape(other)
            && self
                .by_row
                .iter()
                .zip(&other.by_row)
                .all(|(a, b)| a.is_subset(b))
    }

    pub fn intersection(&self, other: &RawRelation) -> RawRelation {
        assert!(self.same_shape(other), "intersection of differently shaped relations");
        let rows = self
            .by_row
            .iter()
            .zip(&other.by_row)
            .map(|(a, b)| a.intersection(b))
            .collect();
        Self::from_rows(self.cols, rows).expect("same shape")
    }

    pub fn union(&self, other: &RawRelation) -> RawRelation {
        assert!(self.same_shape(other), "union of differently shaped relations");
        let rows = self
            .by_row
            .iter()
            .zip(&other.by_row)
            .map(|(a, b)| a.union(b))
            .collect();
        Self::from_rows(self.cols, rows).expect("same shape")
    }

    /// `R↑(X) = ⋂_{a∈X} R[a]`; the full column carrier when `X` is empty.
    pub fn up(&self, x: &BitSet) -> BitSet {
        assert_eq!(x.len(), self.rows, "up: subset sized to the wrong carrier");
        let mut out = BitSet::full(self.cols);
        for a in x {
            out.intersect_with(&self.by_row[a]);
            if out.is_empty() {
                break;
            }
        }
        out
    }

    /// `R↓(Y) = ⋂_{β∈Y} Rᵀ[β]`; the full row carrier when `Y` is empty.
    pub fn down(&self, y: &BitSet) -> BitSet {
        assert_eq!(y.len(), self.cols, "down: subset sized to the wrong carrier");
        let mut out = BitSet::full(self.rows);
        for b in y {
            out.intersect_with(&self.by_col[b]);
            if out.is_empty() {
                break;
            }
        }
        out
    }

    /// Restricts to the given rows (in the given order).
    pub fn select_rows(&self, keep: &[usize]) -> RawRelation {
        let rows = keep.iter().map(|&r| self.by_row[r].clone()).collect();
        Self::from_rows(self.cols, rows).expect("row lengths unchanged")
    }

    /// Restricts to the given columns (in the given order).
    pub fn select_cols(&self, keep: &[usize]) -> RawRelation {
        let cols = keep.iter().map(|&c| self.by_col[c].clone()).collect();
        Self::from_cols(self.rows, cols).expect("column lengths unchanged")
    }
}

impl fmt::Debug for RawRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RawRelation({}x{}", self.rows, self.cols)?;
        for row in &self.by_row {
            write!(f, " {}", row.to_bit_string())?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for RawRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.by_row {
            for c in 0..self.cols {
                f.write_str(if row.contains(c) { "X" } else { "." })?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
