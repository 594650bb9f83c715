//! Exact dense and row-sparse matrices over a [`Ring`], with echelon forms,
//! left null spaces, lattice comparison and commutants.

mod commutant;
mod echelon;
mod nullspace;

pub use commutant::commutant;
pub use echelon::{hnf, hnf_with_transform, integer_determinant_abs, rref, rref_with_transform, Echelon};
pub use nullspace::{is_saturated, left_nullspace, row_space_equal, solve_left, RowSpace};

use std::collections::HashMap;
use std::fmt::Write as _;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::ring::{Integers, Ring};

/// Dense row-major matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<R: Ring> {
    ring: R,
    cols: usize,
    rows: Vec<Vec<R::Elem>>,
}

impl<R: Ring> Matrix<R> {
    pub fn zeros(ring: &R, nrows: usize, ncols: usize) -> Self {
        let rows = (0..nrows).map(|_| vec![ring.zero(); ncols]).collect();
        Matrix { ring: ring.clone(), cols: ncols, rows }
    }

    pub fn identity(ring: &R, n: usize) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m.rows[i][i] = ring.one();
        }
        m
    }

    pub fn from_rows(ring: &R, ncols: usize, rows: Vec<Vec<R::Elem>>) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.len() != ncols) {
            return Err(Error::Mismatch(format!("row of length {} in a matrix with {ncols} columns", bad.len())));
        }
        Ok(Matrix { ring: ring.clone(), cols: ncols, rows })
    }

    pub fn from_i64_rows(ring: &R, rows: &[Vec<i64>]) -> Result<Self> {
        let ncols = rows.first().map_or(0, Vec::len);
        let rows = rows.iter().map(|r| r.iter().map(|&v| ring.from_i64(v)).collect()).collect();
        Self::from_rows(ring, ncols, rows)
    }

    /// Image of an integer matrix under ℤ → R.
    pub fn from_integer_matrix(ring: &R, m: &Matrix<Integers>) -> Self {
        let rows = m.rows.iter().map(|r| r.iter().map(|v| ring.from_bigint(v)).collect()).collect();
        Matrix { ring: ring.clone(), cols: m.cols, rows }
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &R::Elem {
        &self.rows[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: R::Elem) {
        self.rows[i][j] = v;
    }

    pub fn row(&self, i: usize) -> &[R::Elem] {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[Vec<R::Elem>] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<Vec<R::Elem>> {
        self.rows
    }

    pub fn push_row(&mut self, row: Vec<R::Elem>) -> Result<()> {
        if row.len() != self.cols {
            return Err(Error::Mismatch(format!("pushing row of length {} onto {} columns", row.len(), self.cols)));
        }
        self.rows.push(row);
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.iter().all(|v| self.ring.is_zero(v)))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(&self.ring, self.cols, self.nrows());
        for (i, row) in self.rows.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                t.rows[j][i] = v.clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix<R>) -> Result<Self> {
        if self.cols != other.nrows() {
            return Err(Error::Mismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.nrows(),
                self.cols,
                other.nrows(),
                other.cols
            )));
        }
        let ring = &self.ring;
        let mut out = Self::zeros(ring, self.nrows(), other.cols);
        for (i, row) in self.rows.iter().enumerate() {
            for (k, a) in row.iter().enumerate() {
                if ring.is_zero(a) {
                    continue;
                }
                for (j, b) in other.rows[k].iter().enumerate() {
                    if !ring.is_zero(b) {
                        let p = ring.mul(a, b);
                        ring.add_assign(&mut out.rows[i][j], &p);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, x: &[R::Elem]) -> Result<Vec<R::Elem>> {
        if x.len() != self.nrows() {
            return Err(Error::Mismatch(format!("vector of length {} times {} rows", x.len(), self.nrows())));
        }
        let ring = &self.ring;
        let mut out = vec![ring.zero(); self.cols];
        for (a, row) in x.iter().zip(&self.rows) {
            if ring.is_zero(a) {
                continue;
            }
            for (o, b) in out.iter_mut().zip(row) {
                if !ring.is_zero(b) {
                    ring.add_assign(o, &ring.mul(a, b));
                }
            }
        }
        Ok(out)
    }

    /// Rows of `self` followed by rows of `other`.
    pub fn vstack(&self, other: &Matrix<R>) -> Result<Self> {
        if self.cols != other.cols {
            return Err(Error::Mismatch(format!("vstack of {} and {} columns", self.cols, other.cols)));
        }
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        Ok(Matrix { ring: self.ring.clone(), cols: self.cols, rows })
    }

    /// Columns of `self` followed by columns of `other`.
    pub fn hstack(&self, other: &Matrix<R>) -> Result<Self> {
        if self.nrows() != other.nrows() {
            return Err(Error::Mismatch(format!("hstack of {} and {} rows", self.nrows(), other.nrows())));
        }
        let rows = self.rows.iter().zip(&other.rows).map(|(a, b)| a.iter().chain(b).cloned().collect()).collect();
        Ok(Matrix { ring: self.ring.clone(), cols: self.cols + other.cols, rows })
    }

    /// Text form: a header line `rows cols ring`, then one line per row.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {} {}\n", self.nrows(), self.cols, self.ring.spec());
        for row in &self.rows {
            let line: Vec<String> = row.iter().map(|v| self.ring.format(v)).collect();
            let _ = writeln!(out, "{}", line.join(" "));
        }
        out
    }

    pub fn from_text(ring: &R, text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| Error::Parse("empty matrix text".into()))?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(Error::Parse(format!("bad matrix header {header:?}")));
        }
        let parse_dim = |s: &str| s.parse::<usize>().map_err(|_| Error::Parse(format!("bad dimension {s:?}")));
        let (nrows, ncols) = (parse_dim(fields[0])?, parse_dim(fields[1])?);
        let spec: crate::ring::RingSpec = fields[2].parse()?;
        if spec != ring.spec() {
            return Err(Error::Mismatch(format!("matrix is over {spec}, expected {}", ring.spec())));
        }
        let mut rows = Vec::with_capacity(nrows);
        for line in lines {
            let row = line.split_whitespace().map(|t| ring.parse(t)).collect::<Result<Vec<_>>>()?;
            rows.push(row);
        }
        if rows.len() != nrows {
            return Err(Error::Parse(format!("header says {nrows} rows, found {}", rows.len())));
        }
        Self::from_rows(ring, ncols, rows)
    }
}

impl Matrix<Integers> {
    pub fn from_bigint_rows(rows: Vec<Vec<BigInt>>, ncols: usize) -> Result<Self> {
        Self::from_rows(&Integers, ncols, rows)
    }
}

/// Matrix stored as sorted `(column, value)` lists per row; zeros omitted.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseMatrix<R: Ring> {
    ring: R,
    cols: usize,
    rows: Vec<Vec<(usize, R::Elem)>>,
}

impl<R: Ring> SparseMatrix<R> {
    pub fn new(ring: &R, ncols: usize) -> Self {
        SparseMatrix { ring: ring.clone(), cols: ncols, rows: Vec::new() }
    }

    /// Appends a row; entries may be unsorted and repeat a column (summed).
    pub fn push_row(&mut self, entries: impl IntoIterator<Item = (usize, R::Elem)>) {
        let mut acc: Vec<(usize, R::Elem)> = entries.into_iter().collect();
        acc.sort_by_key(|(c, _)| *c);
        let mut row: Vec<(usize, R::Elem)> = Vec::with_capacity(acc.len());
        for (c, v) in acc {
            assert!(c < self.cols, "column {c} out of range {}", self.cols);
            match row.last_mut() {
                Some((lc, lv)) if *lc == c => self.ring.add_assign(lv, &v),
                _ => row.push((c, v)),
            }
        }
        row.retain(|(_, v)| !self.ring.is_zero(v));
        self.rows.push(row);
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[(usize, R::Elem)] {
        &self.rows[i]
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn to_dense(&self) -> Matrix<R> {
        let mut m = Matrix::zeros(&self.ring, self.nrows(), self.cols);
        for (i, row) in self.rows.iter().enumerate() {
            for (j, v) in row {
                m.rows[i][*j] = v.clone();
            }
        }
        m
    }

    /// Dense matrix of the distinct nonzero columns, in order of first
    /// occurrence. Left null space and row rank are unchanged.
    pub fn compress_columns(&self) -> Matrix<R> {
        let mut columns: Vec<Vec<(usize, R::Elem)>> = Vec::new();
        let mut slot: HashMap<usize, usize> = HashMap::new();
        for (i, row) in self.rows.iter().enumerate() {
            for (j, v) in row {
                let k = *slot.entry(*j).or_insert_with(|| {
                    columns.push(Vec::new());
                    columns.len() - 1
                });
                columns[k].push((i, v.clone()));
            }
        }
        let mut seen: HashMap<&[(usize, R::Elem)], ()> = HashMap::new();
        let mut distinct: Vec<&[(usize, R::Elem)]> = Vec::new();
        for col in &columns {
            if seen.insert(col.as_slice(), ()).is_none() {
                distinct.push(col);
            }
        }
        let mut m = Matrix::zeros(&self.ring, self.nrows(), distinct.len());
        for (k, col) in distinct.iter().enumerate() {
            for (i, v) in col.iter() {
                m.rows[*i][k] = v.clone();
            }
        }
        m
    }

    /// `x · M` as a sparse vector (sorted, zeros dropped).
    pub fn vec_mul(&self, x: &[R::Elem]) -> Result<Vec<(usize, R::Elem)>> {
        if x.len() != self.nrows() {
            return Err(Error::Mismatch(format!("vector of length {} times {} rows", x.len(), self.nrows())));
        }
        let ring = &self.ring;
        let mut acc: HashMap<usize, R::Elem> = HashMap::new();
        for (a, row) in x.iter().zip(&self.rows) {
            if ring.is_zero(a) {
                continue;
            }
            for (j, b) in row {
                let p = ring.mul(a, b);
                let e = acc.entry(*j).or_insert_with(|| ring.zero());
                ring.add_assign(e, &p);
            }
        }
        let mut out: Vec<(usize, R::Elem)> = acc.into_iter().filter(|(_, v)| !ring.is_zero(v)).collect();
        out.sort_by_key(|(j, _)| *j);
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{Integers, Rationals};

    #[test]
    fn text_round_trip() {
        let q = Rationals;
        let m = Matrix::from_rows(&q, 2, vec![vec![q.parse("1/2").unwrap(), q.from_i64(-3)], vec![q.zero(), q.one()]])
            .unwrap();
        let text = m.to_text();
        assert!(text.starts_with("2 2 Q\n1/2 -3\n"));
        assert_eq!(Matrix::from_text(&q, &text).unwrap(), m);
        assert!(Matrix::from_text(&Integers, &text).is_err());
    }

    #[test]
    fn compress_keeps_distinct_columns() {
        let z = Integers;
        let mut s = SparseMatrix::new(&z, 6);
        s.push_row(vec![(0, z.one()), (2, z.one()), (5, z.from_i64(2))]);
        s.push_row(vec![(0, z.one()), (2, z.one()), (3, z.one())]);
        let c = s.compress_columns();
        // columns 0 and 2 coincide; 1 and 4 are zero
        assert_eq!(c.ncols(), 3);
        assert_eq!(c.nrows(), 2);
    }

    #[test]
    fn sparse_row_merging() {
        let z = Integers;
        let mut s = SparseMatrix::new(&z, 3);
        s.push_row(vec![(2, z.one()), (0, z.one()), (2, z.from_i64(-1))]);
        assert_eq!(s.row(0), &[(0, z.one())]);
        assert_eq!(s.nnz(), 1);
    }
}
