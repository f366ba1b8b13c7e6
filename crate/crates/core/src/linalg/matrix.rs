use std::fmt;

use num_bigint::BigInt;

use super::ring::{Integers, PrimeField, Rationals, Ring};
use crate::error::{Error, Result};

/// Dense row-major matrix over an exact ring.
#[derive(Clone, PartialEq)]
pub struct Matrix<R: Ring> {
    ring: R,
    rows: usize,
    cols: usize,
    entries: Vec<R::Elem>,
}

pub type IntMatrix = Matrix<Integers>;
pub type RatMatrix = Matrix<Rationals>;
pub type FpMatrix = Matrix<PrimeField>;

impl<R: Ring> Matrix<R> {
    pub fn from_vec(ring: R, rows: usize, cols: usize, entries: Vec<R::Elem>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(Matrix {
            ring,
            rows,
            cols,
            entries,
        })
    }

    pub fn from_rows(ring: R, rows: Vec<Vec<R::Elem>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        let entries = rows.into_iter().flatten().collect();
        Matrix::from_vec(ring, nrows, ncols, entries)
    }

    pub fn zeros(ring: R, rows: usize, cols: usize) -> Self {
        let entries = vec![ring.zero(); rows * cols];
        Matrix {
            ring,
            rows,
            cols,
            entries,
        }
    }

    pub fn identity(ring: R, k: usize) -> Self {
        let mut m = Matrix::zeros(ring, k, k);
        for i in 0..k {
            m.entries[i * k + i] = m.ring.one();
        }
        m
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &R::Elem {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: R::Elem) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn entries(&self) -> &[R::Elem] {
        &self.entries
    }

    pub fn row(&self, r: usize) -> &[R::Elem] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<R::Elem>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| self.ring.is_zero(e))
    }

    pub fn transpose(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                entries.push(self.get(r, c).clone());
            }
        }
        Matrix {
            ring: self.ring.clone(),
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    pub fn scale(&self, s: &R::Elem) -> Self {
        Matrix {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| self.ring.mul(e, s)).collect(),
        }
    }

    /// Exact product `self * rhs`.
    pub fn mat_mul(&self, rhs: &Matrix<R>) -> Result<Matrix<R>> {
        if self.ring != rhs.ring {
            return Err(Error::InvalidArgument("operands over different rings".into()));
        }
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let ring = &self.ring;
        let mut out = Matrix::zeros(ring.clone(), self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if ring.is_zero(a) {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if ring.is_zero(b) {
                        continue;
                    }
                    let idx = i * rhs.cols + j;
                    out.entries[idx] = ring.add(&out.entries[idx], &ring.mul(a, b));
                }
            }
        }
        Ok(out)
    }

    /// Assemble `[[tl, tr], [bl, br]]`.
    pub fn block_assemble(tl: &Self, tr: &Self, bl: &Self, br: &Self) -> Result<Self> {
        let mismatch = |what: &str| Err(Error::DimensionMismatch(format!("block assembly: {what}")));
        if tl.rows != tr.rows || bl.rows != br.rows {
            return mismatch("row counts of horizontal neighbours differ");
        }
        if tl.cols != bl.cols || tr.cols != br.cols {
            return mismatch("column counts of vertical neighbours differ");
        }
        let rows = tl.rows + bl.rows;
        let cols = tl.cols + tr.cols;
        let mut entries = Vec::with_capacity(rows * cols);
        for (left, right) in [(tl, tr), (bl, br)] {
            for r in 0..left.rows {
                entries.extend_from_slice(left.row(r));
                entries.extend_from_slice(right.row(r));
            }
        }
        Matrix::from_vec(tl.ring.clone(), rows, cols, entries)
    }

    /// Re-express every entry in another ring.
    pub fn map_ring<S: Ring>(&self, ring: S, f: impl Fn(&R::Elem) -> S::Elem) -> Matrix<S> {
        Matrix {
            ring,
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }
}

impl IntMatrix {
    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Result<Self> {
        Matrix::from_rows(
            Integers,
            rows.iter()
                .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
                .collect(),
        )
    }

    pub fn reduce_mod(&self, field: PrimeField) -> FpMatrix {
        self.map_ring(field, |v| field.from_bigint(v))
    }

    pub fn to_rational(&self) -> RatMatrix {
        self.map_ring(Rationals, |v| Rationals.from_bigint(v))
    }

    /// Largest entry size in bits.
    pub fn max_bits(&self) -> u64 {
        self.entries.iter().map(|e| e.bits()).max().unwrap_or(0)
    }
}

impl<R: Ring> fmt::Debug for Matrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{:?} {}x{} [", self.ring.tag(), self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        write!(f, "]")
    }
}
