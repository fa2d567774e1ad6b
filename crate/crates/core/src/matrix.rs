//! Dense matrices over a finite field and exact Gaussian elimination.
//!
//! Everything here is exact, so the pivot is simply the first nonzero entry
//! of a column. Rank, kernels and subspace intersections built on top of
//! `rref` are the linear-algebra oracles the rest of the crate is checked
//! against.

use std::fmt;

use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::field::{FieldElement, FieldSpec};

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<FieldElement>,
}

/// Reduced row-echelon form together with rank and pivot columns.
#[derive(Clone, Debug)]
pub struct Rref {
    pub reduced: Matrix,
    pub rank: usize,
    pub pivot_cols: Vec<usize>,
}

impl Matrix {
    pub fn new(
        field: FieldSpec,
        rows: usize,
        cols: usize,
        data: Vec<FieldElement>,
    ) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(domain(format!(
                "{} entries cannot fill a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(x) = data.iter().find(|x| x.field() != field) {
            return Err(Error::FieldMismatch {
                left: field,
                right: x.field(),
            });
        }
        Ok(Matrix {
            field,
            rows,
            cols,
            data,
        })
    }

    /// Build from row vectors; `cols` is needed to describe matrices with no rows.
    pub fn from_rows(field: FieldSpec, cols: usize, rows: Vec<Vec<FieldElement>>) -> Result<Self> {
        if let Some(r) = rows.iter().find(|r| r.len() != cols) {
            return Err(domain(format!(
                "row of length {} in a matrix with {cols} columns",
                r.len()
            )));
        }
        let n = rows.len();
        Self::new(field, n, cols, rows.into_iter().flatten().collect())
    }

    pub fn from_ints(field: FieldSpec, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let data = rows
            .iter()
            .flat_map(|r| {
                assert_eq!(r.len(), cols, "ragged rows");
                r.iter().map(|&x| field.from_integer(x))
            })
            .collect();
        Matrix {
            field,
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    pub fn field(&self) -> FieldSpec {
        self.field
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

    pub fn get(&self, i: usize, j: usize) -> FieldElement {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: FieldElement) {
        assert_eq!(x.field(), self.field, "field mismatch");
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[FieldElement] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<FieldElement>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Entries as canonical integers, row by row.
    pub fn to_ints(&self) -> Vec<Vec<u64>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|x| x.to_int()).collect())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Matrix {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j));
            }
        }
        Matrix {
            field: self.field,
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn mul(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.field != rhs.field {
            return Err(Error::FieldMismatch {
                left: self.field,
                right: rhs.field,
            });
        }
        if self.cols != rhs.rows {
            return Err(domain(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.field, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out.data[i * rhs.cols + j] += a * rhs.get(k, j);
                }
            }
        }
        Ok(out)
    }

    /// `self * self^T`.
    pub fn gram(&self) -> Matrix {
        let mut out = Self::zeros(self.field, self.rows, self.rows);
        for i in 0..self.rows {
            for j in i..self.rows {
                let v = dot(self.row(i), self.row(j));
                out.data[i * self.rows + j] = v;
                out.data[j * self.rows + i] = v;
            }
        }
        out
    }

    /// Row vector times matrix: `v * self`.
    pub fn left_mul_vec(&self, v: &[FieldElement]) -> Result<Vec<FieldElement>> {
        if v.len() != self.rows {
            return Err(domain(format!(
                "vector of length {} times {}x{} matrix",
                v.len(),
                self.rows,
                self.cols
            )));
        }
        let mut out = vec![self.field.zero(); self.cols];
        for (i, &a) in v.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (o, &x) in out.iter_mut().zip(self.row(i)) {
                *o += a * x;
            }
        }
        Ok(out)
    }

    /// Stack `self` on top of `other`.
    pub fn vstack(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.cols {
            return Err(domain(format!(
                "cannot stack {} columns on {} columns",
                self.cols, other.cols
            )));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix::new(self.field, self.rows + other.rows, self.cols, data)
    }

    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let pivot_cols = m.eliminate(true).0;
        Rref {
            rank: pivot_cols.len(),
            reduced: m,
            pivot_cols,
        }
    }

    /// In-place elimination; returns pivot columns and the number of row swaps.
    /// With `reduce`, clears above pivots and scales pivots to 1 (RREF).
    fn eliminate(&mut self, reduce: bool) -> (Vec<usize>, usize) {
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut swaps = 0;
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| !self.data[i * cols + c].is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..cols {
                    self.data.swap(p * cols + j, r * cols + j);
                }
                swaps += 1;
            }
            let pivot = self.data[r * cols + c];
            if reduce {
                let inv = pivot.inv().expect("nonzero pivot");
                for j in c..cols {
                    self.data[r * cols + j] *= inv;
                }
            }
            let pivot = self.data[r * cols + c];
            let pivot_inv = pivot.inv().expect("nonzero pivot");
            let start = if reduce { 0 } else { r + 1 };
            for i in start..rows {
                if i == r {
                    continue;
                }
                let factor = self.data[i * cols + c];
                if factor.is_zero() {
                    continue;
                }
                let factor = factor * pivot_inv;
                for j in c..cols {
                    let sub = factor * self.data[r * cols + j];
                    self.data[i * cols + j] -= sub;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (pivots, swaps)
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.eliminate(false).0.len()
    }

    /// Basis (as rows) of `{x : self * x^T = 0}`; has `cols - rank` rows.
    pub fn nullspace(&self) -> Matrix {
        let Rref {
            reduced,
            pivot_cols,
            ..
        } = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivot_cols.contains(c)).collect();
        let mut basis = Vec::with_capacity(free.len());
        for &f in &free {
            let mut v = vec![self.field.zero(); self.cols];
            v[f] = self.field.one();
            for (r, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = -reduced.get(r, f);
            }
            basis.push(v);
        }
        Matrix::from_rows(self.field, self.cols, basis).expect("consistent shape")
    }

    /// Nonzero rows of the RREF: a canonical basis of the row space.
    pub fn row_space_basis(&self) -> Matrix {
        let Rref { reduced, rank, .. } = self.rref();
        Matrix {
            field: self.field,
            rows: rank,
            cols: self.cols,
            data: reduced.data[..rank * self.cols].to_vec(),
        }
    }

    pub fn same_row_space(&self, other: &Matrix) -> bool {
        self.cols == other.cols && self.row_space_basis() == other.row_space_basis()
    }

    /// Whether `v` lies in the row space.
    pub fn row_space_contains(&self, v: &[FieldElement]) -> bool {
        if v.len() != self.cols {
            return false;
        }
        let single = Matrix {
            field: self.field,
            rows: 1,
            cols: self.cols,
            data: v.to_vec(),
        };
        let stacked = self.vstack(&single).expect("same width");
        stacked.rank() == self.rank()
    }

    /// Basis (as rows) of `rowspace(self) ∩ rowspace(other)` by Zassenhaus:
    /// eliminate `[[U, U], [W, 0]]`; rows with a vanishing left half carry the
    /// intersection in their right half.
    pub fn subspace_intersection(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.cols {
            return Err(domain(format!(
                "column mismatch: {} vs {}",
                self.cols, other.cols
            )));
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                left: self.field,
                right: other.field,
            });
        }
        let c = self.cols;
        let mut data = Vec::with_capacity((self.rows + other.rows) * 2 * c);
        for i in 0..self.rows {
            data.extend_from_slice(self.row(i));
            data.extend_from_slice(self.row(i));
        }
        for i in 0..other.rows {
            data.extend_from_slice(other.row(i));
            data.extend(std::iter::repeat_n(self.field.zero(), c));
        }
        let block = Matrix::new(self.field, self.rows + other.rows, 2 * c, data)?;
        let Rref { reduced, rank, .. } = block.rref();
        let mut basis = Vec::new();
        for i in 0..rank {
            let row = reduced.row(i);
            if row[..c].iter().all(|x| x.is_zero()) {
                basis.push(row[c..].to_vec());
            }
        }
        Matrix::from_rows(self.field, c, basis)
    }

    pub fn is_nonsingular(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(domain(format!(
                "cannot invert a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(self.clone());
        }
        let mut data = Vec::with_capacity(2 * n * n);
        for i in 0..n {
            data.extend_from_slice(self.row(i));
            for j in 0..n {
                data.push(if i == j {
                    self.field.one()
                } else {
                    self.field.zero()
                });
            }
        }
        let aug = Matrix::new(self.field, n, 2 * n, data)?;
        let Rref {
            reduced,
            pivot_cols,
            ..
        } = aug.rref();
        if pivot_cols.len() < n || pivot_cols[n - 1] >= n {
            return Err(Error::Singular);
        }
        let mut out = Vec::with_capacity(n * n);
        for i in 0..n {
            out.extend_from_slice(&reduced.row(i)[n..]);
        }
        Matrix::new(self.field, n, n, out)
    }

    /// Determinant from elimination (product of pivots, sign from row swaps).
    /// Singularity decisions elsewhere use rank; this is a diagnostic.
    pub fn determinant(&self) -> Result<FieldElement> {
        if !self.is_square() {
            return Err(domain("determinant of a non-square matrix"));
        }
        let mut m = self.clone();
        let (pivots, swaps) = m.eliminate(false);
        if pivots.len() < self.rows {
            return Ok(self.field.zero());
        }
        let mut det = self.field.one();
        for i in 0..self.rows {
            det *= m.get(i, i);
        }
        Ok(if swaps % 2 == 1 { -det } else { det })
    }
}

/// Standard dot product.
pub fn dot(a: &[FieldElement], b: &[FieldElement]) -> FieldElement {
    assert_eq!(a.len(), b.len(), "length mismatch");
    let mut acc = match a.first() {
        Some(x) => x.field().zero(),
        None => {
            return b
                .first()
                .map_or_else(|| panic!("empty dot product"), |x| x.field().zero())
        }
    };
    for (&x, &y) in a.iter().zip(b) {
        acc += x * y;
    }
    acc
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.rows)
            .map(|i| {
                let entries: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
                format!("[{}]", entries.join(", "))
            })
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{} {self} over {}", self.rows, self.cols, self.field)
    }
}

impl Serialize for Matrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.row_vecs().serialize(s)
    }
}
