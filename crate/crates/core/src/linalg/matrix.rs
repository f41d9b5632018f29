use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::domain::{Domain, Scalar};
use crate::error::{Error, Result};

/// Dense row-major matrix over an exact coefficient domain.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    domain: Domain,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(domain: Domain, rows: usize, cols: usize) -> Self {
        Matrix { domain, rows, cols, data: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(domain: Domain, n: usize) -> Self {
        let mut m = Self::zeros(domain, n, n);
        for i in 0..n {
            m.data[i * n + i] = domain.one();
        }
        m
    }

    pub fn from_i64(domain: Domain, rows: usize, cols: usize, values: &[i64]) -> Self {
        assert_eq!(values.len(), rows * cols, "entry count");
        let data = values.iter().map(|&v| domain.from_i64(v)).collect();
        Matrix { domain, rows, cols, data }
    }

    pub fn from_rows_i64(domain: Domain, rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let flat: Vec<i64> = rows.iter().flat_map(|row| row.iter().copied()).collect();
        Self::from_i64(domain, r, c, &flat)
    }

    /// Builds from entries, normalizing each into canonical form.
    pub fn from_scalars(domain: Domain, rows: usize, cols: usize, values: Vec<Scalar>) -> Result<Self> {
        if values.len() != rows * cols {
            return Err(Error::Shape(format!("{} entries for a {rows}x{cols} matrix", values.len())));
        }
        let data = values.into_iter().map(|v| domain.normalize(v)).collect();
        Ok(Matrix { domain, rows, cols, data })
    }

    pub fn from_columns(domain: Domain, rows: usize, columns: &[Vec<Scalar>]) -> Self {
        let mut m = Self::zeros(domain, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length");
            for (i, v) in col.iter().enumerate() {
                m.data[i * m.cols + j] = v.clone();
            }
        }
        m
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = self.domain.normalize(v);
    }

    pub(crate) fn set_raw(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Scalar>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn row(&self, i: usize) -> Vec<Scalar> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn select_columns(&self, idx: &[usize]) -> Matrix {
        let mut m = Matrix::zeros(self.domain, self.rows, idx.len());
        for (k, &j) in idx.iter().enumerate() {
            for i in 0..self.rows {
                m.data[i * m.cols + k] = self.get(i, j).clone();
            }
        }
        m
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        let mut m = Matrix::zeros(self.domain, idx.len(), self.cols);
        for (k, &i) in idx.iter().enumerate() {
            for j in 0..self.cols {
                m.data[k * m.cols + j] = self.get(i, j).clone();
            }
        }
        m
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Matrix {
        let r: Vec<usize> = rows.collect();
        let c: Vec<usize> = cols.collect();
        self.select_rows(&r).select_columns(&c)
    }

    pub fn transpose(&self) -> Matrix {
        let mut m = Matrix::zeros(self.domain, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.data[j * m.cols + i] = self.get(i, j).clone();
            }
        }
        m
    }

    fn check_same(&self, other: &Matrix, what: &str) {
        assert_eq!(self.domain, other.domain, "{what}: domain mismatch");
    }

    pub fn try_mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        self.check_same(other, "mul");
        let d = self.domain;
        let mut m = Matrix::zeros(d, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * m.cols + j;
                    m.data[idx] = &m.data[idx] + a * b;
                }
            }
        }
        for v in m.data.iter_mut() {
            *v = d.normalize(std::mem::take(v));
        }
        Ok(m)
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        self.try_mul(other).expect("matrix product shape")
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "vector length");
        let d = self.domain;
        (0..self.rows)
            .map(|i| {
                let mut acc = Scalar::zero();
                for (j, x) in v.iter().enumerate() {
                    let a = self.get(i, j);
                    if !a.is_zero() && !x.is_zero() {
                        acc += a * x;
                    }
                }
                d.normalize(acc)
            })
            .collect()
    }

    fn zip(&self, other: &Matrix, f: impl Fn(&Scalar, &Scalar) -> Scalar) -> Matrix {
        assert_eq!(self.shape(), other.shape(), "elementwise shape mismatch");
        self.check_same(other, "elementwise");
        let data = self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect();
        Matrix { domain: self.domain, rows: self.rows, cols: self.cols, data }
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        let d = self.domain;
        self.zip(other, |a, b| d.add(a, b))
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        let d = self.domain;
        self.zip(other, |a, b| d.sub(a, b))
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        let d = self.domain;
        let data = self.data.iter().map(|a| d.mul(a, c)).collect();
        Matrix { domain: d, rows: self.rows, cols: self.cols, data }
    }

    pub fn neg(&self) -> Matrix {
        self.scale(&self.domain.from_i64(-1))
    }

    pub fn hstack(parts: &[&Matrix]) -> Matrix {
        let domain = parts[0].domain;
        let rows = parts[0].rows;
        let cols = parts.iter().map(|p| p.cols).sum();
        let mut m = Matrix::zeros(domain, rows, cols);
        let mut off = 0;
        for p in parts {
            assert_eq!(p.rows, rows, "hstack row mismatch");
            for i in 0..rows {
                for j in 0..p.cols {
                    m.data[i * cols + off + j] = p.get(i, j).clone();
                }
            }
            off += p.cols;
        }
        m
    }

    pub fn vstack(parts: &[&Matrix]) -> Matrix {
        let domain = parts[0].domain;
        let cols = parts[0].cols;
        let rows = parts.iter().map(|p| p.rows).sum();
        let mut m = Matrix::zeros(domain, rows, cols);
        let mut off = 0;
        for p in parts {
            assert_eq!(p.cols, cols, "vstack column mismatch");
            for i in 0..p.rows {
                for j in 0..cols {
                    m.data[(off + i) * cols + j] = p.get(i, j).clone();
                }
            }
            off += p.rows;
        }
        m
    }

    pub fn block_diag(domain: Domain, parts: &[&Matrix]) -> Matrix {
        let rows = parts.iter().map(|p| p.rows).sum();
        let cols = parts.iter().map(|p| p.cols).sum();
        let mut m = Matrix::zeros(domain, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for p in parts {
            m.paste(r0, c0, p);
            r0 += p.rows;
            c0 += p.cols;
        }
        m
    }

    /// Copies `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn paste(&mut self, r0: usize, c0: usize, block: &Matrix) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.data[(r0 + i) * self.cols + c0 + j] = block.get(i, j).clone();
            }
        }
    }

    /// Kronecker product with `self` indexing the outer (major) coordinate.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        self.check_same(other, "kron");
        let d = self.domain;
        let mut m = Matrix::zeros(d, self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let v = d.mul(a, other.get(k, l));
                        m.data[(i * other.rows + k) * m.cols + j * other.cols + l] = v;
                    }
                }
            }
        }
        m
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[target] += c * row[source]
    pub fn add_row_multiple(&mut self, target: usize, source: usize, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let d = self.domain;
        for j in 0..self.cols {
            let s = self.get(source, j);
            if s.is_zero() {
                continue;
            }
            let v = d.add(self.get(target, j), &d.mul(c, s));
            self.data[target * self.cols + j] = v;
        }
    }

    /// col[target] += c * col[source]
    pub fn add_col_multiple(&mut self, target: usize, source: usize, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let d = self.domain;
        for i in 0..self.rows {
            let s = self.get(i, source);
            if s.is_zero() {
                continue;
            }
            let v = d.add(self.get(i, target), &d.mul(c, s));
            self.data[i * self.cols + target] = v;
        }
    }

    pub fn scale_row(&mut self, i: usize, c: &Scalar) {
        let d = self.domain;
        for j in 0..self.cols {
            let v = d.mul(self.get(i, j), c);
            self.data[i * self.cols + j] = v;
        }
    }

    pub fn scale_col(&mut self, j: usize, c: &Scalar) {
        let d = self.domain;
        for i in 0..self.rows {
            let v = d.mul(self.get(i, j), c);
            self.data[i * self.cols + j] = v;
        }
    }

    /// Row-major array of canonical strings, the wire form of a matrix.
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.domain.format(self.get(i, j))).collect())
            .collect()
    }

    pub fn from_strings(domain: Domain, rows: &[Vec<String>], cols_hint: usize) -> Result<Matrix> {
        let r = rows.len();
        let c = rows.first().map_or(cols_hint, |row| row.len());
        let mut m = Matrix::zeros(domain, r, c);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != c {
                return Err(Error::Shape(format!("row {i} has {} entries, expected {c}", row.len())));
            }
            for (j, s) in row.iter().enumerate() {
                m.data[i * c + j] = domain.parse(s)?;
            }
        }
        Ok(m)
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix<{}>{}x{}{:?}", self.domain, self.rows, self.cols, self.to_strings())
    }
}

/// Serialized as row-major string arrays with explicit shape (so empty
/// matrices keep their column count).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<String>>,
}

impl MatrixJson {
    pub fn from_matrix(m: &Matrix) -> Self {
        MatrixJson { rows: m.rows(), cols: m.cols(), entries: m.to_strings() }
    }

    pub fn to_matrix(&self, domain: Domain) -> Result<Matrix> {
        if self.entries.len() != self.rows {
            return Err(Error::Shape(format!("{} rows listed, {} declared", self.entries.len(), self.rows)));
        }
        if self.rows == 0 {
            return Ok(Matrix::zeros(domain, 0, self.cols));
        }
        let m = Matrix::from_strings(domain, &self.entries, self.cols)?;
        if m.cols() != self.cols {
            return Err(Error::Shape(format!("{} columns listed, {} declared", m.cols(), self.cols)));
        }
        Ok(m)
    }
}
