//! Dense exact matrices over a [`Field`] and the canonical-form machinery
//! built on Gaussian elimination.

mod echelon;
mod jordan;
pub mod poly;
mod similarity;

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Sub};

pub use echelon::{kernel_basis, rank_of_rows, Echelon};
pub use jordan::{unipotent_jordan, JordanData};
pub use poly::{char_min_poly, charpoly, minpoly, Poly};
pub use similarity::{
    companion_similarity_2x2, diagonalize_known_spectrum, match_permutation, permutation_matrix,
    permutation_similarity,
};

use crate::error::{Error, Result};
use crate::field::Field;

/// A column vector.
pub type Vector<F> = Vec<<F as Field>::Elem>;

/// A square `n x n` matrix, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<F: Field> {
    field: F,
    n: usize,
    data: Vec<F::Elem>,
}

impl<F: Field> Matrix<F> {
    /// `data` is row-major and must hold `n * n` entries.
    pub fn new(field: F, n: usize, data: Vec<F::Elem>) -> Result<Self> {
        if data.len() != n * n {
            return Err(Error::SizeMismatch(data.len(), n * n));
        }
        Ok(Matrix { field, n, data })
    }

    pub fn from_rows(field: F, rows: Vec<Vec<F::Elem>>) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::SizeMismatch(row.len(), n));
            }
            data.extend(row);
        }
        Ok(Matrix { field, n, data })
    }

    /// Integer entries reduced into the field.
    pub fn from_i64(field: F, rows: &[&[i64]]) -> Self {
        let n = rows.len();
        let data = rows
            .iter()
            .flat_map(|r| {
                assert_eq!(r.len(), n, "non-square integer matrix");
                r.iter().map(|&v| field.from_i64(v))
            })
            .collect();
        Matrix { field, n, data }
    }

    /// Matrix whose `j`-th column is `cols[j]`.
    pub fn from_columns(field: F, cols: &[Vector<F>]) -> Result<Self> {
        let n = cols.len();
        let mut data = vec![field.zero(); n * n];
        for (j, c) in cols.iter().enumerate() {
            if c.len() != n {
                return Err(Error::SizeMismatch(c.len(), n));
            }
            for (i, x) in c.iter().enumerate() {
                data[i * n + j] = x.clone();
            }
        }
        Ok(Matrix { field, n, data })
    }

    pub fn zero(field: F, n: usize) -> Self {
        let data = vec![field.zero(); n * n];
        Matrix { field, n, data }
    }

    pub fn identity(field: F, n: usize) -> Self {
        let one = field.one();
        Self::scalar(field, n, one)
    }

    pub fn scalar(field: F, n: usize, value: F::Elem) -> Self {
        let mut m = Self::zero(field, n);
        for i in 0..n {
            m.data[i * n + i] = value.clone();
        }
        m
    }

    pub fn diag(field: F, entries: &[F::Elem]) -> Self {
        let n = entries.len();
        let mut m = Self::zero(field, n);
        for (i, e) in entries.iter().enumerate() {
            m.data[i * n + i] = e.clone();
        }
        m
    }

    /// Upper triangular Jordan block `J_s(value)`.
    pub fn jordan_block(field: F, s: usize, value: F::Elem) -> Self {
        let one = field.one();
        let mut m = Self::scalar(field, s, value);
        for i in 0..s.saturating_sub(1) {
            m.data[i * s + i + 1] = one.clone();
        }
        m
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &F::Elem {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F::Elem) {
        self.data[i * self.n + j] = v;
    }

    pub fn entries(&self) -> &[F::Elem] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[F::Elem] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> Vec<Vec<F::Elem>> {
        (0..self.n).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vector<F> {
        (0..self.n).map(|i| self.get(i, j).clone()).collect()
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.n != other.n {
            return Err(Error::SizeMismatch(self.n, other.n));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let f = &self.field;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| f.add(a, b))
            .collect();
        Ok(Matrix {
            field: f.clone(),
            n: self.n,
            data,
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let f = &self.field;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| f.sub(a, b))
            .collect();
        Ok(Matrix {
            field: f.clone(),
            n: self.n,
            data,
        })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let f = &self.field;
        let n = self.n;
        let mut data = vec![f.zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = &self.data[i * n + k];
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..n {
                    let b = &other.data[k * n + j];
                    if !f.is_zero(b) {
                        let cell = &mut data[i * n + j];
                        *cell = f.add(cell, &f.mul(a, b));
                    }
                }
            }
        }
        Ok(Matrix {
            field: f.clone(),
            n,
            data,
        })
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let f = &self.field;
        Matrix {
            field: f.clone(),
            n: self.n,
            data: self.data.iter().map(|a| f.mul(a, c)).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        let f = &self.field;
        Matrix {
            field: f.clone(),
            n: self.n,
            data: self.data.iter().map(|a| f.neg(a)).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        let data = (0..n * n)
            .map(|idx| self.data[(idx % n) * n + idx / n].clone())
            .collect();
        Matrix {
            field: self.field.clone(),
            n,
            data,
        }
    }

    /// Block-diagonal `self ⊕ other`.
    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        Ok(Self::block_diag(self.field.clone(), &[self, other]))
    }

    /// Block-diagonal sum of `blocks`, in order.
    pub fn block_diag(field: F, blocks: &[&Self]) -> Self {
        let n: usize = blocks.iter().map(|b| b.n).sum();
        let mut m = Self::zero(field, n);
        let mut off = 0;
        for b in blocks {
            for i in 0..b.n {
                for j in 0..b.n {
                    m.data[(off + i) * n + off + j] = b.get(i, j).clone();
                }
            }
            off += b.n;
        }
        m
    }

    /// The square sub-block starting at `(off, off)` of size `size`.
    pub fn principal_block(&self, off: usize, size: usize) -> Self {
        let mut m = Self::zero(self.field.clone(), size);
        for i in 0..size {
            for j in 0..size {
                m.data[i * size + j] = self.get(off + i, off + j).clone();
            }
        }
        m
    }

    pub fn trace(&self) -> F::Elem {
        let f = &self.field;
        (0..self.n).fold(f.zero(), |acc, i| f.add(&acc, self.get(i, i)))
    }

    pub fn mul_vec(&self, v: &[F::Elem]) -> Vector<F> {
        let f = &self.field;
        (0..self.n)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(f.zero(), |acc, (a, b)| f.add(&acc, &f.mul(a, b)))
            })
            .collect()
    }

    /// Determinant by elimination, pivoting on the first nonzero entry.
    pub fn det(&self) -> F::Elem {
        let f = &self.field;
        let n = self.n;
        let mut a = self.data.clone();
        let mut det = f.one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !f.is_zero(&a[r * n + c])) else {
                return f.zero();
            };
            if p != c {
                for j in 0..n {
                    a.swap(p * n + j, c * n + j);
                }
                det = f.neg(&det);
            }
            let pivot = a[c * n + c].clone();
            det = f.mul(&det, &pivot);
            let pinv = f.inv(&pivot).expect("nonzero pivot");
            for r in c + 1..n {
                let factor = f.mul(&a[r * n + c], &pinv);
                if f.is_zero(&factor) {
                    continue;
                }
                for j in c..n {
                    let t = f.mul(&factor, &a[c * n + j]);
                    a[r * n + j] = f.sub(&a[r * n + j], &t);
                }
            }
        }
        det
    }

    pub fn rank(&self) -> usize {
        rank_of_rows(&self.field, self.rows())
    }

    pub fn nullity(&self) -> usize {
        self.n - self.rank()
    }

    /// Basis of the right kernel, from the reduced row echelon form.
    pub fn kernel(&self) -> Vec<Vector<F>> {
        kernel_basis(&self.field, self.rows(), self.n)
    }

    pub fn inverse(&self) -> Result<Self> {
        let f = &self.field;
        let n = self.n;
        let mut a = self.data.clone();
        let mut inv = Self::identity(f.clone(), n).data;
        for c in 0..n {
            let p = (c..n)
                .find(|&r| !f.is_zero(&a[r * n + c]))
                .ok_or(Error::Singular)?;
            if p != c {
                for j in 0..n {
                    a.swap(p * n + j, c * n + j);
                    inv.swap(p * n + j, c * n + j);
                }
            }
            let pinv = f.inv(&a[c * n + c]).expect("nonzero pivot");
            for j in 0..n {
                a[c * n + j] = f.mul(&a[c * n + j], &pinv);
                inv[c * n + j] = f.mul(&inv[c * n + j], &pinv);
            }
            for r in 0..n {
                if r == c {
                    continue;
                }
                let factor = a[r * n + c].clone();
                if f.is_zero(&factor) {
                    continue;
                }
                for j in 0..n {
                    let t = f.mul(&factor, &a[c * n + j]);
                    a[r * n + j] = f.sub(&a[r * n + j], &t);
                    let t = f.mul(&factor, &inv[c * n + j]);
                    inv[r * n + j] = f.sub(&inv[r * n + j], &t);
                }
            }
        }
        let out = Matrix {
            field: f.clone(),
            n,
            data: inv,
        };
        debug_assert!((self * &out).is_identity());
        Ok(out)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::identity(self.field.clone(), self.n);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `self - c I`.
    pub fn sub_scalar(&self, c: &F::Elem) -> Self {
        let mut m = self.clone();
        for i in 0..self.n {
            let v = self.field.sub(m.get(i, i), c);
            m.set(i, i, v);
        }
        m
    }

    /// `self - I`.
    pub fn minus_identity(&self) -> Self {
        self.sub_scalar(&self.field.one())
    }

    /// `P self P^-1`.
    pub fn conjugate_by(&self, p: &Self) -> Result<Self> {
        let pinv = p.inverse()?;
        Ok(&(p * self) * &pinv)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|a| self.field.is_zero(a))
    }

    pub fn is_identity(&self) -> bool {
        self.scalar_value().is_some_and(|v| self.field.is_one(&v))
    }

    /// `Some(c)` when the matrix equals `c I`.
    pub fn scalar_value(&self) -> Option<F::Elem> {
        let n = self.n;
        if n == 0 {
            return None;
        }
        let c = self.data[0].clone();
        for i in 0..n {
            for j in 0..n {
                let a = &self.data[i * n + j];
                let ok = if i == j { *a == c } else { self.field.is_zero(a) };
                if !ok {
                    return None;
                }
            }
        }
        Some(c)
    }

    pub fn is_scalar(&self) -> bool {
        self.scalar_value().is_some()
    }

    pub fn is_diagonal(&self) -> bool {
        let n = self.n;
        (0..n).all(|i| (0..n).all(|j| i == j || self.field.is_zero(&self.data[i * n + j])))
    }

    pub fn diagonal(&self) -> Vector<F> {
        (0..self.n).map(|i| self.get(i, i).clone()).collect()
    }

    /// Rows of entry tokens.
    pub fn tokens(&self) -> Vec<Vec<alloc::string::String>> {
        (0..self.n)
            .map(|i| self.row(i).iter().map(|a| self.field.token(a)).collect())
            .collect()
    }
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.field)?;
        f.write_str("[")?;
        for (i, row) in self.tokens().iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            f.write_str(&row.join(" "))?;
        }
        f.write_str("]")
    }
}

impl<F: Field> fmt::Display for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.tokens() {
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

impl<F: Field> Mul for &Matrix<F> {
    type Output = Matrix<F>;

    /// Panics on field or size mismatch; see [`Matrix::try_mul`].
    fn mul(self, rhs: &Matrix<F>) -> Matrix<F> {
        self.try_mul(rhs).expect("conformable matrices")
    }
}

impl<F: Field> Add for &Matrix<F> {
    type Output = Matrix<F>;

    fn add(self, rhs: &Matrix<F>) -> Matrix<F> {
        self.try_add(rhs).expect("conformable matrices")
    }
}

impl<F: Field> Sub for &Matrix<F> {
    type Output = Matrix<F>;

    fn sub(self, rhs: &Matrix<F>) -> Matrix<F> {
        self.try_sub(rhs).expect("conformable matrices")
    }
}

/// Ordered product of `mats`; the identity of size `n` when empty.
pub fn product<'a, F: Field + 'a>(
    field: &F,
    n: usize,
    mats: impl IntoIterator<Item = &'a Matrix<F>>,
) -> Matrix<F> {
    mats.into_iter()
        .fold(Matrix::identity(field.clone(), n), |acc, m| &acc * m)
}

#[cfg(test)]
mod tests;
