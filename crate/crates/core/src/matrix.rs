//! Dense matrices over a [`Domain`]. Columns are images of basis vectors.

use std::fmt;
use std::ops::{Index, IndexMut};

use rayon::prelude::*;

use crate::coeff::{Domain, Scalar};

/// Products above this many rows are computed row-parallel.
const PARALLEL_ROWS: usize = 16;

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    zero: Scalar,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(domain: &Domain, rows: usize, cols: usize) -> Self {
        let zero = domain.zero();
        Matrix { rows, cols, data: vec![zero.clone(); rows * cols], zero }
    }

    pub fn identity(domain: &Domain, n: usize) -> Self {
        let mut m = Self::zeros(domain, n, n);
        for i in 0..n {
            m[(i, i)] = domain.one();
        }
        m
    }

    pub fn scalar(domain: &Domain, n: usize, s: &Scalar) -> Self {
        let mut m = Self::zeros(domain, n, n);
        for i in 0..n {
            m[(i, i)] = s.clone();
        }
        m
    }

    pub fn from_rows(domain: &Domain, rows: Vec<Vec<Scalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, zero: domain.zero(), data: rows.into_iter().flatten().collect() }
    }

    pub fn from_columns(domain: &Domain, cols: &[Vec<Scalar>]) -> Self {
        let c = cols.len();
        let r = cols.first().map_or(0, Vec::len);
        let mut m = Self::zeros(domain, r, c);
        for (j, col) in cols.iter().enumerate() {
            m.set_column(j, col);
        }
        m
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

    pub fn zero_scalar(&self) -> &Scalar {
        &self.zero
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn set_column(&mut self, j: usize, col: &[Scalar]) {
        assert_eq!(col.len(), self.rows);
        for (i, v) in col.iter().enumerate() {
            self[(i, j)] = v.clone();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let v = &self[(i, j)];
                    if i == j { v.is_one() } else { v.is_zero() }
                })
            })
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(&self, other: &Matrix, f: impl Fn(&Scalar, &Scalar) -> Scalar + Sync) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        let data = self.data.par_iter().zip(&other.data).map(|(a, b)| f(a, b)).collect();
        Matrix { rows: self.rows, cols: self.cols, zero: self.zero.clone(), data }
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        let data = self
            .data
            .par_iter()
            .map(|a| if a.is_zero() { a.clone() } else { a * s })
            .collect();
        Matrix { rows: self.rows, cols: self.cols, zero: self.zero.clone(), data }
    }

    /// Matrix product, skipping zero entries of both factors.
    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let (n, m) = (self.rows, other.cols);
        let mut data = vec![self.zero.clone(); n * m];
        let row_product = |i: usize, out: &mut [Scalar]| {
            for (l, a) in self.row(i).iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (j, b) in other.row(l).iter().enumerate() {
                    if !b.is_zero() {
                        out[j] = &out[j] + &(a * b);
                    }
                }
            }
        };
        if n >= PARALLEL_ROWS {
            data.par_chunks_mut(m.max(1)).enumerate().for_each(|(i, out)| row_product(i, out));
        } else {
            data.chunks_mut(m.max(1)).enumerate().for_each(|(i, out)| row_product(i, out));
        }
        Matrix { rows: n, cols: m, zero: self.zero.clone(), data }
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len(), "shape mismatch in matrix-vector product");
        (0..self.rows)
            .map(|i| {
                let mut acc = self.zero.clone();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn pow(&self, n: u32) -> Matrix {
        assert!(self.is_square());
        let domain_one = self.zero.one_like();
        let mut acc = Matrix::zeros_like(self);
        for i in 0..self.rows {
            acc[(i, i)] = domain_one.clone();
        }
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    fn zeros_like(m: &Matrix) -> Matrix {
        Matrix { rows: m.rows, cols: m.cols, zero: m.zero.clone(), data: vec![m.zero.clone(); m.data.len()] }
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        let data = rows
            .iter()
            .flat_map(|&i| cols.iter().map(move |&j| self[(i, j)].clone()))
            .collect();
        Matrix { rows: rows.len(), cols: cols.len(), zero: self.zero.clone(), data }
    }

    /// Exact inverse by Gauss-Jordan elimination; `None` if singular.
    pub fn inverse(&self) -> Option<Matrix> {
        assert!(self.is_square());
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Matrix::zeros_like(self);
        let one = self.zero.one_like();
        for i in 0..n {
            inv[(i, i)] = one.clone();
        }
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[(r, col)].is_zero())?;
            if pivot != col {
                a.swap_rows(pivot, col);
                inv.swap_rows(pivot, col);
            }
            let p_inv = a[(col, col)].inv().ok()?;
            a.scale_row(col, &p_inv);
            inv.scale_row(col, &p_inv);
            for r in 0..n {
                if r != col && !a[(r, col)].is_zero() {
                    let f = a[(r, col)].clone();
                    a.row_axpy(r, col, &f);
                    inv.row_axpy(r, col, &f);
                }
            }
        }
        Some(inv)
    }

    /// Solves `self * x = b` for square, invertible `self`.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        Some(self.inverse()?.mul_vec(b))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn scale_row(&mut self, r: usize, s: &Scalar) {
        for j in 0..self.cols {
            let v = &self[(r, j)] * s;
            self[(r, j)] = v;
        }
    }

    /// row[r] -= f * row[src]
    fn row_axpy(&mut self, r: usize, src: usize, f: &Scalar) {
        for j in 0..self.cols {
            if !self[(src, j)].is_zero() {
                let v = &self[(r, j)] - &(f * &self[(src, j)]);
                self[(r, j)] = v;
            }
        }
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        let (r, c) = (self.rows * other.rows, self.cols * other.cols);
        let mut data = Vec::with_capacity(r * c);
        for i1 in 0..self.rows {
            for i2 in 0..other.rows {
                for j1 in 0..self.cols {
                    for j2 in 0..other.cols {
                        let a = &self[(i1, j1)];
                        let b = &other[(i2, j2)];
                        data.push(if a.is_zero() || b.is_zero() { self.zero.clone() } else { a * b });
                    }
                }
            }
        }
        Matrix { rows: r, cols: c, zero: self.zero.clone(), data }
    }

    /// Rows of canonical scalar strings.
    pub fn to_strings(&self, domain: &Domain) -> Vec<Vec<String>> {
        (0..self.rows).map(|i| self.row(i).iter().map(|s| domain.format(s)).collect()).collect()
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        Ok(())
    }
}

/// Unit vector `e_i` of length `n`.
pub fn unit_vector(domain: &Domain, n: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![domain.zero(); n];
    v[i] = domain.one();
    v
}

pub fn vec_add(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_sub(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_scale(a: &[Scalar], s: &Scalar) -> Vec<Scalar> {
    a.iter().map(|x| if x.is_zero() { x.clone() } else { x * s }).collect()
}

pub fn vec_is_zero(a: &[Scalar]) -> bool {
    a.iter().all(Scalar::is_zero)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Domain {
        Domain::rationals()
    }

    fn m(rows: &[&[i64]]) -> Matrix {
        let d = q();
        Matrix::from_rows(&d, rows.iter().map(|r| r.iter().map(|&x| d.int(x)).collect()).collect())
    }

    #[test]
    fn product_and_identity() {
        let a = m(&[&[1, 2], &[3, 4]]);
        let b = m(&[&[0, 1], &[1, 0]]);
        assert_eq!(a.mul(&b), m(&[&[2, 1], &[4, 3]]));
        assert_eq!(a.mul(&Matrix::identity(&q(), 2)), a);
        assert!(b.mul(&b).is_identity());
    }

    #[test]
    fn inverse_roundtrip() {
        let a = m(&[&[2, 1, 0], &[0, 0, 1], &[1, 0, 3]]);
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).is_identity());
        assert!(inv.mul(&a).is_identity());
        assert!(m(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn kron_shape_and_values() {
        let a = m(&[&[1, 2], &[3, 4]]);
        let k = a.kron(&Matrix::identity(&q(), 2));
        assert_eq!(k.rows(), 4);
        assert_eq!(k[(2, 0)], q().int(3));
        assert_eq!(k[(3, 1)], q().int(3));
        assert!(k[(3, 0)].is_zero());
    }
}
