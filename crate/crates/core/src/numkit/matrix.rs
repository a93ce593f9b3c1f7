//! Dense complex vectors and matrices.

use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{is_finite, real, Real};

/// Column vector over the complex numbers.
#[derive(Debug, Clone, PartialEq)]
pub struct CVector<T: Real> {
    entries: Vec<Complex<T>>,
}

impl<T: Real> CVector<T> {
    pub fn new(entries: Vec<Complex<T>>) -> Self {
        Self { entries }
    }

    pub fn zeros(n: usize) -> Self {
        Self { entries: vec![Complex::zero(); n] }
    }

    /// Standard basis vector `e_k`.
    pub fn basis(n: usize, k: usize) -> Self {
        let mut v = Self::zeros(n);
        v.entries[k] = Complex::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn as_slice(&self) -> &[Complex<T>] {
        &self.entries
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Complex<T>> {
        self.entries.iter()
    }

    pub fn into_inner(self) -> Vec<Complex<T>> {
        self.entries
    }

    /// `<self, other> = sum self_k * conj(other_k)`; linear in the first slot.
    pub fn inner(&self, other: &Self) -> Complex<T> {
        debug_assert_eq!(self.dim(), other.dim());
        self.entries
            .iter()
            .zip(&other.entries)
            .fold(Complex::zero(), |acc, (a, b)| acc + a * b.conj())
    }

    pub fn norm(&self) -> T {
        self.entries.iter().fold(T::zero(), |acc, z| acc + z.norm_sqr()).sqrt()
    }

    pub fn normalized(&self) -> Self {
        let n = self.norm();
        if n == T::zero() {
            return self.clone();
        }
        self.scale(real(T::one() / n))
    }

    pub fn scale(&self, s: Complex<T>) -> Self {
        Self { entries: self.entries.iter().map(|z| z * s).collect() }
    }

    pub fn conj(&self) -> Self {
        Self { entries: self.entries.iter().map(|z| z.conj()).collect() }
    }

    pub fn is_finite(&self) -> bool {
        self.entries.iter().all(|z| is_finite(*z))
    }

    /// Largest-modulus entry made positive real (first such entry on ties).
    pub fn gauge_fixed(&self) -> Self {
        let max = self.entries.iter().fold(T::zero(), |m, z| m.max(z.norm()));
        if max == T::zero() {
            return self.clone();
        }
        let cutoff = max * (T::one() - T::lit(64.0) * T::epsilon());
        let pivot = self
            .entries
            .iter()
            .find(|z| z.norm() >= cutoff)
            .copied()
            .unwrap_or_else(Complex::one);
        let phase = pivot.conj() / pivot.norm();
        self.scale(phase)
    }
}

impl<T: Real> Index<usize> for CVector<T> {
    type Output = Complex<T>;
    fn index(&self, i: usize) -> &Complex<T> {
        &self.entries[i]
    }
}

impl<T: Real> IndexMut<usize> for CVector<T> {
    fn index_mut(&mut self, i: usize) -> &mut Complex<T> {
        &mut self.entries[i]
    }
}

impl<T: Real> Add for &CVector<T> {
    type Output = CVector<T>;
    fn add(self, rhs: Self) -> CVector<T> {
        CVector::new(self.entries.iter().zip(&rhs.entries).map(|(a, b)| a + b).collect())
    }
}

impl<T: Real> Sub for &CVector<T> {
    type Output = CVector<T>;
    fn sub(self, rhs: Self) -> CVector<T> {
        CVector::new(self.entries.iter().zip(&rhs.entries).map(|(a, b)| a - b).collect())
    }
}

/// Dense row-major complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix<T: Real> {
    rows: usize,
    cols: usize,
    data: Vec<Complex<T>>,
}

impl<T: Real> CMatrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<Complex<T>>) -> Result<Self> {
        if rows == 0 || cols == 0 || rows * cols != data.len() {
            return Err(Error::Dim(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        if !data.iter().all(|z| is_finite(*z)) {
            return Err(Error::NonFinite("matrix entry".into()));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_rows(rows: &[Vec<Complex<T>>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dim("ragged rows".into()));
        }
        Self::new(r, c, rows.concat())
    }

    /// Convenience constructor from real-valued rows.
    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        let rows: Vec<Vec<Complex<T>>> = rows
            .iter()
            .map(|row| row.iter().map(|&x| real(T::lit(x))).collect())
            .collect();
        Self::from_rows(&rows)
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex<T>) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![Complex::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { Complex::one() } else { Complex::zero() })
    }

    pub fn from_diag(d: &[Complex<T>]) -> Self {
        let n = d.len();
        Self::from_fn(n, n, |i, j| if i == j { d[i] } else { Complex::zero() })
    }

    pub fn from_columns(cols: &[CVector<T>]) -> Self {
        let n = cols.first().map_or(0, CVector::dim);
        Self::from_fn(n, cols.len(), |i, j| cols[j][i])
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

    pub fn dim(&self) -> usize {
        self.rows
    }

    pub fn as_slice(&self) -> &[Complex<T>] {
        &self.data
    }

    pub fn column(&self, j: usize) -> CVector<T> {
        CVector::new((0..self.rows).map(|i| self[(i, j)]).collect())
    }

    pub fn columns(&self) -> Vec<CVector<T>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn row(&self, i: usize) -> CVector<T> {
        CVector::new(self.data[i * self.cols..(i + 1) * self.cols].to_vec())
    }

    pub fn set_column(&mut self, j: usize, v: &CVector<T>) {
        for i in 0..self.rows {
            self[(i, j)] = v[i];
        }
    }

    pub fn diag(&self) -> Vec<Complex<T>> {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).collect()
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn conj(&self) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|z| z.conj()).collect() }
    }

    pub fn scale(&self, s: Complex<T>) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|z| z * s).collect() }
    }

    pub fn map(&self, f: impl Fn(Complex<T>) -> Complex<T>) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&z| f(z)).collect() }
    }

    pub fn frobenius_norm(&self) -> T {
        self.data.iter().fold(T::zero(), |acc, z| acc + z.norm_sqr()).sqrt()
    }

    pub fn max_abs(&self) -> T {
        self.data.iter().fold(T::zero(), |acc, z| acc.max(z.norm()))
    }

    pub fn trace(&self) -> Complex<T> {
        self.diag().into_iter().fold(Complex::zero(), |a, b| a + b)
    }

    pub fn mul_vec(&self, v: &CVector<T>) -> CVector<T> {
        assert_eq!(self.cols, v.dim(), "matrix-vector shape mismatch");
        CVector::new(
            (0..self.rows)
                .map(|i| {
                    (0..self.cols).fold(Complex::zero(), |acc, j| acc + self[(i, j)] * v[j])
                })
                .collect(),
        )
    }

    /// `A + s I`.
    pub fn shifted(&self, s: Complex<T>) -> Self {
        let mut out = self.clone();
        for i in 0..self.rows.min(self.cols) {
            out[(i, i)] += s;
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::identity(self.rows);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Frobenius norm of `A - A^t`.
    pub fn asymmetry(&self) -> T {
        (self - &self.transpose()).frobenius_norm()
    }

    /// Frobenius norm of `A^* A - I`.
    pub fn unitarity_defect(&self) -> T {
        (&(&self.adjoint() * self) - &Self::identity(self.cols)).frobenius_norm()
    }

    pub fn is_lower_triangular(&self, tol: T) -> bool {
        (0..self.rows).all(|i| (i + 1..self.cols).all(|j| self[(i, j)].norm() <= tol))
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| is_finite(*z))
    }

    /// Direct sum `self ⊕ other`.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let (r, c) = (self.rows + other.rows, self.cols + other.cols);
        Self::from_fn(r, c, |i, j| {
            if i < self.rows && j < self.cols {
                self[(i, j)]
            } else if i >= self.rows && j >= self.cols {
                other[(i - self.rows, j - self.cols)]
            } else {
                Complex::zero()
            }
        })
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Self {
        let (r0, c0) = (rows.start, cols.start);
        Self::from_fn(rows.len(), cols.len(), |i, j| self[(r0 + i, c0 + j)])
    }

    pub fn lu(&self) -> Result<Lu<T>> {
        Lu::factor(self)
    }

    pub fn det(&self) -> Result<Complex<T>> {
        Ok(self.lu()?.det())
    }

    pub fn inverse(&self) -> Result<Self> {
        let lu = self.lu()?;
        let n = self.rows;
        let mut out = Self::zeros(n, n);
        for j in 0..n {
            let col = lu.solve(&CVector::basis(n, j))?;
            out.set_column(j, &col);
        }
        Ok(out)
    }
}

impl<T: Real> Index<(usize, usize)> for CMatrix<T> {
    type Output = Complex<T>;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Complex<T> {
        &self.data[i * self.cols + j]
    }
}

impl<T: Real> IndexMut<(usize, usize)> for CMatrix<T> {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex<T> {
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Real> Mul for &CMatrix<T> {
    type Output = CMatrix<T>;
    fn mul(self, rhs: Self) -> CMatrix<T> {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        let mut out = CMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] += a * rhs[(k, j)];
                }
            }
        }
        out
    }
}

impl<T: Real> Add for &CMatrix<T> {
    type Output = CMatrix<T>;
    fn add(self, rhs: Self) -> CMatrix<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<T: Real> Sub for &CMatrix<T> {
    type Output = CMatrix<T>;
    fn sub(self, rhs: Self) -> CMatrix<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl<T: Real> Neg for &CMatrix<T> {
    type Output = CMatrix<T>;
    fn neg(self) -> CMatrix<T> {
        self.map(|z| -z)
    }
}

/// LU factorization with partial pivoting, `P A = L U`.
#[derive(Debug, Clone)]
pub struct Lu<T: Real> {
    lu: CMatrix<T>,
    perm: Vec<usize>,
    sign: T,
}

impl<T: Real> Lu<T> {
    fn factor(a: &CMatrix<T>) -> Result<Self> {
        if !a.is_square() {
            return Err(Error::Dim("LU needs a square matrix".into()));
        }
        let n = a.rows;
        let mut lu = a.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut sign = T::one();
        for k in 0..n {
            let p = (k..n)
                .max_by(|&x, &y| lu[(x, k)].norm().partial_cmp(&lu[(y, k)].norm()).unwrap())
                .unwrap();
            if p != k {
                for j in 0..n {
                    let t = lu[(k, j)];
                    lu[(k, j)] = lu[(p, j)];
                    lu[(p, j)] = t;
                }
                perm.swap(k, p);
                sign = -sign;
            }
            let pivot = lu[(k, k)];
            if pivot.is_zero() {
                continue;
            }
            for i in k + 1..n {
                let f = lu[(i, k)] / pivot;
                lu[(i, k)] = f;
                for j in k + 1..n {
                    let t = lu[(k, j)];
                    lu[(i, j)] -= f * t;
                }
            }
        }
        Ok(Self { lu, perm, sign })
    }

    pub fn det(&self) -> Complex<T> {
        self.lu.diag().into_iter().fold(real(self.sign), |a, b| a * b)
    }

    pub fn solve(&self, b: &CVector<T>) -> Result<CVector<T>> {
        let n = self.lu.rows;
        let mut x: Vec<Complex<T>> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            for j in 0..i {
                let t = self.lu[(i, j)] * x[j];
                x[i] -= t;
            }
        }
        for i in (0..n).rev() {
            for j in i + 1..n {
                let t = self.lu[(i, j)] * x[j];
                x[i] -= t;
            }
            let d = self.lu[(i, i)];
            if d.is_zero() {
                return Err(Error::HypothesisViolation("singular matrix".into()));
            }
            x[i] /= d;
        }
        Ok(CVector::new(x))
    }

    /// Solve, replacing exactly-zero or tiny pivots by `floor`; used by inverse iteration.
    pub(crate) fn solve_regularized(&self, b: &CVector<T>, floor: T) -> CVector<T> {
        let n = self.lu.rows;
        let mut x: Vec<Complex<T>> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            for j in 0..i {
                let t = self.lu[(i, j)] * x[j];
                x[i] -= t;
            }
        }
        for i in (0..n).rev() {
            for j in i + 1..n {
                let t = self.lu[(i, j)] * x[j];
                x[i] -= t;
            }
            let mut d = self.lu[(i, i)];
            if d.norm() < floor {
                d = real(floor);
            }
            x[i] /= d;
        }
        CVector::new(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::cplx;

    #[test]
    fn inner_product_is_linear_in_first_slot() {
        let x = CVector::<f64>::new(vec![cplx(1.0, 1.0), cplx(0.0, 2.0)]);
        let y = CVector::<f64>::new(vec![cplx(2.0, 0.0), cplx(1.0, -1.0)]);
        let s = cplx(0.0, 1.0);
        let lhs = x.scale(s).inner(&y);
        assert!((lhs - s * x.inner(&y)).norm() < 1e-15);
        let rhs = x.inner(&y.scale(s));
        assert!((rhs - s.conj() * x.inner(&y)).norm() < 1e-15);
    }

    #[test]
    fn inverse_and_det() {
        let a = CMatrix::<f64>::from_real_rows(&[&[1.0, 2.0], &[0.0, 3.0]]).unwrap();
        assert!((a.det().unwrap() - cplx(3.0, 0.0)).norm() < 1e-14);
        let inv = a.inverse().unwrap();
        assert!((&(&a * &inv) - &CMatrix::identity(2)).frobenius_norm() < 1e-14);
    }

    #[test]
    fn rejects_bad_shapes() {
        assert!(CMatrix::<f64>::new(2, 2, vec![Complex::zero(); 3]).is_err());
        assert!(CMatrix::<f64>::new(1, 1, vec![Complex::new(f64::NAN, 0.0)]).is_err());
    }

    #[test]
    fn gauge_fixes_largest_entry() {
        let v = CVector::<f64>::new(vec![cplx(0.1, 0.0), cplx(0.0, -2.0)]).gauge_fixed();
        assert!(v[1].im.abs() < 1e-15 && v[1].re > 0.0);
    }
}
