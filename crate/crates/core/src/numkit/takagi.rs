//! Takagi factorization `S = V diag(s) V^t` of a complex symmetric matrix.
//!
//! The factorization is read off the real symmetric embedding
//! `K = [[Re S, Im S], [Im S, -Re S]]`: a real eigenpair `K (u, w) = s (u, w)`
//! is exactly `S conj(x) = s x` with `x = u + i w`. Working in the embedding
//! keeps repeated singular values (unitary `S`, for instance) well defined.

use num_complex::Complex;

use super::matrix::{CMatrix, CVector};
use crate::error::{Error, Result};
use crate::scalar::Real;

#[derive(Debug, Clone)]
pub struct TakagiForm<T: Real> {
    pub unitary: CMatrix<T>,
    /// Nonnegative, descending.
    pub diagonal: Vec<T>,
}

impl<T: Real> TakagiForm<T> {
    pub fn reconstruct(&self) -> CMatrix<T> {
        let d: Vec<Complex<T>> = self.diagonal.iter().map(|&s| Complex::new(s, T::zero())).collect();
        &(&self.unitary * &CMatrix::from_diag(&d)) * &self.unitary.transpose()
    }
}

pub fn takagi_factorize<T: Real>(s: &CMatrix<T>, tol: T) -> Result<TakagiForm<T>> {
    if !s.is_square() {
        return Err(Error::Dim("Takagi factorization needs a square matrix".into()));
    }
    let n = s.rows();
    let scale = s.frobenius_norm().max(T::one());
    let asym = s.asymmetry();
    if asym > tol * scale {
        return Err(Error::NotSymmetric(asym.to_f64_lossy()));
    }
    let sym = CMatrix::from_fn(n, n, |i, j| (s[(i, j)] + s[(j, i)]) * T::lit(0.5));
    let m = 2 * n;
    let mut k = vec![T::zero(); m * m];
    for i in 0..n {
        for j in 0..n {
            let z = sym[(i, j)];
            k[i * m + j] = z.re;
            k[i * m + n + j] = z.im;
            k[(n + i) * m + j] = z.im;
            k[(n + i) * m + n + j] = -z.re;
        }
    }
    let (vals, vecs) = jacobi_eigen(&mut k, m)?;
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&a, &b| vals[b].partial_cmp(&vals[a]).unwrap());

    let zero_cut = T::lit(64.0) * T::epsilon() * scale * T::lit(m as f64);
    let as_complex = |c: usize| {
        CVector::new((0..n).map(|r| Complex::new(vecs[r * m + c], vecs[(n + r) * m + c])).collect())
    };
    let mut cols: Vec<CVector<T>> = Vec::with_capacity(n);
    let mut diag: Vec<T> = Vec::with_capacity(n);
    for &c in order.iter().filter(|&&c| vals[c] > zero_cut) {
        if cols.len() == n {
            break;
        }
        cols.push(as_complex(c).normalized());
        diag.push(vals[c]);
    }
    // Null directions: each zero singular value appears twice in K; keep a
    // complex-orthonormal half by Gram-Schmidt.
    if cols.len() < n {
        for &c in order.iter().filter(|&&c| vals[c].abs() <= zero_cut) {
            let mut v = as_complex(c);
            for _ in 0..2 {
                for q in &cols {
                    let p = v.inner(q);
                    v = &v - &q.scale(p);
                }
            }
            if v.norm() > T::lit(0.5) {
                cols.push(v.normalized());
                diag.push(T::zero());
            }
            if cols.len() == n {
                break;
            }
        }
    }
    if cols.len() != n {
        return Err(Error::NonConverged("Takagi basis incomplete".into()));
    }
    Ok(TakagiForm { unitary: CMatrix::from_columns(&cols), diagonal: diag })
}

/// Cyclic Jacobi eigen-solver for a real symmetric `m x m` matrix stored row-major.
/// Returns eigenvalues and the eigenvector matrix (columns), both unsorted.
pub(crate) fn jacobi_eigen<T: Real>(a: &mut [T], m: usize) -> Result<(Vec<T>, Vec<T>)> {
    let mut v = vec![T::zero(); m * m];
    for i in 0..m {
        v[i * m + i] = T::one();
    }
    let total = a.iter().fold(T::zero(), |acc, x| acc + *x * *x).sqrt();
    if total.is_zero() {
        return Ok((vec![T::zero(); m], v));
    }
    let negligible = T::epsilon() * total / T::lit(m as f64);
    for _sweep in 0..100 {
        let off = (0..m)
            .flat_map(|i| (0..m).filter(move |&j| j != i).map(move |j| (i, j)))
            .fold(T::zero(), |acc, (i, j)| acc + a[i * m + j] * a[i * m + j])
            .sqrt();
        if off <= T::epsilon() * total {
            let vals = (0..m).map(|i| a[i * m + i]).collect();
            return Ok((vals, v));
        }
        for p in 0..m {
            for q in p + 1..m {
                let apq = a[p * m + q];
                if apq.abs() <= negligible {
                    a[p * m + q] = T::zero();
                    a[q * m + p] = T::zero();
                    continue;
                }
                let app = a[p * m + p];
                let aqq = a[q * m + q];
                let theta = (aqq - app) / (T::lit(2.0) * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + T::one()).sqrt());
                let c = T::one() / (t * t + T::one()).sqrt();
                let s = t * c;
                for k in 0..m {
                    let akp = a[k * m + p];
                    let akq = a[k * m + q];
                    a[k * m + p] = c * akp - s * akq;
                    a[k * m + q] = s * akp + c * akq;
                }
                for k in 0..m {
                    let apk = a[p * m + k];
                    let aqk = a[q * m + k];
                    a[p * m + k] = c * apk - s * aqk;
                    a[q * m + k] = s * apk + c * aqk;
                }
                a[p * m + q] = T::zero();
                a[q * m + p] = T::zero();
                for k in 0..m {
                    let vkp = v[k * m + p];
                    let vkq = v[k * m + q];
                    v[k * m + p] = c * vkp - s * vkq;
                    v[k * m + q] = s * vkp + c * vkq;
                }
            }
        }
    }
    Err(Error::NonConverged("Jacobi sweeps exhausted".into()))
}
