use num_complex::Complex;
use num_traits::Zero;

use super::matrix::{CMatrix, CVector};
use crate::error::{Error, Result};
use crate::scalar::{real, Real};

/// Lower-triangular `L` with `L L^* = G` for Hermitian positive definite `G`.
///
/// A pivot at or below `tol` (relative to the largest diagonal entry) is
/// reported as [`Error::NotPositiveDefinite`].
pub fn cholesky_hermitian<T: Real>(g: &CMatrix<T>, tol: T) -> Result<CMatrix<T>> {
    if !g.is_square() {
        return Err(Error::Dim("Cholesky needs a square matrix".into()));
    }
    let n = g.rows();
    let scale = g.diag().iter().fold(T::zero(), |m, z| m.max(z.re.abs())).max(T::one());
    let herm = (g - &g.adjoint()).frobenius_norm();
    if herm > tol * scale * T::lit(n as f64) {
        return Err(Error::HypothesisViolation(format!(
            "Gram matrix not Hermitian (defect {:.3e})",
            herm.to_f64_lossy()
        )));
    }
    let mut l = CMatrix::zeros(n, n);
    for j in 0..n {
        let mut d = g[(j, j)].re;
        for k in 0..j {
            d -= l[(j, k)].norm_sqr();
        }
        if d <= tol * scale {
            return Err(Error::NotPositiveDefinite { index: j, pivot: d.to_f64_lossy() });
        }
        let dj = d.sqrt();
        l[(j, j)] = real(dj);
        for i in j + 1..n {
            let mut s = g[(i, j)];
            for k in 0..j {
                s -= l[(i, k)] * l[(j, k)].conj();
            }
            l[(i, j)] = s / dj;
        }
    }
    Ok(l)
}

/// Solves `L y = b` for lower-triangular `L`.
pub fn forward_substitute<T: Real>(l: &CMatrix<T>, b: &CVector<T>) -> CVector<T> {
    let n = l.rows();
    let mut y: Vec<Complex<T>> = vec![Complex::zero(); n];
    for i in 0..n {
        let mut s = b[i];
        for k in 0..i {
            s -= l[(i, k)] * y[k];
        }
        y[i] = s / l[(i, i)];
    }
    CVector::new(y)
}

/// Inverse of a nonsingular lower-triangular matrix.
pub fn lower_inverse<T: Real>(l: &CMatrix<T>) -> CMatrix<T> {
    let n = l.rows();
    let mut out = CMatrix::zeros(n, n);
    for j in 0..n {
        out.set_column(j, &forward_substitute(l, &CVector::basis(n, j)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::cplx;

    #[test]
    fn identity_is_fixed() {
        let l = cholesky_hermitian(&CMatrix::<f64>::identity(4), 1e-12).unwrap();
        assert_eq!(l, CMatrix::identity(4));
    }

    #[test]
    fn two_by_two_closed_form() {
        let g = CMatrix::<f64>::from_real_rows(&[&[1.0, 0.5], &[0.5, 1.0]]).unwrap();
        let l = cholesky_hermitian(&g, 1e-12).unwrap();
        assert!((l[(0, 0)] - cplx(1.0, 0.0)).norm() < 1e-15);
        assert!((l[(1, 0)] - cplx(0.5, 0.0)).norm() < 1e-15);
        assert!((l[(1, 1)] - cplx(3f64.sqrt() / 2.0, 0.0)).norm() < 1e-15);
        assert!(l[(0, 1)].norm() == 0.0);
    }

    #[test]
    fn rejects_indefinite() {
        let g = CMatrix::<f64>::from_real_rows(&[&[1.0, 2.0], &[2.0, 1.0]]).unwrap();
        assert!(matches!(cholesky_hermitian(&g, 1e-12), Err(Error::NotPositiveDefinite { index: 1, .. })));
    }

    #[test]
    fn family_gram_multiplies_back() {
        let n = 4;
        let g = CMatrix::<f64>::from_fn(n, n, |i, j| if i == j { cplx(1.0, 0.0) } else { cplx(0.5, 0.0) });
        let l = cholesky_hermitian(&g, 1e-12).unwrap();
        assert!((&(&l * &l.adjoint()) - &g).frobenius_norm() < 1e-12);
        let li = lower_inverse(&l);
        assert!((&(&li * &l) - &CMatrix::identity(n)).frobenius_norm() < 1e-12);
    }
}
