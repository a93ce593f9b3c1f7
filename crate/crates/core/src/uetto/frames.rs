//! Small orthonormal-frame helpers used to canonicalize matrices with
//! repeated eigenvalues without going through an ill-conditioned Schur form.

use num_complex::Complex;

use crate::numkit::{CMatrix, CVector};
use crate::scalar::Real;

/// Row of largest norm, conjugated into a unit column vector: a unit vector
/// spanning the row space of a rank-one matrix.
pub(crate) fn row_direction<T: Real>(m: &CMatrix<T>) -> CVector<T> {
    let best = (0..m.rows())
        .max_by(|&a, &b| m.row(a).norm().partial_cmp(&m.row(b).norm()).unwrap())
        .unwrap_or(0);
    m.row(best).conj().normalized()
}

/// Column of largest norm, normalized: spans the range of a rank-one matrix.
pub(crate) fn column_direction<T: Real>(m: &CMatrix<T>) -> CVector<T> {
    let best = (0..m.cols())
        .max_by(|&a, &b| m.column(a).norm().partial_cmp(&m.column(b).norm()).unwrap())
        .unwrap_or(0);
    m.column(best).normalized()
}

/// Gram–Schmidt on `seeds` (twice, for stability), topped up with standard
/// basis vectors into an orthonormal basis of `C^n`.
pub(crate) fn orthonormal_completion<T: Real>(n: usize, seeds: &[CVector<T>]) -> Vec<CVector<T>> {
    let mut out: Vec<CVector<T>> = Vec::with_capacity(n);
    let push = |v: &CVector<T>, out: &mut Vec<CVector<T>>| {
        let mut w = v.clone();
        for _ in 0..2 {
            for q in out.iter() {
                let p = w.inner(q);
                w = &w - &q.scale(p);
            }
        }
        let norm = w.norm();
        if norm > T::lit(1e-6) * v.norm().max(T::min_positive_value()) && out.len() < n {
            out.push(w.normalized());
        }
    };
    for s in seeds {
        push(s, &mut out);
    }
    for k in 0..n {
        if out.len() == n {
            break;
        }
        push(&CVector::basis(n, k), &mut out);
    }
    out
}

/// Unitary whose rows are the conjugated frame vectors, so `U M U^*` is `M` in that frame.
pub(crate) fn frame_unitary<T: Real>(frame: &[CVector<T>]) -> CMatrix<T> {
    CMatrix::from_columns(frame).adjoint()
}

/// `||M M^* - M^* M||_F`.
pub(crate) fn normality_defect<T: Real>(m: &CMatrix<T>) -> T {
    let a = m * &m.adjoint();
    let b = &m.adjoint() * m;
    (&a - &b).frobenius_norm()
}

/// Unit-modulus phase of `z`, or `1` at the origin.
pub(crate) fn phase<T: Real>(z: Complex<T>) -> Complex<T> {
    let r = z.norm();
    if r.is_zero() {
        Complex::new(T::one(), T::zero())
    } else {
        z / r
    }
}
