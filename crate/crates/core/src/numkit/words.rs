//! Trace-word invariants that separate 3x3 unitary equivalence classes.

use num_complex::Complex;

use super::matrix::CMatrix;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Total degree in `(X, X^*)` of each word, in the order returned by [`phi_invariants`].
pub const WORD_DEGREES: [i32; 7] = [1, 2, 3, 2, 3, 4, 6];

/// `(tr X, tr X^2, tr X^3, tr X*X, tr X*X^2, tr X*^2 X^2, tr X* X^2 X*^2 X)`.
pub fn phi_invariants<T: Real>(x: &CMatrix<T>) -> Result<[Complex<T>; 7]> {
    if x.rows() != 3 || x.cols() != 3 {
        return Err(Error::Dim(format!("trace words need a 3x3 matrix, got {}x{}", x.rows(), x.cols())));
    }
    let xs = x.adjoint();
    let x2 = x * x;
    let x3 = &x2 * x;
    let xs2 = &xs * &xs;
    let xsx = &xs * x;
    let xsx2 = &xs * &x2;
    let xs2x2 = &xs2 * &x2;
    let long = &(&xsx2 * &xs2) * x;
    Ok([x.trace(), x2.trace(), x3.trace(), xsx.trace(), xsx2.trace(), xs2x2.trace(), long.trace()])
}

/// Largest per-word discrepancy, each scaled by `max(1, ||A||_F^deg)`.
pub fn phi_distance<T: Real>(a: &CMatrix<T>, b: &CMatrix<T>) -> Result<T> {
    let pa = phi_invariants(a)?;
    let pb = phi_invariants(b)?;
    let norm = a.frobenius_norm().max(b.frobenius_norm());
    Ok(pa
        .iter()
        .zip(&pb)
        .zip(WORD_DEGREES)
        .map(|((x, y), d)| (x - y).norm() / norm.powi(d).max(T::one()))
        .fold(T::zero(), T::max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::{haar_unitary, random_matrix, rng_from_seed};

    #[test]
    fn zero_and_identity() {
        let z = phi_invariants(&CMatrix::<f64>::zeros(3, 3)).unwrap();
        assert!(z.iter().all(|w| w.norm() == 0.0));
        let i = phi_invariants(&CMatrix::<f64>::identity(3)).unwrap();
        assert!(i.iter().all(|w| (w.re - 3.0).abs() < 1e-15 && w.im == 0.0));
    }

    #[test]
    fn wrong_dimension() {
        assert!(matches!(phi_invariants(&CMatrix::<f64>::identity(2)), Err(Error::Dim(_))));
    }

    #[test]
    fn unitary_conjugation_invariance() {
        let mut rng = rng_from_seed(23);
        for _ in 0..1000 {
            let m = random_matrix::<f64>(&mut rng, 3);
            let u = haar_unitary::<f64>(&mut rng, 3);
            let conj = &(&u * &m) * &u.adjoint();
            let d = phi_distance(&m, &conj).unwrap();
            assert!(d < 1e-9, "distance {d}");
        }
    }
}
