//! Unitary triangularization with a prescribed diagonal order.

use num_complex::Complex;

use super::eigen::{complex_schur, Givens};
use super::matrix::CMatrix;
use crate::error::{Error, Result};
use crate::scalar::{lex_cmp, Real};

/// `M = U T U^*` with `T` lower triangular.
#[derive(Debug, Clone)]
pub struct SchurForm<T: Real> {
    pub unitary: CMatrix<T>,
    pub triangular: CMatrix<T>,
}

impl<T: Real> SchurForm<T> {
    pub fn diagonal(&self) -> Vec<Complex<T>> {
        self.triangular.diag()
    }

    /// `||U T U^* - M||_F`.
    pub fn reconstruction_error(&self, m: &CMatrix<T>) -> T {
        let back = &(&self.unitary * &self.triangular) * &self.unitary.adjoint();
        (&back - m).frobenius_norm()
    }
}

/// Lower-triangular Schur form with the eigenvalues on the diagonal in
/// ascending (re, im) order.
pub fn schur_triangularize<T: Real>(m: &CMatrix<T>) -> Result<SchurForm<T>> {
    let (q, r) = complex_schur(m)?;
    let mut target = r.diag();
    target.sort_by(lex_cmp);
    Ok(reorder_to_lower(q, r, &target))
}

/// Lower-triangular Schur form whose diagonal follows `order` as closely as
/// the spectrum allows: position `p` receives the remaining eigenvalue nearest
/// to `order[p]`.
pub fn schur_triangularize_ordered<T: Real>(m: &CMatrix<T>, order: &[Complex<T>]) -> Result<SchurForm<T>> {
    if order.len() != m.rows() {
        return Err(Error::Dim("diagonal order has the wrong length".into()));
    }
    let (q, r) = complex_schur(m)?;
    Ok(reorder_to_lower(q, r, order))
}

fn reorder_to_lower<T: Real>(mut q: CMatrix<T>, mut r: CMatrix<T>, lower_order: &[Complex<T>]) -> SchurForm<T> {
    let n = r.rows();
    // The flip P R P of an upper form is lower triangular with reversed diagonal.
    let upper_order: Vec<Complex<T>> = lower_order.iter().rev().copied().collect();
    for (p, want) in upper_order.iter().enumerate() {
        let j = (p..n)
            .min_by(|&a, &b| (r[(a, a)] - want).norm().partial_cmp(&(r[(b, b)] - want).norm()).unwrap())
            .unwrap_or(p);
        for k in (p..j).rev() {
            swap_adjacent(&mut q, &mut r, k);
        }
    }
    let flip = |i: usize| n - 1 - i;
    let unitary = CMatrix::from_fn(n, n, |i, j| q[(i, flip(j))]);
    let triangular = CMatrix::from_fn(n, n, |i, j| if j <= i { r[(flip(i), flip(j))] } else { Complex::new(T::zero(), T::zero()) });
    SchurForm { unitary, triangular }
}

/// Exchanges the diagonal entries `k` and `k + 1` of the upper-triangular `r`.
fn swap_adjacent<T: Real>(q: &mut CMatrix<T>, r: &mut CMatrix<T>, k: usize) {
    let n = r.rows();
    let (a, b, c) = (r[(k, k)], r[(k, k + 1)], r[(k + 1, k + 1)]);
    if a == c {
        return;
    }
    let g = Givens::zeroing(b, c - a);
    g.apply_rows(r, k, k + 1, k..n);
    g.apply_cols(r, k, k + 1, 0..k + 2);
    g.apply_cols(q, k, k + 1, 0..n);
    r[(k + 1, k)] = Complex::new(T::zero(), T::zero());
}
