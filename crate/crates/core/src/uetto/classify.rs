use num_complex::Complex;

use super::certificate::{verify, Certificate};
use super::decide::{cluster_tol, decide_from_eigendata, eig_tol, CERT_SLACK};
use super::frames::{frame_unitary, orthonormal_completion, row_direction};
use super::Decision;
use crate::diskgeom::DiskPoint;
use crate::error::{Error, Result};
use crate::numkit::{eig_dense, min_pairwise_gap, CMatrix, EigenSystem};
use crate::scalar::{real, Real};
use crate::tto::{AnalyticSymbol, BasisTag};

/// A scalar identity test: `lhs` against `rhs` with the residual used for the verdict.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TestOutcome<T: Real> {
    pub passed: bool,
    pub lhs: Complex<T>,
    pub rhs: Complex<T>,
    /// `|lhs - rhs|` divided by the scale the tolerance applies to.
    pub residual: T,
}

/// One index of the complex-symmetric necessary condition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CsmEntry<T: Real> {
    /// `|<x_i, conj(x_i)>|²`.
    pub lhs: T,
    /// `prod_{j != i} (1 - |<x_j, x_i>|²)`.
    pub rhs: T,
    pub passed: bool,
}

/// 2x2 classification: YES exactly for scalar or non-normal matrices.
pub fn classify_2x2<T: Real>(m: &CMatrix<T>, tol: T) -> Result<Decision<T>> {
    if m.rows() != 2 || m.cols() != 2 {
        return Err(Error::Dim(format!("classify_2x2 needs a 2x2 matrix, got {}x{}", m.rows(), m.cols())));
    }
    let eig = eig_dense(m, eig_tol())?;
    if min_pairwise_gap(&eig.values) <= cluster_tol(eig.matrix_norm) {
        return repeated_2x2(m, tol);
    }
    decide_from_eigendata(m, &eig.values, &eig.vectors, tol)
}

/// 2x2 with a repeated eigenvalue `μ`: either `μI`, or `M - μI` is a rank-one
/// nilpotent and `M` is the lower triangular Toeplitz matrix `A_{μ + σz}` on `K_{z²}`.
pub(crate) fn repeated_2x2<T: Real>(m: &CMatrix<T>, tol: T) -> Result<Decision<T>> {
    let mu = m.trace() * T::lit(0.5);
    let n = m.shifted(-mu);
    let scale = m.frobenius_norm().max(T::one());
    let zeros = vec![DiskPoint::origin(); 2];
    if n.frobenius_norm() <= tol * scale {
        let cert = Certificate {
            zeros,
            symbol: AnalyticSymbol::constant(mu),
            unitary: CMatrix::identity(2),
            phases: Vec::new(),
            basis: BasisTag::TakenakaMalmquist,
        };
        return Ok(Decision::yes(cert, "scalar matrix"));
    }
    let v = row_direction(&n);
    let nv = n.mul_vec(&v);
    let sigma = nv.norm();
    let frame = orthonormal_completion(2, &[v, nv.normalized()]);
    let cert = Certificate {
        zeros,
        symbol: AnalyticSymbol::new(vec![mu, real(sigma)]),
        unitary: frame_unitary(&frame),
        phases: Vec::new(),
        basis: BasisTag::TakenakaMalmquist,
    };
    let report = verify(m, &cert, tol * T::lit(CERT_SLACK))?;
    if report.passed {
        Ok(Decision::yes(cert, "non-normal with a repeated eigenvalue: lower triangular Toeplitz on K_{z^2}"))
    } else {
        Ok(Decision::inconclusive(format!("repeated-eigenvalue certificate failed: {}", report.failures.join("; "))))
    }
}

/// Eigendata with distinct eigenvalues and no orthogonal pair of eigenvectors.
fn hypotheses<T: Real>(m: &CMatrix<T>, tol: T) -> Result<EigenSystem<T>> {
    let eig = eig_dense(m, eig_tol())?;
    if min_pairwise_gap(&eig.values) <= cluster_tol(eig.matrix_norm) {
        return Err(Error::HypothesisViolation("repeated eigenvalues".into()));
    }
    let x = &eig.vectors;
    for i in 0..x.len() {
        for j in i + 1..x.len() {
            if x[i].inner(&x[j]).norm() <= tol {
                return Err(Error::HypothesisViolation(format!("eigenvectors {i} and {j} are orthogonal")));
            }
        }
    }
    Ok(eig)
}

/// `det X^*X` against `prod_{i<j} (1 - |<x_i, x_j>|²)` for unit eigenvectors `x_i`.
pub fn det_test_3x3<T: Real>(m: &CMatrix<T>, tol: T) -> Result<TestOutcome<T>> {
    if m.rows() != 3 || m.cols() != 3 {
        return Err(Error::Dim(format!("det_test_3x3 needs a 3x3 matrix, got {}x{}", m.rows(), m.cols())));
    }
    let eig = hypotheses(m, tol)?;
    let x = eig.vector_matrix();
    let lhs = (&x.adjoint() * &x).det()?;
    let v = &eig.vectors;
    let rhs = [(0, 1), (1, 2), (2, 0)]
        .iter()
        .fold(T::one(), |acc, &(i, j)| acc * (T::one() - v[i].inner(&v[j]).norm_sqr()));
    let rhs = real(rhs);
    let residual = (lhs - rhs).norm();
    Ok(TestOutcome { passed: residual <= tol, lhs, rhs, residual })
}

/// `tr M^*M²M^{*2}M` against `tr M M^{*2}M²M^*`, compared at `tol ||M||_F^6`.
pub fn trace_test_3x3<T: Real>(m: &CMatrix<T>, tol: T) -> Result<TestOutcome<T>> {
    if m.rows() != 3 || m.cols() != 3 {
        return Err(Error::Dim(format!("trace_test_3x3 needs a 3x3 matrix, got {}x{}", m.rows(), m.cols())));
    }
    let ms = m.adjoint();
    let m2 = m * m;
    let ms2 = &ms * &ms;
    let lhs = (&(&(&ms * &m2) * &ms2) * m).trace();
    let rhs = (&(&(m * &ms2) * &m2) * &ms).trace();
    let norm6 = m.frobenius_norm().powi(6);
    let diff = (lhs - rhs).norm();
    let residual = if norm6 > T::zero() { diff / norm6 } else { diff };
    Ok(TestOutcome { passed: residual <= tol, lhs, rhs, residual })
}

/// Per-index report of `|<x_i, conj(x_i)>|² = prod_{j != i} (1 - |<x_j, x_i>|²)`
/// for a complex symmetric `M`.
pub fn necessary_csm<T: Real>(m: &CMatrix<T>, tol: T) -> Result<Vec<CsmEntry<T>>> {
    if !m.is_square() {
        return Err(Error::Dim(format!("{}x{} matrix is not square", m.rows(), m.cols())));
    }
    let asym = m.asymmetry();
    if asym > tol * m.frobenius_norm().max(T::one()) {
        return Err(Error::NotSymmetric(asym.to_f64_lossy()));
    }
    let eig = hypotheses(m, tol)?;
    let x = &eig.vectors;
    Ok((0..x.len())
        .map(|i| {
            let lhs = x[i].inner(&x[i].conj()).norm_sqr();
            let rhs = (0..x.len())
                .filter(|&j| j != i)
                .fold(T::one(), |acc, j| acc * (T::one() - x[j].inner(&x[i]).norm_sqr()));
            CsmEntry { lhs, rhs, passed: (lhs - rhs).abs() <= tol }
        })
        .collect())
}
