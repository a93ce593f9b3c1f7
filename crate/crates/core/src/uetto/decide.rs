use num_complex::Complex;
use num_traits::{One, Zero};

use super::certificate::{verify, Certificate};
use super::{classify, decompose, Decision, Violation};
use crate::diskgeom::{BlaschkeProduct, DiskPoint, BOUNDARY_GUARD};
use crate::error::{Error, Result};
use crate::modelspace::ModelSpace;
use crate::numkit::{cholesky_hermitian, eig_dense, lower_inverse, min_pairwise_gap, CMatrix, CVector};
use crate::scalar::Real;
use crate::tto::{conjugate_kernel_frame, lagrange_symbol, AnalyticSymbol, BasisTag};

/// A certificate must reproduce `M` to `CERT_SLACK * tol` before it is reported.
pub(crate) const CERT_SLACK: f64 = 1e3;

/// Eigenvalues closer than this (relative to `max(1, ||M||_F)`) are treated as
/// one repeated eigenvalue. A defective triple eigenvalue only resolves to
/// about `eps^(1/3)`, so the threshold sits a decade above that.
pub(crate) fn cluster_tol<T: Real>(norm: T) -> T {
    T::lit(10.0) * T::epsilon().powf(T::one() / T::lit(3.0)) * norm.max(T::one())
}

pub(crate) fn eig_tol<T: Real>() -> T {
    T::tol(1e-6, 1e4)
}

/// Decides whether `M` is unitarily equivalent to an analytic truncated Toeplitz operator.
pub fn decide<T: Real>(m: &CMatrix<T>, tol: T) -> Result<Decision<T>> {
    if !m.is_square() || m.rows() == 0 {
        return Err(Error::Dim(format!("decide needs a nonempty square matrix, got {}x{}", m.rows(), m.cols())));
    }
    if !m.is_finite() {
        return Err(Error::NonFinite("matrix entries".into()));
    }
    let n = m.rows();
    if n == 1 {
        let cert = Certificate {
            zeros: vec![DiskPoint::origin()],
            symbol: AnalyticSymbol::constant(m[(0, 0)]),
            unitary: CMatrix::identity(1),
            phases: vec![Complex::one()],
            basis: BasisTag::KernelOrthonormalized,
        };
        return Ok(Decision::yes(cert, "every 1x1 matrix is a truncated Toeplitz operator on K_z"));
    }
    let eig = eig_dense(m, eig_tol())?;
    if min_pairwise_gap(&eig.values) <= cluster_tol(eig.matrix_norm) {
        return match n {
            2 => classify::repeated_2x2(m, tol),
            3 => decompose::repeated_3x3_decision(m, tol),
            _ => Ok(Decision::inconclusive("theorem requires distinct eigenvalues")),
        };
    }
    decide_from_eigendata(m, &eig.values, &eig.vectors, tol)
}

/// The distinct-eigenvalue test on supplied eigendata. The last eigenvector is
/// the distinguished one, paired with the zero of `Θ` at the origin.
pub fn decide_from_eigendata<T: Real>(
    m: &CMatrix<T>,
    values: &[Complex<T>],
    vectors: &[CVector<T>],
    tol: T,
) -> Result<Decision<T>> {
    let n = values.len();
    if n == 0 || vectors.len() != n || m.rows() != n || !m.is_square() {
        return Err(Error::Dim("eigendata does not match the matrix".into()));
    }
    let x: Vec<CVector<T>> = vectors.iter().map(CVector::normalized).collect();
    for i in 0..n {
        for j in i + 1..n {
            let ip = x[i].inner(&x[j]).norm();
            if ip <= tol {
                return Ok(Decision::no(
                    Violation::Orthogonal { i, j, inner: ip },
                    format!("eigenvectors {i} and {j} are orthogonal"),
                ));
            }
        }
    }
    let last = n - 1;
    let xn = &x[last];
    let p: Vec<T> = (0..last).map(|i| x[i].inner(xn).norm_sqr()).collect();
    let moduli: Vec<T> = p.iter().map(|&pi| (T::one() - pi).max(T::zero()).sqrt()).collect();
    for (index, &modulus) in moduli.iter().enumerate() {
        if modulus <= tol {
            return Ok(Decision::no(
                Violation::Degenerate { index, modulus },
                format!("recovered point {index} collapses onto the origin"),
            ));
        }
    }

    let triple = |i: usize, j: usize| xn.inner(&x[i]) * x[i].inner(&x[j]) * x[j].inner(xn);
    let mut z: Vec<Complex<T>> = Vec::with_capacity(n);
    if last > 0 {
        z.push(Complex::new(moduli[0], T::zero()));
        for j in 1..last {
            let t1j = triple(0, j);
            let zj_conj = (Complex::<T>::one() - (t1j.inv() * p[0] * p[j])) / moduli[0];
            z.push(zj_conj.conj());
        }
    }

    for i in 0..last {
        for j in i..last {
            let lhs = triple(i, j);
            let rhs = Complex::new(p[i] * p[j], T::zero()) / (Complex::<T>::one() - z[j].conj() * z[i]);
            if (lhs - rhs).norm() > tol * lhs.norm().max(T::one()) {
                if i == j {
                    return Ok(Decision::no(
                        Violation::Modulus { index: i, expected: moduli[i], found: z[i].norm() },
                        format!("modulus of point {i} is inconsistent"),
                    ));
                }
                return Ok(Decision::no(
                    Violation::Triple { i, j, lhs, rhs },
                    format!("triple-product condition fails for the pair ({i}, {j})"),
                ));
            }
        }
    }
    let guard = T::one() - T::lit(BOUNDARY_GUARD);
    for (index, zi) in z.iter().enumerate() {
        if zi.norm() >= guard {
            return Ok(Decision::no(
                Violation::OutsideDisk { index, modulus: zi.norm() },
                format!("recovered point {index} lies outside the disk"),
            ));
        }
    }
    z.push(Complex::zero());
    for i in 0..n {
        for j in i + 1..n {
            if (z[i] - z[j]).norm() <= tol {
                return Ok(Decision::no(Violation::Coincident { i, j }, format!("recovered points {i} and {j} coincide")));
            }
        }
    }

    match build_certificate(values, &x, &z, tol) {
        Ok(cert) => {
            let report = verify(m, &cert, tol * T::lit(CERT_SLACK))?;
            if report.passed {
                Ok(Decision::yes(cert, "eigenvector data satisfy the triple-product conditions"))
            } else {
                Ok(Decision::inconclusive(format!(
                    "conditions hold but the certificate failed verification: {}",
                    report.failures.join("; ")
                )))
            }
        }
        Err(e) => Ok(Decision::inconclusive(format!("conditions hold but no certificate could be built: {e}"))),
    }
}

fn build_certificate<T: Real>(
    values: &[Complex<T>],
    x: &[CVector<T>],
    z: &[Complex<T>],
    tol: T,
) -> Result<Certificate<T>> {
    let zeros: Vec<DiskPoint<T>> = z.iter().map(|&w| DiskPoint::new(w)).collect::<Result<_>>()?;
    let symbol = lagrange_symbol(&zeros, values)?;
    let theta = BlaschkeProduct::from_zeros(zeros.clone())?;
    let frame = conjugate_kernel_frame(&ModelSpace::new(theta.clone()))?;
    let y = frame.coords.columns();
    let phases = recover_phases(x, &y, x.len() - 1, tol * T::lit(10.0))?;
    let w: Vec<CVector<T>> = y.iter().zip(&phases).map(|(yi, a)| yi.scale(*a)).collect();
    let unitary = &orthonormalize(&w)? * &orthonormalize(x)?.adjoint();
    Ok(Certificate { zeros, symbol, unitary, phases, basis: BasisTag::KernelOrthonormalized })
}

/// `V L^{-*}` with `L L^* = V^* V`: the orthonormal frame obtained from the
/// columns of `V` by Gram–Schmidt.
fn orthonormalize<T: Real>(cols: &[CVector<T>]) -> Result<CMatrix<T>> {
    let v = CMatrix::from_columns(cols);
    let l = cholesky_hermitian(&(&v.adjoint() * &v), T::epsilon() * T::lit(16.0))?;
    Ok(&v * &lower_inverse(&l).adjoint())
}

/// Unimodular `α_i` with `<x_i, x_j> = α_i conj(α_j) <y_i, y_j>` for all pairs,
/// normalized so that `α_k = 1`.
pub fn recover_phases<T: Real>(x: &[CVector<T>], y: &[CVector<T>], k: usize, tol: T) -> Result<Vec<Complex<T>>> {
    let n = x.len();
    if y.len() != n || k >= n {
        return Err(Error::Dim(format!("{} vectors against {}, anchor {k}", n, y.len())));
    }
    for i in 0..n {
        for j in i..n {
            if y[i].inner(&y[j]).norm() <= tol {
                return Err(Error::ZeroInnerProduct(i, j));
            }
        }
    }
    let alpha: Vec<Complex<T>> = (0..n)
        .map(|i| {
            let beta = x[i].inner(&x[k]) / y[i].inner(&y[k]);
            beta / beta.norm()
        })
        .collect();
    for i in 0..n {
        for j in 0..n {
            let residual = (x[i].inner(&x[j]) - alpha[i] * alpha[j].conj() * y[i].inner(&y[j])).norm();
            if residual > tol {
                return Err(Error::TripleViolation { i, j, residual: residual.to_f64_lossy() });
            }
        }
    }
    Ok(alpha)
}
