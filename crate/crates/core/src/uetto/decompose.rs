//! Direct-sum decomposition of 3x3 matrices that are unitarily equivalent to
//! complex symmetric matrices.
//!
//! The matrix is brought to one of three lower-triangular canonical forms
//! according to the number of distinct eigenvalues. For repeated eigenvalues
//! the triangularizing frame is read off from ranges and kernels of
//! polynomials in `M`, which stay accurate where a Schur form of a defective
//! matrix would only be good to `sqrt(eps)`.

use num_complex::Complex;
use num_traits::{One, Zero};

use super::certificate::Certificate;
use super::classify::trace_test_3x3;
use super::decide::{cluster_tol, decide_from_eigendata, eig_tol, CERT_SLACK};
use super::frames::{column_direction, frame_unitary, normality_defect, orthonormal_completion, phase, row_direction};
use super::{Decision, Verdict, Violation};
use crate::diskgeom::DiskPoint;
use crate::error::{Error, Result};
use crate::numkit::{eig_dense, phi_distance, CMatrix, CVector, EigenSystem};
use crate::scalar::{real, Real};
use crate::tto::{AnalyticSymbol, BasisTag};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpectrumCase {
    One,
    Two,
    Three,
}

/// How a single-block realization was obtained.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AttoForm<T: Real> {
    Scalar,
    /// Lower triangular Toeplitz matrix on `K_{z³}`.
    Toeplitz,
    /// `M - μI` is a rank-one nilpotent.
    RankOneNilpotent,
    /// `(M - μI)/(ν - μ)` is a rank-one idempotent.
    RankOneIdempotent,
    /// `A_{αz + βz²}` on `K_Θ`, `Θ = z²(z - r)/(1 - rz)`, in the basis `1, z, z² sqrt(1-r²)/(1-rz)`,
    /// before undoing the shift and scale.
    Ttom { alpha: Complex<T>, beta: Complex<T>, r: T },
    /// Full certificate from the distinct-eigenvalue test.
    Kernel,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Witness<T: Real> {
    Atto { form: AttoForm<T>, certificate: Certificate<T> },
    /// Block-diagonal model; each block is a truncated Toeplitz operator of size one or two.
    DirectSum { blocks: Vec<CMatrix<T>> },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Decomposition<T: Real> {
    pub case: SpectrumCase,
    pub witness: Witness<T>,
    /// `U` with `U M U^* = model`.
    pub unitary: CMatrix<T>,
    pub model: CMatrix<T>,
    /// `||U M U^* - model||_F / ||M||_F`.
    pub residual: T,
    pub phi_residual: T,
}

enum Outcome<T: Real> {
    Realized(Box<Decomposition<T>>),
    NotUecsm(T),
}

/// Decomposes a 3x3 matrix that passes the trace test into truncated Toeplitz blocks.
pub fn decompose_3x3<T: Real>(m: &CMatrix<T>, tol: T) -> Result<Decomposition<T>> {
    if m.rows() != 3 || m.cols() != 3 {
        return Err(Error::Dim(format!("decompose_3x3 needs a 3x3 matrix, got {}x{}", m.rows(), m.cols())));
    }
    let trace = trace_test_3x3(m, tol)?;
    if !trace.passed {
        return Err(Error::NotUecsm(trace.residual.to_f64_lossy()));
    }
    match analyze(m, tol)? {
        Outcome::Realized(d) => Ok(*d),
        Outcome::NotUecsm(r) => Err(Error::NotUecsm(r.to_f64_lossy())),
    }
}

/// `decide` for 3x3 matrices with a repeated eigenvalue.
pub(crate) fn repeated_3x3_decision<T: Real>(m: &CMatrix<T>, tol: T) -> Result<Decision<T>> {
    let d = match analyze(m, tol) {
        Ok(Outcome::Realized(d)) => *d,
        Ok(Outcome::NotUecsm(residual)) => {
            return Ok(Decision::no(
                Violation::NotUecsm { residual },
                "not unitarily equivalent to a complex symmetric matrix",
            ))
        }
        Err(Error::NonConverged(msg)) => return Ok(Decision::inconclusive(msg)),
        Err(e) => return Err(e),
    };
    Ok(match d.witness {
        Witness::Atto { certificate, form } => Decision::yes(certificate, format!("{form:?} realization")),
        Witness::DirectSum { .. } => Decision::no(
            Violation::OrthogonalEigenspaces,
            "eigenvectors for distinct eigenvalues are orthogonal",
        ),
    })
}

fn analyze<T: Real>(m: &CMatrix<T>, tol: T) -> Result<Outcome<T>> {
    let eig = eig_dense(m, eig_tol())?;
    let close = cluster_tol(eig.matrix_norm);
    let v = &eig.values;
    let near = |i: usize, j: usize| (v[i] - v[j]).norm() <= close;
    let pairs = [(0, 1), (0, 2), (1, 2)];
    let close_pairs: Vec<(usize, usize)> = pairs.iter().copied().filter(|&(i, j)| near(i, j)).collect();
    let outcome = match close_pairs.len() {
        0 => case_three(m, &eig, tol)?,
        1 => {
            let (i, j) = close_pairs[0];
            let simple = 3 - i - j;
            let nu = eig.values[simple];
            let mu = (m.trace() - nu) * T::lit(0.5);
            case_two(m, mu, nu, tol)
        }
        _ => case_one(m, m.trace() / T::lit(3.0), tol),
    };
    if let Outcome::Realized(d) = &outcome {
        if d.residual > tol * T::lit(CERT_SLACK) {
            return Err(Error::NonConverged(format!(
                "canonical form reproduces the matrix only to {:.3e}",
                d.residual.to_f64_lossy()
            )));
        }
    }
    Ok(outcome)
}

fn finish<T: Real>(m: &CMatrix<T>, case: SpectrumCase, witness: Witness<T>, unitary: CMatrix<T>, model: CMatrix<T>) -> Outcome<T> {
    let norm = m.frobenius_norm();
    let scale = if norm > T::zero() { norm } else { T::one() };
    let residual = (&(&(&unitary * m) * &unitary.adjoint()) - &model).frobenius_norm() / scale;
    let phi_residual = phi_distance(m, &model).unwrap_or(T::infinity());
    Outcome::Realized(Box::new(Decomposition { case, witness, unitary, model, residual, phi_residual }))
}

fn atto<T: Real>(
    m: &CMatrix<T>,
    case: SpectrumCase,
    form: AttoForm<T>,
    zeros: [T; 3],
    symbol: AnalyticSymbol<T>,
    unitary: CMatrix<T>,
) -> Outcome<T> {
    let certificate = Certificate {
        zeros: zeros.iter().map(|&r| DiskPoint::new(real(r))).collect::<Result<_>>().unwrap_or_else(|_| vec![DiskPoint::origin(); 3]),
        symbol,
        unitary: unitary.clone(),
        phases: Vec::new(),
        basis: BasisTag::TakenakaMalmquist,
    };
    let model = match certificate.model_matrix() {
        Ok(a) => a,
        Err(_) => return Outcome::NotUecsm(T::infinity()),
    };
    finish(m, case, Witness::Atto { form, certificate }, unitary, model)
}

fn block_diagonal<T: Real>(b: &CMatrix<T>, sizes: &[usize]) -> (CMatrix<T>, Vec<CMatrix<T>>) {
    let mut model = CMatrix::zeros(3, 3);
    let mut blocks = Vec::new();
    let mut start = 0;
    for &s in sizes {
        let block = b.submatrix(start..start + s, start..start + s);
        for i in 0..s {
            for j in 0..s {
                model[(start + i, start + j)] = block[(i, j)];
            }
        }
        blocks.push(block);
        start += s;
    }
    (model, blocks)
}

/// Frame `(u1, u2, u3)` in which a matrix is lower triangular, given the
/// invariant line `u3` and a unit `u1` orthogonal to the invariant plane.
fn flag_frame<T: Real>(u3: CVector<T>, u1: CVector<T>, n: &CMatrix<T>) -> Vec<CVector<T>> {
    let nu1 = n.mul_vec(&u1);
    let out = orthonormal_completion(3, &[u3, u1, nu1]);
    vec![out[1].clone(), out[2].clone(), out[0].clone()]
}

/// One eigenvalue `μ`: canonical form `[[0,0,0],[a,0,0],[b,c,0]]` of `M - μI`.
fn case_one<T: Real>(m: &CMatrix<T>, mu: Complex<T>, tol: T) -> Outcome<T> {
    let case = SpectrumCase::One;
    let n = m.shifted(-mu);
    let nn = n.frobenius_norm();
    if nn <= tol * m.frobenius_norm().max(T::one()) {
        return atto(m, case, AttoForm::Scalar, [T::zero(); 3], AnalyticSymbol::constant(mu), CMatrix::identity(3));
    }
    let n2 = &n * &n;
    if n2.frobenius_norm() <= tol * nn * nn {
        // N = σ u v^* with v ⟂ u; in the frame (v, r, u) it is σ e_3 e_1^t = A_{σz²} on K_{z³}.
        let v = row_direction(&n);
        let nv = n.mul_vec(&v);
        let sigma = nv.norm();
        let out = orthonormal_completion(3, &[v, nv.normalized()]);
        let frame = [out[0].clone(), out[2].clone(), out[1].clone()];
        let symbol = AnalyticSymbol::new(vec![mu, Complex::zero(), real(sigma)]);
        return atto(m, case, AttoForm::RankOneNilpotent, [T::zero(); 3], symbol, frame_unitary(&frame));
    }
    // N² = ac e_3 e_1^t: its range is the eigenvector, its row space the top of the flag.
    let frame = flag_frame(column_direction(&n2), row_direction(&n2), &n);
    let u = frame_unitary(&frame);
    let t = &(&u * &n) * &u.adjoint();
    let (a, b, c) = (t[(1, 0)], t[(2, 0)], t[(2, 1)]);
    let defect = (a.norm_sqr() - c.norm_sqr()).abs();
    if defect > tol * nn * nn {
        return Outcome::NotUecsm(a.norm_sqr() * c.norm_sqr() * defect / nn.powi(6));
    }
    // diag(1, d2, d3) makes both subdiagonal entries positive.
    let d2 = phase(a).conj();
    let d3 = d2 * phase(c).conj();
    let alpha = real((a.norm() + c.norm()) * T::lit(0.5));
    let beta = d3 * b;
    let d = CMatrix::from_diag(&[Complex::one(), d2, d3]);
    let symbol = AnalyticSymbol::new(vec![mu, alpha, beta]);
    atto(m, case, AttoForm::Toeplitz, [T::zero(); 3], symbol, &d * &u)
}

/// Eigenvalues `μ` (double) and `ν`: canonical form `[[0,0,0],[a,0,0],[b,c,1]]`
/// of `(M - μI)/(ν - μ)`.
fn case_two<T: Real>(m: &CMatrix<T>, mu: Complex<T>, nu: Complex<T>, tol: T) -> Outcome<T> {
    let case = SpectrumCase::Two;
    let s = nu - mu;
    let n = m.shifted(-mu);
    let k = m.shifted(-nu);
    let p = &n * &k;
    if p.frobenius_norm() <= tol * n.frobenius_norm() * k.frobenius_norm() {
        // a = 0: N = σ u v^* with u the ν-eigenvector and v^* u σ = s.
        if normality_defect(&n) <= tol * n.frobenius_norm().powi(2) {
            let out = orthonormal_completion(3, &[column_direction(&n)]);
            let frame = [out[1].clone(), out[2].clone(), out[0].clone()];
            let unitary = frame_unitary(&frame);
            let b = &(&unitary * m) * &unitary.adjoint();
            let (model, blocks) = block_diagonal(&b, &[1, 1, 1]);
            return finish(m, case, Witness::DirectSum { blocks }, unitary, model);
        }
        let v = row_direction(&n);
        let nv = n.mul_vec(&v);
        let sigma = nv.norm();
        let u = nv.normalized();
        let along = v.inner(&u);
        let perp = &v - &u.scale(along);
        let f1 = perp.normalized().scale(phase(s));
        let out = orthonormal_completion(3, &[u.clone(), f1.clone()]);
        let f2 = out[2].clone();
        // Row of the canonical form in the frame (f1, f2, u) is (B, 0, 1) with B >= 0.
        let big_b = sigma * perp.norm() / s.norm();
        let t = (T::one() + big_b * big_b).powf(T::lit(-0.25));
        let w = (T::one() - t * t).sqrt();
        let (pp, qq) = (w / (t * t), w / t);
        let g1 = &f1.scale(real(pp / big_b)) - &f2.scale(real(qq / big_b));
        let g2 = &f1.scale(real(qq / big_b)) + &f2.scale(real(pp / big_b));
        let unitary = frame_unitary(&[g1, g2, u]);
        let symbol = AnalyticSymbol::new(vec![mu, Complex::zero(), s / (t * t)]);
        return atto(m, case, AttoForm::RankOneIdempotent, [T::zero(), T::zero(), t], symbol, unitary);
    }
    // (M - μ)² has the ν-eigenvector as its range; P = (M - μ)(M - ν) has rank one
    // with row space orthogonal to the invariant plane.
    let frame = flag_frame(column_direction(&(&n * &n)), row_direction(&p), &n);
    let u = frame_unitary(&frame);
    let tm = &(&u * m) * &u.adjoint();
    let t = &(&u * &n) * &u.adjoint();
    let (a, b, c) = (t[(1, 0)] / s, t[(2, 0)] / s, t[(2, 1)] / s);
    let size = (a.norm_sqr() + b.norm_sqr() + c.norm_sqr() + T::one()).sqrt();
    if c.norm() <= tol * size {
        if b.norm() <= tol * size {
            let (model, blocks) = block_diagonal(&tm, &[2, 1]);
            return finish(m, case, Witness::DirectSum { blocks }, u, model);
        }
        return Outcome::NotUecsm(b.norm() * a.norm());
    }
    let target = c.norm_sqr() * (T::one() + c.norm_sqr());
    let magic = ((b + a * c).norm_sqr() - target).abs();
    if magic > tol * target.max(T::one()) {
        return Outcome::NotUecsm(magic);
    }
    // diag(1, d2, d3) makes c > 0 and b + ac >= 0.
    let d3 = phase(b + a * c).conj();
    let d2 = d3 * phase(c);
    let (a2, b2, c2) = (d2 * a, d3 * b, (d3 * d2.conj() * c).re);
    let r = T::one() / (T::one() + c2 * c2).sqrt();
    let alpha = a2;
    let beta = b2 / c2 * (T::one() + c2 * c2).sqrt();
    let d = CMatrix::from_diag(&[Complex::one(), d2, d3]);
    let symbol = AnalyticSymbol::new(vec![mu, s * alpha, s * beta]);
    atto(m, case, AttoForm::Ttom { alpha, beta, r }, [T::zero(), T::zero(), r], symbol, &d * &u)
}

/// Three distinct eigenvalues.
fn case_three<T: Real>(m: &CMatrix<T>, eig: &EigenSystem<T>, tol: T) -> Result<Outcome<T>> {
    let case = SpectrumCase::Three;
    let x = &eig.vectors;
    let orthogonal = (0..3).any(|i| (i + 1..3).any(|j| x[i].inner(&x[j]).norm() <= tol));
    if !orthogonal {
        let d = decide_from_eigendata(m, &eig.values, x, tol)?;
        return Ok(match (d.verdict, d.certificate) {
            (Verdict::Yes, Some(certificate)) => {
                let unitary = certificate.unitary.clone();
                let model = certificate.model_matrix()?;
                finish(m, case, Witness::Atto { form: AttoForm::Kernel, certificate }, unitary, model)
            }
            (Verdict::No, _) => Outcome::NotUecsm(T::infinity()),
            _ => return Err(Error::NonConverged(d.reason)),
        });
    }
    let scale = m.frobenius_norm().max(T::one());
    if normality_defect(m) <= tol * scale * scale {
        let frame = orthonormal_completion(3, x);
        let unitary = frame_unitary(&frame);
        let b = &(&unitary * m) * &unitary.adjoint();
        let (model, blocks) = block_diagonal(&b, &[1, 1, 1]);
        return Ok(finish(m, case, Witness::DirectSum { blocks }, unitary, model));
    }
    // A reducing eigenvector is also an eigenvector of M^*.
    let ms = m.adjoint();
    let (k, defect) = (0..3)
        .map(|k| (k, (&ms.mul_vec(&x[k]) - &x[k].scale(eig.values[k].conj())).norm()))
        .min_by(|p, q| p.1.partial_cmp(&q.1).unwrap())
        .unwrap();
    if defect > tol * scale {
        return Ok(Outcome::NotUecsm(defect / scale));
    }
    let out = orthonormal_completion(3, &[x[k].clone()]);
    let frame = [out[1].clone(), out[2].clone(), out[0].clone()];
    let unitary = frame_unitary(&frame);
    let b = &(&unitary * m) * &unitary.adjoint();
    let (model, blocks) = block_diagonal(&b, &[2, 1]);
    Ok(finish(m, case, Witness::DirectSum { blocks }, unitary, model))
}
