use num_complex::Complex;

use crate::diskgeom::{BlaschkeProduct, DiskPoint};
use crate::error::{Error, Result};
use crate::numkit::{eig_dense, phi_distance, spectral_distance, CMatrix};
use crate::scalar::Real;
use crate::tto::{build_atto_eigenbasis, build_atto_tm, AnalyticSymbol, BasisTag};

/// Witness that `U M U^* = A_φ^Θ`, where `Θ` has the listed zeros.
///
/// Certificates produced by the distinct-eigenvalue test list all `n` zeros
/// with the distinguished one (the origin) last, and use the orthonormalized
/// conjugate-kernel basis. Certificates for repeated eigenvalues live in the
/// Takenaka–Malmquist basis, where repeated zeros are allowed.
#[derive(Debug, Clone, PartialEq)]
pub struct Certificate<T: Real> {
    pub zeros: Vec<DiskPoint<T>>,
    pub symbol: AnalyticSymbol<T>,
    pub unitary: CMatrix<T>,
    /// Unimodular constants relating the eigenvectors of `M` to the conjugate
    /// kernels; empty when the certificate did not come from phase recovery.
    pub phases: Vec<Complex<T>>,
    pub basis: BasisTag,
}

impl<T: Real> Certificate<T> {
    pub fn dim(&self) -> usize {
        self.zeros.len()
    }

    pub fn theta(&self) -> Result<BlaschkeProduct<T>> {
        BlaschkeProduct::from_zeros(self.zeros.clone())
    }

    /// The model operator `A_φ^Θ` in the certificate's basis.
    pub fn model_matrix(&self) -> Result<CMatrix<T>> {
        let theta = self.theta()?;
        Ok(match self.basis {
            BasisTag::KernelOrthonormalized => build_atto_eigenbasis(&theta, &self.symbol)?.matrix,
            BasisTag::TakenakaMalmquist => build_atto_tm(&theta, &self.symbol).matrix,
        })
    }

    pub fn symbol_values(&self) -> Vec<Complex<T>> {
        self.zeros.iter().map(|z| self.symbol.eval(z.value())).collect()
    }
}

/// Outcome of [`verify`]. Numeric mismatches are recorded, never raised.
#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport<T: Real> {
    pub passed: bool,
    /// `||U^*U - I||_F`.
    pub unitarity_defect: T,
    /// `||U M U^* - A||_F / ||M||_F` (absolute when `M = 0`).
    pub equivalence_residual: T,
    /// Multiset distance between the spectrum of `M` and `{φ(z_i)}`.
    pub spectral_distance: T,
    /// Scaled Φ-invariant distance, 3x3 only.
    pub phi_distance: Option<T>,
    pub failures: Vec<String>,
}

pub fn verify<T: Real>(m: &CMatrix<T>, cert: &Certificate<T>, tol: T) -> Result<VerifyReport<T>> {
    let n = m.rows();
    if !m.is_square() || cert.dim() != n || cert.unitary.rows() != n || cert.unitary.cols() != n {
        return Err(Error::Dim(format!(
            "matrix is {}x{}, certificate has {} zeros and a {}x{} unitary",
            m.rows(),
            m.cols(),
            cert.dim(),
            cert.unitary.rows(),
            cert.unitary.cols()
        )));
    }
    let mut failures = Vec::new();
    let norm = m.frobenius_norm();
    let scale = if norm > T::zero() { norm } else { T::one() };
    let u = &cert.unitary;
    let unitarity_defect = u.unitarity_defect();
    if unitarity_defect > tol * T::lit(n as f64).sqrt() {
        failures.push(format!("unitary defect {:.3e}", unitarity_defect.to_f64_lossy()));
    }

    let model = match cert.model_matrix() {
        Ok(a) => Some(a),
        Err(e) => {
            failures.push(format!("model operator could not be rebuilt: {e}"));
            None
        }
    };
    let (equivalence_residual, phi) = match &model {
        Some(a) => {
            let conj = &(u * m) * &u.adjoint();
            let res = (&conj - a).frobenius_norm() / scale;
            if res > tol {
                failures.push(format!("equivalence residual {:.3e}", res.to_f64_lossy()));
            }
            let phi = if n == 3 {
                let d = phi_distance(m, a)?;
                if d > tol * T::lit(10.0) {
                    failures.push(format!("trace-word distance {:.3e}", d.to_f64_lossy()));
                }
                Some(d)
            } else {
                None
            };
            (res, phi)
        }
        None => (T::infinity(), None),
    };

    let values = cert.symbol_values();
    let spectral = match eig_dense(m, T::tol(1e-6, 1e4)) {
        Ok(eig) => spectral_distance(&eig.values, &values),
        Err(_) => T::infinity(),
    };
    // A defective eigenvalue of multiplicity k is only determined to about eps^(1/k).
    let multiplicity = values
        .iter()
        .map(|v| values.iter().filter(|w| (*v - **w).norm() <= T::lit(1e-8) * scale).count())
        .max()
        .unwrap_or(1);
    let spectral_tol =
        tol.max(T::lit(10.0) * T::epsilon().powf(T::one() / T::lit(multiplicity as f64))) * scale.max(T::one());
    if spectral > spectral_tol {
        failures.push(format!("spectral distance {:.3e}", spectral.to_f64_lossy()));
    }

    Ok(VerifyReport {
        passed: failures.is_empty(),
        unitarity_defect,
        equivalence_residual,
        spectral_distance: spectral,
        phi_distance: phi,
        failures,
    })
}
