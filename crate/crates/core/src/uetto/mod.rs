//! Deciding unitary equivalence to analytic truncated Toeplitz operators.
//!
//! [`decide`] implements the eigenvector test for matrices with distinct
//! eigenvalues and produces a checkable [`Certificate`]. The remaining entry
//! points cover the 2x2 and 3x3 classifications, the complex-symmetric
//! necessary condition, and the equilateral counterexample family.

mod certificate;
mod classify;
mod decide;
mod decompose;
mod experiment;
mod family;
mod frames;

pub use certificate::{verify, Certificate, VerifyReport};
pub use classify::{classify_2x2, det_test_3x3, necessary_csm, trace_test_3x3, CsmEntry, TestOutcome};
pub use decide::{decide, decide_from_eigendata, recover_phases};
pub use decompose::{decompose_3x3, AttoForm, Decomposition, SpectrumCase, Witness};
pub use experiment::{csm_experiment, Concordance, ExperimentReport};
pub use family::{gen_family, CounterexampleFamily, FamilyMatrices};

use num_complex::Complex;

use crate::scalar::Real;

/// Default tolerance for the decision procedures.
pub const DEFAULT_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Yes,
    No,
    Inconclusive,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Yes => "YES",
            Verdict::No => "NO",
            Verdict::Inconclusive => "INCONCLUSIVE",
        }
    }
}

/// Why a matrix was rejected.
#[derive(Debug, Clone, PartialEq)]
pub enum Violation<T: Real> {
    /// Eigenvectors for distinct eigenvalues are orthogonal; an ATTO never has such a pair.
    Orthogonal { i: usize, j: usize, inner: T },
    /// A recovered point collapsed onto the origin.
    Degenerate { index: usize, modulus: T },
    /// The triple-product identity fails for the pair `(i, j)`.
    Triple { i: usize, j: usize, lhs: Complex<T>, rhs: Complex<T> },
    /// `|z_j|` recovered from the phases disagrees with the modulus formula.
    Modulus { index: usize, expected: T, found: T },
    /// A recovered point left the disk.
    OutsideDisk { index: usize, modulus: T },
    /// Two recovered points coincide.
    Coincident { i: usize, j: usize },
    /// Eigenvectors (or eigenspaces) for distinct eigenvalues are orthogonal.
    OrthogonalEigenspaces,
    /// The matrix is not unitarily equivalent to a complex symmetric matrix.
    NotUecsm { residual: T },
}

#[derive(Debug, Clone)]
pub struct Decision<T: Real> {
    pub verdict: Verdict,
    pub certificate: Option<Certificate<T>>,
    pub violation: Option<Violation<T>>,
    pub reason: String,
}

impl<T: Real> Decision<T> {
    pub(crate) fn yes(certificate: Certificate<T>, reason: impl Into<String>) -> Self {
        Self { verdict: Verdict::Yes, certificate: Some(certificate), violation: None, reason: reason.into() }
    }

    pub(crate) fn no(violation: Violation<T>, reason: impl Into<String>) -> Self {
        Self { verdict: Verdict::No, certificate: None, violation: Some(violation), reason: reason.into() }
    }

    pub(crate) fn inconclusive(reason: impl Into<String>) -> Self {
        Self { verdict: Verdict::Inconclusive, certificate: None, violation: None, reason: reason.into() }
    }
}
