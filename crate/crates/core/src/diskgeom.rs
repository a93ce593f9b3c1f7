//! Geometry of the open unit disk: pseudohyperbolic and hyperbolic distance,
//! disk automorphisms, and finite Blaschke products.

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{is_finite, real, Real};

/// Points with `|z| >= 1 - BOUNDARY_GUARD` are rejected.
pub const BOUNDARY_GUARD: f64 = 1e-12;

fn guard<T: Real>() -> T {
    T::tol(BOUNDARY_GUARD, 4.0)
}

/// A point strictly inside the unit disk.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiskPoint<T: Real>(Complex<T>);

impl<T: Real> DiskPoint<T> {
    pub fn new(z: Complex<T>) -> Result<Self> {
        if !is_finite(z) {
            return Err(Error::NonFinite(format!("{z}")));
        }
        if z.norm() >= T::one() - guard::<T>() {
            return Err(Error::OutsideDisk(format!("{z}")));
        }
        Ok(Self(z))
    }

    pub fn origin() -> Self {
        Self(Complex::<T>::zero())
    }

    pub fn value(self) -> Complex<T> {
        self.0
    }
}

impl<T: Real> From<DiskPoint<T>> for Complex<T> {
    fn from(p: DiskPoint<T>) -> Self {
        p.0
    }
}

/// Pseudohyperbolic distance `|(z - w) / (1 - conj(w) z)|`.
pub fn rho<T: Real>(z: DiskPoint<T>, w: DiskPoint<T>) -> T {
    let (z, w) = (z.0, w.0);
    let r = ((z - w) / (Complex::<T>::one() - w.conj() * z)).norm();
    r.min(T::one())
}

/// Hyperbolic (Poincaré) distance `log((1 + rho) / (1 - rho))`.
pub fn hyp_dist<T: Real>(z: DiskPoint<T>, w: DiskPoint<T>) -> T {
    let r = rho(z, w);
    T::lit(2.0) * r.atanh()
}

/// Disk automorphism `psi(z) = omega (z - a) / (1 - conj(a) z)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Automorphism<T: Real> {
    a: DiskPoint<T>,
    omega: Complex<T>,
}

impl<T: Real> Automorphism<T> {
    /// `omega` must be unimodular to within `1e-10`; it is renormalized exactly.
    pub fn new(a: DiskPoint<T>, omega: Complex<T>) -> Result<Self> {
        let m = omega.norm();
        if !is_finite(omega) || (m - T::one()).abs() > T::tol(1e-10, 16.0) {
            return Err(Error::HypothesisViolation(format!("rotation {omega} is not unimodular")));
        }
        Ok(Self { a, omega: omega / m })
    }

    pub fn identity() -> Self {
        Self { a: DiskPoint::origin(), omega: Complex::<T>::one() }
    }

    /// Preimage of the origin.
    pub fn zero_preimage(&self) -> DiskPoint<T> {
        self.a
    }

    pub fn rotation(&self) -> Complex<T> {
        self.omega
    }

    /// Evaluates on any point of the closed disk (or beyond, away from the pole).
    pub fn eval(&self, z: Complex<T>) -> Complex<T> {
        let a = self.a.0;
        self.omega * (z - a) / (Complex::<T>::one() - a.conj() * z)
    }

    pub fn apply(&self, z: DiskPoint<T>) -> DiskPoint<T> {
        let w = self.eval(z.0);
        // Automorphisms preserve the disk; clamp rounding at the guard.
        let lim = T::one() - guard::<T>();
        if w.norm() >= lim {
            DiskPoint(w * (lim * (T::one() - T::epsilon()) / w.norm()))
        } else {
            DiskPoint(w)
        }
    }

    pub fn derivative(&self, z: Complex<T>) -> Complex<T> {
        let a = self.a.0;
        let d = Complex::<T>::one() - a.conj() * z;
        self.omega * real(T::one() - a.norm_sqr()) / (d * d)
    }

    pub fn inverse(&self) -> Self {
        Self { a: DiskPoint(-(self.omega * self.a.0)), omega: self.omega.conj() }
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &Self) -> Self {
        let a = inner.inverse().apply(self.a);
        let d = self.derivative(inner.eval(a.0)) * inner.derivative(a.0);
        let omega = d / d.norm();
        Self { a, omega }
    }
}

/// Finite Blaschke product `front * prod (z - a_k) / (1 - conj(a_k) z)`.
#[derive(Debug, Clone, PartialEq)]
pub struct BlaschkeProduct<T: Real> {
    zeros: Vec<DiskPoint<T>>,
    front: Complex<T>,
}

impl<T: Real> BlaschkeProduct<T> {
    pub fn new(zeros: Vec<DiskPoint<T>>, front: Complex<T>) -> Result<Self> {
        if zeros.is_empty() {
            return Err(Error::Dim("Blaschke product needs at least one zero".into()));
        }
        if !is_finite(front) || (front.norm() - T::one()).abs() > T::tol(1e-10, 16.0) {
            return Err(Error::HypothesisViolation(format!("front factor {front} is not unimodular")));
        }
        Ok(Self { zeros, front: front / front.norm() })
    }

    /// Front factor 1.
    pub fn from_zeros(zeros: Vec<DiskPoint<T>>) -> Result<Self> {
        Self::new(zeros, Complex::<T>::one())
    }

    /// Convenience: validates each complex zero.
    pub fn from_complex_zeros(zeros: &[Complex<T>]) -> Result<Self> {
        Self::from_zeros(zeros.iter().map(|&z| DiskPoint::new(z)).collect::<Result<_>>()?)
    }

    /// `z^n`.
    pub fn monomial(n: usize) -> Self {
        Self { zeros: vec![DiskPoint::origin(); n.max(1)], front: Complex::<T>::one() }
    }

    pub fn zeros(&self) -> &[DiskPoint<T>] {
        &self.zeros
    }

    pub fn zero_values(&self) -> Vec<Complex<T>> {
        self.zeros.iter().map(|p| p.0).collect()
    }

    pub fn front(&self) -> Complex<T> {
        self.front
    }

    pub fn order(&self) -> usize {
        self.zeros.len()
    }

    /// Smallest pairwise distance between listed zeros (`+inf` for order 1).
    pub fn min_zero_gap(&self) -> T {
        crate::numkit::min_pairwise_gap(&self.zero_values())
    }

    pub fn eval(&self, z: Complex<T>) -> Complex<T> {
        self.zeros.iter().fold(self.front, |acc, a| acc * factor(a.0, z))
    }

    /// `(Theta(z), Theta'(z))` with the derivative from the product rule.
    pub fn eval_with_derivative(&self, z: Complex<T>) -> (Complex<T>, Complex<T>) {
        let f: Vec<Complex<T>> = self.zeros.iter().map(|a| factor(a.0, z)).collect();
        let n = f.len();
        let mut prefix = vec![Complex::<T>::one(); n + 1];
        for k in 0..n {
            prefix[k + 1] = prefix[k] * f[k];
        }
        let mut suffix = Complex::<T>::one();
        let mut deriv = Complex::<T>::zero();
        for k in (0..n).rev() {
            deriv += prefix[k] * factor_derivative(self.zeros[k].0, z) * suffix;
            suffix *= f[k];
        }
        (self.front * prefix[n], self.front * deriv)
    }

    /// Partial product of the first `k` factors (no front factor).
    pub fn partial(&self, k: usize, z: Complex<T>) -> Complex<T> {
        self.zeros[..k].iter().fold(Complex::<T>::one(), |acc, a| acc * factor(a.0, z))
    }

    /// `Theta ∘ psi`, written as a Blaschke product with zeros `psi^{-1}(a_k)`.
    pub fn compose(&self, psi: &Automorphism<T>) -> Self {
        let inv = psi.inverse();
        let zeros: Vec<DiskPoint<T>> = self.zeros.iter().map(|&a| inv.apply(a)).collect();
        // Match the unimodular constant on the boundary point z = 1.
        let one = Complex::<T>::one();
        let target = self.eval(psi.eval(one));
        let bare = zeros.iter().fold(Complex::<T>::one(), |acc, a| acc * factor(a.0, one));
        let front = target / bare;
        Self { zeros, front: front / front.norm() }
    }
}

#[inline]
fn factor<T: Real>(a: Complex<T>, z: Complex<T>) -> Complex<T> {
    (z - a) / (Complex::<T>::one() - a.conj() * z)
}

#[inline]
fn factor_derivative<T: Real>(a: Complex<T>, z: Complex<T>) -> Complex<T> {
    let d = Complex::<T>::one() - a.conj() * z;
    real(T::one() - a.norm_sqr()) / (d * d)
}
