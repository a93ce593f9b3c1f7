//! The model space `K_Θ = H² ⊖ ΘH²` of a finite Blaschke product.
//!
//! Kernel functions are handled in closed form. The Takenaka–Malmquist basis
//! gives orthonormal coordinates, and a trapezoid rule on the unit circle
//! supplies an independent route to every inner product.

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::diskgeom::{BlaschkeProduct, DiskPoint};
use crate::error::{Error, Result};
use crate::numkit::{CMatrix, CVector};
use crate::scalar::{real, Real};

#[derive(Debug, Clone, PartialEq)]
pub struct ModelSpace<T: Real> {
    theta: BlaschkeProduct<T>,
}

impl<T: Real> ModelSpace<T> {
    pub fn new(theta: BlaschkeProduct<T>) -> Self {
        Self { theta }
    }

    pub fn theta(&self) -> &BlaschkeProduct<T> {
        &self.theta
    }

    pub fn dim(&self) -> usize {
        self.theta.order()
    }

    pub fn tm_basis(&self) -> TMBasis<T> {
        TMBasis::new(self)
    }

    /// `sqrt((1 - |λ|²) / (1 - |Θ(λ)|²))`.
    pub fn normalization(&self, lambda: DiskPoint<T>) -> T {
        let l = lambda.value();
        let t = self.theta.eval(l);
        ((T::one() - l.norm_sqr()) / (T::one() - t.norm_sqr())).sqrt()
    }

    pub fn kernel(&self, lambda: DiskPoint<T>, kind: KernelKind) -> KernelVector<T> {
        KernelVector { space: self.clone(), lambda, kind }
    }

    /// `(Θ(a) - Θ(b)) / (a - b)`, switching to `Θ'` when the points nearly coincide.
    fn divided_difference(&self, a: Complex<T>, b: Complex<T>) -> Complex<T> {
        let d = a - b;
        if d.norm() <= T::epsilon().sqrt() * T::lit(1e-2) {
            let mid = (a + b) * T::lit(0.5);
            return self.theta.eval_with_derivative(mid).1;
        }
        (self.theta.eval(a) - self.theta.eval(b)) / d
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelKind {
    /// `K_λ(z) = (1 - conj(Θ(λ)) Θ(z)) / (1 - conj(λ) z)`.
    Raw,
    /// Unit-norm `k_λ`.
    Normalized,
    /// Unit-norm conjugate kernel `C k_λ`.
    Conjugate,
}

#[derive(Debug, Clone, PartialEq)]
pub struct KernelVector<T: Real> {
    pub space: ModelSpace<T>,
    pub lambda: DiskPoint<T>,
    pub kind: KernelKind,
}

impl<T: Real> KernelVector<T> {
    fn scale(&self) -> T {
        match self.kind {
            KernelKind::Raw => T::one(),
            KernelKind::Normalized | KernelKind::Conjugate => self.space.normalization(self.lambda),
        }
    }

    pub fn eval(&self, z: Complex<T>) -> Complex<T> {
        let theta = self.space.theta();
        let l = self.lambda.value();
        let s = self.scale();
        match self.kind {
            KernelKind::Raw | KernelKind::Normalized => {
                (Complex::<T>::one() - theta.eval(l).conj() * theta.eval(z)) / (Complex::<T>::one() - l.conj() * z) * s
            }
            KernelKind::Conjugate => self.space.divided_difference(z, l) * s,
        }
    }
}

/// Closed-form inner product of two kernel vectors of the same space.
pub fn kernel_inner<T: Real>(u: &KernelVector<T>, v: &KernelVector<T>) -> Result<Complex<T>> {
    if u.space != v.space {
        return Err(Error::SpaceMismatch);
    }
    let ms = &u.space;
    let theta = ms.theta();
    let (a, b) = (u.lambda.value(), v.lambda.value());
    let conj_u = u.kind == KernelKind::Conjugate;
    let conj_v = v.kind == KernelKind::Conjugate;
    let raw = match (conj_u, conj_v) {
        // <K_a, K_b> = K_a(b)
        (false, false) => {
            (Complex::<T>::one() - theta.eval(a).conj() * theta.eval(b)) / (Complex::<T>::one() - a.conj() * b)
        }
        // C is antiunitary: <C K_a, C K_b> = <K_b, K_a> = K_b(a)
        (true, true) => {
            (Complex::<T>::one() - theta.eval(b).conj() * theta.eval(a)) / (Complex::<T>::one() - b.conj() * a)
        }
        // <C K_a, K_b> = (C K_a)(b)
        (true, false) => ms.divided_difference(b, a),
        (false, true) => ms.divided_difference(a, b).conj(),
    };
    Ok(raw * u.scale() * v.scale())
}

/// One Takenaka–Malmquist function
/// `e(z) = sqrt(1 - |p|²) / (1 - conj(p) z) * prod_{a in prefix} (z - a) / (1 - conj(a) z)`.
#[derive(Debug, Clone, PartialEq)]
pub struct TMFunction<T: Real> {
    pub prefix: Vec<Complex<T>>,
    pub pole: Complex<T>,
}

impl<T: Real> TMFunction<T> {
    pub fn eval(&self, z: Complex<T>) -> Complex<T> {
        let head = real((T::one() - self.pole.norm_sqr()).sqrt()) / (Complex::<T>::one() - self.pole.conj() * z);
        self.prefix
            .iter()
            .fold(head, |acc, a| acc * (z - a) / (Complex::<T>::one() - a.conj() * z))
    }
}

/// Orthonormal basis `e_1, ..., e_n` of `K_Θ` following the order of `Θ`'s zeros.
#[derive(Debug, Clone, PartialEq)]
pub struct TMBasis<T: Real> {
    space: ModelSpace<T>,
    functions: Vec<TMFunction<T>>,
}

impl<T: Real> TMBasis<T> {
    pub fn new(ms: &ModelSpace<T>) -> Self {
        let zeros = ms.theta().zero_values();
        let functions = (0..zeros.len())
            .map(|k| TMFunction { prefix: zeros[..k].to_vec(), pole: zeros[k] })
            .collect();
        Self { space: ms.clone(), functions }
    }

    pub fn space(&self) -> &ModelSpace<T> {
        &self.space
    }

    pub fn functions(&self) -> &[TMFunction<T>] {
        &self.functions
    }

    pub fn dim(&self) -> usize {
        self.functions.len()
    }

    pub fn eval(&self, k: usize, z: Complex<T>) -> Complex<T> {
        self.functions[k].eval(z)
    }

    /// `(C e_k)(z) = front * sqrt(1 - |a_k|²) / (1 - conj(a_k) z) * prod_{j > k} b_{a_j}(z)`,
    /// analytic in the disk.
    pub fn eval_conjugate(&self, k: usize, z: Complex<T>) -> Complex<T> {
        let theta = self.space.theta();
        let zeros = theta.zero_values();
        let a = zeros[k];
        let head = real((T::one() - a.norm_sqr()).sqrt()) / (Complex::<T>::one() - a.conj() * z);
        zeros[k + 1..]
            .iter()
            .fold(head * theta.front(), |acc, w| acc * (z - w) / (Complex::<T>::one() - w.conj() * z))
    }

    /// `Σ c_k e_k(z)`.
    pub fn eval_combination(&self, coords: &CVector<T>, z: Complex<T>) -> Complex<T> {
        (0..self.dim()).fold(Complex::<T>::zero(), |acc, k| acc + coords[k] * self.eval(k, z))
    }
}

/// Coordinates `c_k = <v, e_k>` of a kernel vector in the Takenaka–Malmquist basis.
pub fn tm_coords<T: Real>(ms: &ModelSpace<T>, v: &KernelVector<T>) -> Result<CVector<T>> {
    if &v.space != ms {
        return Err(Error::SpaceMismatch);
    }
    let basis = ms.tm_basis();
    let l = v.lambda.value();
    let s = v.scale();
    let coords = (0..basis.dim())
        .map(|k| match v.kind {
            // <K_λ, e_k> = conj(e_k(λ))
            KernelKind::Raw | KernelKind::Normalized => basis.eval(k, l).conj() * s,
            // <C K_λ, e_k> = <C e_k, K_λ> = (C e_k)(λ)
            KernelKind::Conjugate => basis.eval_conjugate(k, l) * s,
        })
        .collect();
    Ok(CVector::new(coords))
}

/// Equispaced nodes on the unit circle for the trapezoid rule.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureGrid<T: Real> {
    nodes: Vec<Complex<T>>,
}

impl<T: Real> QuadratureGrid<T> {
    pub const DEFAULT_SIZE: usize = 2048;

    /// `size` must be a power of two, at least 256.
    pub fn new(size: usize) -> Result<Self> {
        if size < 256 || !size.is_power_of_two() {
            return Err(Error::Dim(format!("quadrature size {size} must be a power of two >= 256")));
        }
        let step = T::TAU() / T::lit(size as f64);
        let nodes = (0..size)
            .map(|k| {
                let t = step * T::lit(k as f64);
                Complex::new(t.cos(), t.sin())
            })
            .collect();
        Ok(Self { nodes })
    }

    pub fn size(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[Complex<T>] {
        &self.nodes
    }

    pub fn sample(&self, f: impl Fn(Complex<T>) -> Complex<T>) -> Vec<Complex<T>> {
        self.nodes.iter().map(|&z| f(z)).collect()
    }

    /// Trapezoid value of `(1/2π) ∫ f conj(g) dθ` from samples on this grid.
    pub fn inner(&self, f: &[Complex<T>], g: &[Complex<T>]) -> Complex<T> {
        circle_inner(f, g)
    }
}

impl<T: Real> Default for QuadratureGrid<T> {
    fn default() -> Self {
        Self::new(Self::DEFAULT_SIZE).expect("default grid size is valid")
    }
}

/// `(1/N) Σ f_k conj(g_k)` over equispaced boundary samples.
pub fn circle_inner<T: Real>(f: &[Complex<T>], g: &[Complex<T>]) -> Complex<T> {
    assert_eq!(f.len(), g.len(), "boundary samples must share a grid");
    let s = f.iter().zip(g).fold(Complex::<T>::zero(), |acc, (a, b)| acc + a * b.conj());
    s / T::lit(f.len() as f64)
}

/// Matrix `S` of the conjugation `C f = conj(f z) Θ` in the TM basis, so that
/// `C` acts on coordinates as `x ↦ S conj(x)`; `S_ij = <C e_j, e_i>` by quadrature.
pub fn conjugation_matrix<T: Real>(ms: &ModelSpace<T>, basis: &TMBasis<T>, grid: &QuadratureGrid<T>) -> CMatrix<T> {
    let n = basis.dim();
    let theta = ms.theta();
    let theta_vals = grid.sample(|z| theta.eval(z));
    let e: Vec<Vec<Complex<T>>> = (0..n).map(|k| grid.sample(|z| basis.eval(k, z))).collect();
    let ce: Vec<Vec<Complex<T>>> = (0..n)
        .map(|k| {
            grid.nodes()
                .iter()
                .zip(&e[k])
                .zip(&theta_vals)
                .map(|((z, ek), t)| (ek * z).conj() * t)
                .collect()
        })
        .collect();
    CMatrix::from_fn(n, n, |i, j| circle_inner(&ce[j], &e[i]))
}
