//! Truncated Toeplitz operators `A_φ f = P_Θ(φ f)` on `K_Θ`.
//!
//! Two independent construction routes are provided. The eigenbasis route is
//! exact for analytic symbols once the zeros of `Θ` are distinct: the
//! conjugate kernels at the zeros are eigenvectors with eigenvalues `φ(z_i)`.
//! The quadrature route computes `<φ e_j, e_i>` in the Takenaka–Malmquist
//! basis and accepts any boundary symbol.

use std::collections::BTreeMap;

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::diskgeom::{Automorphism, BlaschkeProduct, DiskPoint};
use crate::error::{Error, Result};
use crate::modelspace::{circle_inner, kernel_inner, KernelKind, ModelSpace, QuadratureGrid};
use crate::numkit::{cholesky_hermitian, lower_inverse, CMatrix};
use crate::scalar::Real;

/// Values of a symbol on the unit circle.
pub trait BoundarySymbol<T: Real> {
    fn eval_boundary(&self, z: Complex<T>) -> Complex<T>;
}

/// Polynomial `Σ c_k z^k`, ascending degree, trailing zeros trimmed.
#[derive(Debug, Clone, PartialEq)]
pub struct AnalyticSymbol<T: Real> {
    coeffs: Vec<Complex<T>>,
}

impl<T: Real> AnalyticSymbol<T> {
    pub fn new(mut coeffs: Vec<Complex<T>>) -> Self {
        while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(Complex::zero());
        }
        Self { coeffs }
    }

    pub fn constant(c: Complex<T>) -> Self {
        Self::new(vec![c])
    }

    pub fn coeffs(&self) -> &[Complex<T>] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval(&self, z: Complex<T>) -> Complex<T> {
        self.coeffs.iter().rev().fold(Complex::<T>::zero(), |acc, c| acc * z + c)
    }

    pub fn to_trig(&self) -> TrigSymbol<T> {
        TrigSymbol::new(self.coeffs.iter().enumerate().map(|(k, c)| (k as i64, *c)).collect())
    }
}

impl<T: Real> BoundarySymbol<T> for AnalyticSymbol<T> {
    fn eval_boundary(&self, z: Complex<T>) -> Complex<T> {
        self.eval(z)
    }
}

/// Trigonometric polynomial `Σ c_k e^{ikθ}` with finite support.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct TrigSymbol<T: Real> {
    coeffs: BTreeMap<i64, Complex<T>>,
}

impl<T: Real> TrigSymbol<T> {
    pub fn new(coeffs: BTreeMap<i64, Complex<T>>) -> Self {
        Self { coeffs: coeffs.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }

    pub fn coeffs(&self) -> &BTreeMap<i64, Complex<T>> {
        &self.coeffs
    }

    /// Boundary values of `conj(φ)`.
    pub fn conj(&self) -> Self {
        Self { coeffs: self.coeffs.iter().map(|(k, c)| (-k, c.conj())).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.coeffs.clone();
        for (k, c) in &other.coeffs {
            *out.entry(*k).or_insert_with(Complex::zero) += c;
        }
        Self::new(out)
    }

    pub fn is_analytic(&self) -> bool {
        self.coeffs.keys().all(|&k| k >= 0)
    }
}

impl<T: Real> BoundarySymbol<T> for TrigSymbol<T> {
    fn eval_boundary(&self, z: Complex<T>) -> Complex<T> {
        self.coeffs
            .iter()
            .fold(Complex::<T>::zero(), |acc, (&k, c)| if k >= 0 { acc + c * z.powi(k as i32) } else { acc + c * z.conj().powi((-k) as i32) })
    }
}

/// `φ ∘ ψ` for a polynomial `φ` and a disk automorphism `ψ`; rational and analytic.
#[derive(Debug, Clone, PartialEq)]
pub struct ComposedSymbol<T: Real> {
    pub phi: AnalyticSymbol<T>,
    pub psi: Automorphism<T>,
}

impl<T: Real> ComposedSymbol<T> {
    pub fn eval(&self, z: Complex<T>) -> Complex<T> {
        self.phi.eval(self.psi.eval(z))
    }

    /// Polynomial agreeing with `φ ∘ ψ` at `nodes`.
    pub fn reinterpolate(&self, nodes: &[DiskPoint<T>]) -> Result<AnalyticSymbol<T>> {
        let values: Vec<Complex<T>> = nodes.iter().map(|p| self.eval(p.value())).collect();
        lagrange_symbol(nodes, &values)
    }
}

impl<T: Real> BoundarySymbol<T> for ComposedSymbol<T> {
    fn eval_boundary(&self, z: Complex<T>) -> Complex<T> {
        self.eval(z)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BasisTag {
    TakenakaMalmquist,
    KernelOrthonormalized,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TTOMatrix<T: Real> {
    pub matrix: CMatrix<T>,
    pub space: ModelSpace<T>,
    pub basis_tag: BasisTag,
}

/// Interpolating polynomial of degree `< n` through `(nodes[i], values[i])`, via Newton's form.
pub fn lagrange_symbol<T: Real>(nodes: &[DiskPoint<T>], values: &[Complex<T>]) -> Result<AnalyticSymbol<T>> {
    let n = nodes.len();
    if n == 0 || values.len() != n {
        return Err(Error::Dim(format!("{n} nodes but {} values", values.len())));
    }
    let x: Vec<Complex<T>> = nodes.iter().map(|p| p.value()).collect();
    let floor = T::epsilon() * T::lit(64.0);
    for i in 0..n {
        for j in i + 1..n {
            if (x[i] - x[j]).norm() <= floor {
                return Err(Error::DuplicateNodes(i, j));
            }
        }
    }
    let mut dd = values.to_vec();
    for level in 1..n {
        for i in (level..n).rev() {
            dd[i] = (dd[i] - dd[i - 1]) / (x[i] - x[i - level]);
        }
    }
    // Expand the Newton form by Horner's scheme on coefficient vectors.
    let mut poly = vec![dd[n - 1]];
    for k in (0..n - 1).rev() {
        let mut next = vec![Complex::<T>::zero(); poly.len() + 1];
        for (d, c) in poly.iter().enumerate() {
            next[d + 1] += c;
            next[d] -= c * x[k];
        }
        next[0] += dd[k];
        poly = next;
    }
    Ok(AnalyticSymbol::new(poly))
}

/// Cholesky data of the normalized conjugate kernels `k̃_{z_i}` at the zeros of `Θ`.
///
/// With `G_ij = <k̃_{z_j}, k̃_{z_i}> = L L^*`, the orthonormal basis `V L^{-*}` gives
/// the kernels coordinates equal to the columns of `L^*`.
#[derive(Debug, Clone)]
pub struct KernelFrame<T: Real> {
    pub factor: CMatrix<T>,
    pub coords: CMatrix<T>,
}

pub fn conjugate_kernel_frame<T: Real>(ms: &ModelSpace<T>) -> Result<KernelFrame<T>> {
    let zeros = ms.theta().zeros();
    let n = zeros.len();
    for i in 0..n {
        for j in i + 1..n {
            if (zeros[i].value() - zeros[j].value()).norm() <= T::lit(1e-10) {
                return Err(Error::RepeatedZeros(i, j));
            }
        }
    }
    let kernels: Vec<_> = zeros.iter().map(|&z| ms.kernel(z, KernelKind::Conjugate)).collect();
    let mut gram = CMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            gram[(i, j)] = kernel_inner(&kernels[j], &kernels[i])?;
        }
    }
    let factor = cholesky_hermitian(&gram, T::epsilon() * T::lit(16.0))?;
    let coords = factor.adjoint();
    Ok(KernelFrame { factor, coords })
}

/// `A_φ^Θ` in the orthonormalized conjugate-kernel basis: `A = L^* diag(φ(z_i)) L^{-*}`.
pub fn build_atto_eigenbasis<T: Real>(theta: &BlaschkeProduct<T>, phi: &AnalyticSymbol<T>) -> Result<TTOMatrix<T>> {
    let space = ModelSpace::new(theta.clone());
    let frame = conjugate_kernel_frame(&space)?;
    let d: Vec<Complex<T>> = theta.zeros().iter().map(|z| phi.eval(z.value())).collect();
    let l_inv_adj = lower_inverse(&frame.factor).adjoint();
    let matrix = &(&frame.coords * &CMatrix::from_diag(&d)) * &l_inv_adj;
    Ok(TTOMatrix { matrix, space, basis_tag: BasisTag::KernelOrthonormalized })
}

/// `A_ij = <φ e_j, e_i>` in the Takenaka–Malmquist basis by circle quadrature.
pub fn build_tto_tm_quadrature<T: Real, S: BoundarySymbol<T> + ?Sized>(
    theta: &BlaschkeProduct<T>,
    phi: &S,
    grid: &QuadratureGrid<T>,
) -> TTOMatrix<T> {
    let space = ModelSpace::new(theta.clone());
    let basis = space.tm_basis();
    let n = basis.dim();
    let symbol = grid.sample(|z| phi.eval_boundary(z));
    let e: Vec<Vec<Complex<T>>> = (0..n).map(|k| grid.sample(|z| basis.eval(k, z))).collect();
    let phi_e: Vec<Vec<Complex<T>>> = e.iter().map(|ek| ek.iter().zip(&symbol).map(|(a, s)| a * s).collect()).collect();
    let matrix = CMatrix::from_fn(n, n, |i, j| circle_inner(&phi_e[j], &e[i]));
    TTOMatrix { matrix, space, basis_tag: BasisTag::TakenakaMalmquist }
}

/// Matrix of the compressed shift `A_z` in the Takenaka–Malmquist basis:
/// `a_i` on the diagonal and `sqrt(1-|a_i|²) sqrt(1-|a_j|²) prod_{j<k<i} (-conj(a_k))` below it.
pub fn compressed_shift_tm<T: Real>(theta: &BlaschkeProduct<T>) -> CMatrix<T> {
    let a = theta.zero_values();
    let n = a.len();
    let w: Vec<T> = a.iter().map(|z| (T::one() - z.norm_sqr()).sqrt()).collect();
    let mut s = CMatrix::zeros(n, n);
    for j in 0..n {
        s[(j, j)] = a[j];
        let mut run = Complex::<T>::one();
        for i in j + 1..n {
            s[(i, j)] = run * w[i] * w[j];
            run *= -a[i].conj();
        }
    }
    s
}

/// Analytic `A_φ = φ(A_z)` in the Takenaka–Malmquist basis; exact, repeated zeros allowed.
pub fn build_atto_tm<T: Real>(theta: &BlaschkeProduct<T>, phi: &AnalyticSymbol<T>) -> TTOMatrix<T> {
    let s = compressed_shift_tm(theta);
    let n = s.rows();
    let matrix = phi
        .coeffs()
        .iter()
        .rev()
        .fold(CMatrix::zeros(n, n), |acc, c| &(&acc * &s) + &CMatrix::identity(n).scale(*c));
    TTOMatrix { matrix, space: ModelSpace::new(theta.clone()), basis_tag: BasisTag::TakenakaMalmquist }
}

/// `(Θ ∘ ψ, φ ∘ ψ)`; the operators `A_φ^Θ` and `A_{φ∘ψ}^{Θ∘ψ}` are unitarily equivalent.
pub fn transport<T: Real>(
    theta: &BlaschkeProduct<T>,
    phi: &AnalyticSymbol<T>,
    psi: &Automorphism<T>,
) -> (BlaschkeProduct<T>, ComposedSymbol<T>) {
    (theta.compose(psi), ComposedSymbol { phi: phi.clone(), psi: *psi })
}

/// The constant symbol `1`.
pub fn unit_symbol<T: Real>() -> AnalyticSymbol<T> {
    AnalyticSymbol::constant(Complex::one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modelspace::{conjugation_matrix, tm_coords};
    use crate::numkit::{eig_dense, phi_distance, spectral_distance};
    use crate::sampling::{complex_normal, random_disk_point, random_separated_points, rng_from_seed, SampleRng};
    use crate::scalar::cplx;
    use std::f64::consts::{FRAC_1_SQRT_2, SQRT_2};

    fn dp(z: Complex<f64>) -> DiskPoint<f64> {
        DiskPoint::new(z).unwrap()
    }

    fn random_theta(rng: &mut SampleRng, n: usize) -> BlaschkeProduct<f64> {
        BlaschkeProduct::from_complex_zeros(&random_separated_points::<f64>(rng, n, 0.9, 0.05)).unwrap()
    }

    fn random_poly(rng: &mut SampleRng, degree: usize) -> AnalyticSymbol<f64> {
        AnalyticSymbol::new((0..=degree).map(|_| complex_normal(rng)).collect())
    }

    fn example_theta() -> BlaschkeProduct<f64> {
        BlaschkeProduct::from_complex_zeros(&[cplx(FRAC_1_SQRT_2, 0.0), cplx(0.0, 0.0)]).unwrap()
    }

    fn sorted_spectrum(m: &CMatrix<f64>) -> Vec<Complex<f64>> {
        eig_dense(m, 1e-8).unwrap().values
    }

    #[test]
    fn lagrange_worked_example() {
        let nodes = [dp(cplx(FRAC_1_SQRT_2, 0.0)), DiskPoint::origin()];
        let phi = lagrange_symbol(&nodes, &[cplx(1.0, 0.0), cplx(3.0, 0.0)]).unwrap();
        assert_eq!(phi.degree(), 1);
        assert!((phi.coeffs()[0] - cplx(3.0, 0.0)).norm() < 1e-14);
        assert!((phi.coeffs()[1] - cplx(-2.0 * SQRT_2, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn lagrange_constant_and_duplicates() {
        let nodes = [dp(cplx(0.1, 0.2)), dp(cplx(-0.3, 0.0)), dp(cplx(0.5, -0.5))];
        let phi = lagrange_symbol(&nodes, &[cplx(2.0, 1.0); 3]).unwrap();
        assert_eq!(phi.degree(), 0);
        assert!((phi.coeffs()[0] - cplx(2.0, 1.0)).norm() < 1e-14);
        let dup = [nodes[0], nodes[1], nodes[0]];
        assert_eq!(lagrange_symbol(&dup, &[cplx(1.0, 0.0); 3]), Err(Error::DuplicateNodes(0, 2)));
    }

    #[test]
    fn lagrange_random_residuals() {
        let mut rng = rng_from_seed(50);
        for _ in 0..20 {
            let pts = random_separated_points::<f64>(&mut rng, 5, 0.9, 0.05);
            let nodes: Vec<_> = pts.iter().map(|&z| dp(z)).collect();
            let vals: Vec<Complex<f64>> = (0..5).map(|_| complex_normal(&mut rng)).collect();
            let phi = lagrange_symbol(&nodes, &vals).unwrap();
            for (z, v) in pts.iter().zip(&vals) {
                assert!((phi.eval(*z) - v).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn eigenbasis_worked_example_spectrum() {
        let phi = AnalyticSymbol::new(vec![cplx(3.0, 0.0), cplx(-2.0 * SQRT_2, 0.0)]);
        let a = build_atto_eigenbasis(&example_theta(), &phi).unwrap();
        let spec = sorted_spectrum(&a.matrix);
        assert!(spectral_distance(&spec, &[cplx(1.0, 0.0), cplx(3.0, 0.0)]) < 1e-12);
        assert_eq!(a.basis_tag, BasisTag::KernelOrthonormalized);
    }

    #[test]
    fn eigenbasis_constant_symbol_is_scalar() {
        let mut rng = rng_from_seed(51);
        let theta = random_theta(&mut rng, 4);
        let a = build_atto_eigenbasis(&theta, &AnalyticSymbol::constant(cplx(2.5, -1.0))).unwrap();
        let want = CMatrix::identity(4).scale(cplx(2.5, -1.0));
        assert!((&a.matrix - &want).frobenius_norm() < 1e-12);
    }

    #[test]
    fn eigenbasis_spectrum_matches_symbol_values() {
        let mut rng = rng_from_seed(52);
        for _ in 0..10 {
            let theta = random_theta(&mut rng, 5);
            let phi = random_poly(&mut rng, 3);
            let a = build_atto_eigenbasis(&theta, &phi).unwrap();
            let want: Vec<_> = theta.zero_values().iter().map(|&z| phi.eval(z)).collect();
            assert!(spectral_distance(&sorted_spectrum(&a.matrix), &want) < 1e-9);
        }
    }

    #[test]
    fn eigenbasis_rejects_repeated_zeros() {
        let theta = BlaschkeProduct::<f64>::monomial(2);
        assert!(matches!(build_atto_eigenbasis(&theta, &unit_symbol()), Err(Error::RepeatedZeros(0, 1))));
    }

    #[test]
    fn monomial_shift() {
        let theta = BlaschkeProduct::<f64>::monomial(3);
        let z = AnalyticSymbol::new(vec![cplx(0.0, 0.0), cplx(1.0, 0.0)]);
        let a = build_tto_tm_quadrature(&theta, &z, &QuadratureGrid::default());
        let want = CMatrix::from_real_rows(&[&[0.0, 0.0, 0.0], &[1.0, 0.0, 0.0], &[0.0, 1.0, 0.0]]).unwrap();
        assert!((&a.matrix - &want).frobenius_norm() < 1e-14);
    }

    #[test]
    fn repeated_zero_closed_form() {
        let (alpha, beta, r) = (cplx(0.7, -0.2), cplx(-0.4, 1.1), 0.35);
        let theta = BlaschkeProduct::from_complex_zeros(&[cplx(0.0, 0.0), cplx(0.0, 0.0), cplx(r, 0.0)]).unwrap();
        let phi = AnalyticSymbol::new(vec![cplx(0.0, 0.0), alpha, beta]);
        let a = build_tto_tm_quadrature(&theta, &phi, &QuadratureGrid::default());
        let s = (1.0 - r * r).sqrt();
        let zero = cplx(0.0, 0.0);
        let want = CMatrix::from_rows(&[
            vec![zero, zero, zero],
            vec![alpha, zero, zero],
            vec![beta * s, (alpha + beta * r) * s, (alpha + beta * r) * r],
        ])
        .unwrap();
        assert!((&a.matrix - &want).frobenius_norm() < 1e-12);
    }

    #[test]
    fn routes_agree() {
        let mut rng = rng_from_seed(53);
        let grid = QuadratureGrid::default();
        for n in 2..=5 {
            let theta = random_theta(&mut rng, n);
            let phi = random_poly(&mut rng, n - 1);
            let a = build_atto_eigenbasis(&theta, &phi).unwrap();
            let b = build_tto_tm_quadrature(&theta, &phi, &grid);
            assert!(spectral_distance(&sorted_spectrum(&a.matrix), &sorted_spectrum(&b.matrix)) < 1e-9);
            if n == 3 {
                assert!(phi_distance(&a.matrix, &b.matrix).unwrap() < 1e-9);
            }
        }
    }

    #[test]
    fn linearity_and_adjoint() {
        let mut rng = rng_from_seed(54);
        let grid = QuadratureGrid::default();
        let trig = |rng: &mut SampleRng| TrigSymbol::new((-2..=3).map(|k| (k, complex_normal::<f64, _>(rng))).collect());
        for _ in 0..5 {
            let theta = random_theta(&mut rng, 4);
            let (f, g) = (trig(&mut rng), trig(&mut rng));
            let af = build_tto_tm_quadrature(&theta, &f, &grid).matrix;
            let ag = build_tto_tm_quadrature(&theta, &g, &grid).matrix;
            let afg = build_tto_tm_quadrature(&theta, &f.add(&g), &grid).matrix;
            assert!((&afg - &(&af + &ag)).frobenius_norm() < 1e-12);
            let afc = build_tto_tm_quadrature(&theta, &f.conj(), &grid).matrix;
            assert!((&afc - &af.adjoint()).frobenius_norm() < 1e-10);
        }
    }

    #[test]
    fn complex_symmetry_in_tm_basis() {
        let mut rng = rng_from_seed(55);
        let grid = QuadratureGrid::default();
        for _ in 0..5 {
            let theta = random_theta(&mut rng, 4);
            let phi = TrigSymbol::new((-1..=2).map(|k| (k, complex_normal::<f64, _>(&mut rng))).collect());
            let a = build_tto_tm_quadrature(&theta, &phi, &grid);
            let s = conjugation_matrix(&a.space, &a.space.tm_basis(), &grid);
            let sym = &(&s * &a.matrix.transpose()) * &s.adjoint();
            assert!((&sym - &a.matrix).frobenius_norm() < 1e-9);
        }
    }

    #[test]
    fn conjugate_kernels_are_eigenvectors() {
        let mut rng = rng_from_seed(56);
        let theta = random_theta(&mut rng, 5);
        let phi = random_poly(&mut rng, 4);
        let a = build_tto_tm_quadrature(&theta, &phi, &QuadratureGrid::default());
        for &z in theta.zeros() {
            let c = tm_coords(&a.space, &a.space.kernel(z, KernelKind::Conjugate)).unwrap();
            let res = &a.matrix.mul_vec(&c) - &c.scale(phi.eval(z.value()));
            assert!(res.norm() < 1e-9);
        }
    }

    #[test]
    fn kernel_frame_coords_are_unit() {
        let mut rng = rng_from_seed(57);
        let ms = ModelSpace::new(random_theta(&mut rng, 4));
        let frame = conjugate_kernel_frame(&ms).unwrap();
        for c in frame.coords.columns() {
            assert!((c.norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn transport_identity_and_zeros() {
        let mut rng = rng_from_seed(58);
        let theta = random_theta(&mut rng, 3);
        let phi = random_poly(&mut rng, 2);
        let (t_id, p_id) = transport(&theta, &phi, &Automorphism::identity());
        for (a, b) in t_id.zero_values().iter().zip(theta.zero_values()) {
            assert!((a - b).norm() < 1e-14);
        }
        assert!((p_id.eval(cplx(0.3, 0.2)) - phi.eval(cplx(0.3, 0.2))).norm() < 1e-14);

        let psi = Automorphism::new(dp(random_disk_point(&mut rng, 0.7)), cplx(0.6, 0.8)).unwrap();
        let (t2, _) = transport(&theta, &phi, &psi);
        let inv = psi.inverse();
        for (a, b) in t2.zeros().iter().zip(theta.zeros()) {
            assert!((a.value() - inv.apply(*b).value()).norm() < 1e-12);
        }
    }

    #[test]
    fn transport_preserves_spectrum() {
        let mut rng = rng_from_seed(59);
        let grid = QuadratureGrid::default();
        for n in [3, 4] {
            let theta = random_theta(&mut rng, n);
            let phi = random_poly(&mut rng, n - 1);
            let psi = Automorphism::new(dp(random_disk_point(&mut rng, 0.5)), cplx(0.0, 1.0)).unwrap();
            let (t2, p2) = transport(&theta, &phi, &psi);
            let before = build_atto_eigenbasis(&theta, &phi).unwrap().matrix;
            let after = build_atto_eigenbasis(&t2, &p2.reinterpolate(t2.zeros()).unwrap()).unwrap().matrix;
            let quad = build_tto_tm_quadrature(&t2, &p2, &grid).matrix;
            let sb = sorted_spectrum(&before);
            assert!(spectral_distance(&sb, &sorted_spectrum(&after)) < 1e-9);
            assert!(spectral_distance(&sb, &sorted_spectrum(&quad)) < 1e-9);
            if n == 3 {
                assert!(phi_distance(&before, &after).unwrap() < 1e-9);
                assert!(phi_distance(&before, &quad).unwrap() < 1e-9);
            }
        }
    }

    #[test]
    fn compressed_shift_matches_quadrature() {
        let mut rng = rng_from_seed(60);
        let grid = QuadratureGrid::default();
        let z = AnalyticSymbol::new(vec![cplx(0.0, 0.0), cplx(1.0, 0.0)]);
        for n in 1..=6 {
            let theta = random_theta(&mut rng, n);
            let exact = compressed_shift_tm(&theta);
            let quad = build_tto_tm_quadrature(&theta, &z, &grid).matrix;
            assert!((&exact - &quad).frobenius_norm() < 1e-12, "n = {n}");
            let phi = random_poly(&mut rng, n + 1);
            let a = build_atto_tm(&theta, &phi).matrix;
            let b = build_tto_tm_quadrature(&theta, &phi, &grid).matrix;
            assert!((&a - &b).frobenius_norm() < 1e-11);
        }
    }

    #[test]
    fn exact_route_near_boundary_zero() {
        let r = 1.0 / (1.0 + 1e-4f64).sqrt();
        let theta = BlaschkeProduct::from_complex_zeros(&[cplx(0.0, 0.0), cplx(0.0, 0.0), cplx(r, 0.0)]).unwrap();
        let (alpha, beta) = (cplx(1.0, 0.0), cplx(2.0, 0.0));
        let a = build_atto_tm(&theta, &AnalyticSymbol::new(vec![cplx(0.0, 0.0), alpha, beta])).matrix;
        let s = (1.0 - r * r).sqrt();
        assert!((a[(2, 0)] - beta * s).norm() < 1e-14);
        assert!((a[(2, 1)] - (alpha + beta * r) * s).norm() < 1e-14);
        assert!((a[(2, 2)] - (alpha + beta * r) * r).norm() < 1e-14);
    }
}
