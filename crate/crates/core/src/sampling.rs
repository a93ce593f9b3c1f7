//! Seeded random generators for test matrices, unitaries, and disk points.

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::numkit::{CMatrix, CVector};
use crate::scalar::Real;

pub type SampleRng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Per-task seed derived from a base seed (splitmix64 step), so batch runs are
/// reproducible independent of how tasks are scheduled.
pub fn derive_seed(base: u64, index: u64) -> u64 {
    let mut z = base.wrapping_add(index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Standard complex normal: `E|z|^2 = 1`.
pub fn complex_normal<T: Real, R: Rng + ?Sized>(rng: &mut R) -> Complex<T> {
    let re: f64 = StandardNormal.sample(rng);
    let im: f64 = StandardNormal.sample(rng);
    let s = std::f64::consts::FRAC_1_SQRT_2;
    Complex::new(T::lit(re * s), T::lit(im * s))
}

pub fn random_matrix<T: Real>(rng: &mut impl Rng, n: usize) -> CMatrix<T> {
    CMatrix::from_fn(n, n, |_, _| complex_normal(rng))
}

/// `(A + A^t) / 2` for a matrix `A` of independent standard complex normals.
pub fn random_symmetric<T: Real>(rng: &mut impl Rng, n: usize) -> CMatrix<T> {
    let a = random_matrix::<T>(rng, n);
    let half = T::lit(0.5);
    CMatrix::from_fn(n, n, |i, j| (a[(i, j)] + a[(j, i)]) * half)
}

pub fn random_vector<T: Real>(rng: &mut impl Rng, n: usize) -> CVector<T> {
    CVector::new((0..n).map(|_| complex_normal(rng)).collect())
}

/// Haar-distributed unitary: Gram-Schmidt on a Ginibre matrix (R gets a
/// positive diagonal, which is the phase correction Haar measure needs).
pub fn haar_unitary<T: Real>(rng: &mut impl Rng, n: usize) -> CMatrix<T> {
    loop {
        let g = random_matrix::<T>(rng, n);
        let mut cols: Vec<CVector<T>> = Vec::with_capacity(n);
        let mut ok = true;
        for j in 0..n {
            let mut v = g.column(j);
            for _ in 0..2 {
                for q in &cols {
                    let p = v.inner(q);
                    v = &v - &q.scale(p);
                }
            }
            if v.norm() < T::lit(1e-6) {
                ok = false;
                break;
            }
            cols.push(v.normalized());
        }
        if ok {
            return CMatrix::from_columns(&cols);
        }
    }
}

/// Uniform point in the closed disk of the given radius.
pub fn random_disk_point<T: Real>(rng: &mut impl Rng, radius: f64) -> Complex<T> {
    let r = radius * rng.random::<f64>().sqrt();
    let t = std::f64::consts::TAU * rng.random::<f64>();
    Complex::new(T::lit(r * t.cos()), T::lit(r * t.sin()))
}

/// `n` points with `|z| <= radius` and pairwise distance at least `gap`.
pub fn random_separated_points<T: Real>(rng: &mut impl Rng, n: usize, radius: f64, gap: f64) -> Vec<Complex<T>> {
    let mut pts: Vec<Complex<T>> = Vec::with_capacity(n);
    while pts.len() < n {
        let z = random_disk_point::<T>(rng, radius);
        if pts.iter().all(|w| (z - w).norm().to_f64_lossy() >= gap) {
            pts.push(z);
        }
    }
    pts
}
