//! Hessenberg reduction, shifted complex QR, and inverse-iteration eigenvectors.

use num_complex::Complex;
use num_traits::{One, Zero};

use super::matrix::{CMatrix, CVector};
use crate::error::{Error, Result};
use crate::scalar::{lex_cmp, real, Real};

/// Largest dimension the dense routines are tuned for.
pub const MAX_DIM: usize = 16;

/// Eigenvalues and unit eigenvectors of a square matrix, sorted by (re, im).
#[derive(Debug, Clone)]
pub struct EigenSystem<T: Real> {
    pub values: Vec<Complex<T>>,
    pub vectors: Vec<CVector<T>>,
    /// Smallest pairwise eigenvalue distance (`+inf` for 1x1).
    pub min_gap: T,
    /// `min_gap > 1e-8 ||M||`; false routes callers to repeated-eigenvalue handling.
    pub distinct: bool,
    /// Frobenius norm of the input.
    pub matrix_norm: T,
}

impl<T: Real> EigenSystem<T> {
    pub fn dim(&self) -> usize {
        self.values.len()
    }

    /// Matrix whose columns are the eigenvectors.
    pub fn vector_matrix(&self) -> CMatrix<T> {
        CMatrix::from_columns(&self.vectors)
    }

    /// Largest `||M v - lambda v||` over the stored pairs.
    pub fn max_residual(&self, m: &CMatrix<T>) -> T {
        self.values
            .iter()
            .zip(&self.vectors)
            .map(|(l, v)| (&m.mul_vec(v) - &v.scale(*l)).norm())
            .fold(T::zero(), T::max)
    }
}

/// Complex Givens rotation `G = [[c, s], [-conj(s), c]]` with `G (x, y)^t = (r, 0)^t`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Givens<T: Real> {
    pub c: T,
    pub s: Complex<T>,
}

impl<T: Real> Givens<T> {
    pub fn zeroing(x: Complex<T>, y: Complex<T>) -> Self {
        let ax = x.norm();
        let r = ax.hypot(y.norm());
        if r == T::zero() {
            return Self { c: T::one(), s: Complex::zero() };
        }
        if ax == T::zero() {
            return Self { c: T::zero(), s: Complex::one() };
        }
        Self { c: ax / r, s: (x / ax) * y.conj() / r }
    }

    /// `A <- G A` on rows `p, q`, columns `cols`.
    pub fn apply_rows(&self, a: &mut CMatrix<T>, p: usize, q: usize, cols: std::ops::Range<usize>) {
        for j in cols {
            let (t1, t2) = (a[(p, j)], a[(q, j)]);
            a[(p, j)] = t1 * self.c + self.s * t2;
            a[(q, j)] = -self.s.conj() * t1 + t2 * self.c;
        }
    }

    /// `A <- A G^*` on columns `p, q`, rows `rows`.
    pub fn apply_cols(&self, a: &mut CMatrix<T>, p: usize, q: usize, rows: std::ops::Range<usize>) {
        for i in rows {
            let (t1, t2) = (a[(i, p)], a[(i, q)]);
            a[(i, p)] = t1 * self.c + t2 * self.s.conj();
            a[(i, q)] = -t1 * self.s + t2 * self.c;
        }
    }
}

/// Complex Schur decomposition `A = Q R Q^*` with `R` upper triangular.
pub fn complex_schur<T: Real>(a: &CMatrix<T>) -> Result<(CMatrix<T>, CMatrix<T>)> {
    if !a.is_square() {
        return Err(Error::Dim("Schur decomposition needs a square matrix".into()));
    }
    let n = a.rows();
    let mut h = a.clone();
    let mut q = hessenberg(&mut h);
    if n == 1 {
        return Ok((q, h));
    }
    let eps = T::epsilon();
    let scale = a.frobenius_norm().max(T::min_positive_value());
    let max_iter = 60 * n;
    let mut hi = n - 1;
    let mut iter = 0usize;
    let mut total = 0usize;
    while hi > 0 {
        let mut l = hi;
        while l > 0 {
            let s = h[(l, l)].norm() + h[(l - 1, l - 1)].norm();
            let s = if s == T::zero() { scale } else { s };
            if h[(l, l - 1)].norm() <= eps * s {
                h[(l, l - 1)] = Complex::zero();
                break;
            }
            l -= 1;
        }
        if l == hi {
            hi -= 1;
            iter = 0;
            continue;
        }
        iter += 1;
        total += 1;
        if iter > max_iter {
            return Err(Error::NonConverged(format!(
                "complex QR stalled at index {hi} after {total} sweeps"
            )));
        }
        let mu = if iter % 11 == 10 {
            h[(hi, hi)] + real(h[(hi, hi - 1)].norm() * T::lit(0.75))
        } else {
            wilkinson_shift(h[(hi - 1, hi - 1)], h[(hi - 1, hi)], h[(hi, hi - 1)], h[(hi, hi)])
        };
        for k in l..=hi {
            h[(k, k)] -= mu;
        }
        let mut rots = Vec::with_capacity(hi - l);
        for k in l..hi {
            let g = Givens::zeroing(h[(k, k)], h[(k + 1, k)]);
            g.apply_rows(&mut h, k, k + 1, k..n);
            h[(k + 1, k)] = Complex::zero();
            rots.push(g);
        }
        for (idx, g) in rots.iter().enumerate() {
            let k = l + idx;
            g.apply_cols(&mut h, k, k + 1, 0..(k + 2).min(hi + 1));
            g.apply_cols(&mut q, k, k + 1, 0..n);
        }
        for k in l..=hi {
            h[(k, k)] += mu;
        }
    }
    for i in 0..n {
        for j in 0..i {
            h[(i, j)] = Complex::zero();
        }
    }
    Ok((q, h))
}

/// Reduces `h` to upper Hessenberg form `Q^* A Q` in place by Householder
/// reflections and returns `Q`.
fn hessenberg<T: Real>(h: &mut CMatrix<T>) -> CMatrix<T> {
    let n = h.rows();
    let mut q = CMatrix::identity(n);
    for k in 0..n.saturating_sub(2) {
        let alpha_norm = (k + 1..n).fold(T::zero(), |acc, i| acc + h[(i, k)].norm_sqr()).sqrt();
        if alpha_norm == T::zero() {
            continue;
        }
        let x0 = h[(k + 1, k)];
        let phase = if x0.norm() == T::zero() { Complex::one() } else { x0 / x0.norm() };
        let mut v: Vec<Complex<T>> = (k + 1..n).map(|i| h[(i, k)]).collect();
        v[0] += phase * alpha_norm;
        let vnorm2 = v.iter().fold(T::zero(), |acc, z| acc + z.norm_sqr());
        let two = T::lit(2.0) / vnorm2;
        for j in 0..n {
            let dot = v
                .iter()
                .enumerate()
                .fold(Complex::zero(), |acc, (r, vr)| acc + vr.conj() * h[(k + 1 + r, j)]);
            let f = dot * two;
            for (r, vr) in v.iter().enumerate() {
                h[(k + 1 + r, j)] -= vr * f;
            }
        }
        for mat in [&mut *h, &mut q] {
            for i in 0..n {
                let dot = v
                    .iter()
                    .enumerate()
                    .fold(Complex::zero(), |acc, (r, vr)| acc + mat[(i, k + 1 + r)] * vr);
                let f = dot * two;
                for (r, vr) in v.iter().enumerate() {
                    mat[(i, k + 1 + r)] -= f * vr.conj();
                }
            }
        }
        for i in k + 2..n {
            h[(i, k)] = Complex::zero();
        }
    }
    q
}

fn wilkinson_shift<T: Real>(a: Complex<T>, b: Complex<T>, c: Complex<T>, d: Complex<T>) -> Complex<T> {
    let half = T::lit(0.5);
    let m = (a + d) * half;
    let disc = (((a - d) * half).powi(2) + b * c).sqrt();
    let (l1, l2) = (m + disc, m - disc);
    if (l1 - d).norm() <= (l2 - d).norm() {
        l1
    } else {
        l2
    }
}

/// Eigenvector of upper-triangular `r` for its `k`-th diagonal entry, by back substitution.
fn triangular_eigenvector<T: Real>(r: &CMatrix<T>, k: usize, floor: T) -> CVector<T> {
    let n = r.rows();
    let lambda = r[(k, k)];
    let mut y = vec![Complex::zero(); n];
    y[k] = Complex::one();
    for j in (0..k).rev() {
        let s = (j + 1..=k).fold(Complex::<T>::zero(), |acc, m| acc + r[(j, m)] * y[m]);
        let mut d = r[(j, j)] - lambda;
        if d.norm() < floor {
            d = real(floor);
        }
        y[j] = -s / d;
    }
    CVector::new(y).normalized()
}

/// Eigendecomposition of a small dense matrix.
///
/// Eigenvalues come from shifted QR on the Hessenberg form; each eigenvector is
/// seeded from the Schur form and polished by inverse iteration on `M`. Vectors
/// are unit length with their first largest-modulus entry real positive.
pub fn eig_dense<T: Real>(m: &CMatrix<T>, tol: T) -> Result<EigenSystem<T>> {
    if !m.is_square() {
        return Err(Error::Dim(format!("{}x{} matrix is not square", m.rows(), m.cols())));
    }
    if m.rows() > MAX_DIM {
        return Err(Error::Dim(format!("dimension {} exceeds {MAX_DIM}", m.rows())));
    }
    let n = m.rows();
    let norm = m.frobenius_norm();
    let (q, r) = complex_schur(m)?;
    let floor = T::epsilon() * norm.max(T::min_positive_value());
    let mut pairs: Vec<(Complex<T>, CVector<T>)> = Vec::with_capacity(n);
    for k in 0..n {
        let lambda = r[(k, k)];
        let seed = q.mul_vec(&triangular_eigenvector(&r, k, floor));
        let shifted = m.shifted(-lambda);
        let residual = |v: &CVector<T>| shifted.mul_vec(v).norm();
        let mut best = seed.clone();
        let mut best_res = residual(&best);
        let lu = shifted.lu()?;
        let mut v = seed;
        for _ in 0..2 {
            let w = lu.solve_regularized(&v, floor).normalized();
            if !w.is_finite() {
                break;
            }
            let res = residual(&w);
            if res < best_res {
                best = w.clone();
                best_res = res;
            }
            v = w;
        }
        pairs.push((lambda, best.gauge_fixed()));
    }
    pairs.sort_by(|a, b| lex_cmp(&a.0, &b.0));
    let values: Vec<Complex<T>> = pairs.iter().map(|p| p.0).collect();
    let vectors: Vec<CVector<T>> = pairs.into_iter().map(|p| p.1).collect();
    let min_gap = min_pairwise_gap(&values);
    let system = EigenSystem {
        distinct: n == 1 || min_gap > T::lit(1e-8) * norm,
        values,
        vectors,
        min_gap,
        matrix_norm: norm,
    };
    let worst = system.max_residual(m);
    if worst > tol * norm.max(T::one()) {
        return Err(Error::NonConverged(format!(
            "eigenpair residual {:.3e} exceeds tolerance",
            worst.to_f64_lossy()
        )));
    }
    Ok(system)
}

pub fn min_pairwise_gap<T: Real>(values: &[Complex<T>]) -> T {
    let mut gap = T::infinity();
    for i in 0..values.len() {
        for j in i + 1..values.len() {
            gap = gap.min((values[i] - values[j]).norm());
        }
    }
    gap
}

/// Distance between two spectra as multisets: the smallest achievable
/// maximum deviation over matchings (exhaustive up to 8 entries, greedy above).
pub fn spectral_distance<T: Real>(a: &[Complex<T>], b: &[Complex<T>]) -> T {
    if a.len() != b.len() {
        return T::infinity();
    }
    let n = a.len();
    if n <= 8 {
        let mut best = T::infinity();
        let mut perm: Vec<usize> = (0..n).collect();
        permute(&mut perm, 0, &mut |p| {
            let d = p.iter().enumerate().fold(T::zero(), |acc, (i, &j)| acc.max((a[i] - b[j]).norm()));
            if d < best {
                best = d;
            }
        });
        best
    } else {
        let mut used = vec![false; n];
        let mut worst = T::zero();
        for x in a {
            let (j, d) = b
                .iter()
                .enumerate()
                .filter(|(j, _)| !used[*j])
                .map(|(j, y)| (j, (x - y).norm()))
                .min_by(|p, q| p.1.partial_cmp(&q.1).unwrap())
                .unwrap();
            used[j] = true;
            worst = worst.max(d);
        }
        worst
    }
}

pub(crate) fn permute(p: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == p.len() {
        visit(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permute(p, k + 1, visit);
        p.swap(k, i);
    }
}
