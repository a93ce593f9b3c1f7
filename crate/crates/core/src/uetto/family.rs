//! The equilateral family: unit eigenvectors with all pairwise inner products
//! equal to `g`, whose dual vectors have a strictly smaller common angle.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::numkit::{min_pairwise_gap, CMatrix};
use crate::scalar::{real, Real};

#[derive(Debug, Clone, PartialEq)]
pub struct CounterexampleFamily<T: Real> {
    n: usize,
    g: T,
    eigenvalues: Vec<Complex<T>>,
}

impl<T: Real> CounterexampleFamily<T> {
    pub fn new(n: usize, g: T, eigenvalues: Vec<Complex<T>>) -> Result<Self> {
        if n < 2 {
            return Err(Error::Dim(format!("family needs n >= 2, got {n}")));
        }
        if eigenvalues.len() != n {
            return Err(Error::Dim(format!("{} eigenvalues for n = {n}", eigenvalues.len())));
        }
        if !(g > T::zero() && g < T::one()) {
            return Err(Error::HypothesisViolation(format!("g = {g} is not in (0, 1)")));
        }
        if min_pairwise_gap(&eigenvalues) <= T::zero() {
            return Err(Error::HypothesisViolation("eigenvalues must be distinct".into()));
        }
        Ok(Self { n, g, eigenvalues })
    }

    /// Eigenvalues `1, 2, ..., n`.
    pub fn standard(n: usize, g: T) -> Result<Self> {
        Self::new(n, g, (1..=n).map(|k| real(T::lit(k as f64))).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn g(&self) -> T {
        self.g
    }

    pub fn eigenvalues(&self) -> &[Complex<T>] {
        &self.eigenvalues
    }

    /// `G`: ones on the diagonal, `g` elsewhere.
    pub fn gram(&self) -> CMatrix<T> {
        let g = self.g;
        CMatrix::from_fn(self.n, self.n, |i, j| real(if i == j { T::one() } else { g }))
    }

    /// `1 - g` (multiplicity `n - 1`) and `1 + (n-1) g`.
    pub fn gram_eigenvalues(&self) -> Vec<T> {
        let mut v = vec![T::one() - self.g; self.n - 1];
        v.push(T::one() + T::lit((self.n - 1) as f64) * self.g);
        v
    }

    /// The common modulus `g / (1 + (n-2) g)` of the dual inner products.
    pub fn dual_inner(&self) -> T {
        self.g / (T::one() + T::lit((self.n - 2) as f64) * self.g)
    }
}

/// `M = X D X^{-1}` together with `X = sqrt(G)`, `W = X^{-1}` and the unit
/// dual vectors `Y` (normalized columns of `W`), all from closed forms.
#[derive(Debug, Clone, PartialEq)]
pub struct FamilyMatrices<T: Real> {
    pub m: CMatrix<T>,
    pub x: CMatrix<T>,
    pub y: CMatrix<T>,
    pub w: CMatrix<T>,
}

pub fn gen_family<T: Real>(spec: &CounterexampleFamily<T>) -> FamilyMatrices<T> {
    let n = spec.n;
    let nf = T::lit(n as f64);
    let g = spec.g;
    let s1 = (T::one() - g).sqrt();
    let s2 = (T::one() + (nf - T::one()) * g).sqrt();
    let pick = |diag: T, off: T| CMatrix::from_fn(n, n, move |i, j| real(if i == j { diag } else { off }));

    let x = pick(((nf - T::one()) * s1 + s2) / nf, (s2 - s1) / nf);
    let w = pick(((nf - T::one()) / s1 + T::one() / s2) / nf, (T::one() / s2 - T::one() / s1) / nf);
    let yden = nf * (T::one() + (nf - T::lit(2.0)) * g).sqrt();
    let y = pick((s1 + (nf - T::one()) * s2) / yden, (s1 - s2) / yden);
    let d = CMatrix::from_diag(&spec.eigenvalues);
    let m = &(&x * &d) * &w;
    FamilyMatrices { m, x, y, w }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkit::eig_dense;

    fn family(n: usize) -> (CounterexampleFamily<f64>, FamilyMatrices<f64>) {
        let spec = CounterexampleFamily::standard(n, 0.5).unwrap();
        let mats = gen_family(&spec);
        (spec, mats)
    }

    #[test]
    fn square_root_and_inverse() {
        for n in 2..=7 {
            let (spec, f) = family(n);
            assert!((&(&f.x * &f.x) - &spec.gram()).max_abs() < 1e-12);
            assert!((&(&f.x * &f.w) - &CMatrix::identity(n)).max_abs() < 1e-12);
        }
    }

    #[test]
    fn gram_spectrum() {
        let (spec, _) = family(4);
        let eig = eig_dense(&spec.gram(), 1e-12).unwrap();
        let mut got: Vec<f64> = eig.values.iter().map(|z| z.re).collect();
        got.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for (a, b) in got.iter().zip([0.5, 0.5, 0.5, 2.5]) {
            assert!((a - b).abs() < 1e-12);
        }
        assert_eq!(spec.gram_eigenvalues(), vec![0.5, 0.5, 0.5, 2.5]);
    }

    #[test]
    fn columns_are_unit_and_dual() {
        for n in 2..=6 {
            let (spec, f) = family(n);
            let xs = f.x.columns();
            let ys = f.y.columns();
            for i in 0..n {
                assert!((xs[i].norm() - 1.0).abs() < 1e-12);
                assert!((ys[i].norm() - 1.0).abs() < 1e-12);
                for j in 0..n {
                    if i != j {
                        assert!((xs[i].inner(&xs[j]).norm() - 0.5).abs() < 1e-12);
                        assert!((ys[i].inner(&ys[j]).norm() - spec.dual_inner()).abs() < 1e-12);
                        // y_i is orthogonal to every other eigenvector
                        assert!(ys[i].inner(&xs[j]).norm() < 1e-12);
                    }
                }
            }
        }
    }

    #[test]
    fn witness_pair() {
        let (spec, f) = family(4);
        let xs = f.x.columns();
        let ys = f.y.columns();
        assert!((xs[0].inner(&xs[1]).norm() - 0.5).abs() < 1e-12);
        assert!((ys[0].inner(&ys[1]).norm() - 0.25).abs() < 1e-12);
        let three = CounterexampleFamily::<f64>::standard(3, 0.5).unwrap();
        assert!((three.dual_inner() - 1.0 / 3.0).abs() < 1e-15);
        assert!((spec.dual_inner() - 0.25).abs() < 1e-15);
    }

    #[test]
    fn eigenpairs() {
        let (spec, f) = family(5);
        for (k, x) in f.x.columns().iter().enumerate() {
            let r = &f.m.mul_vec(x) - &x.scale(spec.eigenvalues()[k]);
            assert!(r.norm() < 1e-12);
        }
    }

    #[test]
    fn invalid_specs() {
        assert!(CounterexampleFamily::<f64>::standard(1, 0.5).is_err());
        assert!(CounterexampleFamily::<f64>::standard(3, 1.0).is_err());
        assert!(CounterexampleFamily::<f64>::standard(3, 0.0).is_err());
        let dup = vec![real(1.0), real(1.0), real(2.0)];
        assert!(CounterexampleFamily::<f64>::new(3, 0.5, dup).is_err());
    }
}
