//! Sampling experiment on random complex symmetric matrices.

use rayon::prelude::*;

use super::classify::{det_test_3x3, necessary_csm, trace_test_3x3};
use super::decide::decide_from_eigendata;
use super::Verdict;
use crate::error::{Error, Result};
use crate::numkit::eig_dense;
use crate::sampling::{derive_seed, random_symmetric, rng_from_seed};
use crate::scalar::Real;

/// Agreement of the three 3x3 tests. Samples where a test residual lies
/// within a factor of ten of the tolerance are counted as excluded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Concordance {
    pub agree: usize,
    pub disagree: usize,
    pub excluded: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentReport {
    pub n: usize,
    pub requested: usize,
    pub accepted: usize,
    /// Draws discarded because they violated the hypotheses.
    pub rejected: usize,
    pub fail_all: usize,
    pub fail_some: usize,
    pub pass_all: usize,
    pub fail_all_rate: f64,
    pub concordance: Option<Concordance>,
}

enum Agreement {
    Agree,
    Disagree,
    Excluded,
}

struct Sample {
    rejected: usize,
    failures: usize,
    n: usize,
    agreement: Option<Agreement>,
}

const MAX_DRAWS: usize = 1000;

/// Draws `count` matrices `(A + A^t)/2` with standard complex normal entries
/// that have distinct eigenvalues and no orthogonal eigenvector pair, and
/// evaluates the complex-symmetric necessary condition on each.
pub fn csm_experiment<T: Real>(n: usize, count: usize, seed: u64, tol: T) -> Result<ExperimentReport> {
    if n < 2 {
        return Err(Error::Dim(format!("experiment needs n >= 2, got {n}")));
    }
    let samples: Vec<Sample> = (0..count)
        .into_par_iter()
        .map(|i| sample(n, derive_seed(seed, i as u64), tol))
        .collect::<Result<_>>()?;

    let mut report = ExperimentReport {
        n,
        requested: count,
        accepted: samples.len(),
        rejected: 0,
        fail_all: 0,
        fail_some: 0,
        pass_all: 0,
        fail_all_rate: 0.0,
        concordance: (n == 3).then(Concordance::default),
    };
    for s in &samples {
        report.rejected += s.rejected;
        match s.failures {
            0 => report.pass_all += 1,
            f if f == s.n => report.fail_all += 1,
            _ => report.fail_some += 1,
        }
        if let (Some(c), Some(a)) = (report.concordance.as_mut(), &s.agreement) {
            match a {
                Agreement::Agree => c.agree += 1,
                Agreement::Disagree => c.disagree += 1,
                Agreement::Excluded => c.excluded += 1,
            }
        }
    }
    if report.accepted > 0 {
        report.fail_all_rate = report.fail_all as f64 / report.accepted as f64;
    }
    Ok(report)
}

fn sample<T: Real>(n: usize, seed: u64, tol: T) -> Result<Sample> {
    let mut rng = rng_from_seed(seed);
    for rejected in 0..MAX_DRAWS {
        let m = random_symmetric::<T>(&mut rng, n);
        let entries = match necessary_csm(&m, tol) {
            Ok(e) => e,
            Err(Error::HypothesisViolation(_)) => continue,
            Err(e) => return Err(e),
        };
        let failures = entries.iter().filter(|e| !e.passed).count();
        let agreement = if n == 3 { Some(concordance(&m, tol)?) } else { None };
        return Ok(Sample { rejected, failures, n, agreement });
    }
    Err(Error::NonConverged(format!("no admissible sample in {MAX_DRAWS} draws")))
}

fn concordance<T: Real>(m: &crate::numkit::CMatrix<T>, tol: T) -> Result<Agreement> {
    let det = det_test_3x3(m, tol)?;
    let trace = trace_test_3x3(m, tol)?;
    let eig = eig_dense(m, T::tol(1e-6, 1e4))?;
    let decision = decide_from_eigendata(m, &eig.values, &eig.vectors, tol)?;
    let lo = tol / T::lit(10.0);
    let hi = tol * T::lit(10.0);
    let borderline = |r: T| r >= lo && r <= hi;
    if borderline(det.residual) || borderline(trace.residual) || decision.verdict == Verdict::Inconclusive {
        return Ok(Agreement::Excluded);
    }
    let d = decision.verdict == Verdict::Yes;
    Ok(if d == det.passed && d == trace.passed { Agreement::Agree } else { Agreement::Disagree })
}
