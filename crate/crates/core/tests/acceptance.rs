//! Acceptance suite. Runs without the libtest harness so each criterion prints
//! exactly one PASS/FAIL line; the process exits non-zero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::Rng;
use ttoequiv::diskgeom::{hyp_dist, rho, Automorphism, BlaschkeProduct, DiskPoint};
use ttoequiv::modelspace::{conjugation_matrix, kernel_inner, KernelKind, ModelSpace, QuadratureGrid};
use ttoequiv::numkit::{eig_dense, min_pairwise_gap, phi_distance, phi_invariants, spectral_distance, CMatrix, CVector};
use ttoequiv::sampling::{
    complex_normal, derive_seed, haar_unitary, random_disk_point, random_matrix, random_separated_points,
    random_symmetric, rng_from_seed, SampleRng,
};
use ttoequiv::tto::{build_atto_eigenbasis, build_tto_tm_quadrature, AnalyticSymbol};
use ttoequiv::uetto::{
    csm_experiment, decide, decide_from_eigendata, decompose_3x3, gen_family, trace_test_3x3, verify,
    AttoForm, CounterexampleFamily, Verdict, Witness,
};
use ttoequiv::Complex64;

const SEED: u64 = 20_240_601;
const TOL: f64 = 1e-8;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome { passed, detail: detail.into() }
}

fn conj(m: &CMatrix<f64>, u: &CMatrix<f64>) -> CMatrix<f64> {
    &(u * m) * &u.adjoint()
}

fn random_theta(rng: &mut SampleRng, n: usize) -> BlaschkeProduct<f64> {
    BlaschkeProduct::from_complex_zeros(&random_separated_points(rng, n, 0.9, 0.05)).unwrap()
}

/// Degree `n - 1` symbol whose values at the zeros are pairwise distinct.
fn random_symbol(rng: &mut SampleRng, theta: &BlaschkeProduct<f64>) -> AnalyticSymbol<f64> {
    let n = theta.order();
    loop {
        let phi = AnalyticSymbol::new((0..n).map(|_| complex_normal(rng)).collect());
        let values: Vec<_> = theta.zero_values().iter().map(|&z| phi.eval(z)).collect();
        if min_pairwise_gap(&values) > 1e-3 {
            return phi;
        }
    }
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let m = CMatrix::from_real_rows(&[&[1.0, 2.0], &[0.0, 3.0]]).unwrap();
    let d = decide(&m, TOL).unwrap();
    let elapsed = start.elapsed();
    let Some(cert) = d.certificate else { return outcome(false, format!("verdict {}", d.verdict.as_str())) };
    let z1 = cert.zeros[0].value();
    let z2 = cert.zeros[1].value();
    let c = cert.symbol.coeffs();
    let z_err = (z1 - Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0)).norm().max(z2.norm());
    let want = [Complex64::new(3.0, 0.0), Complex64::new(-2.0 * 2f64.sqrt(), 0.0)];
    let phi_err = if c.len() == 2 { (c[0] - want[0]).norm().max((c[1] - want[1]).norm()) } else { f64::INFINITY };
    let report = verify(&m, &cert, 1e-9).unwrap();
    let passed = d.verdict == Verdict::Yes
        && z_err <= 1e-10
        && phi_err <= 1e-10
        && report.passed
        && elapsed < Duration::from_millis(100);
    outcome(
        passed,
        format!(
            "zero error {z_err:.1e}, symbol error {phi_err:.1e}, residual {:.1e}, {:.1} ms",
            report.equivalence_residual,
            elapsed.as_secs_f64() * 1e3
        ),
    )
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let mut failures = 0;
    let mut worst: f64 = 0.0;
    for k in 0..200u64 {
        let mut rng = rng_from_seed(derive_seed(SEED, k));
        let n = 2 + (k as usize % 5);
        let theta = random_theta(&mut rng, n);
        let phi = random_symbol(&mut rng, &theta);
        let a = build_atto_eigenbasis(&theta, &phi).unwrap().matrix;
        let m = conj(&a, &haar_unitary(&mut rng, n));
        let d = decide(&m, TOL).unwrap();
        match d.certificate {
            Some(cert) if d.verdict == Verdict::Yes => {
                let r = verify(&m, &cert, 1e-7).unwrap();
                worst = worst.max(r.equivalence_residual);
                if !r.passed {
                    failures += 1;
                }
            }
            _ => failures += 1,
        }
    }
    let elapsed = start.elapsed();
    outcome(
        failures == 0 && worst <= 1e-7 && elapsed < Duration::from_secs(30),
        format!("200 instances, {failures} failures, worst residual {worst:.1e}, {:.2} s", elapsed.as_secs_f64()),
    )
}

fn criterion_3() -> Outcome {
    let mut verdicts = Vec::new();
    for n in 3..=6 {
        let f = gen_family(&CounterexampleFamily::<f64>::standard(n, 0.5).unwrap());
        verdicts.push(decide(&f.m, TOL).unwrap().verdict);
    }
    let all_no = verdicts.iter().all(|&v| v == Verdict::No);
    let three = gen_family(&CounterexampleFamily::<f64>::standard(3, 0.5).unwrap());
    let trace = trace_test_3x3(&three.m, TOL).unwrap();
    let y3 = three.y.columns();
    let y3_err = (y3[0].inner(&y3[1]).norm() - 1.0 / 3.0).abs();
    // The pair (g, g/(1 + (n-2)g)) equals (0.5, 0.25) for n = 4.
    let four = gen_family(&CounterexampleFamily::<f64>::standard(4, 0.5).unwrap());
    let (x, y) = (four.x.columns(), four.y.columns());
    let xi = x[0].inner(&x[1]).norm();
    let yi = y[0].inner(&y[1]).norm();
    let pair_err = (xi - 0.5).abs().max((yi - 0.25).abs());
    outcome(
        all_no && !trace.passed && trace.residual >= 1e-4 && pair_err <= 1e-12 && y3_err <= 1e-12,
        format!(
            "verdicts {:?}, n=3 trace residual {:.2e}, witness pair ({xi:.12}, {yi:.12}) at n=4, n=3 dual error {y3_err:.1e}",
            verdicts.iter().map(|v| v.as_str()).collect::<Vec<_>>(),
            trace.residual
        ),
    )
}

fn criterion_4() -> Outcome {
    let r = csm_experiment::<f64>(3, 500, SEED, 1e-7).unwrap();
    let c = r.concordance.unwrap();
    let excluded = c.excluded as f64 / r.accepted as f64;
    outcome(
        c.disagree == 0 && excluded < 0.05,
        format!("{} agree, {} disagree, {} excluded ({:.1}%)", c.agree, c.disagree, c.excluded, 100.0 * excluded),
    )
}

fn criterion_5() -> Outcome {
    let mut rng = rng_from_seed(SEED ^ 5);
    let (mut worst_r, mut worst_res, mut wrong_form) = (0.0f64, 0.0f64, 0);
    for _ in 0..100 {
        let a = complex_normal::<f64, _>(&mut rng);
        let c: f64 = rng.random_range(0.1..3.0);
        let b = Complex64::from_polar(c * (1.0 + c * c).sqrt(), rng.random_range(0.0..std::f64::consts::TAU)) - a * c;
        let z = Complex64::new(0.0, 0.0);
        let form = CMatrix::from_rows(&[vec![z, z, z], vec![a, z, z], vec![b, Complex64::new(c, 0.0), Complex64::new(1.0, 0.0)]])
            .unwrap();
        let m = conj(&form, &haar_unitary(&mut rng, 3));
        match decompose_3x3(&m, TOL) {
            Ok(d) => match d.witness {
                Witness::Atto { form: AttoForm::Ttom { r, .. }, .. } => {
                    worst_r = worst_r.max((r - 1.0 / (1.0 + c * c).sqrt()).abs());
                    worst_res = worst_res.max(d.residual);
                }
                _ => wrong_form += 1,
            },
            Err(_) => wrong_form += 1,
        }
    }
    outcome(
        wrong_form == 0 && worst_r <= 1e-10 && worst_res <= 1e-9,
        format!("{wrong_form} misclassified, worst r error {worst_r:.1e}, worst residual {worst_res:.1e}"),
    )
}

fn criterion_6() -> Outcome {
    let grid = QuadratureGrid::<f64>::new(2048).unwrap();
    let mut rng = rng_from_seed(SEED ^ 6);
    let (mut spec, mut phi) = (0.0f64, 0.0f64);
    for k in 0..100 {
        let n = 2 + k % 4;
        let theta = random_theta(&mut rng, n);
        let symbol = random_symbol(&mut rng, &theta);
        let a = build_atto_eigenbasis(&theta, &symbol).unwrap().matrix;
        let b = build_tto_tm_quadrature(&theta, &symbol, &grid).matrix;
        let ea = eig_dense(&a, 1e-12).unwrap().values;
        let eb = eig_dense(&b, 1e-12).unwrap().values;
        spec = spec.max(spectral_distance(&ea, &eb));
        if n == 3 {
            phi = phi.max(phi_distance(&a, &b).unwrap());
        }
    }
    outcome(spec <= 1e-9 && phi <= 1e-9, format!("spectral distance {spec:.1e}, trace-word distance {phi:.1e}"))
}

fn criterion_7() -> Outcome {
    let mut rng = rng_from_seed(SEED ^ 7);
    let mut worst: f64 = 0.0;
    let mut pairs = 0;
    for _ in 0..10 {
        // 15 zeros give 105 distinct pairs; the first 100 are used.
        let theta = BlaschkeProduct::<f64>::from_complex_zeros(&random_separated_points(&mut rng, 15, 0.95, 0.01)).unwrap();
        let ms = ModelSpace::new(theta.clone());
        let zs = theta.zeros().to_vec();
        let all: Vec<(usize, usize)> = (0..zs.len()).flat_map(|i| (i + 1..zs.len()).map(move |j| (i, j))).collect();
        for &(i, j) in all.iter().take(100) {
            let kz = ms.kernel(zs[i], KernelKind::Normalized);
            let kw = ms.kernel(zs[j], KernelKind::Normalized);
            let ip = kernel_inner(&kz, &kw).unwrap();
            worst = worst.max((ip.norm_sqr() + rho(zs[i], zs[j]).powi(2) - 1.0).abs());
            pairs += 1;
        }
    }
    outcome(worst <= 1e-12, format!("{pairs} zero pairs over 10 inner functions, worst defect {worst:.1e}"))
}

fn criterion_8() -> Outcome {
    let grid = QuadratureGrid::<f64>::default();
    let mut rng = rng_from_seed(SEED ^ 8);
    let (mut sym, mut inv, mut cs) = (0.0f64, 0.0f64, 0.0f64);
    for k in 0..50 {
        let n = 2 + k % 5;
        let theta = random_theta(&mut rng, n);
        let symbol = random_symbol(&mut rng, &theta);
        let ms = ModelSpace::new(theta.clone());
        let s = conjugation_matrix(&ms, &ms.tm_basis(), &grid);
        let a = build_tto_tm_quadrature(&theta, &symbol, &grid).matrix;
        sym = sym.max(s.asymmetry());
        inv = inv.max((&(&s * &s.conj()) - &CMatrix::identity(n)).frobenius_norm());
        cs = cs.max((&a - &(&(&s * &a.transpose()) * &s.adjoint())).frobenius_norm());
    }
    outcome(
        sym <= 1e-10 && inv <= 1e-10 && cs <= 1e-9,
        format!("asymmetry {sym:.1e}, involution defect {inv:.1e}, symmetry defect {cs:.1e}"),
    )
}

fn criterion_9() -> Outcome {
    let start = Instant::now();
    let r = csm_experiment::<f64>(4, 1000, SEED, TOL).unwrap();
    let elapsed = start.elapsed();
    outcome(
        r.accepted == 1000 && r.fail_all_rate >= 0.9 && elapsed < Duration::from_secs(60),
        format!(
            "fail-all rate {:.3} ({} all, {} some, {} none; {} draws rejected), {:.2} s",
            r.fail_all_rate,
            r.fail_all,
            r.fail_some,
            r.pass_all,
            r.rejected,
            elapsed.as_secs_f64()
        ),
    )
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for k in 0..n {
            let mut q = p.clone();
            q.insert(k, n - 1);
            out.push(q);
        }
    }
    out
}

fn criterion_10() -> Outcome {
    let mut rng = rng_from_seed(SEED ^ 10);
    let mut failed: Vec<&str> = Vec::new();

    // Metric invariance and triangle inequality.
    let mut metric = 0.0f64;
    let mut triangle = true;
    for _ in 0..500 {
        let p: Vec<DiskPoint<f64>> = (0..4).map(|_| DiskPoint::new(random_disk_point(&mut rng, 0.95)).unwrap()).collect();
        let psi = Automorphism::new(p[2], Complex64::from_polar(1.0, rng.random_range(0.0..std::f64::consts::TAU))).unwrap();
        metric = metric.max((rho(psi.apply(p[0]), psi.apply(p[1])) - rho(p[0], p[1])).abs());
        metric = metric.max((rho(p[0], p[1]) - rho(p[1], p[0])).abs());
        triangle &= hyp_dist(p[0], p[3]) <= hyp_dist(p[0], p[1]) + hyp_dist(p[1], p[3]) + 1e-12;
    }
    if metric > 1e-12 || !triangle {
        failed.push("metric");
    }

    // Takenaka–Malmquist orthonormality.
    let grid = QuadratureGrid::<f64>::default();
    let mut gram = 0.0f64;
    for n in 1..=8 {
        let theta = BlaschkeProduct::from_complex_zeros(&random_separated_points(&mut rng, n, 0.9, 0.0)).unwrap();
        let basis = ModelSpace::new(theta).tm_basis();
        let e: Vec<Vec<Complex64>> = (0..n).map(|k| grid.sample(|z| basis.eval(k, z))).collect();
        for i in 0..n {
            for j in 0..n {
                let want = if i == j { 1.0 } else { 0.0 };
                gram = gram.max((grid.inner(&e[i], &e[j]) - want).norm());
            }
        }
    }
    if gram > 1e-10 {
        failed.push("tm-orthonormality");
    }

    // Verdict invariance under unitaries, phases and relabeling.
    let mut gauge_ok = true;
    for k in 0..12 {
        let n = 2 + k % 3;
        let m = if k % 2 == 0 {
            let theta = random_theta(&mut rng, n);
            let phi = random_symbol(&mut rng, &theta);
            conj(&build_atto_eigenbasis(&theta, &phi).unwrap().matrix, &haar_unitary(&mut rng, n))
        } else {
            random_matrix(&mut rng, n)
        };
        let base = decide(&m, TOL).unwrap().verdict;
        gauge_ok &= decide(&conj(&m, &haar_unitary(&mut rng, n)), TOL).unwrap().verdict == base;
        let eig = eig_dense(&m, 1e-12).unwrap();
        for p in permutations(n) {
            let values: Vec<_> = p.iter().map(|&i| eig.values[i]).collect();
            let vectors: Vec<CVector<f64>> =
                p.iter().map(|&i| eig.vectors[i].scale(Complex64::from_polar(1.0, rng.random_range(0.0..std::f64::consts::TAU)))).collect();
            gauge_ok &= decide_from_eigendata(&m, &values, &vectors, TOL).unwrap().verdict == base;
        }
    }
    if !gauge_ok {
        failed.push("verdict-gauge-invariance");
    }

    // Choice identities and bilinear orthogonality for symmetric matrices.
    let mut choice = 0.0f64;
    for _ in 0..100 {
        let s = random_symmetric::<f64>(&mut rng, 3);
        let x: Vec<_> = eig_dense(&s, 1e-12).unwrap().vectors.iter().map(CVector::normalized).collect();
        for i in 0..3 {
            let (j, k) = ((i + 1) % 3, (i + 2) % 3);
            let lhs = x[i].inner(&x[i].conj()).norm_sqr();
            let rhs = (1.0 - x[i].inner(&x[j]).norm_sqr()) * (1.0 - x[i].inner(&x[k]).norm_sqr());
            choice = choice.max((lhs - rhs).abs());
        }
    }
    if choice > 1e-9 {
        failed.push("choice");
    }

    // Product formula on certificates.
    let mut product = 0.0f64;
    for k in 0..30 {
        let n = 2 + k % 4;
        let theta = random_theta(&mut rng, n);
        let phi = random_symbol(&mut rng, &theta);
        let m = conj(&build_atto_eigenbasis(&theta, &phi).unwrap().matrix, &haar_unitary(&mut rng, n));
        let eig = eig_dense(&m, 1e-12).unwrap();
        let Some(cert) = decide(&m, TOL).unwrap().certificate else {
            product = f64::INFINITY;
            continue;
        };
        let th = cert.theta().unwrap();
        let x: Vec<_> = eig.vectors.iter().map(CVector::normalized).collect();
        for i in 0..n {
            let lhs: f64 = (0..n).filter(|&j| j != i).map(|j| 1.0 - x[i].inner(&x[j]).norm_sqr()).product();
            let z = cert.zeros[i].value();
            let rhs = (1.0 - z.norm_sqr()).powi(2) * th.eval_with_derivative(z).1.norm_sqr();
            product = product.max((lhs - rhs).abs());
        }
    }
    if product > 1e-9 {
        failed.push("product-formula");
    }

    // Trace-word invariance.
    let mut words = 0.0f64;
    for _ in 0..1000 {
        let m = random_matrix::<f64>(&mut rng, 3);
        let a = phi_invariants(&m).unwrap();
        let b = phi_invariants(&conj(&m, &haar_unitary(&mut rng, 3))).unwrap();
        for (x, y) in a.iter().zip(&b) {
            words = words.max((x - y).norm() / x.norm().max(1.0));
        }
    }
    if words > 1e-9 {
        failed.push("trace-word-invariance");
    }

    outcome(
        failed.is_empty(),
        format!(
            "metric {metric:.1e}, gram {gram:.1e}, choice {choice:.1e}, product {product:.1e}, words {words:.1e}{}",
            if failed.is_empty() { String::new() } else { format!("; failing: {}", failed.join(", ")) }
        ),
    )
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("worked example", criterion_1),
        ("round-trip completeness", criterion_2),
        ("counterexample family", criterion_3),
        ("3x3 equivalence suite", criterion_4),
        ("case-2 decomposition", criterion_5),
        ("cross-route oracle", criterion_6),
        ("kernel/metric identity", criterion_7),
        ("conjugation suite", criterion_8),
        ("generic failure experiment", criterion_9),
        ("property suites", criterion_10),
    ];
    let mut all = true;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = run();
        all &= o.passed;
        println!(
            "{} criterion {:>2} ({name}): {} [{:.2} s]",
            if o.passed { "PASS" } else { "FAIL" },
            k + 1,
            o.detail,
            start.elapsed().as_secs_f64()
        );
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
