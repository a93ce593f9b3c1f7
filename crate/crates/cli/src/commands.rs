use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use num_complex::Complex64;
use serde_json::{json, Value};
use ttoequiv::diskgeom::{Automorphism, BlaschkeProduct, DiskPoint};
use ttoequiv::modelspace::QuadratureGrid;
use ttoequiv::numkit::{eig_dense, phi_distance, spectral_distance, CMatrix};
use ttoequiv::tto::{build_atto_eigenbasis, build_atto_tm, build_tto_tm_quadrature, AnalyticSymbol};
use ttoequiv::uetto::{self, AttoForm, Decision, Verdict, Witness};

use crate::doc::{complex, matrix_pairs, pair, parse_pair, parse_pairs, CertificateDocument, MatrixDocument, Pair};
use crate::{plot as svg, CliError, Report, Route, Settings, EXIT_INCONCLUSIVE, EXIT_NO, EXIT_YES};

fn verdict_code(v: Verdict) -> i32 {
    match v {
        Verdict::Yes => EXIT_YES,
        Verdict::No => EXIT_NO,
        Verdict::Inconclusive => EXIT_INCONCLUSIVE,
    }
}

fn pass_code(passed: bool) -> i32 {
    if passed {
        EXIT_YES
    } else {
        EXIT_NO
    }
}

fn fmt_complex(z: Complex64) -> String {
    if z.im >= 0.0 {
        format!("{:.12}+{:.12}i", z.re, z.im)
    } else {
        format!("{:.12}-{:.12}i", z.re, -z.im)
    }
}

fn fmt_pairs(p: &[Pair]) -> String {
    p.iter().map(|&z| fmt_complex(complex(z))).collect::<Vec<_>>().join(", ")
}

fn to_json<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).unwrap_or(Value::Null)
}

/// Document-producing commands print JSON either way.
fn document(json: Value) -> Report {
    let text = serde_json::to_string(&json).unwrap_or_default();
    Report { code: EXIT_YES, text, json }
}

fn decision_report(m: &CMatrix<f64>, d: &Decision<f64>, s: &Settings) -> Result<Report, CliError> {
    let mut residuals = BTreeMap::new();
    if let Some(cert) = &d.certificate {
        let r = uetto::verify(m, cert, s.tol)?;
        residuals.insert("equivalence".to_string(), r.equivalence_residual);
        residuals.insert("unitarity".to_string(), r.unitarity_defect);
        residuals.insert("spectral".to_string(), r.spectral_distance);
        if let Some(p) = r.phi_distance {
            residuals.insert("trace_words".to_string(), p);
        }
    }
    let doc = CertificateDocument::from_decision(d, residuals);
    let mut text = format!("{}: {}\n", doc.verdict, d.reason);
    if d.certificate.is_some() {
        let _ = writeln!(text, "zeros:  {}", fmt_pairs(&doc.zeros));
        let _ = writeln!(text, "symbol: {}", fmt_pairs(&doc.symbol_coeffs));
        for (k, v) in &doc.residuals {
            let _ = writeln!(text, "{k} residual: {v:.3e}");
        }
    }
    Ok(Report { code: verdict_code(d.verdict), text, json: to_json(&doc) })
}

pub(crate) fn decide(doc: &MatrixDocument, s: &Settings) -> Result<Report, CliError> {
    let m = doc.matrix()?;
    let d = uetto::decide(&m, s.tol)?;
    decision_report(&m, &d, s)
}

pub(crate) fn classify2(doc: &MatrixDocument, s: &Settings) -> Result<Report, CliError> {
    let m = doc.matrix()?;
    let d = uetto::classify_2x2(&m, s.tol)?;
    decision_report(&m, &d, s)
}

pub(crate) fn verify(doc: &MatrixDocument, cert: &CertificateDocument, s: &Settings) -> Result<Report, CliError> {
    let m = doc.matrix()?;
    let r = uetto::verify(&m, &cert.certificate()?, s.tol)?;
    let json = json!({
        "passed": r.passed,
        "unitarity_defect": r.unitarity_defect,
        "equivalence_residual": r.equivalence_residual,
        "spectral_distance": r.spectral_distance,
        "phi_distance": r.phi_distance,
        "failures": r.failures,
    });
    let mut text = format!("{}\n", if r.passed { "PASS" } else { "FAIL" });
    let _ = writeln!(text, "unitarity defect:     {:.3e}", r.unitarity_defect);
    let _ = writeln!(text, "equivalence residual: {:.3e}", r.equivalence_residual);
    let _ = writeln!(text, "spectral distance:    {:.3e}", r.spectral_distance);
    if let Some(p) = r.phi_distance {
        let _ = writeln!(text, "trace-word distance:  {p:.3e}");
    }
    for f in &r.failures {
        let _ = writeln!(text, "failure: {f}");
    }
    Ok(Report { code: pass_code(r.passed), text, json })
}

fn test_report(t: uetto::TestOutcome<f64>) -> Report {
    let json = json!({"passed": t.passed, "lhs": pair(t.lhs), "rhs": pair(t.rhs), "residual": t.residual});
    let text = format!(
        "{}\nlhs {}\nrhs {}\nresidual {:.3e}\n",
        if t.passed { "PASS" } else { "FAIL" },
        fmt_complex(t.lhs),
        fmt_complex(t.rhs),
        t.residual
    );
    Report { code: pass_code(t.passed), text, json }
}

pub(crate) fn dettest3(doc: &MatrixDocument, s: &Settings) -> Result<Report, CliError> {
    Ok(test_report(uetto::det_test_3x3(&doc.matrix()?, s.tol)?))
}

pub(crate) fn tracetest3(doc: &MatrixDocument, s: &Settings) -> Result<Report, CliError> {
    Ok(test_report(uetto::trace_test_3x3(&doc.matrix()?, s.tol)?))
}

fn form_json(form: &AttoForm<f64>) -> Value {
    match form {
        AttoForm::Scalar => json!({"name": "scalar"}),
        AttoForm::Toeplitz => json!({"name": "toeplitz"}),
        AttoForm::RankOneNilpotent => json!({"name": "rank_one_nilpotent"}),
        AttoForm::RankOneIdempotent => json!({"name": "rank_one_idempotent"}),
        AttoForm::Ttom { alpha, beta, r } => {
            json!({"name": "three_parameter", "alpha": pair(*alpha), "beta": pair(*beta), "r": r})
        }
        AttoForm::Kernel => json!({"name": "kernel"}),
    }
}

pub(crate) fn decompose3(doc: &MatrixDocument, s: &Settings) -> Result<Report, CliError> {
    let d = uetto::decompose_3x3(&doc.matrix()?, s.tol)?;
    let case = match d.case {
        uetto::SpectrumCase::One => 1,
        uetto::SpectrumCase::Two => 2,
        uetto::SpectrumCase::Three => 3,
    };
    let (witness, summary) = match &d.witness {
        Witness::Atto { form, certificate } => {
            let f = form_json(form);
            let name = f["name"].as_str().unwrap_or_default().to_string();
            (
                json!({"kind": "atto", "form": f, "certificate": to_json(&CertificateDocument::from_certificate(certificate))}),
                format!("single truncated Toeplitz operator ({name})"),
            )
        }
        Witness::DirectSum { blocks } => {
            let sizes: Vec<usize> = blocks.iter().map(CMatrix::rows).collect();
            (
                json!({"kind": "direct_sum", "blocks": blocks.iter().map(matrix_pairs).collect::<Vec<_>>()}),
                format!(
                    "direct sum of blocks of sizes {}",
                    sizes.iter().map(|k| k.to_string()).collect::<Vec<_>>().join(" + ")
                ),
            )
        }
    };
    let json = json!({
        "case": case,
        "witness": witness,
        "unitary": matrix_pairs(&d.unitary),
        "model": matrix_pairs(&d.model),
        "residual": d.residual,
        "phi_residual": d.phi_residual,
    });
    let text = format!(
        "case {case}: {summary}\nresidual {:.3e}\ntrace-word residual {:.3e}\n",
        d.residual, d.phi_residual
    );
    Ok(Report { code: EXIT_YES, text, json })
}

pub(crate) fn csmtest(doc: &MatrixDocument, s: &Settings) -> Result<Report, CliError> {
    let entries = uetto::necessary_csm(&doc.matrix()?, s.tol)?;
    let all = entries.iter().all(|e| e.passed);
    let json = json!({
        "passed": all,
        "entries": entries.iter().map(|e| json!({"lhs": e.lhs, "rhs": e.rhs, "passed": e.passed})).collect::<Vec<_>>(),
    });
    let mut text = format!("{}\n", if all { "PASS" } else { "FAIL" });
    for (i, e) in entries.iter().enumerate() {
        let _ = writeln!(text, "{}: lhs {:.12} rhs {:.12} {}", i + 1, e.lhs, e.rhs, if e.passed { "pass" } else { "fail" });
    }
    Ok(Report { code: pass_code(all), text, json })
}

fn parse_eigs(text: &str) -> Result<Vec<Complex64>, CliError> {
    text.split(',')
        .map(|t| {
            let t = t.trim();
            let (re, im) = t.split_once(':').unwrap_or((t, "0"));
            match (re.trim().parse::<f64>(), im.trim().parse::<f64>()) {
                (Ok(a), Ok(b)) if a.is_finite() && b.is_finite() => Ok(Complex64::new(a, b)),
                _ => Err(CliError::Input(format!("--eigs: cannot parse `{t}`"))),
            }
        })
        .collect()
}

pub(crate) fn genfamily(n: usize, g: f64, eigs: Option<&str>) -> Result<Report, CliError> {
    let eigenvalues = match eigs {
        Some(e) => parse_eigs(e)?,
        None => (1..=n).map(|k| Complex64::new(k as f64, 0.0)).collect(),
    };
    let spec = uetto::CounterexampleFamily::new(n, g, eigenvalues).map_err(|e| CliError::Input(e.to_string()))?;
    let f = uetto::gen_family(&spec);
    Ok(document(to_json(&MatrixDocument::from_matrix(&f.m, Some(format!("family n={n} g={g}")), None))))
}

fn theta_and_symbol(zeros: &str, symbol: &str) -> Result<(BlaschkeProduct<f64>, AnalyticSymbol<f64>), CliError> {
    let z: Vec<Complex64> = parse_pairs(zeros, "zeros")?.into_iter().map(complex).collect();
    if z.is_empty() {
        return Err(CliError::Input("--zeros: at least one zero is needed".into()));
    }
    let coeffs: Vec<Complex64> = parse_pairs(symbol, "symbol")?.into_iter().map(complex).collect();
    let theta = BlaschkeProduct::from_complex_zeros(&z).map_err(|e| CliError::Input(format!("--zeros: {e}")))?;
    Ok((theta, AnalyticSymbol::new(coeffs)))
}

fn grid(s: &Settings) -> Result<QuadratureGrid<f64>, CliError> {
    QuadratureGrid::new(s.grid).map_err(|e| CliError::Input(format!("--grid: {e}")))
}

pub(crate) fn build(zeros: &str, symbol: &str, route: Route, s: &Settings) -> Result<Report, CliError> {
    let (theta, phi) = theta_and_symbol(zeros, symbol)?;
    let (matrix, label) = match route {
        Route::Eigen => (build_atto_eigenbasis(&theta, &phi)?.matrix, "conjugate-kernel basis"),
        Route::Tm => (build_atto_tm(&theta, &phi).matrix, "Takenaka-Malmquist basis"),
        Route::Quadrature => (build_tto_tm_quadrature(&theta, &phi, &grid(s)?).matrix, "Takenaka-Malmquist basis, quadrature"),
    };
    Ok(document(to_json(&MatrixDocument::from_matrix(&matrix, Some(label.into()), None))))
}

pub(crate) fn transport(zeros: &str, symbol: &str, a: &str, omega: &str) -> Result<Report, CliError> {
    let (theta, phi) = theta_and_symbol(zeros, symbol)?;
    let a = DiskPoint::new(parse_pair(a, "a")?).map_err(|e| CliError::Input(format!("--a: {e}")))?;
    let omega = parse_pair(omega, "omega")?;
    if (omega.norm() - 1.0).abs() > 1e-12 {
        return Err(CliError::Input("--omega must be unimodular".into()));
    }
    let psi = Automorphism::new(a, omega)?;
    let (moved, composed) = ttoequiv::tto::transport(&theta, &phi, &psi);
    let symbol = composed.reinterpolate(moved.zeros())?;
    let before = build_atto_eigenbasis(&theta, &phi)?.matrix;
    let after = build_atto_eigenbasis(&moved, &symbol)?.matrix;
    let spectral = spectral_distance(&eig_dense(&before, 1e-12)?.values, &eig_dense(&after, 1e-12)?.values);
    let words = if before.rows() == 3 { Some(phi_distance(&before, &after)?) } else { None };
    let zeros: Vec<Pair> = moved.zeros().iter().map(|z| pair(z.value())).collect();
    let coeffs: Vec<Pair> = symbol.coeffs().iter().map(|&c| pair(c)).collect();
    let json = json!({
        "zeros": zeros,
        "symbol_coeffs": coeffs,
        "spectral_distance": spectral,
        "phi_distance": words,
    });
    let mut text = format!("zeros:  {}\nsymbol: {}\nspectral distance {spectral:.3e}\n", fmt_pairs(&zeros), fmt_pairs(&coeffs));
    if let Some(w) = words {
        let _ = writeln!(text, "trace-word distance {w:.3e}");
    }
    Ok(Report { code: EXIT_YES, text, json })
}

pub(crate) fn sample(n: usize, count: usize, s: &Settings) -> Result<Report, CliError> {
    if n < 2 {
        return Err(CliError::Input("--n must be at least 2".into()));
    }
    let r = uetto::csm_experiment::<f64>(n, count, s.seed, s.tol)?;
    let concordance = r.concordance.map(|c| json!({"agree": c.agree, "disagree": c.disagree, "excluded": c.excluded}));
    let json = json!({
        "n": r.n,
        "seed": s.seed,
        "requested": r.requested,
        "accepted": r.accepted,
        "rejected": r.rejected,
        "fail_all": r.fail_all,
        "fail_some": r.fail_some,
        "pass_all": r.pass_all,
        "fail_all_rate": r.fail_all_rate,
        "concordance": concordance,
    });
    let mut text = format!(
        "n = {}, {} samples (seed {}, {} draws rejected)\nfails for all i: {} ({:.1}%)\nfails for some i: {}\npasses: {}\n",
        r.n,
        r.accepted,
        s.seed,
        r.rejected,
        r.fail_all,
        100.0 * r.fail_all_rate,
        r.fail_some,
        r.pass_all
    );
    if let Some(c) = r.concordance {
        let _ = writeln!(text, "3x3 tests: {} agree, {} disagree, {} excluded", c.agree, c.disagree, c.excluded);
    }
    Ok(Report { code: EXIT_YES, text, json })
}

pub(crate) fn plot(cert: &CertificateDocument, out: &Path) -> Result<Report, CliError> {
    let body = svg::render(cert);
    std::fs::write(out, body).map_err(|source| CliError::Io { path: out.display().to_string(), source })?;
    Ok(Report {
        code: EXIT_YES,
        text: format!("wrote {}\n", out.display()),
        json: json!({"path": out.display().to_string(), "zeros": cert.zeros.len()}),
    })
}
