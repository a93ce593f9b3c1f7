//! JSON documents exchanged on stdin/stdout. Complex numbers are `[re, im]` pairs.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use ttoequiv::diskgeom::DiskPoint;
use ttoequiv::numkit::CMatrix;
use ttoequiv::tto::{AnalyticSymbol, BasisTag};
use ttoequiv::uetto::{Certificate, Decision, Violation};

use crate::CliError;

pub type Pair = [f64; 2];

pub fn pair(z: Complex64) -> Pair {
    [z.re, z.im]
}

pub fn complex(p: Pair) -> Complex64 {
    Complex64::new(p[0], p[1])
}

pub fn matrix_pairs(m: &CMatrix<f64>) -> Vec<Vec<Pair>> {
    (0..m.rows()).map(|i| (0..m.cols()).map(|j| pair(m[(i, j)])).collect()).collect()
}

pub fn pairs_matrix(rows: &[Vec<Pair>], what: &str) -> Result<CMatrix<f64>, CliError> {
    let n = rows.len();
    if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != n) {
        return Err(CliError::Input(format!("{what}: row {i} has {} entries, expected {n}", r.len())));
    }
    let data: Vec<Complex64> = rows.iter().flatten().map(|&p| complex(p)).collect();
    if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(CliError::Input(format!("{what}: entries must be finite")));
    }
    CMatrix::new(n, n, data).map_err(|e| CliError::Input(format!("{what}: {e}")))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixDocument {
    pub n: usize,
    pub entries: Vec<Vec<Pair>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

/// An entry may be written as `[re, im]` or as a bare real number.
#[derive(Deserialize)]
#[serde(untagged)]
enum Entry {
    Pair(Pair),
    Real(f64),
}

impl Entry {
    fn pair(&self) -> Pair {
        match *self {
            Entry::Pair(p) => p,
            Entry::Real(x) => [x, 0.0],
        }
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum MatrixInput {
    Document {
        n: usize,
        entries: Vec<Vec<Entry>>,
        #[serde(default)]
        label: Option<String>,
        #[serde(default)]
        seed: Option<u64>,
    },
    Bare(Vec<Vec<Entry>>),
}

impl MatrixDocument {
    pub fn from_matrix(m: &CMatrix<f64>, label: Option<String>, seed: Option<u64>) -> Self {
        Self { n: m.rows(), entries: matrix_pairs(m), label, seed }
    }

    /// Accepts the full document or a bare nested array.
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let value = parse_json(text)?;
        let input: MatrixInput = serde_json::from_value(value).map_err(|_| {
            CliError::Input("expected a matrix document {\"n\", \"entries\"} or a nested array of entries".into())
        })?;
        let (n, entries, label, seed) = match input {
            MatrixInput::Document { n, entries, label, seed } => (n, entries, label, seed),
            MatrixInput::Bare(entries) => (entries.len(), entries, None, None),
        };
        let entries: Vec<Vec<Pair>> = entries.iter().map(|r| r.iter().map(Entry::pair).collect()).collect();
        if entries.len() != n {
            return Err(CliError::Input(format!("n = {n} but entries has {} rows", entries.len())));
        }
        let doc = Self { n, entries, label, seed };
        doc.matrix()?;
        Ok(doc)
    }

    pub fn matrix(&self) -> Result<CMatrix<f64>, CliError> {
        if self.n == 0 {
            return Err(CliError::Input("matrix must be nonempty".into()));
        }
        pairs_matrix(&self.entries, "entries")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum BasisName {
    #[default]
    Kernel,
    TakenakaMalmquist,
}

impl From<BasisTag> for BasisName {
    fn from(b: BasisTag) -> Self {
        match b {
            BasisTag::KernelOrthonormalized => BasisName::Kernel,
            BasisTag::TakenakaMalmquist => BasisName::TakenakaMalmquist,
        }
    }
}

impl From<BasisName> for BasisTag {
    fn from(b: BasisName) -> Self {
        match b {
            BasisName::Kernel => BasisTag::KernelOrthonormalized,
            BasisName::TakenakaMalmquist => BasisTag::TakenakaMalmquist,
        }
    }
}

/// A decision together with its certificate. `zeros` lists all zeros of `Θ`,
/// the distinguished one (the origin) last.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificateDocument {
    pub verdict: String,
    pub zeros: Vec<Pair>,
    pub symbol_coeffs: Vec<Pair>,
    pub unitary: Vec<Vec<Pair>>,
    #[serde(default)]
    pub phases: Vec<Pair>,
    #[serde(default)]
    pub basis: BasisName,
    #[serde(default)]
    pub residuals: BTreeMap<String, f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub violation: Option<Value>,
}

impl CertificateDocument {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let value = parse_json(text)?;
        serde_json::from_value(value).map_err(|e| CliError::Input(format!("certificate document: {e}")))
    }

    pub fn from_decision(d: &Decision<f64>, residuals: BTreeMap<String, f64>) -> Self {
        let mut doc = match &d.certificate {
            Some(c) => Self::from_certificate(c),
            None => Self {
                verdict: String::new(),
                zeros: Vec::new(),
                symbol_coeffs: Vec::new(),
                unitary: Vec::new(),
                phases: Vec::new(),
                basis: BasisName::default(),
                residuals: BTreeMap::new(),
                reason: None,
                violation: None,
            },
        };
        doc.verdict = d.verdict.as_str().to_string();
        doc.residuals = residuals;
        doc.reason = Some(d.reason.clone());
        doc.violation = d.violation.as_ref().map(violation_json);
        doc
    }

    pub fn from_certificate(c: &Certificate<f64>) -> Self {
        Self {
            verdict: "YES".into(),
            zeros: c.zeros.iter().map(|z| pair(z.value())).collect(),
            symbol_coeffs: c.symbol.coeffs().iter().map(|&z| pair(z)).collect(),
            unitary: matrix_pairs(&c.unitary),
            phases: c.phases.iter().map(|&z| pair(z)).collect(),
            basis: c.basis.into(),
            residuals: BTreeMap::new(),
            reason: None,
            violation: None,
        }
    }

    pub fn certificate(&self) -> Result<Certificate<f64>, CliError> {
        if self.zeros.is_empty() || self.symbol_coeffs.is_empty() {
            return Err(CliError::Input(format!("a {} document carries no certificate", self.verdict)));
        }
        let zeros = self
            .zeros
            .iter()
            .map(|&p| DiskPoint::new(complex(p)))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| CliError::Input(format!("zeros: {e}")))?;
        Ok(Certificate {
            zeros,
            symbol: AnalyticSymbol::new(self.symbol_coeffs.iter().map(|&p| complex(p)).collect()),
            unitary: pairs_matrix(&self.unitary, "unitary")?,
            phases: self.phases.iter().map(|&p| complex(p)).collect(),
            basis: self.basis.into(),
        })
    }
}

fn violation_json(v: &Violation<f64>) -> Value {
    use serde_json::json;
    match v {
        Violation::Orthogonal { i, j, inner } => json!({"kind": "orthogonal", "i": i, "j": j, "inner": inner}),
        Violation::Degenerate { index, modulus } => json!({"kind": "degenerate", "index": index, "modulus": modulus}),
        Violation::Triple { i, j, lhs, rhs } => {
            json!({"kind": "triple", "i": i, "j": j, "lhs": pair(*lhs), "rhs": pair(*rhs)})
        }
        Violation::Modulus { index, expected, found } => {
            json!({"kind": "modulus", "index": index, "expected": expected, "found": found})
        }
        Violation::OutsideDisk { index, modulus } => json!({"kind": "outside_disk", "index": index, "modulus": modulus}),
        Violation::Coincident { i, j } => json!({"kind": "coincident", "i": i, "j": j}),
        Violation::OrthogonalEigenspaces => json!({"kind": "orthogonal_eigenspaces"}),
        Violation::NotUecsm { residual } => json!({"kind": "not_uecsm", "residual": residual}),
    }
}

/// Parses JSON, reporting syntax errors with their line and column.
pub fn parse_json(text: &str) -> Result<Value, CliError> {
    serde_json::from_str(text).map_err(|e| {
        let full = e.to_string();
        let what = full.rsplit_once(" at line ").map_or(full.as_str(), |(head, _)| head);
        CliError::Input(format!("malformed JSON at line {}, column {}: {what}", e.line(), e.column()))
    })
}

/// Parses a JSON array of `[re, im]` pairs given on the command line.
pub fn parse_pairs(text: &str, what: &str) -> Result<Vec<Pair>, CliError> {
    let value = parse_json(text).map_err(|e| CliError::Input(format!("--{what}: {e}")))?;
    serde_json::from_value(value).map_err(|_| CliError::Input(format!("--{what}: expected an array of [re, im] pairs")))
}

pub fn parse_pair(text: &str, what: &str) -> Result<Complex64, CliError> {
    let value = parse_json(text).map_err(|e| CliError::Input(format!("--{what}: {e}")))?;
    let p: Pair =
        serde_json::from_value(value).map_err(|_| CliError::Input(format!("--{what}: expected a [re, im] pair")))?;
    Ok(complex(p))
}
