//! JSON problem/certificate documents and CSV output.

use num_complex::Complex64;
use serde::{Serialize, Serializer};
use serde_json::Value;

use crate::horn::{HornCertificate, PivotStep};
use crate::matrix::SquareMatrix;
use crate::mirsky::MirskyCertificate;
use crate::verify::VerifyReport;

/// A field-level parse failure; rendered as `field `path`: message`.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldError {
    pub field: String,
    pub message: String,
}

impl std::fmt::Display for FieldError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "field `{}`: {}", self.field, self.message)
    }
}

fn field_err(field: impl Into<String>, message: impl Into<String>) -> FieldError {
    FieldError {
        field: field.into(),
        message: message.into(),
    }
}

/// Parses JSON text, reporting syntax errors with line and column.
pub fn parse_json(text: &str) -> Result<Value, String> {
    serde_json::from_str(text).map_err(|e| {
        format!(
            "parse error at line {} column {}: {e}",
            e.line(),
            e.column()
        )
    })
}

/// `lambda`/`d` plus an optional tolerance. Entries are reals or `[re, im]`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProblemFile {
    pub lambda: Vec<Complex64>,
    pub d: Option<Vec<Complex64>>,
    pub tol: Option<f64>,
}

impl ProblemFile {
    pub fn from_value(doc: &Value) -> Result<Self, FieldError> {
        let obj = doc
            .as_object()
            .ok_or_else(|| field_err("<root>", "expected a JSON object"))?;
        let lambda = scalar_array(obj.get("lambda"), "lambda")?
            .ok_or_else(|| field_err("lambda", "missing"))?;
        let d = scalar_array(obj.get("d"), "d")?;
        if let Some(d) = &d {
            if d.len() != lambda.len() {
                return Err(field_err(
                    "d",
                    format!(
                        "length {} differs from lambda length {}",
                        d.len(),
                        lambda.len()
                    ),
                ));
            }
        }
        let tol = match obj.get("tol") {
            None | Some(Value::Null) => None,
            Some(v) => Some(
                v.as_f64()
                    .filter(|t| t.is_finite() && *t >= 0.0)
                    .ok_or_else(|| field_err("tol", "expected a finite number >= 0"))?,
            ),
        };
        Ok(Self { lambda, d, tol })
    }

    pub fn require_d(&self) -> Result<&[Complex64], FieldError> {
        self.d.as_deref().ok_or_else(|| field_err("d", "missing"))
    }
}

fn scalar_array(v: Option<&Value>, name: &str) -> Result<Option<Vec<Complex64>>, FieldError> {
    let Some(v) = v else { return Ok(None) };
    let arr = v
        .as_array()
        .ok_or_else(|| field_err(name, "expected an array"))?;
    if arr.is_empty() {
        return Err(field_err(name, "must be non-empty"));
    }
    arr.iter()
        .enumerate()
        .map(|(i, x)| parse_scalar(x).map_err(|m| field_err(format!("{name}[{i}]"), m)))
        .collect::<Result<Vec<_>, _>>()
        .map(Some)
}

fn parse_scalar(v: &Value) -> Result<Complex64, String> {
    let z = match v {
        Value::Number(n) => Complex64::new(n.as_f64().ok_or("not representable")?, 0.0),
        Value::Array(pair) if pair.len() == 2 => {
            let re = pair[0].as_f64().ok_or("expected [re, im] numbers")?;
            let im = pair[1].as_f64().ok_or("expected [re, im] numbers")?;
            Complex64::new(re, im)
        }
        _ => return Err("expected a number or an [re, im] pair".into()),
    };
    if z.is_finite() {
        Ok(z)
    } else {
        Err("number is not finite".into())
    }
}

/// Real parts, failing if any imaginary part is non-zero.
pub fn require_real(values: &[Complex64], name: &str) -> Result<Vec<f64>, FieldError> {
    values
        .iter()
        .enumerate()
        .map(|(i, z)| {
            if z.im == 0.0 {
                Ok(z.re)
            } else {
                Err(field_err(format!("{name}[{i}]"), "expected a real number"))
            }
        })
        .collect()
}

/// Real square matrix from nested arrays.
pub fn real_matrix(doc: &Value, name: &str) -> Result<SquareMatrix<f64>, FieldError> {
    let m = complex_matrix(doc, name)?;
    for (idx, z) in m.as_slice().iter().enumerate() {
        if z.im != 0.0 {
            let n = m.n();
            return Err(field_err(
                format!("{name}[{}][{}]", idx / n, idx % n),
                "expected a real number",
            ));
        }
    }
    Ok(m.map(|z| z.re))
}

pub fn complex_matrix(doc: &Value, name: &str) -> Result<SquareMatrix<Complex64>, FieldError> {
    let rows = doc
        .get(name)
        .ok_or_else(|| field_err(name, "missing"))?
        .as_array()
        .ok_or_else(|| field_err(name, "expected an array of rows"))?;
    let parsed = rows
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let row = row
                .as_array()
                .ok_or_else(|| field_err(format!("{name}[{i}]"), "expected an array"))?;
            row.iter()
                .enumerate()
                .map(|(j, x)| {
                    parse_scalar(x).map_err(|m| field_err(format!("{name}[{i}][{j}]"), m))
                })
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    SquareMatrix::from_rows(&parsed).map_err(|_| field_err(name, "matrix is not square"))
}

/// Serializes as a plain number for real data, else as `[re, im]`.
#[derive(Debug, Clone, Copy)]
pub struct Scalar {
    pub z: Complex64,
    pub real: bool,
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if self.real {
            s.serialize_f64(self.z.re)
        } else {
            [self.z.re, self.z.im].serialize(s)
        }
    }
}

fn scalars(values: &[Complex64], real: bool) -> Vec<Scalar> {
    values.iter().map(|&z| Scalar { z, real }).collect()
}

fn scalar_rows(m: &SquareMatrix<Complex64>, real: bool) -> Vec<Vec<Scalar>> {
    m.to_rows().iter().map(|r| scalars(r, real)).collect()
}

#[derive(Debug, Serialize)]
pub struct StepDoc {
    pub k: usize,
    pub slot: usize,
    pub lambda_k: f64,
    pub lambda_k1: f64,
    pub d_k: f64,
    pub lambda_k1_new: f64,
    pub u: f64,
    pub v: f64,
}

impl From<&PivotStep> for StepDoc {
    fn from(s: &PivotStep) -> Self {
        Self {
            k: s.k,
            slot: s.slot,
            lambda_k: s.lambda_k,
            lambda_k1: s.lambda_k1,
            d_k: s.d_k,
            lambda_k1_new: s.lambda_k1_new,
            u: s.kernel.u,
            v: s.kernel.v,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct HornResiduals {
    pub diag: f64,
    pub orth: f64,
}

#[derive(Debug, Serialize)]
pub struct HornDoc {
    pub kind: &'static str,
    pub n: usize,
    pub tol: f64,
    pub lambda: Vec<f64>,
    pub d: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<Vec<Vec<f64>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a: Option<Vec<Vec<f64>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s: Option<Vec<Vec<f64>>>,
    pub steps: Vec<StepDoc>,
    pub residuals: HornResiduals,
    pub verification: VerifyReport,
}

impl HornDoc {
    pub fn new(cert: &HornCertificate, report: VerifyReport) -> Self {
        Self {
            kind: "horn",
            n: cert.q.n(),
            tol: cert.tol,
            lambda: cert.lambda.values().to_vec(),
            d: cert.d.values().to_vec(),
            q: None,
            a: None,
            s: None,
            steps: cert.steps.iter().map(StepDoc::from).collect(),
            residuals: HornResiduals {
                diag: cert.diag_residual,
                orth: cert.orth_residual,
            },
            verification: report,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct MirskyResiduals {
    pub diag: f64,
    pub similarity: f64,
}

#[derive(Debug, Serialize)]
pub struct MirskyDoc {
    pub kind: &'static str,
    pub n: usize,
    pub tol: f64,
    pub is_real: bool,
    pub lambda: Vec<Scalar>,
    pub d: Vec<Scalar>,
    pub c: Vec<Scalar>,
    pub growth: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub l: Option<Vec<Vec<Scalar>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a: Option<Vec<Vec<Scalar>>>,
    pub residuals: MirskyResiduals,
    pub verification: VerifyReport,
}

impl MirskyDoc {
    pub fn new(
        cert: &MirskyCertificate,
        tol: f64,
        emit_l: bool,
        emit_a: bool,
        report: VerifyReport,
    ) -> Self {
        let real = cert.is_real;
        Self {
            kind: "mirsky",
            n: cert.a.n(),
            tol,
            is_real: real,
            lambda: scalars(cert.lambda.values(), real),
            d: scalars(cert.d.values(), real),
            c: scalars(&cert.c_values, real),
            growth: cert.growth,
            l: emit_l.then(|| scalar_rows(cert.l.entries(), real)),
            a: emit_a.then(|| scalar_rows(&cert.a, real)),
            residuals: MirskyResiduals {
                diag: cert.diag_residual,
                similarity: cert.similarity_residual,
            },
            verification: report,
        }
    }
}

/// Shortest decimal that reads back to the same double.
pub fn fmt_f64(x: f64) -> String {
    if x.is_finite() {
        ryu::Buffer::new().format_finite(x).to_owned()
    } else {
        x.to_string()
    }
}

/// Comma-separated rows, LF endings, no header.
pub fn csv_matrix(m: &SquareMatrix<f64>) -> String {
    let mut out = String::new();
    for i in 0..m.n() {
        let row: Vec<String> = m.row(i).iter().map(|&x| fmt_f64(x)).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}
