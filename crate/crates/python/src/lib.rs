//! Python bindings. Matrices cross the boundary as lists of rows.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use spectra_diag::gen::{self, GenConfig};
use spectra_diag::{Complex64, ComplexSeq, RealSeq, SquareMatrix, TolProfile, DEFAULT_TOL};

fn py_err(e: spectra_diag::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn real(values: Vec<f64>) -> PyResult<RealSeq> {
    RealSeq::new(values).map_err(py_err)
}

fn complex(values: Vec<Complex64>) -> PyResult<ComplexSeq> {
    ComplexSeq::new(values).map_err(py_err)
}

fn matrix(rows: &[Vec<f64>]) -> PyResult<SquareMatrix<f64>> {
    SquareMatrix::from_rows(rows).map_err(py_err)
}

#[pyclass(
    module = "spectra_diag_py",
    name = "MajorizationReport",
    frozen,
    get_all,
    skip_from_py_object
)]
#[derive(Clone)]
struct PyMajorizationReport {
    holds: bool,
    slacks: Vec<f64>,
    trace_gap: f64,
    tolerance_used: f64,
    /// 1-based prefix index of the first failing partial sum.
    first_violation: Option<usize>,
}

#[pymethods]
impl PyMajorizationReport {
    fn __repr__(&self) -> String {
        format!(
            "MajorizationReport(holds={}, first_violation={:?})",
            self.holds, self.first_violation
        )
    }
}

#[pyclass(module = "spectra_diag_py", name = "VerifyReport", frozen)]
struct PyVerifyReport(spectra_diag::VerifyReport);

#[pymethods]
impl PyVerifyReport {
    #[getter]
    fn kind(&self) -> &'static str {
        match self.0.kind {
            spectra_diag::verify::ReportKind::Horn => "horn",
            spectra_diag::verify::ReportKind::Mirsky => "mirsky",
        }
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n
    }

    #[getter]
    fn passed(&self) -> bool {
        self.0.pass
    }

    /// `(name, value, threshold)` for every check that ran.
    fn checks(&self) -> Vec<(&'static str, f64, f64)> {
        let r = &self.0;
        [
            ("diag", Some(r.diag)),
            ("orth", r.orth),
            ("similarity", r.similarity),
            ("eig", r.eig),
            ("schur_relation", r.schur_relation),
            ("stochastic", r.stochastic),
            ("charpoly", r.charpoly),
        ]
        .into_iter()
        .filter_map(|(name, c)| c.map(|c| (name, c.value, c.threshold)))
        .collect()
    }

    fn __repr__(&self) -> String {
        format!(
            "VerifyReport(kind={:?}, n={}, passed={})",
            self.kind(),
            self.0.n,
            self.0.pass
        )
    }
}

#[pyclass(
    module = "spectra_diag_py",
    name = "PivotStep",
    frozen,
    get_all,
    skip_from_py_object
)]
#[derive(Clone)]
struct PyPivotStep {
    k: usize,
    slot: usize,
    lambda_k: f64,
    lambda_k1: f64,
    d_k: f64,
    d_k1: f64,
    lambda_k1_new: f64,
    u: f64,
    v: f64,
}

#[pyclass(module = "spectra_diag_py", name = "HornCertificate", frozen)]
struct PyHornCertificate(spectra_diag::HornCertificate);

#[pymethods]
impl PyHornCertificate {
    #[getter]
    fn q(&self) -> Vec<Vec<f64>> {
        self.0.q.entries().to_rows()
    }

    #[getter]
    fn lambda_(&self) -> Vec<f64> {
        self.0.lambda.values().to_vec()
    }

    #[getter]
    fn d(&self) -> Vec<f64> {
        self.0.d.values().to_vec()
    }

    #[getter]
    fn tol(&self) -> f64 {
        self.0.tol
    }

    #[getter]
    fn diag_residual(&self) -> f64 {
        self.0.diag_residual
    }

    #[getter]
    fn orth_residual(&self) -> f64 {
        self.0.orth_residual
    }

    #[getter]
    fn steps(&self) -> Vec<PyPivotStep> {
        self.0
            .steps
            .iter()
            .map(|s| PyPivotStep {
                k: s.k,
                slot: s.slot,
                lambda_k: s.lambda_k,
                lambda_k1: s.lambda_k1,
                d_k: s.d_k,
                d_k1: s.d_k1,
                lambda_k1_new: s.lambda_k1_new,
                u: s.kernel.u,
                v: s.kernel.v,
            })
            .collect()
    }

    /// `A = Q diag(Λ) Qᵀ`.
    fn hermitian(&self) -> PyResult<Vec<Vec<f64>>> {
        spectra_diag::hermitian_of(&self.0.q, &self.0.lambda)
            .map(|a| a.to_rows())
            .map_err(py_err)
    }

    /// `S_ij = Q_ij²`.
    fn orthostochastic(&self) -> Vec<Vec<f64>> {
        spectra_diag::orthostochastic_of(&self.0.q)
            .entries()
            .to_rows()
    }

    fn verify(&self) -> PyVerifyReport {
        PyVerifyReport(spectra_diag::verify_horn(&self.0, &TolProfile::default()))
    }

    fn __repr__(&self) -> String {
        format!(
            "HornCertificate(n={}, diag_residual={:e}, orth_residual={:e})",
            self.0.q.n(),
            self.0.diag_residual,
            self.0.orth_residual
        )
    }
}

#[pyclass(module = "spectra_diag_py", name = "MirskyCertificate", frozen)]
struct PyMirskyCertificate(spectra_diag::MirskyCertificate);

#[pymethods]
impl PyMirskyCertificate {
    #[getter]
    fn l(&self) -> Vec<Vec<Complex64>> {
        self.0.l.entries().to_rows()
    }

    #[getter]
    fn a(&self) -> Vec<Vec<Complex64>> {
        self.0.a.to_rows()
    }

    #[getter]
    fn lambda_(&self) -> Vec<Complex64> {
        self.0.lambda.values().to_vec()
    }

    #[getter]
    fn d(&self) -> Vec<Complex64> {
        self.0.d.values().to_vec()
    }

    #[getter]
    fn c_values(&self) -> Vec<Complex64> {
        self.0.c_values.clone()
    }

    #[getter]
    fn growth(&self) -> f64 {
        self.0.growth
    }

    #[getter]
    fn is_real(&self) -> bool {
        self.0.is_real
    }

    #[getter]
    fn similarity_residual(&self) -> f64 {
        self.0.similarity_residual
    }

    #[getter]
    fn diag_residual(&self) -> f64 {
        self.0.diag_residual
    }

    fn verify(&self) -> PyVerifyReport {
        PyVerifyReport(spectra_diag::verify_mirsky(&self.0, &TolProfile::default()))
    }

    fn __repr__(&self) -> String {
        format!(
            "MirskyCertificate(n={}, growth={:e}, is_real={})",
            self.0.a.n(),
            self.0.growth,
            self.0.is_real
        )
    }
}

#[pyfunction]
#[pyo3(signature = (lambda_, d, tol = DEFAULT_TOL))]
fn check_majorization(lambda_: Vec<f64>, d: Vec<f64>, tol: f64) -> PyResult<PyMajorizationReport> {
    let r = spectra_diag::check_majorization(&real(lambda_)?, &real(d)?, tol).map_err(py_err)?;
    Ok(PyMajorizationReport {
        holds: r.holds,
        first_violation: r.first_violation(),
        slacks: r.slacks,
        trace_gap: r.trace_gap,
        tolerance_used: r.tolerance_used,
    })
}

#[pyfunction]
#[pyo3(signature = (lambda_, d, tol = DEFAULT_TOL))]
fn trace_match(lambda_: Vec<Complex64>, d: Vec<Complex64>, tol: f64) -> PyResult<bool> {
    spectra_diag::trace_match(&complex(lambda_)?, &complex(d)?, tol).map_err(py_err)
}

/// Returns `(u, v)` of the rotation `[[u, -v], [v, u]]`.
#[pyfunction]
#[pyo3(signature = (lambda1, lambda2, d1, tol = DEFAULT_TOL))]
fn kernel2(lambda1: f64, lambda2: f64, d1: f64, tol: f64) -> PyResult<(f64, f64)> {
    let k = spectra_diag::kernel2(lambda1, lambda2, d1, tol).map_err(py_err)?;
    Ok((k.u, k.v))
}

#[pyfunction]
#[pyo3(signature = (lambda_, d, tol = DEFAULT_TOL))]
fn select_pivot(lambda_: Vec<f64>, d: Vec<f64>, tol: f64) -> PyResult<usize> {
    spectra_diag::select_pivot(&real(lambda_)?, &real(d)?, tol).map_err(py_err)
}

#[pyfunction]
#[pyo3(signature = (lambda_, d, tol = DEFAULT_TOL))]
fn horn_construct(lambda_: Vec<f64>, d: Vec<f64>, tol: f64) -> PyResult<PyHornCertificate> {
    spectra_diag::horn_construct(&real(lambda_)?, &real(d)?, tol)
        .map(PyHornCertificate)
        .map_err(py_err)
}

#[pyfunction]
#[pyo3(signature = (lambda_, d, tol = DEFAULT_TOL))]
fn mirsky_construct(
    lambda_: Vec<Complex64>,
    d: Vec<Complex64>,
    tol: f64,
) -> PyResult<PyMirskyCertificate> {
    spectra_diag::mirsky_construct(&complex(lambda_)?, &complex(d)?, tol)
        .map(PyMirskyCertificate)
        .map_err(py_err)
}

/// Eigenvalues of a real symmetric matrix, descending.
#[pyfunction]
#[pyo3(signature = (a, tol = 1e-12, max_sweeps = 50))]
fn jacobi_eigenvalues(a: Vec<Vec<f64>>, tol: f64, max_sweeps: usize) -> PyResult<Vec<f64>> {
    spectra_diag::jacobi_eigenvalues(&matrix(&a)?, tol, max_sweeps)
        .map(RealSeq::into_vec)
        .map_err(py_err)
}

#[pyfunction]
#[pyo3(signature = (seed, n, lo = -10.0, hi = 10.0))]
fn random_spectrum(seed: u64, n: usize, lo: f64, hi: f64) -> PyResult<Vec<f64>> {
    gen::random_spectrum(&GenConfig::new(seed, n, lo, hi))
        .map(RealSeq::into_vec)
        .map_err(py_err)
}

#[pyfunction]
#[pyo3(signature = (lambda_, seed, mix_count = 8))]
fn random_majorized_diag(lambda_: Vec<f64>, seed: u64, mix_count: usize) -> PyResult<Vec<f64>> {
    let lambda = real(lambda_)?;
    let cfg = GenConfig::new(seed, lambda.len(), -1.0, 1.0).with_mix(mix_count);
    gen::random_majorized_diag(&lambda, &cfg)
        .map(RealSeq::into_vec)
        .map_err(py_err)
}

#[pyfunction]
#[pyo3(signature = (seed, n, lo = -10.0, hi = 10.0, complex = false))]
fn trace_matched_pair(
    seed: u64,
    n: usize,
    lo: f64,
    hi: f64,
    complex: bool,
) -> PyResult<(Vec<Complex64>, Vec<Complex64>)> {
    let (l, d) =
        gen::trace_matched_pair(&GenConfig::new(seed, n, lo, hi), complex).map_err(py_err)?;
    Ok((l.values().to_vec(), d.values().to_vec()))
}

/// Scales a non-negative spectrum to trace `n`; returns `(lambda, ones)`.
#[pyfunction]
fn corr_preset(lambda_: Vec<f64>) -> PyResult<(Vec<f64>, Vec<f64>)> {
    let (l, d) = gen::corr_preset(&real(lambda_)?).map_err(py_err)?;
    Ok((l.into_vec(), d.into_vec()))
}

#[pymodule]
fn spectra_diag_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("DEFAULT_TOL", DEFAULT_TOL)?;
    m.add_class::<PyMajorizationReport>()?;
    m.add_class::<PyVerifyReport>()?;
    m.add_class::<PyPivotStep>()?;
    m.add_class::<PyHornCertificate>()?;
    m.add_class::<PyMirskyCertificate>()?;
    m.add_function(wrap_pyfunction!(check_majorization, m)?)?;
    m.add_function(wrap_pyfunction!(trace_match, m)?)?;
    m.add_function(wrap_pyfunction!(kernel2, m)?)?;
    m.add_function(wrap_pyfunction!(select_pivot, m)?)?;
    m.add_function(wrap_pyfunction!(horn_construct, m)?)?;
    m.add_function(wrap_pyfunction!(mirsky_construct, m)?)?;
    m.add_function(wrap_pyfunction!(jacobi_eigenvalues, m)?)?;
    m.add_function(wrap_pyfunction!(random_spectrum, m)?)?;
    m.add_function(wrap_pyfunction!(random_majorized_diag, m)?)?;
    m.add_function(wrap_pyfunction!(trace_matched_pair, m)?)?;
    m.add_function(wrap_pyfunction!(corr_preset, m)?)?;
    Ok(())
}
