//! Independent verification oracles.
//!
//! Nothing in here calls constructor code: products are plain triple loops,
//! eigenvalues come from a cyclic Jacobi solver, and characteristic
//! polynomials from a Leibniz expansion.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::horn::HornCertificate;
use crate::matrix::SquareMatrix;
use crate::mirsky::MirskyCertificate;
use crate::seqkit::RealSeq;

/// Largest dimension for which characteristic polynomials are compared.
pub const CHARPOLY_MAX_N: usize = 6;

/// Non-negative square matrix with recorded row and column sum residuals.
#[derive(Debug, Clone, PartialEq)]
pub struct DoublyStochasticMatrix {
    entries: SquareMatrix<f64>,
    row_residual: f64,
    col_residual: f64,
}

impl DoublyStochasticMatrix {
    /// Rejects negative or non-finite entries and records how far row and
    /// column sums are from one.
    pub fn new(entries: SquareMatrix<f64>) -> Result<Self> {
        if let Some(x) = entries
            .as_slice()
            .iter()
            .find(|x| !(x.is_finite() && **x >= 0.0))
        {
            return Err(Error::NotDoublyStochastic(format!("entry {x} is not >= 0")));
        }
        let n = entries.n();
        let row_residual = (0..n)
            .map(|i| (entries.row(i).iter().sum::<f64>() - 1.0).abs())
            .fold(0.0, f64::max);
        let col_residual = (0..n)
            .map(|j| ((0..n).map(|i| entries[(i, j)]).sum::<f64>() - 1.0).abs())
            .fold(0.0, f64::max);
        Ok(Self {
            entries,
            row_residual,
            col_residual,
        })
    }

    pub fn entries(&self) -> &SquareMatrix<f64> {
        &self.entries
    }

    pub fn row_residual(&self) -> f64 {
        self.row_residual
    }

    pub fn col_residual(&self) -> f64 {
        self.col_residual
    }

    /// Matrix-vector product `S x`.
    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.entries.n(), "dimension");
        (0..x.len())
            .map(|i| self.entries.row(i).iter().zip(x).map(|(s, v)| s * v).sum())
            .collect()
    }
}

/// Multipliers for the verification thresholds. `scale` below means
/// `max(1, ‖Λ‖∞)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TolProfile {
    /// Horn diagonal: `diag · N · scale`.
    pub diag: f64,
    /// `orth · N`.
    pub orth: f64,
    /// Jacobi eigenvalues vs sorted Λ: `eig · scale`.
    pub eig: f64,
    /// `‖SΛ − D‖∞ ≤ schur · N · scale`.
    pub schur: f64,
    /// Row/column sums of `S`: `stochastic · N`.
    pub stochastic: f64,
    /// Mirsky diagonal, per entry: `mirsky_diag · max(1, ‖Λ‖∞, ‖D‖∞)`.
    pub mirsky_diag: f64,
    /// `similarity · N · growth(L)`.
    pub similarity: f64,
    /// Relative characteristic-polynomial coefficient error.
    pub charpoly: f64,
    pub jacobi_tol: f64,
    pub jacobi_max_sweeps: usize,
}

impl Default for TolProfile {
    fn default() -> Self {
        Self {
            diag: 1e-10,
            orth: 1e-12,
            eig: 1e-8,
            schur: 1e-10,
            stochastic: 1e-12,
            mirsky_diag: 1e-12,
            similarity: 1e-10,
            charpoly: 1e-8,
            jacobi_tol: 1e-12,
            jacobi_max_sweeps: 50,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Check {
    pub value: f64,
    pub threshold: f64,
}

impl Check {
    fn new(value: f64, threshold: f64) -> Self {
        Self { value, threshold }
    }

    /// NaN never passes.
    pub fn passes(&self) -> bool {
        self.value <= self.threshold
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportKind {
    Horn,
    Mirsky,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub kind: ReportKind,
    pub n: usize,
    pub diag: Check,
    pub orth: Option<Check>,
    pub similarity: Option<Check>,
    pub eig: Option<Check>,
    pub schur_relation: Option<Check>,
    pub stochastic: Option<Check>,
    pub charpoly: Option<Check>,
    pub pass: bool,
}

impl VerifyReport {
    fn finish(mut self) -> Self {
        let pass = self.checks().all(|c| c.passes());
        self.pass = pass;
        self
    }

    pub fn checks(&self) -> impl Iterator<Item = &Check> {
        std::iter::once(&self.diag).chain(
            [
                &self.orth,
                &self.similarity,
                &self.eig,
                &self.schur_relation,
                &self.stochastic,
                &self.charpoly,
            ]
            .into_iter()
            .flatten(),
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct JacobiOutcome {
    pub eigenvalues: RealSeq,
    pub sweeps: usize,
    pub off_norm: f64,
}

/// Eigenvalues of a symmetric matrix, sorted descending.
pub fn jacobi_eigenvalues(a: &SquareMatrix<f64>, tol: f64, max_sweeps: usize) -> Result<RealSeq> {
    jacobi_sweeps(a, tol, max_sweeps).map(|o| o.eigenvalues)
}

/// Cyclic-by-row Jacobi. Stops once the off-diagonal Frobenius norm is at
/// most `tol · ‖a‖_F`.
pub fn jacobi_sweeps(a: &SquareMatrix<f64>, tol: f64, max_sweeps: usize) -> Result<JacobiOutcome> {
    let n = a.n();
    if n == 0 {
        return Err(Error::InvalidSequence("empty matrix".into()));
    }
    let amax = a.as_slice().iter().fold(0.0_f64, |m, x| m.max(x.abs()));
    if !amax.is_finite() {
        return Err(Error::InvalidSequence(
            "matrix has non-finite entries".into(),
        ));
    }
    let mut asym = 0.0_f64;
    for i in 0..n {
        for j in i + 1..n {
            asym = asym.max((a[(i, j)] - a[(j, i)]).abs());
        }
    }
    if asym > 1e-12 * amax {
        return Err(Error::NotSymmetric { asymmetry: asym });
    }

    let mut m = a.clone();
    let fro = m.as_slice().iter().map(|x| x * x).sum::<f64>().sqrt();
    let off = |m: &SquareMatrix<f64>| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += m[(i, j)] * m[(i, j)];
                }
            }
        }
        s.sqrt()
    };

    let mut sweeps = 0;
    let mut off_norm = off(&m);
    while off_norm > tol * fro {
        if sweeps == max_sweeps {
            return Err(Error::NoConvergence { off_norm, sweeps });
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = m[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let theta = (m[(q, q)] - m[(p, p)]) / (2.0 * apq);
                let t = if theta.abs() > 1e150 {
                    0.5 / theta
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (x, y) = (m[(k, p)], m[(k, q)]);
                    m[(k, p)] = c * x - s * y;
                    m[(k, q)] = s * x + c * y;
                }
                for k in 0..n {
                    let (x, y) = (m[(p, k)], m[(q, k)]);
                    m[(p, k)] = c * x - s * y;
                    m[(q, k)] = s * x + c * y;
                }
                m[(p, q)] = 0.0;
                m[(q, p)] = 0.0;
            }
        }
        off_norm = off(&m);
    }

    let mut eig = m.diagonal();
    eig.sort_by(|x, y| y.partial_cmp(x).expect("finite"));
    Ok(JacobiOutcome {
        eigenvalues: RealSeq::new(eig)?,
        sweeps,
        off_norm,
    })
}

/// Coefficients of `det(xI − A)`, highest degree first (leading 1), by
/// Leibniz expansion. Exponential in `n`; meant for `n ≤ CHARPOLY_MAX_N`.
pub fn charpoly_leibniz(a: &SquareMatrix<Complex64>) -> Vec<Complex64> {
    let n = a.n();
    // ascending-degree accumulator
    let mut total = vec![Complex64::new(0.0, 0.0); n + 1];
    let mut perm: Vec<usize> = (0..n).collect();
    let mut sign = 1.0;
    let mut add_term = |perm: &[usize], sign: f64| {
        let mut poly = vec![Complex64::new(sign, 0.0)];
        for (i, &j) in perm.iter().enumerate() {
            let entry = -a[(i, j)];
            let mut next = vec![Complex64::new(0.0, 0.0); poly.len() + 1];
            for (deg, &p) in poly.iter().enumerate() {
                next[deg] += p * entry;
                if i == j {
                    next[deg + 1] += p;
                }
            }
            poly = next;
        }
        for (deg, p) in poly.into_iter().enumerate() {
            total[deg] += p;
        }
    };
    // Heap's algorithm; every swap flips the sign
    let mut c = vec![0usize; n];
    add_term(&perm, sign);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            sign = -sign;
            add_term(&perm, sign);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    total.reverse();
    total
}

/// Coefficients of `Π (x − r_j)`, highest degree first.
pub fn poly_from_roots(roots: &[Complex64]) -> Vec<Complex64> {
    let mut poly = vec![Complex64::new(1.0, 0.0)];
    for &r in roots {
        let mut next = vec![Complex64::new(0.0, 0.0); poly.len() + 1];
        for (k, &p) in poly.iter().enumerate() {
            next[k] += p;
            next[k + 1] -= p * r;
        }
        poly = next;
    }
    poly
}

/// `max_k |p_k − q_k| / max(1, max_k |q_k|)`.
pub fn relative_coeff_error(p: &[Complex64], q: &[Complex64]) -> f64 {
    if p.len() != q.len() {
        return f64::INFINITY;
    }
    let scale = q.iter().fold(1.0_f64, |m, z| m.max(z.norm()));
    p.iter()
        .zip(q)
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max)
        / scale
}

/// Re-checks a Horn certificate from its raw data.
pub fn verify_horn(cert: &HornCertificate, profile: &TolProfile) -> VerifyReport {
    let q = cert.q.entries();
    let lam = cert.lambda.values();
    let d = cert.d.values();
    let n = q.n();
    let nf = n as f64;
    let scale = cert.lambda.max_abs().max(1.0);

    if lam.len() != n || d.len() != n {
        let inf = Check::new(f64::INFINITY, 0.0);
        return VerifyReport {
            kind: ReportKind::Horn,
            n,
            diag: inf,
            orth: None,
            similarity: None,
            eig: None,
            schur_relation: None,
            stochastic: None,
            charpoly: None,
            pass: false,
        };
    }

    // A = Q diag(Λ) Qᵀ, upper triangle then mirrored
    let mut a = SquareMatrix::<f64>::zeros(n);
    for i in 0..n {
        for j in i..n {
            let mut s = 0.0;
            for k in 0..n {
                s += q[(i, k)] * lam[k] * q[(j, k)];
            }
            a[(i, j)] = s;
            a[(j, i)] = s;
        }
    }
    let diag_err = (0..n).map(|i| (a[(i, i)] - d[i]).abs()).fold(0.0, f64::max);

    let mut orth_err = 0.0_f64;
    for i in 0..n {
        for j in 0..n {
            let mut s = 0.0;
            for k in 0..n {
                s += q[(k, i)] * q[(k, j)];
            }
            let target = if i == j { 1.0 } else { 0.0 };
            orth_err = orth_err.max((s - target).abs());
        }
    }

    let mut sorted = lam.to_vec();
    sorted.sort_by(|x, y| y.partial_cmp(x).expect("finite"));
    let eig_err = match jacobi_eigenvalues(&a, profile.jacobi_tol, profile.jacobi_max_sweeps) {
        Ok(ev) => ev
            .values()
            .iter()
            .zip(&sorted)
            .map(|(x, y)| (x - y).abs())
            .fold(0.0, f64::max),
        Err(_) => f64::INFINITY,
    };

    let mut schur_err = 0.0_f64;
    let mut row_err = 0.0_f64;
    let mut col_sums = vec![0.0; n];
    for i in 0..n {
        let mut di = 0.0;
        let mut row = 0.0;
        for j in 0..n {
            let s = q[(i, j)] * q[(i, j)];
            di += s * lam[j];
            row += s;
            col_sums[j] += s;
        }
        schur_err = schur_err.max((di - d[i]).abs());
        row_err = row_err.max((row - 1.0).abs());
    }
    let col_err = col_sums.iter().map(|c| (c - 1.0).abs()).fold(0.0, f64::max);

    VerifyReport {
        kind: ReportKind::Horn,
        n,
        diag: Check::new(diag_err, profile.diag * nf * scale),
        orth: Some(Check::new(orth_err, profile.orth * nf)),
        similarity: None,
        eig: Some(Check::new(eig_err, profile.eig * scale)),
        schur_relation: Some(Check::new(schur_err, profile.schur * nf * scale)),
        stochastic: Some(Check::new(row_err.max(col_err), profile.stochastic * nf)),
        charpoly: None,
        pass: false,
    }
    .finish()
}

/// Re-checks a Mirsky certificate from its raw data.
pub fn verify_mirsky(cert: &MirskyCertificate, profile: &TolProfile) -> VerifyReport {
    let l = cert.l.entries();
    let a = &cert.a;
    let lam = cert.lambda.values();
    let d = cert.d.values();
    let n = a.n();
    let nf = n as f64;

    if l.n() != n || lam.len() != n || d.len() != n {
        return VerifyReport {
            kind: ReportKind::Mirsky,
            n,
            diag: Check::new(f64::INFINITY, 0.0),
            orth: None,
            similarity: None,
            eig: None,
            schur_relation: None,
            stochastic: None,
            charpoly: None,
            pass: false,
        };
    }

    let scale = lam.iter().chain(d).fold(1.0_f64, |m, z| m.max(z.norm()));
    let diag_err = (0..n)
        .map(|i| (a[(i, i)] - d[i]).norm())
        .fold(0.0, f64::max);

    // [U_Λ] built here from scratch
    let u = |i: usize, j: usize| -> Complex64 {
        if i == j {
            lam[i]
        } else if j == i + 1 {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    };
    let mut sim_err = 0.0_f64;
    for i in 0..n {
        for j in 0..n {
            let mut ul = Complex64::new(0.0, 0.0);
            let mut la = Complex64::new(0.0, 0.0);
            for k in 0..n {
                ul += u(i, k) * l[(k, j)];
                la += l[(i, k)] * a[(k, j)];
            }
            sim_err = sim_err.max((ul - la).norm());
        }
    }
    let growth = l.as_slice().iter().fold(1.0_f64, |m, z| m.max(z.norm()));

    let charpoly = (n <= CHARPOLY_MAX_N).then(|| {
        let err = relative_coeff_error(&charpoly_leibniz(a), &poly_from_roots(lam));
        Check::new(err, profile.charpoly)
    });

    VerifyReport {
        kind: ReportKind::Mirsky,
        n,
        diag: Check::new(diag_err, profile.mirsky_diag * scale),
        orth: None,
        similarity: Some(Check::new(sim_err, profile.similarity * nf * growth)),
        eig: None,
        schur_relation: None,
        stochastic: None,
        charpoly,
        pass: false,
    }
    .finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sm(rows: &[Vec<f64>]) -> SquareMatrix<f64> {
        SquareMatrix::from_rows(rows).unwrap()
    }

    #[test]
    fn jacobi_examples() {
        let e = jacobi_eigenvalues(&sm(&[vec![3.0, 0.0], vec![0.0, 1.0]]), 1e-12, 10).unwrap();
        assert_eq!(e.values(), &[3.0, 1.0]);
        let e = jacobi_eigenvalues(&sm(&[vec![2.0, 1.0], vec![1.0, 2.0]]), 1e-12, 10).unwrap();
        assert!((e.values()[0] - 3.0).abs() < 1e-14 && (e.values()[1] - 1.0).abs() < 1e-14);
        let e = jacobi_eigenvalues(&sm(&[vec![0.0, 1.0], vec![1.0, 0.0]]), 1e-12, 10).unwrap();
        assert!((e.values()[0] - 1.0).abs() < 1e-15 && (e.values()[1] + 1.0).abs() < 1e-15);
    }

    #[test]
    fn jacobi_errors() {
        assert!(matches!(
            jacobi_eigenvalues(&sm(&[vec![1.0, 2.0], vec![0.0, 1.0]]), 1e-12, 10),
            Err(Error::NotSymmetric { .. })
        ));
        let a = sm(&[
            vec![4.0, 1.0, 2.0],
            vec![1.0, 3.0, 0.5],
            vec![2.0, 0.5, 1.0],
        ]);
        assert!(matches!(
            jacobi_eigenvalues(&a, 1e-15, 1),
            Err(Error::NoConvergence { sweeps: 1, .. })
        ));
    }

    #[test]
    fn jacobi_trace_and_frobenius_preserved() {
        let a = sm(&[
            vec![4.0, 1.0, 2.0, -1.0],
            vec![1.0, 3.0, 0.5, 0.0],
            vec![2.0, 0.5, 1.0, 0.25],
            vec![-1.0, 0.0, 0.25, -2.0],
        ]);
        let out = jacobi_sweeps(&a, 1e-14, 30).unwrap();
        let tr: f64 = out.eigenvalues.values().iter().sum();
        assert!((tr - 6.0).abs() < 1e-13);
        let fro2: f64 = a.as_slice().iter().map(|x| x * x).sum();
        let ev2: f64 = out.eigenvalues.values().iter().map(|x| x * x).sum();
        assert!((fro2 - ev2).abs() < 1e-12);
        assert!(out.sweeps <= 10);
    }

    #[test]
    fn charpoly_matches_known() {
        let a = SquareMatrix::from_rows(&[
            vec![Complex64::new(2.0, 0.0), Complex64::new(1.0, 0.0)],
            vec![Complex64::new(3.0, 0.0), Complex64::new(4.0, 0.0)],
        ])
        .unwrap();
        let p = charpoly_leibniz(&a);
        assert_eq!(
            p,
            vec![
                Complex64::new(1.0, 0.0),
                Complex64::new(-6.0, 0.0),
                Complex64::new(5.0, 0.0)
            ]
        );
        let q = poly_from_roots(&[Complex64::new(5.0, 0.0), Complex64::new(1.0, 0.0)]);
        assert_eq!(relative_coeff_error(&p, &q), 0.0);
    }

    #[test]
    fn charpoly_of_triangular_is_product_of_diagonal() {
        let diag = [1.0, -2.0, 3.0, 0.5];
        let a = SquareMatrix::from_fn(4, |i, j| {
            if i == j {
                Complex64::new(diag[i], 0.0)
            } else if j > i {
                Complex64::new((i + 2 * j) as f64, 1.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        });
        let roots: Vec<_> = diag.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        assert!(relative_coeff_error(&charpoly_leibniz(&a), &poly_from_roots(&roots)) < 1e-15);
    }

    #[test]
    fn doubly_stochastic() {
        let s = DoublyStochasticMatrix::new(sm(&[vec![0.25, 0.75], vec![0.75, 0.25]])).unwrap();
        assert_eq!((s.row_residual(), s.col_residual()), (0.0, 0.0));
        assert_eq!(s.apply(&[4.0, 0.0]), vec![1.0, 3.0]);
        assert!(DoublyStochasticMatrix::new(sm(&[vec![-0.1]])).is_err());
        let s = DoublyStochasticMatrix::new(sm(&[vec![0.5, 0.5], vec![0.0, 0.5]])).unwrap();
        assert_eq!((s.row_residual(), s.col_residual()), (0.5, 0.5));
    }
}
