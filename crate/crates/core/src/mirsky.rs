//! Constructive Mirsky solver.
//!
//! Given complex sequences with `ΣΛ = ΣD`, builds a unit lower triangular
//! `L` such that `A = L⁻¹ [U_Λ] L` has diagonal `D`, where `[U_Λ]` carries
//! `Λ` on the diagonal and ones on the superdiagonal.
//!
//! Step `k` conjugates by the elementary factor `I + c_k e_{k+1} e_kᵀ` with
//! `c_k = d_k − A_kk`. On the 2×2 block `[[λ_k, 1], [0, λ_{k+1}]]` this
//! yields diagonal `(d_k, λ_k + λ_{k+1} − d_k)`; the second value is called
//! `lambda_next` here. The superdiagonal entry `(k+1, k+2)` stays exactly
//! one, so the trailing block is again a companion bidiagonal and the next
//! step applies unchanged. The last diagonal entry lands on `d_N` through the
//! trace identity.
//!
//! `A` is updated in place by one column operation and one row operation per
//! step; `L⁻¹` is never formed. The similarity is certified afterwards by the
//! residual `‖[U_Λ] L − L A‖_max`. Real input produces exactly real output
//! since no step introduces an imaginary component.

use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::error::{check_tol, Error, Result};
use crate::matrix::SquareMatrix;
use crate::seqkit::{trace_gap, ComplexSeq};

/// Growth of `L` above which callers should warn about conditioning.
pub const GROWTH_WARNING: f64 = 1e8;

/// `[U_Λ]`: `Λ` on the diagonal, ones immediately above it, zeros elsewhere.
#[derive(Debug, Clone, PartialEq)]
pub struct CompanionBidiagonal {
    diag: ComplexSeq,
}

impl CompanionBidiagonal {
    pub fn n(&self) -> usize {
        self.diag.len()
    }

    pub fn diag(&self) -> &ComplexSeq {
        &self.diag
    }

    pub fn to_dense(&self) -> SquareMatrix<Complex64> {
        let v = self.diag.values();
        SquareMatrix::from_fn(self.n(), |i, j| {
            if i == j {
                v[i]
            } else if j == i + 1 {
                Complex64::one()
            } else {
                Complex64::zero()
            }
        })
    }
}

pub fn companion_of(lambda: &ComplexSeq) -> CompanionBidiagonal {
    CompanionBidiagonal {
        diag: lambda.clone(),
    }
}

/// Dense complex matrix with exact ones on the diagonal and exact zeros
/// above it.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitLowerTriangular {
    entries: SquareMatrix<Complex64>,
}

impl UnitLowerTriangular {
    pub fn identity(n: usize) -> Self {
        Self {
            entries: SquareMatrix::identity(n),
        }
    }

    /// `I + c e_{k+1} e_kᵀ`.
    pub fn elementary(n: usize, k: usize, c: Complex64) -> Self {
        assert!(k + 1 < n, "elementary factor index out of range");
        let mut l = Self::identity(n);
        l.entries[(k + 1, k)] = c;
        l
    }

    pub fn from_entries(entries: SquareMatrix<Complex64>) -> Result<Self> {
        let n = entries.n();
        for i in 0..n {
            for j in i..n {
                let want = if i == j {
                    Complex64::one()
                } else {
                    Complex64::zero()
                };
                if entries[(i, j)] != want {
                    return Err(Error::NotUnitLowerTriangular { row: i, col: j });
                }
            }
        }
        Ok(Self { entries })
    }

    pub fn entries(&self) -> &SquareMatrix<Complex64> {
        &self.entries
    }

    pub fn n(&self) -> usize {
        self.entries.n()
    }

    /// Largest entry magnitude (at least 1).
    pub fn growth(&self) -> f64 {
        self.entries
            .as_slice()
            .iter()
            .fold(1.0, |m, z| m.max(z.norm()))
    }

    pub fn is_real(&self) -> bool {
        self.entries.as_slice().iter().all(|z| z.im == 0.0)
    }

    /// Product within the group; the unit diagonal and zero upper part are
    /// placed, not computed.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n(), other.n(), "dimension");
        let n = self.n();
        let (a, b) = (&self.entries, &other.entries);
        let entries = SquareMatrix::from_fn(n, |i, j| {
            if i == j {
                Complex64::one()
            } else if j > i {
                Complex64::zero()
            } else {
                (j..=i).map(|k| a[(i, k)] * b[(k, j)]).sum()
            }
        });
        Self { entries }
    }

    /// Inverse by forward substitution; again unit lower triangular.
    pub fn inverse(&self) -> Self {
        let n = self.n();
        let l = &self.entries;
        let mut inv = SquareMatrix::<Complex64>::identity(n);
        for j in 0..n {
            for i in j + 1..n {
                let s: Complex64 = (j..i).map(|k| l[(i, k)] * inv[(k, j)]).sum();
                inv[(i, j)] = -s;
            }
        }
        Self { entries: inv }
    }
}

pub fn elementary_step(lambda_k: Complex64, d_k: Complex64) -> Complex64 {
    d_k - lambda_k
}

#[derive(Debug, Clone, PartialEq)]
pub struct MirskyCertificate {
    pub l: UnitLowerTriangular,
    pub a: SquareMatrix<Complex64>,
    pub lambda: ComplexSeq,
    pub d: ComplexSeq,
    pub c_values: Vec<Complex64>,
    /// `‖[U_Λ] L − L A‖_max`.
    pub similarity_residual: f64,
    /// `max_i |A_ii − d_i|`.
    pub diag_residual: f64,
    pub growth: f64,
    pub is_real: bool,
}

pub fn mirsky_construct(
    lambda: &ComplexSeq,
    d: &ComplexSeq,
    tol: f64,
) -> Result<MirskyCertificate> {
    let gap = trace_gap(lambda, d)?;
    check_tol(tol)?;
    if gap.norm() > tol * lambda.sum().norm().max(1.0) {
        return Err(Error::TraceMismatch { gap: gap.norm() });
    }
    let n = lambda.len();
    let companion = companion_of(lambda);
    let mut a = companion.to_dense();
    let mut l = SquareMatrix::<Complex64>::identity(n);
    let mut c_values = Vec::with_capacity(n.saturating_sub(1));
    let targets = d.values();

    for k in 0..n.saturating_sub(1) {
        let c = elementary_step(a[(k, k)], targets[k]);
        c_values.push(c);
        if c.is_zero() {
            continue;
        }
        // A ← A E: column k += c · column k+1
        for i in 0..n {
            let x = a[(i, k + 1)];
            a[(i, k)] += c * x;
        }
        // A ← E⁻¹ A: row k+1 −= c · row k
        for j in 0..n {
            let x = a[(k, j)];
            a[(k + 1, j)] -= c * x;
        }
        // L ← L E: column k += c · column k+1
        for i in 0..n {
            let x = l[(i, k + 1)];
            l[(i, k)] += c * x;
        }
        debug_assert_eq!(a[(k, k + 1)], Complex64::one());
    }

    let l = UnitLowerTriangular::from_entries(l)
        .expect("elementary factors keep the unit lower triangular shape");
    let diag_residual = (0..n)
        .map(|i| (a[(i, i)] - targets[i]).norm())
        .fold(0.0, f64::max);
    let similarity_residual = similarity_residual(&companion.to_dense(), &l, &a);
    let is_real = lambda.is_real() && d.is_real();
    Ok(MirskyCertificate {
        growth: l.growth(),
        l,
        a,
        lambda: lambda.clone(),
        d: d.clone(),
        c_values,
        similarity_residual,
        diag_residual,
        is_real,
    })
}

fn similarity_residual(
    u: &SquareMatrix<Complex64>,
    l: &UnitLowerTriangular,
    a: &SquareMatrix<Complex64>,
) -> f64 {
    let n = u.n();
    let l = l.entries();
    let mut worst = 0.0_f64;
    for i in 0..n {
        for j in 0..n {
            let ul: Complex64 = (0..n).map(|k| u[(i, k)] * l[(k, j)]).sum();
            let la: Complex64 = (0..n).map(|k| l[(i, k)] * a[(k, j)]).sum();
            worst = worst.max((ul - la).norm());
        }
    }
    worst
}
