//! Constructive solvers for two inverse eigenvalue/diagonal problems.
//!
//! * [`horn`]: given real `Λ ≻ D`, a real orthogonal `Q` with
//!   `diag(Q [Λ] Qᵀ) = D`.
//! * [`mirsky`]: given complex `Λ`, `D` with equal sums, a unit lower
//!   triangular `L` with `diag(L⁻¹ [U_Λ] L) = D`.
//!
//! [`seqkit`] holds the sequence types and majorization checks, [`verify`]
//! the independent oracles, [`gen`] the seeded generators and [`cli`] the
//! command-line front end.

pub mod cli;
pub mod error;
pub mod gen;
pub mod horn;
pub mod matrix;
pub mod mirsky;
pub mod seqkit;
pub mod verify;

pub use error::{Error, Result};
pub use horn::{
    hermitian_of, horn_construct, kernel2, orthostochastic_of, select_pivot, HornCertificate,
    OrthogonalMatrix, PivotStep, TwoByTwoKernel,
};
pub use matrix::SquareMatrix;
pub use mirsky::{
    companion_of, elementary_step, mirsky_construct, CompanionBidiagonal, MirskyCertificate,
    UnitLowerTriangular,
};
pub use num_complex::Complex64;
pub use seqkit::{
    check_majorization, sort_desc, trace_match, ComplexSeq, MajorizationReport, Permutation,
    RealSeq,
};
pub use verify::{
    jacobi_eigenvalues, verify_horn, verify_mirsky, DoublyStochasticMatrix, TolProfile,
    VerifyReport,
};

/// Construction tolerance used when none is given.
pub const DEFAULT_TOL: f64 = 1e-12;
