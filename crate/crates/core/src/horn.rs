//! Constructive Schur–Horn solver.
//!
//! Given `Λ ≻ D`, builds a real orthogonal `Q` with `diag(Q [Λ] Qᵀ) = D`.
//!
//! The construction works on descending-sorted copies. At each step it picks
//! the smallest `K` with `d_{K+1} ≥ λ_{K+1}`, which gives the interlacing
//! chain `λ_K ≥ d_K ≥ d_{K+1} ≥ λ_{K+1}`. A 2×2 rotation on coordinates
//! `(K, K+1)` moves `d_K` onto position `K` and leaves
//! `λ'_{K+1} = λ_K + λ_{K+1} − d_K` at position `K+1`. Position `K` is then
//! finished: it is dropped from the active index list and the remaining
//! diagonal problem `Λ'' ≻ D''` is solved on the surviving coordinates. The
//! rotations compose as `Q = G_{N−1} ⋯ G_2 G_1`, so every step is a two-row
//! update of a running `N×N` accumulator.
//!
//! `λ'_{K+1}` lies between `λ_{K+1}` and `λ_K`, so the reduced spectrum is
//! still sorted and no reordering happens between steps.
//!
//! The 2×2 block is `[[u, −v], [v, u]]` with
//! `u = √((d₁−λ₂)/(λ₁−λ₂))`, `v = √((λ₁−d₁)/(λ₁−λ₂))`, both non-negative.
//! `Q` is not unique; this sign choice is fixed.
//!
//! Orthogonality of every [`OrthogonalMatrix`] is certified on construction:
//! `‖QᵀQ − I‖_max ≤ KAPPA_ORTH · N · ε`.

use crate::error::{check_tol, Error, Result};
use crate::matrix::SquareMatrix;
use crate::seqkit::{check_majorization, sort_desc, RealSeq};
use crate::verify::DoublyStochasticMatrix;

/// Orthogonality certification constant.
pub const KAPPA_ORTH: f64 = 64.0;

/// Dense real matrix with a recorded orthogonality residual `‖QᵀQ − I‖_max`.
#[derive(Debug, Clone, PartialEq)]
pub struct OrthogonalMatrix {
    entries: SquareMatrix<f64>,
    residual: f64,
}

impl OrthogonalMatrix {
    /// Certifies `entries` against `KAPPA_ORTH · N · ε`.
    pub fn new(entries: SquareMatrix<f64>) -> Result<Self> {
        let m = Self::new_unchecked(entries);
        let bound = Self::bound(m.n());
        if m.residual <= bound {
            Ok(m)
        } else {
            Err(Error::NotOrthogonal {
                residual: m.residual,
                bound,
            })
        }
    }

    /// Records the residual without enforcing the bound. Used when reading
    /// matrices back for verification.
    pub fn new_unchecked(entries: SquareMatrix<f64>) -> Self {
        let residual = gram_residual(&entries);
        Self { entries, residual }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            entries: SquareMatrix::identity(n),
            residual: 0.0,
        }
    }

    pub fn bound(n: usize) -> f64 {
        KAPPA_ORTH * n.max(1) as f64 * f64::EPSILON
    }

    pub fn entries(&self) -> &SquareMatrix<f64> {
        &self.entries
    }

    pub fn n(&self) -> usize {
        self.entries.n()
    }

    pub fn residual(&self) -> f64 {
        self.residual
    }

    pub fn is_certified(&self) -> bool {
        self.residual <= Self::bound(self.n())
    }
}

fn gram_residual(q: &SquareMatrix<f64>) -> f64 {
    let n = q.n();
    let mut worst = 0.0_f64;
    for i in 0..n {
        for j in i..n {
            let dot: f64 = (0..n).map(|k| q[(k, i)] * q[(k, j)]).sum();
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((dot - target).abs());
        }
    }
    worst
}

/// The 2×2 orthogonal block `[[u, −v], [v, u]]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoByTwoKernel {
    pub u: f64,
    pub v: f64,
}

impl TwoByTwoKernel {
    pub const IDENTITY: Self = Self { u: 1.0, v: 0.0 };

    pub fn is_identity(&self) -> bool {
        self.u == 1.0 && self.v == 0.0
    }

    pub fn matrix(&self) -> [[f64; 2]; 2] {
        [[self.u, -self.v], [self.v, self.u]]
    }

    /// Diagonal of `G diag(λ₁, λ₂) Gᵀ`.
    pub fn conjugated_diagonal(&self, lambda1: f64, lambda2: f64) -> (f64, f64) {
        let (uu, vv) = (self.u * self.u, self.v * self.v);
        (uu * lambda1 + vv * lambda2, vv * lambda1 + uu * lambda2)
    }
}

/// Rotation taking `diag(λ₁, λ₂)` to a matrix with `(1,1)` entry `d₁`.
///
/// Requires `λ₂ ≤ d₁ ≤ λ₁` up to `tol · max(1, |λ₁| + |λ₂|)`. Radicands that
/// fall negative within that slack are clamped to zero, and `λ₁ = λ₂` (within
/// slack) yields the identity.
pub fn kernel2(lambda1: f64, lambda2: f64, d1: f64, tol: f64) -> Result<TwoByTwoKernel> {
    check_tol(tol)?;
    let slack = tol * (lambda1.abs() + lambda2.abs()).max(1.0);
    if !(d1 >= lambda2 - slack && d1 <= lambda1 + slack) {
        return Err(Error::IntervalViolation {
            d1,
            lower: lambda2,
            upper: lambda1,
        });
    }
    let gap = lambda1 - lambda2;
    if gap <= slack {
        return Ok(TwoByTwoKernel::IDENTITY);
    }
    let upper = (d1 - lambda2).max(0.0);
    let lower = (lambda1 - d1).max(0.0);
    let u = (upper / gap).sqrt();
    let v = (lower / gap).sqrt();
    if v == 0.0 {
        return Ok(TwoByTwoKernel::IDENTITY);
    }
    if u == 0.0 {
        return Ok(TwoByTwoKernel { u: 0.0, v: 1.0 });
    }
    let r = u.hypot(v);
    Ok(TwoByTwoKernel { u: u / r, v: v / r })
}

/// One reduction step, recorded in sorted coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PivotStep {
    /// 1-based pivot index within the active (not yet fixed) positions.
    pub k: usize,
    /// 0-based position in the sorted coordinates that this step fixes.
    pub slot: usize,
    pub lambda_k: f64,
    pub lambda_k1: f64,
    /// Diagonal value placed at `slot`.
    pub d_k: f64,
    /// Next target, `d_{K+1}`.
    pub d_k1: f64,
    /// `λ_K + λ_{K+1} − d_K`.
    pub lambda_k1_new: f64,
    pub kernel: TwoByTwoKernel,
}

/// Audit trail of one construction; `lambda` and `d` are in caller order.
#[derive(Debug, Clone, PartialEq)]
pub struct HornCertificate {
    pub q: OrthogonalMatrix,
    pub lambda: RealSeq,
    pub d: RealSeq,
    pub tol: f64,
    /// `‖diag(Q [Λ] Qᵀ) − D‖∞`.
    pub diag_residual: f64,
    pub orth_residual: f64,
    pub steps: Vec<PivotStep>,
}

/// Smallest 0-based `k < m−1` with `d[k+1] ≥ λ[k+1] − slack`.
fn pivot_index(lambda: &[f64], d: &[f64], slack: f64) -> Option<usize> {
    (0..lambda.len().saturating_sub(1)).find(|&k| d[k + 1] >= lambda[k + 1] - slack)
}

/// Pivot selection on sorted sequences; returns the 1-based `K`.
pub fn select_pivot(lambda: &RealSeq, d: &RealSeq, tol: f64) -> Result<usize> {
    check_tol(tol)?;
    if lambda.len() != d.len() {
        return Err(Error::DimensionMismatch {
            left: lambda.len(),
            right: d.len(),
        });
    }
    if lambda.len() < 2 {
        return Err(Error::InvalidSequence(
            "pivot selection needs at least two entries".into(),
        ));
    }
    if !lambda.is_sorted_desc() || !d.is_sorted_desc() {
        return Err(Error::InvalidSequence(
            "pivot selection needs descending input".into(),
        ));
    }
    let slack = tol * lambda.max_abs().max(1.0);
    pivot_index(lambda.values(), d.values(), slack)
        .map(|k| k + 1)
        .ok_or(Error::MajorizationViolated {
            index: lambda.len(),
        })
}

/// Builds `Q` with `diag(Q [Λ] Qᵀ) = D` in the caller's ordering.
pub fn horn_construct(lambda: &RealSeq, d: &RealSeq, tol: f64) -> Result<HornCertificate> {
    let report = check_majorization(lambda, d, tol)?;
    if let Some(index) = report.first_violation() {
        return Err(Error::MajorizationViolated { index });
    }
    let n = lambda.len();
    let (lambda_sorted, lambda_perm) = sort_desc(lambda);
    let (d_sorted, d_perm) = sort_desc(d);
    let slack = tol * lambda.max_abs().max(1.0);

    let mut q = SquareMatrix::<f64>::identity(n);
    let mut active: Vec<usize> = (0..n).collect();
    let mut lam: Vec<f64> = lambda_sorted.into_vec();
    let mut dd: Vec<f64> = d_sorted.into_vec();
    let mut steps = Vec::with_capacity(n.saturating_sub(1));

    while lam.len() > 1 {
        let k = pivot_index(&lam, &dd, slack).ok_or(Error::MajorizationViolated {
            index: n - lam.len() + 1,
        })?;
        let (l1, l2, target) = (lam[k], lam[k + 1], dd[k]);
        let kernel = kernel2(l1, l2, target, tol)?;
        let placed = if kernel.is_identity() {
            l1
        } else {
            target.clamp(l2, l1)
        };
        let lambda_next = l2 + (l1 - placed);
        let (a, b) = (active[k], active[k + 1]);
        if !kernel.is_identity() {
            rotate_rows(&mut q, a, b, kernel);
        }
        steps.push(PivotStep {
            k: k + 1,
            slot: a,
            lambda_k: l1,
            lambda_k1: l2,
            d_k: placed,
            d_k1: dd[k + 1],
            lambda_k1_new: lambda_next,
            kernel,
        });
        lam[k] = placed;
        lam[k + 1] = lambda_next;
        debug_assert!(
            majorization_sorted_holds(&lam, &dd, tol.max(1e-12)),
            "updated spectrum no longer majorizes the target at step {}",
            steps.len()
        );
        lam.remove(k);
        dd.remove(k);
        active.remove(k);
        debug_assert!(
            lam.windows(2)
                .all(|w| w[0] >= w[1] - 4.0 * slack.max(f64::EPSILON)),
            "reduced spectrum lost its order"
        );
    }

    // back to caller order: Q_user[pd[i]][pλ[j]] = Q_sorted[i][j]
    let (pl, pd) = (lambda_perm.map(), d_perm.map());
    let mut q_user = SquareMatrix::<f64>::zeros(n);
    for i in 0..n {
        for j in 0..n {
            q_user[(pd[i], pl[j])] = q[(i, j)];
        }
    }

    let q = OrthogonalMatrix::new(q_user)?;
    let diag_residual = diagonal_residual(&q, lambda.values(), d.values());
    let orth_residual = q.residual();
    Ok(HornCertificate {
        q,
        lambda: lambda.clone(),
        d: d.clone(),
        tol,
        diag_residual,
        orth_residual,
        steps,
    })
}

fn majorization_sorted_holds(lambda: &[f64], d: &[f64], tol: f64) -> bool {
    let l = RealSeq::new(lambda.to_vec()).expect("finite");
    let d = RealSeq::new(d.to_vec()).expect("finite");
    check_majorization(&l, &d, tol)
        .map(|r| r.holds)
        .unwrap_or(false)
}

/// `Q ← G Q` with `G` acting on rows `a`, `b`.
fn rotate_rows(q: &mut SquareMatrix<f64>, a: usize, b: usize, g: TwoByTwoKernel) {
    for j in 0..q.n() {
        let (x, y) = (q[(a, j)], q[(b, j)]);
        q[(a, j)] = g.u * x - g.v * y;
        q[(b, j)] = g.v * x + g.u * y;
    }
}

fn diagonal_residual(q: &OrthogonalMatrix, lambda: &[f64], d: &[f64]) -> f64 {
    let m = q.entries();
    (0..m.n())
        .map(|i| {
            let di: f64 = (0..m.n()).map(|j| m[(i, j)] * m[(i, j)] * lambda[j]).sum();
            (di - d[i]).abs()
        })
        .fold(0.0, f64::max)
}

/// `S_ij = Q_ij²`.
pub fn orthostochastic_of(q: &OrthogonalMatrix) -> DoublyStochasticMatrix {
    let s = q.entries().map(|x| x * x);
    DoublyStochasticMatrix::new(s).expect("squares are non-negative")
}

/// `A = Q diag(Λ) Qᵀ`, symmetrized as `(A + Aᵀ)/2`.
pub fn hermitian_of(q: &OrthogonalMatrix, lambda: &RealSeq) -> Result<SquareMatrix<f64>> {
    let n = q.n();
    if lambda.len() != n {
        return Err(Error::DimensionMismatch {
            left: n,
            right: lambda.len(),
        });
    }
    let m = q.entries();
    let lam = lambda.values();
    let mut a = SquareMatrix::<f64>::zeros(n);
    for i in 0..n {
        for j in 0..n {
            a[(i, j)] = (0..n).map(|k| m[(i, k)] * lam[k] * m[(j, k)]).sum();
        }
    }
    let sym = SquareMatrix::from_fn(n, |i, j| 0.5 * (a[(i, j)] + a[(j, i)]));
    Ok(sym)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(v: &[f64]) -> RealSeq {
        RealSeq::new(v.to_vec()).unwrap()
    }

    const H: f64 = std::f64::consts::FRAC_1_SQRT_2;

    /// Brute-force angle search for `cos²θ λ₁ + sin²θ λ₂ = d₁`.
    fn angle_oracle(l1: f64, l2: f64, d1: f64, steps: usize) -> (f64, f64) {
        (0..steps)
            .map(|i| {
                let t = std::f64::consts::TAU * i as f64 / steps as f64;
                let (s, c) = t.sin_cos();
                (t, (c * c * l1 + s * s * l2 - d1).abs())
            })
            .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
            .unwrap()
    }

    #[test]
    fn kernel_half_half() {
        let k = kernel2(3.0, 1.0, 2.0, 0.0).unwrap();
        assert!((k.u - H).abs() < 1e-16 && (k.v - H).abs() < 1e-16);
        let (a, b) = k.conjugated_diagonal(3.0, 1.0);
        assert!((a - 2.0).abs() < 1e-15 && (b - 2.0).abs() < 1e-15);
        let (theta, err) = angle_oracle(3.0, 1.0, 2.0, 100_000);
        assert!(err < 1e-4);
        assert!((theta.cos().abs() - k.u).abs() < 1e-4);
    }

    #[test]
    fn kernel_degenerate_cases() {
        assert_eq!(
            kernel2(5.0, 5.0, 5.0, 0.0).unwrap(),
            TwoByTwoKernel::IDENTITY
        );
        let k = kernel2(1.0, 0.0, 1.0, 0.0).unwrap();
        assert_eq!(k, TwoByTwoKernel::IDENTITY);
        assert_eq!(k.conjugated_diagonal(1.0, 0.0), (1.0, 0.0));
        let k = kernel2(1.0, 0.0, 0.0, 0.0).unwrap();
        assert_eq!((k.u, k.v), (0.0, 1.0));
    }

    #[test]
    fn kernel_unit_norm_and_clamping() {
        for &(l1, l2, d1) in &[
            (7.0, -3.0, 1.3),
            (1.0, 0.999, 0.9995),
            (10.0, -10.0, 9.999999),
        ] {
            let k = kernel2(l1, l2, d1, 0.0).unwrap();
            assert!((k.u * k.u + k.v * k.v - 1.0).abs() <= 4.0 * f64::EPSILON);
            assert!(k.u >= 0.0 && k.v >= 0.0);
        }
        let k = kernel2(1.0, 0.0, 1.0 + 1e-15, 1e-12).unwrap();
        assert!(k.u.is_finite() && k.v.is_finite());
        let k = kernel2(1.0, 0.0, -1e-15, 1e-12).unwrap();
        assert_eq!((k.u, k.v), (0.0, 1.0));
    }

    #[test]
    fn kernel_interval_violation() {
        assert!(matches!(
            kernel2(3.0, 1.0, 3.5, 1e-12),
            Err(Error::IntervalViolation { .. })
        ));
        assert!(kernel2(3.0, 1.0, 0.5, 1e-12).is_err());
    }

    #[test]
    fn pivot_examples() {
        // direct scan oracle: smallest K with the chain λ_K ≥ d_K ≥ d_{K+1} ≥ λ_{K+1}
        fn chain_oracle(l: &[f64], d: &[f64]) -> usize {
            (0..l.len() - 1)
                .find(|&k| l[k] >= d[k] && d[k] >= d[k + 1] && d[k + 1] >= l[k + 1])
                .unwrap()
                + 1
        }
        for (l, d) in [
            (vec![3.0, 2.0, 1.0], vec![2.0, 2.0, 2.0]),
            (vec![1.0, 1.0], vec![1.0, 1.0]),
            (vec![4.0, 0.0, 0.0], vec![2.0, 1.0, 1.0]),
        ] {
            let k = select_pivot(&seq(&l), &seq(&d), 0.0).unwrap();
            assert_eq!(k, 1);
            assert_eq!(k, chain_oracle(&l, &d));
        }
        assert_eq!(
            select_pivot(&seq(&[5.0, 3.0, 0.0]), &seq(&[4.0, 2.5, 1.5]), 0.0).unwrap(),
            2
        );
    }

    #[test]
    fn pivot_errors() {
        assert!(select_pivot(&seq(&[1.0]), &seq(&[1.0]), 0.0).is_err());
        assert!(select_pivot(&seq(&[1.0, 2.0]), &seq(&[2.0, 1.0]), 0.0).is_err());
        assert!(matches!(
            select_pivot(&seq(&[3.0, 1.0]), &seq(&[1.0, 0.5]), 0.0),
            Err(Error::MajorizationViolated { .. })
        ));
    }

    #[test]
    fn construct_two_by_two() {
        let c = horn_construct(&seq(&[3.0, 1.0]), &seq(&[2.0, 2.0]), 1e-12).unwrap();
        let q = c.q.entries();
        assert!((q[(0, 0)] - H).abs() < 1e-16);
        assert!((q[(0, 1)] + H).abs() < 1e-16);
        assert!((q[(1, 0)] - H).abs() < 1e-16);
        assert!((q[(1, 1)] - H).abs() < 1e-16);
        let a = hermitian_of(&c.q, &c.lambda).unwrap();
        for (i, j, want) in [(0, 0, 2.0), (0, 1, 1.0), (1, 0, 1.0), (1, 1, 2.0)] {
            assert!((a[(i, j)] - want).abs() < 1e-15);
        }
        assert_eq!(c.steps.len(), 1);
    }

    #[test]
    fn construct_identity_when_equal() {
        for v in [
            vec![4.0, -1.0, 2.5, 2.5, 0.0],
            vec![3.0],
            vec![2.0, 2.0, 2.0],
        ] {
            let s = seq(&v);
            let c = horn_construct(&s, &s, 1e-12).unwrap();
            assert_eq!(c.q.entries(), &SquareMatrix::identity(v.len()));
            assert_eq!(c.diag_residual, 0.0);
            assert_eq!(c.steps.len(), v.len() - 1);
        }
    }

    #[test]
    fn construct_three_by_three_steps() {
        let c = horn_construct(&seq(&[3.0, 2.0, 1.0]), &seq(&[2.0, 2.0, 2.0]), 1e-12).unwrap();
        assert_eq!(c.steps.len(), 2);
        assert_eq!(c.steps[0].k, 1);
        assert_eq!(c.steps[0].lambda_k1_new, 3.0);
        assert_eq!(c.steps[1].k, 1);
        assert_eq!((c.steps[1].lambda_k, c.steps[1].lambda_k1), (3.0, 1.0));
        // independent dense multiply
        let q = c.q.entries();
        let lam = [3.0, 2.0, 1.0];
        for i in 0..3 {
            let di: f64 = (0..3).map(|k| q[(i, k)] * lam[k] * q[(i, k)]).sum();
            assert!((di - 2.0).abs() < 1e-14);
        }
        assert!(c.orth_residual < 1e-15);
    }

    #[test]
    fn construct_unsorted_input() {
        let lambda = seq(&[1.0, 4.0, -2.0, 0.5]);
        let d = seq(&[0.0, 2.0, 1.0, 0.5]);
        let c = horn_construct(&lambda, &d, 1e-12).unwrap();
        let a = hermitian_of(&c.q, &lambda).unwrap();
        for i in 0..4 {
            assert!((a[(i, i)] - d.values()[i]).abs() < 1e-13);
        }
    }

    #[test]
    fn construct_errors() {
        assert!(matches!(
            horn_construct(&seq(&[2.0, 2.0]), &seq(&[3.0, 1.0]), 0.0),
            Err(Error::MajorizationViolated { index: 1 })
        ));
        assert!(matches!(
            horn_construct(&seq(&[2.0]), &seq(&[3.0, 1.0]), 0.0),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn orthostochastic_examples() {
        let s = orthostochastic_of(&OrthogonalMatrix::identity(3));
        assert_eq!(s.entries(), &SquareMatrix::identity(3));
        let q = OrthogonalMatrix::new(SquareMatrix::from_rows(&[vec![H, -H], vec![H, H]]).unwrap())
            .unwrap();
        let s = orthostochastic_of(&q);
        for x in s.entries().as_slice() {
            assert!((x - 0.5).abs() <= f64::EPSILON);
        }
    }

    #[test]
    fn hermitian_examples() {
        let a = hermitian_of(&OrthogonalMatrix::identity(2), &seq(&[7.0, -2.0])).unwrap();
        assert_eq!(a.to_rows(), vec![vec![7.0, 0.0], vec![0.0, -2.0]]);
        assert!(hermitian_of(&OrthogonalMatrix::identity(2), &seq(&[1.0])).is_err());
    }

    #[test]
    fn non_orthogonal_is_rejected() {
        let m = SquareMatrix::from_rows(&[vec![1.0, 1e-3], vec![0.0, 1.0]]).unwrap();
        assert!(matches!(
            OrthogonalMatrix::new(m.clone()),
            Err(Error::NotOrthogonal { .. })
        ));
        assert!(!OrthogonalMatrix::new_unchecked(m).is_certified());
    }
}
