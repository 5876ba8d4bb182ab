//! Sequence containers, stable descending sort and majorization checks.
//!
//! `Λ ≻ D` (Λ majorizes D) means that, after sorting both in decreasing
//! order, every prefix sum of Λ is at least the matching prefix sum of D and
//! the full sums agree. Prefix sums are accumulated with Neumaier's
//! compensated summation because the interesting decisions happen when a
//! slack is at or near zero.

use num_complex::Complex64;

use crate::error::{check_tol, Error, Result};

/// Neumaier (improved Kahan–Babuška) running sum.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct CompensatedSum {
    sum: f64,
    comp: f64,
}

impl CompensatedSum {
    pub(crate) fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub(crate) fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

pub(crate) fn compensated_sum(values: impl IntoIterator<Item = f64>) -> f64 {
    let mut acc = CompensatedSum::default();
    for v in values {
        acc.add(v);
    }
    acc.value()
}

pub(crate) fn compensated_complex_sum(values: &[Complex64]) -> Complex64 {
    Complex64::new(
        compensated_sum(values.iter().map(|z| z.re)),
        compensated_sum(values.iter().map(|z| z.im)),
    )
}

/// A finite, non-empty sequence of reals.
#[derive(Debug, Clone, PartialEq)]
pub struct RealSeq {
    values: Vec<f64>,
    sorted_desc: bool,
}

impl RealSeq {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidSequence("sequence must be non-empty".into()));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidSequence(format!(
                "value at index {i} is not finite"
            )));
        }
        let sorted_desc = values.windows(2).all(|w| w[0] >= w[1]);
        Ok(Self {
            values,
            sorted_desc,
        })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_sorted_desc(&self) -> bool {
        self.sorted_desc
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.values
    }
}

impl TryFrom<Vec<f64>> for RealSeq {
    type Error = Error;

    fn try_from(values: Vec<f64>) -> Result<Self> {
        Self::new(values)
    }
}

impl AsRef<[f64]> for RealSeq {
    fn as_ref(&self) -> &[f64] {
        &self.values
    }
}

/// A finite, non-empty sequence of complex numbers.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexSeq {
    values: Vec<Complex64>,
}

impl ComplexSeq {
    pub fn new(values: Vec<Complex64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidSequence("sequence must be non-empty".into()));
        }
        if let Some(i) = values.iter().position(|z| !z.is_finite()) {
            return Err(Error::InvalidSequence(format!(
                "value at index {i} is not finite"
            )));
        }
        Ok(Self { values })
    }

    pub fn from_real(values: &[f64]) -> Result<Self> {
        Self::new(values.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// True when every imaginary part is exactly zero.
    pub fn is_real(&self) -> bool {
        self.values.iter().all(|z| z.im == 0.0)
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, z| m.max(z.norm()))
    }

    pub fn sum(&self) -> Complex64 {
        compensated_complex_sum(&self.values)
    }
}

impl From<&RealSeq> for ComplexSeq {
    fn from(seq: &RealSeq) -> Self {
        Self {
            values: seq.values.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
        }
    }
}

/// A bijection on `0..n`, stored as an index array.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Permutation {
    map: Vec<usize>,
}

impl Permutation {
    pub fn new(map: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; map.len()];
        for &i in &map {
            if i >= map.len() {
                return Err(Error::InvalidPermutation(format!(
                    "index {i} out of range for length {}",
                    map.len()
                )));
            }
            if std::mem::replace(&mut seen[i], true) {
                return Err(Error::InvalidPermutation(format!("index {i} repeated")));
            }
        }
        Ok(Self { map })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            map: (0..n).collect(),
        }
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &p)| i == p)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.map.len()];
        for (i, &p) in self.map.iter().enumerate() {
            inv[p] = i;
        }
        Self { map: inv }
    }

    /// `out[i] = values[map[i]]`.
    pub fn apply<T: Copy>(&self, values: &[T]) -> Vec<T> {
        assert_eq!(values.len(), self.map.len(), "permutation length");
        self.map.iter().map(|&p| values[p]).collect()
    }

    /// Undoes [`Permutation::apply`]: `out[map[i]] = values[i]`.
    pub fn apply_inverse<T: Copy>(&self, values: &[T]) -> Vec<T> {
        assert_eq!(values.len(), self.map.len(), "permutation length");
        let mut out = values.to_vec();
        for (i, &p) in self.map.iter().enumerate() {
            out[p] = values[i];
        }
        out
    }
}

/// Stable descending sort. Returns the sorted sequence and `p` with
/// `sorted[i] = seq[p[i]]`; ties keep their original relative order.
pub fn sort_desc(seq: &RealSeq) -> (RealSeq, Permutation) {
    let v = seq.values();
    let mut idx: Vec<usize> = (0..v.len()).collect();
    // values are finite, so partial_cmp never fails; -0.0 and 0.0 compare equal
    idx.sort_by(|&a, &b| v[b].partial_cmp(&v[a]).expect("finite values"));
    let sorted = idx.iter().map(|&i| v[i]).collect();
    (
        RealSeq {
            values: sorted,
            sorted_desc: true,
        },
        Permutation { map: idx },
    )
}

/// Outcome of a majorization check on descending-sorted copies.
#[derive(Debug, Clone, PartialEq)]
pub struct MajorizationReport {
    pub holds: bool,
    /// `slacks[k]` is the (k+1)-prefix sum of Λ minus that of D.
    pub slacks: Vec<f64>,
    pub trace_gap: f64,
    /// Effective absolute threshold: `tol * max(1, ‖Λ‖∞)`.
    pub tolerance_used: f64,
}

impl MajorizationReport {
    /// 1-based length of the first failing prefix, if any. A failing trace
    /// reports the full length.
    pub fn first_violation(&self) -> Option<usize> {
        let n = self.slacks.len();
        self.slacks[..n - 1]
            .iter()
            .position(|&s| s < -self.tolerance_used)
            .map(|k| k + 1)
            .or_else(|| (self.trace_gap.abs() > self.tolerance_used).then_some(n))
    }
}

/// Checks `Λ ≻ D`. Input order is irrelevant.
pub fn check_majorization(lambda: &RealSeq, d: &RealSeq, tol: f64) -> Result<MajorizationReport> {
    check_tol(tol)?;
    if lambda.len() != d.len() {
        return Err(Error::DimensionMismatch {
            left: lambda.len(),
            right: d.len(),
        });
    }
    let (ls, _) = sort_desc(lambda);
    let (ds, _) = sort_desc(d);
    Ok(majorization_sorted(ls.values(), ds.values(), tol))
}

/// Majorization report for already-sorted slices of equal length.
pub(crate) fn majorization_sorted(lambda: &[f64], d: &[f64], tol: f64) -> MajorizationReport {
    let scale = lambda.iter().fold(1.0_f64, |m, v| m.max(v.abs()));
    let threshold = tol * scale;
    let mut acc = CompensatedSum::default();
    let slacks: Vec<f64> = lambda
        .iter()
        .zip(d)
        .map(|(&l, &x)| {
            acc.add(l);
            acc.add(-x);
            acc.value()
        })
        .collect();
    let n = slacks.len();
    let trace_gap = slacks[n - 1];
    let holds = slacks[..n - 1].iter().all(|&s| s >= -threshold) && trace_gap.abs() <= threshold;
    MajorizationReport {
        holds,
        slacks,
        trace_gap,
        tolerance_used: threshold,
    }
}

/// `|ΣΛ − ΣD| ≤ tol · max(1, |ΣΛ|)`.
pub fn trace_match(lambda: &ComplexSeq, d: &ComplexSeq, tol: f64) -> Result<bool> {
    let gap = trace_gap(lambda, d)?;
    check_tol(tol)?;
    Ok(gap.norm() <= tol * lambda.sum().norm().max(1.0))
}

/// `ΣΛ − ΣD`, each side summed with compensation.
pub fn trace_gap(lambda: &ComplexSeq, d: &ComplexSeq) -> Result<Complex64> {
    if lambda.len() != d.len() {
        return Err(Error::DimensionMismatch {
            left: lambda.len(),
            right: d.len(),
        });
    }
    Ok(lambda.sum() - d.sum())
}
