//! Seeded, bit-reproducible input generators.
//!
//! The generator is SplitMix64: the state advances by `0x9E3779B97F4A7C15`
//! and each output is the state passed through the standard finalizer
//! (`xor-shift 30, × 0xBF58476D1CE4E5B9, xor-shift 27, × 0x94D049BB133111EB,
//! xor-shift 31`). A uniform double in `[0, 1)` is the top 53 bits of one
//! output times `2⁻⁵³`. Bounded integers in `[0, m)` take the high 64 bits of
//! the 128-bit product `output · m`. Fisher–Yates runs from the last index
//! down to 1, swapping `i` with a bounded draw in `[0, i]`.
//!
//! Streams: `random_spectrum` and `trace_matched_pair` seed with `seed`
//! directly; `random_majorized_diag` seeds with `seed ^ MIX_STREAM` so that
//! sharing one config between the two calls does not correlate them.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::seqkit::{check_majorization, compensated_complex_sum, ComplexSeq, RealSeq};

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// Stream offset for the permutation mixing draws.
pub const MIX_STREAM: u64 = 0x6A09_E667_F3BC_C909;

/// Tolerance used to confirm the correlation preset.
pub const CORR_TOL: f64 = 1e-12;

#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN_GAMMA);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in `[0, 1)` with 53 random mantissa bits.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next_f64()
    }

    /// Uniform integer in `[0, bound)`.
    pub fn below(&mut self, bound: u64) -> u64 {
        ((self.next_u64() as u128 * bound as u128) >> 64) as u64
    }

    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        for i in (1..items.len()).rev() {
            let j = self.below(i as u64 + 1) as usize;
            items.swap(i, j);
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GenConfig {
    pub seed: u64,
    pub n: usize,
    pub lo: f64,
    pub hi: f64,
    /// Number of permutation matrices averaged by `random_majorized_diag`.
    pub mix_count: usize,
}

impl GenConfig {
    pub fn new(seed: u64, n: usize, lo: f64, hi: f64) -> Self {
        Self {
            seed,
            n,
            lo,
            hi,
            mix_count: 8,
        }
    }

    pub fn with_mix(mut self, mix_count: usize) -> Self {
        self.mix_count = mix_count;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::InvalidConfig("n must be >= 1".into()));
        }
        if !(self.lo.is_finite() && self.hi.is_finite() && self.lo < self.hi) {
            return Err(Error::InvalidConfig(format!(
                "value range ({}, {}) must satisfy lo < hi",
                self.lo, self.hi
            )));
        }
        if self.mix_count == 0 {
            return Err(Error::InvalidConfig("mix_count must be >= 1".into()));
        }
        Ok(())
    }
}

/// `n` uniform draws from `[lo, hi)`, sorted descending.
pub fn random_spectrum(cfg: &GenConfig) -> Result<RealSeq> {
    cfg.validate()?;
    let mut rng = SplitMix64::new(cfg.seed);
    let mut v: Vec<f64> = (0..cfg.n).map(|_| rng.uniform(cfg.lo, cfg.hi)).collect();
    v.sort_by(|a, b| b.partial_cmp(a).expect("finite"));
    RealSeq::new(v)
}

/// `D = S Λ` with `S` the average of `mix_count` random permutation
/// matrices, so `Λ ≻ D`. Output is in mixed (unsorted) order.
pub fn random_majorized_diag(lambda: &RealSeq, cfg: &GenConfig) -> Result<RealSeq> {
    cfg.validate()?;
    let n = lambda.len();
    let lam = lambda.values();
    let mut rng = SplitMix64::new(cfg.seed ^ MIX_STREAM);
    let mut perm: Vec<usize> = (0..n).collect();
    let mut sums = vec![crate::seqkit::CompensatedSum::default(); n];
    for _ in 0..cfg.mix_count {
        rng.shuffle(&mut perm);
        for (acc, &p) in sums.iter_mut().zip(&perm) {
            acc.add(lam[p]);
        }
    }
    let m = cfg.mix_count as f64;
    RealSeq::new(sums.iter().map(|s| s.value() / m).collect())
}

/// Random `Λ` and `D` with the last entry of `D` set so that the sums agree.
pub fn trace_matched_pair(cfg: &GenConfig, complex: bool) -> Result<(ComplexSeq, ComplexSeq)> {
    cfg.validate()?;
    let mut rng = SplitMix64::new(cfg.seed);
    let draw = |rng: &mut SplitMix64| {
        let re = rng.uniform(cfg.lo, cfg.hi);
        let im = if complex {
            rng.uniform(cfg.lo, cfg.hi)
        } else {
            0.0
        };
        Complex64::new(re, im)
    };
    let lambda: Vec<Complex64> = (0..cfg.n).map(|_| draw(&mut rng)).collect();
    let mut d: Vec<Complex64> = (0..cfg.n).map(|_| draw(&mut rng)).collect();
    let total = compensated_complex_sum(&lambda);
    let head = compensated_complex_sum(&d[..cfg.n - 1]);
    d[cfg.n - 1] = total - head;
    Ok((ComplexSeq::new(lambda)?, ComplexSeq::new(d)?))
}

/// Scales a non-negative spectrum to sum `n` and pairs it with the all-ones
/// diagonal, the setting of correlation matrices with a given spectrum.
pub fn corr_preset(lambda_raw: &RealSeq) -> Result<(RealSeq, RealSeq)> {
    let raw = lambda_raw.values();
    if let Some(x) = raw.iter().find(|x| **x < 0.0) {
        return Err(Error::NotCorrelationSpectrum(format!(
            "negative eigenvalue {x}"
        )));
    }
    let total = crate::seqkit::compensated_sum(raw.iter().copied());
    if total.is_nan() || total <= 0.0 {
        return Err(Error::NotCorrelationSpectrum(
            "spectrum must have positive sum".into(),
        ));
    }
    let n = raw.len() as f64;
    let scaled = RealSeq::new(raw.iter().map(|x| x * (n / total)).collect())?;
    let ones = RealSeq::new(vec![1.0; raw.len()])?;
    let report = check_majorization(&scaled, &ones, CORR_TOL)?;
    if !report.holds {
        return Err(Error::NotCorrelationSpectrum(format!(
            "scaled spectrum fails majorization at prefix {}",
            report.first_violation().unwrap_or(raw.len())
        )));
    }
    Ok((scaled, ones))
}
