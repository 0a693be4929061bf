//! Closed-form performance model of a schedule.
//!
//! The success probability at an actual fraction `λ'` is
//! `P_L(λ') = 1 − δ²·T_L²[T_{1/L}(1/δ)·√(1−λ')]`. [`reduced_propagator`] gives a
//! second, independent route to the same number by multiplying 2×2 matrices in
//! the plane spanned by the target and nontarget superpositions.

use alloc::vec::Vec;
use core::f64::consts::PI;

use libm::{asin, sqrt};
use num_complex::Complex64;

use crate::chebyshev::{chebyshev_t, chebyshev_t_fractional};
use crate::error::{Error, Result};
use crate::schedule::{tie_aware_ceil, PhaseSchedule};

/// Tolerance for normalization checks on user-supplied distributions.
pub const NORMALIZATION_TOLERANCE: f64 = 1e-6;

/// Unclamped `1 − δ²·T_L²[T_{1/L}(1/δ)·√(1−λ')]`.
///
/// Round-off can push the value a few ulps outside `[0, 1]`.
pub fn success_probability_raw(schedule: &PhaseSchedule, lambda_actual: f64) -> f64 {
    let order = schedule.order();
    let height = 1.0 / schedule.delta();
    let scale = chebyshev_t_fractional(order, height);
    let nontarget = sqrt((1.0 - lambda_actual).max(0.0));
    let ratio = if nontarget == 1.0 {
        // T_L(T_{1/L}(h)) = h on [1, ∞).
        1.0
    } else {
        chebyshev_t(order, scale * nontarget) / height
    };
    1.0 - ratio * ratio
}

/// Success probability of `schedule` on an instance whose target fraction is
/// `lambda_actual`, clamped to `[0, 1]`.
pub fn success_probability(schedule: &PhaseSchedule, lambda_actual: f64) -> f64 {
    success_probability_raw(schedule, lambda_actual).clamp(0.0, 1.0)
}

/// Optimal iteration count of the standard Grover algorithm,
/// `⌈π / (4·arcsin√λ)⌉ − 1`.
pub fn grover_iterations(lambda: f64) -> Result<u32> {
    if !(lambda > 0.0 && lambda <= 1.0) {
        return Err(Error::LambdaOutOfRange(lambda));
    }
    let x = PI / (4.0 * asin(sqrt(lambda)));
    Ok((tie_aware_ceil(x) - 1.0).max(0.0) as u32)
}

/// Amplitudes on the normalized target and nontarget superpositions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReducedAmplitudes {
    pub target: Complex64,
    pub nontarget: Complex64,
}

impl ReducedAmplitudes {
    pub fn success_probability(&self) -> f64 {
        self.target.norm_sqr()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.target.norm_sqr() + self.nontarget.norm_sqr()
    }
}

/// Matrix of `G(φ, ϕ)` restricted to the target/nontarget plane, rows and
/// columns ordered (target, nontarget).
///
/// `G = −(I − (1 − e^{iφ})|ψ⟩⟨ψ|)·diag(e^{iϕ}, 1)` with `|ψ⟩ = (√λ, √(1−λ))`.
pub fn reduced_iteration_matrix(phi: f64, varphi: f64, lambda: f64) -> [[Complex64; 2]; 2] {
    let psi = [sqrt(lambda.max(0.0)), sqrt((1.0 - lambda).max(0.0))];
    let k = Complex64::new(1.0, 0.0) - Complex64::cis(phi);
    let oracle = [Complex64::cis(varphi), Complex64::new(1.0, 0.0)];
    let mut m = [[Complex64::new(0.0, 0.0); 2]; 2];
    for (r, row) in m.iter_mut().enumerate() {
        for (c, entry) in row.iter_mut().enumerate() {
            let identity = if r == c { 1.0 } else { 0.0 };
            let reflect = Complex64::new(identity, 0.0) - k * psi[r] * psi[c];
            *entry = -reflect * oracle[c];
        }
    }
    m
}

/// Final amplitudes after running `schedule` from `(√λ', √(1−λ'))`.
pub fn reduced_propagator(schedule: &PhaseSchedule, lambda_actual: f64) -> ReducedAmplitudes {
    let mut v = [
        Complex64::new(sqrt(lambda_actual.max(0.0)), 0.0),
        Complex64::new(sqrt((1.0 - lambda_actual).max(0.0)), 0.0),
    ];
    for (phi, varphi) in schedule.steps() {
        let m = reduced_iteration_matrix(phi, varphi, lambda_actual);
        v = [
            m[0][0] * v[0] + m[0][1] * v[1],
            m[1][0] * v[0] + m[1][1] * v[1],
        ];
    }
    ReducedAmplitudes { target: v[0], nontarget: v[1] }
}

/// A probability vector over basis-state indices.
#[derive(Debug, Clone, PartialEq)]
pub struct Distribution {
    probs: Vec<f64>,
}

impl Distribution {
    /// Entries must be finite and non-negative and sum to one within
    /// [`NORMALIZATION_TOLERANCE`].
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        if let Some(&bad) = probs.iter().find(|p| !p.is_finite() || **p < 0.0) {
            return Err(Error::InvalidProbability(bad));
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > NORMALIZATION_TOLERANCE {
            return Err(Error::NotNormalized(sum));
        }
        Ok(Distribution { probs })
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.probs
    }
}

/// `F = Σ_j √(p_j·q_j)`, in `[0, 1]`.
pub fn statistical_fidelity(theory: &Distribution, observed: &Distribution) -> Result<f64> {
    if theory.len() != observed.len() {
        return Err(Error::LengthMismatch(theory.len(), observed.len()));
    }
    let f: f64 = theory
        .probs()
        .iter()
        .zip(observed.probs())
        .map(|(p, q)| sqrt(p * q))
        .sum();
    Ok(f.min(1.0))
}

/// Success probability of one schedule sampled over actual fractions.
#[derive(Debug, Clone, PartialEq)]
pub struct SuccessCurve {
    pub schedule: PhaseSchedule,
    /// `(λ', P(λ'))` pairs in the order requested.
    pub samples: Vec<(f64, f64)>,
}

impl SuccessCurve {
    pub fn sample<I>(schedule: &PhaseSchedule, lambdas: I) -> Self
    where
        I: IntoIterator<Item = f64>,
    {
        let samples = lambdas
            .into_iter()
            .map(|x| (x, success_probability(schedule, x)))
            .collect();
        SuccessCurve { schedule: schedule.clone(), samples }
    }

    /// `count` evenly spaced points over `[lo, hi]`, endpoints included.
    pub fn uniform(schedule: &PhaseSchedule, lo: f64, hi: f64, count: usize) -> Self {
        let step = if count > 1 { (hi - lo) / (count - 1) as f64 } else { 0.0 };
        Self::sample(schedule, (0..count).map(|k| lo + step * k as f64))
    }
}
