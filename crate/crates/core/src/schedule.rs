//! Phase schedules for exact search with a known target fraction `λ`.
//!
//! For `l` iterations (`L = 2l + 1`), the schedule places `λ` exactly on the
//! first maximum of the success curve:
//!
//! ```text
//! δ   = 1 / T_L( cos(π/2L) / √(1−λ) )
//! γ   = 1 / T_{1/L}(1/δ)              (= √(1−λ) / cos(π/2L))
//! φ_j = −2·arccot( √(1−γ²)·tan(2πj/L) ),   ϕ_j = φ_{l−j+1}
//! ```

use alloc::vec::Vec;
use core::f64::consts::PI;

use libm::{acos, asin, atan, ceil, cos, round, sin, sqrt, tan};

use crate::chebyshev::{chebyshev_t, chebyshev_t_fractional};
use crate::error::{Error, Result};

/// Distance from an integer below which a ceiling argument is treated as exact.
const CEIL_TIE: f64 = 1e-12;

/// Slack allowed when an argument that is `≥ 1` (or `≤ 2`) in exact
/// arithmetic lands just past the bound.
const ROUNDOFF: f64 = 1e-12;

/// The AMPM parameters for a given iteration count and design fraction.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseSchedule {
    iterations: u32,
    delta: f64,
    gamma: f64,
    phi: Vec<f64>,
    varphi: Vec<f64>,
    design_lambda: f64,
}

impl PhaseSchedule {
    /// Zero iterations: measure the uniform state directly. Used for `λ = 1`.
    pub fn empty() -> Self {
        PhaseSchedule {
            iterations: 0,
            delta: 1.0,
            gamma: 1.0,
            phi: Vec::new(),
            varphi: Vec::new(),
            design_lambda: 1.0,
        }
    }

    /// Number of generalized Grover iterations `l`.
    pub fn iterations(&self) -> u32 {
        self.iterations
    }

    /// Chebyshev degree `L = 2l + 1`.
    pub fn order(&self) -> u32 {
        2 * self.iterations + 1
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// Phases of the zero-state reflection, `φ_1..φ_l`.
    pub fn phi(&self) -> &[f64] {
        &self.phi
    }

    /// Phases of the oracle reflection, `ϕ_1..ϕ_l`.
    pub fn varphi(&self) -> &[f64] {
        &self.varphi
    }

    pub fn design_lambda(&self) -> f64 {
        self.design_lambda
    }

    pub fn is_empty(&self) -> bool {
        self.iterations == 0
    }

    /// `(φ_j, ϕ_j)` pairs in application order `j = 1..l`.
    pub fn steps(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.phi.iter().copied().zip(self.varphi.iter().copied())
    }

    /// Every actual fraction at which this schedule succeeds with probability one:
    /// `1 − γ²·cos²((2j−1)π/2L)` for `j = 1..l`, strictly increasing.
    ///
    /// The first point is the design fraction.
    pub fn lambda_max_points(&self) -> Vec<f64> {
        let big_l = f64::from(self.order());
        let g2 = self.gamma * self.gamma;
        (1..=self.iterations)
            .map(|j| {
                let c = cos(f64::from(2 * j - 1) * PI / (2.0 * big_l));
                1.0 - g2 * c * c
            })
            .collect()
    }
}

fn check_fraction(lambda: f64) -> Result<()> {
    if lambda > 0.0 && lambda <= 1.0 {
        Ok(())
    } else {
        Err(Error::LambdaOutOfRange(lambda))
    }
}

fn check_open_fraction(lambda: f64) -> Result<()> {
    if lambda > 0.0 && lambda < 1.0 {
        Ok(())
    } else {
        Err(Error::LambdaOutOfRange(lambda))
    }
}

/// `⌈x⌉`, except that values within `1e-12` of an integer snap to it.
pub(crate) fn tie_aware_ceil(x: f64) -> f64 {
    let nearest = round(x);
    if (x - nearest).abs() <= CEIL_TIE {
        nearest
    } else {
        ceil(x)
    }
}

/// The fewest iterations for which an exact schedule exists:
/// `⌈π / (4·arcsin√λ) − 1/2⌉`.
pub fn l_min(lambda: f64) -> Result<u32> {
    check_fraction(lambda)?;
    let x = PI / (4.0 * asin(sqrt(lambda))) - 0.5;
    Ok(tie_aware_ceil(x).max(0.0) as u32)
}

fn check_iterations(l: u32, lambda: f64) -> Result<()> {
    if l == 0 {
        return Err(Error::ZeroIterations);
    }
    check_open_fraction(lambda)?;
    let min = l_min(lambda)?;
    if l < min {
        return Err(Error::TooFewIterations { l, l_min: min, lambda });
    }
    Ok(())
}

/// `δ = 1 / T_L(cos(π/2L) / √(1−λ))` with `L = 2l + 1`.
pub fn delta_for(l: u32, lambda: f64) -> Result<f64> {
    check_iterations(l, lambda)?;
    let order = 2 * l + 1;
    let arg = cos(PI / (2.0 * f64::from(order))) / sqrt(1.0 - lambda);
    // l ≥ l_min guarantees arg ≥ 1; only the boundary λ = sin²(π/2L) can dip below.
    if arg < 1.0 - ROUNDOFF {
        return Err(Error::TooFewIterations { l, l_min: l_min(lambda)?, lambda });
    }
    let t = chebyshev_t(order, arg.max(1.0));
    let delta = 1.0 / t;
    if !t.is_finite() || delta <= 0.0 {
        return Err(Error::DeltaUnderflow { l, lambda });
    }
    Ok(delta.min(1.0))
}

/// `γ = 1 / T_{1/L}(1/δ) = 1 / cosh(arccosh(1/δ) / L)`.
pub fn gamma_for(delta: f64, order: u32) -> Result<f64> {
    if !(delta > 0.0 && delta <= 1.0) {
        return Err(Error::DeltaOutOfRange(delta));
    }
    Ok(1.0 / chebyshev_t_fractional(order, 1.0 / delta))
}

/// Signed principal arccotangent, `arctan(1/y)`, with `arccot(0) = π/2`.
fn arccot(y: f64) -> f64 {
    if y == 0.0 {
        PI / 2.0
    } else {
        atan(1.0 / y)
    }
}

/// Maps an angle into `(−π, π]`.
pub(crate) fn wrap_phase(angle: f64) -> f64 {
    let two_pi = 2.0 * PI;
    let mut a = angle % two_pi;
    if a <= -PI {
        a += two_pi;
    } else if a > PI {
        a -= two_pi;
    }
    a
}

/// `√(1−γ²)`, evaluated as `√(λ − sin²(π/2L)) / cos(π/2L)`.
///
/// Forming `1 − γ²` from `γ` loses everything near `γ = 1`, where the square
/// root turns ulp-level error in `γ` into ~1e-8 phase error. A gap to the
/// boundary within a few ulps of `λ` counts as zero.
fn matching_stretch(lambda: f64, big_l: f64) -> f64 {
    let half = PI / (2.0 * big_l);
    let edge = sin(half);
    let gap = lambda - edge * edge;
    if gap <= 4.0 * f64::EPSILON * lambda {
        0.0
    } else {
        sqrt(gap) / cos(half)
    }
}

/// The exact AMPM schedule with `l` iterations for design fraction `λ`.
pub fn build_schedule(l: u32, lambda: f64) -> Result<PhaseSchedule> {
    let delta = delta_for(l, lambda)?;
    let order = 2 * l + 1;
    let gamma = gamma_for(delta, order)?;
    let big_l = f64::from(order);
    let stretch = matching_stretch(lambda, big_l);

    let phi: Vec<f64> = (1..=l)
        .map(|j| {
            let y = stretch * tan(2.0 * PI * f64::from(j) / big_l);
            wrap_phase(-2.0 * arccot(y))
        })
        .collect();
    let varphi = phi.iter().rev().copied().collect();

    Ok(PhaseSchedule { iterations: l, delta, gamma, phi, varphi, design_lambda: lambda })
}

/// The shortest exact schedule for `λ ∈ (0, 1]`; empty when `λ = 1`.
pub fn exact_schedule(lambda: f64) -> Result<PhaseSchedule> {
    match l_min(lambda)? {
        0 => Ok(PhaseSchedule::empty()),
        l => build_schedule(l, lambda),
    }
}

/// Magnitude of the single-phase-matching phase for `l` iterations,
/// `arccos(1 − (1 − cos(π/(2l+1)))/λ)`.
pub fn phi_single(l: u32, lambda: f64) -> Result<f64> {
    if l == 0 {
        return Err(Error::ZeroIterations);
    }
    check_open_fraction(lambda)?;
    let arg = 1.0 - (1.0 - cos(PI / f64::from(2 * l + 1))) / lambda;
    if !(-1.0 - ROUNDOFF..=1.0 + ROUNDOFF).contains(&arg) {
        return Err(Error::SinglePhaseOutOfDomain(arg));
    }
    Ok(acos(arg.clamp(-1.0, 1.0)))
}

/// Index `m` of the AMPM phase whose magnitude equals the single-phase one:
/// `(l+1)/2` for odd `l`, `l/2` for even `l`.
pub fn coincidence_index(l: u32) -> u32 {
    if l % 2 == 1 {
        l.div_ceil(2)
    } else {
        l / 2
    }
}

/// Outcome of comparing `φ_m` with `±|φ_s|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoincidenceReport {
    pub l: u32,
    pub m: u32,
    pub phi_m: f64,
    pub phi_s_abs: f64,
    /// `φ_m = +|φ_s|` for odd `l`, `φ_m = −|φ_s|` for even `l`, within `1e-10`.
    pub sign_rule_holds: bool,
}

pub fn coincidence_check(l: u32, lambda: f64) -> Result<CoincidenceReport> {
    let schedule = build_schedule(l, lambda)?;
    let phi_s_abs = phi_single(l, lambda)?;
    let m = coincidence_index(l);
    let phi_m = schedule.phi()[(m - 1) as usize];
    let expected = if l % 2 == 1 { phi_s_abs } else { -phi_s_abs };
    Ok(CoincidenceReport {
        l,
        m,
        phi_m,
        phi_s_abs,
        sign_rule_holds: (phi_m - expected).abs() <= 1e-10,
    })
}
