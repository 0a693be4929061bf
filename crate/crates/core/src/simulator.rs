//! Dense statevector execution of the generalized Grover iteration.
//!
//! Basis index bit `k` is qubit `k`. The Hadamard layer is applied as one
//! butterfly pass per qubit, `n·2^n` work in total.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::FRAC_1_SQRT_2;

use libm::sqrt;
use num_complex::Complex64;

use crate::analytic::{Distribution, NORMALIZATION_TOLERANCE};
use crate::error::{Error, Result};
use crate::schedule::PhaseSchedule;

/// Default cap on query qubits: `2^24` amplitudes, 256 MiB.
pub const DEFAULT_MAX_QUBITS: u32 = 24;

/// Largest register the instance type accepts at all; memory limits are
/// enforced separately by [`Simulator`].
const MAX_INDEX_BITS: u32 = usize::BITS - 1;

/// A database of `2^n` items with a non-empty set of marked indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchInstance {
    qubits: u32,
    targets: Vec<usize>,
}

impl SearchInstance {
    pub fn new<I>(qubits: u32, targets: I) -> Result<Self>
    where
        I: IntoIterator<Item = usize>,
    {
        if qubits == 0 || qubits > MAX_INDEX_BITS {
            return Err(Error::TooManyQubits { qubits, max: MAX_INDEX_BITS });
        }
        let dim = 1usize << qubits;
        let mut targets: Vec<usize> = targets.into_iter().collect();
        if targets.is_empty() {
            return Err(Error::NoTargets);
        }
        if let Some(&index) = targets.iter().find(|&&t| t >= dim) {
            return Err(Error::TargetOutOfRange { index, qubits });
        }
        targets.sort_unstable();
        if let Some(w) = targets.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateTarget(w[0]));
        }
        Ok(SearchInstance { qubits, targets })
    }

    pub fn qubits(&self) -> u32 {
        self.qubits
    }

    /// `N = 2^n`.
    pub fn dimension(&self) -> usize {
        1 << self.qubits
    }

    /// Marked indices in ascending order.
    pub fn targets(&self) -> &[usize] {
        &self.targets
    }

    /// `M`.
    pub fn target_count(&self) -> usize {
        self.targets.len()
    }

    /// `λ = M/N`. Exact, since both counts are powers of two or small integers.
    pub fn lambda(&self) -> f64 {
        self.targets.len() as f64 / self.dimension() as f64
    }

    /// The oracle predicate `f(x)`.
    pub fn is_target(&self, index: usize) -> bool {
        self.targets.binary_search(&index).is_ok()
    }
}

/// Normalized complex amplitudes over `2^n` basis states.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    /// Wraps amplitudes whose length is a power of two and whose squared norm
    /// is one within `1e-9`.
    pub fn from_amplitudes(amplitudes: Vec<Complex64>) -> Result<Self> {
        let len = amplitudes.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(Error::BadStateLength(len));
        }
        let state = StateVector { amplitudes };
        let norm = state.norm_sqr();
        if (norm - 1.0).abs() > 1e-9 {
            return Err(Error::NotNormalized(norm));
        }
        Ok(state)
    }

    /// `|index⟩` on `qubits` qubits.
    pub fn basis(qubits: u32, index: usize) -> Result<Self> {
        if qubits == 0 || qubits > MAX_INDEX_BITS {
            return Err(Error::TooManyQubits { qubits, max: MAX_INDEX_BITS });
        }
        let dim = 1usize << qubits;
        if index >= dim {
            return Err(Error::BasisIndexOutOfRange { index, qubits });
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        Ok(StateVector { amplitudes })
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub(crate) fn amplitudes_mut(&mut self) -> &mut [Complex64] {
        &mut self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amplitudes
    }

    pub fn len(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amplitudes.is_empty()
    }

    pub fn qubits(&self) -> u32 {
        self.amplitudes.len().trailing_zeros()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    fn check_dimension(&self, instance: &SearchInstance) -> Result<()> {
        if self.len() != instance.dimension() {
            return Err(Error::DimensionMismatch {
                state: self.len(),
                expected: instance.dimension(),
            });
        }
        Ok(())
    }

    /// `S_f^ϕ`: multiplies every target amplitude by `e^{iϕ}`.
    pub fn apply_oracle_phase(&mut self, instance: &SearchInstance, varphi: f64) -> Result<()> {
        self.check_dimension(instance)?;
        let phase = Complex64::cis(varphi);
        for &t in instance.targets() {
            self.amplitudes[t] *= phase;
        }
        Ok(())
    }

    /// `S_0^φ`: multiplies the all-zeros amplitude by `e^{iφ}`.
    pub fn apply_zero_phase(&mut self, phi: f64) {
        self.amplitudes[0] *= Complex64::cis(phi);
    }

    /// Hadamard on qubit `qubit`.
    pub fn apply_hadamard(&mut self, qubit: u32) {
        let stride = 1usize << qubit;
        for block in self.amplitudes.chunks_exact_mut(2 * stride) {
            let (lo, hi) = block.split_at_mut(stride);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let (x, y) = (*a, *b);
                *a = (x + y) * FRAC_1_SQRT_2;
                *b = (x - y) * FRAC_1_SQRT_2;
            }
        }
    }

    /// `H^{⊗n}`.
    pub fn apply_hadamard_all(&mut self) {
        for q in 0..self.qubits() {
            self.apply_hadamard(q);
        }
    }

    /// `G(φ, ϕ) = −H^{⊗n}·S_0^φ·H^{⊗n}·S_f^ϕ`, including the global minus sign.
    pub fn apply_generalized_grover(
        &mut self,
        instance: &SearchInstance,
        phi: f64,
        varphi: f64,
    ) -> Result<()> {
        self.apply_oracle_phase(instance, varphi)?;
        self.apply_hadamard_all();
        self.apply_zero_phase(phi);
        self.apply_hadamard_all();
        for a in &mut self.amplitudes {
            *a = -*a;
        }
        Ok(())
    }

    /// Total probability of measuring a marked index.
    pub fn target_probability(&self, instance: &SearchInstance) -> Result<f64> {
        self.check_dimension(instance)?;
        Ok(instance.targets().iter().map(|&t| self.amplitudes[t].norm_sqr()).sum())
    }

    /// Exact measurement statistics, `|a_j|²`.
    pub fn to_distribution(&self) -> Result<Distribution> {
        let norm = self.norm_sqr();
        if (norm - 1.0).abs() > NORMALIZATION_TOLERANCE {
            return Err(Error::NotNormalized(norm));
        }
        Distribution::new(self.amplitudes.iter().map(|a| a.norm_sqr()).collect())
    }
}

/// Statevector engine with a configurable memory guard.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Simulator {
    max_qubits: u32,
}

impl Default for Simulator {
    fn default() -> Self {
        Simulator { max_qubits: DEFAULT_MAX_QUBITS }
    }
}

impl Simulator {
    pub fn with_max_qubits(max_qubits: u32) -> Self {
        Simulator { max_qubits: max_qubits.min(MAX_INDEX_BITS) }
    }

    pub fn max_qubits(&self) -> u32 {
        self.max_qubits
    }

    /// `H^{⊗n}|0⟩`: every amplitude `1/√N`.
    pub fn prepare_uniform(&self, instance: &SearchInstance) -> Result<StateVector> {
        if instance.qubits() > self.max_qubits {
            return Err(Error::TooManyQubits { qubits: instance.qubits(), max: self.max_qubits });
        }
        let amp = 1.0 / sqrt(instance.dimension() as f64);
        Ok(StateVector { amplitudes: vec![Complex64::new(amp, 0.0); instance.dimension()] })
    }

    /// Applies `G(φ_j, ϕ_j)` for `j = 1..l` to the uniform state. The
    /// schedule's design fraction need not match the instance.
    pub fn run_schedule(
        &self,
        instance: &SearchInstance,
        schedule: &PhaseSchedule,
    ) -> Result<StateVector> {
        self.run_phases(instance, schedule.steps())
    }

    /// Like [`Simulator::run_schedule`] for an arbitrary `(φ, ϕ)` sequence.
    pub fn run_phases<I>(&self, instance: &SearchInstance, steps: I) -> Result<StateVector>
    where
        I: IntoIterator<Item = (f64, f64)>,
    {
        let mut state = self.prepare_uniform(instance)?;
        for (phi, varphi) in steps {
            state.apply_generalized_grover(instance, phi, varphi)?;
        }
        Ok(state)
    }
}

/// [`Simulator::prepare_uniform`] with the default qubit cap.
pub fn prepare_uniform(instance: &SearchInstance) -> Result<StateVector> {
    Simulator::default().prepare_uniform(instance)
}

/// [`Simulator::run_schedule`] with the default qubit cap.
pub fn run_schedule(instance: &SearchInstance, schedule: &PhaseSchedule) -> Result<StateVector> {
    Simulator::default().run_schedule(instance, schedule)
}
