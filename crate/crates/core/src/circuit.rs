//! Gate-level realization with one oracle ancilla.
//!
//! Qubits `0..n` form the query register and qubit `n` is the ancilla. One
//! iteration is
//!
//! ```text
//! U_f · U1(ϕ)[anc] · U_f      phase kickback, realizes S_f^ϕ and restores the ancilla
//! H^{⊗n}
//! S_0^φ                       X-conjugated multi-controlled U1(φ); U1(−φ) when n = 1
//! H^{⊗n}
//! ```
//!
//! which equals `G(φ, ϕ)` on the query register up to a global phase.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::schedule::PhaseSchedule;
use crate::simulator::{SearchInstance, StateVector};

/// Largest query register for which oracles are synthesized.
pub const MAX_SYNTHESIS_QUBITS: u32 = 6;

/// Largest total width (query + ancilla) accepted by [`simulate_gates`].
pub const MAX_GATE_SIM_QUBITS: u32 = 12;

#[derive(Debug, Clone, PartialEq)]
pub enum Gate {
    H(usize),
    X(usize),
    /// `diag(1, e^{i·angle})`.
    U1 { angle: f64, target: usize },
    Cx { control: usize, target: usize },
    Mcx { controls: Vec<usize>, target: usize },
    Mcu1 { angle: f64, controls: Vec<usize>, target: usize },
}

impl Gate {
    /// Operand qubits, controls first.
    pub fn qubits(&self) -> Vec<usize> {
        match self {
            Gate::H(q) | Gate::X(q) | Gate::U1 { target: q, .. } => alloc::vec![*q],
            Gate::Cx { control, target } => alloc::vec![*control, *target],
            Gate::Mcx { controls, target } | Gate::Mcu1 { controls, target, .. } => {
                let mut qs = controls.clone();
                qs.push(*target);
                qs
            }
        }
    }

    pub fn angle(&self) -> Option<f64> {
        match self {
            Gate::U1 { angle, .. } | Gate::Mcu1 { angle, .. } => Some(*angle),
            _ => None,
        }
    }

    fn validate(&self, width: u32) -> Result<()> {
        let qubits = self.qubits();
        if qubits.iter().any(|&q| q >= width as usize) {
            return Err(Error::InvalidGate("operand outside the register"));
        }
        for (i, q) in qubits.iter().enumerate() {
            if qubits[..i].contains(q) {
                return Err(Error::InvalidGate("repeated operand"));
            }
        }
        if self.angle().is_some_and(|a| !a.is_finite()) {
            return Err(Error::InvalidGate("non-finite angle"));
        }
        Ok(())
    }
}

/// An ordered gate list over a query register and at most one ancilla.
#[derive(Debug, Clone, PartialEq)]
pub struct GateCircuit {
    query_qubits: u32,
    ancilla_qubits: u32,
    gates: Vec<Gate>,
}

impl GateCircuit {
    pub fn new(query_qubits: u32, ancilla_qubits: u32) -> Result<Self> {
        if query_qubits == 0 {
            return Err(Error::InvalidGate("empty query register"));
        }
        if ancilla_qubits > 1 {
            return Err(Error::InvalidGate("at most one ancilla"));
        }
        Ok(GateCircuit { query_qubits, ancilla_qubits, gates: Vec::new() })
    }

    pub fn query_qubits(&self) -> u32 {
        self.query_qubits
    }

    pub fn ancilla_qubits(&self) -> u32 {
        self.ancilla_qubits
    }

    pub fn width(&self) -> u32 {
        self.query_qubits + self.ancilla_qubits
    }

    /// Index of the ancilla, if there is one.
    pub fn ancilla(&self) -> Option<usize> {
        (self.ancilla_qubits == 1).then_some(self.query_qubits as usize)
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn push(&mut self, gate: Gate) -> Result<()> {
        gate.validate(self.width())?;
        self.gates.push(gate);
        Ok(())
    }

    /// Appends every gate of `other`, which must have the same registers.
    pub fn append(&mut self, other: &GateCircuit) -> Result<()> {
        if other.query_qubits != self.query_qubits || other.ancilla_qubits != self.ancilla_qubits {
            return Err(Error::InvalidGate("register mismatch"));
        }
        self.gates.extend_from_slice(&other.gates);
        Ok(())
    }

    fn extend<I: IntoIterator<Item = Gate>>(&mut self, gates: I) -> Result<()> {
        gates.into_iter().try_for_each(|g| self.push(g))
    }
}

fn check_synthesis(instance: &SearchInstance) -> Result<()> {
    if instance.qubits() > MAX_SYNTHESIS_QUBITS {
        return Err(Error::SynthesisLimit { qubits: instance.qubits(), max: MAX_SYNTHESIS_QUBITS });
    }
    Ok(())
}

/// `X` on each query qubit whose bit in `index` is zero.
fn zero_bit_flips(qubits: u32, index: usize) -> impl Iterator<Item = Gate> {
    (0..qubits as usize).filter(move |q| (index >> q) & 1 == 0).map(Gate::X)
}

/// `U_f|x⟩|y⟩ = |x⟩|y ⊕ f(x)⟩`: one X-conjugated multi-controlled X per target.
pub fn build_oracle(instance: &SearchInstance) -> Result<GateCircuit> {
    check_synthesis(instance)?;
    let n = instance.qubits();
    let mut circuit = GateCircuit::new(n, 1)?;
    let ancilla = n as usize;
    for &t in instance.targets() {
        circuit.extend(zero_bit_flips(n, t))?;
        let flip = if n == 1 {
            Gate::Cx { control: 0, target: ancilla }
        } else {
            Gate::Mcx { controls: (0..n as usize).collect(), target: ancilla }
        };
        circuit.push(flip)?;
        circuit.extend(zero_bit_flips(n, t))?;
    }
    Ok(circuit)
}

fn push_zero_phase(circuit: &mut GateCircuit, phi: f64) -> Result<()> {
    let n = circuit.query_qubits() as usize;
    if n == 1 {
        // diag(e^{iφ}, 1) = e^{iφ}·U1(−φ)
        return circuit.push(Gate::U1 { angle: -phi, target: 0 });
    }
    circuit.extend((0..n).map(Gate::X))?;
    circuit.push(Gate::Mcu1 { angle: phi, controls: (0..n - 1).collect(), target: n - 1 })?;
    circuit.extend((0..n).map(Gate::X))
}

/// One generalized Grover iteration `G(φ, ϕ)`, up to a global phase.
pub fn build_iteration(instance: &SearchInstance, phi: f64, varphi: f64) -> Result<GateCircuit> {
    let oracle = build_oracle(instance)?;
    let n = instance.qubits() as usize;
    let mut circuit = GateCircuit::new(instance.qubits(), 1)?;
    circuit.append(&oracle)?;
    circuit.push(Gate::U1 { angle: varphi, target: n })?;
    circuit.append(&oracle)?;
    circuit.extend((0..n).map(Gate::H))?;
    push_zero_phase(&mut circuit, phi)?;
    circuit.extend((0..n).map(Gate::H))?;
    Ok(circuit)
}

/// Uniform preparation followed by one iteration per schedule step.
pub fn build_full(instance: &SearchInstance, schedule: &PhaseSchedule) -> Result<GateCircuit> {
    check_synthesis(instance)?;
    let n = instance.qubits();
    let mut circuit = GateCircuit::new(n, 1)?;
    circuit.extend((0..n as usize).map(Gate::H))?;
    for (phi, varphi) in schedule.steps() {
        circuit.append(&build_iteration(instance, phi, varphi)?)?;
    }
    Ok(circuit)
}

fn mask_of(qubits: &[usize]) -> usize {
    qubits.iter().fold(0, |m, &q| m | (1 << q))
}

/// Flips `target` on every basis state whose `controls` bits are all set.
fn controlled_x(amps: &mut [Complex64], controls: usize, target: usize) {
    let t = 1usize << target;
    for i in 0..amps.len() {
        if i & t == 0 && i & controls == controls {
            amps.swap(i, i | t);
        }
    }
}

/// Multiplies every amplitude whose `mask` bits are all set by `phase`.
fn masked_phase(amps: &mut [Complex64], mask: usize, phase: Complex64) {
    for (i, a) in amps.iter_mut().enumerate() {
        if i & mask == mask {
            *a *= phase;
        }
    }
}

/// Runs `circuit` on an arbitrary starting state of matching width.
pub fn simulate_gates_on(circuit: &GateCircuit, mut state: StateVector) -> Result<StateVector> {
    let width = circuit.width();
    if width > MAX_GATE_SIM_QUBITS {
        return Err(Error::TooManyQubits { qubits: width, max: MAX_GATE_SIM_QUBITS });
    }
    if state.len() != 1 << width {
        return Err(Error::DimensionMismatch { state: state.len(), expected: 1 << width });
    }
    for gate in circuit.gates() {
        match gate {
            Gate::H(q) => state.apply_hadamard(*q as u32),
            Gate::X(q) => controlled_x(state.amplitudes_mut(), 0, *q),
            Gate::Cx { control, target } => {
                controlled_x(state.amplitudes_mut(), 1 << control, *target)
            }
            Gate::Mcx { controls, target } => {
                controlled_x(state.amplitudes_mut(), mask_of(controls), *target)
            }
            Gate::U1 { angle, target } => {
                masked_phase(state.amplitudes_mut(), 1 << target, Complex64::cis(*angle))
            }
            Gate::Mcu1 { angle, controls, target } => masked_phase(
                state.amplitudes_mut(),
                mask_of(controls) | (1 << target),
                Complex64::cis(*angle),
            ),
        }
    }
    Ok(state)
}

/// Exact statevector over query + ancilla after running `circuit` on the
/// basis state `input`.
pub fn simulate_gates(circuit: &GateCircuit, input: usize) -> Result<StateVector> {
    let width = circuit.width();
    if width > MAX_GATE_SIM_QUBITS {
        return Err(Error::TooManyQubits { qubits: width, max: MAX_GATE_SIM_QUBITS });
    }
    simulate_gates_on(circuit, StateVector::basis(width, input)?)
}

/// Outcome probabilities of the query register, summed over the ancilla.
pub fn query_marginal(state: &StateVector, query_qubits: u32) -> Vec<f64> {
    let dim = 1usize << query_qubits;
    let mut probs = alloc::vec![0.0; dim];
    for (i, a) in state.amplitudes().iter().enumerate() {
        probs[i & (dim - 1)] += a.norm_sqr();
    }
    probs
}
