//! Exact quantum search for a known target fraction using analytical
//! multiphase-matching (AMPM) phase schedules.
//!
//! The crate is `no_std` and only needs `alloc`. It covers four layers:
//!
//! * [`schedule`]: iteration bounds, the Chebyshev-derived `δ`/`γ` parameters
//!   and the matched phase sequences, plus the single-phase-matching reference.
//! * [`analytic`]: the closed-form success probability, Grover iteration
//!   counts, a two-dimensional propagator and the statistical fidelity.
//! * [`simulator`]: a dense statevector engine for the generalized Grover
//!   iteration `G(φ, ϕ) = −H S₀^φ H S_f^ϕ`.
//! * [`circuit`]: lowering to a gate list with one oracle ancilla and a
//!   gate-level simulator to cross-check the operator-level one.
//!
//! ```
//! use ampm_core::{schedule, simulator::{self, SearchInstance}};
//!
//! let instance = SearchInstance::new(1, [1]).unwrap();
//! let sched = schedule::build_schedule(1, instance.lambda()).unwrap();
//! let state = simulator::run_schedule(&instance, &sched).unwrap();
//! assert!((state.target_probability(&instance).unwrap() - 1.0).abs() < 1e-9);
//! ```

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod analytic;
pub mod chebyshev;
pub mod circuit;
mod error;
pub mod schedule;
pub mod simulator;

pub use analytic::{Distribution, SuccessCurve};
pub use circuit::{Gate, GateCircuit};
pub use error::{Error, Result};
pub use schedule::{CoincidenceReport, PhaseSchedule};
pub use simulator::{SearchInstance, StateVector};

pub use num_complex::Complex64;
