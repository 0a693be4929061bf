use std::f64::consts::PI;

use ampm_core::circuit::{build_full, build_iteration, build_oracle, query_marginal, simulate_gates};
use ampm_core::schedule::{build_schedule, l_min};
use ampm_core::simulator::{self, SearchInstance, StateVector};
use ampm_core::Complex64;
use proptest::prelude::*;

fn instance(max_qubits: u32) -> impl Strategy<Value = SearchInstance> {
    (1..=max_qubits).prop_flat_map(|n| {
        let dim = 1usize << n;
        prop::collection::btree_set(0..dim, 1..=dim)
            .prop_map(move |targets| SearchInstance::new(n, targets).unwrap())
    })
}

/// Columns of the query-register action of a circuit with its ancilla in |0⟩.
fn gate_columns(inst: &SearchInstance, phi: f64, varphi: f64) -> Vec<Vec<Complex64>> {
    let circuit = build_iteration(inst, phi, varphi).unwrap();
    let dim = inst.dimension();
    (0..dim)
        .map(|x| {
            let out = simulate_gates(&circuit, x).unwrap();
            let leaked: f64 = out.amplitudes()[dim..].iter().map(|a| a.norm_sqr()).sum();
            assert!(leaked < 1e-20, "ancilla left excited for input {x}");
            out.amplitudes()[..dim].to_vec()
        })
        .collect()
}

fn operator_columns(inst: &SearchInstance, phi: f64, varphi: f64) -> Vec<Vec<Complex64>> {
    (0..inst.dimension())
        .map(|x| {
            let mut s = StateVector::basis(inst.qubits(), x).unwrap();
            s.apply_generalized_grover(inst, phi, varphi).unwrap();
            s.into_amplitudes()
        })
        .collect()
}

/// True when `a = e^{iθ}·b` for a single `θ`, entrywise within `tol`.
fn equal_up_to_global_phase(a: &[Vec<Complex64>], b: &[Vec<Complex64>], tol: f64) -> bool {
    let (col, row) = (0..b.len())
        .flat_map(|c| (0..b[c].len()).map(move |r| (c, r)))
        .max_by(|&(c1, r1), &(c2, r2)| b[c1][r1].norm().total_cmp(&b[c2][r2].norm()))
        .unwrap();
    let phase = a[col][row] / b[col][row];
    if (phase.norm() - 1.0).abs() > tol {
        return false;
    }
    a.iter()
        .flatten()
        .zip(b.iter().flatten())
        .all(|(x, y)| (x - phase * y).norm() <= tol)
}

#[test]
fn textbook_grover_two_qubits() {
    let inst = SearchInstance::new(2, [3]).unwrap();
    let gate = gate_columns(&inst, PI, PI);
    // (2|s⟩⟨s| − I)·O built directly.
    let textbook: Vec<Vec<Complex64>> = (0..4)
        .map(|c| {
            (0..4)
                .map(|r| {
                    let d = 0.5 - if r == c { 1.0 } else { 0.0 };
                    Complex64::new(if c == 3 { -d } else { d }, 0.0)
                })
                .collect()
        })
        .collect();
    assert!(equal_up_to_global_phase(&gate, &textbook, 1e-12));
}

#[test]
fn ancilla_restored_on_every_basis_input() {
    for n in 1..=4u32 {
        let dim = 1usize << n;
        for targets in [vec![0], vec![dim - 1], (0..dim).step_by(3).collect::<Vec<_>>()] {
            let inst = SearchInstance::new(n, targets).unwrap();
            let oracle = build_oracle(&inst).unwrap();
            let iteration = build_iteration(&inst, 0.7, -1.9).unwrap();
            for x in 0..dim {
                // The bare oracle writes f(x) into the ancilla.
                let out = simulate_gates(&oracle, x).unwrap();
                let flipped = x | (usize::from(inst.is_target(x)) << n);
                assert!((out.amplitudes()[flipped].norm() - 1.0).abs() < 1e-12);
                // A full iteration leaves the ancilla in |0⟩.
                let out = simulate_gates(&iteration, x).unwrap();
                let p_zero: f64 = out.amplitudes()[..dim].iter().map(|a| a.norm_sqr()).sum();
                assert!((p_zero - 1.0).abs() < 1e-10);
            }
        }
    }
}

#[test]
fn two_qubit_two_target_full_circuit() {
    let inst = SearchInstance::new(2, [1, 2]).unwrap();
    let s = build_schedule(1, 0.5).unwrap();
    let marginal = query_marginal(&simulate_gates(&build_full(&inst, &s).unwrap(), 0).unwrap(), 2);
    let op = simulator::run_schedule(&inst, &s).unwrap().to_distribution().unwrap();
    for (g, o) in marginal.iter().zip(op.probs()) {
        assert!((g - o).abs() < 1e-12);
    }
    assert!((marginal[1] + marginal[2] - 1.0).abs() < 1e-9);
}

proptest! {
    #[test]
    fn iteration_matches_operator(inst in instance(4), phi in -PI..PI, varphi in -PI..PI) {
        let gate = gate_columns(&inst, phi, varphi);
        let op = operator_columns(&inst, phi, varphi);
        prop_assert!(equal_up_to_global_phase(&gate, &op, 1e-9));
    }

    #[test]
    fn full_circuit_is_exact_when_operator_is(inst in instance(4), extra in 0u32..3) {
        prop_assume!(inst.target_count() < inst.dimension());
        let lambda = inst.lambda();
        let s = build_schedule(l_min(lambda).unwrap() + extra, lambda).unwrap();
        let out = simulate_gates(&build_full(&inst, &s).unwrap(), 0).unwrap();
        let marginal = query_marginal(&out, inst.qubits());
        let p: f64 = inst.targets().iter().map(|&t| marginal[t]).sum();
        prop_assert!((p - 1.0).abs() < 1e-9);
    }
}
