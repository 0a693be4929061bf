use std::f64::consts::PI;

use ampm::qasm::{parse_qasm, to_qasm};
use ampm_core::circuit::{build_full, query_marginal, simulate_gates, simulate_gates_on};
use ampm_core::schedule::{build_schedule, l_min};
use ampm_core::simulator::{SearchInstance, StateVector};
use ampm_core::{Complex64, Gate, GateCircuit};
use proptest::prelude::*;

fn assert_same_state(a: &StateVector, b: &StateVector, tol: f64) {
    assert_eq!(a.len(), b.len());
    for (x, y) in a.amplitudes().iter().zip(b.amplitudes()) {
        assert!((x - y).norm() <= tol, "{x} vs {y}");
    }
}

#[test]
fn single_qubit_oracles_round_trip() {
    for target in [0, 1] {
        let inst = SearchInstance::new(1, [target]).unwrap();
        for l in 1..=3 {
            let circuit = build_full(&inst, &build_schedule(l, 0.5).unwrap()).unwrap();
            let parsed = parse_qasm(&to_qasm(&circuit).unwrap()).unwrap();
            let direct = simulate_gates(&circuit, 0).unwrap();
            let replay = simulate_gates(&parsed, 0).unwrap();
            assert_same_state(&direct, &replay, 1e-12);
            assert!((query_marginal(&replay, 1)[target] - 1.0).abs() < 1e-9);
        }
    }
}

#[test]
fn zero_target_oracle_is_x_conjugated_cx() {
    let inst = SearchInstance::new(1, [0]).unwrap();
    let text = to_qasm(&build_full(&inst, &build_schedule(1, 0.5).unwrap()).unwrap()).unwrap();
    assert!(text.contains("x q[0];\ncx q[0], a[0];\nx q[0];\n"));
}

#[test]
fn two_qubit_oracle_uses_ccx() {
    let inst = SearchInstance::new(2, [3]).unwrap();
    let s = build_schedule(l_min(0.25).unwrap(), 0.25).unwrap();
    let circuit = build_full(&inst, &s).unwrap();
    let text = to_qasm(&circuit).unwrap();
    assert!(text.contains("ccx q[0], q[1], a[0];"));
    let replay = simulate_gates(&parse_qasm(&text).unwrap(), 0).unwrap();
    assert_same_state(&simulate_gates(&circuit, 0).unwrap(), &replay, 1e-12);
    assert!((query_marginal(&replay, 2)[3] - 1.0).abs() < 1e-9);
}

#[test]
fn doubly_controlled_phase_expansion() {
    // Three query qubits need the two-control phase, which is expanded on export.
    let mut circuit = GateCircuit::new(3, 0).unwrap();
    for q in 0..3 {
        circuit.push(Gate::H(q)).unwrap();
    }
    circuit.push(Gate::Mcu1 { angle: 1.234, controls: vec![0, 1], target: 2 }).unwrap();
    let text = to_qasm(&circuit).unwrap();
    assert!(!text.contains("ccu1"));
    let replay = simulate_gates(&parse_qasm(&text).unwrap(), 0).unwrap();
    assert_same_state(&simulate_gates(&circuit, 0).unwrap(), &replay, 1e-12);
}

#[test]
fn hand_written_qasm_is_accepted() {
    let text = "// comment line\nOPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[1]; qreg a[1];\n\
                creg c[1];\nh q[0];\nu1(-(pi/4) * 2) a[0]; // trailing\ncx q[0],\n  a[0];\n";
    let c = parse_qasm(text).unwrap();
    assert_eq!(c.query_qubits(), 1);
    assert_eq!(c.ancilla_qubits(), 1);
    assert_eq!(
        c.gates(),
        &[
            Gate::H(0),
            Gate::U1 { angle: -PI / 2.0, target: 1 },
            Gate::Cx { control: 0, target: 1 }
        ]
    );
}

fn random_state(qubits: u32) -> impl Strategy<Value = StateVector> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1usize << qubits).prop_filter_map(
        "zero vector",
        |raw| {
            let norm: f64 = raw.iter().map(|(a, b)| a * a + b * b).sum::<f64>().sqrt();
            (norm > 1e-3).then(|| {
                StateVector::from_amplitudes(
                    raw.iter().map(|&(a, b)| Complex64::new(a / norm, b / norm)).collect(),
                )
                .unwrap()
            })
        },
    )
}

fn gate(width: usize) -> impl Strategy<Value = Gate> {
    let angle = prop_oneof![
        (-16i32..=16, 1i32..=16).prop_map(|(k, d)| PI * f64::from(k) / f64::from(d)),
        -PI..PI,
    ];
    let distinct = |k: usize| {
        Just((0..width).collect::<Vec<_>>()).prop_shuffle().prop_map(move |v| v[..k].to_vec())
    };
    let mut options: Vec<BoxedStrategy<Gate>> = vec![
        (0..width).prop_map(Gate::H).boxed(),
        (0..width).prop_map(Gate::X).boxed(),
        (angle.clone(), 0..width).prop_map(|(angle, target)| Gate::U1 { angle, target }).boxed(),
    ];
    if width >= 2 {
        options.push(distinct(2).prop_map(|v| Gate::Cx { control: v[0], target: v[1] }).boxed());
        options.push(
            (angle.clone(), distinct(2))
                .prop_map(|(angle, v)| Gate::Mcu1 { angle, controls: vec![v[0]], target: v[1] })
                .boxed(),
        );
    }
    if width >= 3 {
        options.push(
            distinct(3).prop_map(|v| Gate::Mcx { controls: vec![v[0], v[1]], target: v[2] }).boxed(),
        );
        options.push(
            (angle, distinct(3))
                .prop_map(|(angle, v)| Gate::Mcu1 { angle, controls: vec![v[0], v[1]], target: v[2] })
                .boxed(),
        );
    }
    prop::strategy::Union::new(options)
}

fn circuit_and_state() -> impl Strategy<Value = (GateCircuit, StateVector)> {
    (1u32..=3, 0u32..=1).prop_flat_map(|(query, ancilla)| {
        let width = (query + ancilla) as usize;
        (prop::collection::vec(gate(width), 0..40), random_state(query + ancilla)).prop_map(
            move |(gates, state)| {
                let mut c = GateCircuit::new(query, ancilla).unwrap();
                for g in gates {
                    c.push(g).unwrap();
                }
                (c, state)
            },
        )
    })
}

proptest! {
    #[test]
    fn emit_parse_simulate_matches((circuit, state) in circuit_and_state()) {
        let parsed = parse_qasm(&to_qasm(&circuit).unwrap()).unwrap();
        prop_assert_eq!(parsed.width(), circuit.width());
        let direct = simulate_gates_on(&circuit, state.clone()).unwrap();
        let replay = simulate_gates_on(&parsed, state).unwrap();
        for (x, y) in direct.amplitudes().iter().zip(replay.amplitudes()) {
            prop_assert!((x - y).norm() <= 1e-12);
        }
    }

    #[test]
    fn search_circuits_round_trip(n in 1u32..=2, seed in any::<u64>(), extra in 0u32..3) {
        let dim = 1usize << n;
        let targets: Vec<usize> = (0..dim).filter(|x| seed >> x & 1 == 1).collect();
        prop_assume!(!targets.is_empty() && targets.len() < dim);
        let inst = SearchInstance::new(n, targets).unwrap();
        let s = build_schedule(l_min(inst.lambda()).unwrap() + extra, inst.lambda()).unwrap();
        let circuit = build_full(&inst, &s).unwrap();
        let replay = simulate_gates(&parse_qasm(&to_qasm(&circuit).unwrap()).unwrap(), 0).unwrap();
        let direct = simulate_gates(&circuit, 0).unwrap();
        for (x, y) in direct.amplitudes().iter().zip(replay.amplitudes()) {
            prop_assert!((x - y).norm() <= 1e-12);
        }
    }
}
