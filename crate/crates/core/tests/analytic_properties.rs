use std::f64::consts::PI;

use ampm_core::analytic::{
    grover_iterations, reduced_iteration_matrix, reduced_propagator, statistical_fidelity,
    success_probability, success_probability_raw,
};
use ampm_core::schedule::{build_schedule, l_min};
use ampm_core::simulator::{self, SearchInstance, StateVector};
use ampm_core::{Complex64, Distribution};
use proptest::prelude::*;

fn valid_pair() -> impl Strategy<Value = (u32, f64)> {
    (0.01f64..0.99, 0u32..5).prop_map(|(lambda, extra)| (l_min(lambda).unwrap() + extra, lambda))
}

fn distribution(len: usize) -> impl Strategy<Value = Distribution> {
    prop::collection::vec(0.0f64..1.0, len).prop_filter_map("all zero", |raw| {
        let sum: f64 = raw.iter().sum();
        (sum > 1e-3).then(|| Distribution::new(raw.iter().map(|x| x / sum).collect()).unwrap())
    })
}

#[test]
fn exact_on_design_grid() {
    for k in 0..200 {
        let lambda = 0.01 + 0.98 * (f64::from(k) + 0.5) / 200.0;
        let lm = l_min(lambda).unwrap();
        for l in lm..lm + 6 {
            let s = build_schedule(l, lambda).unwrap();
            let p = success_probability(&s, lambda);
            assert!((p - 1.0).abs() <= 1e-10, "l = {l}, lambda = {lambda}: {p}");
        }
    }
}

#[test]
fn maxima_are_exact_and_midpoints_are_not() {
    for lambda in [0.02, 0.07, 0.15, 0.3, 0.5] {
        let lm = l_min(lambda).unwrap();
        for l in lm..lm + 4 {
            let s = build_schedule(l, lambda).unwrap();
            if s.delta() < 1e-6 {
                // 1 − δ²T² rounds to 1 in double precision.
                continue;
            }
            let pts = s.lambda_max_points();
            for &x in &pts {
                assert!((success_probability(&s, x) - 1.0).abs() <= 1e-10);
            }
            for w in pts.windows(2) {
                let mid = 0.5 * (w[0] + w[1]);
                assert!(success_probability_raw(&s, mid) < 1.0, "l = {l}, mid = {mid}");
            }
        }
    }
}

#[test]
fn second_maximum_for_two_iterations() {
    let s = build_schedule(2, 0.5).unwrap();
    let x2 = s.lambda_max_points()[1];
    let c = (3.0 * PI / 10.0).cos();
    assert!((x2 - (1.0 - s.gamma().powi(2) * c * c)).abs() < 1e-15);
    assert!((success_probability(&s, x2) - 1.0).abs() < 1e-10);
    assert!((reduced_propagator(&s, x2).success_probability() - 1.0).abs() < 1e-10);
}

#[test]
fn mismatched_fraction_matches_statevector() {
    let s = build_schedule(2, 0.5).unwrap();
    let inst = SearchInstance::new(2, [2]).unwrap();
    let sim = simulator::run_schedule(&inst, &s).unwrap().target_probability(&inst).unwrap();
    let p = success_probability(&s, 0.25);
    assert!((p - sim).abs() < 1e-12);
    assert!((0.0..=1.0).contains(&p));
}

#[test]
fn grover_count_maximizes_standard_iteration() {
    // λ = 0.1 in the reduced plane, plus the nearest 10-qubit instance.
    let lambda = 0.1;
    let lg = grover_iterations(lambda).unwrap();
    assert_eq!(lg, 2);
    let reduced = |k: usize| {
        let mut v = [Complex64::new(lambda.sqrt(), 0.0), Complex64::new((1.0 - lambda).sqrt(), 0.0)];
        let m = reduced_iteration_matrix(PI, PI, lambda);
        for _ in 0..k {
            v = [m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1]];
        }
        v[0].norm_sqr()
    };
    let best = (0..=5).max_by(|&a, &b| reduced(a).total_cmp(&reduced(b))).unwrap();
    assert_eq!(best, lg as usize);

    let inst = SearchInstance::new(10, 0..102).unwrap();
    assert_eq!(grover_iterations(inst.lambda()).unwrap(), lg);
    let sim = |k: usize| {
        simulator::Simulator::default()
            .run_phases(&inst, std::iter::repeat_n((PI, PI), k))
            .unwrap()
            .target_probability(&inst)
            .unwrap()
    };
    let best = (0..=5).max_by(|&a, &b| sim(a).total_cmp(&sim(b))).unwrap();
    assert_eq!(best, lg as usize);
}

/// Projects the full-space operator onto the normalized target and nontarget
/// superpositions of a concrete instance.
fn projected_iteration(inst: &SearchInstance, phi: f64, varphi: f64) -> [[Complex64; 2]; 2] {
    let n = inst.dimension();
    let m = inst.target_count() as f64;
    let alpha: Vec<f64> =
        (0..n).map(|x| if inst.is_target(x) { 1.0 / m.sqrt() } else { 0.0 }).collect();
    let beta: Vec<f64> = (0..n)
        .map(|x| if inst.is_target(x) { 0.0 } else { 1.0 / (n as f64 - m).sqrt() })
        .collect();
    let basis = [&alpha, &beta];
    let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
    for (c, col) in basis.iter().enumerate() {
        let amps = col.iter().map(|&a| Complex64::new(a, 0.0)).collect();
        let mut state = StateVector::from_amplitudes(amps).unwrap();
        state.apply_generalized_grover(inst, phi, varphi).unwrap();
        for (r, row) in basis.iter().enumerate() {
            out[r][c] = row.iter().zip(state.amplitudes()).map(|(b, a)| a * b).sum();
        }
    }
    out
}

#[test]
fn reduced_matrix_matches_projected_operator() {
    let cases: [(u32, &[usize]); 4] = [(1, &[1]), (2, &[0, 3]), (3, &[1, 4, 6]), (4, &[2, 5, 7, 8, 9])];
    for (qubits, targets) in cases {
        let inst = SearchInstance::new(qubits, targets.iter().copied()).unwrap();
        for (phi, varphi) in [(PI, PI), (0.3, -1.1), (-2.5, 2.9), (PI / 2.0, 0.0)] {
            let brute = projected_iteration(&inst, phi, varphi);
            let reduced = reduced_iteration_matrix(phi, varphi, inst.lambda());
            for r in 0..2 {
                for c in 0..2 {
                    assert!((brute[r][c] - reduced[r][c]).norm() < 1e-12);
                }
            }
        }
    }
}

proptest! {
    #[test]
    fn propagator_agrees_with_closed_form((l, lambda) in valid_pair(), actual in 0.0f64..1.0) {
        let s = build_schedule(l, lambda).unwrap();
        let r = reduced_propagator(&s, actual);
        prop_assert!((r.norm_sqr() - 1.0).abs() <= 1e-10);
        let p = success_probability(&s, actual);
        prop_assert!((r.success_probability() - p).abs() <= 1e-9,
            "l {} lambda {} actual {}: {} vs {}", l, lambda, actual, r.success_probability(), p);
    }

    #[test]
    fn probability_within_unit_interval((l, lambda) in valid_pair(), actual in 0.0f64..=1.0) {
        let p = success_probability(&build_schedule(l, lambda).unwrap(), actual);
        prop_assert!((0.0..=1.0).contains(&p));
    }

    #[test]
    fn fixed_point_floor((l, lambda) in valid_pair(), t in 0.0f64..1.0) {
        let s = build_schedule(l, lambda).unwrap();
        let actual = lambda + t * (1.0 - lambda);
        let p = success_probability(&s, actual);
        prop_assert!(p >= 1.0 - s.delta().powi(2) - 1e-12);
    }

    #[test]
    fn fidelity_bounds((a, b) in (1usize..8).prop_flat_map(|n| (distribution(n), distribution(n)))) {
        let f = statistical_fidelity(&a, &b).unwrap();
        prop_assert!((0.0..=1.0).contains(&f));
        let self_f = statistical_fidelity(&a, &a).unwrap();
        prop_assert!((self_f - 1.0).abs() < 1e-12);
        let distinct = a.probs().iter().zip(b.probs()).any(|(x, y)| (x - y).abs() > 1e-3);
        if distinct {
            prop_assert!(f < 1.0);
        }
    }

    #[test]
    fn fidelity_zero_on_disjoint_support(len in 2usize..8, split in 1usize..7) {
        let split = split.min(len - 1);
        let a: Vec<f64> = (0..len).map(|i| if i < split { 1.0 / split as f64 } else { 0.0 }).collect();
        let b: Vec<f64> =
            (0..len).map(|i| if i >= split { 1.0 / (len - split) as f64 } else { 0.0 }).collect();
        let f = statistical_fidelity(&Distribution::new(a).unwrap(), &Distribution::new(b).unwrap());
        prop_assert_eq!(f.unwrap(), 0.0);
    }
}
