//! The subcommands as plain functions returning reports.

use std::path::Path;

use ampm_core::analytic::{grover_iterations, statistical_fidelity, success_probability};
use ampm_core::circuit::{build_full, query_marginal, simulate_gates};
use ampm_core::schedule::{build_schedule, exact_schedule, l_min};
use ampm_core::simulator::run_schedule;
use ampm_core::{PhaseSchedule, SearchInstance};
use rand::distributions::{Distribution as _, WeightedIndex};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{CliError, Result};
use crate::qasm::to_qasm;
use crate::report::{
    read_distribution, CompareReport, FidelityReport, InstanceSummary, IterationRow, QasmReport,
    RunReport, Samples, ScheduleReport, SweepReport, SweepRow,
};

/// Actual fractions covered by `sweep`.
pub const SWEEP_RANGE: (f64, f64) = (0.001, 0.999);

/// `l` iterations for `λ`, or the fewest exact ones when `l` is absent.
fn schedule_for(lambda: f64, l: Option<u32>) -> Result<PhaseSchedule> {
    Ok(match l {
        None => exact_schedule(lambda)?,
        Some(l) if lambda == 1.0 && l > 0 => {
            return Err(CliError::InvalidArgument(
                "lambda = 1 needs no iterations; omit --l or pass --l 0".into(),
            ))
        }
        Some(0) => {
            let min = l_min(lambda)?;
            if min > 0 {
                return Err(ampm_core::Error::TooFewIterations { l: 0, l_min: min, lambda }.into());
            }
            PhaseSchedule::empty()
        }
        Some(l) => build_schedule(l, lambda)?,
    })
}

pub fn schedule(lambda: f64, l: Option<u32>) -> Result<ScheduleReport> {
    Ok(ScheduleReport::new(lambda, &schedule_for(lambda, l)?))
}

fn summary(inst: &SearchInstance) -> InstanceSummary {
    InstanceSummary {
        n: inst.qubits(),
        m: inst.target_count(),
        lambda: inst.lambda(),
        targets: inst.targets().to_vec(),
    }
}

/// Draws `shots` outcomes from `probs` with a ChaCha8 stream seeded by `seed`.
pub fn sample_counts(probs: &[f64], shots: u64, seed: u64) -> Result<Vec<u64>> {
    let mut counts = vec![0; probs.len()];
    if shots == 0 {
        return Ok(counts);
    }
    let dist = WeightedIndex::new(probs)
        .map_err(|e| CliError::InvalidArgument(format!("cannot sample distribution: {e}")))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..shots {
        counts[dist.sample(&mut rng)] += 1;
    }
    Ok(counts)
}

pub fn run(
    n: u32,
    targets: &[usize],
    l: Option<u32>,
    shots: Option<u64>,
    seed: Option<u64>,
) -> Result<RunReport> {
    let inst = SearchInstance::new(n, targets.iter().copied())?;
    let lambda = inst.lambda();
    let sched = schedule_for(lambda, l)?;
    let state = run_schedule(&inst, &sched)?;
    let p_success = state.target_probability(&inst)?;
    let distribution = state.to_distribution()?.into_inner();
    let samples = match shots {
        Some(shots) => {
            let seed = seed.unwrap_or(0);
            Some(Samples { shots, seed, counts: sample_counts(&distribution, shots, seed)? })
        }
        None => None,
    };
    Ok(RunReport {
        instance: summary(&inst),
        schedule: ScheduleReport::new(lambda, &sched),
        p_success,
        distribution,
        samples,
    })
}

/// Evaluates the closed-form success probability of the design schedule on
/// `grid` evenly spaced actual fractions.
pub fn sweep(design_lambda: f64, l: Option<u32>, grid: usize) -> Result<SweepReport> {
    if grid < 2 {
        return Err(CliError::InvalidArgument("--grid must be at least 2".into()));
    }
    let sched = schedule_for(design_lambda, l)?;
    let (lo, hi) = SWEEP_RANGE;
    let rows = (0..grid)
        .map(|k| {
            let lambda = lo + (hi - lo) * k as f64 / (grid - 1) as f64;
            SweepRow { lambda, p_success: success_probability(&sched, lambda) }
        })
        .collect();
    Ok(SweepReport { design_lambda, l: sched.iterations(), rows })
}

/// Rows at `λ = k/grid` for `k = 1..=grid`.
pub fn compare_iterations(grid: usize) -> Result<CompareReport> {
    if grid == 0 {
        return Err(CliError::InvalidArgument("--grid must be positive".into()));
    }
    let rows = (1..=grid)
        .map(|k| {
            let lambda = k as f64 / grid as f64;
            let l_min = l_min(lambda)?;
            let l_g = grover_iterations(lambda)?;
            Ok(IterationRow { lambda, l_min, l_g, diff: i64::from(l_min) - i64::from(l_g) })
        })
        .collect::<Result<_>>()?;
    Ok(CompareReport { rows })
}

/// Builds the full circuit, exports it, and predicts its outcome by
/// simulating the gates.
pub fn qasm(n: u32, targets: &[usize], l: Option<u32>) -> Result<QasmReport> {
    let inst = SearchInstance::new(n, targets.iter().copied())?;
    let sched = schedule_for(inst.lambda(), l)?;
    let circuit = build_full(&inst, &sched)?;
    let text = to_qasm(&circuit)?;
    let out = simulate_gates(&circuit, 0)?;
    Ok(QasmReport {
        instance: summary(&inst),
        l: sched.iterations(),
        gates: circuit.gates().len(),
        predicted: query_marginal(&out, n),
        qasm: text,
    })
}

pub fn fidelity(a: &Path, b: &Path) -> Result<FidelityReport> {
    let (a, b) = (read_distribution(a)?, read_distribution(b)?);
    Ok(FidelityReport { fidelity: statistical_fidelity(&a, &b)? })
}
