//! Report types and their table, CSV and JSON renderings.
//!
//! Tables and schedule CSV use six decimals for phases and δ and four for
//! fidelity. JSON and the data CSVs (sweeps, distributions) keep full
//! precision so they can be re-read without loss.

use std::fmt::Write as _;
use std::path::Path;

use ampm_core::{Distribution, PhaseSchedule};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Table,
    Json,
    Csv,
}

pub trait Report: Serialize {
    fn to_table(&self) -> String;

    fn to_csv(&self) -> Result<String>;

    fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }

    fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Table => Ok(self.to_table()),
            Format::Json => self.to_json(),
            Format::Csv => self.to_csv(),
        }
    }
}

fn csv_string<I, R>(header: &[&str], rows: I) -> Result<String>
where
    I: IntoIterator<Item = R>,
    R: IntoIterator<Item = String>,
{
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record(header)?;
    for row in rows {
        w.write_record(row)?;
    }
    let bytes = w.into_inner().map_err(|e| csv::Error::from(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is built from UTF-8 strings"))
}

fn csv_rows<T: DeserializeOwned>(text: &str) -> Result<Vec<T>> {
    let mut r = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(text.as_bytes());
    Ok(r.deserialize().collect::<Result<_, _>>()?)
}

/// Parses a JSON report produced by [`Report::to_json`].
pub fn from_json<T: DeserializeOwned>(text: &str) -> Result<T> {
    Ok(serde_json::from_str(text)?)
}

/// Shortest round-trip representation, in exponent form for very small or
/// large magnitudes.
fn full(x: f64) -> String {
    if x != 0.0 && !(1e-4..1e15).contains(&x.abs()) {
        format!("{x:e}")
    } else {
        x.to_string()
    }
}

fn fixed6(x: f64) -> String {
    format!("{x:.6}")
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhaseRow {
    pub j: usize,
    pub phi: f64,
    pub varphi: f64,
}

/// Schedule parameters for one design fraction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScheduleReport {
    pub lambda: f64,
    pub l: u32,
    #[serde(rename = "L")]
    pub order: u32,
    pub delta: f64,
    pub gamma: f64,
    pub phi: Vec<f64>,
    pub varphi: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl ScheduleReport {
    pub fn new(lambda: f64, schedule: &PhaseSchedule) -> Self {
        let note = schedule
            .is_empty()
            .then(|| "no iterations needed: measure immediately".to_string());
        ScheduleReport {
            lambda,
            l: schedule.iterations(),
            order: schedule.order(),
            delta: schedule.delta(),
            gamma: schedule.gamma(),
            phi: schedule.phi().to_vec(),
            varphi: schedule.varphi().to_vec(),
            note,
        }
    }

    pub fn rows(&self) -> Vec<PhaseRow> {
        self.phi
            .iter()
            .zip(&self.varphi)
            .enumerate()
            .map(|(i, (&phi, &varphi))| PhaseRow { j: i + 1, phi, varphi })
            .collect()
    }

    fn write_table(&self, out: &mut String) {
        writeln!(out, "lambda  {}", fixed6(self.lambda)).unwrap();
        writeln!(out, "l       {}", self.l).unwrap();
        writeln!(out, "L       {}", self.order).unwrap();
        writeln!(out, "delta   {}", fixed6(self.delta)).unwrap();
        writeln!(out, "gamma   {}", fixed6(self.gamma)).unwrap();
        if let Some(note) = &self.note {
            writeln!(out, "{note}").unwrap();
            return;
        }
        writeln!(out).unwrap();
        writeln!(out, "{:>4}  {:>10}  {:>10}", "j", "phi_j", "varphi_j").unwrap();
        for r in self.rows() {
            writeln!(out, "{:>4}  {:>10}  {:>10}", r.j, fixed6(r.phi), fixed6(r.varphi)).unwrap();
        }
    }
}

impl Report for ScheduleReport {
    fn to_table(&self) -> String {
        let mut out = String::new();
        self.write_table(&mut out);
        out
    }

    /// One row per iteration: `j,phi,varphi`.
    fn to_csv(&self) -> Result<String> {
        write_phase_csv(&self.rows())
    }
}

pub fn write_phase_csv(rows: &[PhaseRow]) -> Result<String> {
    csv_string(
        &["j", "phi", "varphi"],
        rows.iter().map(|r| [r.j.to_string(), fixed6(r.phi), fixed6(r.varphi)]),
    )
}

pub fn read_phase_csv(text: &str) -> Result<Vec<PhaseRow>> {
    csv_rows(text)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceSummary {
    pub n: u32,
    #[serde(rename = "M")]
    pub m: usize,
    pub lambda: f64,
    pub targets: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Samples {
    pub shots: u64,
    pub seed: u64,
    pub counts: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub instance: InstanceSummary,
    pub schedule: ScheduleReport,
    pub p_success: f64,
    pub distribution: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<Samples>,
}

/// One basis state of a run: exact probability and optional sampled count.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistributionRow {
    pub index: usize,
    pub probability: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counts: Option<u64>,
}

impl RunReport {
    pub fn rows(&self) -> Vec<DistributionRow> {
        self.distribution
            .iter()
            .enumerate()
            .map(|(index, &probability)| DistributionRow {
                index,
                probability,
                counts: self.samples.as_ref().map(|s| s.counts[index]),
            })
            .collect()
    }
}

impl Report for RunReport {
    fn to_table(&self) -> String {
        let inst = &self.instance;
        let mut out = String::new();
        writeln!(out, "n       {}", inst.n).unwrap();
        writeln!(out, "M       {}", inst.m).unwrap();
        self.schedule.write_table(&mut out);
        writeln!(out).unwrap();
        writeln!(out, "p_success  {:.12}", self.p_success).unwrap();
        if let Some(s) = &self.samples {
            writeln!(out, "shots      {} (seed {})", s.shots, s.seed).unwrap();
        }
        writeln!(out).unwrap();
        let width = inst.n as usize;
        let rows = self.rows();
        for r in &rows {
            let marker = if inst.targets.binary_search(&r.index).is_ok() { "*" } else { " " };
            write!(out, "{:>6}  |{:0width$b}>{marker}  {:.6}", r.index, r.index, r.probability).unwrap();
            if let Some(c) = r.counts {
                write!(out, "  {c:>8}").unwrap();
            }
            writeln!(out).unwrap();
        }
        out
    }

    fn to_csv(&self) -> Result<String> {
        write_distribution_csv(&self.rows())
    }
}

/// `index,probability[,counts]` with full-precision probabilities.
pub fn write_distribution_csv(rows: &[DistributionRow]) -> Result<String> {
    let with_counts = rows.first().is_some_and(|r| r.counts.is_some());
    let header: &[&str] = if with_counts {
        &["index", "probability", "counts"]
    } else {
        &["index", "probability"]
    };
    csv_string(
        header,
        rows.iter().map(|r| {
            let mut fields = vec![r.index.to_string(), full(r.probability)];
            if with_counts {
                fields.push(r.counts.unwrap_or(0).to_string());
            }
            fields
        }),
    )
}

pub fn read_distribution_csv(text: &str) -> Result<Vec<DistributionRow>> {
    csv_rows(text)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub lambda: f64,
    pub p_success: f64,
}

/// Success probability of a fixed schedule across actual fractions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub design_lambda: f64,
    pub l: u32,
    pub rows: Vec<SweepRow>,
}

impl Report for SweepReport {
    fn to_table(&self) -> String {
        let mut out = String::new();
        writeln!(out, "design lambda {}, l = {}", fixed6(self.design_lambda), self.l).unwrap();
        writeln!(out, "{:>10}  {:>10}", "lambda", "p_success").unwrap();
        for r in &self.rows {
            writeln!(out, "{:>10}  {:>10}", fixed6(r.lambda), fixed6(r.p_success)).unwrap();
        }
        out
    }

    fn to_csv(&self) -> Result<String> {
        write_sweep_csv(&self.rows)
    }
}

pub fn write_sweep_csv(rows: &[SweepRow]) -> Result<String> {
    csv_string(
        &["lambda", "p_success"],
        rows.iter().map(|r| [full(r.lambda), full(r.p_success)]),
    )
}

pub fn read_sweep_csv(text: &str) -> Result<Vec<SweepRow>> {
    csv_rows(text)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IterationRow {
    pub lambda: f64,
    pub l_min: u32,
    #[serde(rename = "l_G")]
    pub l_g: u32,
    pub diff: i64,
}

/// Minimal exact iteration count against the standard Grover count.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompareReport {
    pub rows: Vec<IterationRow>,
}

impl Report for CompareReport {
    fn to_table(&self) -> String {
        let mut out = String::new();
        writeln!(out, "{:>10}  {:>6}  {:>6}  {:>4}", "lambda", "l_min", "l_G", "diff").unwrap();
        for r in &self.rows {
            writeln!(out, "{:>10}  {:>6}  {:>6}  {:>4}", fixed6(r.lambda), r.l_min, r.l_g, r.diff).unwrap();
        }
        out
    }

    fn to_csv(&self) -> Result<String> {
        write_compare_csv(&self.rows)
    }
}

pub fn write_compare_csv(rows: &[IterationRow]) -> Result<String> {
    csv_string(
        &["lambda", "l_min", "l_G", "diff"],
        rows.iter().map(|r| {
            [full(r.lambda), r.l_min.to_string(), r.l_g.to_string(), r.diff.to_string()]
        }),
    )
}

pub fn read_compare_csv(text: &str) -> Result<Vec<IterationRow>> {
    csv_rows(text)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FidelityReport {
    pub fidelity: f64,
}

impl Report for FidelityReport {
    fn to_table(&self) -> String {
        format!("{:.4}\n", self.fidelity)
    }

    fn to_csv(&self) -> Result<String> {
        csv_string(&["fidelity"], [[format!("{:.4}", self.fidelity)]])
    }
}

/// Predicted outcome of an exported circuit. The QASM text itself goes to
/// its own file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QasmReport {
    pub instance: InstanceSummary,
    pub l: u32,
    pub gates: usize,
    pub predicted: Vec<f64>,
    #[serde(skip)]
    pub qasm: String,
}

impl Report for QasmReport {
    fn to_table(&self) -> String {
        let mut out = String::new();
        writeln!(out, "n {}, M {}, l {}, {} gates", self.instance.n, self.instance.m, self.l, self.gates)
            .unwrap();
        writeln!(out, "predicted distribution:").unwrap();
        let width = self.instance.n as usize;
        for (i, p) in self.predicted.iter().enumerate() {
            writeln!(out, "{i:>6}  |{i:0width$b}>  {p:.6}").unwrap();
        }
        out
    }

    fn to_csv(&self) -> Result<String> {
        let rows: Vec<_> = self
            .predicted
            .iter()
            .enumerate()
            .map(|(index, &probability)| DistributionRow { index, probability, counts: None })
            .collect();
        write_distribution_csv(&rows)
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum DistributionJson {
    Plain(Vec<f64>),
    Probs { probs: Vec<f64> },
    Run { distribution: Vec<f64> },
    Predicted { predicted: Vec<f64> },
}

/// Reads a probability vector from JSON (a bare array, or an object with a
/// `probs`, `distribution` or `predicted` array) or from CSV (the
/// `probability` or `p` column, else the last column).
pub fn parse_distribution(text: &str) -> std::result::Result<Distribution, String> {
    let probs = if text.trim_start().starts_with(['[', '{']) {
        match serde_json::from_str::<DistributionJson>(text).map_err(|e| e.to_string())? {
            DistributionJson::Plain(p)
            | DistributionJson::Probs { probs: p }
            | DistributionJson::Run { distribution: p }
            | DistributionJson::Predicted { predicted: p } => p,
        }
    } else {
        let mut r = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(text.as_bytes());
        let headers = r.headers().map_err(|e| e.to_string())?.clone();
        let column = headers
            .iter()
            .position(|h| h == "probability" || h == "p")
            .or_else(|| headers.len().checked_sub(1))
            .ok_or("empty CSV header")?;
        let mut probs = Vec::new();
        for record in r.records() {
            let record = record.map_err(|e| e.to_string())?;
            let field = record.get(column).ok_or("short CSV row")?;
            probs.push(field.parse::<f64>().map_err(|e| format!("`{field}`: {e}"))?);
        }
        probs
    };
    if probs.is_empty() {
        return Err("no probabilities found".into());
    }
    Distribution::new(probs).map_err(|e| e.to_string())
}

pub fn read_distribution(path: &Path) -> Result<Distribution> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    parse_distribution(&text).map_err(|message| CliError::Malformed { path: path.to_path_buf(), message })
}
