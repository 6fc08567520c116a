//! Experiment report rows, aggregation and CSV emission.
//!
//! CSV column order is fixed: benchmark, algorithm, variant, rep, seed, C,
//! ET, ECL, RCL, feasible. Aggregate rows carry `rep=agg` (means, with the
//! feasible column holding the FSR) and `rep=agg_std` (standard deviations).

use std::io::Write;

use thiserror::Error;

/// Output feasibility margin: a run counts as truly feasible when its real
/// confidence level reaches `P0 - 0.005`.
pub const FSR_MARGIN: f64 = 0.005;

#[derive(Debug, Clone, PartialEq)]
pub struct ReportRow {
    pub benchmark: String,
    pub algorithm: String,
    pub variant: String,
    pub rep: u32,
    pub seed: u64,
    pub cost: f64,
    pub et: u64,
    pub ecl: Option<f64>,
    pub rcl: Option<f64>,
    /// Truly feasible (RCL-based when a truth model is available, otherwise
    /// the solver's own verdict).
    pub feasible: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AggregateRow {
    pub benchmark: String,
    pub algorithm: String,
    pub variant: String,
    pub mean_cost: f64,
    pub std_cost: f64,
    pub mean_et: f64,
    pub std_et: f64,
    pub mean_ecl: Option<f64>,
    pub std_ecl: Option<f64>,
    pub mean_rcl: Option<f64>,
    pub std_rcl: Option<f64>,
    /// Fraction of repetitions whose output was truly feasible.
    pub fsr: f64,
}

#[derive(Debug, Clone, Default)]
pub struct ExperimentReport {
    pub rows: Vec<ReportRow>,
    pub aggregates: Vec<AggregateRow>,
}

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

fn mean_std(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n;
    (mean, var.sqrt())
}

fn mean_std_opt(values: &[Option<f64>]) -> (Option<f64>, Option<f64>) {
    let present: Vec<f64> = values.iter().filter_map(|v| *v).collect();
    if present.len() != values.len() || present.is_empty() {
        return (None, None);
    }
    let (m, s) = mean_std(&present);
    (Some(m), Some(s))
}

/// Aggregate per-run rows into one mean/std/FSR row per (algorithm, variant),
/// preserving first-appearance order.
pub fn aggregate(rows: &[ReportRow]) -> Vec<AggregateRow> {
    let mut keys: Vec<(String, String, String)> = Vec::new();
    for r in rows {
        let key = (r.benchmark.clone(), r.algorithm.clone(), r.variant.clone());
        if !keys.contains(&key) {
            keys.push(key);
        }
    }
    keys.into_iter()
        .map(|(benchmark, algorithm, variant)| {
            let group: Vec<&ReportRow> = rows
                .iter()
                .filter(|r| r.benchmark == benchmark && r.algorithm == algorithm && r.variant == variant)
                .collect();
            let (mean_cost, std_cost) = mean_std(&group.iter().map(|r| r.cost).collect::<Vec<_>>());
            let (mean_et, std_et) = mean_std(&group.iter().map(|r| r.et as f64).collect::<Vec<_>>());
            let (mean_ecl, std_ecl) = mean_std_opt(&group.iter().map(|r| r.ecl).collect::<Vec<_>>());
            let (mean_rcl, std_rcl) = mean_std_opt(&group.iter().map(|r| r.rcl).collect::<Vec<_>>());
            let fsr = group.iter().filter(|r| r.feasible).count() as f64 / group.len() as f64;
            AggregateRow {
                benchmark,
                algorithm,
                variant,
                mean_cost,
                std_cost,
                mean_et,
                std_et,
                mean_ecl,
                std_ecl,
                mean_rcl,
                std_rcl,
                fsr,
            }
        })
        .collect()
}

fn opt_field(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

impl ExperimentReport {
    pub fn write_csv(&self, out: impl Write) -> Result<(), ReportError> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["benchmark", "algorithm", "variant", "rep", "seed", "C", "ET", "ECL", "RCL", "feasible"])?;
        for r in &self.rows {
            w.write_record([
                r.benchmark.as_str(),
                r.algorithm.as_str(),
                r.variant.as_str(),
                &r.rep.to_string(),
                &r.seed.to_string(),
                &r.cost.to_string(),
                &r.et.to_string(),
                &opt_field(r.ecl),
                &opt_field(r.rcl),
                &(r.feasible as u8).to_string(),
            ])?;
        }
        for a in &self.aggregates {
            w.write_record([
                a.benchmark.as_str(),
                a.algorithm.as_str(),
                a.variant.as_str(),
                "agg",
                "",
                &a.mean_cost.to_string(),
                &a.mean_et.to_string(),
                &opt_field(a.mean_ecl),
                &opt_field(a.mean_rcl),
                &a.fsr.to_string(),
            ])?;
            w.write_record([
                a.benchmark.as_str(),
                a.algorithm.as_str(),
                a.variant.as_str(),
                "agg_std",
                "",
                &a.std_cost.to_string(),
                &a.std_et.to_string(),
                &opt_field(a.std_ecl),
                &opt_field(a.std_rcl),
                "",
            ])?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_csv_bytes(&self) -> Vec<u8> {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to memory cannot fail");
        buf
    }
}
