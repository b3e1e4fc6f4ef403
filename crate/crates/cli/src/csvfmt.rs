//! CSV emission and parsing for scaling runs and estimate distributions.
//!
//! All emitted files start with `#` comment headers carrying the tool
//! version and the run parameters, and are byte-identical for identical
//! inputs.

use std::fmt::Write as _;

use anyhow::{bail, Context, Result};
use qae_core::scaling::{ScalingRecord, ScalingRun};
use qae_core::sim::EstimateDistribution;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Parameters recorded in output headers.
#[derive(Debug, Clone, Copy)]
pub struct RunMeta {
    pub seed: u64,
    pub trials: usize,
    pub p: f64,
}

/// Schema: `backend,n,trials,mean,std,sem,min,max`.
pub fn scaling_csv(run: &ScalingRun, meta: &RunMeta) -> String {
    let mut out = format!("# qae scale v{TOOL_VERSION}\n");
    let _ = writeln!(
        out,
        "# seed={} trials={} p={}",
        meta.seed, meta.trials, meta.p
    );
    for skip in &run.skipped {
        let _ = writeln!(
            out,
            "# skipped backend={} n={}: {}",
            skip.backend, skip.n, skip.reason
        );
    }
    out.push_str("backend,n,trials,mean,std,sem,min,max\n");
    for r in &run.records {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            r.backend, r.n, r.trials, r.mean, r.std, r.sem, r.min, r.max
        );
    }
    out
}

/// Per-backend series of (n, mean, sem) triples, in first-appearance order.
pub type BackendSeries = Vec<(String, Vec<(f64, f64, f64)>)>;

/// Reads back the scaling schema, grouped per backend.
pub fn parse_scaling_csv(text: &str) -> Result<BackendSeries> {
    let mut groups: BackendSeries = Vec::new();
    let mut saw_header = false;
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if !saw_header {
            if !line.starts_with("backend,n,") {
                bail!("line {}: expected scaling CSV header", idx + 1);
            }
            saw_header = true;
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 8 {
            bail!("line {}: expected 8 fields, got {}", idx + 1, fields.len());
        }
        let n: f64 = fields[1]
            .parse()
            .with_context(|| format!("line {}: bad n", idx + 1))?;
        let mean: f64 = fields[3]
            .parse()
            .with_context(|| format!("line {}: bad mean", idx + 1))?;
        let sem: f64 = fields[5]
            .parse()
            .with_context(|| format!("line {}: bad sem", idx + 1))?;
        match groups.iter_mut().find(|(name, _)| name == fields[0]) {
            Some((_, points)) => points.push((n, mean, sem)),
            None => groups.push((fields[0].to_string(), vec![(n, mean, sem)])),
        }
    }
    if !saw_header {
        bail!("no scaling CSV header found");
    }
    Ok(groups)
}

/// Schema: `estimate,mass` for exact distributions,
/// `estimate,count,frequency` for sampled ones.
pub fn distribution_csv(dist: &EstimateDistribution, p: f64, eval_qubits: usize) -> String {
    let mut out = format!("# qae simulate v{TOOL_VERSION} p={p} eval_qubits={eval_qubits}");
    match (dist.shots, dist.seed) {
        (Some(shots), Some(seed)) => {
            let _ = writeln!(out, " shots={shots} seed={seed}");
            out.push_str("estimate,count,frequency\n");
            for e in &dist.entries {
                let _ = writeln!(out, "{},{},{}", e.estimate, e.count.unwrap_or(0), e.mass);
            }
        }
        _ => {
            out.push_str(" shots=exact\n");
            out.push_str("estimate,mass\n");
            for e in &dist.entries {
                let _ = writeln!(out, "{},{}", e.estimate, e.mass);
            }
        }
    }
    out
}

/// Round-trip helper used by tests and `fit`: records → CSV → records
/// (numeric fields only).
pub fn records_as_points(records: &[ScalingRecord], backend: &str) -> Vec<(f64, f64)> {
    records
        .iter()
        .filter(|r| r.backend == backend)
        .map(|r| (r.n as f64, r.mean))
        .collect()
}
