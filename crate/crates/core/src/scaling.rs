//! The two-qubit-gate scaling experiment and quadratic fits.
//!
//! For each (backend, evaluation-qubit count) cell the estimation circuit is
//! built, routed onto the backend's coupling map when it has one, lowered to
//! the backend's native set, and its two-qubit gates counted, `trials` times
//! with derived seeds so constrained devices show placement-to-placement
//! spread. Per-cell statistics feed ordinary least-squares quadratics.

use alloc::borrow::ToOwned;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::Error;
use crate::math::derive_seed;
use crate::qae::{build_qae, QaeProblem};
use crate::route::{builtin_coupling_map, route, CouplingMap};
use crate::transpile::{transpile, NativeGateSet};

/// A named execution target: native gate set plus an optional coupling map
/// (`None` means all-to-all, so no routing is needed).
#[derive(Debug, Clone, PartialEq)]
pub struct BackendSpec {
    pub name: String,
    pub native: NativeGateSet,
    pub coupling: Option<CouplingMap>,
}

impl BackendSpec {
    pub fn new(
        name: &str,
        native: NativeGateSet,
        coupling: Option<CouplingMap>,
    ) -> Result<Self, Error> {
        // Trapped ions rearrange freely; an ion-trap backend with a fixed
        // topology is a configuration mistake.
        if native.two_qubit_kind() == crate::circuit::GateKind::Rxx && coupling.is_some() {
            return Err(Error::Structural(
                "ion-trap backends are all-to-all and take no coupling map".into(),
            ));
        }
        Ok(BackendSpec {
            name: name.to_owned(),
            native,
            coupling,
        })
    }

    /// Built-in backends: `iontrap`, `ideal` (all-to-all superconducting),
    /// `tokyo`, `cairo`, `yorktown`.
    pub fn by_name(name: &str) -> Result<Self, Error> {
        match name {
            "iontrap" => Self::new("iontrap", NativeGateSet::iontrap(), None),
            "ideal" => Self::new("ideal", NativeGateSet::superconducting(), None),
            "tokyo" | "cairo" | "yorktown" => Self::new(
                name,
                NativeGateSet::superconducting(),
                Some(builtin_coupling_map(name)?),
            ),
            other => Err(Error::Lookup(format!(
                "unknown backend '{other}' (expected iontrap, ideal, tokyo, cairo or yorktown)"
            ))),
        }
    }

    /// The four backends of the headline comparison.
    pub fn default_set() -> Vec<BackendSpec> {
        ["iontrap", "ideal", "tokyo", "cairo"]
            .iter()
            .map(|n| Self::by_name(n).expect("built-in backend"))
            .collect()
    }
}

/// Two-qubit totals for one (backend, n) cell across trials, with summary
/// statistics. `sem` is the standard error of the mean, s/√trials.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalingRecord {
    pub backend: String,
    pub n: usize,
    pub trials: usize,
    pub counts: Vec<usize>,
    pub mean: f64,
    pub std: f64,
    pub sem: f64,
    pub min: usize,
    pub max: usize,
}

impl ScalingRecord {
    pub fn from_counts(backend: &str, n: usize, counts: Vec<usize>) -> Self {
        let trials = counts.len();
        let mean = counts.iter().sum::<usize>() as f64 / trials as f64;
        let var = if trials > 1 {
            counts
                .iter()
                .map(|&c| {
                    let d = c as f64 - mean;
                    d * d
                })
                .sum::<f64>()
                / (trials - 1) as f64
        } else {
            0.0
        };
        let std = libm::sqrt(var);
        let sem = std / libm::sqrt(trials as f64);
        let min = *counts.iter().min().unwrap();
        let max = *counts.iter().max().unwrap();
        ScalingRecord {
            backend: backend.to_owned(),
            n,
            trials,
            counts,
            mean,
            std,
            sem,
            min,
            max,
        }
    }
}

/// A cell skipped because the circuit did not fit the device.
#[derive(Debug, Clone, PartialEq)]
pub struct SkippedCell {
    pub backend: String,
    pub n: usize,
    pub reason: String,
}

/// Full output of a scaling run, in (backend order, ascending n) order.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalingRun {
    pub records: Vec<ScalingRecord>,
    pub skipped: Vec<SkippedCell>,
}

/// Runs the experiment across `backends` for n in `n_min..=n_max`.
/// Capacity misfits are recorded and the run continues.
pub fn run_scaling(
    backends: &[BackendSpec],
    n_min: usize,
    n_max: usize,
    trials: usize,
    seed: u64,
    p: f64,
) -> Result<ScalingRun, Error> {
    if n_min < 1 || n_max < n_min || n_max > crate::qae::MAX_EVAL_QUBITS {
        return Err(Error::Domain(format!(
            "invalid qubit range {n_min}..{n_max} (supported: 1..{})",
            crate::qae::MAX_EVAL_QUBITS
        )));
    }
    if trials < 1 {
        return Err(Error::Domain("need at least one trial".into()));
    }
    let mut records = Vec::new();
    let mut skipped = Vec::new();
    for (b_idx, backend) in backends.iter().enumerate() {
        for n in n_min..=n_max {
            let problem = QaeProblem::new(p, n)?;
            let circuit = build_qae(&problem);
            let counts: Vec<usize> = match &backend.coupling {
                None => {
                    let count = transpile(&circuit, &backend.native).count_two_qubit_gates();
                    alloc::vec![count; trials]
                }
                Some(map) => {
                    if circuit.width() > map.qubit_count() {
                        skipped.push(SkippedCell {
                            backend: backend.name.clone(),
                            n,
                            reason: format!(
                                "width {} exceeds {} qubits",
                                circuit.width(),
                                map.qubit_count()
                            ),
                        });
                        continue;
                    }
                    (0..trials)
                        .map(|t| {
                            let cell = derive_seed(
                                seed,
                                ((b_idx as u64) << 32) ^ ((n as u64) << 16) ^ t as u64,
                            );
                            let routed = route(&circuit, map, cell, 1)
                                .expect("width checked against device");
                            transpile(&routed.circuit, &backend.native).count_two_qubit_gates()
                        })
                        .collect()
                }
            };
            records.push(ScalingRecord::from_counts(&backend.name, n, counts));
        }
    }
    Ok(ScalingRun { records, skipped })
}

/// Quadratic a2·n² + a1·n + a0 with its coefficient of determination.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadraticFit {
    pub a2: f64,
    pub a1: f64,
    pub a0: f64,
    pub r_squared: f64,
}

impl QuadraticFit {
    pub fn eval(&self, x: f64) -> f64 {
        (self.a2 * x + self.a1) * x + self.a0
    }
}

/// Ordinary least-squares quadratic through `points`, optionally weighted.
/// R² is 1 − SS_res/SS_tot over the fitted points.
pub fn fit_quadratic(
    points: &[(f64, f64)],
    weights: Option<&[f64]>,
) -> Result<QuadraticFit, Error> {
    let mut distinct: Vec<f64> = points.iter().map(|&(x, _)| x).collect();
    distinct.sort_by(|a, b| a.partial_cmp(b).unwrap());
    distinct.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
    if distinct.len() < 3 {
        return Err(Error::Fit(format!(
            "quadratic fit needs 3 distinct abscissae, got {}",
            distinct.len()
        )));
    }
    if let Some(w) = weights {
        if w.len() != points.len() {
            return Err(Error::Fit("weight/point length mismatch".into()));
        }
    }

    // Normal equations over the centred abscissa for conditioning; the shift
    // is undone algebraically below.
    let x0 = points.iter().map(|&(x, _)| x).sum::<f64>() / points.len() as f64;
    let mut moments = [0.0f64; 5];
    let mut rhs = [0.0f64; 3];
    for (i, &(x, y)) in points.iter().enumerate() {
        let w = weights.map(|w| w[i]).unwrap_or(1.0);
        let xc = x - x0;
        let mut xp = 1.0;
        for m in moments.iter_mut() {
            *m += w * xp;
            xp *= xc;
        }
        rhs[0] += w * y;
        rhs[1] += w * y * xc;
        rhs[2] += w * y * xc * xc;
    }
    let mut a = [
        [moments[0], moments[1], moments[2], rhs[0]],
        [moments[1], moments[2], moments[3], rhs[1]],
        [moments[2], moments[3], moments[4], rhs[2]],
    ];
    // Gaussian elimination with partial pivoting on the 3x4 tableau.
    #[allow(clippy::needless_range_loop)] // two rows of `a` are indexed at once
    for col in 0..3 {
        let pivot = (col..3)
            .max_by(|&r1, &r2| a[r1][col].abs().partial_cmp(&a[r2][col].abs()).unwrap())
            .unwrap();
        a.swap(col, pivot);
        if a[col][col].abs() < 1e-300 {
            return Err(Error::Fit("singular normal equations".into()));
        }
        for row in 0..3 {
            if row != col {
                let factor = a[row][col] / a[col][col];
                for k in col..4 {
                    a[row][k] -= factor * a[col][k];
                }
            }
        }
    }
    let c0 = a[0][3] / a[0][0];
    let c1 = a[1][3] / a[1][1];
    let c2 = a[2][3] / a[2][2];
    // Un-centre: y = c2(x-x0)² + c1(x-x0) + c0.
    let a2 = c2;
    let a1 = c1 - 2.0 * c2 * x0;
    let a0 = c0 - c1 * x0 + c2 * x0 * x0;

    let fit = QuadraticFit {
        a2,
        a1,
        a0,
        r_squared: 0.0,
    };
    let y_bar = points.iter().map(|&(_, y)| y).sum::<f64>() / points.len() as f64;
    let ss_tot: f64 = points.iter().map(|&(_, y)| (y - y_bar) * (y - y_bar)).sum();
    let ss_res: f64 = points
        .iter()
        .map(|&(x, y)| {
            let r = y - fit.eval(x);
            r * r
        })
        .sum();
    let r_squared = if ss_tot <= f64::MIN_POSITIVE {
        // Constant data: a perfect constant fit counts as fully explained.
        if ss_res <= 1e-18 {
            1.0
        } else {
            0.0
        }
    } else {
        1.0 - ss_res / ss_tot
    };
    Ok(QuadraticFit { r_squared, ..fit })
}
