//! Exact dense state-vector simulation and estimate-distribution extraction.
//!
//! Gates are applied through sparse per-gate kernels (amplitude pairs or
//! quadruples), never by materialising the full unitary, so a width-20
//! circuit simulates in seconds. Shot sampling uses a seeded ChaCha8 stream
//! and is bit-reproducible across platforms.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::bond::{expected_value, TBill};
use crate::circuit::{Circuit, GateInstance, GateKind};
use crate::error::Error;
use crate::qae::{estimate_grid, QaeProblem};
use crate::unitary::single_qubit_matrix;

/// Widest circuit the simulator will accept (2^24 amplitudes, 256 MiB).
pub const MAX_SIM_WIDTH: usize = 24;

/// Normalised amplitude vector over 2^width basis states, little-endian.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    width: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    /// |0…0⟩ of the given width.
    pub fn zero_state(width: usize) -> Self {
        let mut amps = vec![Complex64::ZERO; 1 << width];
        amps[0] = Complex64::ONE;
        StateVector { width, amps }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Probability of measuring the basis state `index`.
    pub fn probability(&self, index: usize) -> f64 {
        self.amps[index].norm_sqr()
    }

    fn apply_single(&mut self, m: [[Complex64; 2]; 2], q: usize) {
        let mask = 1usize << q;
        for base in 0..self.amps.len() {
            if base & mask != 0 {
                continue;
            }
            let hi = base | mask;
            let a0 = self.amps[base];
            let a1 = self.amps[hi];
            self.amps[base] = m[0][0] * a0 + m[0][1] * a1;
            self.amps[hi] = m[1][0] * a0 + m[1][1] * a1;
        }
    }

    fn apply_controlled(&mut self, m: [[Complex64; 2]; 2], control: usize, target: usize) {
        let cmask = 1usize << control;
        let tmask = 1usize << target;
        for base in 0..self.amps.len() {
            if base & cmask == 0 || base & tmask != 0 {
                continue;
            }
            let hi = base | tmask;
            let a0 = self.amps[base];
            let a1 = self.amps[hi];
            self.amps[base] = m[0][0] * a0 + m[0][1] * a1;
            self.amps[hi] = m[1][0] * a0 + m[1][1] * a1;
        }
    }

    fn apply_rxx(&mut self, theta: f64, a: usize, b: usize) {
        let flip = (1usize << a) | (1usize << b);
        let cos = Complex64::new(libm::cos(theta / 2.0), 0.0);
        let msin = Complex64::new(0.0, -libm::sin(theta / 2.0));
        for base in 0..self.amps.len() {
            let partner = base ^ flip;
            if partner < base {
                continue;
            }
            let a0 = self.amps[base];
            let a1 = self.amps[partner];
            self.amps[base] = cos * a0 + msin * a1;
            self.amps[partner] = msin * a0 + cos * a1;
        }
    }

    fn apply_swap(&mut self, a: usize, b: usize) {
        let (ma, mb) = (1usize << a, 1usize << b);
        for base in 0..self.amps.len() {
            if base & ma != 0 && base & mb == 0 {
                self.amps.swap(base, base ^ ma ^ mb);
            }
        }
    }

    /// Applies one gate in place; measurements are ignored.
    pub fn apply(&mut self, g: &GateInstance) {
        match g.kind {
            GateKind::H
            | GateKind::X
            | GateKind::Sx
            | GateKind::Rz
            | GateKind::Rx
            | GateKind::Ry
            | GateKind::U => {
                self.apply_single(single_qubit_matrix(g.kind, &g.params), g.qubits[0]);
            }
            GateKind::Cx => self.apply_controlled(
                single_qubit_matrix(GateKind::X, &[]),
                g.qubits[0],
                g.qubits[1],
            ),
            GateKind::Cry => self.apply_controlled(
                single_qubit_matrix(GateKind::Ry, &g.params),
                g.qubits[0],
                g.qubits[1],
            ),
            GateKind::Cp => {
                // Diagonal kernel: phase only where both bits are 1.
                let both = (1usize << g.qubits[0]) | (1usize << g.qubits[1]);
                let phase = Complex64::cis(g.params[0]);
                for base in 0..self.amps.len() {
                    if base & both == both {
                        self.amps[base] *= phase;
                    }
                }
            }
            GateKind::Rxx => self.apply_rxx(g.params[0], g.qubits[0], g.qubits[1]),
            GateKind::Swap => self.apply_swap(g.qubits[0], g.qubits[1]),
            GateKind::Measure => {}
        }
    }
}

/// Runs the circuit from |0…0⟩ and returns the final state. Measurement
/// instances are skipped.
pub fn run_statevector(c: &Circuit) -> Result<StateVector, Error> {
    if c.width() > MAX_SIM_WIDTH {
        return Err(Error::Capability(format!(
            "simulation limited to width {MAX_SIM_WIDTH}, circuit has {}",
            c.width()
        )));
    }
    let mut state = StateVector::zero_state(c.width());
    for g in c.gates() {
        state.apply(g);
    }
    Ok(state)
}

/// One support point of an estimate distribution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EstimateMass {
    /// Grid value p̃ = sin²(πk/2ⁿ).
    pub estimate: f64,
    /// Probability mass (exact) or empirical frequency (sampled).
    pub mass: f64,
    /// Shot count; `None` for exact distributions.
    pub count: Option<u64>,
}

/// Distribution of estimates over the full grid, ascending. `shots`/`seed`
/// are `None` for exact distributions and recorded for sampled ones.
#[derive(Debug, Clone, PartialEq)]
pub struct EstimateDistribution {
    pub entries: Vec<EstimateMass>,
    pub shots: Option<u64>,
    pub seed: Option<u64>,
}

impl EstimateDistribution {
    pub fn total_mass(&self) -> f64 {
        self.entries.iter().map(|e| e.mass).sum()
    }

    /// Entry with the largest mass; ties resolve to the smaller estimate.
    pub fn mode(&self) -> &EstimateMass {
        let mut best = &self.entries[0];
        for e in &self.entries[1..] {
            if e.mass > best.mass {
                best = e;
            }
        }
        best
    }

    /// Mass at the grid point nearest to `estimate` (exact match expected).
    pub fn mass_at(&self, estimate: f64) -> f64 {
        self.entries
            .iter()
            .min_by(|a, b| {
                (a.estimate - estimate)
                    .abs()
                    .partial_cmp(&(b.estimate - estimate).abs())
                    .unwrap()
            })
            .map(|e| e.mass)
            .unwrap_or(0.0)
    }
}

/// Exact folded masses over the estimate grid for a circuit of `n` evaluation
/// qubits plus one objective qubit.
fn exact_masses(c: &Circuit, n: usize) -> Result<Vec<f64>, Error> {
    if c.width() != n + 1 {
        return Err(Error::Structural(format!(
            "expected width {} for {n} evaluation qubits, got {}",
            n + 1,
            c.width()
        )));
    }
    let state = run_statevector(c)?;
    let m = 1usize << n;
    // Marginal over the objective qubit, then fold z with 2^n - z.
    let mut masses = vec![0.0f64; m / 2 + 1];
    for (index, amp) in state.amplitudes().iter().enumerate() {
        let z = index & (m - 1);
        let folded = z.min(m - z);
        masses[folded] += amp.norm_sqr();
    }
    Ok(masses)
}

/// Exact estimate distribution of a circuit built by
/// [`crate::qae::build_qae`] for `problem`: marginal probabilities of the
/// evaluation-register integers, folded through the sin² symmetry.
pub fn exact_distribution(
    c: &Circuit,
    problem: &QaeProblem,
) -> Result<EstimateDistribution, Error> {
    let n = problem.eval_qubits();
    let masses = exact_masses(c, n)?;
    let grid = estimate_grid(n);
    let entries = grid
        .into_iter()
        .zip(masses)
        .map(|(estimate, mass)| EstimateMass {
            estimate,
            mass,
            count: None,
        })
        .collect();
    Ok(EstimateDistribution {
        entries,
        shots: None,
        seed: None,
    })
}

/// Uniform f64 in [0, 1) from the top 53 bits of a u64 draw.
fn uniform_f64(rng: &mut ChaCha8Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / 9_007_199_254_740_992.0)
}

/// Multinomial sample of `shots` measurements from the exact distribution of
/// `c`. The number of evaluation qubits is read off the circuit's classical
/// width. Deterministic for a fixed seed.
pub fn sample_shots(c: &Circuit, shots: u64, seed: u64) -> Result<EstimateDistribution, Error> {
    if shots == 0 {
        return Err(Error::Domain("need at least one shot".into()));
    }
    let n = c.classical_width();
    if n == 0 {
        return Err(Error::Structural(
            "circuit measures no evaluation qubits".into(),
        ));
    }
    let masses = exact_masses(c, n)?;
    let mut cumulative = Vec::with_capacity(masses.len());
    let mut acc = 0.0;
    for &m in &masses {
        acc += m;
        cumulative.push(acc);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counts = vec![0u64; masses.len()];
    for _ in 0..shots {
        let u = uniform_f64(&mut rng) * acc;
        let slot = cumulative
            .iter()
            .position(|&edge| u < edge)
            .unwrap_or(masses.len() - 1);
        counts[slot] += 1;
    }
    let grid = estimate_grid(n);
    let entries = grid
        .into_iter()
        .zip(counts)
        .map(|(estimate, count)| EstimateMass {
            estimate,
            mass: count as f64 / shots as f64,
            count: Some(count),
        })
        .collect();
    Ok(EstimateDistribution {
        entries,
        shots: Some(shots),
        seed: Some(seed),
    })
}

/// Reads off the most probable estimate and prices the bill with it:
/// p̃ = argmax mass (ties to the smaller estimate), value = (1−p̃)·v_low +
/// p̃·v_high.
pub fn estimate_and_price(dist: &EstimateDistribution, tb: &TBill) -> (f64, f64) {
    assert!(!dist.entries.is_empty(), "empty distribution");
    let p_hat = dist.mode().estimate;
    let bill = TBill {
        p_no_change: p_hat,
        ..*tb
    };
    (p_hat, expected_value(&bill))
}
