//! Synthesis of the amplitude-estimation circuit.
//!
//! The estimated quantity is a probability `p` encoded as the |1⟩ amplitude of
//! a single objective qubit via RY(θ), θ = 2·arcsin(√p). Phase estimation runs
//! RY(2θ) powers controlled by `n` evaluation qubits, followed by an inverse
//! QFT. The power-to-qubit assignment is reversed so the inverse QFT needs no
//! SWAP layer and the measured evaluation register reads directly as the
//! little-endian integer `z`, giving the estimate p̃ = sin²(πz/2ⁿ).

use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::circuit::{Circuit, GateInstance};
use crate::error::Error;

/// An estimation problem: the target probability and the evaluation-register
/// size that sets the grid resolution M = 2ⁿ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QaeProblem {
    p: f64,
    eval_qubits: usize,
    theta: f64,
}

/// Largest supported evaluation register. Keeps every 2^k power in range;
/// real instances stop far earlier (simulation caps at width 24).
pub const MAX_EVAL_QUBITS: usize = 32;

impl QaeProblem {
    pub fn new(p: f64, eval_qubits: usize) -> Result<Self, Error> {
        if eval_qubits == 0 {
            return Err(Error::Domain("need at least one evaluation qubit".into()));
        }
        if eval_qubits > MAX_EVAL_QUBITS {
            return Err(Error::Domain(format!(
                "at most {MAX_EVAL_QUBITS} evaluation qubits supported, got {eval_qubits}"
            )));
        }
        let theta = theta_from_p(p)?;
        Ok(QaeProblem {
            p,
            eval_qubits,
            theta,
        })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn eval_qubits(&self) -> usize {
        self.eval_qubits
    }

    /// Rotation angle with sin²(θ/2) = p.
    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// Total circuit width: evaluation qubits 0..n-1 plus the objective at n.
    pub fn width(&self) -> usize {
        self.eval_qubits + 1
    }

    /// Index of the objective qubit (the highest one, so the evaluation bits
    /// read as the integer z without index arithmetic).
    pub fn objective_qubit(&self) -> usize {
        self.eval_qubits
    }
}

/// θ = 2·arcsin(√p).
pub fn theta_from_p(p: f64) -> Result<f64, Error> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Domain(format!("probability {p} outside [0, 1]")));
    }
    Ok(2.0 * libm::asin(libm::sqrt(p)))
}

/// Builds the estimation circuit for `problem`.
///
/// Layout: H on every evaluation qubit; CRY(2^{k+1}·θ) from evaluation qubit
/// n-1-k to the objective for k = 0..n (the controlled 2^k-th power of
/// RY(2θ), with the reversed assignment that makes the inverse QFT swapless);
/// the swapless inverse QFT on the evaluation register; measurement of every
/// evaluation qubit. Exactly n CRY and n(n-1)/2 CP instances.
pub fn build_qae(problem: &QaeProblem) -> Circuit {
    let n = problem.eval_qubits;
    let objective = problem.objective_qubit();
    let mut c = Circuit::new(problem.width(), n);
    let push = |c: &mut Circuit, g| c.push(g).expect("generated gate is valid");

    for q in 0..n {
        push(&mut c, GateInstance::h(q));
    }
    for k in 0..n {
        let angle = (1u64 << (k + 1)) as f64 * problem.theta;
        push(&mut c, GateInstance::cry(angle, n - 1 - k, objective));
    }
    // Swapless inverse QFT: adjoint of the H/CP ladder that computes the
    // bit-reversed Fourier transform. Combined with the reversed CRY powers
    // above this equals the standard inverse QFT with its SWAP layer.
    for j in 0..n {
        for k in 0..j {
            let angle = -PI / (1u64 << (j - k)) as f64;
            push(&mut c, GateInstance::cp(angle, k, j));
        }
        push(&mut c, GateInstance::h(j));
    }
    for q in 0..n {
        push(&mut c, GateInstance::measure(q, q));
    }
    c
}

/// The distinct estimate levels sin²(πk/2ⁿ) for k = 0..2^{n-1}, ascending.
/// There are (2ⁿ-2)/2 + 2 of them; interior grid points are hit by two
/// measurement outcomes each (z and 2ⁿ-z), the endpoints by one.
pub fn estimate_grid(n: usize) -> Vec<f64> {
    assert!(
        (1..=MAX_EVAL_QUBITS).contains(&n),
        "evaluation register out of range"
    );
    let m = 1u64 << n;
    (0..=m / 2)
        .map(|k| {
            let s = libm::sin(PI * k as f64 / m as f64);
            s * s
        })
        .collect()
}

/// Folds a measured evaluation-register integer into its estimate
/// p̃ = sin²(πz/2ⁿ); z and 2ⁿ-z land on the same value.
pub fn outcome_to_estimate(z: u64, n: usize) -> Result<f64, Error> {
    assert!(
        (1..=MAX_EVAL_QUBITS).contains(&n),
        "evaluation register out of range"
    );
    let m = 1u64 << n;
    if z >= m {
        return Err(Error::Domain(format!(
            "outcome {z} out of range for {n} evaluation qubits"
        )));
    }
    let s = libm::sin(PI * z as f64 / m as f64);
    Ok(s * s)
}

/// Estimation-error radius π/M + π²/M² that holds with probability ≥ 8/π².
pub fn error_bound(m: u64) -> f64 {
    assert!(m >= 2 && m.is_power_of_two(), "grid size must be 2^n >= 2");
    let mf = m as f64;
    PI / mf + PI * PI / (mf * mf)
}
