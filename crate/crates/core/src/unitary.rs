//! Exact unitary semantics of gates and circuits as dense complex matrices.
//!
//! This is the reference path used by equivalence oracles; it intentionally
//! builds full 2^width matrices (per-gate sparse kernels live in [`crate::sim`]
//! so the two routes stay independent of each other).

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::FRAC_1_SQRT_2;
use core::ops::Index;

use num_complex::Complex64;

use crate::circuit::{Circuit, GateInstance, GateKind};
use crate::error::Error;

/// Widest circuit for which a dense unitary will be materialised.
pub const MAX_UNITARY_WIDTH: usize = 12;

/// Dense square complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl Matrix {
    pub fn zeros(dim: usize) -> Self {
        Matrix {
            dim,
            data: vec![Complex64::ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Matrix::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = Complex64::ONE;
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn set(&mut self, row: usize, col: usize, value: Complex64) {
        self.data[row * self.dim + col] = value;
    }

    /// Matrix product `self * rhs`.
    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.dim, rhs.dim, "matrix dimension mismatch");
        let n = self.dim;
        let mut out = Matrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == Complex64::ZERO {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * rhs.data[k * n + j];
                }
            }
        }
        out
    }

    /// Matrix-vector product.
    pub fn mul_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(self.dim, v.len(), "vector dimension mismatch");
        self.data
            .chunks_exact(self.dim)
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Matrix {
        let n = self.dim;
        let mut out = Matrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out.data[j * n + i] = self.data[i * n + j].conj();
            }
        }
        out
    }

    /// Max-norm of the elementwise difference.
    pub fn max_abs_diff(&self, other: &Matrix) -> f64 {
        assert_eq!(self.dim, other.dim, "matrix dimension mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// ‖U†U − I‖max ≤ tol.
    pub fn is_unitary(&self, tol: f64) -> bool {
        self.dagger()
            .mul(self)
            .max_abs_diff(&Matrix::identity(self.dim))
            <= tol
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Complex64;

    fn index(&self, (row, col): (usize, usize)) -> &Complex64 {
        &self.data[row * self.dim + col]
    }
}

/// 2×2 matrix of a single-qubit kind, `[row][col]`.
pub(crate) fn single_qubit_matrix(kind: GateKind, params: &[f64]) -> [[Complex64; 2]; 2] {
    let c = Complex64::new;
    match kind {
        GateKind::H => {
            let h = FRAC_1_SQRT_2;
            [[c(h, 0.0), c(h, 0.0)], [c(h, 0.0), c(-h, 0.0)]]
        }
        GateKind::X => [
            [Complex64::ZERO, Complex64::ONE],
            [Complex64::ONE, Complex64::ZERO],
        ],
        GateKind::Sx => [[c(0.5, 0.5), c(0.5, -0.5)], [c(0.5, -0.5), c(0.5, 0.5)]],
        GateKind::Rz => {
            let half = params[0] / 2.0;
            [
                [Complex64::cis(-half), Complex64::ZERO],
                [Complex64::ZERO, Complex64::cis(half)],
            ]
        }
        GateKind::Rx => {
            let half = params[0] / 2.0;
            [
                [c(libm::cos(half), 0.0), c(0.0, -libm::sin(half))],
                [c(0.0, -libm::sin(half)), c(libm::cos(half), 0.0)],
            ]
        }
        GateKind::Ry => {
            let half = params[0] / 2.0;
            [
                [c(libm::cos(half), 0.0), c(-libm::sin(half), 0.0)],
                [c(libm::sin(half), 0.0), c(libm::cos(half), 0.0)],
            ]
        }
        GateKind::U => {
            let (theta, phi, lambda) = (params[0], params[1], params[2]);
            let half = theta / 2.0;
            [
                [
                    c(libm::cos(half), 0.0),
                    -Complex64::cis(lambda) * libm::sin(half),
                ],
                [
                    Complex64::cis(phi) * libm::sin(half),
                    Complex64::cis(phi + lambda) * libm::cos(half),
                ],
            ]
        }
        _ => unreachable!("not a single-qubit kind"),
    }
}

fn embed_single(m: [[Complex64; 2]; 2], q: usize, width: usize) -> Matrix {
    let n = 1usize << width;
    let mask = 1usize << q;
    let mut out = Matrix::zeros(n);
    for col in 0..n {
        let b = usize::from(col & mask != 0);
        for (r, m_row) in m.iter().enumerate() {
            let row = (col & !mask) | (r << q);
            out.data[row * n + col] = m_row[b];
        }
    }
    out
}

/// Embeds a controlled single-qubit operation: identity when the control bit
/// is 0, `m` on the target when it is 1.
fn embed_controlled(m: [[Complex64; 2]; 2], control: usize, target: usize, width: usize) -> Matrix {
    let n = 1usize << width;
    let cmask = 1usize << control;
    let tmask = 1usize << target;
    let mut out = Matrix::zeros(n);
    for col in 0..n {
        if col & cmask == 0 {
            out.data[col * n + col] = Complex64::ONE;
        } else {
            let b = usize::from(col & tmask != 0);
            for (r, m_row) in m.iter().enumerate() {
                let row = (col & !tmask) | (r << target);
                out.data[row * n + col] = m_row[b];
            }
        }
    }
    out
}

fn embed_rxx(theta: f64, a: usize, b: usize, width: usize) -> Matrix {
    let n = 1usize << width;
    let flip = (1usize << a) | (1usize << b);
    let cos = Complex64::new(libm::cos(theta / 2.0), 0.0);
    let msin = Complex64::new(0.0, -libm::sin(theta / 2.0));
    let mut out = Matrix::zeros(n);
    for col in 0..n {
        out.data[col * n + col] = cos;
        out.data[(col ^ flip) * n + col] = msin;
    }
    out
}

fn embed_swap(a: usize, b: usize, width: usize) -> Matrix {
    let n = 1usize << width;
    let (ma, mb) = (1usize << a, 1usize << b);
    let mut out = Matrix::zeros(n);
    for col in 0..n {
        let bit_a = usize::from(col & ma != 0);
        let bit_b = usize::from(col & mb != 0);
        let row = (col & !(ma | mb)) | (bit_b << a) | (bit_a << b);
        out.data[row * n + col] = Complex64::ONE;
    }
    out
}

/// Full-width unitary of one gate, identity on untouched qubits. Qubit 0 is
/// the least-significant tensor factor.
pub fn gate_unitary(g: &GateInstance, width: usize) -> Result<Matrix, Error> {
    g.validate(width, usize::MAX)?;
    if g.kind == GateKind::Measure {
        return Err(Error::Structural("measurement has no unitary".into()));
    }
    Ok(match g.kind {
        GateKind::H
        | GateKind::X
        | GateKind::Sx
        | GateKind::Rz
        | GateKind::Rx
        | GateKind::Ry
        | GateKind::U => embed_single(single_qubit_matrix(g.kind, &g.params), g.qubits[0], width),
        GateKind::Cx => embed_controlled(
            single_qubit_matrix(GateKind::X, &[]),
            g.qubits[0],
            g.qubits[1],
            width,
        ),
        GateKind::Cry => embed_controlled(
            single_qubit_matrix(GateKind::Ry, &g.params),
            g.qubits[0],
            g.qubits[1],
            width,
        ),
        GateKind::Cp => {
            let phase = [
                [Complex64::ONE, Complex64::ZERO],
                [Complex64::ZERO, Complex64::cis(g.params[0])],
            ];
            embed_controlled(phase, g.qubits[0], g.qubits[1], width)
        }
        GateKind::Rxx => embed_rxx(g.params[0], g.qubits[0], g.qubits[1], width),
        GateKind::Swap => embed_swap(g.qubits[0], g.qubits[1], width),
        GateKind::Measure => unreachable!(),
    })
}

/// Ordered product of the gate unitaries: later gates multiply on the left.
///
/// Guarded at [`MAX_UNITARY_WIDTH`]; measurements are not unitary and are
/// rejected (use [`Circuit::without_measurements`] first if appropriate).
pub fn circuit_unitary(c: &Circuit) -> Result<Matrix, Error> {
    if c.width() > MAX_UNITARY_WIDTH {
        return Err(Error::Capability(format!(
            "dense unitary limited to width {MAX_UNITARY_WIDTH}, circuit has {}",
            c.width()
        )));
    }
    if c.has_measurements() {
        return Err(Error::Structural(
            "circuit with measurements has no unitary".into(),
        ));
    }
    let mut u = Matrix::identity(1 << c.width());
    for g in c.gates() {
        u = gate_unitary(g, c.width())?.mul(&u);
    }
    Ok(u)
}

/// True iff `a` equals `e^{iφ}·b` within `tol` in max-norm, with φ read off
/// the largest-magnitude entry of `b`.
pub fn equivalent_up_to_global_phase(a: &Matrix, b: &Matrix, tol: f64) -> Result<bool, Error> {
    if a.dim != b.dim {
        return Err(Error::Structural(format!(
            "dimension mismatch: {} vs {}",
            a.dim, b.dim
        )));
    }
    let mut best = 0usize;
    let mut best_norm = 0.0;
    for (i, v) in b.data.iter().enumerate() {
        let nv = v.norm();
        if nv > best_norm {
            best_norm = nv;
            best = i;
        }
    }
    if best_norm == 0.0 {
        return Ok(a.data.iter().all(|v| v.norm() <= tol));
    }
    let ratio = a.data[best] / b.data[best];
    let scale = ratio.norm();
    if scale == 0.0 {
        return Ok(false);
    }
    let phase = ratio / scale;
    let diff = a
        .data
        .iter()
        .zip(&b.data)
        .map(|(x, y)| (x - phase * y).norm())
        .fold(0.0, f64::max);
    Ok(diff <= tol)
}

/// Unitary of the qubit relabelling `l → mapping[l]` (basis state bit `l`
/// moves to bit `mapping[l]`).
pub fn permutation_unitary(mapping: &[usize]) -> Matrix {
    let width = mapping.len();
    let n = 1usize << width;
    let mut out = Matrix::zeros(n);
    for col in 0..n {
        let mut row = 0usize;
        for (l, &p) in mapping.iter().enumerate() {
            if col & (1 << l) != 0 {
                row |= 1 << p;
            }
        }
        out.data[row * n + col] = Complex64::ONE;
    }
    out
}
