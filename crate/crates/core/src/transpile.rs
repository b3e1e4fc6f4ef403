//! Lowering of IR circuits to device-native gate sets.
//!
//! Two targets are supported: the superconducting set {CX, RZ, SX, X} and the
//! ion-trap set {RX, RY, RZ, RXX}. Controlled rotations go through the fixed
//! two-qubit templates below; remaining single-qubit gates are rewritten by
//! ZYZ angle extraction. Intentionally no peephole optimisation afterwards:
//! the two-qubit census of the output is the structural count of the
//! templates, which is the quantity under study.

use alloc::borrow::ToOwned;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

use crate::circuit::{Circuit, GateInstance, GateKind};
use crate::error::Error;
use crate::unitary::single_qubit_matrix;

/// A transpilation target: a set of single-qubit kinds plus exactly one
/// two-qubit entangler (CX or RXX).
#[derive(Debug, Clone, PartialEq)]
pub struct NativeGateSet {
    name: String,
    single_qubit_kinds: Vec<GateKind>,
    two_qubit_kind: GateKind,
}

impl NativeGateSet {
    /// IBM-style superconducting basis {CX, RZ, SX, X}.
    pub fn superconducting() -> Self {
        NativeGateSet {
            name: "superconducting".to_owned(),
            single_qubit_kinds: vec![GateKind::Rz, GateKind::Sx, GateKind::X],
            two_qubit_kind: GateKind::Cx,
        }
    }

    /// Trapped-ion basis {RX, RY, RZ, RXX}.
    pub fn iontrap() -> Self {
        NativeGateSet {
            name: "iontrap".to_owned(),
            single_qubit_kinds: vec![GateKind::Rx, GateKind::Ry, GateKind::Rz],
            two_qubit_kind: GateKind::Rxx,
        }
    }

    pub fn by_name(name: &str) -> Result<Self, Error> {
        match name {
            "superconducting" => Ok(Self::superconducting()),
            "iontrap" => Ok(Self::iontrap()),
            other => Err(Error::Lookup(format!(
                "unknown native gate set '{other}' (expected superconducting or iontrap)"
            ))),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn two_qubit_kind(&self) -> GateKind {
        self.two_qubit_kind
    }

    pub fn single_qubit_kinds(&self) -> &[GateKind] {
        &self.single_qubit_kinds
    }

    fn is_native_single(&self, kind: GateKind) -> bool {
        self.single_qubit_kinds.contains(&kind)
    }
}

/// CRY(θ) over {CX, U}: conditional Y-rotation split into ±θ/2 halves
/// conjugated by CX, two entanglers total.
pub fn decompose_cry_superconducting(
    theta: f64,
    control: usize,
    target: usize,
) -> Vec<GateInstance> {
    vec![
        GateInstance::u(theta / 2.0, 0.0, 0.0, target),
        GateInstance::cx(control, target),
        GateInstance::u(-theta / 2.0, 0.0, 0.0, target),
        GateInstance::cx(control, target),
    ]
}

/// CRY(θ) over {RXX, U}: one XX interaction conjugated into the Z⊗Y frame,
/// with the unconditional θ/2 target rotation folded into the closing
/// bracket, U(θ/2+π/2, 0, π/2).
pub fn decompose_cry_iontrap(theta: f64, control: usize, target: usize) -> Vec<GateInstance> {
    vec![
        GateInstance::u(PI / 2.0, 0.0, PI, control),
        GateInstance::u(PI / 2.0, PI / 2.0, -PI, target),
        GateInstance::rxx(-theta / 2.0, control, target),
        GateInstance::u(PI / 2.0, 0.0, PI, control),
        GateInstance::u(theta / 2.0 + PI / 2.0, 0.0, PI / 2.0, target),
    ]
}

/// CX over {RXX, U}: a single XX(π/2) interaction between fixed brackets.
pub fn decompose_cx_iontrap(control: usize, target: usize) -> Vec<GateInstance> {
    vec![
        GateInstance::u(PI / 2.0, 0.0, 0.0, control),
        GateInstance::rxx(PI / 2.0, control, target),
        GateInstance::u(PI / 2.0, PI / 2.0, -PI, control),
        GateInstance::u(-PI / 2.0, -PI / 2.0, PI / 2.0, target),
    ]
}

/// CP(λ) over {CX, RZ}: two entanglers with λ/2 phase corrections.
fn decompose_cp(lambda: f64, control: usize, target: usize) -> Vec<GateInstance> {
    vec![
        GateInstance::rz(lambda / 2.0, control),
        GateInstance::cx(control, target),
        GateInstance::rz(-lambda / 2.0, target),
        GateInstance::cx(control, target),
        GateInstance::rz(lambda / 2.0, target),
    ]
}

/// SWAP as three alternating CX gates.
fn decompose_swap(a: usize, b: usize) -> Vec<GateInstance> {
    vec![
        GateInstance::cx(a, b),
        GateInstance::cx(b, a),
        GateInstance::cx(a, b),
    ]
}

/// RXX(θ) over {CX, RZ, H}: Hadamard conjugation into the Z⊗Z frame.
fn decompose_rxx_superconducting(theta: f64, a: usize, b: usize) -> Vec<GateInstance> {
    vec![
        GateInstance::h(a),
        GateInstance::h(b),
        GateInstance::cx(a, b),
        GateInstance::rz(theta, b),
        GateInstance::cx(a, b),
        GateInstance::h(a),
        GateInstance::h(b),
    ]
}

/// ZYZ angles (θ, φ, λ) with `m` equal to U(θ, φ, λ) up to global phase.
pub(crate) fn zyz_angles(m: &[[Complex64; 2]; 2]) -> (f64, f64, f64) {
    let theta = 2.0 * libm::atan2(m[1][0].norm(), m[0][0].norm());
    let eps = 1e-12;
    if m[1][0].norm() <= eps {
        // Diagonal: only the phase difference is observable.
        (0.0, 0.0, (m[1][1] / m[0][0]).arg())
    } else if m[0][0].norm() <= eps {
        // Anti-diagonal.
        let alpha = m[1][0].arg();
        (PI, 0.0, (-m[0][1]).arg() - alpha)
    } else {
        let alpha = m[0][0].arg();
        let phi = m[1][0].arg() - alpha;
        let lambda = (-m[0][1]).arg() - alpha;
        (theta, phi, lambda)
    }
}

/// Rewrites one single-qubit gate into the target's native rotations,
/// correct up to global phase.
fn rewrite_single(g: &GateInstance, target: &NativeGateSet, out: &mut Vec<GateInstance>) {
    if target.is_native_single(g.kind) {
        out.push(g.clone());
        return;
    }
    let q = g.qubits[0];
    let (theta, phi, lambda) = zyz_angles(&single_qubit_matrix(g.kind, &g.params));
    match target.two_qubit_kind {
        // {RX, RY, RZ}: the ZYZ factors are native as-is.
        GateKind::Rxx => {
            if lambda != 0.0 {
                out.push(GateInstance::rz(lambda, q));
            }
            if theta != 0.0 {
                out.push(GateInstance::ry(theta, q));
            }
            if phi != 0.0 {
                out.push(GateInstance::rz(phi, q));
            }
        }
        // {RZ, SX, X}: RY(θ) = RZ(π)·SX·RZ(θ+π)·SX·RZ(π)·(phase), folded
        // with the outer Z-rotations into three RZ and two SX.
        _ => {
            out.push(GateInstance::rz(lambda, q));
            out.push(GateInstance::sx(q));
            out.push(GateInstance::rz(theta + PI, q));
            out.push(GateInstance::sx(q));
            out.push(GateInstance::rz(phi + PI, q));
        }
    }
}

/// Lowers every gate of `c` to the target's native kinds. Output is
/// phase-equivalent to the input; measurements pass through untouched.
pub fn transpile(c: &Circuit, target: &NativeGateSet) -> Circuit {
    // Stage 1: reduce all two-qubit kinds to sequences over the target's
    // entangler plus arbitrary single-qubit gates.
    let mut staged: Vec<GateInstance> = Vec::with_capacity(c.len());
    for g in c.gates() {
        match g.kind {
            GateKind::Cry => {
                let (ct, tg) = (g.qubits[0], g.qubits[1]);
                if target.two_qubit_kind == GateKind::Rxx {
                    staged.extend(decompose_cry_iontrap(g.params[0], ct, tg));
                } else {
                    staged.extend(decompose_cry_superconducting(g.params[0], ct, tg));
                }
            }
            GateKind::Cp => staged.extend(decompose_cp(g.params[0], g.qubits[0], g.qubits[1])),
            GateKind::Swap => staged.extend(decompose_swap(g.qubits[0], g.qubits[1])),
            GateKind::Rxx if target.two_qubit_kind == GateKind::Cx => staged.extend(
                decompose_rxx_superconducting(g.params[0], g.qubits[0], g.qubits[1]),
            ),
            _ => staged.push(g.clone()),
        }
    }
    // Stage 2: on the ion-trap target every CX (incoming or produced by the
    // CP/SWAP templates) becomes one XX interaction.
    if target.two_qubit_kind == GateKind::Rxx {
        let mut lowered = Vec::with_capacity(staged.len());
        for g in staged {
            if g.kind == GateKind::Cx {
                lowered.extend(decompose_cx_iontrap(g.qubits[0], g.qubits[1]));
            } else {
                lowered.push(g);
            }
        }
        staged = lowered;
    }
    // Stage 3: single-qubit rewrite.
    let mut out = Circuit::new(c.width(), c.classical_width());
    for g in &staged {
        match g.kind.qubit_arity() {
            1 if g.kind != GateKind::Measure => {
                let mut seq = Vec::new();
                rewrite_single(g, target, &mut seq);
                for ng in seq {
                    out.push(ng).expect("rewritten gate is valid");
                }
            }
            _ => out.push(g.clone()).expect("staged gate is valid"),
        }
    }
    out
}
