//! Gate-level circuit representation.
//!
//! A [`Circuit`] is an ordered list of [`GateInstance`]s over indexed qubits;
//! gate order is program order and is never implicitly reordered. Circuits are
//! immutable once built (construction goes through validating `push` calls)
//! and are the common currency between synthesis, transpilation, routing and
//! simulation.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;

/// The gate vocabulary.
///
/// Parameter and qubit arity are fixed per kind; parameters are angles in
/// radians and live on the [`GateInstance`]. `Rxx` is the XX interaction
/// exp(-i θ/2 X⊗X) (the two-qubit reduction of the Mølmer–Sørensen gate).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GateKind {
    /// Hadamard.
    H,
    /// Pauli X.
    X,
    /// √X.
    Sx,
    /// Rotation about Z by λ.
    Rz,
    /// Rotation about X by θ.
    Rx,
    /// Rotation about Y by θ.
    Ry,
    /// General single-qubit rotation U(θ, φ, λ).
    U,
    /// Controlled X (control, target).
    Cx,
    /// Controlled Y-rotation by θ (control, target).
    Cry,
    /// Controlled phase by λ (control, target).
    Cp,
    /// XX interaction by θ.
    Rxx,
    /// Qubit exchange.
    Swap,
    /// Computational-basis measurement into a classical bit.
    Measure,
}

impl GateKind {
    /// Number of qubit operands.
    pub fn qubit_arity(self) -> usize {
        match self {
            GateKind::H
            | GateKind::X
            | GateKind::Sx
            | GateKind::Rz
            | GateKind::Rx
            | GateKind::Ry
            | GateKind::U
            | GateKind::Measure => 1,
            GateKind::Cx | GateKind::Cry | GateKind::Cp | GateKind::Rxx | GateKind::Swap => 2,
        }
    }

    /// Number of angle parameters.
    pub fn param_arity(self) -> usize {
        match self {
            GateKind::H
            | GateKind::X
            | GateKind::Sx
            | GateKind::Cx
            | GateKind::Swap
            | GateKind::Measure => 0,
            GateKind::Rz
            | GateKind::Rx
            | GateKind::Ry
            | GateKind::Cry
            | GateKind::Cp
            | GateKind::Rxx => 1,
            GateKind::U => 3,
        }
    }

    /// True for kinds acting on two qubits.
    pub fn is_two_qubit(self) -> bool {
        self.qubit_arity() == 2
    }

    /// Lower-case spelling used in text formats.
    pub fn name(self) -> &'static str {
        match self {
            GateKind::H => "h",
            GateKind::X => "x",
            GateKind::Sx => "sx",
            GateKind::Rz => "rz",
            GateKind::Rx => "rx",
            GateKind::Ry => "ry",
            GateKind::U => "u",
            GateKind::Cx => "cx",
            GateKind::Cry => "cry",
            GateKind::Cp => "cp",
            GateKind::Rxx => "rxx",
            GateKind::Swap => "swap",
            GateKind::Measure => "measure",
        }
    }

    /// Inverse of [`GateKind::name`].
    pub fn from_name(name: &str) -> Option<Self> {
        Some(match name {
            "h" => GateKind::H,
            "x" => GateKind::X,
            "sx" => GateKind::Sx,
            "rz" => GateKind::Rz,
            "rx" => GateKind::Rx,
            "ry" => GateKind::Ry,
            "u" => GateKind::U,
            "cx" => GateKind::Cx,
            "cry" => GateKind::Cry,
            "cp" => GateKind::Cp,
            "rxx" => GateKind::Rxx,
            "swap" => GateKind::Swap,
            "measure" => GateKind::Measure,
            _ => return None,
        })
    }
}

/// One gate application: a kind, its qubit operands in order, its parameters,
/// and (for measurements) the destination classical bit.
#[derive(Debug, Clone, PartialEq)]
pub struct GateInstance {
    pub kind: GateKind,
    pub qubits: Vec<usize>,
    pub params: Vec<f64>,
    pub cbit: Option<usize>,
}

impl GateInstance {
    pub fn new(kind: GateKind, qubits: Vec<usize>, params: Vec<f64>) -> Self {
        GateInstance {
            kind,
            qubits,
            params,
            cbit: None,
        }
    }

    pub fn h(q: usize) -> Self {
        Self::new(GateKind::H, vec![q], vec![])
    }

    pub fn x(q: usize) -> Self {
        Self::new(GateKind::X, vec![q], vec![])
    }

    pub fn sx(q: usize) -> Self {
        Self::new(GateKind::Sx, vec![q], vec![])
    }

    pub fn rz(lambda: f64, q: usize) -> Self {
        Self::new(GateKind::Rz, vec![q], vec![lambda])
    }

    pub fn rx(theta: f64, q: usize) -> Self {
        Self::new(GateKind::Rx, vec![q], vec![theta])
    }

    pub fn ry(theta: f64, q: usize) -> Self {
        Self::new(GateKind::Ry, vec![q], vec![theta])
    }

    pub fn u(theta: f64, phi: f64, lambda: f64, q: usize) -> Self {
        Self::new(GateKind::U, vec![q], vec![theta, phi, lambda])
    }

    pub fn cx(control: usize, target: usize) -> Self {
        Self::new(GateKind::Cx, vec![control, target], vec![])
    }

    pub fn cry(theta: f64, control: usize, target: usize) -> Self {
        Self::new(GateKind::Cry, vec![control, target], vec![theta])
    }

    pub fn cp(lambda: f64, control: usize, target: usize) -> Self {
        Self::new(GateKind::Cp, vec![control, target], vec![lambda])
    }

    pub fn rxx(theta: f64, a: usize, b: usize) -> Self {
        Self::new(GateKind::Rxx, vec![a, b], vec![theta])
    }

    pub fn swap(a: usize, b: usize) -> Self {
        Self::new(GateKind::Swap, vec![a, b], vec![])
    }

    pub fn measure(q: usize, cbit: usize) -> Self {
        GateInstance {
            kind: GateKind::Measure,
            qubits: vec![q],
            params: vec![],
            cbit: Some(cbit),
        }
    }

    /// Checks arity, index bounds, operand distinctness and parameter
    /// finiteness against a circuit of the given widths.
    pub fn validate(&self, width: usize, classical_width: usize) -> Result<(), Error> {
        if self.qubits.len() != self.kind.qubit_arity() {
            return Err(Error::Structural(format!(
                "{} expects {} qubit(s), got {}",
                self.kind.name(),
                self.kind.qubit_arity(),
                self.qubits.len()
            )));
        }
        if self.params.len() != self.kind.param_arity() {
            return Err(Error::Structural(format!(
                "{} expects {} parameter(s), got {}",
                self.kind.name(),
                self.kind.param_arity(),
                self.params.len()
            )));
        }
        for &q in &self.qubits {
            if q >= width {
                return Err(Error::Structural(format!(
                    "qubit index {q} out of range for width {width}"
                )));
            }
        }
        if self.qubits.len() == 2 && self.qubits[0] == self.qubits[1] {
            return Err(Error::Structural(format!(
                "{} operands must be distinct, got qubit {} twice",
                self.kind.name(),
                self.qubits[0]
            )));
        }
        for &p in &self.params {
            if !p.is_finite() {
                return Err(Error::Structural(format!(
                    "non-finite parameter {p} on {}",
                    self.kind.name()
                )));
            }
        }
        match (self.kind, self.cbit) {
            (GateKind::Measure, Some(c)) if c >= classical_width => {
                return Err(Error::Structural(format!(
                    "classical bit {c} out of range for classical width {classical_width}"
                )))
            }
            (GateKind::Measure, None) => {
                return Err(Error::Structural("measure without classical bit".into()))
            }
            (k, Some(_)) if k != GateKind::Measure => {
                return Err(Error::Structural(format!(
                    "classical bit on non-measure gate {}",
                    k.name()
                )))
            }
            _ => {}
        }
        Ok(())
    }
}

/// Ordered gate sequence over `width` qubits and `classical_width` bits.
#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    width: usize,
    classical_width: usize,
    gates: Vec<GateInstance>,
}

impl Circuit {
    pub fn new(width: usize, classical_width: usize) -> Self {
        Circuit {
            width,
            classical_width,
            gates: Vec::new(),
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn classical_width(&self) -> usize {
        self.classical_width
    }

    pub fn gates(&self) -> &[GateInstance] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    /// Appends a gate after validating it against this circuit's widths.
    pub fn push(&mut self, gate: GateInstance) -> Result<(), Error> {
        gate.validate(self.width, self.classical_width)?;
        self.gates.push(gate);
        Ok(())
    }

    /// Appends all gates of `other`; `other` must fit within this circuit's
    /// widths.
    pub fn append(&mut self, other: &Circuit) -> Result<(), Error> {
        if other.width > self.width || other.classical_width > self.classical_width {
            return Err(Error::Structural(format!(
                "cannot append circuit of width {}/{} bits into {}/{}",
                other.width, other.classical_width, self.width, self.classical_width
            )));
        }
        for g in &other.gates {
            self.gates.push(g.clone());
        }
        Ok(())
    }

    /// Number of instances whose kind acts on two qubits. Measurements and
    /// single-qubit gates do not count; each two-qubit instance counts once
    /// regardless of kind, so the meaningful figure for hardware cost is the
    /// count *after* transpilation to a native set.
    pub fn count_two_qubit_gates(&self) -> usize {
        self.gates.iter().filter(|g| g.kind.is_two_qubit()).count()
    }

    pub fn has_measurements(&self) -> bool {
        self.gates.iter().any(|g| g.kind == GateKind::Measure)
    }

    /// Copy of this circuit with measurement instances removed.
    pub fn without_measurements(&self) -> Circuit {
        Circuit {
            width: self.width,
            classical_width: self.classical_width,
            gates: self
                .gates
                .iter()
                .filter(|g| g.kind != GateKind::Measure)
                .cloned()
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn push_validates_indices() {
        let mut c = Circuit::new(2, 0);
        assert!(c.push(GateInstance::h(0)).is_ok());
        assert!(matches!(
            c.push(GateInstance::h(2)),
            Err(Error::Structural(_))
        ));
        assert!(matches!(
            c.push(GateInstance::cx(1, 1)),
            Err(Error::Structural(_))
        ));
    }

    #[test]
    fn push_rejects_non_finite_params() {
        let mut c = Circuit::new(1, 0);
        assert!(matches!(
            c.push(GateInstance::rz(f64::NAN, 0)),
            Err(Error::Structural(_))
        ));
        assert!(matches!(
            c.push(GateInstance::ry(f64::INFINITY, 0)),
            Err(Error::Structural(_))
        ));
    }

    #[test]
    fn measure_needs_classical_bit_in_range() {
        let mut c = Circuit::new(2, 1);
        assert!(c.push(GateInstance::measure(0, 0)).is_ok());
        assert!(matches!(
            c.push(GateInstance::measure(1, 1)),
            Err(Error::Structural(_))
        ));
    }

    #[test]
    fn two_qubit_census_counts_each_kind_once() {
        let mut c = Circuit::new(3, 0);
        for q in 0..3 {
            c.push(GateInstance::h(q)).unwrap();
        }
        assert_eq!(c.count_two_qubit_gates(), 0);
        c.push(GateInstance::cx(0, 1)).unwrap();
        c.push(GateInstance::cry(0.3, 1, 2)).unwrap();
        c.push(GateInstance::cp(0.5, 0, 2)).unwrap();
        c.push(GateInstance::rxx(1.0, 0, 1)).unwrap();
        c.push(GateInstance::swap(1, 2)).unwrap();
        assert_eq!(c.count_two_qubit_gates(), 5);
    }

    #[test]
    fn census_additive_under_append() {
        let mut a = Circuit::new(2, 0);
        a.push(GateInstance::cx(0, 1)).unwrap();
        let mut b = Circuit::new(2, 0);
        b.push(GateInstance::swap(0, 1)).unwrap();
        b.push(GateInstance::h(0)).unwrap();
        let (ca, cb) = (a.count_two_qubit_gates(), b.count_two_qubit_gates());
        a.append(&b).unwrap();
        assert_eq!(a.count_two_qubit_gates(), ca + cb);
    }

    #[test]
    fn strip_measurements() {
        let mut c = Circuit::new(1, 1);
        c.push(GateInstance::h(0)).unwrap();
        c.push(GateInstance::measure(0, 0)).unwrap();
        assert!(c.has_measurements());
        let stripped = c.without_measurements();
        assert!(!stripped.has_measurements());
        assert_eq!(stripped.len(), 1);
    }

    #[test]
    fn gate_names_round_trip() {
        for kind in [
            GateKind::H,
            GateKind::X,
            GateKind::Sx,
            GateKind::Rz,
            GateKind::Rx,
            GateKind::Ry,
            GateKind::U,
            GateKind::Cx,
            GateKind::Cry,
            GateKind::Cp,
            GateKind::Rxx,
            GateKind::Swap,
            GateKind::Measure,
        ] {
            assert_eq!(GateKind::from_name(kind.name()), Some(kind));
        }
        assert_eq!(GateKind::from_name("ccx"), None);
    }
}
