//! QASM-subset import/export.
//!
//! The subset is a 2.0-style header plus one gate per line over the kinds the
//! IR knows: `h, x, sx, rz, rx, ry, u, cx, cry, cp, rxx, swap, measure`.
//! Parameters print with Rust's shortest round-trip float formatting, so
//! `import(export(c))` is gate-for-gate identical to `c`.

use std::fmt;
use std::fmt::Write as _;

use qae_core::{Circuit, GateInstance, GateKind};

/// Parse failure with its 1-based source line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QasmError {
    pub line: usize,
    pub message: String,
}

impl QasmError {
    fn new(line: usize, message: impl Into<String>) -> Self {
        QasmError {
            line,
            message: message.into(),
        }
    }
}

impl fmt::Display for QasmError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "qasm line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for QasmError {}

/// Renders a circuit in the subset format.
pub fn export(c: &Circuit) -> String {
    let mut out = String::from("OPENQASM 2.0;\n");
    let _ = writeln!(out, "qreg q[{}];", c.width());
    if c.classical_width() > 0 {
        let _ = writeln!(out, "creg c[{}];", c.classical_width());
    }
    for g in c.gates() {
        if g.kind == GateKind::Measure {
            let _ = writeln!(out, "measure q[{}] -> c[{}];", g.qubits[0], g.cbit.unwrap());
            continue;
        }
        out.push_str(g.kind.name());
        if !g.params.is_empty() {
            out.push('(');
            for (i, p) in g.params.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                let _ = write!(out, "{p}");
            }
            out.push(')');
        }
        out.push(' ');
        for (i, q) in g.qubits.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            let _ = write!(out, "q[{q}]");
        }
        out.push_str(";\n");
    }
    out
}

/// Expects `reg[index]` and returns the index.
fn parse_operand(token: &str, reg: &str, line: usize) -> Result<usize, QasmError> {
    let rest = token
        .strip_prefix(reg)
        .ok_or_else(|| QasmError::new(line, format!("expected register '{reg}', got '{token}'")))?;
    let inner = rest
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| QasmError::new(line, format!("malformed operand '{token}'")))?;
    inner
        .parse::<usize>()
        .map_err(|_| QasmError::new(line, format!("invalid index in '{token}'")))
}

/// Expects `decl name[count];` and returns (name, count).
fn parse_register_decl(rest: &str, line: usize) -> Result<(String, usize), QasmError> {
    let body = rest
        .strip_suffix(';')
        .ok_or_else(|| QasmError::new(line, "missing ';'"))?
        .trim();
    let open = body
        .find('[')
        .ok_or_else(|| QasmError::new(line, "missing '[' in register declaration"))?;
    let name = body[..open].trim().to_string();
    let count = body[open + 1..]
        .strip_suffix(']')
        .ok_or_else(|| QasmError::new(line, "missing ']' in register declaration"))?
        .parse::<usize>()
        .map_err(|_| QasmError::new(line, "invalid register size"))?;
    if name.is_empty() {
        return Err(QasmError::new(line, "empty register name"));
    }
    Ok((name, count))
}

/// Parses subset text back into a circuit.
pub fn import(text: &str) -> Result<Circuit, QasmError> {
    let mut saw_version = false;
    let mut qreg: Option<(String, usize)> = None;
    let mut creg: Option<(String, usize)> = None;
    let mut circuit: Option<Circuit> = None;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split("//").next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if !saw_version {
            if line == "OPENQASM 2.0;" {
                saw_version = true;
                continue;
            }
            return Err(QasmError::new(line_no, "expected 'OPENQASM 2.0;' header"));
        }
        if let Some(rest) = line.strip_prefix("qreg ") {
            if qreg.is_some() {
                return Err(QasmError::new(line_no, "duplicate qreg declaration"));
            }
            qreg = Some(parse_register_decl(rest, line_no)?);
            continue;
        }
        if let Some(rest) = line.strip_prefix("creg ") {
            if creg.is_some() {
                return Err(QasmError::new(line_no, "duplicate creg declaration"));
            }
            creg = Some(parse_register_decl(rest, line_no)?);
            continue;
        }

        let (qname, width) = qreg
            .clone()
            .ok_or_else(|| QasmError::new(line_no, "gate before qreg declaration"))?;
        let cwidth = creg.as_ref().map(|(_, n)| *n).unwrap_or(0);
        let circuit = circuit.get_or_insert_with(|| Circuit::new(width, cwidth));

        let body = line
            .strip_suffix(';')
            .ok_or_else(|| QasmError::new(line_no, "missing ';'"))?
            .trim();

        if let Some(rest) = body.strip_prefix("measure ") {
            let cname = creg
                .as_ref()
                .map(|(n, _)| n.clone())
                .ok_or_else(|| QasmError::new(line_no, "measure before creg declaration"))?;
            let (qpart, cpart) = rest
                .split_once("->")
                .ok_or_else(|| QasmError::new(line_no, "measure expects 'q[i] -> c[j]'"))?;
            let q = parse_operand(qpart.trim(), &qname, line_no)?;
            let cbit = parse_operand(cpart.trim(), &cname, line_no)?;
            circuit
                .push(GateInstance::measure(q, cbit))
                .map_err(|e| QasmError::new(line_no, e.to_string()))?;
            continue;
        }

        // `name(params)? operands`
        let (head, operands) = body
            .split_once(char::is_whitespace)
            .ok_or_else(|| QasmError::new(line_no, format!("malformed statement '{body}'")))?;
        let (name, params) = match head.split_once('(') {
            None => (head, Vec::new()),
            Some((name, rest)) => {
                let inner = rest
                    .strip_suffix(')')
                    .ok_or_else(|| QasmError::new(line_no, "missing ')'"))?;
                let params = inner
                    .split(',')
                    .map(|s| {
                        s.trim()
                            .parse::<f64>()
                            .map_err(|_| QasmError::new(line_no, format!("invalid angle '{s}'")))
                    })
                    .collect::<Result<Vec<f64>, QasmError>>()?;
                (name, params)
            }
        };
        let kind = GateKind::from_name(name)
            .ok_or_else(|| QasmError::new(line_no, format!("unknown statement '{name}'")))?;
        let qubits = operands
            .split(',')
            .map(|tok| parse_operand(tok.trim(), &qname, line_no))
            .collect::<Result<Vec<usize>, QasmError>>()?;
        circuit
            .push(GateInstance::new(kind, qubits, params))
            .map_err(|e| QasmError::new(line_no, e.to_string()))?;
    }

    if !saw_version {
        return Err(QasmError::new(1, "empty file"));
    }
    match (circuit, qreg) {
        (Some(c), _) => Ok(c),
        (None, Some((_, width))) => Ok(Circuit::new(width, creg.map(|(_, n)| n).unwrap_or(0))),
        (None, None) => Err(QasmError::new(1, "missing qreg declaration")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use qae_core::qae::{build_qae, QaeProblem};

    #[test]
    fn empty_circuit_round_trips() {
        let c = Circuit::new(3, 0);
        let text = export(&c);
        assert_eq!(text, "OPENQASM 2.0;\nqreg q[3];\n");
        assert_eq!(import(&text).unwrap(), c);
    }

    #[test]
    fn single_cx_round_trips() {
        let mut c = Circuit::new(2, 0);
        c.push(GateInstance::cx(0, 1)).unwrap();
        let text = export(&c);
        assert!(text.contains("cx q[0],q[1];"));
        assert_eq!(import(&text).unwrap(), c);
    }

    #[test]
    fn estimation_circuit_round_trips_exactly() {
        let c = build_qae(&QaeProblem::new(0.2, 3).unwrap());
        let back = import(&export(&c)).unwrap();
        assert_eq!(back, c);
        assert_eq!(back.count_two_qubit_gates(), c.count_two_qubit_gates());
    }

    #[test]
    fn comments_and_blanks_are_ignored() {
        let text = "// leading comment\nOPENQASM 2.0;\n\nqreg q[1]; // inline\n\nh q[0];\n";
        let c = import(text).unwrap();
        assert_eq!(c.len(), 1);
    }

    #[test]
    fn unknown_statement_reports_line() {
        let text = "OPENQASM 2.0;\nqreg q[2];\nccx q[0],q[1];\n";
        let err = import(text).unwrap_err();
        assert_eq!(err.line, 3);
        assert!(err.message.contains("unknown statement"));
    }

    #[test]
    fn bad_header_and_bad_operands() {
        assert_eq!(import("qreg q[2];\n").unwrap_err().line, 1);
        let err = import("OPENQASM 2.0;\nqreg q[2];\nh r[0];\n").unwrap_err();
        assert_eq!(err.line, 3);
        let err = import("OPENQASM 2.0;\nqreg q[2];\ncx q[0],q[5];\n").unwrap_err();
        assert_eq!(err.line, 3);
        let err = import("OPENQASM 2.0;\nqreg q[2];\nrz() q[0];\n").unwrap_err();
        assert_eq!(err.line, 3);
    }

    #[test]
    fn measure_requires_creg() {
        let err = import("OPENQASM 2.0;\nqreg q[2];\nmeasure q[0] -> c[0];\n").unwrap_err();
        assert_eq!(err.line, 3);
        assert!(err.message.contains("creg"));
    }

    #[test]
    fn angles_round_trip_bit_exactly() {
        let mut c = Circuit::new(1, 0);
        c.push(GateInstance::u(
            0.927295218001612,
            -3.004_903_211_5e-7,
            core::f64::consts::PI,
            0,
        ))
        .unwrap();
        let back = import(&export(&c)).unwrap();
        assert_eq!(back.gates()[0].params, c.gates()[0].params);
    }
}
