//! Device-constraint checking for circuits over physical qubits.

use crate::circuit::Circuit;
use crate::device::{Coupling, Device};
use crate::gate::GateKind;

/// Constraint violation categories.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ViolationKind {
    /// Two-qubit gate on a non-coupled pair.
    NotCoupled,
    /// Directed two-qubit gate against the allowed edge direction.
    Orientation,
    /// Gate kind outside the native set of its operand qubits.
    NonNative,
    /// Operand index beyond the device's qubit count.
    QubitRange,
    /// Gate acting on a qubit after its measurement.
    UseAfterMeasure,
    /// Measurement on a qubit the device cannot read out.
    NotMeasurable,
}

impl ViolationKind {
    pub fn label(self) -> &'static str {
        match self {
            ViolationKind::NotCoupled => "not-coupled",
            ViolationKind::Orientation => "orientation",
            ViolationKind::NonNative => "non-native",
            ViolationKind::QubitRange => "qubit-range",
            ViolationKind::UseAfterMeasure => "use-after-measure",
            ViolationKind::NotMeasurable => "not-measurable",
        }
    }
}

/// One constraint violation, tied to a gate index in the checked circuit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub kind: ViolationKind,
    pub gate_index: usize,
    pub qubits: Vec<usize>,
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let qs: Vec<String> = self.qubits.iter().map(|q| q.to_string()).collect();
        write!(
            f,
            "violation {} gate#{} qubits {}",
            self.kind.label(),
            self.gate_index,
            qs.join(",")
        )
    }
}

/// Check a circuit over physical qubits against every device constraint.
/// Returns one record per violation; an executable circuit yields none.
pub fn check_constraints(circuit: &Circuit, device: &Device) -> Vec<Violation> {
    check_gate_sequence(circuit.gates(), device)
}

/// Same as [`check_constraints`] for a raw gate sequence, which unlike a
/// validated [`Circuit`] may still contain gates on already-measured qubits.
pub fn check_gate_sequence(gates: &[crate::gate::Gate], device: &Device) -> Vec<Violation> {
    let mut violations = Vec::new();
    let n = device.qubit_count();
    let mut measured = vec![false; n];

    for (index, gate) in gates.iter().enumerate() {
        if let Some(&q) = gate.qubits.iter().find(|&&q| q >= n) {
            violations.push(Violation {
                kind: ViolationKind::QubitRange,
                gate_index: index,
                qubits: vec![q],
            });
            continue;
        }

        for &q in &gate.qubits {
            if measured[q] {
                violations.push(Violation {
                    kind: ViolationKind::UseAfterMeasure,
                    gate_index: index,
                    qubits: vec![q],
                });
            }
        }

        match gate.kind {
            GateKind::Measure => {
                let q = gate.qubits[0];
                if !device.is_measurable(q) {
                    violations.push(Violation {
                        kind: ViolationKind::NotMeasurable,
                        gate_index: index,
                        qubits: vec![q],
                    });
                }
                measured[q] = true;
            }
            kind if kind.arity() == 2 => {
                let (a, b) = (gate.qubits[0], gate.qubits[1]);
                match device.native_2q() {
                    Some((native, symmetric)) if native == kind => {
                        match device.are_coupled(a, b).expect("operands in range") {
                            Coupling::No => violations.push(Violation {
                                kind: ViolationKind::NotCoupled,
                                gate_index: index,
                                qubits: vec![a, b],
                            }),
                            Coupling::ReverseOnly if !symmetric && !kind.is_symmetric() => {
                                violations.push(Violation {
                                    kind: ViolationKind::Orientation,
                                    gate_index: index,
                                    qubits: vec![a, b],
                                })
                            }
                            _ => {}
                        }
                    }
                    _ => {
                        violations.push(Violation {
                            kind: ViolationKind::NonNative,
                            gate_index: index,
                            qubits: gate.qubits.clone(),
                        });
                        // still flag impossible couplings for context
                        if device.are_coupled(a, b).expect("operands in range") == Coupling::No {
                            violations.push(Violation {
                                kind: ViolationKind::NotCoupled,
                                gate_index: index,
                                qubits: vec![a, b],
                            });
                        }
                    }
                }
            }
            kind => {
                let q = gate.qubits[0];
                if !device.native_1q(q).contains(&kind) {
                    violations.push(Violation {
                        kind: ViolationKind::NonNative,
                        gate_index: index,
                        qubits: vec![q],
                    });
                }
            }
        }
    }
    violations
}
