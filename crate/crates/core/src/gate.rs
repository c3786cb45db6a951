//! Gate kinds and gate instances.

use crate::error::GateError;

/// The gate vocabulary understood by the toolkit.
///
/// `Cnot` operand order is control, target. `Measure` is a computational-basis
/// measurement, modeled as a one-qubit terminal operation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GateKind {
    H,
    X,
    Y,
    Z,
    S,
    Sdg,
    T,
    Tdg,
    Rx,
    Ry,
    Rz,
    U3,
    Cnot,
    Cz,
    Swap,
    Measure,
}

/// All kinds, in a fixed canonical order.
pub const ALL_KINDS: [GateKind; 16] = [
    GateKind::H,
    GateKind::X,
    GateKind::Y,
    GateKind::Z,
    GateKind::S,
    GateKind::Sdg,
    GateKind::T,
    GateKind::Tdg,
    GateKind::Rx,
    GateKind::Ry,
    GateKind::Rz,
    GateKind::U3,
    GateKind::Cnot,
    GateKind::Cz,
    GateKind::Swap,
    GateKind::Measure,
];

impl GateKind {
    /// Number of qubit operands.
    pub fn arity(self) -> usize {
        match self {
            GateKind::Cnot | GateKind::Cz | GateKind::Swap => 2,
            _ => 1,
        }
    }

    /// Number of angle parameters (radians).
    pub fn param_count(self) -> usize {
        match self {
            GateKind::Rx | GateKind::Ry | GateKind::Rz => 1,
            GateKind::U3 => 3,
            _ => 0,
        }
    }

    /// Whether swapping the two operands leaves the operation unchanged.
    /// Only meaningful for two-qubit kinds.
    pub fn is_symmetric(self) -> bool {
        matches!(self, GateKind::Cz | GateKind::Swap)
    }

    /// Lower-case mnemonic used in the circuit language.
    pub fn mnemonic(self) -> &'static str {
        match self {
            GateKind::H => "h",
            GateKind::X => "x",
            GateKind::Y => "y",
            GateKind::Z => "z",
            GateKind::S => "s",
            GateKind::Sdg => "sdg",
            GateKind::T => "t",
            GateKind::Tdg => "tdg",
            GateKind::Rx => "rx",
            GateKind::Ry => "ry",
            GateKind::Rz => "rz",
            GateKind::U3 => "u3",
            GateKind::Cnot => "cnot",
            GateKind::Cz => "cz",
            GateKind::Swap => "swap",
            GateKind::Measure => "measure",
        }
    }

    /// Case-insensitive mnemonic lookup.
    pub fn from_mnemonic(s: &str) -> Option<GateKind> {
        let lower = s.to_ascii_lowercase();
        ALL_KINDS.iter().copied().find(|k| k.mnemonic() == lower)
    }
}

impl std::fmt::Display for GateKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.mnemonic())
    }
}

/// A single gate application: a kind, its qubit operands and its parameters.
///
/// Operand order is significant: for `Cnot`, operand 0 is the control and
/// operand 1 is the target.
#[derive(Debug, Clone, PartialEq)]
pub struct Gate {
    pub kind: GateKind,
    pub qubits: Vec<usize>,
    pub params: Vec<f64>,
}

impl Gate {
    /// Build a gate, checking operand count, operand distinctness, parameter
    /// count and parameter finiteness.
    pub fn new(kind: GateKind, qubits: Vec<usize>, params: Vec<f64>) -> Result<Gate, GateError> {
        if qubits.len() != kind.arity() {
            return Err(GateError::OperandCount {
                kind,
                expected: kind.arity(),
                got: qubits.len(),
            });
        }
        if kind.arity() == 2 && qubits[0] == qubits[1] {
            return Err(GateError::DuplicateOperand { kind, qubit: qubits[0] });
        }
        if params.len() != kind.param_count() {
            return Err(GateError::ParamCount {
                kind,
                expected: kind.param_count(),
                got: params.len(),
            });
        }
        if params.iter().any(|p| !p.is_finite()) {
            return Err(GateError::NonFiniteParam { kind });
        }
        Ok(Gate { kind, qubits, params })
    }

    pub fn h(q: usize) -> Gate {
        Gate { kind: GateKind::H, qubits: vec![q], params: vec![] }
    }

    pub fn x(q: usize) -> Gate {
        Gate { kind: GateKind::X, qubits: vec![q], params: vec![] }
    }

    pub fn y(q: usize) -> Gate {
        Gate { kind: GateKind::Y, qubits: vec![q], params: vec![] }
    }

    pub fn z(q: usize) -> Gate {
        Gate { kind: GateKind::Z, qubits: vec![q], params: vec![] }
    }

    pub fn t(q: usize) -> Gate {
        Gate { kind: GateKind::T, qubits: vec![q], params: vec![] }
    }

    pub fn rx(q: usize, theta: f64) -> Gate {
        Gate { kind: GateKind::Rx, qubits: vec![q], params: vec![theta] }
    }

    pub fn ry(q: usize, theta: f64) -> Gate {
        Gate { kind: GateKind::Ry, qubits: vec![q], params: vec![theta] }
    }

    pub fn rz(q: usize, theta: f64) -> Gate {
        Gate { kind: GateKind::Rz, qubits: vec![q], params: vec![theta] }
    }

    pub fn u3(q: usize, theta: f64, phi: f64, lambda: f64) -> Gate {
        Gate { kind: GateKind::U3, qubits: vec![q], params: vec![theta, phi, lambda] }
    }

    pub fn cnot(control: usize, target: usize) -> Gate {
        Gate { kind: GateKind::Cnot, qubits: vec![control, target], params: vec![] }
    }

    pub fn cz(a: usize, b: usize) -> Gate {
        Gate { kind: GateKind::Cz, qubits: vec![a, b], params: vec![] }
    }

    pub fn swap(a: usize, b: usize) -> Gate {
        Gate { kind: GateKind::Swap, qubits: vec![a, b], params: vec![] }
    }

    pub fn measure(q: usize) -> Gate {
        Gate { kind: GateKind::Measure, qubits: vec![q], params: vec![] }
    }

    pub fn arity(&self) -> usize {
        self.kind.arity()
    }

    /// True when the other gate drives the same waveform: same kind and
    /// bit-identical parameters.
    pub fn same_waveform(&self, other: &Gate) -> bool {
        self.kind == other.kind && self.params == other.params
    }
}

impl std::fmt::Display for Gate {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.kind)?;
        if !self.params.is_empty() {
            let params: Vec<String> = self.params.iter().map(|p| format!("{p}")).collect();
            write!(f, "({})", params.join(","))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arity_and_params() {
        assert_eq!(GateKind::Cnot.arity(), 2);
        assert_eq!(GateKind::Swap.arity(), 2);
        assert_eq!(GateKind::Cz.arity(), 2);
        assert_eq!(GateKind::H.arity(), 1);
        assert_eq!(GateKind::Measure.arity(), 1);
        assert_eq!(GateKind::Rx.param_count(), 1);
        assert_eq!(GateKind::U3.param_count(), 3);
        assert_eq!(GateKind::Measure.param_count(), 0);
    }

    #[test]
    fn mnemonic_round_trip() {
        for kind in ALL_KINDS {
            assert_eq!(GateKind::from_mnemonic(kind.mnemonic()), Some(kind));
            assert_eq!(GateKind::from_mnemonic(&kind.mnemonic().to_uppercase()), Some(kind));
        }
        assert_eq!(GateKind::from_mnemonic("toffoli"), None);
    }

    #[test]
    fn gate_validation() {
        assert!(Gate::new(GateKind::Cnot, vec![0, 0], vec![]).is_err());
        assert!(Gate::new(GateKind::Cnot, vec![0], vec![]).is_err());
        assert!(Gate::new(GateKind::Rx, vec![0], vec![]).is_err());
        assert!(Gate::new(GateKind::Rx, vec![0], vec![f64::NAN]).is_err());
        assert!(Gate::new(GateKind::Rx, vec![0], vec![1.5]).is_ok());
    }
}
