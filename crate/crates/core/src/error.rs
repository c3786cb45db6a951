//! Error types for every stage of the pipeline.

use crate::gate::GateKind;
use thiserror::Error;

/// Errors from constructing a single gate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GateError {
    #[error("{kind} expects {expected} qubit operand(s), got {got}")]
    OperandCount { kind: GateKind, expected: usize, got: usize },
    #[error("{kind} operands must be distinct, got q{qubit} twice")]
    DuplicateOperand { kind: GateKind, qubit: usize },
    #[error("{kind} expects {expected} parameter(s), got {got}")]
    ParamCount { kind: GateKind, expected: usize, got: usize },
    #[error("{kind} parameter is not finite")]
    NonFiniteParam { kind: GateKind },
}

/// Errors from building a circuit out of gates.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum CircuitError {
    #[error("gate #{index} ({kind}) references qubit q{qubit}, but the circuit has {qubit_count} qubits")]
    QubitOutOfRange { index: usize, kind: GateKind, qubit: usize, qubit_count: usize },
    #[error("gate #{index} ({kind}) acts on qubit q{qubit} after its measurement")]
    GateAfterMeasure { index: usize, kind: GateKind, qubit: usize },
    #[error(transparent)]
    Gate(#[from] GateError),
}

/// Errors from parsing circuit-language source text.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseError {
    #[error("line {line}: {reason}")]
    Syntax { line: usize, reason: String },
    #[error("line {line}: qubit index out of range")]
    QubitOutOfRange { line: usize },
    #[error("line {line}: wrong number of parameters")]
    ParamArityMismatch { line: usize },
    #[error("missing `qubits <N>` declaration")]
    MissingQubitsDecl,
}

/// Errors from loading or constructing a device description.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum DeviceError {
    #[error("line {line}: {reason}")]
    Syntax { line: usize, reason: String },
    #[error("coupling graph is not connected")]
    DisconnectedGraph,
    #[error("line {line}: unknown gate kind `{name}`")]
    UnknownGateKind { line: usize, name: String },
    #[error("native gate {kind} has no duration")]
    MissingDuration { kind: GateKind },
    #[error("qubit index {qubit} out of range for {qubit_count} qubits")]
    IndexOutOfRange { qubit: usize, qubit_count: usize },
}

/// Errors from gate decomposition.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum DecomposeError {
    #[error("no rewrite rule expresses {kind} in the native set of device `{device}`")]
    NoRuleAvailable { kind: GateKind, device: String },
    #[error("qubits q{a} and q{b} are not coupled on device `{device}`")]
    NotCoupled { a: usize, b: usize, device: String },
}

/// Errors from placement and routing.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum RouteError {
    #[error("circuit uses {program} program qubits but device `{device}` has {physical}")]
    TooManyQubits { program: usize, physical: usize, device: String },
    #[error("physical qubits {a} and {b} are not coupled")]
    NotCoupled { a: usize, b: usize },
    #[error("exact router limits exceeded: {reason}")]
    ExactLimitExceeded { reason: String },
    #[error("gate #{index} ({kind}) is not native to the device; decompose before routing")]
    NotNative { index: usize, kind: GateKind },
    #[error("routing infeasible: {reason}")]
    Infeasible { reason: String },
    #[error(transparent)]
    Circuit(#[from] CircuitError),
}

/// Errors from scheduling.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ScheduleError {
    #[error("input circuit violates device constraints: {violation}")]
    ConstraintViolation { violation: String },
    #[error("gate #{index} is not in the frontier and cannot be scheduled")]
    NotSchedulable { index: usize },
}

/// Errors from simulation and equivalence checking.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SimError {
    #[error("{count} qubits exceed the simulation cap of {max}")]
    TooManyQubits { count: usize, max: usize },
    #[error("measurement has no unitary matrix")]
    MeasureHasNoUnitary,
}
