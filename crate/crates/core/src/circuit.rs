//! Circuit representation and the textual circuit language.
//!
//! The language is line-based: a required `qubits <N>` declaration followed by
//! one gate statement per line. `#` starts a comment. Mnemonics are
//! case-insensitive, qubit operands are written `q<digits>`, and angles accept
//! the named constants `pi`, `pi/2`, `pi/4` and `-pi/2` besides decimal
//! literals.

use crate::error::{CircuitError, ParseError};
use crate::gate::{Gate, GateKind};

/// An ordered gate sequence over `qubit_count` dense qubit indices.
#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    qubit_count: usize,
    gates: Vec<Gate>,
}

impl Circuit {
    /// An empty circuit over `qubit_count` qubits.
    pub fn empty(qubit_count: usize) -> Circuit {
        Circuit { qubit_count, gates: Vec::new() }
    }

    /// Build a circuit, validating operand ranges and measurement terminality:
    /// no gate may act on a qubit after that qubit's `measure`.
    pub fn new(qubit_count: usize, gates: Vec<Gate>) -> Result<Circuit, CircuitError> {
        let mut measured = vec![false; qubit_count];
        for (index, gate) in gates.iter().enumerate() {
            for &q in &gate.qubits {
                if q >= qubit_count {
                    return Err(CircuitError::QubitOutOfRange {
                        index,
                        kind: gate.kind,
                        qubit: q,
                        qubit_count,
                    });
                }
                if measured[q] {
                    return Err(CircuitError::GateAfterMeasure { index, kind: gate.kind, qubit: q });
                }
            }
            if gate.kind == GateKind::Measure {
                measured[gate.qubits[0]] = true;
            }
        }
        Ok(Circuit { qubit_count, gates })
    }

    pub fn qubit_count(&self) -> usize {
        self.qubit_count
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    /// Number of two-qubit gates.
    pub fn two_qubit_gate_count(&self) -> usize {
        self.gates.iter().filter(|g| g.arity() == 2).count()
    }
}

const NAMED_ANGLES: [(&str, f64); 4] = [
    ("pi", std::f64::consts::PI),
    ("pi/2", std::f64::consts::FRAC_PI_2),
    ("pi/4", std::f64::consts::FRAC_PI_4),
    ("-pi/2", -std::f64::consts::FRAC_PI_2),
];

fn parse_angle(token: &str, line: usize) -> Result<f64, ParseError> {
    let lower = token.to_ascii_lowercase();
    if let Some((_, v)) = NAMED_ANGLES.iter().find(|(name, _)| *name == lower) {
        return Ok(*v);
    }
    match token.parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => Err(ParseError::Syntax { line, reason: format!("invalid angle `{token}`") }),
    }
}

fn parse_qubit_ref(token: &str, line: usize) -> Result<usize, ParseError> {
    let rest = token
        .strip_prefix('q')
        .or_else(|| token.strip_prefix('Q'))
        .ok_or_else(|| ParseError::Syntax {
            line,
            reason: format!("expected qubit operand `q<digits>`, got `{token}`"),
        })?;
    if rest.is_empty() || !rest.bytes().all(|b| b.is_ascii_digit()) {
        return Err(ParseError::Syntax {
            line,
            reason: format!("expected qubit operand `q<digits>`, got `{token}`"),
        });
    }
    rest.parse::<usize>().map_err(|_| ParseError::Syntax {
        line,
        reason: format!("qubit index `{token}` out of representable range"),
    })
}

/// Strip a trailing comment and surrounding whitespace.
fn logical_line(raw: &str) -> &str {
    let no_comment = match raw.find('#') {
        Some(pos) => &raw[..pos],
        None => raw,
    };
    no_comment.trim()
}

/// Parse circuit-language source into a [`Circuit`].
pub fn parse_circuit(text: &str) -> Result<Circuit, ParseError> {
    let mut qubit_count: Option<usize> = None;
    let mut gates: Vec<Gate> = Vec::new();
    let mut measured: Vec<bool> = Vec::new();

    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let stmt = logical_line(raw);
        if stmt.is_empty() {
            continue;
        }

        let (head, rest) = match stmt.split_once(char::is_whitespace) {
            Some((h, r)) => (h, r.trim()),
            None => (stmt, ""),
        };
        let head_lower = head.to_ascii_lowercase();

        if head_lower == "qubits" {
            if qubit_count.is_some() {
                return Err(ParseError::Syntax {
                    line,
                    reason: "duplicate `qubits` declaration".to_string(),
                });
            }
            let n = rest.parse::<usize>().map_err(|_| ParseError::Syntax {
                line,
                reason: format!("invalid qubit count `{rest}`"),
            })?;
            qubit_count = Some(n);
            measured = vec![false; n];
            continue;
        }

        let count = match qubit_count {
            Some(n) => n,
            None => return Err(ParseError::MissingQubitsDecl),
        };

        let kind = GateKind::from_mnemonic(&head_lower).ok_or_else(|| ParseError::Syntax {
            line,
            reason: format!("unknown gate `{head}`"),
        })?;

        let tokens: Vec<&str> = if rest.is_empty() {
            Vec::new()
        } else {
            rest.split(',').map(str::trim).collect()
        };
        if tokens.iter().any(|t| t.is_empty()) {
            return Err(ParseError::Syntax { line, reason: "empty operand".to_string() });
        }

        if tokens.len() < kind.arity() {
            return Err(ParseError::Syntax {
                line,
                reason: format!("{kind} expects {} qubit operand(s)", kind.arity()),
            });
        }
        let (qubit_tokens, param_tokens) = tokens.split_at(kind.arity());
        if param_tokens.len() != kind.param_count() {
            return Err(ParseError::ParamArityMismatch { line });
        }

        let mut qubits = Vec::with_capacity(kind.arity());
        for t in qubit_tokens {
            let q = parse_qubit_ref(t, line)?;
            if q >= count {
                return Err(ParseError::QubitOutOfRange { line });
            }
            qubits.push(q);
        }
        if kind.arity() == 2 && qubits[0] == qubits[1] {
            return Err(ParseError::Syntax {
                line,
                reason: format!("{kind} operands must be distinct"),
            });
        }

        let mut params = Vec::with_capacity(kind.param_count());
        for t in param_tokens {
            params.push(parse_angle(t, line)?);
        }

        for &q in &qubits {
            if measured[q] {
                return Err(ParseError::Syntax {
                    line,
                    reason: format!("qubit q{q} already measured"),
                });
            }
        }
        if kind == GateKind::Measure {
            measured[qubits[0]] = true;
        }

        gates.push(Gate { kind, qubits, params });
    }

    match qubit_count {
        Some(n) => Ok(Circuit { qubit_count: n, gates }),
        None => Err(ParseError::MissingQubitsDecl),
    }
}

/// Render an angle with 17 significant digits so re-parsing is exact.
fn format_angle(v: f64) -> String {
    format!("{v:.16e}")
}

/// Print a circuit in the textual language. `parse_circuit` applied to the
/// output reproduces the input circuit exactly, including angles.
pub fn print_circuit(c: &Circuit) -> String {
    let mut out = String::new();
    out.push_str(&format!("qubits {}\n", c.qubit_count));
    for gate in &c.gates {
        out.push_str(gate.kind.mnemonic());
        let mut parts: Vec<String> = gate.qubits.iter().map(|q| format!("q{q}")).collect();
        parts.extend(gate.params.iter().map(|p| format_angle(*p)));
        if !parts.is_empty() {
            out.push(' ');
            out.push_str(&parts.join(", "));
        }
        out.push('\n');
    }
    out
}
