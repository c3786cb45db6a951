//! Gate decomposition into device-native gate sets.
//!
//! Rewrite rules are data: each maps a gate kind to a template sequence over
//! the same operands, flagged as exact or correct up to a global phase. The
//! shipped table is checked against the unitary oracle the first time it is
//! used; [`RuleTable::validate`] re-runs that check on demand.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};
use std::sync::OnceLock;

use crate::circuit::Circuit;
use crate::device::{Coupling, Device};
use crate::error::DecomposeError;
use crate::gate::{Gate, GateKind};
use crate::unitary::{compose_sequence, gate_unitary};

/// Parameter of a template gate: a constant angle or a source parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ParamExpr {
    Const(f64),
    Source(usize),
}

/// One gate of a rewrite template. `operands` are indices into the source
/// gate's operand list.
#[derive(Debug, Clone, PartialEq)]
pub struct GateTemplate {
    pub kind: GateKind,
    pub operands: Vec<usize>,
    pub params: Vec<ParamExpr>,
}

impl GateTemplate {
    fn new(kind: GateKind, operands: &[usize], params: &[ParamExpr]) -> GateTemplate {
        GateTemplate { kind, operands: operands.to_vec(), params: params.to_vec() }
    }

    fn instantiate(&self, qubits: &[usize], source_params: &[f64]) -> Gate {
        Gate {
            kind: self.kind,
            qubits: self.operands.iter().map(|&i| qubits[i]).collect(),
            params: self
                .params
                .iter()
                .map(|p| match p {
                    ParamExpr::Const(v) => *v,
                    ParamExpr::Source(i) => source_params[*i],
                })
                .collect(),
        }
    }
}

/// A rewrite of one gate kind into an equivalent template sequence.
#[derive(Debug, Clone, PartialEq)]
pub struct RewriteRule {
    pub source: GateKind,
    pub target: Vec<GateTemplate>,
    /// True when the composed unitary equals the source exactly; false when
    /// they differ by a global phase.
    pub exact: bool,
}

impl RewriteRule {
    pub fn instantiate(&self, qubits: &[usize], params: &[f64]) -> Vec<Gate> {
        self.target.iter().map(|t| t.instantiate(qubits, params)).collect()
    }
}

/// Ordered rule collection; earlier rules for a kind are preferred.
#[derive(Debug, Clone)]
pub struct RuleTable {
    rules: Vec<RewriteRule>,
}

const RULE_TOLERANCE: f64 = 1e-12;

impl RuleTable {
    /// The validated shipped rule table.
    pub fn shipped() -> &'static RuleTable {
        static TABLE: OnceLock<RuleTable> = OnceLock::new();
        TABLE.get_or_init(|| {
            let table = RuleTable::build_shipped();
            table.validate().expect("shipped rule table failed oracle validation");
            table
        })
    }

    pub fn rules(&self) -> &[RewriteRule] {
        &self.rules
    }

    pub fn rules_for(&self, kind: GateKind) -> impl Iterator<Item = &RewriteRule> {
        self.rules.iter().filter(move |r| r.source == kind)
    }

    /// Check every rule against the unitary oracle: the composed target must
    /// match the source within `1e-12` after optimal global-phase alignment,
    /// and exactly when the rule claims exactness. Parameterized rules are
    /// sampled over several angles.
    pub fn validate(&self) -> Result<(), String> {
        for rule in &self.rules {
            for params in sample_params(rule.source.param_count()) {
                let arity = rule.source.arity();
                let operands: Vec<usize> = (0..arity).collect();
                let source = Gate {
                    kind: rule.source,
                    qubits: operands.clone(),
                    params: params.clone(),
                };
                let want = gate_unitary(&source)
                    .map_err(|e| format!("rule source {}: {e}", rule.source))?;
                let got = compose_sequence(&rule.instantiate(&operands, &params), arity)
                    .map_err(|e| format!("rule for {}: {e}", rule.source))?;
                let aligned = got.phase_aligned_distance(&want);
                if aligned >= RULE_TOLERANCE {
                    return Err(format!(
                        "rule for {} off by {aligned:.3e} after phase alignment (params {params:?})",
                        rule.source
                    ));
                }
                if rule.exact {
                    let raw = got.max_norm_diff(&want);
                    if raw >= RULE_TOLERANCE {
                        return Err(format!(
                            "rule for {} claims exactness but differs by {raw:.3e}",
                            rule.source
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    fn build_shipped() -> RuleTable {
        use GateKind::*;
        use ParamExpr::{Const, Source};
        let q0: &[usize] = &[0];
        let mut rules = Vec::new();
        let mut rule = |source: GateKind, exact: bool, target: Vec<GateTemplate>| {
            rules.push(RewriteRule { source, target, exact });
        };

        // Euler-family targets (u3-native devices).
        rule(H, false, vec![GateTemplate::new(U3, q0, &[Const(FRAC_PI_2), Const(0.0), Const(PI)])]);
        rule(X, false, vec![GateTemplate::new(U3, q0, &[Const(PI), Const(0.0), Const(PI)])]);
        rule(Y, false, vec![GateTemplate::new(U3, q0, &[Const(PI), Const(FRAC_PI_2), Const(FRAC_PI_2)])]);
        rule(Z, false, vec![GateTemplate::new(U3, q0, &[Const(0.0), Const(0.0), Const(PI)])]);
        rule(S, false, vec![GateTemplate::new(U3, q0, &[Const(0.0), Const(0.0), Const(FRAC_PI_2)])]);
        rule(Sdg, false, vec![GateTemplate::new(U3, q0, &[Const(0.0), Const(0.0), Const(-FRAC_PI_2)])]);
        rule(T, false, vec![GateTemplate::new(U3, q0, &[Const(0.0), Const(0.0), Const(FRAC_PI_4)])]);
        rule(Tdg, false, vec![GateTemplate::new(U3, q0, &[Const(0.0), Const(0.0), Const(-FRAC_PI_4)])]);
        rule(Rx, true, vec![GateTemplate::new(U3, q0, &[Source(0), Const(-FRAC_PI_2), Const(FRAC_PI_2)])]);
        rule(Ry, true, vec![GateTemplate::new(U3, q0, &[Source(0), Const(0.0), Const(0.0)])]);
        rule(Rz, true, vec![GateTemplate::new(U3, q0, &[Const(0.0), Const(0.0), Source(0)])]);

        // Axis-rotation targets (rx/ry-native devices).
        rule(H, false, vec![
            GateTemplate::new(Ry, q0, &[Const(FRAC_PI_2)]),
            GateTemplate::new(Rx, q0, &[Const(PI)]),
        ]);
        rule(X, false, vec![GateTemplate::new(Rx, q0, &[Const(PI)])]);
        rule(Y, false, vec![GateTemplate::new(Ry, q0, &[Const(PI)])]);
        rule(Z, false, vec![
            GateTemplate::new(Ry, q0, &[Const(PI)]),
            GateTemplate::new(Rx, q0, &[Const(PI)]),
        ]);
        let rz_chain = |angle: ParamExpr| {
            vec![
                GateTemplate::new(Rx, q0, &[Const(-FRAC_PI_2)]),
                GateTemplate::new(Ry, q0, &[angle]),
                GateTemplate::new(Rx, q0, &[Const(FRAC_PI_2)]),
            ]
        };
        rule(S, false, rz_chain(Const(FRAC_PI_2)));
        rule(Sdg, false, rz_chain(Const(-FRAC_PI_2)));
        rule(T, false, rz_chain(Const(FRAC_PI_4)));
        rule(Tdg, false, rz_chain(Const(-FRAC_PI_4)));
        rule(Rz, true, rz_chain(Source(0)));
        rule(U3, true, vec![
            GateTemplate::new(Rx, q0, &[Const(-FRAC_PI_2)]),
            GateTemplate::new(Ry, q0, &[Source(2)]),
            GateTemplate::new(Rx, q0, &[Const(FRAC_PI_2)]),
            GateTemplate::new(Ry, q0, &[Source(0)]),
            GateTemplate::new(Rx, q0, &[Const(-FRAC_PI_2)]),
            GateTemplate::new(Ry, q0, &[Source(1)]),
            GateTemplate::new(Rx, q0, &[Const(FRAC_PI_2)]),
        ]);

        // Two-qubit interchange rules.
        rule(Cnot, true, vec![
            GateTemplate::new(Ry, &[1], &[Const(-FRAC_PI_2)]),
            GateTemplate::new(Cz, &[0, 1], &[]),
            GateTemplate::new(Ry, &[1], &[Const(FRAC_PI_2)]),
        ]);
        rule(Cz, true, vec![
            GateTemplate::new(H, &[1], &[]),
            GateTemplate::new(Cnot, &[0, 1], &[]),
            GateTemplate::new(H, &[1], &[]),
        ]);
        rule(Swap, true, vec![
            GateTemplate::new(Cnot, &[0, 1], &[]),
            GateTemplate::new(Cnot, &[1, 0], &[]),
            GateTemplate::new(Cnot, &[0, 1], &[]),
        ]);
        // The swap sequence for conditional-phase devices: three cz gates
        // interleaved with y rotations on the alternating target.
        rule(Swap, true, vec![
            GateTemplate::new(Ry, &[1], &[Const(-FRAC_PI_2)]),
            GateTemplate::new(Cz, &[0, 1], &[]),
            GateTemplate::new(Ry, &[1], &[Const(FRAC_PI_2)]),
            GateTemplate::new(Ry, &[0], &[Const(-FRAC_PI_2)]),
            GateTemplate::new(Cz, &[1, 0], &[]),
            GateTemplate::new(Ry, &[0], &[Const(FRAC_PI_2)]),
            GateTemplate::new(Ry, &[1], &[Const(-FRAC_PI_2)]),
            GateTemplate::new(Cz, &[0, 1], &[]),
            GateTemplate::new(Ry, &[1], &[Const(FRAC_PI_2)]),
        ]);

        RuleTable { rules }
    }
}

fn sample_params(count: usize) -> Vec<Vec<f64>> {
    match count {
        0 => vec![vec![]],
        1 => vec![vec![0.0], vec![0.37], vec![-1.2], vec![PI], vec![2.6]],
        3 => vec![
            vec![0.0, 0.0, 0.0],
            vec![FRAC_PI_2, 0.0, PI],
            vec![0.4, -1.3, 2.2],
            vec![-2.0, 0.9, -0.1],
        ],
        _ => unreachable!("no gate has {count} parameters"),
    }
}

const MAX_REWRITE_DEPTH: usize = 4;

/// Rewrite one gate into the device's native set. Measurements pass through
/// untouched; their placement on measurable qubits is the constraint
/// checker's concern.
pub fn decompose_gate(gate: &Gate, device: &Device) -> Result<Vec<Gate>, DecomposeError> {
    if gate.kind == GateKind::Measure {
        return Ok(vec![gate.clone()]);
    }
    rewrite(gate, device, MAX_REWRITE_DEPTH)
}

fn rewrite(gate: &Gate, device: &Device, depth: usize) -> Result<Vec<Gate>, DecomposeError> {
    if device.is_native(gate) {
        return Ok(vec![gate.clone()]);
    }
    if depth == 0 {
        return Err(DecomposeError::NoRuleAvailable {
            kind: gate.kind,
            device: device.name().to_string(),
        });
    }
    // First pass: a rule whose expansion is native as-is. Second pass:
    // recursive rewriting of helper gates (e.g. the hadamards a cz rule
    // introduces on a u3 device).
    for direct_only in [true, false] {
        'candidates: for rule in RuleTable::shipped().rules_for(gate.kind) {
            let expansion = rule.instantiate(&gate.qubits, &gate.params);
            if direct_only && !expansion.iter().all(|g| device.is_native(g)) {
                continue;
            }
            let mut out = Vec::new();
            for g in &expansion {
                match rewrite(g, device, depth - 1) {
                    Ok(native) => out.extend(native),
                    Err(_) => continue 'candidates,
                }
            }
            return Ok(out);
        }
    }
    Err(DecomposeError::NoRuleAvailable {
        kind: gate.kind,
        device: device.name().to_string(),
    })
}

/// Rewrite every gate of a circuit into the device's native set. Idempotent:
/// native gates pass through unchanged.
pub fn decompose_to_native(circuit: &Circuit, device: &Device) -> Result<Circuit, DecomposeError> {
    let mut gates = Vec::with_capacity(circuit.len());
    for gate in circuit.gates() {
        gates.extend(decompose_gate(gate, device)?);
    }
    Ok(Circuit::new(circuit.qubit_count(), gates).expect("rewrite preserves validity"))
}

/// Template-level view of what [`decompose_gate`] does to a kind on a given
/// device: `Ok(None)` when the kind is native everywhere, otherwise the
/// flattened native template sequence with parameters still symbolic.
/// Assumes a uniform per-qubit native set, which all shipped devices have.
pub fn native_expansion(
    kind: GateKind,
    device: &Device,
) -> Result<Option<Vec<GateTemplate>>, DecomposeError> {
    if kind_native_everywhere(kind, device) {
        return Ok(None);
    }
    flatten_templates(kind, device, MAX_REWRITE_DEPTH).map(Some)
}

fn kind_native_everywhere(kind: GateKind, device: &Device) -> bool {
    match kind {
        GateKind::Measure => (0..device.qubit_count()).any(|q| device.is_measurable(q)),
        k if k.arity() == 2 => device.native_2q().map(|(nk, _)| nk == k).unwrap_or(false),
        k => (0..device.qubit_count()).all(|q| device.native_1q(q).contains(&k)),
    }
}

fn flatten_templates(
    kind: GateKind,
    device: &Device,
    depth: usize,
) -> Result<Vec<GateTemplate>, DecomposeError> {
    if depth == 0 {
        return Err(DecomposeError::NoRuleAvailable {
            kind,
            device: device.name().to_string(),
        });
    }
    for direct_only in [true, false] {
        'candidates: for rule in RuleTable::shipped().rules_for(kind) {
            if direct_only
                && !rule.target.iter().all(|t| kind_native_everywhere(t.kind, device))
            {
                continue;
            }
            let mut out: Vec<GateTemplate> = Vec::new();
            for template in &rule.target {
                if kind_native_everywhere(template.kind, device) {
                    out.push(template.clone());
                    continue;
                }
                let Ok(inner) = flatten_templates(template.kind, device, depth - 1) else {
                    continue 'candidates;
                };
                for sub in inner {
                    out.push(GateTemplate {
                        kind: sub.kind,
                        operands: sub.operands.iter().map(|&i| template.operands[i]).collect(),
                        params: sub
                            .params
                            .iter()
                            .map(|p| match p {
                                ParamExpr::Const(v) => ParamExpr::Const(*v),
                                ParamExpr::Source(i) => template.params[*i],
                            })
                            .collect(),
                    });
                }
            }
            return Ok(out);
        }
    }
    Err(DecomposeError::NoRuleAvailable { kind, device: device.name().to_string() })
}

/// The direction-flip identity: `cnot(c, t)` as hadamards around the
/// reversed cnot. The product equals `cnot(c, t)` exactly.
pub fn reverse_cnot(control: usize, target: usize) -> Vec<Gate> {
    vec![
        Gate::h(control),
        Gate::h(target),
        Gate::cnot(target, control),
        Gate::h(control),
        Gate::h(target),
    ]
}

/// Expand a swap between two coupled physical qubits into native gates,
/// honoring edge direction on directed devices.
pub fn decompose_swap(a: usize, b: usize, device: &Device) -> Result<Vec<Gate>, DecomposeError> {
    let coupling = device
        .are_coupled(a, b)
        .map_err(|_| DecomposeError::NotCoupled { a, b, device: device.name().to_string() })?;
    if coupling == Coupling::No {
        return Err(DecomposeError::NotCoupled { a, b, device: device.name().to_string() });
    }
    let native_2q = device.native_2q().map(|(k, _)| k).ok_or(DecomposeError::NoRuleAvailable {
        kind: GateKind::Swap,
        device: device.name().to_string(),
    })?;

    if native_2q == GateKind::Swap {
        return Ok(vec![Gate::swap(a, b)]);
    }

    let raw: Vec<Gate> = if native_2q == GateKind::Cnot {
        // Orient the outer cnots along the allowed direction; the middle,
        // reversed cnot becomes its hadamard-conjugated form.
        let (fwd, rev) = match coupling {
            Coupling::ReverseOnly => (b, a),
            _ => (a, b),
        };
        match coupling {
            Coupling::Symmetric => {
                vec![Gate::cnot(a, b), Gate::cnot(b, a), Gate::cnot(a, b)]
            }
            _ => {
                let mut seq = vec![Gate::cnot(fwd, rev)];
                seq.extend(reverse_cnot(rev, fwd));
                seq.push(Gate::cnot(fwd, rev));
                seq
            }
        }
    } else {
        // Generic path through the rewrite table (cz-native and others).
        let swap = Gate::swap(a, b);
        return decompose_gate(&swap, device);
    };

    // Nativize any helper one-qubit gates (hadamards on u3 devices).
    let mut out = Vec::new();
    for gate in raw {
        out.extend(decompose_gate(&gate, device)?);
    }
    Ok(out)
}
