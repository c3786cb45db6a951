//! Shared helpers for the integration and acceptance suites: seeded circuit
//! generation, the shipped device files, and a tiny streaming hash for
//! determinism digests.

// Each test binary compiles this module separately and uses a subset of it.
#![allow(dead_code)]

use qcmap_core::*;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn qx4() -> Device {
    load_device(include_str!("../../../../devices/ibm_qx4.dev")).expect("shipped qx4 loads")
}

pub fn surface17() -> Device {
    load_device(include_str!("../../../../devices/surface17.dev")).expect("shipped surface17 loads")
}

pub fn demo_circuit() -> Circuit {
    parse_circuit(include_str!("../../../../circuits/demo_qx4.qc")).expect("shipped demo parses")
}

const ONE_QUBIT_FIXED: [GateKind; 8] = [
    GateKind::H,
    GateKind::X,
    GateKind::Y,
    GateKind::Z,
    GateKind::S,
    GateKind::Sdg,
    GateKind::T,
    GateKind::Tdg,
];

const ONE_QUBIT_ROTATIONS: [GateKind; 4] = [GateKind::Rx, GateKind::Ry, GateKind::Rz, GateKind::U3];

const TWO_QUBIT: [GateKind; 3] = [GateKind::Cnot, GateKind::Cz, GateKind::Swap];

fn random_gate(rng: &mut ChaCha8Rng, qubit_count: usize, kinds_2q: &[GateKind]) -> Gate {
    let roll: f64 = rng.random_range(0.0..1.0);
    let kind = if roll < 0.3 {
        ONE_QUBIT_FIXED[rng.random_range(0..ONE_QUBIT_FIXED.len())]
    } else if roll < 0.6 {
        ONE_QUBIT_ROTATIONS[rng.random_range(0..ONE_QUBIT_ROTATIONS.len())]
    } else {
        kinds_2q[rng.random_range(0..kinds_2q.len())]
    };
    let qubits = if kind.arity() == 2 {
        let a = rng.random_range(0..qubit_count);
        let mut b = rng.random_range(0..qubit_count - 1);
        if b >= a {
            b += 1;
        }
        vec![a, b]
    } else {
        vec![rng.random_range(0..qubit_count)]
    };
    let params: Vec<f64> = (0..kind.param_count())
        .map(|_| rng.random_range(-std::f64::consts::PI..std::f64::consts::PI))
        .collect();
    Gate::new(kind, qubits, params).expect("generated gate is valid")
}

/// A corpus circuit: 3 to `max_qubits` program qubits (8 at most), 5-40
/// gates of mixed kinds; every fifth seed ends with terminal measurements on
/// all qubits. `max_qubits` lets the corpus fit the smaller device.
pub fn corpus_circuit(seed: u64, max_qubits: usize) -> Circuit {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let qubit_count = rng.random_range(3..=max_qubits.min(8));
    let gate_count = rng.random_range(5..=40);
    let mut gates: Vec<Gate> = (0..gate_count)
        .map(|_| random_gate(&mut rng, qubit_count, &TWO_QUBIT))
        .collect();
    if seed.is_multiple_of(5) {
        for q in 0..qubit_count {
            gates.push(Gate::measure(q));
        }
    }
    Circuit::new(qubit_count, gates).expect("generated circuit is valid")
}

/// A small qx4-native instance for the exact router: 4-5 program qubits,
/// 3-8 cnots, a few u3 gates in between.
pub fn exact_instance(seed: u64) -> Circuit {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xE5AC7);
    let qubit_count = rng.random_range(4..=5);
    let cnot_count = rng.random_range(3..=8);
    let mut gates = Vec::new();
    for _ in 0..cnot_count {
        if rng.random_range(0.0..1.0) < 0.3 {
            gates.push(Gate::u3(
                rng.random_range(0..qubit_count),
                rng.random_range(-1.0..1.0),
                rng.random_range(-1.0..1.0),
                rng.random_range(-1.0..1.0),
            ));
        }
        let a = rng.random_range(0..qubit_count);
        let mut b = rng.random_range(0..qubit_count - 1);
        if b >= a {
            b += 1;
        }
        gates.push(Gate::cnot(a, b));
    }
    Circuit::new(qubit_count, gates).expect("generated instance is valid")
}

/// A circuit drawn from a device's native vocabulary on an all-to-all
/// register, used by the scheduler oracle.
pub fn scheduler_circuit(seed: u64) -> Circuit {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5C4ED);
    let qubit_count = rng.random_range(2..=6);
    let gate_count = rng.random_range(3..=30);
    let gates: Vec<Gate> = (0..gate_count)
        .map(|_| random_gate(&mut rng, qubit_count, &[GateKind::Cz]))
        .collect();
    Circuit::new(qubit_count, gates).expect("generated circuit is valid")
}

/// Streaming FNV-1a hash for byte-identical artifact digests.
pub struct Digest {
    state: u64,
}

impl Digest {
    pub fn new() -> Digest {
        Digest { state: 0xcbf29ce484222325 }
    }

    pub fn push(&mut self, bytes: &str) {
        for byte in bytes.as_bytes() {
            self.state ^= u64::from(*byte);
            self.state = self.state.wrapping_mul(0x100000001b3);
        }
    }

    pub fn hex(&self) -> String {
        format!("{:016x}", self.state)
    }
}
