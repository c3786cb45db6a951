//! Small state-vector simulation and the circuit equivalence oracle.
//!
//! Basis-state indexing puts qubit 0 in the least significant bit. Measurement
//! gates are skipped: simulation returns the pre-measurement state.

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::circuit::Circuit;
use crate::error::SimError;
use crate::gate::{Gate, GateKind};
use crate::placement::Placement;
use crate::unitary::{gate_unitary, Matrix};

pub type C64 = Complex64;

/// Hard cap on simulated qubits (2^16 amplitudes).
pub const MAX_SIM_QUBITS: usize = 16;

/// Amplitudes of an n-qubit pure state.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    qubit_count: usize,
    amps: Vec<C64>,
}

impl StateVector {
    /// The computational basis state with the given index.
    pub fn basis(qubit_count: usize, index: usize) -> Result<StateVector, SimError> {
        if qubit_count > MAX_SIM_QUBITS {
            return Err(SimError::TooManyQubits { count: qubit_count, max: MAX_SIM_QUBITS });
        }
        let dim = 1usize << qubit_count;
        assert!(index < dim, "basis index out of range");
        let mut amps = vec![C64::new(0.0, 0.0); dim];
        amps[index] = C64::new(1.0, 0.0);
        Ok(StateVector { qubit_count, amps })
    }

    /// Normalized state from raw amplitudes.
    pub fn from_amplitudes(qubit_count: usize, amps: Vec<C64>) -> Result<StateVector, SimError> {
        if qubit_count > MAX_SIM_QUBITS {
            return Err(SimError::TooManyQubits { count: qubit_count, max: MAX_SIM_QUBITS });
        }
        assert_eq!(amps.len(), 1usize << qubit_count);
        let mut sv = StateVector { qubit_count, amps };
        let norm = sv.norm();
        assert!(norm > 0.0, "cannot normalize the zero vector");
        for a in &mut sv.amps {
            *a /= norm;
        }
        Ok(sv)
    }

    /// A deterministic pseudo-random normalized state.
    pub fn random(qubit_count: usize, rng: &mut ChaCha8Rng) -> Result<StateVector, SimError> {
        if qubit_count > MAX_SIM_QUBITS {
            return Err(SimError::TooManyQubits { count: qubit_count, max: MAX_SIM_QUBITS });
        }
        let dim = 1usize << qubit_count;
        let amps: Vec<C64> = (0..dim)
            .map(|_| C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
            .collect();
        StateVector::from_amplitudes(qubit_count, amps)
    }

    pub fn qubit_count(&self) -> usize {
        self.qubit_count
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Inner product `<self|other>`.
    pub fn inner(&self, other: &StateVector) -> C64 {
        assert_eq!(self.qubit_count, other.qubit_count);
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// `|<self|other>|`, insensitive to global phase.
    pub fn fidelity(&self, other: &StateVector) -> f64 {
        self.inner(other).norm()
    }

    fn apply_1q(&mut self, q: usize, u: &Matrix) {
        let mask = 1usize << q;
        let low = mask - 1;
        let (u00, u01, u10, u11) = (u[(0, 0)], u[(0, 1)], u[(1, 0)], u[(1, 1)]);
        for base in 0..self.amps.len() / 2 {
            let i0 = ((base & !low) << 1) | (base & low);
            let i1 = i0 | mask;
            let a0 = self.amps[i0];
            let a1 = self.amps[i1];
            self.amps[i0] = u00 * a0 + u01 * a1;
            self.amps[i1] = u10 * a0 + u11 * a1;
        }
    }

    fn apply_2q(&mut self, a: usize, b: usize, u: &Matrix) {
        let ma = 1usize << a;
        let mb = 1usize << b;
        let (lo, hi) = (a.min(b), a.max(b));
        let low_mask = (1usize << lo) - 1;
        let mid_mask = ((1usize << (hi - 1)) - 1) & !low_mask;
        for base in 0..self.amps.len() / 4 {
            // spread `base` over the bit positions excluding a and b
            let spread = ((base & !mid_mask & !low_mask) << 2)
                | ((base & mid_mask) << 1)
                | (base & low_mask);
            // local index: operand 0 (qubit a) is the high bit
            let idx = [spread, spread | mb, spread | ma, spread | ma | mb];
            let old = [self.amps[idx[0]], self.amps[idx[1]], self.amps[idx[2]], self.amps[idx[3]]];
            for (row, &i) in idx.iter().enumerate() {
                self.amps[i] = u[(row, 0)] * old[0]
                    + u[(row, 1)] * old[1]
                    + u[(row, 2)] * old[2]
                    + u[(row, 3)] * old[3];
            }
        }
    }

    /// Apply one gate in place. Measurement gates are ignored.
    pub fn apply(&mut self, gate: &Gate) -> Result<(), SimError> {
        if gate.kind == GateKind::Measure {
            return Ok(());
        }
        let u = gate_unitary(gate)?;
        match gate.qubits.len() {
            1 => self.apply_1q(gate.qubits[0], &u),
            2 => self.apply_2q(gate.qubits[0], gate.qubits[1], &u),
            _ => unreachable!("gates have arity 1 or 2"),
        }
        Ok(())
    }
}

/// Run a circuit on an input state and return the output state.
pub fn simulate(circuit: &Circuit, input: &StateVector) -> Result<StateVector, SimError> {
    if circuit.qubit_count() > MAX_SIM_QUBITS {
        return Err(SimError::TooManyQubits {
            count: circuit.qubit_count(),
            max: MAX_SIM_QUBITS,
        });
    }
    assert_eq!(input.qubit_count(), circuit.qubit_count(), "input state size mismatch");
    let mut state = input.clone();
    for gate in circuit.gates() {
        state.apply(gate)?;
    }
    Ok(state)
}

/// Run a circuit on a computational basis input.
pub fn simulate_basis(circuit: &Circuit, basis_index: usize) -> Result<StateVector, SimError> {
    let input = StateVector::basis(circuit.qubit_count(), basis_index)?;
    simulate(circuit, &input)
}

/// Result of the equivalence oracle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Equivalence {
    pub equivalent: bool,
    /// `1 - min fidelity` over all probed inputs.
    pub max_deficit: f64,
}

/// Program-qubit cap for the equivalence oracle.
pub const MAX_EQUIV_QUBITS: usize = 12;

/// Fidelity shortfall above which circuits are reported non-equivalent.
pub const EQUIV_TOLERANCE: f64 = 1e-10;

const BASIS_PROBES: usize = 20;
const RANDOM_PROBES: usize = 5;
const PROBE_SEED: u64 = 0x5EED_0001;

/// Check that `mapped` realizes `orig` with the final placement applied,
/// assuming program qubit k starts on physical qubit k.
pub fn equivalent(
    orig: &Circuit,
    mapped: &Circuit,
    final_placement: &Placement,
) -> Result<Equivalence, SimError> {
    let identity = Placement::identity(orig.qubit_count(), final_placement.len())
        .expect("placement shorter than program qubit count");
    equivalent_with_initial(orig, mapped, &identity, final_placement)
}

/// Full equivalence oracle: simulate `orig` on `n` program qubits and `mapped`
/// on the physical qubits it touches, with program inputs injected at their
/// initial placement and outputs read back at the final placement. Compares
/// `min(20, 2^n)` deterministic basis inputs plus five seeded random states.
pub fn equivalent_with_initial(
    orig: &Circuit,
    mapped: &Circuit,
    initial: &Placement,
    final_placement: &Placement,
) -> Result<Equivalence, SimError> {
    let n = orig.qubit_count();
    if n > MAX_EQUIV_QUBITS {
        return Err(SimError::TooManyQubits { count: n, max: MAX_EQUIV_QUBITS });
    }

    // Restrict the mapped circuit to physical qubits it can influence.
    let mut used: Vec<usize> = Vec::new();
    let mut mark = |q: usize| {
        if !used.contains(&q) {
            used.push(q);
        }
    };
    for k in 0..n {
        mark(initial.physical_of(k).expect("program qubit placed"));
        mark(final_placement.physical_of(k).expect("program qubit placed"));
    }
    for gate in mapped.gates() {
        for &q in &gate.qubits {
            mark(q);
        }
    }
    used.sort_unstable();
    let m = used.len();
    if m > MAX_SIM_QUBITS {
        return Err(SimError::TooManyQubits { count: m, max: MAX_SIM_QUBITS });
    }
    let dense_of = |phys: usize| used.binary_search(&phys).expect("qubit in used set");

    // Relabel the mapped circuit onto the dense register.
    let mut dense_gates = Vec::with_capacity(mapped.len());
    for gate in mapped.gates() {
        let qubits: Vec<usize> = gate.qubits.iter().map(|&q| dense_of(q)).collect();
        dense_gates.push(Gate { kind: gate.kind, qubits, params: gate.params.clone() });
    }
    let dense_mapped = Circuit::new(m, dense_gates).expect("relabeled circuit is valid");

    let init_pos: Vec<usize> =
        (0..n).map(|k| dense_of(initial.physical_of(k).unwrap())).collect();
    let final_pos: Vec<usize> =
        (0..n).map(|k| dense_of(final_placement.physical_of(k).unwrap())).collect();

    // Scatter an n-qubit state into the m-qubit register at given positions.
    let scatter = |state: &StateVector, pos: &[usize]| -> StateVector {
        let mut amps = vec![C64::new(0.0, 0.0); 1usize << m];
        for (x, &amp) in state.amplitudes().iter().enumerate() {
            let mut idx = 0usize;
            for (k, &p) in pos.iter().enumerate() {
                idx |= ((x >> k) & 1) << p;
            }
            amps[idx] = amp;
        }
        StateVector { qubit_count: m, amps }
    };

    let mut inputs: Vec<StateVector> = Vec::new();
    let dim = 1usize << n;
    for b in 0..dim.min(BASIS_PROBES) {
        inputs.push(StateVector::basis(n, b)?);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(PROBE_SEED);
    for _ in 0..RANDOM_PROBES {
        inputs.push(StateVector::random(n, &mut rng)?);
    }

    let mut max_deficit: f64 = 0.0;
    for input in &inputs {
        let orig_out = simulate(orig, input)?;
        let mapped_out = simulate(&dense_mapped, &scatter(input, &init_pos))?;
        let expected = scatter(&orig_out, &final_pos);
        let deficit = 1.0 - expected.fidelity(&mapped_out);
        max_deficit = max_deficit.max(deficit);
    }

    Ok(Equivalence { equivalent: max_deficit < EQUIV_TOLERANCE, max_deficit })
}
