//! Gate unitaries and small dense complex matrices.
//!
//! Conventions: `Rx`, `Ry`, `Rz` are the standard axis rotations
//! `exp(-i theta A / 2)`; `U3(theta, phi, lambda) = Rz(phi) Ry(theta) Rz(lambda)`.
//! For two-qubit gates the row/column index is `2 * b0 + b1` where `b0` is the
//! first operand's bit, so `cnot` has its control as the high bit of the local
//! index.

use num_complex::Complex64;

use crate::error::SimError;
use crate::gate::{Gate, GateKind};

pub type C64 = Complex64;

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

/// A dense `dim x dim` complex matrix in row-major order.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    dim: usize,
    entries: Vec<C64>,
}

impl Matrix {
    pub fn zeros(dim: usize) -> Matrix {
        Matrix { dim, entries: vec![ZERO; dim * dim] }
    }

    pub fn identity(dim: usize) -> Matrix {
        let mut m = Matrix::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_rows(rows: &[&[C64]]) -> Matrix {
        let dim = rows.len();
        let mut m = Matrix::zeros(dim);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), dim);
            for (j, &v) in row.iter().enumerate() {
                m[(i, j)] = v;
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Matrix product `self * rhs`.
    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.dim, rhs.dim);
        let n = self.dim;
        let mut out = Matrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == ZERO {
                    continue;
                }
                for j in 0..n {
                    out[(i, j)] += a * rhs[(k, j)];
                }
            }
        }
        out
    }

    pub fn dagger(&self) -> Matrix {
        let n = self.dim;
        let mut out = Matrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn scale(&self, factor: C64) -> Matrix {
        Matrix { dim: self.dim, entries: self.entries.iter().map(|e| e * factor).collect() }
    }

    /// Largest entry-wise absolute difference.
    pub fn max_norm_diff(&self, other: &Matrix) -> f64 {
        assert_eq!(self.dim, other.dim);
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// `max |U^dag U - I|`: zero for a unitary matrix.
    pub fn unitarity_defect(&self) -> f64 {
        self.dagger().mul(self).max_norm_diff(&Matrix::identity(self.dim))
    }

    /// Distance to `other` after aligning global phase. The phase is read off
    /// the largest-magnitude entry of `other`.
    pub fn phase_aligned_distance(&self, other: &Matrix) -> f64 {
        assert_eq!(self.dim, other.dim);
        let mut best = 0usize;
        let mut best_mag = -1.0;
        for (idx, e) in other.entries.iter().enumerate() {
            if e.norm() > best_mag {
                best_mag = e.norm();
                best = idx;
            }
        }
        if best_mag < 1e-300 || self.entries[best].norm() < 1e-300 {
            return self.max_norm_diff(other);
        }
        let phase = self.entries[best] / other.entries[best];
        let phase = phase / phase.norm();
        self.max_norm_diff(&other.scale(phase))
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.entries[i * self.dim + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.entries[i * self.dim + j]
    }
}

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn rx(theta: f64) -> Matrix {
    let (ct, st) = ((theta / 2.0).cos(), (theta / 2.0).sin());
    Matrix::from_rows(&[&[c(ct, 0.0), c(0.0, -st)], &[c(0.0, -st), c(ct, 0.0)]])
}

fn ry(theta: f64) -> Matrix {
    let (ct, st) = ((theta / 2.0).cos(), (theta / 2.0).sin());
    Matrix::from_rows(&[&[c(ct, 0.0), c(-st, 0.0)], &[c(st, 0.0), c(ct, 0.0)]])
}

fn rz(theta: f64) -> Matrix {
    Matrix::from_rows(&[
        &[C64::from_polar(1.0, -theta / 2.0), ZERO],
        &[ZERO, C64::from_polar(1.0, theta / 2.0)],
    ])
}

fn u3(theta: f64, phi: f64, lambda: f64) -> Matrix {
    rz(phi).mul(&ry(theta)).mul(&rz(lambda))
}

/// The unitary matrix of a gate, in the operand-local basis described in the
/// module docs. `measure` has no unitary.
pub fn gate_unitary(gate: &Gate) -> Result<Matrix, SimError> {
    kind_unitary(gate.kind, &gate.params)
}

/// Unitary for a gate kind plus parameter list.
pub fn kind_unitary(kind: GateKind, params: &[f64]) -> Result<Matrix, SimError> {
    let f = std::f64::consts::FRAC_1_SQRT_2;
    let m = match kind {
        GateKind::H => Matrix::from_rows(&[&[c(f, 0.0), c(f, 0.0)], &[c(f, 0.0), c(-f, 0.0)]]),
        GateKind::X => Matrix::from_rows(&[&[ZERO, ONE], &[ONE, ZERO]]),
        GateKind::Y => Matrix::from_rows(&[&[ZERO, c(0.0, -1.0)], &[c(0.0, 1.0), ZERO]]),
        GateKind::Z => Matrix::from_rows(&[&[ONE, ZERO], &[ZERO, c(-1.0, 0.0)]]),
        GateKind::S => Matrix::from_rows(&[&[ONE, ZERO], &[ZERO, c(0.0, 1.0)]]),
        GateKind::Sdg => Matrix::from_rows(&[&[ONE, ZERO], &[ZERO, c(0.0, -1.0)]]),
        GateKind::T => Matrix::from_rows(&[
            &[ONE, ZERO],
            &[ZERO, C64::from_polar(1.0, std::f64::consts::FRAC_PI_4)],
        ]),
        GateKind::Tdg => Matrix::from_rows(&[
            &[ONE, ZERO],
            &[ZERO, C64::from_polar(1.0, -std::f64::consts::FRAC_PI_4)],
        ]),
        GateKind::Rx => rx(params[0]),
        GateKind::Ry => ry(params[0]),
        GateKind::Rz => rz(params[0]),
        GateKind::U3 => u3(params[0], params[1], params[2]),
        GateKind::Cnot => {
            let mut m = Matrix::zeros(4);
            m[(0, 0)] = ONE;
            m[(1, 1)] = ONE;
            m[(2, 3)] = ONE;
            m[(3, 2)] = ONE;
            m
        }
        GateKind::Cz => {
            let mut m = Matrix::identity(4);
            m[(3, 3)] = c(-1.0, 0.0);
            m
        }
        GateKind::Swap => {
            let mut m = Matrix::zeros(4);
            m[(0, 0)] = ONE;
            m[(1, 2)] = ONE;
            m[(2, 1)] = ONE;
            m[(3, 3)] = ONE;
            m
        }
        GateKind::Measure => return Err(SimError::MeasureHasNoUnitary),
    };
    Ok(m)
}

/// Composed unitary of a gate sequence over `qubits` named operand slots.
/// Gates apply in list order (the first gate acts first). Used to validate
/// rewrite rules on one- and two-qubit templates.
pub fn compose_sequence(gates: &[Gate], qubit_count: usize) -> Result<Matrix, SimError> {
    assert!(qubit_count <= 2, "rule templates span at most two qubits");
    let dim = 1 << qubit_count;
    let mut acc = Matrix::identity(dim);
    for gate in gates {
        let u = gate_unitary(gate)?;
        let expanded = expand_to(dim, qubit_count, gate, &u);
        acc = expanded.mul(&acc);
    }
    Ok(acc)
}

/// Embed a gate unitary into the `qubit_count`-qubit space. Local qubit `k`
/// maps to bit position `qubit_count - 1 - k` of the row index, so operand 0
/// is the leftmost label, matching `compose_sequence` callers.
fn expand_to(dim: usize, qubit_count: usize, gate: &Gate, u: &Matrix) -> Matrix {
    let mut out = Matrix::zeros(dim);
    let bit_of = |q: usize| qubit_count - 1 - q;
    for col in 0..dim {
        for row in 0..dim {
            // check non-operand bits identical
            let mut others_match = true;
            for q in 0..qubit_count {
                if gate.qubits.contains(&q) {
                    continue;
                }
                let b = bit_of(q);
                if (row >> b) & 1 != (col >> b) & 1 {
                    others_match = false;
                    break;
                }
            }
            if !others_match {
                continue;
            }
            let local = |idx: usize| -> usize {
                let mut v = 0;
                for (pos, &q) in gate.qubits.iter().enumerate() {
                    let b = bit_of(q);
                    let bit = (idx >> b) & 1;
                    // operand 0 is the high bit of the local index
                    v |= bit << (gate.qubits.len() - 1 - pos);
                }
                v
            };
            out[(row, col)] = u[(local(row), local(col))];
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_4, PI};

    #[test]
    fn hadamard_matrix() {
        let h = kind_unitary(GateKind::H, &[]).unwrap();
        assert_eq!(h[(0, 0)].re, FRAC_1_SQRT_2);
        assert_eq!(h[(1, 1)].re, -FRAC_1_SQRT_2);
        assert!(h.unitarity_defect() < 1e-15);
    }

    #[test]
    fn cnot_flips_target_when_control_set() {
        let cx = kind_unitary(GateKind::Cnot, &[]).unwrap();
        // |10> (control set, local index 2) -> |11> (index 3)
        assert_eq!(cx[(3, 2)], C64::new(1.0, 0.0));
        assert_eq!(cx[(2, 3)], C64::new(1.0, 0.0));
        assert_eq!(cx[(2, 2)], C64::new(0.0, 0.0));
    }

    #[test]
    fn swap_exchanges_middle_states() {
        let sw = kind_unitary(GateKind::Swap, &[]).unwrap();
        assert_eq!(sw[(2, 1)], C64::new(1.0, 0.0));
        assert_eq!(sw[(1, 2)], C64::new(1.0, 0.0));
        assert_eq!(sw[(1, 1)], C64::new(0.0, 0.0));
        assert_eq!(sw[(0, 0)], C64::new(1.0, 0.0));
        assert_eq!(sw[(3, 3)], C64::new(1.0, 0.0));
    }

    #[test]
    fn all_kinds_unitary() {
        for kind in crate::gate::ALL_KINDS {
            if kind == GateKind::Measure {
                assert_eq!(kind_unitary(kind, &[]).unwrap_err(), SimError::MeasureHasNoUnitary);
                continue;
            }
            let params: Vec<f64> = (0..kind.param_count()).map(|i| 0.7 + i as f64).collect();
            let u = kind_unitary(kind, &params).unwrap();
            assert!(u.unitarity_defect() < 1e-12, "{kind} not unitary");
        }
    }

    #[test]
    fn u3_is_euler_decomposition() {
        // U3(pi/2, 0, pi) is H up to global phase.
        let u = kind_unitary(GateKind::U3, &[FRAC_PI_2, 0.0, PI]).unwrap();
        let h = kind_unitary(GateKind::H, &[]).unwrap();
        assert!(u.phase_aligned_distance(&h) < 1e-15);
        // U3(theta, -pi/2, pi/2) equals Rx(theta) exactly.
        let theta = 1.234;
        let u = kind_unitary(GateKind::U3, &[theta, -FRAC_PI_2, FRAC_PI_2]).unwrap();
        let rx = kind_unitary(GateKind::Rx, &[theta]).unwrap();
        assert!(u.max_norm_diff(&rx) < 1e-15);
    }

    #[test]
    fn phase_alignment_detects_mismatch() {
        let x = kind_unitary(GateKind::X, &[]).unwrap();
        let y = kind_unitary(GateKind::Y, &[]).unwrap();
        // X and Y differ beyond a global phase... but only in relative sign.
        assert!(x.phase_aligned_distance(&y) > 0.5);
        // Rx(pi) is X up to a global phase of -i.
        let rx_pi = kind_unitary(GateKind::Rx, &[PI]).unwrap();
        assert!(rx_pi.phase_aligned_distance(&x) < 1e-15);
        assert!(rx_pi.max_norm_diff(&x) > 0.5);
    }

    #[test]
    fn compose_reverse_cnot_identity() {
        // (H x H) CNOT(1,0) (H x H) == CNOT(0,1), exactly.
        let seq = vec![
            Gate::h(0),
            Gate::h(1),
            Gate::cnot(1, 0),
            Gate::h(0),
            Gate::h(1),
        ];
        let u = compose_sequence(&seq, 2).unwrap();
        let cx = compose_sequence(&[Gate::cnot(0, 1)], 2).unwrap();
        assert!(u.max_norm_diff(&cx) < 1e-12);
    }

    #[test]
    fn expand_respects_operand_order() {
        // CNOT(1,0): control on qubit 1, target qubit 0.
        let u = compose_sequence(&[Gate::cnot(1, 0)], 2).unwrap();
        // In the |q0 q1> labeling of compose_sequence, |01> (q0=0, q1=1,
        // index 1) should map to |11> (index 3).
        assert_eq!(u[(3, 1)], C64::new(1.0, 0.0));
        assert_eq!(u[(1, 3)], C64::new(1.0, 0.0));
    }

    #[test]
    fn t_gate_phase() {
        let t = kind_unitary(GateKind::T, &[]).unwrap();
        let expected = C64::from_polar(1.0, FRAC_PI_4);
        assert!((t[(1, 1)] - expected).norm() < 1e-16);
    }
}
