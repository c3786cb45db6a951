//! Gate dependency graph with scheduling status tracking.
//!
//! Nodes are gate indices into the originating circuit. An edge runs from
//! gate `i` to gate `j` (`i < j`) when the two gates share a qubit and no gate
//! between them touches that qubit: the strict qubit-line ordering rule.

use crate::circuit::Circuit;
use crate::error::ScheduleError;

/// Scheduling status of a dependency-graph node.
///
/// `Frontier` is the subset of pending nodes whose predecessors have all been
/// scheduled, i.e. the gates that can be scheduled next.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeStatus {
    Scheduled,
    Pending,
    Frontier,
}

/// Directed acyclic dependency graph over the gates of one circuit.
#[derive(Debug, Clone, PartialEq)]
pub struct DependencyGraph {
    node_count: usize,
    preds: Vec<Vec<usize>>,
    succs: Vec<Vec<usize>>,
    scheduled: Vec<bool>,
    pending_preds: Vec<usize>,
}

impl DependencyGraph {
    /// Build the dependency graph of a circuit. All nodes start out pending;
    /// nodes without predecessors form the initial frontier.
    pub fn build(circuit: &Circuit) -> DependencyGraph {
        let n = circuit.len();
        let mut preds: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut succs: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut last_on_qubit: Vec<Option<usize>> = vec![None; circuit.qubit_count()];

        for (j, gate) in circuit.gates().iter().enumerate() {
            for &q in &gate.qubits {
                if let Some(i) = last_on_qubit[q] {
                    // A pair sharing two qubits gets a single edge.
                    if !succs[i].contains(&j) {
                        succs[i].push(j);
                        preds[j].push(i);
                    }
                }
                last_on_qubit[q] = Some(j);
            }
        }

        let pending_preds = preds.iter().map(Vec::len).collect();
        DependencyGraph {
            node_count: n,
            preds,
            succs,
            scheduled: vec![false; n],
            pending_preds,
        }
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn predecessors(&self, node: usize) -> &[usize] {
        &self.preds[node]
    }

    pub fn successors(&self, node: usize) -> &[usize] {
        &self.succs[node]
    }

    /// All directed edges `(source, target)` in source order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, succ) in self.succs.iter().enumerate() {
            for &j in succ {
                out.push((i, j));
            }
        }
        out
    }

    pub fn status(&self, node: usize) -> NodeStatus {
        if self.scheduled[node] {
            NodeStatus::Scheduled
        } else if self.pending_preds[node] == 0 {
            NodeStatus::Frontier
        } else {
            NodeStatus::Pending
        }
    }

    pub fn statuses(&self) -> Vec<NodeStatus> {
        (0..self.node_count).map(|i| self.status(i)).collect()
    }

    /// Gate indices that can be scheduled next, in ascending order.
    pub fn frontier(&self) -> Vec<usize> {
        (0..self.node_count)
            .filter(|&i| self.status(i) == NodeStatus::Frontier)
            .collect()
    }

    pub fn scheduled_count(&self) -> usize {
        self.scheduled.iter().filter(|&&s| s).count()
    }

    pub fn all_scheduled(&self) -> bool {
        self.scheduled.iter().all(|&s| s)
    }

    /// Mark a frontier node as scheduled, promoting any successor whose
    /// predecessors are now all scheduled.
    pub fn mark_scheduled(&mut self, node: usize) -> Result<(), ScheduleError> {
        if node >= self.node_count || self.status(node) != NodeStatus::Frontier {
            return Err(ScheduleError::NotSchedulable { index: node });
        }
        self.scheduled[node] = true;
        for s in 0..self.succs[node].len() {
            let succ = self.succs[node][s];
            self.pending_preds[succ] -= 1;
        }
        Ok(())
    }
}
