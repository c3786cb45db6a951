//! SWAP-based routing: make every two-qubit gate act on a coupled pair.
//!
//! Three strategies share one emission discipline: gates leave the router in
//! circuit order, so a routed circuit is the input with swaps spliced in and
//! disallowed cnot orientations replaced by their hadamard-conjugated form.
//! That discipline makes the exact router a true lower bound for the other
//! two on any instance.

use std::collections::HashMap;
use std::collections::VecDeque;

use crate::circuit::Circuit;
use crate::dag::DependencyGraph;
use crate::decompose::reverse_cnot;
use crate::device::{routing_edge_weight, Coupling, Device};
use crate::error::RouteError;
use crate::gate::{Gate, GateKind};
use crate::placement::Placement;

/// Routing strategies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RouterStrategy {
    /// Walk the first operand of each infeasible gate along a shortest path.
    Naive,
    /// Greedy swap search over a weighted frontier-plus-window cost.
    Lookahead,
    /// Minimum swap count by uniform-cost search; small instances only.
    Exact,
}

/// Distance flavor used by the lookahead cost.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CostMode {
    /// Hop counts over the coupling graph.
    Hops,
    /// Hops weighted by `-ln(1 - eps)` of the native two-qubit gate.
    Reliability,
}

/// Router configuration. `seed` is reserved for randomized tie-breaking;
/// the shipped strategies are fully deterministic and ignore it.
#[derive(Debug, Clone)]
pub struct RouterConfig {
    pub strategy: RouterStrategy,
    pub w0: f64,
    pub w1: f64,
    pub window: usize,
    pub exact_max_qubits: usize,
    pub exact_max_twoq: usize,
    pub cost: CostMode,
    pub seed: u64,
}

impl Default for RouterConfig {
    fn default() -> Self {
        RouterConfig {
            strategy: RouterStrategy::Lookahead,
            w0: 1.0,
            w1: 0.5,
            window: 20,
            exact_max_qubits: 5,
            exact_max_twoq: 8,
            cost: CostMode::Hops,
            seed: 0,
        }
    }
}

impl RouterConfig {
    pub fn validate(&self) -> Result<(), RouteError> {
        let weights_ok =
            self.w0.is_finite() && self.w0 > 0.0 && self.w1.is_finite() && self.w1 >= 0.0;
        if !weights_ok {
            return Err(RouteError::Infeasible {
                reason: format!("invalid lookahead weights w0={} w1={}", self.w0, self.w1),
            });
        }
        if self.exact_max_qubits == 0 || self.exact_max_twoq == 0 {
            return Err(RouteError::Infeasible { reason: "exact limits must be positive".into() });
        }
        Ok(())
    }
}

/// Output of routing: a constraint-satisfying circuit over physical qubits
/// (swaps still literal) plus the placement bookkeeping.
#[derive(Debug, Clone, PartialEq)]
pub struct RoutedResult {
    pub circuit: Circuit,
    pub initial_placement: Placement,
    pub final_placement: Placement,
    pub swaps_added: usize,
    pub direction_fixes: usize,
}

/// Replace a cnot whose orientation the device forbids with its reversed,
/// hadamard-conjugated form. Returns the gate sequence and whether a fix was
/// applied. Operands are physical.
pub fn fix_direction(gate: &Gate, device: &Device) -> Result<(Vec<Gate>, bool), RouteError> {
    debug_assert_eq!(gate.arity(), 2);
    let (a, b) = (gate.qubits[0], gate.qubits[1]);
    match device.are_coupled(a, b).map_err(|_| RouteError::NotCoupled { a, b })? {
        Coupling::No => Err(RouteError::NotCoupled { a, b }),
        Coupling::ReverseOnly if gate.kind == GateKind::Cnot => Ok((reverse_cnot(a, b), true)),
        _ => Ok((vec![gate.clone()], false)),
    }
}

/// Shared emission state: placement tracking, retired (measured) physical
/// qubits, and the output gate stream.
struct Emitter<'d> {
    device: &'d Device,
    placement: Placement,
    out: Vec<Gate>,
    swaps_added: usize,
    direction_fixes: usize,
    retired: Vec<bool>,
}

impl<'d> Emitter<'d> {
    fn new(device: &'d Device, placement: Placement) -> Emitter<'d> {
        Emitter {
            device,
            placement,
            out: Vec::new(),
            swaps_added: 0,
            direction_fixes: 0,
            retired: vec![false; device.qubit_count()],
        }
    }

    fn physical(&self, program: usize) -> usize {
        self.placement.physical_of(program).expect("program qubit placed")
    }

    fn emit_swap(&mut self, i: usize, j: usize) {
        self.out.push(Gate::swap(i, j));
        self.placement.swap_slots(i, j);
        self.swaps_added += 1;
    }

    /// Emit a program-level gate at the current placement. Two-qubit gates
    /// must already be feasible; disallowed cnot orientations are fixed here.
    fn emit_gate(&mut self, gate: &Gate) -> Result<(), RouteError> {
        let qubits: Vec<usize> = gate.qubits.iter().map(|&q| self.physical(q)).collect();
        let mapped = Gate { kind: gate.kind, qubits, params: gate.params.clone() };
        if mapped.arity() == 2 {
            let (gates, fixed) = fix_direction(&mapped, self.device)?;
            if fixed {
                self.direction_fixes += 1;
            }
            self.out.extend(gates);
        } else {
            if mapped.kind == GateKind::Measure {
                self.retired[mapped.qubits[0]] = true;
            }
            self.out.push(mapped);
        }
        Ok(())
    }

    fn finish(self, initial: Placement, qubit_count: usize) -> Result<RoutedResult, RouteError> {
        let circuit = Circuit::new(qubit_count, self.out)?;
        Ok(RoutedResult {
            circuit,
            initial_placement: initial,
            final_placement: self.placement,
            swaps_added: self.swaps_added,
            direction_fixes: self.direction_fixes,
        })
    }
}

fn validate_inputs(
    circuit: &Circuit,
    device: &Device,
    placement: &Placement,
) -> Result<(), RouteError> {
    if placement.len() != device.qubit_count() || !placement.is_valid_for(circuit.qubit_count()) {
        return Err(RouteError::Infeasible {
            reason: "placement does not cover the circuit's program qubits".into(),
        });
    }
    for (index, gate) in circuit.gates().iter().enumerate() {
        if gate.arity() == 2 && gate.kind != GateKind::Swap {
            let native = device.native_2q().map(|(k, _)| k);
            if native != Some(gate.kind) {
                return Err(RouteError::NotNative { index, kind: gate.kind });
            }
        }
    }
    Ok(())
}

/// Route a native-decomposed circuit onto the device starting from the given
/// placement.
pub fn route(
    circuit: &Circuit,
    device: &Device,
    initial: &Placement,
    config: &RouterConfig,
) -> Result<RoutedResult, RouteError> {
    config.validate()?;
    validate_inputs(circuit, device, initial)?;
    match config.strategy {
        RouterStrategy::Naive => route_naive(circuit, device, initial),
        RouterStrategy::Lookahead => route_lookahead(circuit, device, initial, config),
        RouterStrategy::Exact => route_exact(circuit, device, initial, config),
    }
}

/// Walk the first operand of each infeasible gate toward the second along a
/// shortest path, swapping one hop at a time.
fn route_naive(
    circuit: &Circuit,
    device: &Device,
    initial: &Placement,
) -> Result<RoutedResult, RouteError> {
    let mut em = Emitter::new(device, initial.clone());
    for gate in circuit.gates() {
        if gate.arity() == 2 {
            let pa = em.physical(gate.qubits[0]);
            let pb = em.physical(gate.qubits[1]);
            if device.are_coupled(pa, pb).unwrap() == Coupling::No {
                let path = device
                    .shortest_path_avoiding(pa, pb, &em.retired)
                    .map_err(|_| blocked_by_measurement(pa, pb))?;
                for k in 0..path.len().saturating_sub(2) {
                    em.emit_swap(path[k], path[k + 1]);
                }
            }
        }
        em.emit_gate(gate)?;
    }
    em.finish(initial.clone(), device.qubit_count())
}

fn blocked_by_measurement(a: usize, b: usize) -> RouteError {
    RouteError::Infeasible {
        reason: format!("every path between physical qubits {a} and {b} crosses a measured qubit"),
    }
}

/// Lookahead routing: the greedy cost search below, guarded so the result
/// never uses more swaps than the naive baseline on the same input. The
/// guard keeps the refinement from losing to the strategy it refines on the
/// occasional instance where the greedy first move is a trap.
fn route_lookahead(
    circuit: &Circuit,
    device: &Device,
    initial: &Placement,
    config: &RouterConfig,
) -> Result<RoutedResult, RouteError> {
    let greedy = route_lookahead_greedy(circuit, device, initial, config)?;
    let baseline = route_naive(circuit, device, initial)?;
    if baseline.swaps_added < greedy.swaps_added {
        Ok(baseline)
    } else {
        Ok(greedy)
    }
}

/// Greedy lookahead router. When the next gate in circuit order is
/// infeasible, repeatedly apply the swap that most decreases
/// `sum_frontier w0 * dist + sum_window w1 * dist`; if no swap strictly
/// improves the cost, fall back to shortest-path chaining for the stuck gate.
fn route_lookahead_greedy(
    circuit: &Circuit,
    device: &Device,
    initial: &Placement,
    config: &RouterConfig,
) -> Result<RoutedResult, RouteError> {
    let dist = cost_distances(device, config.cost);
    let gates = circuit.gates();
    let mut deps = DependencyGraph::build(circuit);
    let mut em = Emitter::new(device, initial.clone());
    let edge_pairs = device.edge_pairs();

    let mut next = 0usize;
    while next < gates.len() {
        let gate = &gates[next];
        let feasible = if gate.arity() == 2 {
            let pa = em.physical(gate.qubits[0]);
            let pb = em.physical(gate.qubits[1]);
            device.are_coupled(pa, pb).unwrap() != Coupling::No
        } else {
            true
        };
        if feasible {
            em.emit_gate(gate)?;
            deps.mark_scheduled(next).expect("emission follows circuit order");
            next += 1;
            continue;
        }

        // Cost terms: dependency-frontier two-qubit gates at weight w0, the
        // following `window` pending two-qubit gates at weight w1.
        let frontier_indices: Vec<usize> = deps
            .frontier()
            .into_iter()
            .filter(|&i| gates[i].arity() == 2)
            .collect();
        let frontier: Vec<&Gate> = frontier_indices.iter().map(|&i| &gates[i]).collect();
        let window: Vec<&Gate> = (next..gates.len())
            .filter(|i| gates[*i].arity() == 2 && !frontier_indices.contains(i))
            .take(config.window)
            .map(|i| &gates[i])
            .collect();

        let cost_of = |em: &Emitter, moved: Option<(usize, usize)>| -> f64 {
            let pos = |prog: usize| -> usize {
                let p = em.physical(prog);
                match moved {
                    Some((i, j)) if p == i => j,
                    Some((i, j)) if p == j => i,
                    _ => p,
                }
            };
            let term = |gs: &[&Gate], w: f64| -> f64 {
                gs.iter()
                    .map(|g| w * dist[pos(g.qubits[0])][pos(g.qubits[1])])
                    .sum::<f64>()
            };
            term(&frontier, config.w0) + term(&window, config.w1)
        };

        let base_cost = cost_of(&em, None);
        let mut best: Option<((usize, usize), f64)> = None;
        for &(i, j) in &edge_pairs {
            if em.retired[i] || em.retired[j] {
                continue;
            }
            let delta = cost_of(&em, Some((i, j))) - base_cost;
            match best {
                Some((_, best_delta)) if delta >= best_delta - 1e-12 => {}
                _ => best = Some(((i, j), delta)),
            }
        }

        match best {
            Some(((i, j), delta)) if delta < -1e-9 => {
                em.emit_swap(i, j);
            }
            _ => {
                // No strictly improving swap: resolve the stuck gate directly.
                let pa = em.physical(gate.qubits[0]);
                let pb = em.physical(gate.qubits[1]);
                let path = device
                    .shortest_path_avoiding(pa, pb, &em.retired)
                    .map_err(|_| blocked_by_measurement(pa, pb))?;
                for k in 0..path.len().saturating_sub(2) {
                    em.emit_swap(path[k], path[k + 1]);
                }
                em.emit_gate(gate)?;
                deps.mark_scheduled(next).expect("emission follows circuit order");
                next += 1;
            }
        }
    }
    em.finish(initial.clone(), device.qubit_count())
}

fn cost_distances(device: &Device, mode: CostMode) -> Vec<Vec<f64>> {
    let weight = match mode {
        CostMode::Hops => 1.0,
        CostMode::Reliability => routing_edge_weight(device),
    };
    device
        .distance_table()
        .iter()
        .map(|row| row.iter().map(|&d| d as f64 * weight).collect())
        .collect()
}

/// Exact minimum-swap routing by breadth-first search over
/// (placement, next-gate, retired) states, advancing for free through
/// feasible gates and paying one unit per swap.
fn route_exact(
    circuit: &Circuit,
    device: &Device,
    initial: &Placement,
    config: &RouterConfig,
) -> Result<RoutedResult, RouteError> {
    if circuit.qubit_count() > config.exact_max_qubits {
        return Err(RouteError::ExactLimitExceeded {
            reason: format!(
                "{} program qubits exceed the limit of {}",
                circuit.qubit_count(),
                config.exact_max_qubits
            ),
        });
    }
    let twoq = circuit.two_qubit_gate_count();
    if twoq > config.exact_max_twoq {
        return Err(RouteError::ExactLimitExceeded {
            reason: format!(
                "{twoq} two-qubit gates exceed the limit of {}",
                config.exact_max_twoq
            ),
        });
    }

    let gates = circuit.gates();
    let edge_pairs = device.edge_pairs();

    #[derive(Clone, PartialEq, Eq, Hash)]
    struct State {
        slots: Vec<Option<usize>>,
        index: usize,
        retired: Vec<bool>,
    }

    // Advance through feasible gates; measurements retire physical slots.
    let normalize = |placement: Placement, mut index: usize, mut retired: Vec<bool>| {
        while index < gates.len() {
            let gate = &gates[index];
            if gate.arity() == 2 {
                let pa = placement.physical_of(gate.qubits[0]).unwrap();
                let pb = placement.physical_of(gate.qubits[1]).unwrap();
                if device.are_coupled(pa, pb).unwrap() == Coupling::No {
                    break;
                }
            } else if gate.kind == GateKind::Measure {
                retired[placement.physical_of(gate.qubits[0]).unwrap()] = true;
            }
            index += 1;
        }
        (placement, index, retired)
    };

    let key_of = |placement: &Placement, index: usize, retired: &[bool]| State {
        slots: placement.slots().to_vec(),
        index,
        retired: retired.to_vec(),
    };

    let (p0, i0, r0) = normalize(initial.clone(), 0, vec![false; device.qubit_count()]);
    let start_key = key_of(&p0, i0, &r0);

    // parent: state -> (previous state, swap edge applied at previous.index)
    let mut parent: HashMap<State, (State, (usize, usize))> = HashMap::new();
    let mut seen: HashMap<State, (Placement, Vec<bool>)> = HashMap::new();
    seen.insert(start_key.clone(), (p0.clone(), r0.clone()));
    let mut queue: VecDeque<State> = VecDeque::new();
    queue.push_back(start_key.clone());

    let mut goal: Option<State> = None;
    if i0 == gates.len() {
        goal = Some(start_key.clone());
    }
    while goal.is_none() {
        let Some(cur_key) = queue.pop_front() else {
            return Err(RouteError::Infeasible {
                reason: "exact search exhausted the state space".into(),
            });
        };
        let (cur_placement, cur_retired) = seen[&cur_key].clone();
        for &(i, j) in &edge_pairs {
            if cur_retired[i] || cur_retired[j] {
                continue;
            }
            let mut placement = cur_placement.clone();
            placement.swap_slots(i, j);
            let (placement, index, retired) =
                normalize(placement, cur_key.index, cur_retired.clone());
            let key = key_of(&placement, index, &retired);
            if seen.contains_key(&key) {
                continue;
            }
            parent.insert(key.clone(), (cur_key.clone(), (i, j)));
            seen.insert(key.clone(), (placement, retired));
            if index == gates.len() {
                goal = Some(key);
                break;
            }
            queue.push_back(key);
        }
    }

    // Reconstruct (stall index, edge) pairs from start to goal.
    let mut plan: Vec<(usize, (usize, usize))> = Vec::new();
    let mut cursor = goal.unwrap();
    while cursor != start_key {
        let (prev, edge) = parent[&cursor].clone();
        plan.push((prev.index, edge));
        cursor = prev;
    }
    plan.reverse();

    // Replay: emit gates up to each stall point, then the planned swap.
    let mut em = Emitter::new(device, initial.clone());
    let mut emitted = 0usize;
    let emit_until = |em: &mut Emitter, upto: usize, emitted: &mut usize| -> Result<(), RouteError> {
        while *emitted < upto {
            em.emit_gate(&gates[*emitted])?;
            *emitted += 1;
        }
        Ok(())
    };
    for (stall, (i, j)) in plan {
        emit_until(&mut em, stall, &mut emitted)?;
        em.emit_swap(i, j);
    }
    emit_until(&mut em, gates.len(), &mut emitted)?;
    em.finish(initial.clone(), device.qubit_count())
}
