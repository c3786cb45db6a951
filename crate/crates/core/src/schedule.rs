//! Clock-cycle scheduling of routed, native circuits.
//!
//! Gates are placed as-soon-as-possible in circuit order, subject to qubit
//! exclusivity, dependency order and shared control channels. Time is
//! discretized into clock cycles equal to the greatest common divisor of the
//! device's gate durations.

use std::collections::BTreeMap;
use std::collections::BTreeSet;

use crate::check::check_constraints;
use crate::circuit::Circuit;
use crate::dag::{DependencyGraph, NodeStatus};
use crate::device::{ChannelScope, Device};
use crate::error::ScheduleError;
use crate::gate::{Gate, GateKind};
use crate::placement::Placement;

/// A gate assigned to a start cycle. It occupies `[start, start + duration)`
/// on each of its operand qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct ScheduledGate {
    pub gate: Gate,
    pub start: u64,
    pub duration: u64,
}

impl ScheduledGate {
    pub fn end(&self) -> u64 {
        self.start + self.duration
    }

    fn covers(&self, cycle: u64) -> bool {
        self.start <= cycle && cycle < self.end()
    }
}

/// A complete clock-cycle schedule.
#[derive(Debug, Clone, PartialEq)]
pub struct Schedule {
    gates: Vec<ScheduledGate>,
    /// Raw device time units per normalized clock cycle.
    cycle_unit: u64,
}

impl Schedule {
    pub fn gates(&self) -> &[ScheduledGate] {
        &self.gates
    }

    pub fn cycle_unit(&self) -> u64 {
        self.cycle_unit
    }

    /// Number of clock cycles the schedule occupies; zero when empty.
    pub fn depth(&self) -> u64 {
        self.gates.iter().map(ScheduledGate::end).max().unwrap_or(0)
    }

    /// One line per cycle: `cycle <n>: <gate>@<qubits>; ...`, gates listed on
    /// their start cycle ordered by lowest operand index.
    pub fn dump(&self) -> String {
        let mut by_cycle: BTreeMap<u64, Vec<&ScheduledGate>> = BTreeMap::new();
        for sg in &self.gates {
            by_cycle.entry(sg.start).or_default().push(sg);
        }
        let mut out = String::new();
        for cycle in 0..self.depth() {
            out.push_str(&format!("cycle {cycle}:"));
            if let Some(list) = by_cycle.get_mut(&cycle) {
                list.sort_by_key(|sg| sg.gate.qubits.iter().min().copied());
                let rendered: Vec<String> = list
                    .iter()
                    .map(|sg| {
                        let qs: Vec<String> =
                            sg.gate.qubits.iter().map(|q| format!("q{q}")).collect();
                        format!(" {}@{}", sg.gate, qs.join(","))
                    })
                    .collect();
                out.push_str(&rendered.join(";"));
            }
            out.push('\n');
        }
        out
    }

    /// Re-validate the schedule from scratch: qubit exclusivity, dependency
    /// order along shared qubits, and channel conflicts. Returns the list of
    /// problems found; a valid schedule yields none.
    pub fn validate(&self, device: &Device) -> Vec<String> {
        let mut problems = Vec::new();
        for (i, a) in self.gates.iter().enumerate() {
            for b in &self.gates[i + 1..] {
                let overlap = a.start < b.end() && b.start < a.end();
                if !overlap {
                    continue;
                }
                if a.gate.qubits.iter().any(|q| b.gate.qubits.contains(q)) {
                    problems.push(format!(
                        "qubit overlap between `{}` and `{}`",
                        a.gate, b.gate
                    ));
                }
                if device.channel_conflict(&a.gate, &b.gate) {
                    problems.push(format!(
                        "channel conflict between `{}` and `{}`",
                        a.gate, b.gate
                    ));
                }
            }
        }
        // dependency order: per qubit, start cycles must be non-decreasing
        // in gate order and intervals must not regress
        let mut last_end: BTreeMap<usize, u64> = BTreeMap::new();
        for sg in &self.gates {
            for &q in &sg.gate.qubits {
                if let Some(&end) = last_end.get(&q) {
                    if sg.start < end {
                        problems.push(format!("gate `{}` starts before its predecessor ends", sg.gate));
                    }
                }
                last_end.insert(q, sg.end());
            }
        }
        problems
    }
}

type Waveform = (GateKind, Vec<f64>);

/// The complete mapping state after some number of scheduling steps: the
/// dependency graph with statuses, both placements, the partial schedule and
/// the control-channel settings per cycle.
#[derive(Debug, Clone, PartialEq)]
pub struct ExecutionSnapshot {
    pub statuses: Vec<NodeStatus>,
    pub dependency_edges: Vec<(usize, usize)>,
    pub initial_placement: Placement,
    pub current_placement: Placement,
    pub scheduled: Vec<ScheduledGate>,
    /// cycle -> channel id -> waveform driven in that cycle.
    pub control_settings: BTreeMap<u64, BTreeMap<String, Waveform>>,
}

/// Incremental ASAP list scheduler.
pub struct Scheduler<'a> {
    circuit: &'a Circuit,
    device: &'a Device,
    deps: DependencyGraph,
    initial_placement: Placement,
    current_placement: Placement,
    scheduled: Vec<ScheduledGate>,
    qubit_free: Vec<u64>,
    channel_use: Vec<BTreeMap<u64, Waveform>>,
    next: usize,
    cycle_unit: u64,
}

impl<'a> Scheduler<'a> {
    /// Start scheduling a circuit. The circuit must already satisfy every
    /// device constraint. The placement seeds snapshot bookkeeping; swap
    /// gates encountered during scheduling update the current placement.
    pub fn new(
        circuit: &'a Circuit,
        device: &'a Device,
        placement: Placement,
    ) -> Result<Scheduler<'a>, ScheduleError> {
        let violations = check_constraints(circuit, device);
        if let Some(v) = violations.first() {
            return Err(ScheduleError::ConstraintViolation { violation: v.to_string() });
        }
        let cycle_unit = duration_gcd(device);
        Ok(Scheduler {
            circuit,
            device,
            deps: DependencyGraph::build(circuit),
            initial_placement: placement.clone(),
            current_placement: placement,
            scheduled: Vec::new(),
            qubit_free: vec![0; device.qubit_count()],
            channel_use: vec![BTreeMap::new(); device.channels().len()],
            next: 0,
            cycle_unit,
        })
    }

    /// Resume scheduling from a snapshot of the same circuit and device.
    pub fn from_snapshot(
        snapshot: &ExecutionSnapshot,
        circuit: &'a Circuit,
        device: &'a Device,
    ) -> Result<Scheduler<'a>, ScheduleError> {
        let mut scheduler = Scheduler::new(circuit, device, snapshot.initial_placement.clone())?;
        for _ in 0..snapshot.scheduled.len() {
            scheduler.step()?;
        }
        debug_assert_eq!(&scheduler.scheduled, &snapshot.scheduled);
        Ok(scheduler)
    }

    pub fn remaining(&self) -> usize {
        self.circuit.len() - self.next
    }

    fn normalized_duration(&self, kind: GateKind) -> u64 {
        (self.device.duration(kind) / self.cycle_unit).max(1)
    }

    fn channel_conflict_at(&self, gate: &Gate, start: u64, duration: u64) -> bool {
        let scope = if gate.arity() == 2 { ChannelScope::TwoQubit } else { ChannelScope::OneQubit };
        for (ch_index, ch) in self.device.channels().iter().enumerate() {
            if ch.scope != scope || !gate.qubits.iter().any(|q| ch.qubits.contains(q)) {
                continue;
            }
            for cycle in start..start + duration {
                if let Some((kind, params)) = self.channel_use[ch_index].get(&cycle) {
                    if *kind != gate.kind || params != &gate.params {
                        return true;
                    }
                }
            }
        }
        false
    }

    /// Schedule the next gate in circuit order. Returns false when the
    /// circuit is fully scheduled.
    pub fn step(&mut self) -> Result<bool, ScheduleError> {
        if self.next >= self.circuit.len() {
            return Ok(false);
        }
        let gate = &self.circuit.gates()[self.next];
        let duration = self.normalized_duration(gate.kind);

        let mut start = gate.qubits.iter().map(|&q| self.qubit_free[q]).max().unwrap_or(0);
        while self.channel_conflict_at(gate, start, duration) {
            start += 1;
        }

        for &q in &gate.qubits {
            self.qubit_free[q] = start + duration;
        }
        let scope = if gate.arity() == 2 { ChannelScope::TwoQubit } else { ChannelScope::OneQubit };
        for (ch_index, ch) in self.device.channels().iter().enumerate() {
            if ch.scope != scope || !gate.qubits.iter().any(|q| ch.qubits.contains(q)) {
                continue;
            }
            for cycle in start..start + duration {
                self.channel_use[ch_index]
                    .entry(cycle)
                    .or_insert_with(|| (gate.kind, gate.params.clone()));
            }
        }
        if gate.kind == GateKind::Swap {
            self.current_placement.swap_slots(gate.qubits[0], gate.qubits[1]);
        }
        self.deps.mark_scheduled(self.next).expect("circuit order is a topological order");
        self.scheduled.push(ScheduledGate { gate: gate.clone(), start, duration });
        self.next += 1;
        Ok(true)
    }

    /// Capture the execution snapshot after the steps taken so far.
    pub fn snapshot(&self) -> ExecutionSnapshot {
        let mut control_settings: BTreeMap<u64, BTreeMap<String, Waveform>> = BTreeMap::new();
        for (ch_index, uses) in self.channel_use.iter().enumerate() {
            let id = &self.device.channels()[ch_index].id;
            for (&cycle, waveform) in uses {
                control_settings
                    .entry(cycle)
                    .or_default()
                    .insert(id.clone(), waveform.clone());
            }
        }
        ExecutionSnapshot {
            statuses: self.deps.statuses(),
            dependency_edges: self.deps.edges(),
            initial_placement: self.initial_placement.clone(),
            current_placement: self.current_placement.clone(),
            scheduled: self.scheduled.clone(),
            control_settings,
        }
    }

    /// Run to completion.
    pub fn finish(mut self) -> Result<Schedule, ScheduleError> {
        while self.step()? {}
        Ok(Schedule { gates: self.scheduled, cycle_unit: self.cycle_unit })
    }
}

/// Greatest common divisor of the device's declared gate durations.
fn duration_gcd(device: &Device) -> u64 {
    let mut g = 0u64;
    for &d in device.durations().values() {
        g = gcd(g, d);
    }
    g.max(1)
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Schedule a routed native circuit as soon as possible, with identity
/// placement bookkeeping.
pub fn schedule_asap(circuit: &Circuit, device: &Device) -> Result<Schedule, ScheduleError> {
    let placement = Placement::identity(
        circuit.qubit_count().min(device.qubit_count()),
        device.qubit_count(),
    )
    .expect("identity placement fits");
    schedule_asap_with(circuit, device, placement)
}

/// Schedule with explicit placement bookkeeping for snapshots.
pub fn schedule_asap_with(
    circuit: &Circuit,
    device: &Device,
    placement: Placement,
) -> Result<Schedule, ScheduleError> {
    Scheduler::new(circuit, device, placement)?.finish()
}

/// The gate kinds each physical qubit could accept at the given cycle: the
/// qubit's native kinds, minus anything that would clash with channel
/// waveforms already committed for that cycle. Busy qubits offer nothing.
pub fn compatible_gates(
    snapshot: &ExecutionSnapshot,
    device: &Device,
    cycle: u64,
) -> Vec<BTreeSet<GateKind>> {
    let n = device.qubit_count();
    let mut result = Vec::with_capacity(n);
    let settings = snapshot.control_settings.get(&cycle);
    for q in 0..n {
        let busy = snapshot
            .scheduled
            .iter()
            .any(|sg| sg.covers(cycle) && sg.gate.qubits.contains(&q));
        if busy {
            result.push(BTreeSet::new());
            continue;
        }
        let mut kinds: BTreeSet<GateKind> = device.native_1q(q).clone();
        if let Some((kind2q, _)) = device.native_2q() {
            if !device.distance_table()[q].iter().all(|&d| d == 0 || d == usize::MAX) {
                kinds.insert(kind2q);
            }
        }
        if device.is_measurable(q) {
            kinds.insert(GateKind::Measure);
        }
        if let Some(by_channel) = settings {
            for (ch_index, ch) in device.channels().iter().enumerate() {
                let _ = ch_index;
                if !ch.qubits.contains(&q) {
                    continue;
                }
                if let Some((active_kind, _)) = by_channel.get(&ch.id) {
                    kinds.retain(|k| {
                        let scope = if k.arity() == 2 {
                            ChannelScope::TwoQubit
                        } else {
                            ChannelScope::OneQubit
                        };
                        scope != ch.scope || k == active_kind
                    });
                }
            }
        }
        result.push(kinds);
    }
    result
}
