//! The end-to-end mapping pipeline: decompose, place, route, expand the
//! inserted swaps, schedule, and report metrics.

use thiserror::Error;

use crate::circuit::Circuit;
use crate::decompose::{decompose_gate, decompose_swap, decompose_to_native};
use crate::device::Device;
use crate::error::{DecomposeError, RouteError, ScheduleError};
use crate::gate::{Gate, GateKind};
use crate::metrics::{metrics, MetricsReport};
use crate::placement::{initial_placement, PlacerStrategy};
use crate::route::{route, RoutedResult, RouterConfig};
use crate::schedule::{schedule_asap_with, Schedule};

/// Any failure along the pipeline.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum PipelineError {
    #[error(transparent)]
    Decompose(#[from] DecomposeError),
    #[error(transparent)]
    Route(#[from] RouteError),
    #[error(transparent)]
    Schedule(#[from] ScheduleError),
}

/// Everything a mapping run produces.
#[derive(Debug, Clone, PartialEq)]
pub struct PipelineResult {
    /// Routed circuit with literal swap gates.
    pub routed: RoutedResult,
    /// Fully native, constraint-satisfying output circuit.
    pub final_circuit: Circuit,
    pub schedule: Schedule,
    pub metrics: MetricsReport,
}

/// Expand the literal swaps of a routed circuit into native gates, honoring
/// edge directions.
pub fn finalize_routed(routed: &RoutedResult, device: &Device) -> Result<Circuit, DecomposeError> {
    let mut gates: Vec<Gate> = Vec::with_capacity(routed.circuit.len());
    for gate in routed.circuit.gates() {
        if gate.kind == GateKind::Swap && !device.is_native(gate) {
            gates.extend(decompose_swap(gate.qubits[0], gate.qubits[1], device)?);
        } else {
            gates.extend(decompose_gate(gate, device)?);
        }
    }
    Ok(Circuit::new(routed.circuit.qubit_count(), gates).expect("expansion preserves validity"))
}

/// Run the whole pipeline on a parsed circuit.
pub fn map_circuit(
    circuit: &Circuit,
    device: &Device,
    placer: PlacerStrategy,
    router: &RouterConfig,
) -> Result<PipelineResult, PipelineError> {
    if circuit.qubit_count() > device.qubit_count() {
        return Err(RouteError::TooManyQubits {
            program: circuit.qubit_count(),
            physical: device.qubit_count(),
            device: device.name().to_string(),
        }
        .into());
    }
    let native = decompose_to_native(circuit, device)?;
    let placement = initial_placement(&native, device, placer)?;
    let routed = route(&native, device, &placement, router)?;
    let final_circuit = finalize_routed(&routed, device)?;
    let schedule = schedule_asap_with(&final_circuit, device, routed.initial_placement.clone())?;
    let report = metrics(circuit, &routed, &final_circuit, &schedule, device);
    Ok(PipelineResult { routed, final_circuit, schedule, metrics: report })
}
