//! Mapping cost metrics: gate counts, depth, and reliability.

use crate::circuit::Circuit;
use crate::device::Device;
use crate::route::RoutedResult;
use crate::schedule::Schedule;

/// Cost report for one mapping run. `reliability` is the product of per-gate
/// success probabilities, or `None` when the device carries no error data.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricsReport {
    pub gates_before: usize,
    pub gates_after: usize,
    pub swaps_added: usize,
    pub direction_fixes: usize,
    pub depth_cycles: u64,
    pub reliability: Option<f64>,
}

impl MetricsReport {
    /// Stable `key=value` rendering for the metrics sidecar.
    pub fn to_sidecar(&self) -> String {
        let reliability = match self.reliability {
            Some(r) => format!("{r}"),
            None => "no-data".to_string(),
        };
        format!(
            "gates_before={}\ngates_after={}\nswaps_added={}\ndirection_fixes={}\ndepth_cycles={}\nreliability={}\n",
            self.gates_before,
            self.gates_after,
            self.swaps_added,
            self.direction_fixes,
            self.depth_cycles,
            reliability
        )
    }
}

/// Compute metrics for a finished mapping run. `final_circuit` is the fully
/// native output whose gates the reliability product ranges over.
pub fn metrics(
    original: &Circuit,
    routed: &RoutedResult,
    final_circuit: &Circuit,
    schedule: &Schedule,
    device: &Device,
) -> MetricsReport {
    let reliability = if device.has_error_data() {
        let mut product = 1.0f64;
        for gate in final_circuit.gates() {
            if let Some(eps) = device.error_rate(gate.kind) {
                product *= 1.0 - eps;
            }
        }
        Some(product)
    } else {
        None
    };
    MetricsReport {
        gates_before: original.len(),
        gates_after: final_circuit.len(),
        swaps_added: routed.swaps_added,
        direction_fixes: routed.direction_fixes,
        depth_cycles: schedule.depth(),
        reliability,
    }
}
