//! Quantum-circuit mapping toolkit.
//!
//! Transforms hardware-agnostic circuits into device-compliant, scheduled
//! circuits for described quantum processors, and verifies the result by
//! state-vector simulation and constraint checking.
//!
//! The pipeline runs parse -> decompose -> place -> route -> expand swaps ->
//! schedule, with a simulator-backed equivalence oracle on the side:
//!
//! - [`circuit`]: circuit representation and the `.qc` text format
//! - [`dag`]: gate dependency graph with frontier tracking
//! - [`device`]: hardware descriptions and the `.dev` text format
//! - [`decompose`]: rewrite rules into native gate sets
//! - [`placement`] / [`route`]: initial placement and swap-based routing
//! - [`schedule`]: clock-cycle list scheduling and execution snapshots
//! - [`unitary`] / [`sim`]: gate matrices, simulation, equivalence checking
//! - [`check`]: device-constraint checking
//! - [`metrics`]: mapping cost reports
//! - [`pipeline`]: the glued end-to-end flow

pub mod check;
pub mod circuit;
pub mod dag;
pub mod decompose;
pub mod device;
pub mod error;
pub mod gate;
pub mod metrics;
pub mod pipeline;
pub mod placement;
pub mod route;
pub mod schedule;
pub mod sim;
pub mod unitary;

pub use check::{check_constraints, Violation, ViolationKind};
pub use circuit::{parse_circuit, print_circuit, Circuit};
pub use dag::{DependencyGraph, NodeStatus};
pub use decompose::{
    decompose_swap, decompose_to_native, native_expansion, reverse_cnot, GateTemplate, ParamExpr,
    RewriteRule, RuleTable,
};
pub use device::{load_device, ChannelScope, ControlChannel, Coupling, Device};
pub use error::{
    DecomposeError, DeviceError, ParseError, RouteError, ScheduleError, SimError,
};
pub use gate::{Gate, GateKind};
pub use metrics::{metrics, MetricsReport};
pub use pipeline::{finalize_routed, map_circuit, PipelineError, PipelineResult};
pub use placement::{apply_swap, initial_placement, PlacerStrategy, Placement};
pub use route::{fix_direction, route, CostMode, RoutedResult, RouterConfig, RouterStrategy};
pub use schedule::{
    compatible_gates, schedule_asap, schedule_asap_with, ExecutionSnapshot, Schedule,
    ScheduledGate, Scheduler,
};
pub use sim::{
    equivalent, equivalent_with_initial, simulate, simulate_basis, Equivalence, StateVector,
};
pub use unitary::{gate_unitary, Matrix};
