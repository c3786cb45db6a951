//! `qcmap`: map, check and simulate quantum circuits against device
//! descriptions.
//!
//! Exit codes for `map`: 0 success, 1 input/parse errors, 2 routing or
//! decomposition errors, 3 verification failure. `check` exits 0 when the
//! circuit satisfies every constraint, 1 on parse errors, 2 when violations
//! were found.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use qcmap_core::{
    check_constraints, equivalent_with_initial, load_device, map_circuit, native_expansion,
    parse_circuit, print_circuit, simulate, Circuit, CostMode, Device, GateKind, GateTemplate,
    ParamExpr, PlacerStrategy, RouterConfig, RouterStrategy, StateVector,
};

#[derive(Parser)]
#[command(name = "qcmap", version, about = "Quantum-circuit mapping toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum PlacerArg {
    Identity,
    Greedy,
}

#[derive(Clone, Copy, ValueEnum)]
enum RouterArg {
    Naive,
    Lookahead,
    Exact,
}

#[derive(Clone, Copy, ValueEnum)]
enum CostArg {
    Hops,
    Reliability,
}

#[derive(Subcommand)]
enum Command {
    /// Map a circuit onto a device: decompose, place, route and schedule.
    Map {
        #[arg(long, value_name = "FILE")]
        device: PathBuf,
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "greedy")]
        placer: PlacerArg,
        #[arg(long, value_enum, default_value = "lookahead")]
        router: RouterArg,
        #[arg(long, value_enum, default_value = "hops")]
        cost: CostArg,
        /// Lookahead weight for frontier gates.
        #[arg(long, default_value_t = 1.0)]
        w0: f64,
        /// Lookahead weight for windowed future gates.
        #[arg(long, default_value_t = 0.5)]
        w1: f64,
        /// Lookahead window size in two-qubit gates.
        #[arg(long, default_value_t = 20)]
        window: usize,
        /// Reserved for randomized tie-breaking; the shipped strategies are
        /// deterministic.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the mapped circuit here.
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
        /// Write the cycle-by-cycle schedule here.
        #[arg(long, value_name = "FILE")]
        schedule: Option<PathBuf>,
        /// Write the metrics sidecar here.
        #[arg(long, value_name = "FILE")]
        metrics: Option<PathBuf>,
        /// Check the mapped circuit against the original by simulation.
        #[arg(long)]
        verify: bool,
    },
    /// List every device-constraint violation in a circuit.
    Check {
        #[arg(long, value_name = "FILE")]
        device: PathBuf,
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
    },
    /// Simulate a circuit on a basis input and print the amplitudes.
    Sim {
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
        /// Basis input as a bitstring, qubit 0 rightmost. Defaults to all
        /// zeros.
        #[arg(long, value_name = "BITS")]
        state: Option<String>,
    },
    /// List the device files in a directory.
    Devices {
        dir: PathBuf,
    },
    /// Dump the rewrite rules a device's native set selects.
    Rules {
        #[arg(long, value_name = "FILE")]
        device: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Map {
            device,
            input,
            placer,
            router,
            cost,
            w0,
            w1,
            window,
            seed,
            out,
            schedule,
            metrics,
            verify,
        } => cmd_map(MapArgs {
            device,
            input,
            placer,
            router,
            cost,
            w0,
            w1,
            window,
            seed,
            out,
            schedule,
            metrics,
            verify,
        }),
        Command::Check { device, input } => cmd_check(&device, &input),
        Command::Sim { input, state } => cmd_sim(&input, state.as_deref()),
        Command::Devices { dir } => cmd_devices(&dir),
        Command::Rules { device } => cmd_rules(&device),
    }
}

struct MapArgs {
    device: PathBuf,
    input: PathBuf,
    placer: PlacerArg,
    router: RouterArg,
    cost: CostArg,
    w0: f64,
    w1: f64,
    window: usize,
    seed: u64,
    out: Option<PathBuf>,
    schedule: Option<PathBuf>,
    metrics: Option<PathBuf>,
    verify: bool,
}

const EXIT_INPUT: u8 = 1;
const EXIT_ROUTING: u8 = 2;
const EXIT_VERIFY: u8 = 3;

fn fail(code: u8, message: impl std::fmt::Display) -> ExitCode {
    eprintln!("qcmap: {message}");
    ExitCode::from(code)
}

fn read_device(path: &Path) -> Result<Device, ExitCode> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| fail(EXIT_INPUT, format!("{}: {e}", path.display())))?;
    load_device(&text).map_err(|e| fail(EXIT_INPUT, format!("{}: {e}", path.display())))
}

fn read_circuit(path: &Path) -> Result<Circuit, ExitCode> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| fail(EXIT_INPUT, format!("{}: {e}", path.display())))?;
    parse_circuit(&text).map_err(|e| fail(EXIT_INPUT, format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, contents: &str) -> Result<(), ExitCode> {
    std::fs::write(path, contents)
        .map_err(|e| fail(EXIT_INPUT, format!("{}: {e}", path.display())))
}

fn cmd_map(args: MapArgs) -> ExitCode {
    let device = match read_device(&args.device) {
        Ok(d) => d,
        Err(code) => return code,
    };
    let circuit = match read_circuit(&args.input) {
        Ok(c) => c,
        Err(code) => return code,
    };

    let placer = match args.placer {
        PlacerArg::Identity => PlacerStrategy::Identity,
        PlacerArg::Greedy => PlacerStrategy::InteractionGreedy,
    };
    let config = RouterConfig {
        strategy: match args.router {
            RouterArg::Naive => RouterStrategy::Naive,
            RouterArg::Lookahead => RouterStrategy::Lookahead,
            RouterArg::Exact => RouterStrategy::Exact,
        },
        w0: args.w0,
        w1: args.w1,
        window: args.window,
        cost: match args.cost {
            CostArg::Hops => CostMode::Hops,
            CostArg::Reliability => CostMode::Reliability,
        },
        seed: args.seed,
        ..RouterConfig::default()
    };

    let result = match map_circuit(&circuit, &device, placer, &config) {
        Ok(r) => r,
        Err(e) => return fail(EXIT_ROUTING, e),
    };

    if let Some(path) = &args.out {
        let router_name = match args.router {
            RouterArg::Naive => "naive",
            RouterArg::Lookahead => "lookahead",
            RouterArg::Exact => "exact",
        };
        let header = format!(
            "# mapped by qcmap: device={} router={} placer={}\n",
            device.name(),
            router_name,
            match args.placer {
                PlacerArg::Identity => "identity",
                PlacerArg::Greedy => "greedy",
            },
        );
        if let Err(code) = write_file(path, &format!("{header}{}", print_circuit(&result.final_circuit)))
        {
            return code;
        }
    }
    if let Some(path) = &args.schedule {
        if let Err(code) = write_file(path, &result.schedule.dump()) {
            return code;
        }
    }
    if let Some(path) = &args.metrics {
        if let Err(code) = write_file(path, &result.metrics.to_sidecar()) {
            return code;
        }
    }

    print!("{}", result.metrics.to_sidecar());

    if args.verify {
        let eq = match equivalent_with_initial(
            &circuit,
            &result.final_circuit,
            &result.routed.initial_placement,
            &result.routed.final_placement,
        ) {
            Ok(eq) => eq,
            Err(e) => return fail(EXIT_INPUT, format!("cannot verify: {e}")),
        };
        if !eq.equivalent {
            return fail(
                EXIT_VERIFY,
                format!("verification failed: fidelity deficit {:.3e}", eq.max_deficit),
            );
        }
        println!("verify=ok");
    }
    ExitCode::SUCCESS
}

fn cmd_check(device_path: &Path, input_path: &Path) -> ExitCode {
    let device = match read_device(device_path) {
        Ok(d) => d,
        Err(code) => return code,
    };
    let circuit = match read_circuit(input_path) {
        Ok(c) => c,
        Err(code) => return code,
    };
    let violations = check_constraints(&circuit, &device);
    for v in &violations {
        println!("{v}");
    }
    if violations.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_ROUTING)
    }
}

fn cmd_sim(input_path: &Path, state: Option<&str>) -> ExitCode {
    let circuit = match read_circuit(input_path) {
        Ok(c) => c,
        Err(code) => return code,
    };
    let n = circuit.qubit_count();
    let index = match state {
        None => 0usize,
        Some(bits) => {
            if bits.len() != n || !bits.bytes().all(|b| b == b'0' || b == b'1') {
                return fail(
                    EXIT_INPUT,
                    format!("--state must be a {n}-character bitstring (qubit 0 rightmost)"),
                );
            }
            usize::from_str_radix(bits, 2).unwrap()
        }
    };
    let input = match StateVector::basis(n, index) {
        Ok(sv) => sv,
        Err(e) => return fail(EXIT_INPUT, e),
    };
    let output = match simulate(&circuit, &input) {
        Ok(sv) => sv,
        Err(e) => return fail(EXIT_INPUT, e),
    };
    for (idx, amp) in output.amplitudes().iter().enumerate() {
        if amp.norm() <= 1e-12 {
            continue;
        }
        let bits: String = (0..n).rev().map(|q| if idx >> q & 1 == 1 { '1' } else { '0' }).collect();
        println!("{bits} {:.15} {:.15}", amp.re, amp.im);
    }
    ExitCode::SUCCESS
}

fn cmd_devices(dir: &Path) -> ExitCode {
    let entries = match std::fs::read_dir(dir) {
        Ok(e) => e,
        Err(e) => return fail(EXIT_INPUT, format!("{}: {e}", dir.display())),
    };
    let mut paths: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().map(|x| x == "dev").unwrap_or(false))
        .collect();
    paths.sort();
    for path in paths {
        let text = match std::fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) => {
                eprintln!("qcmap: {}: {e}", path.display());
                continue;
            }
        };
        match load_device(&text) {
            Ok(d) => {
                let oneq: Vec<&str> = d.native_1q(0).iter().map(|k| k.mnemonic()).collect();
                let twoq = match d.native_2q() {
                    Some((kind, true)) => format!("{kind} symmetric"),
                    Some((kind, false)) => format!("{kind} directed"),
                    None => "none".to_string(),
                };
                println!(
                    "{} ({} qubits): 1q=[{}] 2q={} edges={} measurable={}/{}",
                    d.name(),
                    d.qubit_count(),
                    oneq.join(","),
                    twoq,
                    d.edges().len(),
                    d.measurable_count(),
                    d.qubit_count(),
                );
            }
            Err(e) => eprintln!("qcmap: {}: {e}", path.display()),
        }
    }
    ExitCode::SUCCESS
}

fn angle_text(v: f64) -> String {
    const NAMED: [(f64, &str); 7] = [
        (std::f64::consts::PI, "pi"),
        (-std::f64::consts::PI, "-pi"),
        (std::f64::consts::FRAC_PI_2, "pi/2"),
        (-std::f64::consts::FRAC_PI_2, "-pi/2"),
        (std::f64::consts::FRAC_PI_4, "pi/4"),
        (-std::f64::consts::FRAC_PI_4, "-pi/4"),
        (0.0, "0"),
    ];
    for (value, name) in NAMED {
        if v == value {
            return name.to_string();
        }
    }
    format!("{v}")
}

fn template_text(t: &GateTemplate, operand_names: &[&str], param_names: &[&str]) -> String {
    let mut s = t.kind.mnemonic().to_string();
    let params: Vec<String> = t
        .params
        .iter()
        .map(|p| match p {
            ParamExpr::Const(v) => angle_text(*v),
            ParamExpr::Source(i) => param_names[*i].to_string(),
        })
        .collect();
    if !params.is_empty() {
        s.push_str(&format!("({})", params.join(", ")));
    }
    let ops: Vec<&str> = t.operands.iter().map(|&i| operand_names[i]).collect();
    s.push(' ');
    s.push_str(&ops.join(","));
    s
}

fn cmd_rules(device_path: &Path) -> ExitCode {
    let device = match read_device(device_path) {
        Ok(d) => d,
        Err(code) => return code,
    };
    println!("# rewrite rules selected for device {}", device.name());
    for kind in qcmap_core::gate::ALL_KINDS {
        let operand_names: &[&str] = if kind.arity() == 2 { &["a", "b"] } else { &["q"] };
        let param_names: &[&str] = match kind {
            GateKind::U3 => &["theta", "phi", "lambda"],
            _ => &["theta"],
        };
        let mut head = kind.mnemonic().to_string();
        if kind.param_count() > 0 {
            head.push_str(&format!("({})", param_names[..kind.param_count()].join(", ")));
        }
        head.push(' ');
        head.push_str(&operand_names.join(","));
        match native_expansion(kind, &device) {
            Ok(None) => println!("{head} -> native"),
            Ok(Some(templates)) => {
                let parts: Vec<String> = templates
                    .iter()
                    .map(|t| template_text(t, operand_names, param_names))
                    .collect();
                println!("{head} -> {}", parts.join("; "));
            }
            Err(_) => println!("{head} -> (no rule reaches this device's native set)"),
        }
    }
    ExitCode::SUCCESS
}
