//! Seeded property tests for the spec-level invariants that span modules.

mod common;

use common::{corpus_circuit, qx4, surface17};
use qcmap_core::unitary::compose_sequence;
use qcmap_core::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn parse_print_round_trip_on_random_circuits() {
    for seed in 0..200 {
        let circuit = corpus_circuit(seed, 8);
        let text = print_circuit(&circuit);
        let back = parse_circuit(&text).unwrap_or_else(|e| panic!("seed {seed}: {e}\n{text}"));
        assert_eq!(back, circuit, "seed {seed}");
        for (a, b) in back.gates().iter().zip(circuit.gates()) {
            for (x, y) in a.params.iter().zip(&b.params) {
                assert_eq!(x.to_bits(), y.to_bits(), "seed {seed}: angle drift");
            }
        }
    }
}

#[test]
fn dependency_graph_preserves_gates_and_qubit_order() {
    for seed in 0..100 {
        let circuit = corpus_circuit(seed, 8);
        let graph = DependencyGraph::build(&circuit);
        assert_eq!(graph.node_count(), circuit.len(), "seed {seed}: gate lost or duplicated");
        // every per-qubit consecutive pair must be an edge
        let mut last: Vec<Option<usize>> = vec![None; circuit.qubit_count()];
        for (j, gate) in circuit.gates().iter().enumerate() {
            for &q in &gate.qubits {
                if let Some(i) = last[q] {
                    assert!(
                        graph.successors(i).contains(&j),
                        "seed {seed}: missing dependency {i} -> {j} on q{q}"
                    );
                }
                last[q] = Some(j);
            }
        }
    }
}

#[test]
fn distance_is_a_metric_on_shipped_devices() {
    for device in [qx4(), surface17()] {
        let n = device.qubit_count();
        for i in 0..n {
            for j in 0..n {
                let dij = device.distance(i, j).unwrap();
                assert_eq!(dij == 0, i == j, "{}: zero iff equal", device.name());
                assert_eq!(dij, device.distance(j, i).unwrap(), "{}: symmetry", device.name());
                assert_eq!(
                    dij == 1,
                    device.are_coupled(i, j).unwrap() != Coupling::No,
                    "{}: distance one iff coupled ({i},{j})",
                    device.name()
                );
                for k in 0..n {
                    let dik = device.distance(i, k).unwrap();
                    let dkj = device.distance(k, j).unwrap();
                    assert!(dij <= dik + dkj, "{}: triangle inequality", device.name());
                }
            }
        }
    }
}

#[test]
fn coupling_direction_answers_are_consistent() {
    for device in [qx4(), surface17()] {
        let n = device.qubit_count();
        for i in 0..n {
            for j in 0..n {
                let forward = device.are_coupled(i, j).unwrap();
                let backward = device.are_coupled(j, i).unwrap();
                match forward {
                    Coupling::No => assert_eq!(backward, Coupling::No),
                    Coupling::Symmetric => assert_eq!(backward, Coupling::Symmetric),
                    Coupling::ForwardOnly => assert_eq!(backward, Coupling::ReverseOnly),
                    Coupling::ReverseOnly => assert_eq!(backward, Coupling::ForwardOnly),
                }
            }
        }
    }
}

#[test]
fn shortest_paths_hop_over_coupled_pairs() {
    for device in [qx4(), surface17()] {
        let n = device.qubit_count();
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                let path = device.shortest_path(i, j).unwrap();
                assert_eq!(path.len(), device.distance(i, j).unwrap() + 1);
                assert_eq!(path[0], i);
                assert_eq!(*path.last().unwrap(), j);
                for pair in path.windows(2) {
                    assert_ne!(
                        device.are_coupled(pair[0], pair[1]).unwrap(),
                        Coupling::No,
                        "{}: hop ({},{}) not coupled",
                        device.name(),
                        pair[0],
                        pair[1]
                    );
                }
            }
        }
    }
}

#[test]
fn shipped_device_frozen_facts() {
    let surf = surface17();
    assert_eq!(surf.qubit_count(), 17);
    assert_eq!(surf.edges().len(), 24);
    assert_eq!(surf.are_coupled(1, 5).unwrap(), Coupling::Symmetric);
    assert_eq!(surf.are_coupled(1, 7).unwrap(), Coupling::No);
    // hand-checked on the lattice: 1-4-7 is a shortest route
    assert_eq!(surf.distance(1, 7).unwrap(), 2);
    let path = surf.shortest_path(1, 7).unwrap();
    assert_eq!(path, vec![1, 4, 7]);

    let qx = qx4();
    assert_eq!(qx.qubit_count(), 5);
    assert_eq!(qx.edges().len(), 6);
    assert_eq!(qx.are_coupled(4, 3).unwrap(), Coupling::ForwardOnly);
    assert_eq!(qx.are_coupled(3, 4).unwrap(), Coupling::ReverseOnly);
    assert_eq!(qx.distance(0, 3).unwrap(), 2);
}

#[test]
fn shipped_device_files_round_trip() {
    for device in [qx4(), surface17()] {
        let reloaded = load_device(&device.to_text()).unwrap();
        assert_eq!(reloaded, device);
    }
}

#[test]
fn schedule_linearization_is_simulation_equivalent() {
    let device = surface17();
    for seed in 0..20u64 {
        let circuit = corpus_circuit(seed, 6);
        let out = map_circuit(&circuit, &device, PlacerStrategy::InteractionGreedy, &RouterConfig::default())
            .unwrap();
        // stable sort by start cycle
        let mut order: Vec<(u64, usize)> = out
            .schedule
            .gates()
            .iter()
            .enumerate()
            .map(|(i, sg)| (sg.start, i))
            .collect();
        order.sort_by_key(|&(start, i)| (start, i));
        let gates: Vec<Gate> =
            order.iter().map(|&(_, i)| out.schedule.gates()[i].gate.clone()).collect();
        let linearized = Circuit::new(out.final_circuit.qubit_count(), gates).unwrap();
        let eq = equivalent_with_initial(
            &circuit,
            &linearized,
            &out.routed.initial_placement,
            &out.routed.final_placement,
        )
        .unwrap();
        assert!(eq.equivalent, "seed {seed}: deficit {}", eq.max_deficit);
    }
}

#[test]
fn rewrite_rules_agree_under_simulation() {
    // A second, simulator-based route for the rule-table oracle: for every
    // rule, run source and target over all basis inputs and demand agreement
    // up to one shared global phase.
    let table = RuleTable::shipped();
    for rule in table.rules() {
        let arity = rule.source.arity();
        let params: Vec<f64> = (0..rule.source.param_count()).map(|i| 0.9 - 0.4 * i as f64).collect();
        let operands: Vec<usize> = (0..arity).collect();
        let source_gate = Gate::new(rule.source, operands.clone(), params.clone()).unwrap();
        let source_circuit = Circuit::new(arity, vec![source_gate]).unwrap();
        let target_circuit =
            Circuit::new(arity, rule.instantiate(&operands, &params)).unwrap();
        let dim = 1usize << arity;
        let mut phase: Option<num_complex::Complex64> = None;
        for basis in 0..dim {
            let a = simulate_basis(&source_circuit, basis).unwrap();
            let b = simulate_basis(&target_circuit, basis).unwrap();
            for (x, y) in a.amplitudes().iter().zip(b.amplitudes()) {
                if x.norm() < 1e-9 {
                    assert!(y.norm() < 1e-9, "{:?}: amplitude appeared", rule.source);
                    continue;
                }
                let ratio = y / x;
                match phase {
                    None => phase = Some(ratio),
                    Some(p) => assert!(
                        (ratio - p).norm() < 1e-9,
                        "{:?}: phase not global (|{}| vs |{}|)",
                        rule.source,
                        ratio,
                        p
                    ),
                }
            }
        }
        let p = phase.expect("some amplitude is nonzero");
        assert!((p.norm() - 1.0).abs() < 1e-9, "{:?}: phase not unimodular", rule.source);
        if rule.exact {
            assert!((p - num_complex::Complex64::new(1.0, 0.0)).norm() < 1e-9);
        }
    }
}

#[test]
fn reliability_never_increases_with_more_gates() {
    let device = qx4();
    let mut gates = Vec::new();
    let mut last = 1.0f64;
    for step in 0..6 {
        gates.push(Gate::cnot(1, 0));
        let circuit = Circuit::new(2, gates.clone()).unwrap();
        let out = map_circuit(&circuit, &device, PlacerStrategy::Identity, &RouterConfig::default())
            .unwrap();
        let reliability = out.metrics.reliability.expect("qx4 ships error data");
        assert!(reliability <= last + 1e-15, "step {step}");
        assert!(reliability > 0.0 && reliability <= 1.0);
        last = reliability;
    }
}

#[test]
fn routed_corpus_placements_stay_valid() {
    let device = surface17();
    for seed in 0..50u64 {
        let circuit = corpus_circuit(seed, 8);
        for strategy in [RouterStrategy::Naive, RouterStrategy::Lookahead] {
            let native = decompose_to_native(&circuit, &device).unwrap();
            let placement = initial_placement(&native, &device, PlacerStrategy::Identity).unwrap();
            let cfg = RouterConfig { strategy, ..RouterConfig::default() };
            let routed = route(&native, &device, &placement, &cfg).unwrap();
            assert!(routed.initial_placement.is_valid_for(circuit.qubit_count()));
            assert!(routed.final_placement.is_valid_for(circuit.qubit_count()));
        }
    }
}

#[test]
fn simulator_norm_and_composition_on_corpus() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for seed in 0..30u64 {
        let circuit = corpus_circuit(seed, 6);
        let input = StateVector::random(circuit.qubit_count(), &mut rng).unwrap();
        let output = simulate(&circuit, &input).unwrap();
        assert!((output.norm() - 1.0).abs() < 1e-10, "seed {seed}: norm drift");

        let split = circuit.len() / 2;
        let first = Circuit::new(circuit.qubit_count(), circuit.gates()[..split].to_vec());
        let second = Circuit::new(circuit.qubit_count(), circuit.gates()[split..].to_vec());
        let (Ok(first), Ok(second)) = (first, second) else {
            continue; // splitting can separate a measurement from its qubit's gates
        };
        let two_step = simulate(&second, &simulate(&first, &input).unwrap()).unwrap();
        assert!(output.fidelity(&two_step) > 1.0 - 1e-10, "seed {seed}: composition");
    }
}

#[test]
fn compose_and_simulate_agree_on_reverse_cnot() {
    let seq = reverse_cnot(0, 1);
    let matrix_route = compose_sequence(&seq, 2).unwrap();
    let direct = gate_unitary(&Gate::cnot(0, 1)).unwrap();
    assert!(matrix_route.max_norm_diff(&direct) < 1e-12);
}
