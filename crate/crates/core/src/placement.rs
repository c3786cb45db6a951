//! Program-to-physical qubit placement.
//!
//! A placement is an array with one entry per physical qubit: entry `k` holds
//! the program qubit currently occupying physical qubit `k`, or is free.

use crate::circuit::Circuit;
use crate::device::{Coupling, Device};
use crate::error::RouteError;

/// Placement of program qubits onto physical qubits. Slot `k` is `Some(p)`
/// when program qubit `p` occupies physical qubit `k`, `None` when free.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Placement {
    slots: Vec<Option<usize>>,
}

/// Initial placement strategies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlacerStrategy {
    /// Program qubit k starts on physical qubit k.
    Identity,
    /// Frequently interacting program pairs go to high-degree coupled
    /// physical pairs.
    InteractionGreedy,
}

impl Placement {
    /// All slots free.
    pub fn free(physical_count: usize) -> Placement {
        Placement { slots: vec![None; physical_count] }
    }

    /// Program qubit k on physical qubit k, remaining slots free.
    pub fn identity(program_count: usize, physical_count: usize) -> Option<Placement> {
        if program_count > physical_count {
            return None;
        }
        let slots = (0..physical_count)
            .map(|k| if k < program_count { Some(k) } else { None })
            .collect();
        Some(Placement { slots })
    }

    pub fn len(&self) -> usize {
        self.slots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slots.is_empty()
    }

    pub fn slots(&self) -> &[Option<usize>] {
        &self.slots
    }

    /// Program qubit occupying a physical slot, if any.
    pub fn program_at(&self, physical: usize) -> Option<usize> {
        self.slots[physical]
    }

    /// Physical slot currently holding a program qubit.
    pub fn physical_of(&self, program: usize) -> Option<usize> {
        self.slots.iter().position(|&s| s == Some(program))
    }

    /// Put a program qubit on a free physical slot.
    pub fn place(&mut self, program: usize, physical: usize) {
        debug_assert!(self.slots[physical].is_none(), "slot occupied");
        debug_assert!(self.physical_of(program).is_none(), "program qubit already placed");
        self.slots[physical] = Some(program);
    }

    /// Exchange two slots unconditionally (free slots exchange too).
    pub fn swap_slots(&mut self, i: usize, j: usize) {
        self.slots.swap(i, j);
    }

    /// True when every program qubit of `program_count` appears exactly once.
    pub fn is_valid_for(&self, program_count: usize) -> bool {
        let mut seen = vec![false; program_count];
        for p in self.slots.iter().flatten() {
            if *p >= program_count || seen[*p] {
                return false;
            }
            seen[*p] = true;
        }
        seen.iter().all(|&s| s)
    }
}

/// Exchange the contents of two coupled physical qubits.
pub fn apply_swap(p: &Placement, device: &Device, i: usize, j: usize) -> Result<Placement, RouteError> {
    match device.are_coupled(i, j) {
        Ok(Coupling::No) | Err(_) => Err(RouteError::NotCoupled { a: i, b: j }),
        Ok(_) => {
            let mut next = p.clone();
            next.swap_slots(i, j);
            Ok(next)
        }
    }
}

/// Choose an initial placement for a circuit on a device.
pub fn initial_placement(
    circuit: &Circuit,
    device: &Device,
    strategy: PlacerStrategy,
) -> Result<Placement, RouteError> {
    let n = circuit.qubit_count();
    let m = device.qubit_count();
    if n > m {
        return Err(RouteError::TooManyQubits {
            program: n,
            physical: m,
            device: device.name().to_string(),
        });
    }
    match strategy {
        PlacerStrategy::Identity => Ok(Placement::identity(n, m).unwrap()),
        PlacerStrategy::InteractionGreedy => Ok(greedy_placement(circuit, device)),
    }
}

fn greedy_placement(circuit: &Circuit, device: &Device) -> Placement {
    let n = circuit.qubit_count();
    let m = device.qubit_count();

    // Interaction counts over unordered program pairs.
    let mut counts: std::collections::BTreeMap<(usize, usize), usize> =
        std::collections::BTreeMap::new();
    for gate in circuit.gates() {
        if gate.arity() == 2 {
            let (a, b) = (gate.qubits[0].min(gate.qubits[1]), gate.qubits[0].max(gate.qubits[1]));
            *counts.entry((a, b)).or_insert(0) += 1;
        }
    }
    let mut program_pairs: Vec<((usize, usize), usize)> = counts.into_iter().collect();
    program_pairs.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));

    // Physical coupled pairs ranked by combined degree, then index.
    let degree: Vec<usize> = {
        let mut deg = vec![0usize; m];
        for e in device.edges() {
            deg[e.a] += 1;
            deg[e.b] += 1;
        }
        deg
    };
    let mut physical_pairs = device.edge_pairs();
    physical_pairs.sort_by(|&(a1, b1), &(a2, b2)| {
        (degree[a2] + degree[b2])
            .cmp(&(degree[a1] + degree[b1]))
            .then((a1, b1).cmp(&(a2, b2)))
    });

    let mut placement = Placement::free(m);
    for ((pa, pb), _) in &program_pairs {
        let placed_a = placement.physical_of(*pa);
        let placed_b = placement.physical_of(*pb);
        match (placed_a, placed_b) {
            (Some(_), Some(_)) => {}
            (None, None) => {
                // first free coupled pair in rank order
                if let Some(&(i, j)) = physical_pairs
                    .iter()
                    .find(|&&(i, j)| placement.program_at(i).is_none() && placement.program_at(j).is_none())
                {
                    placement.place(*pa, i);
                    placement.place(*pb, j);
                }
            }
            (Some(at), None) | (None, Some(at)) => {
                let unplaced = if placed_a.is_none() { *pa } else { *pb };
                // free neighbor of `at` with the highest degree, lowest index
                let mut best: Option<usize> = None;
                for e in device.edges() {
                    let nbr = if e.a == at {
                        e.b
                    } else if e.b == at {
                        e.a
                    } else {
                        continue;
                    };
                    if placement.program_at(nbr).is_some() {
                        continue;
                    }
                    best = match best {
                        None => Some(nbr),
                        Some(cur) => {
                            if (degree[nbr], std::cmp::Reverse(nbr))
                                > (degree[cur], std::cmp::Reverse(cur))
                            {
                                Some(nbr)
                            } else {
                                Some(cur)
                            }
                        }
                    };
                }
                if let Some(nbr) = best {
                    placement.place(unplaced, nbr);
                }
            }
        }
    }

    // Remaining program qubits fill the lowest free slots in index order.
    for p in 0..n {
        if placement.physical_of(p).is_none() {
            let slot = (0..m).find(|&k| placement.program_at(k).is_none()).unwrap();
            placement.place(p, slot);
        }
    }
    placement
}
