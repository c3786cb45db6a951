//! Hardware description: coupling graph, native gate sets, durations, error
//! rates, control channels and measurability, plus graph queries used by the
//! routers.
//!
//! Devices are loaded from a line-based text format:
//!
//! ```text
//! name ibm_qx4
//! qubits 5
//! edge q1 -> q0          # directed: control -> target
//! edge q1 -- q2          # undirected
//! gate1q u3              # device-wide; or "gate1q q3: rx ry" per qubit
//! gate2q cnot directed   # or "gate2q cz symmetric"
//! duration cnot 2        # integer cycles; defaults to 1
//! error cnot 0.02        # optional, in [0, 1)
//! channel mw0 1q: q0 q1  # optional shared control channel
//! measurable all         # or "measurable q0 q2 ..."
//! ```

use std::collections::BTreeMap;
use std::collections::BTreeSet;

use crate::error::DeviceError;
use crate::gate::{Gate, GateKind};

/// Coupling relation between an ordered pair of physical qubits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Coupling {
    No,
    /// Edge exists and either direction is allowed.
    Symmetric,
    /// Only `i -> j` (first argument as control) is allowed.
    ForwardOnly,
    /// Only `j -> i` is allowed.
    ReverseOnly,
}

/// A coupling-graph edge. `directed` means interactions may only use `a` as
/// control and `b` as target.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    pub a: usize,
    pub b: usize,
    pub directed: bool,
}

/// Scope of a shared control channel.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChannelScope {
    OneQubit,
    TwoQubit,
}

/// A shared control resource. Gates of the matching scope on the covered
/// qubits must drive the same waveform in any given cycle.
#[derive(Debug, Clone, PartialEq)]
pub struct ControlChannel {
    pub id: String,
    pub scope: ChannelScope,
    pub qubits: BTreeSet<usize>,
}

/// A quantum processor description. Immutable after loading.
#[derive(Debug, Clone)]
pub struct Device {
    name: String,
    qubit_count: usize,
    edges: Vec<Edge>,
    native_1q: Vec<BTreeSet<GateKind>>,
    native_2q: Option<(GateKind, bool)>,
    durations: BTreeMap<GateKind, u64>,
    error_rates: BTreeMap<GateKind, f64>,
    channels: Vec<ControlChannel>,
    measurable: Vec<bool>,
    // derived
    adjacency: Vec<Vec<usize>>,
    dist: Vec<Vec<usize>>,
}

impl PartialEq for Device {
    fn eq(&self, other: &Self) -> bool {
        let key = |d: &Device| {
            let mut edges: Vec<Edge> = d.edges.clone();
            edges.sort_by_key(|e| (e.a, e.b, e.directed));
            edges
        };
        self.name == other.name
            && self.qubit_count == other.qubit_count
            && key(self) == key(other)
            && self.native_1q == other.native_1q
            && self.native_2q == other.native_2q
            && self.durations == other.durations
            && self.error_rates == other.error_rates
            && self.channels == other.channels
            && self.measurable == other.measurable
    }
}

/// Everything needed to build a [`Device`] programmatically.
#[derive(Debug, Clone)]
pub struct DeviceSpec {
    pub name: String,
    pub qubit_count: usize,
    pub edges: Vec<Edge>,
    pub native_1q: Vec<BTreeSet<GateKind>>,
    pub native_2q: Option<(GateKind, bool)>,
    pub durations: BTreeMap<GateKind, u64>,
    pub error_rates: BTreeMap<GateKind, f64>,
    pub channels: Vec<ControlChannel>,
    pub measurable: Vec<bool>,
}

impl Device {
    /// Validate a [`DeviceSpec`] and derive the adjacency and distance tables.
    ///
    /// Unlike [`load_device`], this constructor does not default missing
    /// durations: every native gate kind must have one.
    pub fn from_spec(spec: DeviceSpec) -> Result<Device, DeviceError> {
        let n = spec.qubit_count;
        if n == 0 {
            return Err(DeviceError::Syntax { line: 0, reason: "device has no qubits".into() });
        }
        if spec.native_1q.len() != n || spec.measurable.len() != n {
            return Err(DeviceError::Syntax {
                line: 0,
                reason: "per-qubit tables must match the qubit count".into(),
            });
        }
        let mut seen_pairs: BTreeSet<(usize, usize)> = BTreeSet::new();
        for e in &spec.edges {
            if e.a >= n || e.b >= n {
                return Err(DeviceError::IndexOutOfRange {
                    qubit: e.a.max(e.b),
                    qubit_count: n,
                });
            }
            if e.a == e.b {
                return Err(DeviceError::Syntax {
                    line: 0,
                    reason: format!("self-loop edge on q{}", e.a),
                });
            }
            if !seen_pairs.insert((e.a.min(e.b), e.a.max(e.b))) {
                return Err(DeviceError::Syntax {
                    line: 0,
                    reason: format!("duplicate edge between q{} and q{}", e.a, e.b),
                });
            }
        }
        for ch in &spec.channels {
            if ch.qubits.is_empty() {
                return Err(DeviceError::Syntax {
                    line: 0,
                    reason: format!("channel {} covers no qubits", ch.id),
                });
            }
            if let Some(&q) = ch.qubits.iter().next_back() {
                if q >= n {
                    return Err(DeviceError::IndexOutOfRange { qubit: q, qubit_count: n });
                }
            }
        }
        for (&kind, &rate) in &spec.error_rates {
            if !(0.0..1.0).contains(&rate) {
                return Err(DeviceError::Syntax {
                    line: 0,
                    reason: format!("error rate for {kind} outside [0, 1)"),
                });
            }
        }

        // Every native kind needs a duration.
        let mut native_kinds: BTreeSet<GateKind> = BTreeSet::new();
        for set in &spec.native_1q {
            native_kinds.extend(set.iter().copied());
        }
        if let Some((kind, _)) = spec.native_2q {
            native_kinds.insert(kind);
        }
        if spec.measurable.iter().any(|&m| m) {
            native_kinds.insert(GateKind::Measure);
        }
        for &kind in &native_kinds {
            match spec.durations.get(&kind) {
                Some(&d) if d > 0 => {}
                Some(_) => {
                    return Err(DeviceError::Syntax {
                        line: 0,
                        reason: format!("duration for {kind} must be positive"),
                    })
                }
                None => return Err(DeviceError::MissingDuration { kind }),
            }
        }

        let mut adjacency: Vec<Vec<usize>> = vec![Vec::new(); n];
        for e in &spec.edges {
            adjacency[e.a].push(e.b);
            adjacency[e.b].push(e.a);
        }
        for nbrs in &mut adjacency {
            nbrs.sort_unstable();
        }

        let dist = all_pairs_bfs(n, &adjacency);
        if n > 1 && dist[0].contains(&usize::MAX) {
            return Err(DeviceError::DisconnectedGraph);
        }

        Ok(Device {
            name: spec.name,
            qubit_count: n,
            edges: spec.edges,
            native_1q: spec.native_1q,
            native_2q: spec.native_2q,
            durations: spec.durations,
            error_rates: spec.error_rates,
            channels: spec.channels,
            measurable: spec.measurable,
            adjacency,
            dist,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn qubit_count(&self) -> usize {
        self.qubit_count
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Undirected skeleton edges as ordered pairs `(min, max)`, sorted.
    pub fn edge_pairs(&self) -> Vec<(usize, usize)> {
        let mut pairs: Vec<(usize, usize)> =
            self.edges.iter().map(|e| (e.a.min(e.b), e.a.max(e.b))).collect();
        pairs.sort_unstable();
        pairs
    }

    pub fn native_1q(&self, qubit: usize) -> &BTreeSet<GateKind> {
        &self.native_1q[qubit]
    }

    pub fn native_2q(&self) -> Option<(GateKind, bool)> {
        self.native_2q
    }

    pub fn channels(&self) -> &[ControlChannel] {
        &self.channels
    }

    pub fn is_measurable(&self, qubit: usize) -> bool {
        self.measurable[qubit]
    }

    pub fn measurable_count(&self) -> usize {
        self.measurable.iter().filter(|&&m| m).count()
    }

    /// Duration in raw device cycles. Kinds without an entry default to 1.
    pub fn duration(&self, kind: GateKind) -> u64 {
        self.durations.get(&kind).copied().unwrap_or(1)
    }

    pub fn durations(&self) -> &BTreeMap<GateKind, u64> {
        &self.durations
    }

    pub fn error_rate(&self, kind: GateKind) -> Option<f64> {
        self.error_rates.get(&kind).copied()
    }

    pub fn has_error_data(&self) -> bool {
        !self.error_rates.is_empty()
    }

    /// Whether a gate is executable as-is (ignoring coupling and orientation):
    /// the kind is in the native set of each operand qubit. Gates referencing
    /// qubits beyond the device are never native.
    pub fn is_native(&self, gate: &Gate) -> bool {
        if gate.qubits.iter().any(|&q| q >= self.qubit_count) {
            return false;
        }
        match gate.kind {
            GateKind::Measure => self.measurable[gate.qubits[0]],
            k if k.arity() == 2 => self.native_2q.map(|(nk, _)| nk == k).unwrap_or(false),
            k => self.native_1q[gate.qubits[0]].contains(&k),
        }
    }

    /// Coupling relation for the ordered pair `(i, j)`.
    pub fn are_coupled(&self, i: usize, j: usize) -> Result<Coupling, DeviceError> {
        let n = self.qubit_count;
        if i >= n || j >= n {
            return Err(DeviceError::IndexOutOfRange { qubit: i.max(j), qubit_count: n });
        }
        if i == j {
            return Ok(Coupling::No);
        }
        for e in &self.edges {
            if e.a == i && e.b == j {
                return Ok(if e.directed { Coupling::ForwardOnly } else { Coupling::Symmetric });
            }
            if e.a == j && e.b == i {
                return Ok(if e.directed { Coupling::ReverseOnly } else { Coupling::Symmetric });
            }
        }
        Ok(Coupling::No)
    }

    /// Hop distance over the undirected skeleton.
    pub fn distance(&self, i: usize, j: usize) -> Result<usize, DeviceError> {
        let n = self.qubit_count;
        if i >= n || j >= n {
            return Err(DeviceError::IndexOutOfRange { qubit: i.max(j), qubit_count: n });
        }
        Ok(self.dist[i][j])
    }

    /// Precomputed all-pairs hop distances.
    pub fn distance_table(&self) -> &Vec<Vec<usize>> {
        &self.dist
    }

    /// Shortest path from `i` to `j` inclusive. Ties are broken by preferring
    /// the lowest-index predecessor at every BFS layer, which makes the result
    /// deterministic.
    pub fn shortest_path(&self, i: usize, j: usize) -> Result<Vec<usize>, DeviceError> {
        self.shortest_path_avoiding(i, j, &[])
    }

    /// Shortest path that avoids the `blocked` qubits (endpoints exempt).
    /// Returns `Ok(None)` when every path is blocked.
    pub fn shortest_path_avoiding(
        &self,
        i: usize,
        j: usize,
        blocked: &[bool],
    ) -> Result<Vec<usize>, DeviceError> {
        let n = self.qubit_count;
        if i >= n || j >= n {
            return Err(DeviceError::IndexOutOfRange { qubit: i.max(j), qubit_count: n });
        }
        let is_blocked = |q: usize| q != i && q != j && blocked.get(q).copied().unwrap_or(false);

        let mut dist = vec![usize::MAX; n];
        let mut parent = vec![usize::MAX; n];
        let mut queue = std::collections::VecDeque::new();
        dist[i] = 0;
        queue.push_back(i);
        while let Some(u) = queue.pop_front() {
            if u == j {
                break;
            }
            for &v in &self.adjacency[u] {
                if is_blocked(v) || dist[v] != usize::MAX {
                    continue;
                }
                dist[v] = dist[u] + 1;
                parent[v] = u;
                queue.push_back(v);
            }
        }
        if dist[j] == usize::MAX {
            return Err(DeviceError::DisconnectedGraph);
        }
        let mut path = vec![j];
        let mut cur = j;
        while cur != i {
            cur = parent[cur];
            path.push(cur);
        }
        path.reverse();
        Ok(path)
    }

    /// True when two gates scheduled in overlapping cycles conflict on a
    /// shared control channel. Gates driving the identical waveform (same
    /// kind, same parameters) may broadcast on one channel.
    pub fn channel_conflict(&self, a: &Gate, b: &Gate) -> bool {
        if a.same_waveform(b) {
            return false;
        }
        for ch in &self.channels {
            if gate_scope(a) != ch.scope || gate_scope(b) != ch.scope {
                continue;
            }
            let covers_a = a.qubits.iter().any(|q| ch.qubits.contains(q));
            let covers_b = b.qubits.iter().any(|q| ch.qubits.contains(q));
            if covers_a && covers_b {
                return true;
            }
        }
        false
    }

    /// Serialize back into the device language. Loading the output yields a
    /// device equal to `self`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("name {}\n", self.name));
        out.push_str(&format!("qubits {}\n", self.qubit_count));
        let mut edges = self.edges.clone();
        edges.sort_by_key(|e| (e.a, e.b));
        for e in &edges {
            let arrow = if e.directed { "->" } else { "--" };
            out.push_str(&format!("edge q{} {} q{}\n", e.a, arrow, e.b));
        }
        let uniform = self.native_1q.iter().all(|s| *s == self.native_1q[0]);
        if uniform {
            out.push_str(&format!("gate1q {}\n", kinds_list(&self.native_1q[0])));
        } else {
            for (q, set) in self.native_1q.iter().enumerate() {
                out.push_str(&format!("gate1q q{}: {}\n", q, kinds_list(set)));
            }
        }
        if let Some((kind, symmetric)) = self.native_2q {
            let flag = if symmetric { "symmetric" } else { "directed" };
            out.push_str(&format!("gate2q {kind} {flag}\n"));
        }
        for (kind, dur) in &self.durations {
            out.push_str(&format!("duration {kind} {dur}\n"));
        }
        for (kind, rate) in &self.error_rates {
            out.push_str(&format!("error {kind} {rate}\n"));
        }
        for ch in &self.channels {
            let scope = match ch.scope {
                ChannelScope::OneQubit => "1q",
                ChannelScope::TwoQubit => "2q",
            };
            let qs: Vec<String> = ch.qubits.iter().map(|q| format!("q{q}")).collect();
            out.push_str(&format!("channel {} {}: {}\n", ch.id, scope, qs.join(" ")));
        }
        if self.measurable.iter().all(|&m| m) {
            out.push_str("measurable all\n");
        } else if self.measurable.iter().any(|&m| m) {
            let qs: Vec<String> = self
                .measurable
                .iter()
                .enumerate()
                .filter(|(_, &m)| m)
                .map(|(q, _)| format!("q{q}"))
                .collect();
            out.push_str(&format!("measurable {}\n", qs.join(" ")));
        }
        out
    }
}

fn kinds_list(set: &BTreeSet<GateKind>) -> String {
    let v: Vec<&str> = set.iter().map(|k| k.mnemonic()).collect();
    v.join(" ")
}

fn gate_scope(g: &Gate) -> ChannelScope {
    if g.arity() == 2 {
        ChannelScope::TwoQubit
    } else {
        ChannelScope::OneQubit
    }
}

fn all_pairs_bfs(n: usize, adjacency: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut table = vec![vec![usize::MAX; n]; n];
    for start in 0..n {
        let dist = &mut table[start];
        dist[start] = 0;
        let mut queue = std::collections::VecDeque::new();
        queue.push_back(start);
        while let Some(u) = queue.pop_front() {
            for &v in &adjacency[u] {
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
            }
        }
    }
    table
}

fn parse_qubit_ref(token: &str, line: usize, n: usize) -> Result<usize, DeviceError> {
    let rest = token
        .strip_prefix('q')
        .or_else(|| token.strip_prefix('Q'))
        .ok_or_else(|| DeviceError::Syntax {
            line,
            reason: format!("expected qubit `q<digits>`, got `{token}`"),
        })?;
    let q: usize = rest.parse().map_err(|_| DeviceError::Syntax {
        line,
        reason: format!("expected qubit `q<digits>`, got `{token}`"),
    })?;
    if q >= n {
        return Err(DeviceError::IndexOutOfRange { qubit: q, qubit_count: n });
    }
    Ok(q)
}

fn parse_kind(token: &str, line: usize) -> Result<GateKind, DeviceError> {
    GateKind::from_mnemonic(token)
        .ok_or_else(|| DeviceError::UnknownGateKind { line, name: token.to_string() })
}

/// Parse device-language source into a [`Device`]. Native kinds without an
/// explicit `duration` line default to one cycle.
pub fn load_device(text: &str) -> Result<Device, DeviceError> {
    let mut name: Option<String> = None;
    let mut qubit_count: Option<usize> = None;
    let mut edges: Vec<Edge> = Vec::new();
    let mut native_1q: Vec<BTreeSet<GateKind>> = Vec::new();
    let mut native_2q: Option<(GateKind, bool)> = None;
    let mut durations: BTreeMap<GateKind, u64> = BTreeMap::new();
    let mut error_rates: BTreeMap<GateKind, f64> = BTreeMap::new();
    let mut channels: Vec<ControlChannel> = Vec::new();
    let mut measurable: Vec<bool> = Vec::new();

    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let stmt = match raw.find('#') {
            Some(pos) => raw[..pos].trim(),
            None => raw.trim(),
        };
        if stmt.is_empty() {
            continue;
        }
        let (head, rest) = match stmt.split_once(char::is_whitespace) {
            Some((h, r)) => (h.to_ascii_lowercase(), r.trim()),
            None => (stmt.to_ascii_lowercase(), ""),
        };

        let require_qubits = |line: usize| -> Result<usize, DeviceError> {
            qubit_count.ok_or(DeviceError::Syntax {
                line,
                reason: "`qubits <N>` must come first".into(),
            })
        };

        match head.as_str() {
            "name" => {
                if rest.is_empty() {
                    return Err(DeviceError::Syntax { line, reason: "missing device name".into() });
                }
                name = Some(rest.to_string());
            }
            "qubits" => {
                let n: usize = rest.parse().map_err(|_| DeviceError::Syntax {
                    line,
                    reason: format!("invalid qubit count `{rest}`"),
                })?;
                if n == 0 {
                    return Err(DeviceError::Syntax {
                        line,
                        reason: "device must have at least one qubit".into(),
                    });
                }
                qubit_count = Some(n);
                native_1q = vec![BTreeSet::new(); n];
                measurable = vec![false; n];
            }
            "edge" => {
                let n = require_qubits(line)?;
                let (kind, (left, right)) = if let Some((l, r)) = rest.split_once("->") {
                    (true, (l.trim(), r.trim()))
                } else if let Some((l, r)) = rest.split_once("--") {
                    (false, (l.trim(), r.trim()))
                } else {
                    return Err(DeviceError::Syntax {
                        line,
                        reason: "edge needs `->` or `--`".into(),
                    });
                };
                let a = parse_qubit_ref(left, line, n)?;
                let b = parse_qubit_ref(right, line, n)?;
                if a == b {
                    return Err(DeviceError::Syntax {
                        line,
                        reason: format!("self-loop edge on q{a}"),
                    });
                }
                if edges.iter().any(|e| (e.a.min(e.b), e.a.max(e.b)) == (a.min(b), a.max(b))) {
                    return Err(DeviceError::Syntax {
                        line,
                        reason: format!("duplicate edge between q{a} and q{b}"),
                    });
                }
                edges.push(Edge { a, b, directed: kind });
            }
            "gate1q" => {
                let n = require_qubits(line)?;
                if let Some((qpart, kinds_part)) = rest.split_once(':') {
                    let q = parse_qubit_ref(qpart.trim(), line, n)?;
                    let mut set = BTreeSet::new();
                    for tok in kinds_part.split_whitespace() {
                        let kind = parse_kind(tok, line)?;
                        check_1q_kind(kind, line)?;
                        set.insert(kind);
                    }
                    native_1q[q] = set;
                } else {
                    let mut set = BTreeSet::new();
                    for tok in rest.split_whitespace() {
                        let kind = parse_kind(tok, line)?;
                        check_1q_kind(kind, line)?;
                        set.insert(kind);
                    }
                    if set.is_empty() {
                        return Err(DeviceError::Syntax {
                            line,
                            reason: "gate1q lists no kinds".into(),
                        });
                    }
                    for qset in &mut native_1q {
                        *qset = set.clone();
                    }
                }
            }
            "gate2q" => {
                require_qubits(line)?;
                let mut it = rest.split_whitespace();
                let kind_tok = it.next().ok_or_else(|| DeviceError::Syntax {
                    line,
                    reason: "gate2q needs a kind".into(),
                })?;
                let kind = parse_kind(kind_tok, line)?;
                if kind.arity() != 2 {
                    return Err(DeviceError::Syntax {
                        line,
                        reason: format!("{kind} is not a two-qubit gate"),
                    });
                }
                let symmetric = match it.next() {
                    Some("directed") => false,
                    Some("symmetric") => true,
                    Some(other) => {
                        return Err(DeviceError::Syntax {
                            line,
                            reason: format!("expected `directed` or `symmetric`, got `{other}`"),
                        })
                    }
                    None => kind.is_symmetric(),
                };
                if native_2q.is_some() {
                    return Err(DeviceError::Syntax {
                        line,
                        reason: "duplicate gate2q declaration".into(),
                    });
                }
                native_2q = Some((kind, symmetric));
            }
            "duration" => {
                require_qubits(line)?;
                let mut it = rest.split_whitespace();
                let kind = parse_kind(
                    it.next().ok_or_else(|| DeviceError::Syntax {
                        line,
                        reason: "duration needs a gate kind".into(),
                    })?,
                    line,
                )?;
                let value: u64 = it
                    .next()
                    .ok_or_else(|| DeviceError::Syntax {
                        line,
                        reason: "missing duration value".into(),
                    })?
                    .parse()
                    .map_err(|_| DeviceError::Syntax {
                        line,
                        reason: "invalid duration value".into(),
                    })?;
                if value == 0 {
                    return Err(DeviceError::Syntax {
                        line,
                        reason: "duration must be positive".into(),
                    });
                }
                durations.insert(kind, value);
            }
            "error" => {
                require_qubits(line)?;
                let mut it = rest.split_whitespace();
                let kind = parse_kind(
                    it.next().ok_or_else(|| DeviceError::Syntax {
                        line,
                        reason: "error needs a gate kind".into(),
                    })?,
                    line,
                )?;
                let value: f64 = it
                    .next()
                    .ok_or_else(|| DeviceError::Syntax {
                        line,
                        reason: "missing error rate".into(),
                    })?
                    .parse()
                    .map_err(|_| DeviceError::Syntax {
                        line,
                        reason: "invalid error rate".into(),
                    })?;
                if !(0.0..1.0).contains(&value) {
                    return Err(DeviceError::Syntax {
                        line,
                        reason: "error rate must be in [0, 1)".into(),
                    });
                }
                error_rates.insert(kind, value);
            }
            "channel" => {
                let n = require_qubits(line)?;
                let (idscope, qubits_part) = rest.split_once(':').ok_or_else(|| {
                    DeviceError::Syntax { line, reason: "channel needs `: q...` list".into() }
                })?;
                let mut it = idscope.split_whitespace();
                let id = it
                    .next()
                    .ok_or_else(|| DeviceError::Syntax {
                        line,
                        reason: "channel needs an id".into(),
                    })?
                    .to_string();
                let scope = match it.next() {
                    Some("1q") => ChannelScope::OneQubit,
                    Some("2q") => ChannelScope::TwoQubit,
                    _ => {
                        return Err(DeviceError::Syntax {
                            line,
                            reason: "channel scope must be `1q` or `2q`".into(),
                        })
                    }
                };
                let mut qubits = BTreeSet::new();
                for tok in qubits_part.split_whitespace() {
                    qubits.insert(parse_qubit_ref(tok, line, n)?);
                }
                if qubits.is_empty() {
                    return Err(DeviceError::Syntax {
                        line,
                        reason: "channel covers no qubits".into(),
                    });
                }
                channels.push(ControlChannel { id, scope, qubits });
            }
            "measurable" => {
                let n = require_qubits(line)?;
                if rest == "all" {
                    measurable = vec![true; n];
                } else {
                    for tok in rest.split_whitespace() {
                        let q = parse_qubit_ref(tok, line, n)?;
                        measurable[q] = true;
                    }
                }
            }
            other => {
                return Err(DeviceError::Syntax {
                    line,
                    reason: format!("unknown directive `{other}`"),
                })
            }
        }
    }

    let name = name.ok_or(DeviceError::Syntax { line: 0, reason: "missing `name` line".into() })?;
    let qubit_count = qubit_count
        .ok_or(DeviceError::Syntax { line: 0, reason: "missing `qubits` line".into() })?;

    // Default duration: one cycle for every native kind.
    let mut native_kinds: BTreeSet<GateKind> = BTreeSet::new();
    for set in &native_1q {
        native_kinds.extend(set.iter().copied());
    }
    if let Some((kind, _)) = native_2q {
        native_kinds.insert(kind);
    }
    if measurable.iter().any(|&m| m) {
        native_kinds.insert(GateKind::Measure);
    }
    for kind in native_kinds {
        durations.entry(kind).or_insert(1);
    }

    Device::from_spec(DeviceSpec {
        name,
        qubit_count,
        edges,
        native_1q,
        native_2q,
        durations,
        error_rates,
        channels,
        measurable,
    })
}

fn check_1q_kind(kind: GateKind, line: usize) -> Result<(), DeviceError> {
    if kind.arity() != 1 || kind == GateKind::Measure {
        return Err(DeviceError::Syntax {
            line,
            reason: format!("{kind} cannot appear in gate1q"),
        });
    }
    Ok(())
}

/// Edge weights for reliability-aware routing: `-ln(1 - eps)` of the native
/// two-qubit gate when error data exists, one hop otherwise.
pub fn routing_edge_weight(device: &Device) -> f64 {
    match device.native_2q().and_then(|(kind, _)| device.error_rate(kind)) {
        Some(eps) => -(1.0 - eps).ln(),
        None => 1.0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOY: &str = "\
name toy
qubits 3
edge q0 -> q1
edge q1 -- q2
gate1q u3
gate2q cnot directed
duration cnot 2
error cnot 0.02
measurable all
";

    #[test]
    fn load_toy_device() {
        let d = load_device(TOY).unwrap();
        assert_eq!(d.name(), "toy");
        assert_eq!(d.qubit_count(), 3);
        assert_eq!(d.are_coupled(0, 1).unwrap(), Coupling::ForwardOnly);
        assert_eq!(d.are_coupled(1, 0).unwrap(), Coupling::ReverseOnly);
        assert_eq!(d.are_coupled(1, 2).unwrap(), Coupling::Symmetric);
        assert_eq!(d.are_coupled(0, 2).unwrap(), Coupling::No);
        assert_eq!(d.are_coupled(1, 1).unwrap(), Coupling::No);
        assert_eq!(d.duration(GateKind::Cnot), 2);
        assert_eq!(d.duration(GateKind::U3), 1);
        assert_eq!(d.error_rate(GateKind::Cnot), Some(0.02));
        assert!(d.is_measurable(2));
    }

    #[test]
    fn self_loop_rejected() {
        let err = load_device("name x\nqubits 2\nedge q0 -> q0\ngate1q u3\n").unwrap_err();
        assert!(matches!(err, DeviceError::Syntax { line: 3, .. }));
    }

    #[test]
    fn duplicate_edge_rejected() {
        let src = "name x\nqubits 2\nedge q0 -> q1\nedge q1 -> q0\ngate1q u3\n";
        assert!(matches!(load_device(src).unwrap_err(), DeviceError::Syntax { line: 4, .. }));
    }

    #[test]
    fn disconnected_rejected() {
        let src = "name x\nqubits 3\nedge q0 -- q1\ngate1q u3\n";
        assert_eq!(load_device(src).unwrap_err(), DeviceError::DisconnectedGraph);
    }

    #[test]
    fn unknown_kind_rejected() {
        let src = "name x\nqubits 2\nedge q0 -- q1\ngate1q toffoli\n";
        assert!(matches!(load_device(src).unwrap_err(), DeviceError::UnknownGateKind { .. }));
    }

    #[test]
    fn missing_duration_from_spec() {
        let spec = DeviceSpec {
            name: "x".into(),
            qubit_count: 2,
            edges: vec![Edge { a: 0, b: 1, directed: false }],
            native_1q: vec![BTreeSet::from([GateKind::H]); 2],
            native_2q: Some((GateKind::Cz, true)),
            durations: BTreeMap::from([(GateKind::H, 1)]),
            error_rates: BTreeMap::new(),
            channels: vec![],
            measurable: vec![false; 2],
        };
        assert_eq!(
            Device::from_spec(spec).unwrap_err(),
            DeviceError::MissingDuration { kind: GateKind::Cz }
        );
    }

    #[test]
    fn distance_and_paths() {
        let src = "name line\nqubits 4\nedge q0 -- q1\nedge q1 -- q2\nedge q2 -- q3\ngate1q rx ry\ngate2q cz symmetric\n";
        let d = load_device(src).unwrap();
        assert_eq!(d.distance(0, 0).unwrap(), 0);
        assert_eq!(d.distance(0, 1).unwrap(), 1);
        assert_eq!(d.distance(0, 3).unwrap(), 3);
        assert_eq!(d.shortest_path(0, 3).unwrap(), vec![0, 1, 2, 3]);
        assert_eq!(d.shortest_path(3, 0).unwrap(), vec![3, 2, 1, 0]);
        assert!(d.distance(0, 4).is_err());
    }

    #[test]
    fn path_tie_break_prefers_low_index() {
        // Diamond: 0-1, 0-2, 1-3, 2-3. Both 0-1-3 and 0-2-3 are shortest.
        let src = "name dia\nqubits 4\nedge q0 -- q1\nedge q0 -- q2\nedge q1 -- q3\nedge q2 -- q3\ngate1q rx\ngate2q cz symmetric\n";
        let d = load_device(src).unwrap();
        assert_eq!(d.shortest_path(0, 3).unwrap(), vec![0, 1, 3]);
    }

    #[test]
    fn blocked_path_detour() {
        let src = "name dia\nqubits 4\nedge q0 -- q1\nedge q0 -- q2\nedge q1 -- q3\nedge q2 -- q3\ngate1q rx\ngate2q cz symmetric\n";
        let d = load_device(src).unwrap();
        let mut blocked = vec![false; 4];
        blocked[1] = true;
        assert_eq!(d.shortest_path_avoiding(0, 3, &blocked).unwrap(), vec![0, 2, 3]);
        blocked[2] = true;
        assert!(d.shortest_path_avoiding(0, 3, &blocked).is_err());
    }

    #[test]
    fn channel_conflict_rules() {
        let src = "name c\nqubits 3\nedge q0 -- q1\nedge q1 -- q2\ngate1q x y\ngate2q cz symmetric\nchannel mw0 1q: q0 q1\n";
        let d = load_device(src).unwrap();
        // identical waveform broadcasts
        assert!(!d.channel_conflict(&Gate::x(0), &Gate::x(1)));
        // different kinds conflict
        assert!(d.channel_conflict(&Gate::x(0), &Gate::y(1)));
        // disjoint channels do not
        assert!(!d.channel_conflict(&Gate::x(0), &Gate::y(2)));
        // scope must match both gates
        assert!(!d.channel_conflict(&Gate::x(0), &Gate::cz(1, 2)));
    }

    #[test]
    fn serialize_round_trip() {
        let src = "name rt\nqubits 3\nedge q0 -> q1\nedge q1 -- q2\ngate1q q0: u3\ngate1q q1: rx ry\ngate1q q2: rx\ngate2q cnot directed\nduration cnot 3\nerror cnot 0.01\nchannel mw 1q: q0 q2\nmeasurable q1\n";
        let d = load_device(src).unwrap();
        let d2 = load_device(&d.to_text()).unwrap();
        assert_eq!(d, d2);
        let toy = load_device(TOY).unwrap();
        assert_eq!(toy, load_device(&toy.to_text()).unwrap());
    }
}
