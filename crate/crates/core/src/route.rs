//! Qubit routing: initial layout selection and SWAP insertion for fixed
//! coupling maps.
//!
//! The heuristic router runs independent randomised trials. Each trial draws
//! a biased initial layout (the most-interacting logical qubit lands on a
//! max-degree physical qubit, the rest greedily next to their interaction
//! partners), then walks the gate list in order, inserting SWAPs along
//! shortest paths; candidate SWAPs are scored over a decaying lookahead
//! window of upcoming two-qubit gates. A memoised exhaustive search doubles
//! as an optimality oracle at toy sizes.

use alloc::borrow::ToOwned;
use alloc::collections::{BTreeMap, VecDeque};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::circuit::{Circuit, GateInstance};
use crate::error::Error;
use crate::math::derive_seed;
use crate::transpile::{transpile, NativeGateSet};

/// Lookahead window of upcoming two-qubit gates scored per candidate SWAP.
const LOOKAHEAD_WINDOW: usize = 8;
/// Geometric weight applied to successive lookahead gates.
const LOOKAHEAD_DECAY: f64 = 0.5;

/// Undirected connectivity graph of a physical device.
#[derive(Debug, Clone, PartialEq)]
pub struct CouplingMap {
    name: String,
    qubit_count: usize,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
}

impl CouplingMap {
    /// Builds a map after validating indices, self-loops and connectivity.
    pub fn new(name: &str, qubit_count: usize, edges: &[(usize, usize)]) -> Result<Self, Error> {
        let mut normalized: Vec<(usize, usize)> = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            if u == v {
                return Err(Error::Structural(format!("self-loop on qubit {u}")));
            }
            if u >= qubit_count || v >= qubit_count {
                return Err(Error::Structural(format!(
                    "edge ({u}, {v}) out of range for {qubit_count} qubits"
                )));
            }
            normalized.push((u.min(v), u.max(v)));
        }
        normalized.sort_unstable();
        normalized.dedup();
        let mut adjacency = vec![Vec::new(); qubit_count];
        for &(u, v) in &normalized {
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        let map = CouplingMap {
            name: name.to_owned(),
            qubit_count,
            edges: normalized,
            adjacency,
        };
        if !map.is_connected() {
            return Err(Error::Structural(format!(
                "coupling map '{name}' is not connected"
            )));
        }
        Ok(map)
    }

    /// Complete graph on `qubit_count` qubits (all-to-all connectivity).
    pub fn complete(qubit_count: usize) -> Self {
        let mut edges = Vec::new();
        for u in 0..qubit_count {
            for v in u + 1..qubit_count {
                edges.push((u, v));
            }
        }
        Self::new(&format!("all-to-all({qubit_count})"), qubit_count, &edges)
            .expect("complete graph is valid")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn qubit_count(&self) -> usize {
        self.qubit_count
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, q: usize) -> &[usize] {
        &self.adjacency[q]
    }

    pub fn degree(&self, q: usize) -> usize {
        self.adjacency[q].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    fn is_connected(&self) -> bool {
        if self.qubit_count == 0 {
            return false;
        }
        let mut seen = vec![false; self.qubit_count];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        let mut reached = 1;
        while let Some(u) = queue.pop_front() {
            for &v in &self.adjacency[u] {
                if !seen[v] {
                    seen[v] = true;
                    reached += 1;
                    queue.push_back(v);
                }
            }
        }
        reached == self.qubit_count
    }

    /// All-pairs shortest-path distances by BFS.
    pub fn distance_matrix(&self) -> Vec<Vec<u32>> {
        let n = self.qubit_count;
        let mut dist = vec![vec![u32::MAX; n]; n];
        for (start, row) in dist.iter_mut().enumerate() {
            row[start] = 0;
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for &v in &self.adjacency[u] {
                    if row[v] == u32::MAX {
                        row[v] = row[u] + 1;
                        queue.push_back(v);
                    }
                }
            }
        }
        dist
    }
}

/// Parses the plain-text map format: line 1 `name qubit_count`, then one
/// `u v` edge per line; `#` starts a comment.
pub fn parse_coupling_map(text: &str) -> Result<CouplingMap, Error> {
    let mut header: Option<(String, usize)> = None;
    let mut edges = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if header.is_none() {
            if fields.len() != 2 {
                return Err(Error::Structural(format!(
                    "coupling map line {}: expected 'name qubit_count'",
                    lineno + 1
                )));
            }
            let count = fields[1].parse::<usize>().map_err(|_| {
                Error::Structural(format!(
                    "coupling map line {}: invalid qubit count '{}'",
                    lineno + 1,
                    fields[1]
                ))
            })?;
            header = Some((fields[0].to_owned(), count));
        } else {
            if fields.len() != 2 {
                return Err(Error::Structural(format!(
                    "coupling map line {}: expected 'u v' edge",
                    lineno + 1
                )));
            }
            let parse = |s: &str| {
                s.parse::<usize>().map_err(|_| {
                    Error::Structural(format!(
                        "coupling map line {}: invalid qubit index '{s}'",
                        lineno + 1
                    ))
                })
            };
            edges.push((parse(fields[0])?, parse(fields[1])?));
        }
    }
    let (name, count) =
        header.ok_or_else(|| Error::Structural("coupling map file is empty".into()))?;
    CouplingMap::new(&name, count, &edges)
}

/// Built-in device topologies: `yorktown`, `tokyo`, `cairo` and
/// `all-to-all(k)`.
pub fn builtin_coupling_map(name: &str) -> Result<CouplingMap, Error> {
    match name {
        // Bow-tie: two triangles sharing the centre qubit 2.
        "yorktown" => CouplingMap::new(
            "yorktown",
            5,
            &[(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)],
        ),
        "tokyo" => parse_coupling_map(include_str!("../data/tokyo.map")),
        "cairo" => parse_coupling_map(include_str!("../data/cairo.map")),
        other => {
            if let Some(rest) = other
                .strip_prefix("all-to-all(")
                .and_then(|s| s.strip_suffix(')'))
            {
                let k = rest
                    .parse::<usize>()
                    .map_err(|_| Error::Lookup(format!("invalid all-to-all size '{rest}'")))?;
                if k == 0 {
                    return Err(Error::Lookup("all-to-all size must be positive".into()));
                }
                Ok(CouplingMap::complete(k))
            } else {
                Err(Error::Lookup(format!(
                    "unknown coupling map '{other}' (expected yorktown, tokyo, cairo or all-to-all(k))"
                )))
            }
        }
    }
}

/// Bijection from logical qubits to physical qubits. Logical indices at or
/// above the source circuit width are idle fillers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Layout {
    to_physical: Vec<usize>,
}

impl Layout {
    fn new(to_physical: Vec<usize>) -> Self {
        Layout { to_physical }
    }

    pub fn physical(&self, logical: usize) -> usize {
        self.to_physical[logical]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.to_physical
    }
}

/// Result of routing: the SWAP-inserted circuit over physical qubits, the
/// layouts bracketing it, and the winning trial's statistics.
#[derive(Debug, Clone, PartialEq)]
pub struct RoutedCircuit {
    pub circuit: Circuit,
    pub initial_layout: Layout,
    pub final_layout: Layout,
    pub swap_count: usize,
    pub seed: u64,
}

struct TrialState {
    phys_of: Vec<usize>,
    logical_at: Vec<usize>,
}

impl TrialState {
    fn swap_physical(&mut self, a: usize, b: usize) {
        let (la, lb) = (self.logical_at[a], self.logical_at[b]);
        self.logical_at.swap(a, b);
        self.phys_of[la] = b;
        self.phys_of[lb] = a;
    }
}

fn pick<'a, T>(rng: &mut ChaCha8Rng, items: &'a [T]) -> &'a T {
    &items[(rng.next_u64() % items.len() as u64) as usize]
}

/// Draws the biased initial layout for one trial: logical qubits in
/// descending interaction order (ties to the higher index, which is the
/// objective qubit in the estimation circuits), first on a random max-degree
/// physical qubit, the rest on unused qubits adjacent to as many of their
/// already-placed interaction partners as possible.
fn biased_layout(
    device: &CouplingMap,
    width: usize,
    interactions: &[usize],
    partners: &[Vec<usize>],
    rng: &mut ChaCha8Rng,
) -> TrialState {
    let d = device.qubit_count();
    let mut order: Vec<usize> = (0..width).collect();
    order.sort_by_key(|&l| core::cmp::Reverse((interactions[l], l)));

    let mut phys_of = vec![usize::MAX; d];
    let mut used = vec![false; d];
    for (rank, &logical) in order.iter().enumerate() {
        let candidates: Vec<usize> = if rank == 0 {
            let max_degree = (0..d).map(|q| device.degree(q)).max().unwrap_or(0);
            (0..d).filter(|&q| device.degree(q) == max_degree).collect()
        } else {
            let score = |q: usize| {
                partners[logical]
                    .iter()
                    .filter(|&&m| phys_of[m] != usize::MAX && device.has_edge(q, phys_of[m]))
                    .count()
            };
            let free: Vec<usize> = (0..d).filter(|&q| !used[q]).collect();
            let best = free.iter().map(|&q| score(q)).max().unwrap();
            free.into_iter().filter(|&q| score(q) == best).collect()
        };
        let choice = *pick(rng, &candidates);
        phys_of[logical] = choice;
        used[choice] = true;
    }
    // Idle fillers occupy the remaining physical qubits in ascending order.
    let mut next = width;
    for (q, &taken) in used.iter().enumerate() {
        if !taken {
            phys_of[next] = q;
            next += 1;
        }
    }
    let mut logical_at = vec![usize::MAX; d];
    for (l, &p) in phys_of.iter().enumerate() {
        logical_at[p] = l;
    }
    TrialState {
        phys_of,
        logical_at,
    }
}

/// Uniform random injective placement, for the exploratory half of the trial
/// portfolio: the bias above provably misses some optimal schedules (it pins
/// the anchor qubit to a hub the optimum may need for someone else).
fn random_layout(device: &CouplingMap, rng: &mut ChaCha8Rng) -> TrialState {
    let d = device.qubit_count();
    let mut slots: Vec<usize> = (0..d).collect();
    for i in (1..d).rev() {
        let j = (rng.next_u64() % (i as u64 + 1)) as usize;
        slots.swap(i, j);
    }
    let mut logical_at = vec![usize::MAX; d];
    for (l, &p) in slots.iter().enumerate() {
        logical_at[p] = l;
    }
    TrialState {
        phys_of: slots,
        logical_at,
    }
}

struct TrialResult {
    circuit: Circuit,
    initial: Vec<usize>,
    final_: Vec<usize>,
    swap_count: usize,
}

#[allow(clippy::too_many_arguments)]
fn run_trial(
    c: &Circuit,
    device: &CouplingMap,
    dist: &[Vec<u32>],
    twoq: &[(usize, usize)],
    interactions: &[usize],
    partners: &[Vec<usize>],
    exploratory: bool,
    rng: &mut ChaCha8Rng,
) -> TrialResult {
    let mut state = if exploratory {
        random_layout(device, rng)
    } else {
        biased_layout(device, c.width(), interactions, partners, rng)
    };
    let initial = state.phys_of.clone();
    let mut out = Circuit::new(device.qubit_count(), c.classical_width());
    let mut swap_count = 0usize;
    let mut next_twoq = 0usize;

    for g in c.gates() {
        if g.kind.qubit_arity() == 1 {
            let mut mapped = g.clone();
            mapped.qubits[0] = state.phys_of[g.qubits[0]];
            out.push(mapped).expect("mapped gate is valid");
            continue;
        }
        let (la, lb) = (g.qubits[0], g.qubits[1]);
        loop {
            let (pa, pb) = (state.phys_of[la], state.phys_of[lb]);
            if dist[pa][pb] <= 1 {
                break;
            }
            // Candidate SWAPs: edges off either endpoint that strictly
            // shorten the remaining path for the gate at the front.
            let mut best_score = f64::INFINITY;
            let mut best: Vec<(usize, usize)> = Vec::new();
            for &x in &[pa, pb] {
                let other = if x == pa { pb } else { pa };
                for &nb in device.neighbors(x) {
                    if dist[nb][other] >= dist[x][other] {
                        continue;
                    }
                    let moved = |p: usize| {
                        if p == x {
                            nb
                        } else if p == nb {
                            x
                        } else {
                            p
                        }
                    };
                    let mut score = 0.0;
                    let mut weight = 1.0;
                    for &(qa, qb) in twoq.iter().skip(next_twoq).take(LOOKAHEAD_WINDOW) {
                        let da = moved(state.phys_of[qa]);
                        let db = moved(state.phys_of[qb]);
                        score += weight * dist[da][db] as f64;
                        weight *= LOOKAHEAD_DECAY;
                    }
                    if score < best_score - 1e-12 {
                        best_score = score;
                        best.clear();
                        best.push((x, nb));
                    } else if (score - best_score).abs() <= 1e-12 {
                        best.push((x, nb));
                    }
                }
            }
            let &(x, y) = pick(rng, &best);
            state.swap_physical(x, y);
            out.push(GateInstance::swap(x, y)).expect("swap is valid");
            swap_count += 1;
        }
        let mut mapped = g.clone();
        mapped.qubits[0] = state.phys_of[la];
        mapped.qubits[1] = state.phys_of[lb];
        out.push(mapped).expect("mapped gate is valid");
        next_twoq += 1;
    }

    TrialResult {
        circuit: out,
        initial,
        final_: state.phys_of,
        swap_count,
    }
}

/// Routes `c` onto `device`: best result over `trials` independent seeded
/// trials (minimal SWAP count, earliest trial on ties). Deterministic for a
/// fixed `(seed, trials)` pair.
pub fn route(
    c: &Circuit,
    device: &CouplingMap,
    seed: u64,
    trials: usize,
) -> Result<RoutedCircuit, Error> {
    if c.width() > device.qubit_count() {
        return Err(Error::Capacity(format!(
            "circuit width {} exceeds device '{}' with {} qubits",
            c.width(),
            device.name(),
            device.qubit_count()
        )));
    }
    if trials == 0 {
        return Err(Error::Domain("need at least one routing trial".into()));
    }
    let dist = device.distance_matrix();
    let twoq: Vec<(usize, usize)> = c
        .gates()
        .iter()
        .filter(|g| g.kind.is_two_qubit())
        .map(|g| (g.qubits[0], g.qubits[1]))
        .collect();
    let mut interactions = vec![0usize; c.width()];
    let mut partners: Vec<Vec<usize>> = vec![Vec::new(); c.width()];
    for &(a, b) in &twoq {
        interactions[a] += 1;
        interactions[b] += 1;
        if !partners[a].contains(&b) {
            partners[a].push(b);
        }
        if !partners[b].contains(&a) {
            partners[b].push(a);
        }
    }

    let mut best: Option<TrialResult> = None;
    for trial in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, trial as u64));
        // Even trials use the biased draw, odd trials the uniform one.
        let exploratory = trial % 2 == 1;
        let result = run_trial(
            c,
            device,
            &dist,
            &twoq,
            &interactions,
            &partners,
            exploratory,
            &mut rng,
        );
        if best
            .as_ref()
            .map(|b| result.swap_count < b.swap_count)
            .unwrap_or(true)
        {
            best = Some(result);
        }
    }
    let best = best.expect("at least one trial ran");
    Ok(RoutedCircuit {
        circuit: best.circuit,
        initial_layout: Layout::new(best.initial),
        final_layout: Layout::new(best.final_),
        swap_count: best.swap_count,
        seed,
    })
}

/// Native two-qubit total of a routed circuit: the census of its
/// transpilation, i.e. unrouted native count plus three entanglers per SWAP.
pub fn routed_two_qubit_count(r: &RoutedCircuit, target: &NativeGateSet) -> usize {
    transpile(&r.circuit, target).count_two_qubit_gates()
}

/// Exhaustive minimal SWAP count over every initial placement and SWAP
/// schedule, for toy sizes. States are (placement, gates consumed) pairs
/// explored breadth-first with memoisation; idle placements are collapsed.
pub fn brute_force_route(c: &Circuit, device: &CouplingMap) -> Result<usize, Error> {
    const MAX_DEVICE: usize = 6;
    const MAX_GATES: usize = 12;
    if device.qubit_count() > MAX_DEVICE {
        return Err(Error::Capability(format!(
            "exhaustive routing limited to {MAX_DEVICE} device qubits, got {}",
            device.qubit_count()
        )));
    }
    let twoq: Vec<(usize, usize)> = c
        .gates()
        .iter()
        .filter(|g| g.kind.is_two_qubit())
        .map(|g| (g.qubits[0], g.qubits[1]))
        .collect();
    if twoq.len() > MAX_GATES {
        return Err(Error::Capability(format!(
            "exhaustive routing limited to {MAX_GATES} two-qubit gates, got {}",
            twoq.len()
        )));
    }
    if c.width() > device.qubit_count() {
        return Err(Error::Capacity(format!(
            "circuit width {} exceeds device '{}'",
            c.width(),
            device.name()
        )));
    }
    if twoq.is_empty() {
        return Ok(0);
    }

    const IDLE: u8 = u8::MAX;
    let d = device.qubit_count();
    let width = c.width();

    // placement[physical] = logical (IDLE for unused); idle identity never
    // matters, so states collapse over it.
    let key = |placement: &[u8], idx: usize| -> u64 {
        let mut k = idx as u64;
        for &l in placement {
            k = (k << 8) | l as u64;
        }
        k
    };
    let advance = |placement: &[u8], mut idx: usize| -> usize {
        let mut phys = [0usize; MAX_DEVICE];
        for (p, &l) in placement.iter().enumerate() {
            if l != IDLE {
                phys[l as usize] = p;
            }
        }
        while idx < twoq.len() {
            let (a, b) = twoq[idx];
            if device.has_edge(phys[a], phys[b]) {
                idx += 1;
            } else {
                break;
            }
        }
        idx
    };

    let mut queue: VecDeque<(Vec<u8>, usize)> = VecDeque::new();
    let mut cost: BTreeMap<u64, usize> = BTreeMap::new();

    // Every injective placement of the circuit qubits, via counting over
    // arrangements (d ≤ 6 keeps this tiny).
    let mut stack: Vec<Vec<u8>> = vec![vec![IDLE; d]];
    for logical in 0..width {
        let mut next_stack = Vec::new();
        for partial in &stack {
            for p in 0..d {
                if partial[p] == IDLE {
                    let mut extended = partial.clone();
                    extended[p] = logical as u8;
                    next_stack.push(extended);
                }
            }
        }
        stack = next_stack;
    }
    let mut best = usize::MAX;
    for placement in stack {
        let idx = advance(&placement, 0);
        if idx == twoq.len() {
            return Ok(0);
        }
        if let alloc::collections::btree_map::Entry::Vacant(slot) = cost.entry(key(&placement, idx))
        {
            slot.insert(0);
            queue.push_back((placement, idx));
        }
    }

    // Uniform-cost BFS: every transition is one SWAP.
    let mut frontier_cost = 0usize;
    while !queue.is_empty() && best == usize::MAX {
        frontier_cost += 1;
        let layer: Vec<(Vec<u8>, usize)> = queue.drain(..).collect();
        for (placement, idx) in layer {
            for &(u, v) in device.edges() {
                let mut next = placement.clone();
                next.swap(u, v);
                let next_idx = advance(&next, idx);
                if next_idx == twoq.len() {
                    best = best.min(frontier_cost);
                    continue;
                }
                if let alloc::collections::btree_map::Entry::Vacant(slot) =
                    cost.entry(key(&next, next_idx))
                {
                    slot.insert(frontier_cost);
                    queue.push_back((next, next_idx));
                }
            }
        }
    }
    Ok(best)
}
