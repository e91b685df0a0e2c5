//! Exact-rational circulations and integral rounding.
//!
//! Edge values are `numerator / D` with one shared positive denominator, so
//! conservation and `⌊·⌋`/`⌈·⌉` are integer operations. Parallel edges are
//! allowed; edges are identified by index.
//!
//! [`round_integral`] finds an integer circulation `g` with
//! `g(e) ∈ {⌊f(e)⌋, ⌈f(e)⌉}`. Lower bounds `⌊f⌋` are fixed first; the
//! resulting vertex imbalances are then repaired through the fractional
//! edges (capacity 1 each) with a max-flow from a super-source to a
//! super-sink. Since `f − ⌊f⌋` is itself a fractional solution, an integral
//! saturating flow exists.

use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

use crate::blocks::Block;

pub type VertexId = usize;
pub type EdgeId = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VertexRole {
    Source,
    Sink,
    /// `v_i`, 1-based split index.
    SplitNode(usize),
    /// One occurrence `v_i^A` of a block in split `i`.
    BlockNode {
        split: usize,
        block: Block,
    },
    /// `v_S^r`, keyed by the block `S ∪ {1^r}`.
    ClassNode(Block),
    Generic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    pub tail: VertexId,
    pub head: VertexId,
    pub numerator: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CirculationError {
    #[error("denominator must be positive")]
    ZeroDenominator,
    #[error("vertex {0} does not exist")]
    NoSuchVertex(VertexId),
    #[error("network does not conserve flow:\n{0}")]
    NotConserved(ConservationReport),
    #[error("network has {got} fractional edges, enumeration is limited to {limit}")]
    TooManyFractional { got: usize, limit: usize },
}

/// A digraph with edge values `numerator / denominator`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowNetwork {
    denominator: u64,
    roles: Vec<VertexRole>,
    edges: Vec<Edge>,
}

impl FlowNetwork {
    pub fn new(denominator: u64) -> Result<Self, CirculationError> {
        if denominator == 0 {
            return Err(CirculationError::ZeroDenominator);
        }
        Ok(Self { denominator, roles: Vec::new(), edges: Vec::new() })
    }

    pub fn add_vertex(&mut self, role: VertexRole) -> VertexId {
        self.roles.push(role);
        self.roles.len() - 1
    }

    pub fn add_edge(
        &mut self,
        tail: VertexId,
        head: VertexId,
        numerator: u64,
    ) -> Result<EdgeId, CirculationError> {
        for v in [tail, head] {
            if v >= self.roles.len() {
                return Err(CirculationError::NoSuchVertex(v));
            }
        }
        self.edges.push(Edge { tail, head, numerator });
        Ok(self.edges.len() - 1)
    }

    pub fn denominator(&self) -> u64 {
        self.denominator
    }

    pub fn vertex_count(&self) -> usize {
        self.roles.len()
    }

    pub fn role(&self, v: VertexId) -> &VertexRole {
        &self.roles[v]
    }

    pub fn roles(&self) -> &[VertexRole] {
        &self.roles
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeId) -> Edge {
        self.edges[e]
    }

    pub fn floor(&self, e: EdgeId) -> u64 {
        self.edges[e].numerator / self.denominator
    }

    pub fn ceil(&self, e: EdgeId) -> u64 {
        self.edges[e].numerator.div_ceil(self.denominator)
    }

    pub fn is_integral(&self, e: EdgeId) -> bool {
        self.edges[e].numerator.is_multiple_of(self.denominator)
    }

    pub fn fractional_edges(&self) -> usize {
        (0..self.edges.len()).filter(|&e| !self.is_integral(e)).count()
    }

    /// Sum of incoming numerators at `v`.
    pub fn in_numerator(&self, v: VertexId) -> u128 {
        self.edges.iter().filter(|e| e.head == v).map(|e| u128::from(e.numerator)).sum()
    }

    /// Sum of outgoing numerators at `v`.
    pub fn out_numerator(&self, v: VertexId) -> u128 {
        self.edges.iter().filter(|e| e.tail == v).map(|e| u128::from(e.numerator)).sum()
    }

    /// `in − out` numerator balance at every vertex.
    pub fn balances(&self) -> Vec<i128> {
        let mut bal = vec![0i128; self.roles.len()];
        for e in &self.edges {
            bal[e.head] += i128::from(e.numerator);
            bal[e.tail] -= i128::from(e.numerator);
        }
        bal
    }

    /// Network with the given integer values on the same edges, denominator 1.
    pub fn with_integral_values(&self, g: &IntegralCirculation) -> FlowNetwork {
        let edges = self.edges.iter().zip(g.values()).map(|(e, &v)| Edge { numerator: v, ..*e }).collect();
        FlowNetwork { denominator: 1, roles: self.roles.clone(), edges }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ConservationReport {
    /// `(vertex, in − out)` for every unbalanced vertex, in numerator units.
    pub imbalances: Vec<(VertexId, i128)>,
}

impl ConservationReport {
    pub fn passed(&self) -> bool {
        self.imbalances.is_empty()
    }
}

impl fmt::Display for ConservationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            return f.write_str("conserved");
        }
        for (v, d) in &self.imbalances {
            writeln!(f, "vertex {v}: in − out = {d}")?;
        }
        Ok(())
    }
}

pub fn check_conservation(net: &FlowNetwork) -> ConservationReport {
    let imbalances = net.balances().into_iter().enumerate().filter(|&(_, d)| d != 0).collect();
    ConservationReport { imbalances }
}

/// Integer edge values aligned with a network's edge list.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntegralCirculation {
    values: Vec<u64>,
}

impl IntegralCirculation {
    pub fn new(values: Vec<u64>) -> Self {
        Self { values }
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn get(&self, e: EdgeId) -> u64 {
        self.values[e]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RoundingViolation {
    Length { edges: usize, values: usize },
    OutOfBand { edge: EdgeId, value: u64, floor: u64, ceil: u64 },
    Unbalanced { vertex: VertexId, imbalance: i128 },
}

/// Checks that `g` lies in the floor/ceil band of `net` and is a circulation.
pub fn check_rounding(net: &FlowNetwork, g: &IntegralCirculation) -> Vec<RoundingViolation> {
    let mut out = Vec::new();
    if g.values().len() != net.edges().len() {
        out.push(RoundingViolation::Length { edges: net.edges().len(), values: g.values().len() });
        return out;
    }
    for (e, &value) in g.values().iter().enumerate() {
        let (floor, ceil) = (net.floor(e), net.ceil(e));
        if value < floor || value > ceil {
            out.push(RoundingViolation::OutOfBand { edge: e, value, floor, ceil });
        }
    }
    for (vertex, imbalance) in check_conservation(&net.with_integral_values(g)).imbalances {
        out.push(RoundingViolation::Unbalanced { vertex, imbalance });
    }
    out
}

/// Rounds a conserving network to an integer circulation within the
/// floor/ceil band. Deterministic for a fixed edge order.
pub fn round_integral(net: &FlowNetwork) -> Result<IntegralCirculation, CirculationError> {
    let report = check_conservation(net);
    if !report.passed() {
        return Err(CirculationError::NotConserved(report));
    }
    let nv = net.vertex_count();
    let mut values: Vec<u64> = (0..net.edges().len()).map(|e| net.floor(e)).collect();
    let mut excess = vec![0i128; nv];
    for (e, edge) in net.edges().iter().enumerate() {
        excess[edge.head] += i128::from(values[e]);
        excess[edge.tail] -= i128::from(values[e]);
    }
    let source = nv;
    let sink = nv + 1;
    let mut flow = Dinic::new(nv + 2);
    let mut lifted = Vec::new();
    for (e, edge) in net.edges().iter().enumerate() {
        if !net.is_integral(e) {
            lifted.push((e, flow.add_edge(edge.tail, edge.head, 1)));
        }
    }
    let mut demand: u64 = 0;
    for (v, &x) in excess.iter().enumerate() {
        if x > 0 {
            let cap = u64::try_from(x).expect("excess fits in u64");
            flow.add_edge(source, v, cap);
            demand += cap;
        } else if x < 0 {
            let cap = u64::try_from(-x).expect("deficit fits in u64");
            flow.add_edge(v, sink, cap);
        }
    }
    let pushed = flow.max_flow(source, sink);
    assert_eq!(pushed, demand, "a conserving network always admits an integral rounding");
    for (e, arc) in lifted {
        values[e] += flow.flow_on(arc);
    }
    Ok(IntegralCirculation::new(values))
}

/// Dinic's max-flow with edges scanned in insertion order.
struct Dinic {
    adj: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<u64>,
    level: Vec<u32>,
    next: Vec<usize>,
}

const UNREACHED: u32 = u32::MAX;

impl Dinic {
    fn new(n: usize) -> Self {
        Self {
            adj: vec![Vec::new(); n],
            to: Vec::new(),
            cap: Vec::new(),
            level: vec![0; n],
            next: vec![0; n],
        }
    }

    /// Returns the arc index of the forward edge; its reverse is `arc ^ 1`.
    fn add_edge(&mut self, from: usize, to: usize, cap: u64) -> usize {
        let arc = self.to.len();
        self.adj[from].push(arc);
        self.to.push(to);
        self.cap.push(cap);
        self.adj[to].push(arc + 1);
        self.to.push(from);
        self.cap.push(0);
        arc
    }

    fn flow_on(&self, arc: usize) -> u64 {
        self.cap[arc ^ 1]
    }

    fn bfs(&mut self, s: usize, t: usize) -> bool {
        self.level.fill(UNREACHED);
        self.level[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for &arc in &self.adj[v] {
                let w = self.to[arc];
                if self.cap[arc] > 0 && self.level[w] == UNREACHED {
                    self.level[w] = self.level[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        self.level[t] != UNREACHED
    }

    /// Blocking flow on the current level graph, iterative DFS.
    fn blocking_flow(&mut self, s: usize, t: usize) -> u64 {
        self.next.fill(0);
        let mut total = 0;
        let mut path: Vec<usize> = Vec::new();
        let mut v = s;
        loop {
            if v == t {
                let push = path.iter().map(|&a| self.cap[a]).min().unwrap_or(0);
                for &a in &path {
                    self.cap[a] -= push;
                    self.cap[a ^ 1] += push;
                }
                total += push;
                path.clear();
                v = s;
                continue;
            }
            let mut advanced = false;
            while self.next[v] < self.adj[v].len() {
                let arc = self.adj[v][self.next[v]];
                let w = self.to[arc];
                if self.cap[arc] > 0 && self.level[w] == self.level[v] + 1 {
                    path.push(arc);
                    v = w;
                    advanced = true;
                    break;
                }
                self.next[v] += 1;
            }
            if advanced {
                continue;
            }
            // dead end: retreat
            self.level[v] = UNREACHED;
            match path.pop() {
                None => return total,
                Some(arc) => {
                    v = self.to[arc ^ 1];
                    self.next[v] += 1;
                }
            }
        }
    }

    fn max_flow(&mut self, s: usize, t: usize) -> u64 {
        let mut total = 0;
        while self.bfs(s, t) {
            total += self.blocking_flow(s, t);
        }
        total
    }
}
