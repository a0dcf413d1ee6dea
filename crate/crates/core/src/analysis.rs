//! Polynomial-time structural checks: girth, vertex connectivity via
//! vertex-split max-flow, and the fiber projection of cycles in married
//! graphs.

use crate::construct::VertexOrigin;
use crate::graph::Graph;
use crate::search::CycleWitness;
use rayon::prelude::*;
use std::sync::atomic::{AtomicUsize, Ordering};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AnalysisError {
    #[error("invalid cycle: {0}")]
    InvalidCycle(String),
    #[error("origin map covers {0} vertices but the graph has {1}")]
    OriginMismatch(usize, usize),
}

/// Girth with one shortest-cycle witness, or Acyclic for forests.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GirthResult {
    Cycle { girth: usize, witness: CycleWitness },
    Acyclic,
}

impl GirthResult {
    pub fn girth(&self) -> Option<usize> {
        match self {
            GirthResult::Cycle { girth, .. } => Some(*girth),
            GirthResult::Acyclic => None,
        }
    }
}

/// Shortest cycle through each BFS root; a non-tree edge (u, v) seen at
/// depths d(u), d(v) witnesses a cycle of length d(u) + d(v) + 1. The
/// minimum over all roots is the girth. Roots run in parallel with a
/// shared monotone upper bound; ties pick the lexicographically smallest
/// canonical witness.
pub fn girth(g: &Graph) -> GirthResult {
    let n = g.order();
    let shared_best = AtomicUsize::new(usize::MAX);
    let best = (0..n)
        .into_par_iter()
        .filter_map(|root| girth_from_root(g, root, &shared_best))
        .min();
    match best {
        Some((girth, witness)) => GirthResult::Cycle { girth, witness },
        None => GirthResult::Acyclic,
    }
}

fn girth_from_root(
    g: &Graph,
    root: usize,
    shared_best: &AtomicUsize,
) -> Option<(usize, CycleWitness)> {
    let n = g.order();
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    dist[root] = 0;
    let mut queue = std::collections::VecDeque::from([root]);
    let mut best: Option<(usize, CycleWitness)> = None;
    while let Some(u) = queue.pop_front() {
        // a cycle of length c is seen from an on-cycle root by depth c/2
        let cap = shared_best.load(Ordering::Relaxed);
        if cap != usize::MAX && dist[u] > cap / 2 {
            break;
        }
        for &v in g.neighbors(u) {
            if dist[v] == usize::MAX {
                dist[v] = dist[u] + 1;
                parent[v] = u;
                queue.push_back(v);
            } else if v != parent[u] && parent[v] != u {
                let len = dist[u] + dist[v] + 1;
                let cap = shared_best.load(Ordering::Relaxed);
                if len > cap || best.as_ref().is_some_and(|(b, _)| len > *b) {
                    continue;
                }
                if let Some(w) = reconstruct_cycle(&parent, u, v) {
                    debug_assert_eq!(w.len(), len);
                    let cand = (len, w);
                    if best.as_ref().is_none_or(|b| cand < *b) {
                        shared_best.fetch_min(len, Ordering::Relaxed);
                        best = Some(cand);
                    }
                }
            }
        }
    }
    best
}

/// Joins the two parent chains; gives up (returning None) if they share
/// a vertex other than the root, in which case a strictly shorter cycle
/// exists and wins elsewhere.
fn reconstruct_cycle(parent: &[usize], u: usize, v: usize) -> Option<CycleWitness> {
    let chain = |mut x: usize| {
        let mut path = vec![x];
        while parent[x] != usize::MAX {
            x = parent[x];
            path.push(x);
        }
        path
    };
    let pu = chain(u);
    let pv = chain(v);
    let mut seq = pu;
    for &x in pv.iter().rev().skip(1) {
        seq.push(x);
    }
    let mut seen = std::collections::HashSet::new();
    if !seq.iter().all(|&x| seen.insert(x)) {
        return None;
    }
    Some(CycleWitness::canonical(&seq))
}

/// Vertex connectivity with a minimum cut (empty for complete or
/// disconnected graphs).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConnectivityResult {
    pub kappa: usize,
    pub cut: Vec<usize>,
}

/// Menger via unit-capacity vertex-split max-flow. The pair sweep is the
/// standard one: a fixed minimum-degree vertex and each of its neighbors
/// against all their non-neighbors (a minimum cut misses at least one of
/// those sources).
pub fn vertex_connectivity(g: &Graph) -> ConnectivityResult {
    let n = g.order();
    if n <= 1 {
        return ConnectivityResult { kappa: 0, cut: Vec::new() };
    }
    if !g.is_connected() {
        return ConnectivityResult { kappa: 0, cut: Vec::new() };
    }
    if g.size() == n * (n - 1) / 2 {
        return ConnectivityResult { kappa: n - 1, cut: Vec::new() };
    }
    let v0 = (0..n).min_by_key(|&v| g.degree(v)).unwrap();
    let mut sources = vec![v0];
    sources.extend_from_slice(g.neighbors(v0));
    let pairs: Vec<(usize, usize)> = sources
        .iter()
        .flat_map(|&s| {
            (0..n).filter(move |&t| t != s).map(move |t| (s, t))
        })
        .filter(|&(s, t)| !g.has_edge(s, t))
        .collect();
    let best = pairs
        .par_iter()
        .map(|&(s, t)| (max_vertex_flow(g, s, t, usize::MAX), s, t))
        .min()
        .expect("non-complete connected graph has a non-adjacent pair");
    let (kappa, s, t) = best;
    ConnectivityResult { kappa, cut: min_vertex_cut(g, s, t) }
}

/// True iff the graph is k-connected; flow augmentation stops at k.
pub fn is_k_connected(g: &Graph, k: usize) -> bool {
    if k == 0 {
        return true;
    }
    let n = g.order();
    if n <= k {
        return false;
    }
    if !g.is_connected() {
        return false;
    }
    if g.size() == n * (n - 1) / 2 {
        return n - 1 >= k;
    }
    let v0 = (0..n).min_by_key(|&v| g.degree(v)).unwrap();
    let mut sources = vec![v0];
    sources.extend_from_slice(g.neighbors(v0));
    let pairs: Vec<(usize, usize)> = sources
        .iter()
        .flat_map(|&s| (0..n).filter(move |&t| t != s).map(move |t| (s, t)))
        .filter(|&(s, t)| !g.has_edge(s, t))
        .collect();
    pairs.par_iter().all(|&(s, t)| max_vertex_flow(g, s, t, k) >= k)
}

// Vertex-split flow network: vertex v becomes v_in = 2v, v_out = 2v+1
// with a capacity-1 internal arc; undirected edge {a,b} becomes
// a_out -> b_in and b_out -> a_in with effectively unbounded capacity.
struct FlowNet {
    // cap[u] holds (to, cap, rev_index) triples
    arcs: Vec<Vec<(usize, i64, usize)>>,
}

impl FlowNet {
    fn build(g: &Graph) -> FlowNet {
        let n = g.order();
        let mut net = FlowNet { arcs: vec![Vec::new(); 2 * n] };
        let inf = n as i64;
        for v in 0..n {
            net.add(2 * v, 2 * v + 1, 1);
        }
        for (a, b) in g.edges() {
            net.add(2 * a + 1, 2 * b, inf);
            net.add(2 * b + 1, 2 * a, inf);
        }
        net
    }

    fn add(&mut self, from: usize, to: usize, cap: i64) {
        let rf = self.arcs[from].len();
        let rt = self.arcs[to].len();
        self.arcs[from].push((to, cap, rt));
        self.arcs[to].push((from, 0, rf));
    }

    /// One BFS augmenting step of value 1; returns false when no path.
    fn augment(&mut self, source: usize, sink: usize) -> bool {
        let mut prev: Vec<Option<(usize, usize)>> = vec![None; self.arcs.len()];
        let mut seen = vec![false; self.arcs.len()];
        seen[source] = true;
        let mut queue = std::collections::VecDeque::from([source]);
        'bfs: while let Some(u) = queue.pop_front() {
            for (i, &(to, cap, _)) in self.arcs[u].iter().enumerate() {
                if cap > 0 && !seen[to] {
                    seen[to] = true;
                    prev[to] = Some((u, i));
                    if to == sink {
                        break 'bfs;
                    }
                    queue.push_back(to);
                }
            }
        }
        if !seen[sink] {
            return false;
        }
        let mut v = sink;
        while let Some((u, i)) = prev[v] {
            let (to, _, rev) = self.arcs[u][i];
            self.arcs[u][i].1 -= 1;
            self.arcs[to][rev].1 += 1;
            v = u;
        }
        true
    }

    fn residual_reachable(&self, source: usize) -> Vec<bool> {
        let mut seen = vec![false; self.arcs.len()];
        seen[source] = true;
        let mut stack = vec![source];
        while let Some(u) = stack.pop() {
            for &(to, cap, _) in &self.arcs[u] {
                if cap > 0 && !seen[to] {
                    seen[to] = true;
                    stack.push(to);
                }
            }
        }
        seen
    }
}

/// Local vertex connectivity between non-adjacent s and t, capped.
fn max_vertex_flow(g: &Graph, s: usize, t: usize, cap: usize) -> usize {
    let mut net = FlowNet::build(g);
    let mut flow = 0;
    while flow < cap && net.augment(2 * s + 1, 2 * t) {
        flow += 1;
    }
    flow
}

fn min_vertex_cut(g: &Graph, s: usize, t: usize) -> Vec<usize> {
    let mut net = FlowNet::build(g);
    while net.augment(2 * s + 1, 2 * t) {}
    let reach = net.residual_reachable(2 * s + 1);
    (0..g.order()).filter(|&v| reach[2 * v] && !reach[2 * v + 1]).collect()
}

/// How a cycle of a married graph projects through the origin map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Projection {
    /// The cycle stays inside one fiber; the witness is in guest indices.
    InternalCycle { host: usize, cycle: Vec<usize> },
    /// The cycle visits several fibers: the deduplicated host index
    /// sequence (a simple cycle of the host) plus the guest-index path
    /// traversed inside each visited fiber.
    HostCycle { hosts: Vec<usize>, fiber_paths: Vec<Vec<usize>> },
}

/// Projects a cycle of `h` to the host graph through the origin map, per
/// run-length grouping of the host coordinates.
pub fn project_cycle(
    h: &Graph,
    origin: &VertexOrigin,
    cycle: &CycleWitness,
) -> Result<Projection, AnalysisError> {
    if origin.len() != h.order() {
        return Err(AnalysisError::OriginMismatch(origin.len(), h.order()));
    }
    if !cycle.is_valid_in(h) {
        return Err(AnalysisError::InvalidCycle("not a simple cycle of the graph".into()));
    }
    let verts = cycle.vertices();
    let m = verts.len();
    let hosts: Vec<usize> = verts.iter().map(|&v| origin.host(v)).collect();

    if hosts.iter().all(|&i| i == hosts[0]) {
        let fiber_cycle = verts.iter().map(|&v| origin.of(v).1).collect();
        return Ok(Projection::InternalCycle { host: hosts[0], cycle: fiber_cycle });
    }

    // rotate to start right after a fiber boundary, then group runs
    let k = (0..m)
        .find(|&k| hosts[k] != hosts[(k + 1) % m])
        .expect("mixed hosts have a boundary");
    let start = (k + 1) % m;
    let mut host_seq = Vec::new();
    let mut fiber_paths: Vec<Vec<usize>> = Vec::new();
    for step in 0..m {
        let v = verts[(start + step) % m];
        let (i, j) = origin.of(v);
        if host_seq.last() == Some(&i) {
            fiber_paths.last_mut().unwrap().push(j);
        } else {
            host_seq.push(i);
            fiber_paths.push(vec![j]);
        }
    }
    let mut seen = std::collections::HashSet::new();
    if !host_seq.iter().all(|&i| seen.insert(i)) {
        return Err(AnalysisError::InvalidCycle(
            "host projection revisits a fiber; origin map does not match the graph".into(),
        ));
    }
    Ok(Projection::HostCycle { hosts: host_seq, fiber_paths })
}
