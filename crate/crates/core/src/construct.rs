//! Builders: generalized Petersen graphs, the Chia-Thomassen base graph,
//! the marriage operation and its iteration.

use crate::graph::{Graph, GraphError};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConstructError {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("vertex {0} must have degree 3, found {1}")]
    DegreeMismatch(usize, usize),
    #[error("graph is not cubic")]
    NotCubic,
    #[error("resource limit: order {0} exceeds configured cap {1}")]
    ResourceLimit(usize, usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Generalized Petersen graph GP(n, k): outer n-cycle, spokes, inner
/// vertices joined at skip k. Outer vertices are 0..n, inner n..2n.
pub fn generalized_petersen(n: usize, k: usize) -> Result<Graph, ConstructError> {
    if n < 3 {
        return Err(ConstructError::InvalidParameters(format!("n = {n} < 3")));
    }
    if k == 0 || 2 * k >= n {
        return Err(ConstructError::InvalidParameters(format!("need 1 <= k < n/2, got k = {k}")));
    }
    let mut edges = Vec::with_capacity(3 * n);
    for i in 0..n {
        edges.push((i, (i + 1) % n));
        edges.push((i, n + i));
        edges.push((n + i, n + (i + k) % n));
    }
    Ok(Graph::new(2 * n, &edges)?)
}

/// Complete graph on 4 vertices.
pub fn k4() -> Graph {
    Graph::new(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
}

/// The Petersen graph, GP(5, 2).
pub fn petersen() -> Graph {
    generalized_petersen(5, 2).unwrap()
}

/// Complete bipartite graph K(3,3); parts {0,1,2} and {3,4,5}.
pub fn k33() -> Graph {
    let mut edges = Vec::new();
    for a in 0..3 {
        for b in 3..6 {
            edges.push((a, b));
        }
    }
    Graph::new(6, &edges).unwrap()
}

/// The Chia-Thomassen graph: cubic, 2-connected, girth 3, 56 vertices,
/// with a unique longest cycle.
///
/// Two identical 28-vertex halves joined by two edges. Each half has five
/// ring positions. Every position carries an inner triangle (apex pointing
/// outward, two base vertices); positions 1..4 also carry an outer
/// triangle (apex pointing inward, two base vertices on the rim), while
/// position 0 has a single rim vertex instead. Spokes join each inner
/// apex to the outer apex (or the single rim vertex at position 0). The
/// "plus" base vertex of inner triangle x is chorded to the "minus" base
/// vertex of inner triangle x+2 (mod 5). Rim edges connect outer
/// triangles 1-2 and 3-4 and both sides of the single rim vertex, leaving
/// outer_plus(2) and outer_minus(3) of each half at degree 2; those four
/// vertices receive the two cross-half edges.
pub fn chia_thomassen() -> Graph {
    // per-half vertex layout, offsets 0 and 28
    let inner_apex = |x: usize| 3 * x;
    let inner_minus = |x: usize| 3 * x + 1;
    let inner_plus = |x: usize| 3 * x + 2;
    let outer_apex = |x: usize| 15 + 3 * (x - 1);
    let outer_minus = |x: usize| 16 + 3 * (x - 1);
    let outer_plus = |x: usize| 17 + 3 * (x - 1);
    let rim0 = 27;

    let mut edges = Vec::new();
    for half in 0..2 {
        let o = 28 * half;
        for x in 0..5 {
            edges.push((o + inner_apex(x), o + inner_minus(x)));
            edges.push((o + inner_apex(x), o + inner_plus(x)));
            edges.push((o + inner_minus(x), o + inner_plus(x)));
            edges.push((o + inner_plus(x), o + inner_minus((x + 2) % 5)));
        }
        for x in 1..5 {
            edges.push((o + outer_apex(x), o + outer_minus(x)));
            edges.push((o + outer_apex(x), o + outer_plus(x)));
            edges.push((o + outer_minus(x), o + outer_plus(x)));
            edges.push((o + inner_apex(x), o + outer_apex(x)));
        }
        edges.push((o + inner_apex(0), o + rim0));
        edges.push((o + outer_plus(1), o + outer_minus(2)));
        edges.push((o + outer_plus(3), o + outer_minus(4)));
        edges.push((o + outer_plus(4), o + rim0));
        edges.push((o + rim0, o + outer_minus(1)));
    }
    edges.push((outer_plus(2), 28 + outer_minus(3)));
    edges.push((outer_minus(3), 28 + outer_plus(2)));
    Graph::new(56, &edges).unwrap()
}

/// Maps each vertex of a married graph back to (host index, guest index).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexOrigin {
    pairs: Vec<(usize, usize)>,
}

impl VertexOrigin {
    pub fn new(pairs: Vec<(usize, usize)>) -> VertexOrigin {
        VertexOrigin { pairs }
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// (host index, guest index) of married vertex `v`.
    pub fn of(&self, v: usize) -> (usize, usize) {
        self.pairs[v]
    }

    pub fn host(&self, v: usize) -> usize {
        self.pairs[v].0
    }

    /// Married vertices belonging to host index `i`, ascending.
    pub fn fiber(&self, i: usize) -> Vec<usize> {
        (0..self.pairs.len()).filter(|&v| self.pairs[v].0 == i).collect()
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("cycleforge-origin 1 {}\n", self.pairs.len());
        for (v, &(i, j)) in self.pairs.iter().enumerate() {
            out.push_str(&format!("{v} {i} {j}\n"));
        }
        out
    }

    pub fn from_text(s: &str) -> Result<VertexOrigin, ConstructError> {
        let bad = |msg: &str| ConstructError::InvalidParameters(format!("origin file: {msg}"));
        let mut lines = s.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| bad("empty"))?;
        let mut it = header.split_whitespace();
        if it.next() != Some("cycleforge-origin") || it.next() != Some("1") {
            return Err(bad("bad header"));
        }
        let n: usize = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| bad("bad header count"))?;
        let mut pairs = vec![(usize::MAX, usize::MAX); n];
        for line in lines {
            let mut it = line.split_whitespace();
            let mut next = || -> Result<usize, ConstructError> {
                it.next().and_then(|t| t.parse().ok()).ok_or_else(|| bad("bad line"))
            };
            let (v, i, j) = (next()?, next()?, next()?);
            if v >= n {
                return Err(bad("vertex out of range"));
            }
            pairs[v] = (i, j);
        }
        if pairs.iter().any(|&p| p.0 == usize::MAX) {
            return Err(bad("missing vertex entries"));
        }
        Ok(VertexOrigin { pairs })
    }
}

/// Which of the six neighbor bijections a marriage uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BijectionPolicy {
    /// Match ascending host neighbors to ascending guest attachment
    /// vertices (the deterministic default).
    #[default]
    SortedIdentity,
    /// Fixed permutation index 0..6 applied to the guest side.
    Index(u8),
}

const PERMS: [[usize; 3]; 6] = [
    [0, 1, 2],
    [0, 2, 1],
    [1, 0, 2],
    [1, 2, 0],
    [2, 0, 1],
    [2, 1, 0],
];

impl BijectionPolicy {
    fn perm(self) -> Result<[usize; 3], ConstructError> {
        match self {
            BijectionPolicy::SortedIdentity => Ok(PERMS[0]),
            BijectionPolicy::Index(k) if (k as usize) < 6 => Ok(PERMS[k as usize]),
            BijectionPolicy::Index(k) => {
                Err(ConstructError::InvalidParameters(format!("bijection index {k} >= 6")))
            }
        }
    }
}

/// A single marriage: replace host vertex `a` by a copy of `guest - u`.
#[derive(Debug, Clone)]
pub struct MarriagePlan {
    pub host: Graph,
    pub a: usize,
    pub guest: Graph,
    pub u: usize,
    pub bijection: BijectionPolicy,
}

impl MarriagePlan {
    pub fn new(
        host: Graph,
        a: usize,
        guest: Graph,
        u: usize,
        bijection: BijectionPolicy,
    ) -> Result<MarriagePlan, ConstructError> {
        if a >= host.order() {
            return Err(GraphError::IndexOutOfRange(a, host.order()).into());
        }
        if u >= guest.order() {
            return Err(GraphError::IndexOutOfRange(u, guest.order()).into());
        }
        if host.degree(a) != 3 {
            return Err(ConstructError::DegreeMismatch(a, host.degree(a)));
        }
        if guest.degree(u) != 3 {
            return Err(ConstructError::DegreeMismatch(u, guest.degree(u)));
        }
        bijection.perm()?;
        Ok(MarriagePlan { host, a, guest, u, bijection })
    }
}

/// Marries host vertex `a` with `(guest, u)`: disjoint union of host-a
/// and guest-u plus the 3-edge matching chosen by the bijection.
///
/// In the returned origin, surviving host vertices keep their old index
/// as host coordinate (guest coordinate 0) and guest vertices carry host
/// coordinate `a`.
pub fn marry(plan: &MarriagePlan) -> Result<(Graph, VertexOrigin), ConstructError> {
    let (host_rest, host_map) = plan.host.delete_vertex(plan.a)?;
    let (guest_rest, guest_map) = plan.guest.delete_vertex(plan.u)?;
    let off = host_rest.order();
    let joined = host_rest.disjoint_union(&guest_rest);

    // ascending original labels stay ascending after compaction
    let host_attach: Vec<usize> =
        plan.host.neighbors(plan.a).iter().map(|&b| host_map[b].unwrap()).collect();
    let guest_attach: Vec<usize> =
        plan.guest.neighbors(plan.u).iter().map(|&v| guest_map[v].unwrap() + off).collect();
    let perm = plan.bijection.perm()?;
    let matching: Vec<(usize, usize)> =
        (0..3).map(|r| (host_attach[r], guest_attach[perm[r]])).collect();
    let graph = joined.with_edges(&matching)?;

    let mut pairs = Vec::with_capacity(graph.order());
    for v in 0..plan.host.order() {
        if v != plan.a {
            pairs.push((v, 0));
        }
    }
    for j in 0..guest_rest.order() {
        pairs.push((plan.a, j));
    }
    debug_assert_eq!(pairs.len(), graph.order());
    Ok((graph, VertexOrigin::new(pairs)))
}

/// Marries every vertex of cubic `host` with `(guest, u)`. Vertex (i, j)
/// of the result sits at index `i * (|guest| - 1) + j`.
pub fn marry_all(
    host: &Graph,
    guest: &Graph,
    u: usize,
    bijection: BijectionPolicy,
) -> Result<(Graph, VertexOrigin), ConstructError> {
    if !host.is_cubic() {
        return Err(ConstructError::NotCubic);
    }
    if u >= guest.order() {
        return Err(GraphError::IndexOutOfRange(u, guest.order()).into());
    }
    if guest.degree(u) != 3 {
        return Err(ConstructError::DegreeMismatch(u, guest.degree(u)));
    }
    let perm = bijection.perm()?;
    let (fiber, guest_map) = guest.delete_vertex(u)?;
    let attach: Vec<usize> = guest.neighbors(u).iter().map(|&v| guest_map[v].unwrap()).collect();
    let nf = fiber.order();

    let mut edges = Vec::with_capacity(host.order() * fiber.size() + host.size());
    for i in 0..host.order() {
        for (a, b) in fiber.edges() {
            edges.push((i * nf + a, i * nf + b));
        }
    }
    for (s, t) in host.edges() {
        let rs = host.neighbors(s).iter().position(|&w| w == t).unwrap();
        let rt = host.neighbors(t).iter().position(|&w| w == s).unwrap();
        edges.push((s * nf + attach[perm[rs]], t * nf + attach[perm[rt]]));
    }
    let graph = Graph::new(host.order() * nf, &edges)?;

    let mut pairs = Vec::with_capacity(graph.order());
    for i in 0..host.order() {
        for j in 0..nf {
            pairs.push((i, j));
        }
    }
    Ok((graph, VertexOrigin::new(pairs)))
}

/// Settings for the iterated family.
#[derive(Debug, Clone)]
pub struct FamilyConfig {
    /// Marked vertex of the guest GP(9,2). Vertex-transitivity makes the
    /// choice immaterial; it is kept configurable for auditability.
    pub guest_vertex: usize,
    pub bijection: BijectionPolicy,
    /// Hard cap on the order of the constructed graph.
    pub max_vertices: usize,
}

pub const DEFAULT_FAMILY_MAX_VERTICES: usize = 300_000;

impl Default for FamilyConfig {
    fn default() -> FamilyConfig {
        FamilyConfig {
            guest_vertex: 0,
            bijection: BijectionPolicy::SortedIdentity,
            max_vertices: crate::limits::max_vertices_env(DEFAULT_FAMILY_MAX_VERTICES),
        }
    }
}

/// k-th member of the family: H(0) is the Chia-Thomassen graph, and
/// H(k+1) = marry_all(H(k), GP(9,2), u). Returns the graph together with
/// the per-level origin maps (level l maps H(l+1) back onto H(l)).
pub fn family_member(
    k: usize,
    config: &FamilyConfig,
) -> Result<(Graph, Vec<VertexOrigin>), ConstructError> {
    let guest = generalized_petersen(9, 2)?;
    let mut g = chia_thomassen();
    let mut origins = Vec::with_capacity(k);
    for _ in 0..k {
        let next_order = g.order() * (guest.order() - 1);
        if next_order > config.max_vertices {
            return Err(ConstructError::ResourceLimit(next_order, config.max_vertices));
        }
        let (h, origin) = marry_all(&g, &guest, config.guest_vertex, config.bijection)?;
        origins.push(origin);
        g = h;
    }
    Ok((g, origins))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gp92_shape() {
        let g = generalized_petersen(9, 2).unwrap();
        assert_eq!((g.order(), g.size()), (18, 27));
        assert!(g.is_cubic());
    }

    #[test]
    fn gp_parameter_validation() {
        assert!(generalized_petersen(4, 2).is_err());
        assert!(generalized_petersen(2, 1).is_err());
        assert!(generalized_petersen(9, 0).is_err());
    }

    #[test]
    fn gp41_is_cube() {
        let g = generalized_petersen(4, 1).unwrap();
        assert_eq!((g.order(), g.size()), (8, 12));
        assert!(g.is_cubic());
    }

    #[test]
    fn chia_thomassen_shape() {
        let g = chia_thomassen();
        assert_eq!(g.order(), 56);
        assert_eq!(g.size(), 84);
        assert!(g.is_cubic());
        assert!(g.is_connected());
    }

    #[test]
    fn marry_k4_k4_is_prism() {
        // two triangles joined by a perfect matching
        let plan = MarriagePlan::new(k4(), 0, k4(), 0, BijectionPolicy::SortedIdentity).unwrap();
        let (g, origin) = marry(&plan).unwrap();
        assert_eq!((g.order(), g.size()), (6, 9));
        assert!(g.is_cubic());
        // host triangle 0,1,2; guest triangle 3,4,5; matching i -> i+3
        for (a, b) in [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)] {
            assert!(g.has_edge(a, b), "missing edge ({a},{b})");
        }
        assert_eq!(origin.of(0), (1, 0));
        assert_eq!(origin.of(3), (0, 0));
    }

    #[test]
    fn marry_gp92_with_gp92() {
        let gp = generalized_petersen(9, 2).unwrap();
        let plan =
            MarriagePlan::new(gp.clone(), 0, gp, 0, BijectionPolicy::SortedIdentity).unwrap();
        let (g, _) = marry(&plan).unwrap();
        assert_eq!(g.order(), 34);
        assert!(g.is_cubic());
    }

    #[test]
    fn marry_rejects_wrong_degree() {
        let c5 = Graph::new(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]).unwrap();
        let err = MarriagePlan::new(c5, 0, k4(), 0, BijectionPolicy::SortedIdentity).unwrap_err();
        assert_eq!(err, ConstructError::DegreeMismatch(0, 2));
    }

    #[test]
    fn all_six_bijections_agree_on_order_and_size() {
        let gp = generalized_petersen(9, 2).unwrap();
        for b in 0..6 {
            let plan =
                MarriagePlan::new(k4(), 1, gp.clone(), 4, BijectionPolicy::Index(b)).unwrap();
            let (g, _) = marry(&plan).unwrap();
            assert_eq!((g.order(), g.size()), (20, 30));
            assert!(g.is_cubic());
        }
    }

    #[test]
    fn truncated_k4_shape() {
        let (g, origin) = marry_all(&k4(), &k4(), 0, BijectionPolicy::default()).unwrap();
        assert_eq!((g.order(), g.size()), (12, 18));
        assert!(g.is_cubic());
        // every fiber induces a triangle
        for i in 0..4 {
            let f = origin.fiber(i);
            assert_eq!(f.len(), 3);
            assert!(g.has_edge(f[0], f[1]) && g.has_edge(f[1], f[2]) && g.has_edge(f[0], f[2]));
        }
    }

    #[test]
    fn marry_all_rejects_non_cubic_host() {
        let c5 = Graph::new(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]).unwrap();
        assert_eq!(
            marry_all(&c5, &k4(), 0, BijectionPolicy::default()).unwrap_err(),
            ConstructError::NotCubic
        );
    }

    #[test]
    fn family_orders() {
        let cfg = FamilyConfig::default();
        assert_eq!(family_member(0, &cfg).unwrap().0.order(), 56);
        let (h1, origins) = family_member(1, &cfg).unwrap();
        assert_eq!(h1.order(), 952);
        assert!(h1.is_cubic());
        assert_eq!(origins.len(), 1);
        assert_eq!(origins[0].len(), 952);
    }

    #[test]
    fn family_resource_limit() {
        let cfg = FamilyConfig { max_vertices: 100, ..FamilyConfig::default() };
        assert!(matches!(family_member(1, &cfg), Err(ConstructError::ResourceLimit(952, 100))));
    }

    #[test]
    fn origin_text_round_trip() {
        let (_, origin) = marry_all(&k4(), &k4(), 0, BijectionPolicy::default()).unwrap();
        assert_eq!(VertexOrigin::from_text(&origin.to_text()).unwrap(), origin);
    }
}
