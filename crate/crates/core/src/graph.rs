//! Simple undirected graphs as indexed adjacency lists.
//!
//! Vertices are dense `0..n` indices. Graphs are immutable after
//! construction; every "mutation" builds a new graph. Adjacency lists are
//! kept strictly ascending, which the search kernels rely on for
//! deterministic traversal order.

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex index {0} out of range (n = {1})")]
    IndexOutOfRange(usize, usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
}

/// Immutable simple undirected graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    m: usize,
}

impl Graph {
    /// Builds a graph on `n` vertices from an edge list. Rejects
    /// self-loops, duplicate edges and out-of-range endpoints.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in edges {
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            if a >= n {
                return Err(GraphError::IndexOutOfRange(a, n));
            }
            if b >= n {
                return Err(GraphError::IndexOutOfRange(b, n));
            }
            if adj[a].contains(&b) {
                return Err(GraphError::DuplicateEdge(a.min(b), a.max(b)));
            }
            adj[a].push(b);
            adj[b].push(a);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        let g = Graph { adj, m: edges.len() };
        g.debug_check();
        Ok(g)
    }

    pub fn empty(n: usize) -> Graph {
        Graph { adj: vec![Vec::new(); n], m: 0 }
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn size(&self) -> usize {
        self.m
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Neighbors of `v` in ascending order.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a].binary_search(&b).is_ok()
    }

    /// Edges as (a, b) pairs with a < b, lexicographically sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.m);
        for (a, nbrs) in self.adj.iter().enumerate() {
            for &b in nbrs {
                if a < b {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn is_cubic(&self) -> bool {
        self.adj.iter().all(|l| l.len() == 3)
    }

    /// Deletes vertex `v`, compacting the surviving indices in order.
    /// Returns the new graph and the old-to-new index map (`None` for `v`).
    pub fn delete_vertex(&self, v: usize) -> Result<(Graph, Vec<Option<usize>>), GraphError> {
        let n = self.order();
        if v >= n {
            return Err(GraphError::IndexOutOfRange(v, n));
        }
        let remap: Vec<Option<usize>> = (0..n)
            .map(|u| match u.cmp(&v) {
                std::cmp::Ordering::Less => Some(u),
                std::cmp::Ordering::Equal => None,
                std::cmp::Ordering::Greater => Some(u - 1),
            })
            .collect();
        let mut adj = Vec::with_capacity(n - 1);
        let mut m = 0;
        for (u, nbrs) in self.adj.iter().enumerate() {
            if u == v {
                continue;
            }
            let list: Vec<usize> = nbrs.iter().filter(|&&w| w != v).map(|&w| remap[w].unwrap()).collect();
            m += list.len();
            adj.push(list);
        }
        let g = Graph { adj, m: m / 2 };
        g.debug_check();
        Ok((g, remap))
    }

    /// Disjoint union; vertices of `other` are offset by `self.order()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let off = self.order();
        let mut adj = self.adj.clone();
        adj.extend(other.adj.iter().map(|l| l.iter().map(|&w| w + off).collect()));
        let g = Graph { adj, m: self.m + other.m };
        g.debug_check();
        g
    }

    /// Adds edges to a copy of the graph.
    pub fn with_edges(&self, extra: &[(usize, usize)]) -> Result<Graph, GraphError> {
        let mut edges = self.edges();
        edges.extend_from_slice(extra);
        Graph::new(self.order(), &edges)
    }

    pub fn is_connected(&self) -> bool {
        let n = self.order();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &w in &self.adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == n
    }

    #[cfg(debug_assertions)]
    fn debug_check(&self) {
        let mut deg_sum = 0;
        for (u, nbrs) in self.adj.iter().enumerate() {
            deg_sum += nbrs.len();
            debug_assert!(nbrs.windows(2).all(|w| w[0] < w[1]), "adjacency not strictly ascending");
            for &w in nbrs {
                debug_assert!(w != u, "self-loop");
                debug_assert!(self.adj[w].binary_search(&u).is_ok(), "asymmetric adjacency");
            }
        }
        debug_assert_eq!(deg_sum, 2 * self.m);
    }

    #[cfg(not(debug_assertions))]
    fn debug_check(&self) {}
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn triangle() -> Graph {
        Graph::new(3, &[(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    pub(crate) fn k4() -> Graph {
        Graph::new(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn triangle_basics() {
        let g = triangle();
        assert_eq!(g.order(), 3);
        assert_eq!(g.size(), 3);
        assert!(!g.is_cubic());
    }

    #[test]
    fn k4_is_cubic() {
        let g = k4();
        assert_eq!(g.size(), 6);
        assert!(g.is_cubic());
    }

    #[test]
    fn self_loop_rejected() {
        assert_eq!(Graph::new(2, &[(0, 0)]), Err(GraphError::SelfLoop(0)));
    }

    #[test]
    fn duplicate_edge_rejected() {
        assert_eq!(
            Graph::new(3, &[(0, 1), (1, 0)]),
            Err(GraphError::DuplicateEdge(0, 1))
        );
    }

    #[test]
    fn out_of_range_rejected() {
        assert_eq!(Graph::new(2, &[(0, 5)]), Err(GraphError::IndexOutOfRange(5, 2)));
    }

    #[test]
    fn delete_vertex_k4_gives_triangle() {
        for v in 0..4 {
            let (g, remap) = k4().delete_vertex(v).unwrap();
            assert_eq!(g, triangle());
            assert_eq!(remap[v], None);
            assert_eq!(remap.iter().filter(|r| r.is_some()).count(), 3);
        }
    }

    #[test]
    fn delete_vertex_triangle_gives_edge() {
        let (g, _) = triangle().delete_vertex(1).unwrap();
        assert_eq!(g, Graph::new(2, &[(0, 1)]).unwrap());
    }

    #[test]
    fn delete_vertex_drops_neighbor_degrees() {
        let g = k4();
        let (h, remap) = g.delete_vertex(2).unwrap();
        for u in 0..4 {
            if let Some(nu) = remap[u] {
                let expect = g.degree(u) - usize::from(g.has_edge(u, 2));
                assert_eq!(h.degree(nu), expect);
            }
        }
    }

    #[test]
    fn disjoint_union_counts() {
        let u = triangle().disjoint_union(&triangle());
        assert_eq!((u.order(), u.size()), (6, 6));
        assert!(!u.is_connected());
        let id = Graph::empty(0).disjoint_union(&k4());
        assert_eq!(id, k4());
    }
}
