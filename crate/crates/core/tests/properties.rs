//! Structural invariants: marriage and truncation properties, girth and
//! connectivity bounds, format round trips, canonical-form dedup.

use cycleforge::analysis::{girth, vertex_connectivity, GirthResult};
use cycleforge::construct::{
    generalized_petersen, k33, k4, marry, marry_all, petersen, BijectionPolicy, MarriagePlan,
    VertexOrigin,
};
use cycleforge::graph::Graph;
use cycleforge::io::{from_edge_list, from_graph6, to_edge_list, to_graph6};
use cycleforge::limits::SearchLimits;
use cycleforge::search::{all_cycles, count_hamiltonian_cycles, CycleWitness};
use proptest::prelude::*;
use std::collections::HashSet;

fn corpus() -> Vec<Graph> {
    include_str!("data/cubic_connected_upto12.g6")
        .lines()
        .map(|l| from_graph6(l).unwrap())
        .collect()
}

fn induced(g: &Graph, verts: &[usize]) -> Graph {
    let index: std::collections::HashMap<usize, usize> =
        verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut edges = Vec::new();
    for (pos, &v) in verts.iter().enumerate() {
        for &w in g.neighbors(v) {
            if let Some(&q) = index.get(&w) {
                if pos < q {
                    edges.push((pos, q));
                }
            }
        }
    }
    Graph::new(verts.len(), &edges).unwrap()
}

fn count_triangles(g: &Graph) -> usize {
    let mut count = 0;
    for (a, b) in g.edges() {
        for &c in g.neighbors(b) {
            if c > b && g.has_edge(a, c) {
                count += 1;
            }
        }
    }
    count
}

// ---------------------------------------------------------------------------
// marriage invariants
// ---------------------------------------------------------------------------

#[test]
fn marry_keeps_cubic_over_corpus_hosts() {
    let guests = [k4(), generalized_petersen(9, 2).unwrap()];
    for host in corpus().iter().filter(|g| g.order() <= 10) {
        for guest in &guests {
            let plan =
                MarriagePlan::new(host.clone(), 0, guest.clone(), 0, BijectionPolicy::default())
                    .unwrap();
            let (h, _) = marry(&plan).unwrap();
            assert!(h.is_cubic());
            assert_eq!(h.order(), host.order() - 1 + guest.order() - 1);
        }
    }
}

#[test]
fn all_six_bijections_same_order_size_cubicity() {
    let gp = generalized_petersen(9, 2).unwrap();
    let mut shapes = HashSet::new();
    for b in 0..6 {
        let plan =
            MarriagePlan::new(petersen(), 3, gp.clone(), 7, BijectionPolicy::Index(b)).unwrap();
        let (h, _) = marry(&plan).unwrap();
        assert!(h.is_cubic());
        shapes.insert((h.order(), h.size()));
    }
    assert_eq!(shapes.len(), 1);
}

#[test]
fn truncation_replaces_vertices_by_triangles() {
    for host in corpus().iter().filter(|g| g.order() <= 10) {
        if girth(host).girth().unwrap() < 3 {
            continue;
        }
        let (h, _) = marry_all(host, &k4(), 0, BijectionPolicy::default()).unwrap();
        assert_eq!(girth(&h).girth(), Some(3));
        assert!(count_triangles(&h) >= host.order());
    }
}

#[test]
fn fibers_induce_guest_minus_u() {
    let gp = generalized_petersen(9, 2).unwrap();
    for u in [0, 5, 13] {
        let (expected_fiber, _) = gp.delete_vertex(u).unwrap();
        let (h, origin) = marry_all(&petersen(), &gp, u, BijectionPolicy::default()).unwrap();
        for i in 0..10 {
            let fiber = origin.fiber(i);
            // fiber vertices carry guest indices 0..17 in order
            let by_j: Vec<usize> = {
                let mut f = fiber.clone();
                f.sort_by_key(|&v| origin.of(v).1);
                f
            };
            assert_eq!(induced(&h, &by_j), expected_fiber, "fiber {i} of guest vertex {u}");
        }
    }
}

#[test]
fn marry_all_carries_one_edge_per_host_edge() {
    let host = k33();
    let (h, origin) = marry_all(&host, &k4(), 0, BijectionPolicy::default()).unwrap();
    let mut cross = std::collections::HashMap::new();
    for (a, b) in h.edges() {
        let (ia, _) = origin.of(a);
        let (ib, _) = origin.of(b);
        if ia != ib {
            *cross.entry((ia.min(ib), ia.max(ib))).or_insert(0usize) += 1;
        }
    }
    let host_edges: HashSet<(usize, usize)> = host.edges().into_iter().collect();
    assert_eq!(cross.keys().copied().collect::<HashSet<_>>(), host_edges);
    assert!(cross.values().all(|&c| c == 1));
}

// ---------------------------------------------------------------------------
// girth and connectivity bounds
// ---------------------------------------------------------------------------

#[test]
fn married_girth_meets_theorem_bound() {
    let guests = [k4(), generalized_petersen(9, 2).unwrap()];
    for host in corpus().iter().filter(|g| g.order() <= 10) {
        let g1 = girth(host).girth().unwrap();
        for guest in &guests {
            let (rest, _) = guest.delete_vertex(0).unwrap();
            let g2_rest = girth(&rest).girth().unwrap();
            let g2 = girth(guest).girth().unwrap();
            assert!(g2_rest >= g2);
            let (h, _) = marry_all(host, guest, 0, BijectionPolicy::default()).unwrap();
            let gh = girth(&h).girth().unwrap();
            assert!(
                gh >= (2 * g1).min(g2),
                "girth {gh} below bound min({}, {g2})",
                2 * g1
            );
        }
    }
}

#[test]
fn gp92_minus_any_vertex_has_girth_5() {
    let gp = generalized_petersen(9, 2).unwrap();
    for u in 0..gp.order() {
        assert_eq!(girth(&gp.delete_vertex(u).unwrap().0).girth(), Some(5));
    }
}

#[test]
fn marriage_connectivity_meets_theorem_bound() {
    let gp = generalized_petersen(9, 2).unwrap();
    let q = 0;
    let kappa2 = vertex_connectivity(&gp.delete_vertex(q).unwrap().0).kappa;
    for host in [k4(), k33(), petersen()] {
        let kappa1 = vertex_connectivity(&host).kappa;
        let bound = kappa1.min(kappa2);
        for p in 0..host.order() {
            let plan =
                MarriagePlan::new(host.clone(), p, gp.clone(), q, BijectionPolicy::default())
                    .unwrap();
            let (h, _) = marry(&plan).unwrap();
            let kappa = vertex_connectivity(&h).kappa;
            assert!(kappa >= bound, "marriage at {p}: kappa {kappa} < bound {bound}");
        }
    }
}

/// Naive connectivity: smallest vertex subset whose deletion disconnects.
fn naive_kappa(g: &Graph) -> usize {
    let n = g.order();
    if !g.is_connected() {
        return 0;
    }
    if g.size() == n * (n - 1) / 2 {
        return n - 1;
    }
    for k in 1..n {
        let mut subset: Vec<usize> = (0..k).collect();
        loop {
            let mut h = g.clone();
            for &v in subset.iter().rev() {
                h = h.delete_vertex(v).unwrap().0;
            }
            if !h.is_connected() {
                return k;
            }
            // next k-combination of 0..n
            let mut i = k;
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                if subset[i] != i + n - k {
                    subset[i] += 1;
                    for j in i + 1..k {
                        subset[j] = subset[j - 1] + 1;
                    }
                    break;
                }
                if i == 0 {
                    return usize::MAX; // exhausted; unreachable for non-complete
                }
            }
            if subset[0] == n - k && (1..k).all(|j| subset[j] == subset[j - 1] + 1) {
                break;
            }
        }
    }
    unreachable!("non-complete graph has a cut")
}

#[test]
fn menger_agrees_with_naive_deletion_up_to_10_vertices() {
    let mut graphs: Vec<Graph> = corpus().into_iter().filter(|g| g.order() <= 10).collect();
    graphs.push(Graph::new(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap());
    graphs.push(Graph::new(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]).unwrap());
    graphs.push(Graph::new(4, &[(0, 1), (1, 2), (2, 3)]).unwrap());
    graphs.push(k4());
    for (idx, g) in graphs.iter().enumerate() {
        assert_eq!(vertex_connectivity(g).kappa, naive_kappa(g), "graph {idx}");
    }
}

// ---------------------------------------------------------------------------
// search invariants
// ---------------------------------------------------------------------------

#[test]
fn enumeration_has_no_duplicate_canonical_forms() {
    for g in corpus().iter().filter(|g| g.order() <= 10) {
        let cycles = all_cycles(g, &SearchLimits::enumeration_default()).unwrap();
        let dedup: HashSet<&CycleWitness> = cycles.iter().collect();
        assert_eq!(dedup.len(), cycles.len());
        let ham = cycles.iter().filter(|c| c.len() == g.order()).count() as u64;
        assert_eq!(
            ham,
            count_hamiltonian_cycles(g, &SearchLimits::search_default(), 0).unwrap().count
        );
    }
}

// ---------------------------------------------------------------------------
// property tests
// ---------------------------------------------------------------------------

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> =
            (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        let len = pairs.len();
        proptest::collection::vec(any::<bool>(), len).prop_map(move |mask| {
            let edges: Vec<(usize, usize)> = pairs
                .iter()
                .zip(&mask)
                .filter_map(|(&e, &keep)| keep.then_some(e))
                .collect();
            Graph::new(n, &edges).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn graph6_round_trip(g in arb_graph(12)) {
        prop_assert_eq!(from_graph6(&to_graph6(&g)).unwrap(), g);
    }

    #[test]
    fn edge_list_round_trip(g in arb_graph(12)) {
        prop_assert_eq!(from_edge_list(&to_edge_list(&g)).unwrap(), g);
    }

    #[test]
    fn disjoint_union_degree_multiset(a in arb_graph(8), b in arb_graph(8)) {
        let u = a.disjoint_union(&b);
        let mut expect: Vec<usize> = (0..a.order()).map(|v| a.degree(v))
            .chain((0..b.order()).map(|v| b.degree(v))).collect();
        let mut got: Vec<usize> = (0..u.order()).map(|v| u.degree(v)).collect();
        expect.sort_unstable();
        got.sort_unstable();
        prop_assert_eq!(got, expect);
    }

    #[test]
    fn canonical_form_independent_of_rotation_and_direction(
        mut verts in proptest::collection::vec(0usize..64, 3..12),
        rot in 0usize..12,
        flip in any::<bool>(),
    ) {
        verts.sort_unstable();
        verts.dedup();
        prop_assume!(verts.len() >= 3);
        let base = CycleWitness::canonical(&verts);
        let mut seq = verts.clone();
        let shift = rot % seq.len();
        seq.rotate_left(shift);
        if flip {
            seq.reverse();
        }
        prop_assert_eq!(CycleWitness::canonical(&seq), base);
    }

    #[test]
    fn delete_vertex_neighbors_lose_one_degree(g in arb_graph(10), v in 0usize..10) {
        prop_assume!(v < g.order());
        let (h, remap) = g.delete_vertex(v).unwrap();
        for u in 0..g.order() {
            if let Some(nu) = remap[u] {
                let expect = g.degree(u) - usize::from(g.has_edge(u, v));
                prop_assert_eq!(h.degree(nu), expect);
            }
        }
    }
}

#[test]
fn origin_serialization_round_trip() {
    let (_, origin) = marry_all(&petersen(), &k4(), 0, BijectionPolicy::default()).unwrap();
    assert_eq!(VertexOrigin::from_text(&origin.to_text()).unwrap(), origin);
}

#[test]
fn girth_witness_is_a_shortest_cycle() {
    for g in corpus().iter().filter(|g| g.order() <= 10) {
        match girth(g) {
            GirthResult::Cycle { girth: gg, witness } => {
                assert!(witness.is_valid_in(g));
                assert_eq!(witness.len(), gg);
                let shortest = all_cycles(g, &SearchLimits::enumeration_default())
                    .unwrap()
                    .iter()
                    .map(|c| c.len())
                    .min()
                    .unwrap();
                assert_eq!(gg, shortest);
            }
            GirthResult::Acyclic => panic!("cubic graphs contain cycles"),
        }
    }
}
