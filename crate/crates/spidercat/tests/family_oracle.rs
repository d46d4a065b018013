//! Structural certification of the glued-fragment family: one copy closes
//! into the Petersen graph (checked in unit tests) and two copies close
//! into the dodecahedral graph, certified here by an explicit isomorphism
//! against the generalized Petersen presentation GP(10,2).

use spidercat::graph::{glued_petersen_fragments, MarkedGraph};

/// The dodecahedral graph as GP(10,2): outer 10-cycle u_i (0..10), spokes
/// u_i - v_i, and inner edges v_i - v_{i+2} forming two pentagons.
fn dodecahedron() -> MarkedGraph {
    let outer = (0..10).map(|i| (i, (i + 1) % 10, 0));
    let spokes = (0..10).map(|i| (i, 10 + i, 0));
    let inner = (0..10).map(|i| (10 + i, 10 + (i + 2) % 10, 0));
    MarkedGraph::new(20, outer.chain(spokes).chain(inner)).unwrap()
}

fn neighbor_sets(g: &MarkedGraph) -> Vec<Vec<usize>> {
    let mut adj = g.adjacency();
    for a in &mut adj {
        a.sort_unstable();
    }
    adj
}

/// Backtracking isomorphism search for connected cubic graphs.
fn isomorphic(a: &MarkedGraph, b: &MarkedGraph) -> bool {
    let n = a.vertex_count();
    if b.vertex_count() != n {
        return false;
    }
    let (adj_a, adj_b) = (neighbor_sets(a), neighbor_sets(b));
    // Map vertices of `a` in BFS order so each new vertex has a mapped
    // neighbor, keeping the branching factor small.
    let mut order = vec![0usize];
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut head = 0;
    while head < order.len() {
        let x = order[head];
        head += 1;
        for &y in &adj_a[x] {
            if !seen[y] {
                seen[y] = true;
                order.push(y);
            }
        }
    }
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn extend(
        idx: usize,
        order: &[usize],
        adj_a: &[Vec<usize>],
        adj_b: &[Vec<usize>],
        map: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        if idx == order.len() {
            return true;
        }
        let x = order[idx];
        for cand in 0..map.len() {
            if used[cand] {
                continue;
            }
            // Every already-mapped neighbor of x must map onto a neighbor
            // of the candidate, and vice versa for non-neighbors.
            let ok = adj_a[x].iter().all(|&y| {
                map[y] == usize::MAX || adj_b[cand].binary_search(&map[y]).is_ok()
            }) && (0..map.len()).all(|y| {
                map[y] == usize::MAX
                    || adj_a[x].contains(&y) == adj_b[cand].binary_search(&map[y]).is_ok()
            });
            if !ok {
                continue;
            }
            map[x] = cand;
            used[cand] = true;
            if extend(idx + 1, order, adj_a, adj_b, map, used) {
                return true;
            }
            map[x] = usize::MAX;
            used[cand] = false;
        }
        false
    }
    extend(0, &order, &adj_a, &adj_b, &mut map, &mut used)
}

#[test]
fn two_fragments_close_into_the_dodecahedron() {
    assert!(isomorphic(&glued_petersen_fragments(2), &dodecahedron()));
}

#[test]
fn isomorphism_search_rejects_a_non_isomorphic_pair() {
    // Same size and degree sequence, different girth.
    use spidercat::graph::moebius_ladder;
    assert!(!isomorphic(&moebius_ladder(10), &dodecahedron()));
}
