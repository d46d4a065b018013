//! Girth and spectral gap.

use std::collections::VecDeque;

use nalgebra::DMatrix;

use super::MarkedGraph;

/// Length of a shortest cycle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Girth {
    Finite(usize),
    /// Forest: no cycle at all.
    Infinite,
}

impl Girth {
    pub fn at_least(self, k: usize) -> bool {
        match self {
            Girth::Finite(g) => g >= k,
            Girth::Infinite => true,
        }
    }
}

/// Shortest cycle length.  A self-loop is a 1-cycle and a parallel edge
/// pair a 2-cycle.
///
/// Works per edge: deleting edge (u,v) and measuring dist(u,v) gives the
/// shortest cycle through that edge; the minimum over edges is the girth.
pub fn girth(g: &MarkedGraph) -> Girth {
    let mut best: Option<usize> = None;
    let n = g.vertex_count();
    // Adjacency with edge indices so one copy of a parallel pair can be
    // skipped without skipping its twin.
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (i, e) in g.edges().iter().enumerate() {
        if e.u == e.v {
            return Girth::Finite(1);
        }
        adj[e.u].push((e.v, i));
        adj[e.v].push((e.u, i));
    }
    for (i, e) in g.edges().iter().enumerate() {
        let mut dist = vec![usize::MAX; n];
        let mut queue = VecDeque::new();
        dist[e.u] = 0;
        queue.push_back(e.u);
        'bfs: while let Some(x) = queue.pop_front() {
            for &(y, ei) in &adj[x] {
                if ei == i || dist[y] != usize::MAX {
                    continue;
                }
                dist[y] = dist[x] + 1;
                if y == e.v {
                    break 'bfs;
                }
                queue.push_back(y);
            }
        }
        if dist[e.v] != usize::MAX {
            let cycle = dist[e.v] + 1;
            best = Some(best.map_or(cycle, |b| b.min(cycle)));
        }
    }
    match best {
        Some(b) => Girth::Finite(b),
        None => Girth::Infinite,
    }
}

/// Second-smallest eigenvalue of the combinatorial Laplacian L = D - A.
///
/// Dense symmetric solve; disconnected input reports exactly 0.
pub fn algebraic_connectivity(g: &MarkedGraph) -> f64 {
    if !g.is_connected() {
        return 0.0;
    }
    let n = g.vertex_count();
    if n <= 1 {
        return 0.0;
    }
    let mut l = DMatrix::<f64>::zeros(n, n);
    for e in g.edges() {
        if e.u == e.v {
            continue; // a loop contributes nothing to L
        }
        l[(e.u, e.v)] -= 1.0;
        l[(e.v, e.u)] -= 1.0;
        l[(e.u, e.u)] += 1.0;
        l[(e.v, e.v)] += 1.0;
    }
    let mut eigs: Vec<f64> = l.symmetric_eigenvalues().iter().copied().collect();
    eigs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    eigs[1]
}

#[cfg(test)]
mod tests {
    use super::super::{heawood, k4, petersen, prism, MarkedGraph};
    use super::*;

    #[test]
    fn girth_of_known_graphs() {
        assert_eq!(girth(&k4()), Girth::Finite(3));
        assert_eq!(girth(&petersen()), Girth::Finite(5));
        assert_eq!(girth(&heawood()), Girth::Finite(6));
        assert_eq!(girth(&prism()), Girth::Finite(3));
    }

    #[test]
    fn girth_of_multigraphs() {
        let theta = MarkedGraph::new(2, [(0, 1, 0), (0, 1, 0), (0, 1, 0)]).unwrap();
        assert_eq!(girth(&theta), Girth::Finite(2));
    }

    #[test]
    fn lambda2_of_k4_is_4() {
        assert!((algebraic_connectivity(&k4()) - 4.0).abs() < 1e-9);
    }

    #[test]
    fn lambda2_of_prism_is_2() {
        // The prism is the box product of a triangle and an edge, so its
        // Laplacian spectrum is the sum set of {0,3,3} and {0,2}: lambda2
        // is min(2, 3) = 2.
        assert!((algebraic_connectivity(&prism()) - 2.0).abs() < 1e-9);
    }

    #[test]
    fn lambda2_of_petersen_is_2() {
        assert!((algebraic_connectivity(&petersen()) - 2.0).abs() < 1e-9);
    }
}
