//! Random cubic graphs (pairing model) and double edge swaps.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use super::{MarkedGraph, Vertex};

#[derive(Debug, Error)]
pub enum GenerateError {
    #[error("cubic graphs need an even vertex count >= 4, got {0}")]
    BadVertexCount(usize),
}

/// Sample a connected simple 3-regular graph on `vertex_count` vertices by
/// the pairing model: shuffle 3 stubs per vertex, pair them up, reject
/// outcomes with loops, parallel edges, or disconnection.  Deterministic
/// for a fixed seed.
pub fn random_cubic(vertex_count: usize, seed: u64) -> Result<MarkedGraph, GenerateError> {
    if vertex_count < 4 || vertex_count % 2 != 0 {
        return Err(GenerateError::BadVertexCount(vertex_count));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut stubs: Vec<Vertex> = (0..vertex_count).flat_map(|v| [v, v, v]).collect();
    loop {
        stubs.shuffle(&mut rng);
        let edges: Vec<(Vertex, Vertex, u8)> = stubs
            .chunks_exact(2)
            .map(|p| (p[0], p[1], 0))
            .collect();
        let simple = {
            let mut pairs: Vec<(Vertex, Vertex)> = edges
                .iter()
                .map(|&(u, v, _)| if u <= v { (u, v) } else { (v, u) })
                .collect();
            pairs.sort_unstable();
            pairs.iter().all(|&(u, v)| u != v) && pairs.windows(2).all(|w| w[0] != w[1])
        };
        if !simple {
            continue;
        }
        let g = MarkedGraph::new(vertex_count, edges).expect("pairing preserves degrees");
        if g.is_connected() {
            return Ok(g);
        }
    }
}

/// Result of a [`double_edge_swap`] attempt.
#[derive(Debug, Clone)]
pub enum SwapOutcome {
    /// A valid rewiring was found.
    Swapped(MarkedGraph),
    /// Every tried rewiring broke simplicity or connectivity within the
    /// retry budget; the input is returned unchanged.
    Exhausted(MarkedGraph),
}

impl SwapOutcome {
    pub fn into_graph(self) -> MarkedGraph {
        match self {
            SwapOutcome::Swapped(g) | SwapOutcome::Exhausted(g) => g,
        }
    }
}

const SWAP_RETRY_BUDGET: usize = 200;

/// Pick two disjoint edges (a,b),(c,d) uniformly and rewire to (a,c),(b,d)
/// or (a,d),(b,c).  Rewirings creating loops, parallel edges, or a
/// disconnected graph are rejected and retried.
pub fn double_edge_swap(g: &MarkedGraph, rng: &mut impl Rng) -> SwapOutcome {
    assert!(g.is_simple(), "swaps are defined on simple graphs");
    let m = g.edges().len();
    for _ in 0..SWAP_RETRY_BUDGET {
        let i = rng.gen_range(0..m);
        let j = rng.gen_range(0..m);
        if i == j {
            continue;
        }
        let (ei, ej) = (g.edges()[i], g.edges()[j]);
        if ei.u == ej.u || ei.u == ej.v || ei.v == ej.u || ei.v == ej.v {
            continue;
        }
        let (a, b, c, d) = (ei.u, ei.v, ej.u, ej.v);
        let (x, y) = if rng.gen_bool(0.5) {
            ((a, c), (b, d))
        } else {
            ((a, d), (b, c))
        };
        let mut edges: Vec<(Vertex, Vertex, u8)> = g
            .edges()
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != i && k != j)
            .map(|(_, e)| (e.u, e.v, e.marks))
            .collect();
        edges.push((x.0, x.1, 0));
        edges.push((y.0, y.1, 0));
        let candidate = match MarkedGraph::new(g.vertex_count(), edges) {
            Ok(c) => c,
            Err(_) => continue,
        };
        if candidate.is_simple() && candidate.is_connected() {
            return SwapOutcome::Swapped(candidate);
        }
    }
    SwapOutcome::Exhausted(g.clone())
}
