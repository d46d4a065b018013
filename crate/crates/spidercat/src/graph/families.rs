//! Infinite families achieving the optimal vertex ratios for t = 2..5.
//!
//! Every member carries a fixed periodic mark pattern.  For t=2 and t=3
//! the pattern is uniform (two marks per edge, one mark per edge).  The
//! t=4 and t=5 patterns were found once by the marking solver on the
//! smallest member and frozen here; tiling them over every copy stays
//! robust, which the robustness checker (the ground truth for family
//! membership) certifies in the test suite for k <= 5.

use thiserror::Error;

use super::{moebius_ladder, MarkedGraph, Vertex};

/// Marks on the 12 internal then 3 cross edge slots of one glued fragment.
const T4_PATTERN: [u8; 15] = [1, 1, 1, 0, 1, 0, 1, 1, 0, 1, 1, 1, 1, 1, 1];

/// Marks on the full edge and the two cross half-edge pairs of one torus
/// patch.
const T5_PATTERN: [u8; 3] = [1, 1, 0];

#[derive(Debug, Error)]
pub enum FamilyError {
    #[error("no optimal family construction for t={0}; supported t: 2..=5")]
    UnsupportedT(usize),
}

/// A t-robust marked graph with vertex ratio exactly r_t.
///
/// * t=2, ratio 1/3: the theta multigraph (k=1) and Möbius ladders on 2k
///   vertices (k >= 2), every edge doubly marked.
/// * t=3, ratio 2/3: Möbius ladders on 2(k+2) vertices, every edge marked
///   once.
/// * t=4, ratio 5/6: k glued copies of a 10-vertex fragment of the
///   Petersen graph (k=1 gives Petersen itself, k=2 the dodecahedron),
///   12 marks per copy.
/// * t=5, ratio 1: the k-by-k torus tiling of a 2-vertex patch, one mark
///   per vertex.
pub fn optimal_family(t: usize, k: usize) -> Result<MarkedGraph, FamilyError> {
    assert!(k >= 1);
    match t {
        2 => {
            let g = if k == 1 {
                MarkedGraph::new(2, [(0, 1, 2), (0, 1, 2), (0, 1, 2)]).unwrap()
            } else {
                double_all_marks(&moebius_ladder(k))
            };
            Ok(g)
        }
        3 => {
            let g = moebius_ladder(k + 2);
            let marks = vec![1u8; g.edges().len()];
            Ok(g.with_marks(&marks).unwrap())
        }
        4 => Ok(glued(k, &T4_PATTERN)),
        5 => Ok(torus(k, &T5_PATTERN)),
        other => Err(FamilyError::UnsupportedT(other)),
    }
}

fn double_all_marks(g: &MarkedGraph) -> MarkedGraph {
    let marks = vec![2u8; g.edges().len()];
    g.with_marks(&marks).unwrap()
}

/// Ring of k copies of the Petersen graph minus the matching
/// {(0,1),(2,3),(5,8)}; copy c's vertices 0, 2, 5 are rejoined to copy
/// c+1's vertices 1, 3, 8.  One copy closes into the Petersen graph, two
/// into the dodecahedron; every k keeps girth 5.
pub fn glued_petersen_fragments(k: usize) -> MarkedGraph {
    glued(k, &[0; 15])
}

fn glued(k: usize, pattern: &[u8; 15]) -> MarkedGraph {
    const INTERNAL: [(usize, usize); 12] = [
        (0, 4),
        (0, 5),
        (1, 2),
        (1, 6),
        (2, 7),
        (3, 4),
        (3, 8),
        (4, 9),
        (5, 7),
        (6, 8),
        (6, 9),
        (7, 9),
    ];
    const CROSS: [(usize, usize); 3] = [(0, 1), (2, 3), (5, 8)];
    let at = |c: usize, v: usize| -> Vertex { (c % k) * 10 + v };
    let mut edges = Vec::new();
    for c in 0..k {
        for (s, &(u, v)) in INTERNAL.iter().enumerate() {
            edges.push((at(c, u), at(c, v), pattern[s]));
        }
        for (s, &(u, v)) in CROSS.iter().enumerate() {
            edges.push((at(c, u), at(c + 1, v), pattern[12 + s]));
        }
    }
    MarkedGraph::new(10 * k, edges).unwrap()
}

/// k-by-k torus tiling of a patch with two vertices u, v joined by one
/// full edge; u's remaining half-edges attach to the v of the right and
/// lower neighbor tiles.  k=1 degenerates to the theta multigraph.
pub fn torus_patches(k: usize) -> MarkedGraph {
    torus(k, &[0; 3])
}

fn torus(k: usize, pattern: &[u8; 3]) -> MarkedGraph {
    let u = |i: usize, j: usize| 2 * ((i % k) * k + (j % k));
    let v = |i: usize, j: usize| u(i, j) + 1;
    let mut edges = Vec::new();
    for i in 0..k {
        for j in 0..k {
            edges.push((u(i, j), v(i, j), pattern[0]));
            edges.push((u(i, j), v(i + 1, j), pattern[1]));
            edges.push((u(i, j), v(i, j + 1), pattern[2]));
        }
    }
    MarkedGraph::new(2 * k * k, edges).unwrap()
}

#[cfg(test)]
mod tests {
    use super::super::{girth, petersen, Girth};
    use super::*;

    #[test]
    fn fragment_ring_closes_to_petersen() {
        assert_eq!(glued_petersen_fragments(1), petersen());
    }

    #[test]
    fn fragment_ring_sizes_and_girth() {
        for k in 1..=5 {
            let g = glued_petersen_fragments(k);
            assert_eq!(g.vertex_count(), 10 * k);
            assert_eq!(g.edges().len(), 15 * k);
            assert!(g.is_connected());
            assert_eq!(girth(&g), Girth::Finite(5));
        }
    }

    #[test]
    fn dodecahedron_shape() {
        // 20 vertices, 30 edges, girth 5, vertex-transitive degree 3: the
        // gluing of two fragments.  Full isomorphism certification lives in
        // the integration tests.
        let g = glued_petersen_fragments(2);
        assert_eq!(g.vertex_count(), 20);
        assert_eq!(g.edges().len(), 30);
        assert_eq!(girth(&g), Girth::Finite(5));
    }

    #[test]
    fn torus_is_cubic_for_all_k() {
        for k in 1..=5 {
            let g = torus_patches(k);
            assert_eq!(g.vertex_count(), 2 * k * k);
            assert_eq!(g.edges().len(), 3 * k * k);
            assert!(g.is_connected());
        }
        assert_eq!(girth(&torus_patches(3)), Girth::Finite(6));
    }

    #[test]
    fn fixed_mark_families_have_exact_ratio() {
        for k in 1..=5 {
            let g2 = optimal_family(2, k).unwrap();
            let (v, n) = g2.vertex_ratio().unwrap();
            assert_eq!(3 * v, n);
            let g3 = optimal_family(3, k).unwrap();
            let (v, n) = g3.vertex_ratio().unwrap();
            assert_eq!(3 * v, 2 * n);
            let g4 = optimal_family(4, k).unwrap();
            let (v, n) = g4.vertex_ratio().unwrap();
            assert_eq!(6 * v, 5 * n);
            let g5 = optimal_family(5, k).unwrap();
            let (v, n) = g5.vertex_ratio().unwrap();
            assert_eq!(v, n);
        }
    }

    #[test]
    fn unsupported_t_is_an_error() {
        assert!(optimal_family(6, 1).is_err());
        assert!(optimal_family(1, 1).is_err());
    }
}
