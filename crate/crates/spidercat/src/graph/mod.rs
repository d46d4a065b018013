//! 3-regular marked multigraphs: representation, generation, metrics,
//! hill-climbing search, and the known optimal families.

mod families;
mod generate;
mod metrics;
mod search;

pub use families::{glued_petersen_fragments, optimal_family, torus_patches, FamilyError};
pub use generate::{double_edge_swap, random_cubic, SwapOutcome};
pub use metrics::{algebraic_connectivity, girth, Girth};
pub use search::{hill_climb, moore_bound, GraphSearchConfig, SearchOutcome};

use std::fmt::Write as _;
use std::str::FromStr;

use thiserror::Error;

/// Vertex index into a [`MarkedGraph`].
pub type Vertex = usize;

/// One edge of a marked graph.  Canonical form has `u <= v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub u: Vertex,
    pub v: Vertex,
    /// Output-qubit attachment points carried by this edge, 0..=2.
    pub marks: u8,
}

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("vertex {0} has degree {1}, expected 3")]
    BadDegree(Vertex, usize),
    #[error("edge ({0},{1}) references vertex out of range (n={2})")]
    VertexRange(Vertex, Vertex, usize),
    #[error("edge ({0},{1}) carries {2} marks, at most 2 allowed")]
    TooManyMarks(Vertex, Vertex, u8),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// A 3-regular multigraph with 0..=2 marks per edge.  Parallel edges and
/// self-loops are permitted; a self-loop contributes 2 to its endpoint's
/// degree.  The edge list is kept canonical (endpoints swapped to `u <= v`,
/// then stably sorted), so two graphs are equal iff their canonical forms
/// are equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MarkedGraph {
    vertex_count: usize,
    edges: Vec<Edge>,
}

impl MarkedGraph {
    /// Build a graph from an edge list, canonicalizing and checking the
    /// 3-regularity and mark invariants.
    pub fn new(
        vertex_count: usize,
        edges: impl IntoIterator<Item = (Vertex, Vertex, u8)>,
    ) -> Result<Self, GraphError> {
        let mut es: Vec<Edge> = Vec::new();
        for (u, v, marks) in edges {
            if u >= vertex_count || v >= vertex_count {
                return Err(GraphError::VertexRange(u, v, vertex_count));
            }
            if marks > 2 {
                return Err(GraphError::TooManyMarks(u, v, marks));
            }
            let (u, v) = if u <= v { (u, v) } else { (v, u) };
            es.push(Edge { u, v, marks });
        }
        es.sort_by_key(|e| (e.u, e.v));
        let g = MarkedGraph {
            vertex_count,
            edges: es,
        };
        for x in 0..vertex_count {
            let d = g.degree(x);
            if d != 3 {
                return Err(GraphError::BadDegree(x, d));
            }
        }
        Ok(g)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn degree(&self, x: Vertex) -> usize {
        self.edges
            .iter()
            .map(|e| (e.u == x) as usize + (e.v == x) as usize)
            .sum()
    }

    /// Total number of marks, i.e. the number of output qubits this graph
    /// can serve.
    pub fn mark_count(&self) -> usize {
        self.edges.iter().map(|e| e.marks as usize).sum()
    }

    /// vertices / marks.  `None` when unmarked.
    pub fn vertex_ratio(&self) -> Option<(usize, usize)> {
        let n = self.mark_count();
        (n > 0).then_some((self.vertex_count, n))
    }

    pub fn is_simple(&self) -> bool {
        self.edges.iter().all(|e| e.u != e.v)
            && self.edges.windows(2).all(|w| (w[0].u, w[0].v) != (w[1].u, w[1].v))
    }

    /// Neighbor lists (with multiplicity; a self-loop lists its endpoint
    /// twice).
    pub fn adjacency(&self) -> Vec<Vec<Vertex>> {
        let mut adj = vec![Vec::new(); self.vertex_count];
        for e in &self.edges {
            adj[e.u].push(e.v);
            if e.u != e.v {
                adj[e.v].push(e.u);
            } else {
                adj[e.u].push(e.v);
            }
        }
        adj
    }

    pub fn is_connected(&self) -> bool {
        if self.vertex_count == 0 {
            return true;
        }
        let adj = self.adjacency();
        let mut seen = vec![false; self.vertex_count];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(x) = stack.pop() {
            for &y in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    count += 1;
                    stack.push(y);
                }
            }
        }
        count == self.vertex_count
    }

    /// Replace the mark assignment wholesale (same edge order as
    /// [`edges`](Self::edges)).
    pub fn with_marks(&self, marks: &[u8]) -> Result<Self, GraphError> {
        assert_eq!(marks.len(), self.edges.len());
        MarkedGraph::new(
            self.vertex_count,
            self.edges
                .iter()
                .zip(marks)
                .map(|(e, &m)| (e.u, e.v, m)),
        )
    }

    /// Drop all marks.
    pub fn unmarked(&self) -> Self {
        let mut g = self.clone();
        for e in &mut g.edges {
            e.marks = 0;
        }
        g
    }

    /// Serialize to the text format: `cubic <n>` then one `e u v marks`
    /// line per canonical edge.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "cubic {}", self.vertex_count).unwrap();
        for e in &self.edges {
            writeln!(s, "e {} {} {}", e.u, e.v, e.marks).unwrap();
        }
        s
    }
}

impl FromStr for MarkedGraph {
    type Err = GraphError;

    fn from_str(text: &str) -> Result<Self, GraphError> {
        let mut vertex_count: Option<usize> = None;
        let mut edges = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut it = line.split_whitespace();
            let parse = |tok: Option<&str>, i: usize| -> Result<usize, GraphError> {
                tok.ok_or(GraphError::Parse {
                    line: i + 1,
                    msg: "missing field".into(),
                })?
                .parse()
                .map_err(|_| GraphError::Parse {
                    line: i + 1,
                    msg: "not an integer".into(),
                })
            };
            match it.next() {
                Some("cubic") => vertex_count = Some(parse(it.next(), i)?),
                Some("e") => {
                    let u = parse(it.next(), i)?;
                    let v = parse(it.next(), i)?;
                    let m = parse(it.next(), i)?;
                    if m > 2 {
                        return Err(GraphError::TooManyMarks(u, v, m as u8));
                    }
                    edges.push((u, v, m as u8));
                }
                Some(other) => {
                    return Err(GraphError::Parse {
                        line: i + 1,
                        msg: format!("unknown directive {other:?}"),
                    })
                }
                None => unreachable!(),
            }
        }
        let n = vertex_count.ok_or(GraphError::Parse {
            line: 0,
            msg: "missing `cubic <n>` header".into(),
        })?;
        MarkedGraph::new(n, edges)
    }
}

/// The Petersen graph, unmarked.  Used throughout the test corpus and as
/// the k=1 member of the t=4 family.
pub fn petersen() -> MarkedGraph {
    let outer = (0..5).map(|i| (i, (i + 1) % 5, 0));
    let spokes = (0..5).map(|i| (i, i + 5, 0));
    let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5, 0));
    MarkedGraph::new(10, outer.chain(spokes).chain(inner)).unwrap()
}

/// The Heawood graph (the 14-vertex cubic cage of girth 6), unmarked.
pub fn heawood() -> MarkedGraph {
    // Standard bipartite presentation: cycle 0..13 plus chords i -> i+5 from
    // even vertices.
    let cycle = (0..14).map(|i| (i, (i + 1) % 14, 0));
    let chords = (0..14).step_by(2).map(|i| (i, (i + 5) % 14, 0));
    MarkedGraph::new(14, cycle.chain(chords)).unwrap()
}

/// Complete graph K4, unmarked.
pub fn k4() -> MarkedGraph {
    MarkedGraph::new(4, (0..4).flat_map(|u| (u + 1..4).map(move |v| (u, v, 0)))).unwrap()
}

/// The 3-prism (two triangles joined by a matching), unmarked.
pub fn prism() -> MarkedGraph {
    MarkedGraph::new(
        6,
        [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)]
            .into_iter()
            .map(|(u, v)| (u, v, 0)),
    )
    .unwrap()
}

/// Möbius ladder on `2k` vertices: a 2k-cycle plus all k diameters.
/// 3-edge-connected for every k >= 2 (k=2 gives K4, k=3 gives K3,3).
pub fn moebius_ladder(k: usize) -> MarkedGraph {
    assert!(k >= 2);
    let n = 2 * k;
    let cycle = (0..n).map(|i| (i, (i + 1) % n, 0));
    let rungs = (0..k).map(|i| (i, i + k, 0));
    MarkedGraph::new(n, cycle.chain(rungs)).unwrap()
}
