//! Z-graphs and spider-ordering trees.
//!
//! A marked graph turns into a *Z-graph* by replacing every mark with a
//! boundary spider subdividing its edge.  Circuit extraction then needs a
//! spanning tree whose root is an internal (3-ary) spider and whose leaves
//! are all boundary (2-ary) spiders; the tree dictates which spider sits
//! on which qubit line.  The tree heuristic here follows a two-phase plan:
//! a spanning forest over edges not touching boundary spiders, then greedy
//! diameter-minimizing merges of the remaining forest.

use std::collections::VecDeque;

use thiserror::Error;

use crate::graph::MarkedGraph;

pub type SpiderId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpiderKind {
    /// 3-ary spider, all legs are z-edges.
    Internal,
    /// 2-ary spider with one output leg.
    Boundary,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZGraph {
    spiders: Vec<SpiderKind>,
    z_edges: Vec<(SpiderId, SpiderId)>,
    /// Boundary spiders in qubit order.
    outputs: Vec<SpiderId>,
}

impl ZGraph {
    pub fn spiders(&self) -> &[SpiderKind] {
        &self.spiders
    }

    pub fn z_edges(&self) -> &[(SpiderId, SpiderId)] {
        &self.z_edges
    }

    pub fn outputs(&self) -> &[SpiderId] {
        &self.outputs
    }

    pub fn internal_count(&self) -> usize {
        self.spiders
            .iter()
            .filter(|s| **s == SpiderKind::Internal)
            .count()
    }

    pub fn adjacency(&self) -> Vec<Vec<(SpiderId, usize)>> {
        let mut adj = vec![Vec::new(); self.spiders.len()];
        for (i, &(a, b)) in self.z_edges.iter().enumerate() {
            adj[a].push((b, i));
            adj[b].push((a, i));
        }
        adj
    }

    pub fn is_connected(&self) -> bool {
        if self.spiders.is_empty() {
            return true;
        }
        let adj = self.adjacency();
        let mut seen = vec![false; self.spiders.len()];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(x) = stack.pop() {
            for &(y, _) in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    count += 1;
                    stack.push(y);
                }
            }
        }
        count == self.spiders.len()
    }
}

/// Expand marks into boundary spiders.  Internal spiders keep the vertex
/// ids of `g`; boundary spiders are appended in canonical edge order (and
/// mark index within an edge), which also fixes the output qubit order.
pub fn to_zgraph(g: &MarkedGraph) -> ZGraph {
    let v = g.vertex_count();
    let mut spiders = vec![SpiderKind::Internal; v];
    let mut z_edges = Vec::new();
    let mut outputs = Vec::new();
    for e in g.edges() {
        match e.marks {
            0 => z_edges.push((e.u, e.v)),
            m => {
                let mut prev = e.u;
                for _ in 0..m {
                    let b = spiders.len();
                    spiders.push(SpiderKind::Boundary);
                    outputs.push(b);
                    z_edges.push((prev, b));
                    prev = b;
                }
                z_edges.push((prev, e.v));
            }
        }
    }
    ZGraph {
        spiders,
        z_edges,
        outputs,
    }
}

/// Rooted spanning tree over all spiders of a Z-graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpiderTree {
    pub root: SpiderId,
    /// parent[s] = None exactly for the root.
    pub parent: Vec<Option<SpiderId>>,
}

impl SpiderTree {
    pub fn children(&self) -> Vec<Vec<SpiderId>> {
        let mut ch = vec![Vec::new(); self.parent.len()];
        for (s, p) in self.parent.iter().enumerate() {
            if let Some(p) = p {
                ch[*p].push(s);
            }
        }
        ch
    }
}

#[derive(Debug, Error)]
pub enum TreeError {
    #[error("Z-graph is disconnected")]
    Disconnected,
    #[error("Z-graph has no internal spider to serve as root")]
    NoInternalSpider,
    #[error("no valid spider-ordering tree found; internal spiders stuck as leaves: {0:?}")]
    StuckLeaves(Vec<SpiderId>),
}

/// Check the spider-ordering-tree invariants: spanning, acyclic, root an
/// internal spider, every leaf a boundary spider.
pub fn validate_tree(z: &ZGraph, tree: &SpiderTree) -> bool {
    let s = z.spiders().len();
    if tree.parent.len() != s || tree.root >= s {
        return false;
    }
    if z.spiders()[tree.root] != SpiderKind::Internal {
        return false;
    }
    if tree.parent[tree.root].is_some() {
        return false;
    }
    // Exactly one root, every edge a real z-edge, no cycles (walk to root).
    let edge_exists = |a: SpiderId, b: SpiderId| {
        z.z_edges()
            .iter()
            .any(|&(x, y)| (x, y) == (a, b) || (x, y) == (b, a))
    };
    for (x, p) in tree.parent.iter().enumerate() {
        match p {
            None => {
                if x != tree.root {
                    return false;
                }
            }
            Some(p) => {
                if !edge_exists(x, *p) {
                    return false;
                }
            }
        }
    }
    // Reachability doubles as the acyclicity check.
    let ch = tree.children();
    let mut seen = vec![false; s];
    let mut stack = vec![tree.root];
    seen[tree.root] = true;
    let mut count = 1;
    while let Some(x) = stack.pop() {
        for &c in &ch[x] {
            if seen[c] {
                return false;
            }
            seen[c] = true;
            count += 1;
            stack.push(c);
        }
    }
    if count != s {
        return false;
    }
    // Leaves must be boundary spiders.
    (0..s).all(|x| !ch[x].is_empty() || z.spiders()[x] == SpiderKind::Boundary)
}

/// Build a spider-ordering tree: phase 1 takes a spanning forest over
/// z-edges avoiding boundary spiders; phase 2 greedily merges the forest
/// along bridging edges, minimizing the merged diameter estimate
/// max(diam A, diam B, ecc_A(u)+1+ecc_B(v)); the result is rooted at a
/// center chosen among internal spiders and locally repaired so that all
/// leaves are boundary spiders.
pub fn build_spider_tree(z: &ZGraph) -> Result<SpiderTree, TreeError> {
    if !z.is_connected() {
        return Err(TreeError::Disconnected);
    }
    if z.internal_count() == 0 {
        return Err(TreeError::NoInternalSpider);
    }
    let mut last_stuck = Vec::new();
    // Greedy first; on repair failure, retry with the k-th merge demoted to
    // its runner-up choice (bounded backtracking), then fall back to plain
    // DFS trees from every internal root with internal-first expansion.
    for variant in 0..4 {
        let tree_edges = merge_forest(z, variant);
        let tree = root_at_center(z, &tree_edges);
        match repair_leaves(z, tree) {
            Ok(t) => {
                debug_assert!(validate_tree(z, &t));
                return Ok(t);
            }
            Err(stuck) => last_stuck = stuck,
        }
    }
    for root in 0..z.spiders().len() {
        if z.spiders()[root] != SpiderKind::Internal {
            continue;
        }
        for reversed in [false, true] {
            let tree = dfs_tree(z, root, reversed);
            match repair_leaves(z, tree) {
                Ok(t) => {
                    debug_assert!(validate_tree(z, &t));
                    return Ok(t);
                }
                Err(stuck) => last_stuck = stuck,
            }
        }
    }
    Err(TreeError::StuckLeaves(last_stuck))
}

/// Union-find with path halving.
struct Dsu(Vec<usize>);

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu((0..n).collect())
    }
    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.0[ra] = rb;
        true
    }
}

/// Phases 1 and 2; returns the undirected spanning tree edge list.
/// `variant` > 0 demotes the variant-th greedy merge to its second choice.
fn merge_forest(z: &ZGraph, variant: usize) -> Vec<(SpiderId, SpiderId)> {
    let s = z.spiders().len();
    let mut dsu = Dsu::new(s);
    let mut tree_edges: Vec<(SpiderId, SpiderId)> = Vec::new();
    for &(a, b) in z.z_edges() {
        if z.spiders()[a] == SpiderKind::Internal
            && z.spiders()[b] == SpiderKind::Internal
            && dsu.union(a, b)
        {
            tree_edges.push((a, b));
        }
    }
    let mut merge_no = 0;
    loop {
        // Eccentricities within current trees, recomputed per round; the
        // instances are desk-scale.
        let ecc = tree_eccentricities(s, &tree_edges);
        let diam = tree_diameters(s, &tree_edges, &ecc, &mut dsu);
        let mut best: Option<((usize, (SpiderId, SpiderId)), (SpiderId, SpiderId))> = None;
        let mut second: Option<((usize, (SpiderId, SpiderId)), (SpiderId, SpiderId))> = None;
        for &(u, v) in z.z_edges() {
            let (ru, rv) = (dsu.find(u), dsu.find(v));
            if ru == rv {
                continue;
            }
            let key = (
                diam[ru].max(diam[rv]).max(ecc[u] + 1 + ecc[v]),
                (u.min(v), u.max(v)),
            );
            let cand = (key, (u, v));
            match &best {
                None => best = Some(cand),
                Some(b) if cand.0 < b.0 => {
                    second = best.take();
                    best = Some(cand);
                }
                _ => match &second {
                    None => second = Some(cand),
                    Some(sec) if cand.0 < sec.0 => second = Some(cand),
                    _ => {}
                },
            }
        }
        let Some((_, (u, v))) = best else { break };
        merge_no += 1;
        let (u, v) = if merge_no == variant {
            second.map_or((u, v), |(_, e)| e)
        } else {
            (u, v)
        };
        dsu.union(u, v);
        tree_edges.push((u, v));
    }
    tree_edges
}

fn tree_adjacency(s: usize, tree_edges: &[(SpiderId, SpiderId)]) -> Vec<Vec<SpiderId>> {
    let mut adj = vec![Vec::new(); s];
    for &(a, b) in tree_edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    adj
}

/// Eccentricity of every spider within its own tree.
fn tree_eccentricities(s: usize, tree_edges: &[(SpiderId, SpiderId)]) -> Vec<usize> {
    let adj = tree_adjacency(s, tree_edges);
    let mut ecc = vec![0usize; s];
    for start in 0..s {
        let mut dist = vec![usize::MAX; s];
        let mut q = VecDeque::new();
        dist[start] = 0;
        q.push_back(start);
        let mut far = 0;
        while let Some(x) = q.pop_front() {
            far = far.max(dist[x]);
            for &y in &adj[x] {
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    q.push_back(y);
                }
            }
        }
        ecc[start] = far;
    }
    ecc
}

fn tree_diameters(
    s: usize,
    _tree_edges: &[(SpiderId, SpiderId)],
    ecc: &[usize],
    dsu: &mut Dsu,
) -> Vec<usize> {
    let mut diam = vec![0usize; s];
    for x in 0..s {
        let r = dsu.find(x);
        diam[r] = diam[r].max(ecc[x]);
    }
    diam
}

fn root_at_center(z: &ZGraph, tree_edges: &[(SpiderId, SpiderId)]) -> SpiderTree {
    let s = z.spiders().len();
    let ecc = tree_eccentricities(s, tree_edges);
    let root = (0..s)
        .filter(|&x| z.spiders()[x] == SpiderKind::Internal)
        .min_by_key(|&x| (ecc[x], x))
        .expect("internal spider exists");
    let adj = tree_adjacency(s, tree_edges);
    let mut parent = vec![None; s];
    let mut seen = vec![false; s];
    let mut stack = vec![root];
    seen[root] = true;
    while let Some(x) = stack.pop() {
        for &y in &adj[x] {
            if !seen[y] {
                seen[y] = true;
                parent[y] = Some(x);
                stack.push(y);
            }
        }
    }
    SpiderTree { root, parent }
}

/// Plain DFS spanning tree from `root`, expanding internal spiders before
/// boundary ones so that boundary spiders tend to end up as leaves.
/// `reversed` flips the tie-break order among equal-kind neighbors.
fn dfs_tree(z: &ZGraph, root: SpiderId, reversed: bool) -> SpiderTree {
    let s = z.spiders().len();
    let adj = z.adjacency();
    let mut parent = vec![None; s];
    let mut seen = vec![false; s];
    let mut stack = vec![root];
    seen[root] = true;
    while let Some(x) = stack.pop() {
        let mut next: Vec<SpiderId> = adj[x].iter().map(|&(y, _)| y).collect();
        next.sort_unstable_by_key(|&y| (z.spiders()[y] == SpiderKind::Internal, y));
        if reversed {
            next.reverse();
            next.sort_by_key(|&y| z.spiders()[y] == SpiderKind::Internal);
        }
        // Internal neighbors sort last and so pop first.
        for y in next {
            if !seen[y] {
                seen[y] = true;
                parent[y] = Some(x);
                stack.push(y);
            }
        }
    }
    SpiderTree { root, parent }
}

/// Re-hang z-neighbors beneath internal spiders that ended up as leaves.
/// Moving a non-ancestor neighbor (with its whole subtree) under the stuck
/// leaf keeps the tree spanning and acyclic; candidates are ranked so that
/// moves which cannot create a fresh stuck leaf come first.
fn repair_leaves(z: &ZGraph, mut tree: SpiderTree) -> Result<SpiderTree, Vec<SpiderId>> {
    let s = z.spiders().len();
    let adj = z.adjacency();
    for _pass in 0..4 * s {
        let ch = tree.children();
        let stuck: Vec<SpiderId> = (0..s)
            .filter(|&x| ch[x].is_empty() && z.spiders()[x] == SpiderKind::Internal)
            .collect();
        let Some(&x) = stuck.first() else {
            return Ok(tree);
        };
        let is_ancestor = |tree: &SpiderTree, a: SpiderId, mut b: SpiderId| {
            loop {
                if a == b {
                    return true;
                }
                match tree.parent[b] {
                    Some(p) => b = p,
                    None => return false,
                }
            }
        };
        let cand = adj[x]
            .iter()
            .map(|&(y, _)| y)
            .filter(|&y| {
                tree.parent[y].is_some()
                    && tree.parent[y] != Some(x)
                    && !is_ancestor(&tree, y, x)
            })
            .min_by_key(|&y| {
                let p = tree.parent[y].unwrap();
                // Tier 0: childless boundary spider, nothing else changes.
                // Tier 1: the old parent keeps a child (or may be a leaf).
                // Tier 2: the old parent becomes stuck in turn.
                let tier = if z.spiders()[y] == SpiderKind::Boundary && ch[y].is_empty() {
                    0
                } else if z.spiders()[p] == SpiderKind::Boundary || ch[p].len() >= 2 {
                    1
                } else {
                    2
                };
                (tier, y)
            });
        match cand {
            Some(y) => tree.parent[y] = Some(x),
            None => return Err(stuck),
        }
    }
    let ch = tree.children();
    Err((0..s)
        .filter(|&x| ch[x].is_empty() && z.spiders()[x] == SpiderKind::Internal)
        .collect())
}
