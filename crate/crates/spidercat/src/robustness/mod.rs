//! t-robustness of marked graphs by exhaustive cut enumeration, plus
//! nonlocal-cut detection (brute force here, SAT in [`sat`]).
//!
//! Robustness is decided on the Z-graph, where every mark has become a
//! boundary spider.  That makes "cut this edge twice" ordinary — the two
//! z-edges flanking a boundary spider are distinct — and gives each cut an
//! unambiguous per-side mark count.
//!
//! Two interchangeable engines back `is_t_robust`.  Small instances run
//! the literal definition: every z-edge subset of size 1..t in
//! colexicographic order, first violation reported.  Larger instances use
//! the connected-side sweep: if any cut of weight f traps more than f
//! marks on each side, then some *connected* spider set A with |δ(A)| ≤ t
//! does too (split a disconnected side into components; one component
//! inherits the violation with a no-larger boundary), so enumerating
//! connected sets with small boundary is a complete check.

pub mod sat;

pub use sat::{nonlocal_cut_cnf, solve_cnf, CnfFormula, SatOutcome, SolverBackend};

use crate::graph::MarkedGraph;
use crate::treeplan::{to_zgraph, SpiderKind, ZGraph};

/// An edge cut with its two sides.  Edge ids index the z-edge list of the
/// Z-graph for robustness reports, or the edge list of the marked graph
/// for nonlocal-cut reports.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cut {
    pub cut_edges: Vec<usize>,
    pub side_a_vertices: Vec<usize>,
    pub side_b_vertices: Vec<usize>,
    pub marks_a: usize,
    pub marks_b: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Robust,
    Violated,
}

#[derive(Debug, Clone)]
pub struct RobustnessReport {
    pub verdict: Verdict,
    pub t: usize,
    pub fault_weights_checked: usize,
    pub counterexample: Option<Cut>,
    pub cuts_enumerated: u64,
}

/// Which side-mark condition a cut of weight f must satisfy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CutCondition {
    /// min(marks_a, marks_b) <= f: the fault-equivalence criterion, the
    /// default.
    PerWeight,
    /// min(marks_a, marks_b) <= t regardless of f: the weaker literal
    /// reading, kept for comparison.
    UpToT,
}

const SUBSET_ENUM_BUDGET: u64 = 4_000_000;

/// Decide whether every cut of at most `t` z-edges is good.
pub fn is_t_robust(g: &MarkedGraph, t: usize) -> RobustnessReport {
    is_t_robust_with(g, t, CutCondition::PerWeight)
}

pub fn is_t_robust_with(g: &MarkedGraph, t: usize, cond: CutCondition) -> RobustnessReport {
    if !g.is_connected() {
        let comp = component_of(g, 0);
        let rest: Vec<usize> = (0..g.vertex_count()).filter(|v| !comp.contains(v)).collect();
        return RobustnessReport {
            verdict: Verdict::Violated,
            t,
            fault_weights_checked: 0,
            counterexample: Some(Cut {
                cut_edges: Vec::new(),
                side_a_vertices: comp,
                side_b_vertices: rest,
                marks_a: 0,
                marks_b: 0,
            }),
            cuts_enumerated: 0,
        };
    }
    let z = to_zgraph(g);
    let e = z.z_edges().len() as u64;
    let use_subsets = cond == CutCondition::UpToT
        || (1..=t as u64).map(|f| binomial(e, f)).sum::<u64>() <= SUBSET_ENUM_BUDGET;
    if use_subsets {
        subset_sweep(&z, t, cond)
    } else {
        connected_side_sweep(&z, t)
    }
}

/// Force the literal subset engine (testing/diagnostics).
pub fn is_t_robust_subsets(g: &MarkedGraph, t: usize) -> RobustnessReport {
    subset_sweep(&to_zgraph(g), t, CutCondition::PerWeight)
}

/// Force the connected-side engine (testing/diagnostics).
pub fn is_t_robust_connected(g: &MarkedGraph, t: usize) -> RobustnessReport {
    connected_side_sweep(&to_zgraph(g), t)
}

fn component_of(g: &MarkedGraph, start: usize) -> Vec<usize> {
    let adj = g.adjacency();
    let mut seen = vec![false; g.vertex_count()];
    let mut stack = vec![start];
    seen[start] = true;
    while let Some(x) = stack.pop() {
        for &y in &adj[x] {
            if !seen[y] {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    (0..g.vertex_count()).filter(|&v| seen[v]).collect()
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let mut r: u64 = 1;
    for i in 0..k {
        r = r.saturating_mul(n - i) / (i + 1);
    }
    r
}

fn marks_of(z: &ZGraph, side: &[usize]) -> usize {
    side.iter()
        .filter(|&&s| z.spiders()[s] == SpiderKind::Boundary)
        .count()
}

/// Literal engine: subsets of z-edges in colex order.  For every subset
/// whose removal disconnects the Z-graph, each bipartition of the
/// components whose boundary is exactly the subset must be good.
/// Bipartitions with a strictly smaller boundary are covered when that
/// smaller subset comes up on its own.
fn subset_sweep(z: &ZGraph, t: usize, cond: CutCondition) -> RobustnessReport {
    let edges = z.z_edges();
    let s = z.spiders().len();
    let total_marks = z.outputs().len();
    let mut cuts_enumerated = 0u64;
    for f in 1..=t.min(edges.len()) {
        let mut combo: Vec<usize> = (0..f).collect();
        loop {
            let comp = components_without(z, &combo, s);
            if comp.count > 1 {
                cuts_enumerated += 1;
                if let Some(cut) = check_bipartitions(z, &combo, &comp, f, t, cond, total_marks) {
                    return RobustnessReport {
                        verdict: Verdict::Violated,
                        t,
                        fault_weights_checked: f,
                        counterexample: Some(cut),
                        cuts_enumerated,
                    };
                }
            }
            if !next_colex(&mut combo, edges.len()) {
                break;
            }
        }
    }
    RobustnessReport {
        verdict: Verdict::Robust,
        t,
        fault_weights_checked: t,
        counterexample: None,
        cuts_enumerated,
    }
}

/// Advance a sorted index combination in colexicographic order.
fn next_colex(combo: &mut [usize], n: usize) -> bool {
    let f = combo.len();
    for i in 0..f {
        let limit = if i + 1 < f { combo[i + 1] } else { n };
        if combo[i] + 1 < limit {
            combo[i] += 1;
            for (j, slot) in combo.iter_mut().enumerate().take(i) {
                *slot = j;
            }
            return true;
        }
    }
    false
}

struct Components {
    label: Vec<usize>,
    count: usize,
}

fn components_without(z: &ZGraph, cut: &[usize], s: usize) -> Components {
    let mut dsu: Vec<usize> = (0..s).collect();
    fn find(dsu: &mut [usize], mut x: usize) -> usize {
        while dsu[x] != x {
            dsu[x] = dsu[dsu[x]];
            x = dsu[x];
        }
        x
    }
    for (i, &(a, b)) in z.z_edges().iter().enumerate() {
        if cut.binary_search(&i).is_err() {
            let (ra, rb) = (find(&mut dsu, a), find(&mut dsu, b));
            if ra != rb {
                dsu[ra] = rb;
            }
        }
    }
    let mut label = vec![usize::MAX; s];
    let mut count = 0;
    for x in 0..s {
        let r = find(&mut dsu, x);
        if label[r] == usize::MAX {
            label[r] = count;
            count += 1;
        }
        label[x] = label[r];
    }
    Components { label, count }
}

#[allow(clippy::too_many_arguments)]
fn check_bipartitions(
    z: &ZGraph,
    combo: &[usize],
    comp: &Components,
    f: usize,
    t: usize,
    cond: CutCondition,
    total_marks: usize,
) -> Option<Cut> {
    let k = comp.count;
    // Component 0 stays on side B; masks range over the other components.
    for mask in 1u32..(1 << (k - 1)) {
        let in_a = |c: usize| c > 0 && (mask >> (c - 1)) & 1 == 1;
        let exact = combo.iter().all(|&ei| {
            let (x, y) = z.z_edges()[ei];
            in_a(comp.label[x]) != in_a(comp.label[y])
        });
        if !exact {
            continue;
        }
        let side_a: Vec<usize> = (0..z.spiders().len())
            .filter(|&x| in_a(comp.label[x]))
            .collect();
        let marks_a = marks_of(z, &side_a);
        let marks_b = total_marks - marks_a;
        let bound = match cond {
            CutCondition::PerWeight => f,
            CutCondition::UpToT => t,
        };
        if marks_a.min(marks_b) > bound {
            let side_b: Vec<usize> = (0..z.spiders().len())
                .filter(|&x| !in_a(comp.label[x]))
                .collect();
            return Some(Cut {
                cut_edges: combo.to_vec(),
                side_a_vertices: side_a,
                side_b_vertices: side_b,
                marks_a,
                marks_b,
            });
        }
    }
    None
}

/// Fast engine: enumerate connected spider sets with boundary at most t.
fn connected_side_sweep(z: &ZGraph, t: usize) -> RobustnessReport {
    let s = z.spiders().len();
    let total_marks = z.outputs().len();
    let adj = z.adjacency();
    let deg: Vec<usize> = adj.iter().map(|a| a.len()).collect();
    let mut cuts_enumerated = 0u64;

    struct St<'a> {
        adj: &'a [Vec<(usize, usize)>],
        deg: &'a [usize],
        z: &'a ZGraph,
        t: usize,
        total_marks: usize,
        in_a: Vec<bool>,
        forbidden: Vec<bool>,
        boundary: usize,
        fixed_cut: usize,
        marks_a: usize,
        size_a: usize,
        s: usize,
        cuts: u64,
        violation: Option<Cut>,
    }

    impl St<'_> {
        fn evaluate(&mut self) {
            if self.size_a == self.s || self.boundary > self.t {
                return;
            }
            self.cuts += 1;
            let f = self.boundary;
            if self.marks_a.min(self.total_marks - self.marks_a) > f {
                let side_a: Vec<usize> = (0..self.s).filter(|&x| self.in_a[x]).collect();
                let side_b: Vec<usize> = (0..self.s).filter(|&x| !self.in_a[x]).collect();
                let mut cut_edges: Vec<usize> = self
                    .z
                    .z_edges()
                    .iter()
                    .enumerate()
                    .filter(|&(_, &(a, b))| self.in_a[a] != self.in_a[b])
                    .map(|(i, _)| i)
                    .collect();
                cut_edges.sort_unstable();
                let marks_a = self.marks_a;
                self.violation = Some(Cut {
                    cut_edges,
                    side_a_vertices: side_a,
                    side_b_vertices: side_b,
                    marks_a,
                    marks_b: self.total_marks - marks_a,
                });
            }
        }

        fn grow(&mut self, cand: &[usize]) {
            if self.violation.is_some() {
                return;
            }
            self.evaluate();
            if self.violation.is_some() {
                return;
            }
            let mut newly_forbidden = Vec::new();
            for (idx, &v) in cand.iter().enumerate() {
                if self.in_a[v] || self.forbidden[v] {
                    continue;
                }
                // Include v.
                let to_a = self.adj[v].iter().filter(|&&(y, _)| self.in_a[y]).count();
                let to_f = self.adj[v]
                    .iter()
                    .filter(|&&(y, _)| self.forbidden[y])
                    .count();
                self.in_a[v] = true;
                self.size_a += 1;
                self.boundary = self.boundary + (self.deg[v] - to_a) - to_a;
                self.fixed_cut += to_f;
                if self.z.spiders()[v] == SpiderKind::Boundary {
                    self.marks_a += 1;
                }
                if self.fixed_cut <= self.t {
                    let mut next: Vec<usize> = cand[idx + 1..]
                        .iter()
                        .copied()
                        .filter(|&y| !self.in_a[y] && !self.forbidden[y])
                        .collect();
                    for &(y, _) in &self.adj[v] {
                        if !self.in_a[y] && !self.forbidden[y] && !next.contains(&y) {
                            next.push(y);
                        }
                    }
                    self.grow(&next);
                }
                // Undo inclusion, then forbid v for later branches.
                self.in_a[v] = false;
                self.size_a -= 1;
                self.boundary = self.boundary + to_a - (self.deg[v] - to_a);
                self.fixed_cut -= to_f;
                if self.z.spiders()[v] == SpiderKind::Boundary {
                    self.marks_a -= 1;
                }
                if self.violation.is_some() {
                    return;
                }
                self.forbidden[v] = true;
                self.fixed_cut += to_a;
                newly_forbidden.push((v, to_a));
                if self.fixed_cut > self.t {
                    break;
                }
            }
            for (v, to_a) in newly_forbidden {
                self.forbidden[v] = false;
                self.fixed_cut -= to_a;
            }
        }
    }

    let mut violation = None;
    for start in 0..s {
        let mut st = St {
            adj: &adj,
            deg: &deg,
            z,
            t,
            total_marks,
            in_a: vec![false; s],
            forbidden: vec![false; s],
            boundary: deg[start],
            fixed_cut: 0,
            marks_a: (z.spiders()[start] == SpiderKind::Boundary) as usize,
            size_a: 1,
            s,
            cuts: 0,
            violation: None,
        };
        // Vertices below `start` are permanently excluded so each connected
        // set is visited exactly once, from its minimum element.
        for v in 0..start {
            st.forbidden[v] = true;
        }
        st.in_a[start] = true;
        st.fixed_cut = adj[start]
            .iter()
            .filter(|&&(y, _)| st.forbidden[y])
            .count();
        if st.fixed_cut <= t {
            let mut cand: Vec<usize> = Vec::new();
            for &(y, _) in &adj[start] {
                if !st.forbidden[y] && y != start && !cand.contains(&y) {
                    cand.push(y);
                }
            }
            st.grow(&cand);
        }
        cuts_enumerated += st.cuts;
        if st.violation.is_some() {
            violation = st.violation;
            break;
        }
    }
    match violation {
        Some(cut) => RobustnessReport {
            verdict: Verdict::Violated,
            t,
            fault_weights_checked: t,
            counterexample: Some(cut),
            cuts_enumerated,
        },
        None => RobustnessReport {
            verdict: Verdict::Robust,
            t,
            fault_weights_checked: t,
            counterexample: None,
            cuts_enumerated,
        },
    }
}

/// Minimum of f - min(marks_a, marks_b) over every exact cut of weight
/// f <= t, i.e. how much mark headroom the tightest small cut has.  The
/// graph is t-robust iff the slack is nonnegative (or None: no subset of
/// at most t z-edges disconnects anything).  Subset enumeration; meant
/// for the small graphs the mark-trimming step handles.
pub fn min_cut_slack(g: &MarkedGraph, t: usize) -> Option<i64> {
    let z = to_zgraph(g);
    let edges = z.z_edges();
    let s = z.spiders().len();
    let total_marks = z.outputs().len();
    let mut best: Option<i64> = None;
    for f in 1..=t.min(edges.len()) {
        let mut combo: Vec<usize> = (0..f).collect();
        loop {
            let comp = components_without(&z, &combo, s);
            if comp.count > 1 {
                for mask in 1u32..(1 << (comp.count - 1)) {
                    let in_a = |c: usize| c > 0 && (mask >> (c - 1)) & 1 == 1;
                    let exact = combo.iter().all(|&ei| {
                        let (x, y) = edges[ei];
                        in_a(comp.label[x]) != in_a(comp.label[y])
                    });
                    if !exact {
                        continue;
                    }
                    let marks_a = (0..s)
                        .filter(|&x| in_a(comp.label[x]))
                        .filter(|&x| z.spiders()[x] == SpiderKind::Boundary)
                        .count();
                    let slack = f as i64 - marks_a.min(total_marks - marks_a) as i64;
                    best = Some(best.map_or(slack, |b| b.min(slack)));
                }
            }
            if !next_colex(&mut combo, edges.len()) {
                break;
            }
        }
    }
    best
}

/// Search for a nonlocal cut (both sides contain a cycle) of weight at
/// most t, by subset enumeration over the graph's own edges in colex
/// order.  Returns the first such cut.
pub fn has_nonlocal_cut_bruteforce(g: &MarkedGraph, t: usize) -> Option<Cut> {
    let n = g.vertex_count();
    let edges = g.edges();
    for f in 1..=t.min(edges.len()) {
        let mut combo: Vec<usize> = (0..f).collect();
        loop {
            if let Some(cut) = nonlocal_check(g, &combo, n) {
                return Some(cut);
            }
            if !next_colex(&mut combo, edges.len()) {
                break;
            }
        }
    }
    None
}

fn nonlocal_check(g: &MarkedGraph, combo: &[usize], n: usize) -> Option<Cut> {
    // Component labels after removing the cut edges.
    let mut dsu: Vec<usize> = (0..n).collect();
    fn find(dsu: &mut [usize], mut x: usize) -> usize {
        while dsu[x] != x {
            dsu[x] = dsu[dsu[x]];
            x = dsu[x];
        }
        x
    }
    for (i, e) in g.edges().iter().enumerate() {
        if combo.binary_search(&i).is_err() {
            let (ra, rb) = (find(&mut dsu, e.u), find(&mut dsu, e.v));
            if ra != rb {
                dsu[ra] = rb;
            }
        }
    }
    let mut label = vec![usize::MAX; n];
    let mut count = 0;
    for x in 0..n {
        let r = find(&mut dsu, x);
        if label[r] == usize::MAX {
            label[r] = count;
            count += 1;
        }
        label[x] = label[r];
    }
    if count < 2 {
        return None;
    }
    // A component is cyclic iff its edge count reaches its vertex count.
    let mut comp_vertices = vec![0usize; count];
    let mut comp_edges = vec![0usize; count];
    for x in 0..n {
        comp_vertices[label[x]] += 1;
    }
    for (i, e) in g.edges().iter().enumerate() {
        if combo.binary_search(&i).is_err() {
            comp_edges[label[e.u]] += 1;
        }
    }
    let cyclic: Vec<bool> = (0..count).map(|c| comp_edges[c] >= comp_vertices[c]).collect();
    for mask in 1u32..(1 << (count - 1)) {
        let in_a = |c: usize| c > 0 && (mask >> (c - 1)) & 1 == 1;
        let exact = combo.iter().all(|&ei| {
            let e = g.edges()[ei];
            in_a(label[e.u]) != in_a(label[e.v])
        });
        if !exact {
            continue;
        }
        let a_cyclic = (0..count).any(|c| in_a(c) && cyclic[c]);
        let b_cyclic = (0..count).any(|c| !in_a(c) && cyclic[c]);
        if a_cyclic && b_cyclic {
            let side_a: Vec<usize> = (0..n).filter(|&x| in_a(label[x])).collect();
            let side_b: Vec<usize> = (0..n).filter(|&x| !in_a(label[x])).collect();
            return Some(Cut {
                cut_edges: combo.to_vec(),
                side_a_vertices: side_a,
                side_b_vertices: side_b,
                marks_a: 0,
                marks_b: 0,
            });
        }
    }
    None
}
