//! Mark placement as MaxSAT over edge variables.
//!
//! The local conditions below are necessary for t-robustness but not
//! sufficient, so every satisfying assignment is certified by the cut
//! checker; a violating cut comes back as a hard blocking clause (at
//! least one mark on its small side must go) and the solve repeats.
//! Maximization is a linear search on a descending cardinality bound.

use thiserror::Error;

use crate::graph::MarkedGraph;
use crate::robustness::{is_t_robust, solve_cnf, CnfFormula, SatOutcome, SolverBackend, Verdict};

#[derive(Debug, Clone)]
pub struct WcnfFormula {
    pub hard: CnfFormula,
    pub soft_clauses: Vec<(Vec<i32>, u64)>,
    pub top_weight: u64,
    /// var ids carrying marks: mark_vars[edge] lists 1 var (t > 2) or
    /// 2 vars (t = 2, one per possible mark).
    pub mark_vars: Vec<Vec<i32>>,
}

impl WcnfFormula {
    /// WDIMACS text (`p wcnf V C top`).
    pub fn to_wdimacs(&self) -> String {
        use std::fmt::Write as _;
        let mut out = String::new();
        let clauses = self.hard.clauses.len() + self.soft_clauses.len();
        writeln!(
            out,
            "p wcnf {} {} {}",
            self.hard.variable_count, clauses, self.top_weight
        )
        .unwrap();
        for cl in &self.hard.clauses {
            write!(out, "{} ", self.top_weight).unwrap();
            for &l in cl {
                write!(out, "{l} ").unwrap();
            }
            writeln!(out, "0").unwrap();
        }
        for (cl, w) in &self.soft_clauses {
            write!(out, "{w} ").unwrap();
            for &l in cl {
                write!(out, "{l} ").unwrap();
            }
            writeln!(out, "0").unwrap();
        }
        out
    }
}

#[derive(Debug, Error)]
pub enum MarkingError {
    #[error("marking constraints need t >= 2, got {0}")]
    UnsupportedT(usize),
    #[error("no {target}-mark t-robust marking exists; best feasible count {best:?}")]
    Infeasible { target: usize, best: Option<usize> },
    #[error("solver failure: {0}")]
    Solver(#[from] crate::robustness::sat::SolveError),
    #[error("counterexample loop did not converge")]
    Diverged,
}

/// Soft unit per potential mark, hard local conditions per t:
/// t=3 marks everything; t=4 forbids marked edges with all neighbors
/// marked; t=5 keeps an unmarked edge at every vertex; t=7 demands an
/// unmarked neighbor for *every* edge (a total dominating set in the line
/// graph); other t >= 6 bound the marks around every small vertex subtree.
pub fn marking_constraints(g: &MarkedGraph, t: usize) -> Result<WcnfFormula, MarkingError> {
    if t < 2 {
        return Err(MarkingError::UnsupportedT(t));
    }
    let edges = g.edges();
    let mut hard = CnfFormula::new();
    let mut mark_vars: Vec<Vec<i32>> = Vec::with_capacity(edges.len());
    for (i, e) in edges.iter().enumerate() {
        if t == 2 {
            let v1 = hard.named_var(format!("m1_e{i}_{}_{}", e.u, e.v));
            let v2 = hard.named_var(format!("m2_e{i}_{}_{}", e.u, e.v));
            // Second mark only on top of the first; breaks the symmetry.
            hard.add_clause([-v2, v1]);
            mark_vars.push(vec![v1, v2]);
        } else {
            let v = hard.named_var(format!("m_e{i}_{}_{}", e.u, e.v));
            mark_vars.push(vec![v]);
        }
    }
    let x = |i: usize| mark_vars[i][0];
    // Edge neighborhood in the line graph.
    let edge_neighbors = |i: usize| -> Vec<usize> {
        let e = edges[i];
        (0..edges.len())
            .filter(|&j| {
                j != i && {
                    let f = edges[j];
                    e.u == f.u || e.u == f.v || e.v == f.u || e.v == f.v
                }
            })
            .collect()
    };
    match t {
        2 => {}
        3 => {
            for i in 0..edges.len() {
                hard.add_clause([x(i)]);
            }
        }
        4 => {
            for i in 0..edges.len() {
                let mut cl = vec![-x(i)];
                cl.extend(edge_neighbors(i).into_iter().map(|j| -x(j)));
                hard.add_clause(cl);
            }
        }
        5 => {
            for v in 0..g.vertex_count() {
                let cl: Vec<i32> = (0..edges.len())
                    .filter(|&i| edges[i].u == v || edges[i].v == v)
                    .map(|i| -x(i))
                    .collect();
                hard.add_clause(cl);
            }
        }
        7 => {
            for i in 0..edges.len() {
                let cl: Vec<i32> = edge_neighbors(i).into_iter().map(|j| -x(j)).collect();
                hard.add_clause(cl);
            }
        }
        t => {
            for s in enumerate_subtrees(g, t - 2) {
                let lits: Vec<i32> = (0..edges.len())
                    .filter(|&i| s.contains(&edges[i].u) || s.contains(&edges[i].v))
                    .map(x)
                    .collect();
                hard.add_at_most(&lits, t);
            }
        }
    }
    let soft_clauses: Vec<(Vec<i32>, u64)> = mark_vars
        .iter()
        .flatten()
        .map(|&v| (vec![v], 1u64))
        .collect();
    let top_weight = soft_clauses.len() as u64 + 1;
    Ok(WcnfFormula {
        hard,
        soft_clauses,
        top_weight,
        mark_vars,
    })
}

/// Every connected vertex subset of size <= max_size, each exactly once,
/// ordered by (size, lexicographic members).
pub fn enumerate_subtrees(g: &MarkedGraph, max_size: usize) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    let adj = g.adjacency();
    let mut result: Vec<Vec<usize>> = Vec::new();
    // Grow from each minimum vertex; smaller vertices are forbidden.
    fn grow(
        adj: &[Vec<usize>],
        set: &mut Vec<usize>,
        cand: &[usize],
        forbidden: &mut Vec<bool>,
        max_size: usize,
        out: &mut Vec<Vec<usize>>,
    ) {
        out.push(set.clone());
        if set.len() == max_size {
            return;
        }
        let mut newly = Vec::new();
        for (idx, &v) in cand.iter().enumerate() {
            if forbidden[v] || set.contains(&v) {
                continue;
            }
            set.push(v);
            let mut next: Vec<usize> = cand[idx + 1..]
                .iter()
                .copied()
                .filter(|&y| !forbidden[y] && !set.contains(&y))
                .collect();
            for &y in &adj[v] {
                if !forbidden[y] && !set.contains(&y) && !next.contains(&y) {
                    next.push(y);
                }
            }
            grow(adj, set, &next, forbidden, max_size, out);
            set.pop();
            forbidden[v] = true;
            newly.push(v);
        }
        for v in newly {
            forbidden[v] = false;
        }
    }
    for s in 0..n {
        let mut forbidden = vec![false; n];
        for v in 0..s {
            forbidden[v] = true;
        }
        let mut set = vec![s];
        let mut cand: Vec<usize> = Vec::new();
        for &y in &adj[s] {
            if !forbidden[y] && y != s && !cand.contains(&y) {
                cand.push(y);
            }
        }
        grow(&adj, &mut set, &cand, &mut forbidden, max_size, &mut result);
    }
    for s in &mut result {
        s.sort_unstable();
    }
    result.sort_by_key(|s| (s.len(), s.clone()));
    result.dedup();
    result
}

/// Maximize the number of marks subject to the local conditions and
/// certified t-robustness.
pub fn solve_marking(
    g: &MarkedGraph,
    t: usize,
    backend: &SolverBackend,
) -> Result<MarkedGraph, MarkingError> {
    let capacity = if t == 2 {
        2 * g.edges().len()
    } else {
        g.edges().len()
    };
    let mut wcnf = marking_constraints(g, t)?;
    for bound in (0..=capacity).rev() {
        match certified_solve(g, t, &mut wcnf, bound, backend, false)? {
            Some(marked) => return Ok(marked),
            None => continue,
        }
    }
    Err(MarkingError::Infeasible {
        target: 0,
        best: None,
    })
}

/// Find a certified t-robust marking with exactly `count` marks.
pub fn solve_marking_exact(
    g: &MarkedGraph,
    t: usize,
    count: usize,
) -> Result<MarkedGraph, MarkingError> {
    solve_marking_exact_with(g, t, count, &SolverBackend::Internal)
}

pub fn solve_marking_exact_with(
    g: &MarkedGraph,
    t: usize,
    count: usize,
    backend: &SolverBackend,
) -> Result<MarkedGraph, MarkingError> {
    let mut wcnf = marking_constraints(g, t)?;
    match certified_solve(g, t, &mut wcnf, count, backend, true)? {
        Some(marked) => Ok(marked),
        None => Err(MarkingError::Infeasible {
            target: count,
            best: None,
        }),
    }
}

/// Solve at one cardinality bound (>= bound always; == bound when
/// `exact`), feeding violating cuts back as blocking clauses.  Returns
/// None when unsatisfiable at this bound.
fn certified_solve(
    g: &MarkedGraph,
    t: usize,
    wcnf: &mut WcnfFormula,
    bound: usize,
    backend: &SolverBackend,
    exact: bool,
) -> Result<Option<MarkedGraph>, MarkingError> {
    let all_vars: Vec<i32> = wcnf.mark_vars.iter().flatten().copied().collect();
    for _round in 0..10_000 {
        let mut f = wcnf.hard.clone();
        // sum >= bound, as at-most on the negations.
        let neg: Vec<i32> = all_vars.iter().map(|&v| -v).collect();
        if bound > 0 {
            f.add_at_most(&neg, all_vars.len() - bound);
        }
        if exact {
            f.add_at_most(&all_vars, bound);
        }
        match solve_cnf(&f, backend)? {
            SatOutcome::Unsat => return Ok(None),
            SatOutcome::Sat(model) => {
                let marks: Vec<u8> = wcnf
                    .mark_vars
                    .iter()
                    .map(|vars| {
                        vars.iter()
                            .filter(|&&v| model[v as usize])
                            .count() as u8
                    })
                    .collect();
                let candidate = g.with_marks(&marks).expect("mark bounds enforced");
                let report = is_t_robust(&candidate, t);
                match report.verdict {
                    Verdict::Robust => return Ok(Some(candidate)),
                    Verdict::Violated => {
                        let cut = report.counterexample.expect("violation carries a cut");
                        let small_side = if cut.marks_a <= cut.marks_b {
                            &cut.side_a_vertices
                        } else {
                            &cut.side_b_vertices
                        };
                        let block = blocking_clause(&candidate, &wcnf.mark_vars, small_side);
                        debug_assert!(!block.is_empty());
                        wcnf.hard.add_clause(block);
                    }
                }
            }
        }
    }
    Err(MarkingError::Diverged)
}

/// At least one of the marks trapped on the cut's small side must be
/// dropped.  Boundary spider ids map back to (edge, mark index) through
/// the same canonical order the Z-graph expansion uses.
fn blocking_clause(
    candidate: &MarkedGraph,
    mark_vars: &[Vec<i32>],
    side: &[usize],
) -> Vec<i32> {
    let v = candidate.vertex_count();
    // boundary spider id -> var
    let mut spider_var: Vec<i32> = Vec::new();
    for (i, e) in candidate.edges().iter().enumerate() {
        for m in 0..e.marks as usize {
            spider_var.push(mark_vars[i][m.min(mark_vars[i].len() - 1)]);
        }
    }
    let mut lits: Vec<i32> = side
        .iter()
        .filter(|&&s| s >= v)
        .map(|&s| -spider_var[s - v])
        .collect();
    lits.sort_unstable();
    lits.dedup();
    lits
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{heawood, k4, petersen};

    #[test]
    fn subtree_counts_on_k4() {
        assert_eq!(enumerate_subtrees(&k4(), 1).len(), 4);
        assert_eq!(enumerate_subtrees(&k4(), 2).len(), 10);
    }

    #[test]
    fn subtree_counts_on_petersen() {
        // 10 singletons + 15 edges + 30 paths of three (girth 5 leaves no
        // triangles).
        assert_eq!(enumerate_subtrees(&petersen(), 3).len(), 55);
    }

    #[test]
    fn t3_marks_everything() {
        let g = crate::graph::moebius_ladder(3);
        let m = solve_marking(&g, 3, &SolverBackend::Internal).unwrap();
        assert_eq!(m.mark_count(), g.edges().len());
    }

    #[test]
    fn petersen_t4_optimum_is_12() {
        let m = solve_marking(&petersen(), 4, &SolverBackend::Internal).unwrap();
        assert_eq!(m.mark_count(), 12);
        assert_eq!(is_t_robust(&m, 4).verdict, Verdict::Robust);
    }

    #[test]
    fn heawood_t5_optimum_is_14() {
        let m = solve_marking(&heawood(), 5, &SolverBackend::Internal).unwrap();
        assert_eq!(m.mark_count(), 14);
        assert_eq!(is_t_robust(&m, 5).verdict, Verdict::Robust);
    }

    #[test]
    fn exact_count_infeasible_when_too_high() {
        assert!(solve_marking_exact(&k4(), 5, 6).is_err());
    }

    #[test]
    fn wdimacs_header() {
        let w = marking_constraints(&k4(), 4).unwrap();
        let text = w.to_wdimacs();
        assert!(text.starts_with("p wcnf"));
        assert!(text.contains(&format!(" {}", w.top_weight)));
    }
}
