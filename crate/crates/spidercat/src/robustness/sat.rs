//! CNF formulas, the nonlocal-cut encoding, a small complete DPLL solver
//! (unit propagation over two watched literals), and DIMACS plumbing for
//! external solvers.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::Command;

use thiserror::Error;

use crate::graph::MarkedGraph;

/// Propositional formula in CNF.  Variables are 1-based; negative literals
/// are negations, DIMACS style.
#[derive(Debug, Clone, Default)]
pub struct CnfFormula {
    pub variable_count: usize,
    pub clauses: Vec<Vec<i32>>,
    /// Optional variable-name map, emitted as DIMACS comments.
    pub comments: BTreeMap<usize, String>,
}

impl CnfFormula {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn fresh_var(&mut self) -> i32 {
        self.variable_count += 1;
        self.variable_count as i32
    }

    pub fn named_var(&mut self, name: impl Into<String>) -> i32 {
        let v = self.fresh_var();
        self.comments.insert(v as usize, name.into());
        v
    }

    pub fn add_clause(&mut self, lits: impl Into<Vec<i32>>) {
        let lits = lits.into();
        debug_assert!(!lits.is_empty());
        debug_assert!(lits
            .iter()
            .all(|&l| l != 0 && l.unsigned_abs() as usize <= self.variable_count));
        self.clauses.push(lits);
    }

    /// Sequential-counter (Sinz) encoding of sum(lits) <= bound.
    pub fn add_at_most(&mut self, lits: &[i32], bound: usize) {
        let n = lits.len();
        if bound >= n {
            return;
        }
        if bound == 0 {
            for &l in lits {
                self.add_clause([-l]);
            }
            return;
        }
        let k = bound;
        // s[i][j]: among the first i+1 literals at least j+1 are true.
        let mut s = vec![vec![0i32; k]; n - 1];
        for (i, row) in s.iter_mut().enumerate() {
            for (j, slot) in row.iter_mut().enumerate() {
                *slot = {
                    self.variable_count += 1;
                    let v = self.variable_count as i32;
                    let _ = (i, j);
                    v
                };
            }
        }
        self.add_clause([-lits[0], s[0][0]]);
        for j in 1..k {
            self.add_clause([-s[0][j]]);
        }
        for i in 1..n - 1 {
            self.add_clause([-lits[i], s[i][0]]);
            self.add_clause([-s[i - 1][0], s[i][0]]);
            for j in 1..k {
                self.add_clause([-lits[i], -s[i - 1][j - 1], s[i][j]]);
                self.add_clause([-s[i - 1][j], s[i][j]]);
            }
            self.add_clause([-lits[i], -s[i - 1][k - 1]]);
        }
        self.add_clause([-lits[n - 1], -s[n - 2][k - 1]]);
    }

    /// DIMACS text (`p cnf V C`), with name comments up front.
    pub fn to_dimacs(&self) -> String {
        let mut out = String::new();
        for (v, name) in &self.comments {
            writeln!(out, "c var {v} = {name}").unwrap();
        }
        writeln!(out, "p cnf {} {}", self.variable_count, self.clauses.len()).unwrap();
        for cl in &self.clauses {
            for &l in cl {
                write!(out, "{l} ").unwrap();
            }
            writeln!(out, "0").unwrap();
        }
        out
    }

    pub fn from_dimacs(text: &str) -> Result<Self, SolveError> {
        let mut f = CnfFormula::new();
        let mut expected_clauses = None;
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('c') {
                continue;
            }
            if let Some(rest) = line.strip_prefix("p cnf") {
                let mut it = rest.split_whitespace();
                f.variable_count = it
                    .next()
                    .and_then(|x| x.parse().ok())
                    .ok_or_else(|| SolveError::Parse("bad p line".into()))?;
                expected_clauses = it.next().and_then(|x| x.parse::<usize>().ok());
                continue;
            }
            let mut lits = Vec::new();
            for tok in line.split_whitespace() {
                let l: i32 = tok
                    .parse()
                    .map_err(|_| SolveError::Parse(format!("bad literal {tok:?}")))?;
                if l == 0 {
                    break;
                }
                lits.push(l);
            }
            if !lits.is_empty() {
                f.clauses.push(lits);
            }
        }
        if let Some(c) = expected_clauses {
            if c != f.clauses.len() {
                return Err(SolveError::Parse(format!(
                    "header promised {c} clauses, found {}",
                    f.clauses.len()
                )));
            }
        }
        Ok(f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SatOutcome {
    /// model[v] for v in 1..=variable_count.
    Sat(Vec<bool>),
    Unsat,
}

impl SatOutcome {
    pub fn is_sat(&self) -> bool {
        matches!(self, SatOutcome::Sat(_))
    }
}

#[derive(Debug, Clone)]
pub enum SolverBackend {
    Internal,
    External(PathBuf),
}

#[derive(Debug, Error)]
pub enum SolveError {
    #[error("internal solver exceeded its budget")]
    Timeout,
    #[error("external solver failed: {0}")]
    Backend(String),
    #[error("solver output parse error: {0}")]
    Parse(String),
}

/// Solve a formula with the chosen backend.
pub fn solve_cnf(f: &CnfFormula, backend: &SolverBackend) -> Result<SatOutcome, SolveError> {
    match backend {
        SolverBackend::Internal => Dpll::new(f).solve(2_000_000_000),
        SolverBackend::External(path) => solve_external(f, path),
    }
}

fn solve_external(f: &CnfFormula, path: &PathBuf) -> Result<SatOutcome, SolveError> {
    let dir = std::env::temp_dir();
    let file = dir.join(format!(
        "spidercat-{}-{:x}.cnf",
        std::process::id(),
        f as *const _ as usize
    ));
    std::fs::write(&file, f.to_dimacs()).map_err(|e| SolveError::Backend(e.to_string()))?;
    let out = Command::new(path)
        .arg(&file)
        .output()
        .map_err(|e| SolveError::Backend(format!("spawn {}: {e}", path.display())))?;
    let _ = std::fs::remove_file(&file);
    let text = String::from_utf8_lossy(&out.stdout);
    let mut verdict = None;
    let mut model = vec![false; f.variable_count + 1];
    for line in text.lines() {
        if let Some(rest) = line.strip_prefix("s ") {
            verdict = Some(rest.trim().to_string());
        } else if let Some(rest) = line.strip_prefix("v ") {
            for tok in rest.split_whitespace() {
                let l: i32 = tok
                    .parse()
                    .map_err(|_| SolveError::Parse(format!("bad model literal {tok:?}")))?;
                if l != 0 && (l.unsigned_abs() as usize) < model.len() {
                    model[l.unsigned_abs() as usize] = l > 0;
                }
            }
        }
    }
    match verdict.as_deref() {
        Some("SATISFIABLE") => Ok(SatOutcome::Sat(model)),
        Some("UNSATISFIABLE") => Ok(SatOutcome::Unsat),
        other => Err(SolveError::Backend(format!(
            "unrecognized solver verdict {other:?} (exit {:?})",
            out.status.code()
        ))),
    }
}

/// Complete DPLL with two watched literals and chronological backtracking.
/// Deterministic: branches on the lowest-index unassigned variable, trying
/// true first.
struct Dpll {
    clauses: Vec<Vec<i32>>,
    watches: Vec<Vec<usize>>, // lit index -> clause indices
    assign: Vec<i8>,          // var -> 0 / 1 / -1
    trail: Vec<i32>,
    // (trail length, decision literal, flipped already) per level
    decisions: Vec<(usize, i32, bool)>,
    nvars: usize,
    empty_clause: bool,
}

fn lit_index(l: i32) -> usize {
    let v = l.unsigned_abs() as usize;
    2 * v + (l < 0) as usize
}

impl Dpll {
    fn new(f: &CnfFormula) -> Self {
        let nvars = f.variable_count;
        let mut s = Dpll {
            clauses: f.clauses.clone(),
            watches: vec![Vec::new(); 2 * nvars + 2],
            assign: vec![0; nvars + 1],
            trail: Vec::new(),
            decisions: Vec::new(),
            nvars,
            empty_clause: false,
        };
        for (ci, cl) in s.clauses.iter().enumerate() {
            match cl.len() {
                0 => s.empty_clause = true,
                1 => {
                    s.watches[lit_index(cl[0])].push(ci);
                }
                _ => {
                    s.watches[lit_index(cl[0])].push(ci);
                    s.watches[lit_index(cl[1])].push(ci);
                }
            }
        }
        s
    }

    fn value(&self, l: i32) -> i8 {
        let v = self.assign[l.unsigned_abs() as usize];
        if l > 0 {
            v
        } else {
            -v
        }
    }

    fn enqueue(&mut self, l: i32) -> bool {
        match self.value(l) {
            1 => true,
            -1 => false,
            _ => {
                self.assign[l.unsigned_abs() as usize] = if l > 0 { 1 } else { -1 };
                self.trail.push(l);
                true
            }
        }
    }

    /// Propagate everything after trail position `start`; false on conflict.
    fn propagate(&mut self, mut start: usize, budget: &mut u64) -> bool {
        while start < self.trail.len() {
            let l = self.trail[start];
            start += 1;
            let false_lit = -l;
            let widx = lit_index(false_lit);
            let mut i = 0;
            while i < self.watches[widx].len() {
                if *budget == 0 {
                    return true; // caller checks budget separately
                }
                *budget -= 1;
                let ci = self.watches[widx][i];
                // Try to find a replacement watch.
                let (other, replacement) = {
                    let cl = &self.clauses[ci];
                    if cl.len() == 1 {
                        (cl[0], None)
                    } else {
                        let (w0, w1) = (cl[0], cl[1]);
                        let other = if w0 == false_lit { w1 } else { w0 };
                        let mut rep = None;
                        for (k, &cand) in cl.iter().enumerate().skip(2) {
                            if self.value(cand) != -1 {
                                rep = Some((k, cand));
                                break;
                            }
                        }
                        (other, rep)
                    }
                };
                if self.clauses[ci].len() == 1 {
                    if self.value(other) == -1 {
                        return false;
                    }
                    i += 1;
                    continue;
                }
                if self.value(other) == 1 {
                    i += 1;
                    continue;
                }
                if let Some((k, cand)) = replacement {
                    let cl = &mut self.clauses[ci];
                    let fpos = if cl[0] == false_lit { 0 } else { 1 };
                    cl.swap(fpos, k);
                    self.watches[widx].swap_remove(i);
                    self.watches[lit_index(cand)].push(ci);
                    continue;
                }
                // Unit or conflict on `other`.
                if !self.enqueue(other) {
                    return false;
                }
                i += 1;
            }
        }
        true
    }

    fn backtrack_to(&mut self, len: usize) {
        while self.trail.len() > len {
            let l = self.trail.pop().unwrap();
            self.assign[l.unsigned_abs() as usize] = 0;
        }
    }

    fn solve(mut self, mut budget: u64) -> Result<SatOutcome, SolveError> {
        if self.empty_clause {
            return Ok(SatOutcome::Unsat);
        }
        // Top-level units.
        for ci in 0..self.clauses.len() {
            if self.clauses[ci].len() == 1 && !self.enqueue(self.clauses[ci][0]) {
                return Ok(SatOutcome::Unsat);
            }
        }
        let mut prop_from = 0;
        loop {
            if budget == 0 {
                return Err(SolveError::Timeout);
            }
            let ok = self.propagate(prop_from, &mut budget);
            if budget == 0 {
                return Err(SolveError::Timeout);
            }
            if ok {
                // Find a branch variable.
                match (1..=self.nvars).find(|&v| self.assign[v] == 0) {
                    None => {
                        let model: Vec<bool> =
                            (0..=self.nvars).map(|v| self.assign[v] == 1).collect();
                        return Ok(SatOutcome::Sat(model));
                    }
                    Some(v) => {
                        let lit = v as i32;
                        self.decisions.push((self.trail.len(), lit, false));
                        self.enqueue(lit);
                        prop_from = self.trail.len() - 1;
                    }
                }
            } else {
                // Conflict: flip the deepest unflipped decision.
                loop {
                    match self.decisions.pop() {
                        None => return Ok(SatOutcome::Unsat),
                        Some((len, lit, flipped)) => {
                            self.backtrack_to(len);
                            if !flipped {
                                self.decisions.push((len, -lit, true));
                                self.enqueue(-lit);
                                prop_from = self.trail.len() - 1;
                                break;
                            }
                        }
                    }
                }
            }
        }
    }
}

/// SAT encoding of "there is a nonlocal cut of weight <= t": partition
/// variables x_u, cut indicators d_uv with sum bounded by a sequential
/// counter, and per-side cycle witnesses a_u / b_u where each witness
/// vertex keeps at least two of its neighbors in the witness (forcing a
/// cycle).  The partition of vertex 0 is pinned to break symmetry.
pub fn nonlocal_cut_cnf(g: &MarkedGraph, t: usize) -> CnfFormula {
    assert!(g.is_simple(), "encoding assumes a simple graph");
    let n = g.vertex_count();
    let mut f = CnfFormula::new();
    let x: Vec<i32> = (0..n).map(|u| f.named_var(format!("x_{u}"))).collect();
    let a: Vec<i32> = (0..n).map(|u| f.named_var(format!("a_{u}"))).collect();
    let b: Vec<i32> = (0..n).map(|u| f.named_var(format!("b_{u}"))).collect();
    let d: Vec<i32> = g
        .edges()
        .iter()
        .map(|e| f.named_var(format!("d_{}_{}", e.u, e.v)))
        .collect();
    for (e, &de) in g.edges().iter().zip(&d) {
        f.add_clause([-x[e.u], x[e.v], de]);
        f.add_clause([x[e.u], -x[e.v], de]);
    }
    f.add_at_most(&d, t);
    let adj = g.adjacency();
    for (w, side) in [(&a, 1i32), (&b, -1i32)] {
        f.add_clause(w.clone());
        for u in 0..n {
            f.add_clause([-w[u], side * x[u]]);
            let ns = &adj[u];
            debug_assert_eq!(ns.len(), 3);
            // At most one neighbor may be excluded from the witness.
            f.add_clause([-w[u], w[ns[0]], w[ns[1]]]);
            f.add_clause([-w[u], w[ns[0]], w[ns[2]]]);
            f.add_clause([-w[u], w[ns[1]], w[ns[2]]]);
        }
    }
    f.add_clause([x[0]]);
    f
}

/// Read a nonlocal cut back out of a satisfying model.
pub fn decode_nonlocal_model(g: &MarkedGraph, model: &[bool]) -> super::Cut {
    let n = g.vertex_count();
    let x = |u: usize| model[1 + u];
    let side_a: Vec<usize> = (0..n).filter(|&u| x(u)).collect();
    let side_b: Vec<usize> = (0..n).filter(|&u| !x(u)).collect();
    let cut_edges: Vec<usize> = g
        .edges()
        .iter()
        .enumerate()
        .filter(|(_, e)| x(e.u) != x(e.v))
        .map(|(i, _)| i)
        .collect();
    super::Cut {
        cut_edges,
        side_a_vertices: side_a,
        side_b_vertices: side_b,
        marks_a: 0,
        marks_b: 0,
    }
}
