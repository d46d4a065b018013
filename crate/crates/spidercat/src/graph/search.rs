//! Hill-climbing search for cubic graphs with large girth and spectral
//! gap and no nonlocal cut.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{algebraic_connectivity, double_edge_swap, girth, random_cubic, MarkedGraph, SwapOutcome};
use crate::robustness::has_nonlocal_cut_bruteforce;

#[derive(Debug, Clone)]
pub struct GraphSearchConfig {
    pub target_t: usize,
    pub vertex_count: usize,
    pub max_iters: usize,
    pub seed: u64,
    /// Spectral gate before the expensive cut check.  Defaults to
    /// 10/3 * t / vertex_count.
    pub lambda_thresh: f64,
}

impl GraphSearchConfig {
    pub fn new(target_t: usize, vertex_count: usize, max_iters: usize, seed: u64) -> Self {
        GraphSearchConfig {
            target_t,
            vertex_count,
            max_iters,
            seed,
            lambda_thresh: 10.0 / 3.0 * target_t as f64 / vertex_count as f64,
        }
    }
}

#[derive(Debug, Clone)]
pub enum SearchOutcome {
    Found(MarkedGraph),
    /// No cubic graph on this few vertices has the required girth, so no
    /// amount of searching can succeed.
    CertifiedInfeasible {
        girth_needed: usize,
        min_vertices: usize,
    },
    /// Budget exhausted without a certified graph.
    Failure,
}

/// Minimum vertex count of a cubic graph with girth at least `g`
/// (the Moore bound; tight for g <= 6 and g = 8).
pub fn moore_bound(g: usize) -> usize {
    if g <= 1 {
        return 1;
    }
    let r = g / 2;
    if g % 2 == 0 {
        2 * ((1 << r) - 1)
    } else {
        1 + 3 * ((1 << r) - 1)
    }
}

/// Three-phase local search: climb girth past t, then climb the Laplacian
/// gap, and accept the first graph that also has no nonlocal t-cut.
pub fn hill_climb(cfg: &GraphSearchConfig) -> SearchOutcome {
    let t = cfg.target_t;
    if cfg.vertex_count < moore_bound(t + 1) {
        return SearchOutcome::CertifiedInfeasible {
            girth_needed: t + 1,
            min_vertices: moore_bound(t + 1),
        };
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut g = match random_cubic(cfg.vertex_count, cfg.seed) {
        Ok(g) => g,
        Err(_) => return SearchOutcome::Failure,
    };
    let mut cur_girth = girth_value(&g);
    let mut cur_lambda = algebraic_connectivity(&g);
    let mut cut_checked = false;

    for _ in 0..cfg.max_iters {
        if cur_girth > t && cur_lambda >= cfg.lambda_thresh && !cut_checked {
            cut_checked = true;
            if has_nonlocal_cut_bruteforce(&g, t).is_none() {
                return SearchOutcome::Found(g);
            }
        }
        let cand = match double_edge_swap(&g, &mut rng) {
            SwapOutcome::Swapped(c) => c,
            SwapOutcome::Exhausted(_) => continue,
        };
        let cand_girth = girth_value(&cand);
        let accept = if cur_girth <= t {
            // Phase 1: girth optimization; ties prefer the swap.
            cand_girth >= cur_girth
        } else {
            // Phase 2: strict spectral improvement without losing girth.
            cand_girth > t && {
                let cl = algebraic_connectivity(&cand);
                if cl > cur_lambda {
                    cur_lambda = cl;
                    true
                } else {
                    false
                }
            }
        };
        if accept {
            if cur_girth <= t && cand_girth > t {
                cur_lambda = algebraic_connectivity(&cand);
            }
            g = cand;
            cur_girth = cand_girth;
            cut_checked = false;
        }
    }
    SearchOutcome::Failure
}

fn girth_value(g: &MarkedGraph) -> usize {
    match girth(g) {
        super::Girth::Finite(k) => k,
        super::Girth::Infinite => usize::MAX,
    }
}
