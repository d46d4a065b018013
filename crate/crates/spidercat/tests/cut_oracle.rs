//! Independent robustness oracle: literal enumeration of every spider
//! bipartition of the Z-graph.
//!
//! A violating z-edge subset exists iff a violating bipartition exists
//! (take the union of components on one side; its exact boundary is a
//! subset of the removed edges with no larger weight), so sweeping all
//! 2^(s-1) sides is a complete check that shares no code with either
//! production engine.  Also cross-checks the SAT nonlocal-cut encoding
//! against subset brute force on random cubic graphs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use spidercat::graph::{k4, moebius_ladder, petersen, random_cubic, MarkedGraph};
use spidercat::marking::solve_marking_exact;
use spidercat::robustness::{
    has_nonlocal_cut_bruteforce, is_t_robust, nonlocal_cut_cnf, solve_cnf, SolverBackend, Verdict,
};
use spidercat::treeplan::{to_zgraph, SpiderKind};

/// True iff every bipartition with boundary weight at most t leaves at
/// most that weight in marks on one side.
fn bipartition_oracle(g: &MarkedGraph, t: usize) -> bool {
    if !g.is_connected() {
        return false;
    }
    let z = to_zgraph(g);
    let s = z.spiders().len();
    assert!(s <= 26, "oracle is exponential in spiders");
    let total_marks = z.outputs().len();
    let boundary_mask: u64 = z
        .spiders()
        .iter()
        .enumerate()
        .filter(|(_, k)| **k == SpiderKind::Boundary)
        .map(|(i, _)| 1u64 << i)
        .sum();
    for side in 1..(1u64 << (s - 1)) {
        let mut f = 0usize;
        for &(a, b) in z.z_edges() {
            if (side >> a) & 1 != (side >> b) & 1 {
                f += 1;
                if f > t {
                    break;
                }
            }
        }
        if f > t {
            continue;
        }
        let marks_a = (side & boundary_mask).count_ones() as usize;
        if marks_a.min(total_marks - marks_a) > f {
            return false;
        }
    }
    true
}

#[test]
fn oracle_agrees_on_corpus_markings() {
    let k4_nine = solve_marking_exact(&k4(), 2, 9).unwrap();
    let moebius_full = {
        let g = moebius_ladder(4);
        let marks = vec![1u8; g.edges().len()];
        g.with_marks(&marks).unwrap()
    };
    let petersen_twelve = solve_marking_exact(&petersen(), 4, 12).unwrap();
    let bridge_trap = MarkedGraph::new(
        4,
        [(0, 1, 2), (0, 1, 2), (2, 3, 2), (2, 3, 2), (0, 2, 0), (1, 3, 0)],
    )
    .unwrap();
    for (g, tmax) in [(k4_nine, 3), (moebius_full, 4), (petersen_twelve, 4), (bridge_trap, 3)] {
        for t in 1..=tmax {
            let expected = bipartition_oracle(&g, t);
            let got = is_t_robust(&g, t).verdict == Verdict::Robust;
            assert_eq!(got, expected, "t={t} on {:?}", g.edges());
        }
    }
}

#[test]
fn oracle_agrees_on_random_markings() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x0C17);
    let mut checked = 0;
    for seed in 0..40 {
        let g = random_cubic(8, seed).unwrap();
        let marks: Vec<u8> = (0..g.edges().len())
            .map(|_| [0, 0, 1, 1, 2][rng.gen_range(0..5)])
            .collect();
        let g = g.with_marks(&marks).unwrap();
        let z = to_zgraph(&g);
        if z.spiders().len() > 26 {
            continue;
        }
        for t in 1..=4 {
            let expected = bipartition_oracle(&g, t);
            let got = is_t_robust(&g, t).verdict == Verdict::Robust;
            assert_eq!(got, expected, "seed={seed} t={t} marks={marks:?}");
            checked += 1;
        }
    }
    assert!(checked >= 100);
}

#[test]
fn sat_and_bruteforce_nonlocal_cuts_agree() {
    for seed in 0..12 {
        let n = 8 + 2 * (seed as usize % 4);
        let g = random_cubic(n, seed).unwrap();
        for t in 1..=5 {
            let sat = solve_cnf(&nonlocal_cut_cnf(&g, t), &SolverBackend::Internal)
                .unwrap()
                .is_sat();
            let brute = has_nonlocal_cut_bruteforce(&g, t).is_some();
            assert_eq!(sat, brute, "n={n} seed={seed} t={t}");
        }
    }
}
