//! Acceptance gate: one test per acceptance criterion, each printing a
//! single PASS/FAIL line (plus per-instance detail) before asserting.
//!
//! Criterion 1 is expected to fail on the (9,2) sub-case: 13 CNOTs would
//! need a 3-vertex cubic Z-graph skeleton, but every marked cubic graph
//! has an even vertex count (3V = 2E counts half-edges), so the true
//! optimum is 14.  Criterion 5 is expected to fail on the (2,1) sub-case:
//! the closed form asks for 0 CNOTs, but entangling two qubits needs one.
//! Both failures are the formulas' edge cases, not implementation bugs;
//! everything else passes.

use std::time::Instant;

use spidercat::cli::{cmd_synthesize, Mode, PipelineConfig, VerifyLevel};
use spidercat::extract::{
    extract_circuit, lower_bounds, recursive_cat, resource_counts, shallow_cat, Circuit,
    RecursiveVariant,
};
use spidercat::graph::{heawood, k4, optimal_family, random_cubic, MarkedGraph};
use spidercat::marking::solve_marking_exact;
use spidercat::robustness::{
    has_nonlocal_cut_bruteforce, is_t_robust, nonlocal_cut_cnf, solve_cnf, SolverBackend, Verdict,
};
use spidercat::treeplan::{build_spider_tree, to_zgraph};
use spidercat::verify::{check_ft, is_cat, monte_carlo, set_worker_cap, simulate, FaultModel};

fn criterion(number: usize, ok: bool, detail: &str) {
    println!(
        "criterion {number}: {} — {detail}",
        if ok { "PASS" } else { "FAIL" }
    );
    assert!(ok, "criterion {number} failed: {detail}");
}

fn synthesize_to(dir: &std::path::Path, n: usize, t: usize, seed: u64) -> (i32, serde_json::Value) {
    let cfg = PipelineConfig {
        n,
        t,
        mode: Mode::Optimal,
        seed,
        solver: SolverBackend::Internal,
        out_dir: dir.to_path_buf(),
        verify_level: VerifyLevel::Full,
    };
    let code = cmd_synthesize(&cfg);
    let report = std::fs::read_to_string(dir.join("report.json"))
        .map(|s| serde_json::from_str(&s).expect("report parses"))
        .unwrap_or(serde_json::Value::Null);
    (code, report)
}

/// Corpus of marked graphs with their target t.  Everything is n <= 20;
/// the last entry is deliberately not robust (a 2-edge bridge trapping
/// four marks a side) to exercise verdict agreement on failures.
fn corpus() -> Vec<(&'static str, MarkedGraph, usize)> {
    let k4_nine = solve_marking_exact(&k4(), 2, 9).unwrap();
    let heawood_full = solve_marking_exact(&heawood(), 5, 14).unwrap();
    let bridge_trap = MarkedGraph::new(
        4,
        [(0, 1, 2), (0, 1, 2), (2, 3, 2), (2, 3, 2), (0, 2, 0), (1, 3, 0)],
    )
    .unwrap();
    vec![
        ("k4-t2-n9", k4_nine, 2),
        ("theta-t2-n6", optimal_family(2, 1).unwrap(), 2),
        ("k4-doubled-t2-n12", optimal_family(2, 2).unwrap(), 2),
        ("k33-doubled-t2-n18", optimal_family(2, 3).unwrap(), 2),
        ("k33-t3-n9", optimal_family(3, 1).unwrap(), 3),
        ("moebius8-t3-n12", optimal_family(3, 2).unwrap(), 3),
        ("moebius10-t3-n15", optimal_family(3, 3).unwrap(), 3),
        ("moebius12-t3-n18", optimal_family(3, 4).unwrap(), 3),
        ("petersen-t4-n12", optimal_family(4, 1).unwrap(), 4),
        ("torus1-t5-n2", optimal_family(5, 1).unwrap(), 5),
        ("torus2-t5-n8", optimal_family(5, 2).unwrap(), 5),
        ("heawood-t5-n14", heawood_full, 5),
        ("bridge-trap-t2-n8", bridge_trap, 2),
    ]
}

fn extracted(g: &MarkedGraph) -> Circuit {
    let z = to_zgraph(g);
    let tree = build_spider_tree(&z).unwrap();
    extract_circuit(&z, &tree).unwrap()
}

fn binomial_sum(l: usize, t: usize) -> u128 {
    (1..=t.min(l))
        .map(|k| {
            let mut r: u128 = 1;
            for i in 0..k {
                r = r * (l - i) as u128 / (i + 1) as u128;
            }
            r
        })
        .sum()
}

#[test]
fn criterion_01_optimal_counts() {
    let mut ok = true;
    let mut lines = Vec::new();
    for (n, t) in [(9usize, 2usize), (12, 3), (12, 4), (14, 5)] {
        let dir = tempfile::tempdir().unwrap();
        let start = Instant::now();
        let (code, report) = synthesize_to(dir.path(), n, t, 1);
        let elapsed = start.elapsed();
        let expected = lower_bounds(n, t).cnot_lb;
        let got = report["counts"]["cnots"].as_u64().unwrap_or(0) as usize;
        let this = code == 0 && got == expected && elapsed.as_secs() < 300;
        lines.push(format!("({n},{t}): {got} cnots vs bound {expected} in {elapsed:?}"));
        ok &= this;
    }
    criterion(1, ok, &lines.join("; "));
}

#[test]
fn criterion_02_infeasibility_witness() {
    let dir = tempfile::tempdir().unwrap();
    let start = Instant::now();
    let (code, report) = synthesize_to(dir.path(), 12, 5, 1);
    let elapsed = start.elapsed();
    let certified = report["infeasibility"]["min_vertices"].as_u64() == Some(14);
    criterion(
        2,
        code == 2 && certified && elapsed.as_secs() < 600,
        &format!("synthesize(12,5) exit {code}, Moore witness 14 vertices, {elapsed:?}"),
    );
}

#[test]
fn criterion_03_correctness_is_cat() {
    let mut ok = true;
    let mut count = 0;
    for (name, g, _) in corpus() {
        for (route, c) in [("extract", extracted(&g)), ("shallow", shallow_cat(&to_zgraph(&g)))] {
            assert!(c.output_qubits.len() <= 20);
            let cat = simulate(&c).is_ok_and(|s| is_cat(&s, &c.output_qubits));
            if !cat {
                println!("  is_cat failed: {name} via {route}");
                ok = false;
            }
            count += 1;
        }
    }
    for (n, t) in [(4, 1), (8, 1), (16, 1), (4, 3), (8, 3), (16, 3), (8, 7), (16, 7)] {
        let c = recursive_cat(n, t, RecursiveVariant::default()).unwrap();
        let cat = simulate(&c).is_ok_and(|s| is_cat(&s, &c.output_qubits));
        if !cat {
            println!("  is_cat failed: recursive({n},{t})");
            ok = false;
        }
        count += 1;
    }
    criterion(3, ok, &format!("{count} emitted circuits, exact stabilizer check"));
}

#[test]
fn criterion_04_fault_tolerance_and_agreement() {
    let mut ok = true;
    let mut lines = Vec::new();
    for (name, g, t) in corpus() {
        let robust = is_t_robust(&g, t).verdict == Verdict::Robust;
        // The graph/circuit verdict equivalence is a statement about the
        // tree-extracted circuit; the depth-3 construction is only defined
        // on robust graphs, so its circuits are audited on those.
        let mut routes = vec![("extract", extracted(&g))];
        if robust {
            routes.push(("shallow", shallow_cat(&to_zgraph(&g))));
        }
        for (route, c) in routes {
            let n = c.output_qubits.len();
            let ft = check_ft(&c, t, FaultModel::XOnly);
            let agreement = robust == ft.ok;
            // Exhaustiveness duty: t <= 3 always, t in {4,5} for n <= 14,
            // unless the instance is over the combination budget.
            let in_budget = binomial_sum(ft.locations, t) <= 100_000_000;
            let duty = (t <= 3 || n <= 14) && in_budget;
            let this = agreement && (!duty || ft.exhaustive);
            if !this {
                lines.push(format!(
                    "{name}/{route}: robust={robust} ft={} exhaustive={}",
                    ft.ok, ft.exhaustive
                ));
            }
            ok &= this;
        }
    }
    criterion(
        4,
        ok,
        &if lines.is_empty() {
            "graph verdicts agree with circuit fault checks on the whole corpus".into()
        } else {
            lines.join("; ")
        },
    );
}

#[test]
fn criterion_05_recursive_counts_and_ft() {
    let mut ok = true;
    let mut lines = Vec::new();
    for t in [1usize, 3, 7] {
        for k in 0..=4u32 {
            let n = (t + 1) << k;
            let c = recursive_cat(n, t, RecursiveVariant::default()).unwrap();
            let r = resource_counts(&c);
            let formula = n * (1 + (t + 1).ilog2() as usize) - 2 * (t + 1);
            let counts_ok = r.cnots == formula && r.ancillas <= n / 2;
            if !counts_ok {
                lines.push(format!("({n},{t}): {} cnots vs formula {formula}", r.cnots));
            }
            ok &= counts_ok;
            let need_ft = (t == 1 && n <= 32) || (t == 3 && n <= 16);
            if need_ft {
                let ft = check_ft(&c, t, FaultModel::XOnly);
                if !(ft.ok && ft.exhaustive) {
                    lines.push(format!("({n},{t}): ft={} exhaustive={}", ft.ok, ft.exhaustive));
                    ok = false;
                }
            }
        }
    }
    criterion(
        5,
        ok,
        &if lines.is_empty() {
            "counts match the closed form, <= n/2 ancillas, exhaustive fault checks clean".into()
        } else {
            lines.join("; ")
        },
    );
}

#[test]
fn criterion_06_shallow_depth_and_count() {
    let mut ok = true;
    let mut lines = Vec::new();
    for (name, g, t) in corpus() {
        if is_t_robust(&g, t).verdict != Verdict::Robust {
            continue;
        }
        let c = shallow_cat(&to_zgraph(&g));
        let r = resource_counts(&c);
        let n = c.output_qubits.len();
        let (num, den) = lower_bounds(n, t).vertex_ratio;
        // cnots <= (29 r_t + 26)/10 * n without leaving integers.
        let bound_ok = r.cnot_depth == 3 && 10 * den * r.cnots <= n * (29 * num + 26 * den);
        if !bound_ok {
            lines.push(format!("{name}: depth {} cnots {}", r.cnot_depth, r.cnots));
        }
        ok &= bound_ok;
    }
    criterion(
        6,
        ok,
        &if lines.is_empty() {
            "depth exactly 3 and cnot bound holds on all robust corpus graphs".into()
        } else {
            lines.join("; ")
        },
    );
}

#[test]
fn criterion_07_family_optimality() {
    let ratios = [(2usize, (1usize, 3usize)), (3, (2, 3)), (4, (5, 6)), (5, (1, 1))];
    let mut ok = true;
    let mut lines = Vec::new();
    for (t, (num, den)) in ratios {
        for k in 1..=5 {
            let g = optimal_family(t, k).unwrap();
            let (v, n) = g.vertex_ratio().unwrap();
            let ratio_ok = v * den == n * num;
            let robust = is_t_robust(&g, t).verdict == Verdict::Robust;
            if !(ratio_ok && robust) {
                lines.push(format!("t={t} k={k}: ratio {v}/{n}, robust={robust}"));
            }
            ok &= ratio_ok && robust;
        }
    }
    criterion(
        7,
        ok,
        &if lines.is_empty() {
            "exact vertex ratios and certified robustness for k <= 5, t = 2..5".into()
        } else {
            lines.join("; ")
        },
    );
}

#[test]
fn criterion_08_sat_bruteforce_equivalence() {
    let mut disagreements = 0;
    let mut checked = 0;
    for seed in 0..50u64 {
        let n = 8 + 2 * (seed as usize % 5);
        let g = random_cubic(n, seed).unwrap();
        for t in 1..=5 {
            let sat = solve_cnf(&nonlocal_cut_cnf(&g, t), &SolverBackend::Internal)
                .unwrap()
                .is_sat();
            let brute = has_nonlocal_cut_bruteforce(&g, t).is_some();
            if sat != brute {
                println!("  disagreement: n={n} seed={seed} t={t} sat={sat} brute={brute}");
                disagreements += 1;
            }
            checked += 1;
        }
    }
    criterion(
        8,
        disagreements == 0,
        &format!("{checked} verdicts on 50 random cubic graphs, {disagreements} disagreements"),
    );
}

fn spearman(xs: &[f64], ys: &[f64]) -> f64 {
    let rank = |v: &[f64]| -> Vec<f64> {
        let mut idx: Vec<usize> = (0..v.len()).collect();
        idx.sort_by(|&a, &b| v[a].partial_cmp(&v[b]).unwrap());
        let mut r = vec![0.0; v.len()];
        for (pos, &i) in idx.iter().enumerate() {
            r[i] = pos as f64;
        }
        r
    };
    let (rx, ry) = (rank(xs), rank(ys));
    let n = xs.len() as f64;
    let mean = (n - 1.0) / 2.0;
    let mut num = 0.0;
    let mut dx = 0.0;
    let mut dy = 0.0;
    for i in 0..xs.len() {
        num += (rx[i] - mean) * (ry[i] - mean);
        dx += (rx[i] - mean).powi(2);
        dy += (ry[i] - mean).powi(2);
    }
    num / (dx * dy).sqrt()
}

#[test]
fn criterion_09_monte_carlo_trends() {
    const P: f64 = 0.05;
    const SHOTS: u64 = 1_000_000;
    let fanout = |n: usize| -> Circuit {
        let mut ops = vec![spidercat::extract::Op::PrepX(0)];
        for q in 1..n {
            ops.push(spidercat::extract::Op::PrepZ(q));
            ops.push(spidercat::extract::Op::Cnot { control: 0, target: q });
        }
        Circuit {
            qubit_count: n,
            ops,
            output_qubits: (0..n).collect(),
        }
    };
    let mut flags = Vec::new();
    let mut acceptance = Vec::new();
    let mut separated = true;
    let mut lines = Vec::new();
    for n in [4usize, 8, 16, 32] {
        let c = recursive_cat(n, 1, RecursiveVariant::default()).unwrap();
        let r = resource_counts(&c);
        let mc = monte_carlo(&c, 1, P, SHOTS, 9);
        flags.push(r.flags as f64);
        acceptance.push(mc.accepted as f64 / SHOTS as f64);
        let base = monte_carlo(&fanout(n), 1, P, SHOTS, 9);
        let apart = mc.wilson_high < base.wilson_low;
        if !apart {
            lines.push(format!(
                "n={n}: protected CI [{:.2e},{:.2e}] vs baseline [{:.2e},{:.2e}]",
                mc.wilson_low, mc.wilson_high, base.wilson_low, base.wilson_high
            ));
        }
        separated &= apart;
    }
    let rho = spearman(&flags, &acceptance);
    let monotone = acceptance.windows(2).all(|w| w[1] < w[0]);
    criterion(
        9,
        rho < -0.9 && monotone && separated,
        &format!(
            "spearman(flags, acceptance) = {rho:.3}, monotone = {monotone}; {}",
            if lines.is_empty() {
                "all protected CIs sit below the unflagged baseline".into()
            } else {
                lines.join("; ")
            }
        ),
    );
}

#[test]
fn criterion_10_determinism() {
    let read3 = |dir: &std::path::Path| -> (Vec<u8>, Vec<u8>, Vec<u8>) {
        (
            std::fs::read(dir.join("graph.txt")).unwrap(),
            std::fs::read(dir.join("circuit.txt")).unwrap(),
            std::fs::read(dir.join("report.json")).unwrap(),
        )
    };
    let run = |jobs: usize| -> (Vec<u8>, Vec<u8>, Vec<u8>) {
        set_worker_cap(jobs);
        let dir = tempfile::tempdir().unwrap();
        let (code, _) = synthesize_to(dir.path(), 12, 4, 7);
        assert_eq!(code, 0);
        let out = read3(dir.path());
        set_worker_cap(0);
        out
    };
    let a = run(1);
    let b = run(1);
    let c = run(4);
    criterion(
        10,
        a == b && a == c,
        "graph, circuit, and report bytes identical across reruns and worker counts {1,4}",
    );
}
