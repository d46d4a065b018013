//! Exhaustive fault-combination checking.
//!
//! Faults are Pauli frames injected after an op and pushed through the
//! rest of the circuit, which is linear: each elementary fault owns a
//! fixed (measurement-flip, residual-output) bit pattern and a combination
//! is their XOR.  A circuit protects against t faults when every
//! combination of at most f <= t faulty ops that flips no postselected
//! measurement leaves a residual error of weight at most f, counted up to
//! the CAT stabilizers (global X flip, pairwise Z).
//!
//! The default model is X-only: Z errors never flip Z-basis flags here and
//! the CSS-style argument reduces the check to X frames.  A full-Pauli
//! audit mode widens every location to its complete error set.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::thread;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::extract::{Circuit, Op};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FaultModel {
    #[default]
    XOnly,
    FullPauli,
}

/// Default budget for the exhaustive walk, counted in fault-location
/// subsets of size <= t; beyond it the checker falls back to seeded
/// sampling and says so in the report.
pub const FT_SUBSET_BUDGET: u128 = 100_000_000;

const SAMPLE_COMBOS: u64 = 5_000_000;
const SAMPLE_SEED: u64 = 0xFA417;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FtCounterexample {
    /// (op index, human-readable fault) per faulty op.
    pub faults: Vec<(usize, String)>,
    pub residual_weight: usize,
}

#[derive(Debug, Clone)]
pub struct FtReport {
    pub ok: bool,
    /// false when the subset budget forced sampling
    pub exhaustive: bool,
    pub locations: usize,
    pub combos_checked: u64,
    pub counterexample: Option<FtCounterexample>,
}

struct Variant {
    label: &'static str,
    syndrome: Vec<u64>,
    res_x: Vec<u64>,
    res_z: Vec<u64>,
}

struct Location {
    op_index: usize,
    variants: Vec<Variant>,
}

/// Frame to inject for one elementary fault: X and/or Z on up to two
/// qubits, or a bare measurement flip.
enum Seedling {
    Pauli(Vec<(usize, bool, bool)>),
    MeasFlip,
}

fn propagate(c: &Circuit, after: usize, seed: &Seedling, meas_of_op: &[Option<usize>]) -> (Vec<u64>, Vec<u64>, Vec<u64>) {
    let nq = c.qubit_count;
    let mut fx = vec![false; nq];
    let mut fz = vec![false; nq];
    let n_meas = meas_of_op.iter().flatten().count();
    let mut syndrome = vec![0u64; n_meas.div_ceil(64).max(1)];
    if let Seedling::Pauli(ps) = seed {
        for &(q, x, z) in ps {
            fx[q] ^= x;
            fz[q] ^= z;
        }
    }
    if let Seedling::MeasFlip = seed {
        let m = meas_of_op[after].expect("flip fault sits on a measurement");
        syndrome[m / 64] ^= 1 << (m % 64);
    }
    for (j, op) in c.ops.iter().enumerate().skip(after + 1) {
        match *op {
            Op::PrepZ(q) | Op::PrepX(q) => {
                fx[q] = false;
                fz[q] = false;
            }
            Op::Cnot { control, target } => {
                fx[target] ^= fx[control];
                fz[control] ^= fz[target];
            }
            Op::MeasZ(q) => {
                let m = meas_of_op[j].unwrap();
                if fx[q] {
                    syndrome[m / 64] ^= 1 << (m % 64);
                }
                fx[q] = false;
                fz[q] = false;
            }
            Op::MeasX(q) => {
                let m = meas_of_op[j].unwrap();
                if fz[q] {
                    syndrome[m / 64] ^= 1 << (m % 64);
                }
                fx[q] = false;
                fz[q] = false;
            }
        }
    }
    let n = c.output_qubits.len();
    let ow = n.div_ceil(64).max(1);
    let mut res_x = vec![0u64; ow];
    let mut res_z = vec![0u64; ow];
    for (pos, &q) in c.output_qubits.iter().enumerate() {
        if fx[q] {
            res_x[pos / 64] |= 1 << (pos % 64);
        }
        if fz[q] {
            res_z[pos / 64] |= 1 << (pos % 64);
        }
    }
    (syndrome, res_x, res_z)
}

fn build_locations(c: &Circuit, model: FaultModel) -> Vec<Location> {
    let mut meas_of_op = vec![None; c.ops.len()];
    let mut m = 0;
    for (j, op) in c.ops.iter().enumerate() {
        if matches!(op, Op::MeasZ(_) | Op::MeasX(_)) {
            meas_of_op[j] = Some(m);
            m += 1;
        }
    }
    let full = model == FaultModel::FullPauli;
    let mut locations = Vec::new();
    for (j, op) in c.ops.iter().enumerate() {
        let seeds: Vec<(&'static str, Seedling)> = match *op {
            Op::PrepZ(q) => {
                let mut v = vec![("X", Seedling::Pauli(vec![(q, true, false)]))];
                if full {
                    v.push(("Y", Seedling::Pauli(vec![(q, true, true)])));
                }
                v
            }
            Op::PrepX(q) => {
                if full {
                    vec![
                        ("Z", Seedling::Pauli(vec![(q, false, true)])),
                        ("Y", Seedling::Pauli(vec![(q, true, true)])),
                    ]
                } else {
                    Vec::new() // X stabilizes |+>
                }
            }
            Op::Cnot { control, target } => {
                if full {
                    let paulis = [(false, false), (true, false), (false, true), (true, true)];
                    let mut v = Vec::new();
                    for (i, &(xc, zc)) in paulis.iter().enumerate() {
                        for (k, &(xt, zt)) in paulis.iter().enumerate() {
                            if i == 0 && k == 0 {
                                continue;
                            }
                            const NAMES: [&str; 16] = [
                                "II", "IX", "IZ", "IY", "XI", "XX", "XZ", "XY", "ZI", "ZX", "ZZ",
                                "ZY", "YI", "YX", "YZ", "YY",
                            ];
                            v.push((
                                NAMES[4 * i + k],
                                Seedling::Pauli(vec![(control, xc, zc), (target, xt, zt)]),
                            ));
                        }
                    }
                    v
                } else {
                    vec![
                        ("Xc", Seedling::Pauli(vec![(control, true, false)])),
                        ("Xt", Seedling::Pauli(vec![(target, true, false)])),
                        ("XcXt", Seedling::Pauli(vec![(control, true, false), (target, true, false)])),
                    ]
                }
            }
            Op::MeasZ(_) | Op::MeasX(_) => vec![("flip", Seedling::MeasFlip)],
        };
        let variants: Vec<Variant> = seeds
            .into_iter()
            .map(|(label, seed)| {
                let (syndrome, res_x, res_z) = propagate(c, j, &seed, &meas_of_op);
                Variant {
                    label,
                    syndrome,
                    res_x,
                    res_z,
                }
            })
            .filter(|v| {
                v.syndrome.iter().any(|w| *w != 0)
                    || v.res_x.iter().any(|w| *w != 0)
                    || v.res_z.iter().any(|w| *w != 0)
            })
            .collect();
        if !variants.is_empty() {
            locations.push(Location {
                op_index: j,
                variants,
            });
        }
    }
    locations
}

/// Residual weight up to the CAT stabilizers: the global X flip halves the
/// X side, and any even Z pattern is a stabilizer product, so Z only adds
/// via its parity when it cannot hide under the X support.
fn residual_weight(res_x: &[u64], res_z: &[u64], n: usize) -> usize {
    let wx: usize = res_x.iter().map(|w| w.count_ones() as usize).sum();
    let zpar = res_z
        .iter()
        .map(|w| w.count_ones() as usize)
        .sum::<usize>()
        % 2;
    let weight_of = |w: usize| if zpar == 0 { w } else { w.max(1) };
    weight_of(wx).min(weight_of(n - wx))
}

struct Walk<'a> {
    locations: &'a [Location],
    t: usize,
    n_out: usize,
    combos: u64,
    found: Option<FtCounterexample>,
}

impl Walk<'_> {
    fn dfs(
        &mut self,
        next: usize,
        depth: usize,
        syn: &mut Vec<u64>,
        rx: &mut Vec<u64>,
        rz: &mut Vec<u64>,
        chosen: &mut Vec<(usize, &'static str)>,
    ) {
        if self.found.is_some() || depth == self.t {
            return;
        }
        for li in next..self.locations.len() {
            let loc = &self.locations[li];
            for v in &loc.variants {
                for k in 0..syn.len() {
                    syn[k] ^= v.syndrome[k];
                }
                for k in 0..rx.len() {
                    rx[k] ^= v.res_x[k];
                    rz[k] ^= v.res_z[k];
                }
                chosen.push((loc.op_index, v.label));
                self.combos += 1;
                if syn.iter().all(|w| *w == 0) {
                    let w = residual_weight(rx, rz, self.n_out);
                    if w > depth + 1 {
                        self.found = Some(FtCounterexample {
                            faults: chosen.iter().map(|&(i, l)| (i, l.to_string())).collect(),
                            residual_weight: w,
                        });
                    }
                }
                if self.found.is_none() {
                    self.dfs(li + 1, depth + 1, syn, rx, rz, chosen);
                }
                chosen.pop();
                for k in 0..syn.len() {
                    syn[k] ^= v.syndrome[k];
                }
                for k in 0..rx.len() {
                    rx[k] ^= v.res_x[k];
                    rz[k] ^= v.res_z[k];
                }
                if self.found.is_some() {
                    return;
                }
            }
        }
    }
}

/// Number of location subsets of size 1..=t, i.e. sum of C(L,f),
/// saturating.  The budget is counted in subsets, not in variant-expanded
/// combinations, so the duty to be exhaustive does not depend on how many
/// Pauli seeds a location happens to carry.
fn subset_count(locations: usize, t: usize) -> u128 {
    (1..=t.min(locations))
        .map(|f| {
            (0..f).fold(1u128, |c, i| {
                c.saturating_mul((locations - i) as u128) / (i as u128 + 1)
            })
        })
        .fold(0u128, u128::saturating_add)
}

/// Check t-fault tolerance of a preparation circuit.
pub fn check_ft(c: &Circuit, t: usize, model: FaultModel) -> FtReport {
    check_ft_with_budget(c, t, model, FT_SUBSET_BUDGET)
}

pub fn check_ft_with_budget(c: &Circuit, t: usize, model: FaultModel, budget: u128) -> FtReport {
    let locations = build_locations(c, model);
    let n_out = c.output_qubits.len();
    let total = subset_count(locations.len(), t);
    let n_meas = locations
        .iter()
        .flat_map(|l| &l.variants)
        .map(|v| v.syndrome.len())
        .next()
        .unwrap_or(1);
    let ow = n_out.div_ceil(64).max(1);

    if total > budget {
        return sampled_check(c, t, &locations, n_out, n_meas, ow);
    }

    // Deterministic sharding over the first faulty location; worker count
    // cannot affect the result because shard outcomes merge in index order.
    let shard_results: Vec<(u64, Option<FtCounterexample>)> = {
        let next_shard = AtomicUsize::new(0);
        let workers = super::workers();
        let slots: Vec<std::sync::Mutex<(u64, Option<FtCounterexample>)>> =
            (0..locations.len()).map(|_| std::sync::Mutex::new((0, None))).collect();
        thread::scope(|scope| {
            let slot_refs = &slots;
            let locations = &locations;
            let next_shard = &next_shard;
            for _ in 0..workers {
                scope.spawn(move || loop {
                    let li = next_shard.fetch_add(1, Ordering::Relaxed);
                    if li >= locations.len() {
                        break;
                    }
                    let mut walk = Walk {
                        locations,
                        t,
                        n_out,
                        combos: 0,
                        found: None,
                    };
                    let mut syn = vec![0u64; n_meas];
                    let (mut rx, mut rz) = (vec![0u64; ow], vec![0u64; ow]);
                    let mut chosen = Vec::new();
                    // constrain the walk to combos whose first location is li
                    let loc = &locations[li];
                    for v in &loc.variants {
                        for k in 0..n_meas {
                            syn[k] ^= v.syndrome[k];
                        }
                        for k in 0..ow {
                            rx[k] ^= v.res_x[k];
                            rz[k] ^= v.res_z[k];
                        }
                        chosen.push((loc.op_index, v.label));
                        walk.combos += 1;
                        if syn.iter().all(|w| *w == 0) {
                            let w = residual_weight(&rx, &rz, n_out);
                            if w > 1 && walk.found.is_none() {
                                walk.found = Some(FtCounterexample {
                                    faults: chosen
                                        .iter()
                                        .map(|&(i, l)| (i, l.to_string()))
                                        .collect(),
                                    residual_weight: w,
                                });
                            }
                        }
                        if walk.found.is_none() {
                            walk.dfs(li + 1, 1, &mut syn, &mut rx, &mut rz, &mut chosen);
                        }
                        chosen.pop();
                        for k in 0..n_meas {
                            syn[k] ^= v.syndrome[k];
                        }
                        for k in 0..ow {
                            rx[k] ^= v.res_x[k];
                            rz[k] ^= v.res_z[k];
                        }
                        if walk.found.is_some() {
                            break;
                        }
                    }
                    *slot_refs[li].lock().unwrap() = (walk.combos, walk.found);
                });
            }
        });
        slots
            .into_iter()
            .map(|m| m.into_inner().unwrap())
            .collect()
    };

    let combos_checked: u64 = shard_results.iter().map(|(c, _)| *c).sum();
    let counterexample = shard_results.into_iter().find_map(|(_, f)| f);
    FtReport {
        ok: counterexample.is_none(),
        exhaustive: true,
        locations: locations.len(),
        combos_checked,
        counterexample,
    }
}

fn sampled_check(
    _c: &Circuit,
    t: usize,
    locations: &[Location],
    n_out: usize,
    n_meas: usize,
    ow: usize,
) -> FtReport {
    let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED);
    let mut found = None;
    let mut combos = 0u64;
    'outer: for _ in 0..SAMPLE_COMBOS {
        let f = rng.gen_range(1..=t);
        let mut picks: Vec<usize> = Vec::with_capacity(f);
        while picks.len() < f {
            let li = rng.gen_range(0..locations.len());
            if !picks.contains(&li) {
                picks.push(li);
            }
        }
        picks.sort_unstable();
        let mut syn = vec![0u64; n_meas];
        let (mut rx, mut rz) = (vec![0u64; ow], vec![0u64; ow]);
        let mut chosen = Vec::new();
        for &li in &picks {
            let loc = &locations[li];
            let v = &loc.variants[rng.gen_range(0..loc.variants.len())];
            for k in 0..n_meas {
                syn[k] ^= v.syndrome[k];
            }
            for k in 0..ow {
                rx[k] ^= v.res_x[k];
                rz[k] ^= v.res_z[k];
            }
            chosen.push((loc.op_index, v.label));
        }
        combos += 1;
        if syn.iter().all(|w| *w == 0) {
            let w = residual_weight(&rx, &rz, n_out);
            if w > f {
                found = Some(FtCounterexample {
                    faults: chosen.iter().map(|&(i, l)| (i, l.to_string())).collect(),
                    residual_weight: w,
                });
                break 'outer;
            }
        }
    }
    FtReport {
        ok: found.is_none(),
        exhaustive: false,
        locations: locations.len(),
        combos_checked: combos,
        counterexample: found,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extract::{recursive_cat, Op, RecursiveVariant};

    fn fanout_cat(n: usize) -> Circuit {
        let mut ops = vec![Op::PrepX(0)];
        for q in 1..n {
            ops.push(Op::PrepZ(q));
            ops.push(Op::Cnot { control: 0, target: q });
        }
        Circuit {
            qubit_count: n,
            ops,
            output_qubits: (0..n).collect(),
        }
    }

    #[test]
    fn bare_fanout_is_not_1_ft() {
        // An X on the seed early in the fanout spreads to many outputs
        // with no flag to catch it.
        let rep = check_ft(&fanout_cat(4), 1, FaultModel::XOnly);
        assert!(!rep.ok);
        assert!(rep.exhaustive);
        let cx = rep.counterexample.unwrap();
        assert_eq!(cx.faults.len(), 1);
        assert!(cx.residual_weight >= 2);
    }

    #[test]
    fn doubling_route_4_1_is_1_ft() {
        let c = recursive_cat(4, 1, RecursiveVariant::default()).unwrap();
        let rep = check_ft(&c, 1, FaultModel::XOnly);
        assert!(rep.ok, "counterexample: {:?}", rep.counterexample);
    }

    #[test]
    fn two_qubit_case_is_1_ft() {
        let c = recursive_cat(2, 1, RecursiveVariant::default()).unwrap();
        assert!(check_ft(&c, 1, FaultModel::XOnly).ok);
    }

    #[test]
    fn determinism_across_runs() {
        let c = fanout_cat(6);
        let a = check_ft(&c, 2, FaultModel::XOnly);
        let b = check_ft(&c, 2, FaultModel::XOnly);
        assert_eq!(a.counterexample, b.counterexample);
        assert_eq!(a.combos_checked, b.combos_checked);
    }

    #[test]
    fn sampling_kicks_in_past_the_budget() {
        let c = recursive_cat(16, 3, RecursiveVariant::default()).unwrap();
        let rep = check_ft_with_budget(&c, 3, FaultModel::XOnly, 1_000);
        assert!(!rep.exhaustive);
    }
}
