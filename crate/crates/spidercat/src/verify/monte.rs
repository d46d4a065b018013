//! Monte Carlo estimation of the accepted logical error rate.
//!
//! Noise model: each CNOT is followed by a two-qubit depolarizing event
//! with probability p (uniform over the 15 nontrivial Paulis); each
//! preparation and each measurement fails with probability 2p/3 (the
//! single-qubit marginal).  Errors are tracked as Pauli frames; a shot is
//! accepted when no postselected measurement flips, and counts as a
//! logical failure when the accepted residual weighs more than t after
//! reduction by the CAT stabilizers.
//!
//! Work is split into 64 fixed shards with derived ChaCha seeds, so the
//! totals do not depend on how many worker threads run them.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::thread;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::extract::{Circuit, Op};

const SHARDS: u64 = 64;

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct MonteCarloReport {
    pub shots: u64,
    pub accepted: u64,
    pub failures: u64,
    /// failures / accepted; 0 when nothing was accepted
    pub logical_rate: f64,
    /// 95% Wilson interval for the logical rate
    pub wilson_low: f64,
    pub wilson_high: f64,
}

pub fn monte_carlo(c: &Circuit, t: usize, p: f64, shots: u64, seed: u64) -> MonteCarloReport {
    let slots: Vec<Mutex<(u64, u64)>> = (0..SHARDS).map(|_| Mutex::new((0, 0))).collect();
    let next = AtomicUsize::new(0);
    let workers = super::workers();
    thread::scope(|scope| {
        let slots = &slots;
        let next = &next;
        for _ in 0..workers {
            scope.spawn(move || loop {
                let s = next.fetch_add(1, Ordering::Relaxed) as u64;
                if s >= SHARDS {
                    break;
                }
                let shard_shots = shots / SHARDS + u64::from(s < shots % SHARDS);
                let mut rng =
                    ChaCha8Rng::seed_from_u64(seed ^ 0x9E3779B97F4A7C15u64.wrapping_mul(s + 1));
                let mut acc = 0u64;
                let mut fail = 0u64;
                for _ in 0..shard_shots {
                    if let Some(failed) = run_shot(c, t, p, &mut rng) {
                        acc += 1;
                        fail += u64::from(failed);
                    }
                }
                *slots[s as usize].lock().unwrap() = (acc, fail);
            });
        }
    });
    let (accepted, failures) = slots
        .into_iter()
        .map(|m| m.into_inner().unwrap())
        .fold((0, 0), |(a, f), (a2, f2)| (a + a2, f + f2));
    let logical_rate = if accepted == 0 {
        0.0
    } else {
        failures as f64 / accepted as f64
    };
    let (wilson_low, wilson_high) = wilson_interval(failures, accepted);
    MonteCarloReport {
        shots,
        accepted,
        failures,
        logical_rate,
        wilson_low,
        wilson_high,
    }
}

/// One noisy shot.  None when a flag fired (rejected); otherwise whether
/// the accepted residual is a logical failure.
fn run_shot(c: &Circuit, t: usize, p: f64, rng: &mut ChaCha8Rng) -> Option<bool> {
    let mut fx = vec![false; c.qubit_count];
    let mut fz = vec![false; c.qubit_count];
    let spam = 2.0 * p / 3.0;
    let mut rejected = false;
    for op in &c.ops {
        match *op {
            Op::PrepZ(q) => {
                fx[q] = rng.gen_bool(spam);
                fz[q] = false;
            }
            Op::PrepX(q) => {
                fz[q] = rng.gen_bool(spam);
                fx[q] = false;
            }
            Op::Cnot { control, target } => {
                fx[target] ^= fx[control];
                fz[control] ^= fz[target];
                if rng.gen_bool(p) {
                    let k = rng.gen_range(1..16u8);
                    fx[control] ^= k & 0b0001 != 0;
                    fz[control] ^= k & 0b0010 != 0;
                    fx[target] ^= k & 0b0100 != 0;
                    fz[target] ^= k & 0b1000 != 0;
                }
            }
            Op::MeasZ(q) => {
                let flip = fx[q] ^ rng.gen_bool(spam);
                rejected |= flip;
                fx[q] = false;
                fz[q] = false;
            }
            Op::MeasX(q) => {
                let flip = fz[q] ^ rng.gen_bool(spam);
                rejected |= flip;
                fx[q] = false;
                fz[q] = false;
            }
        }
    }
    if rejected {
        return None;
    }
    let n = c.output_qubits.len();
    let wx = c.output_qubits.iter().filter(|&&q| fx[q]).count();
    let zpar = c.output_qubits.iter().filter(|&&q| fz[q]).count() % 2;
    let weight_of = |w: usize| if zpar == 0 { w } else { w.max(1) };
    let weight = weight_of(wx).min(weight_of(n - wx));
    Some(weight > t)
}

/// 95% Wilson score interval for k successes out of n trials.
pub fn wilson_interval(k: u64, n: u64) -> (f64, f64) {
    if n == 0 {
        return (0.0, 1.0);
    }
    let z = 1.959963984540054_f64;
    let (k, n) = (k as f64, n as f64);
    let phat = k / n;
    let denom = 1.0 + z * z / n;
    let center = phat + z * z / (2.0 * n);
    let half = z * (phat * (1.0 - phat) / n + z * z / (4.0 * n * n)).sqrt();
    (((center - half) / denom).max(0.0), ((center + half) / denom).min(1.0))
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
    fn noiseless_runs_never_fail() {
        let r = monte_carlo(&fanout_cat(4), 1, 0.0, 1_000, 7);
        assert_eq!(r.accepted, 1_000);
        assert_eq!(r.failures, 0);
    }

    #[test]
    fn deterministic_given_seed() {
        let c = fanout_cat(4);
        let a = monte_carlo(&c, 1, 0.02, 20_000, 42);
        let b = monte_carlo(&c, 1, 0.02, 20_000, 42);
        assert_eq!(a, b);
    }

    #[test]
    fn protected_circuit_beats_bare_fanout() {
        let bare = monte_carlo(&fanout_cat(4), 1, 0.02, 200_000, 11);
        let guarded = recursive_cat(4, 1, RecursiveVariant::default()).unwrap();
        let prot = monte_carlo(&guarded, 1, 0.02, 200_000, 11);
        assert!(bare.failures > 0);
        assert!(prot.logical_rate < bare.logical_rate);
    }

    #[test]
    fn wilson_basics() {
        let (lo, hi) = wilson_interval(0, 0);
        assert_eq!((lo, hi), (0.0, 1.0));
        let (lo, hi) = wilson_interval(5, 100);
        assert!(lo > 0.0 && lo < 0.05 && hi > 0.05 && hi < 0.15);
    }
}
