//! Recursive doubling construction.
//!
//! The n qubits split into two halves, each grown from its own |+> seed by
//! a CNOT fanout tree.  Wherever two sub-blocks of size m meet, min(m, t+1)
//! connections tie them together: inside a half the first connection is the
//! fanout CNOT itself and the rest are postselected ZZ checks; across the
//! top split, where no fanout runs, all connections are checks.  Check
//! attachment points spread evenly through both blocks.  One check at the
//! lowest level that has any is redundant for the counting target and gets
//! dropped, unless dropping it would disconnect the two halves.

use std::collections::BTreeMap;

use thiserror::Error;

use super::{Circuit, Op};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RecursiveVariant {
    /// All ZZ checks after the full fanout; easiest to reason about.
    #[default]
    ChecksAtEnd,
    /// Each merge's checks emitted as soon as both sides are grown,
    /// overlapping later fanout layers and compressing depth.
    Compressed,
}

#[derive(Debug, Error)]
pub enum RecursiveError {
    #[error("recursive construction needs n >= t+1 >= 2, got n={n}, t={t}")]
    Unsupported { n: usize, t: usize },
}

/// Prepare an n-qubit CAT via recursive doubling with protection level t.
/// n is rounded up to the nearest (t+1)*2^k internally; surplus qubits are
/// measured out in X at the end.
pub fn recursive_cat(n: usize, t: usize, variant: RecursiveVariant) -> Result<Circuit, RecursiveError> {
    let w = t + 1;
    if t == 0 || n < w || n < 2 {
        return Err(RecursiveError::Unsupported { n, t });
    }
    let mut n_full = w;
    while n_full < n {
        n_full *= 2;
    }

    // Plan pass: merge list in construction order, keyed by block range.
    let mut order: Vec<(usize, usize)> = Vec::new();
    let mut checks: BTreeMap<(usize, usize), Vec<(usize, usize)>> = BTreeMap::new();
    let mut levels: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let h = n_full.div_ceil(2);
    plan(0, h, w, &mut order, &mut checks, &mut levels);
    plan(h, n_full, w, &mut order, &mut checks, &mut levels);
    let root_c = h.min(n_full - h).min(w);
    let root_checks: Vec<(usize, usize)> = (0..root_c)
        .map(|j| {
            (
                j * h / root_c,
                h + ((j + 1) % root_c) * (n_full - h) / root_c,
            )
        })
        .collect();
    order.push((0, n_full));
    levels.insert((0, n_full), h.min(n_full - h));
    checks.insert((0, n_full), root_checks);

    // Drop the last top-split check: it has the most redundancy, since
    // every sub-block check also separates the halves' interiors.  A sole
    // cross-split connection stays, or the halves would never fuse.
    if checks[&(0, n_full)].len() > 1 {
        checks.get_mut(&(0, n_full)).unwrap().pop();
    }

    // Emission pass.
    let mut ops = vec![Op::PrepX(0), Op::PrepX(h)];
    for q in (1..h).chain(h + 1..n_full) {
        ops.push(Op::PrepZ(q));
    }
    let compressed = variant == RecursiveVariant::Compressed;
    let mut next_anc = n_full;
    emit(0, h, compressed, &checks, &mut ops, &mut next_anc);
    emit(h, n_full, compressed, &checks, &mut ops, &mut next_anc);
    if compressed {
        for &(a, b) in &checks[&(0, n_full)] {
            gadget(a, b, &mut ops, &mut next_anc);
        }
    } else {
        for key in &order {
            for &(a, b) in &checks[key] {
                gadget(a, b, &mut ops, &mut next_anc);
            }
        }
    }
    for q in n..n_full {
        ops.push(Op::MeasX(q));
    }

    let circuit = Circuit {
        qubit_count: next_anc,
        ops,
        output_qubits: (0..n).collect(),
    };
    debug_assert!(circuit.validate().is_ok());
    Ok(circuit)
}

/// Recursively record merges of block [lo, hi); connection 0 is the fanout
/// seed CNOT, connections 1.. are checks.
fn plan(
    lo: usize,
    hi: usize,
    w: usize,
    order: &mut Vec<(usize, usize)>,
    checks: &mut BTreeMap<(usize, usize), Vec<(usize, usize)>>,
    levels: &mut BTreeMap<(usize, usize), usize>,
) {
    let len = hi - lo;
    if len == 1 {
        return;
    }
    let mid = lo + len.div_ceil(2);
    plan(lo, mid, w, order, checks, levels);
    plan(mid, hi, w, order, checks, levels);
    let (ll, rl) = (mid - lo, hi - mid);
    let c = ll.min(rl).min(w);
    let cs: Vec<(usize, usize)> = (1..c)
        .map(|j| (lo + j * ll / c, mid + j * rl / c))
        .collect();
    order.push((lo, hi));
    levels.insert((lo, hi), ll.min(rl));
    checks.insert((lo, hi), cs);
}

fn emit(
    lo: usize,
    hi: usize,
    compressed: bool,
    checks: &BTreeMap<(usize, usize), Vec<(usize, usize)>>,
    ops: &mut Vec<Op>,
    next_anc: &mut usize,
) {
    let len = hi - lo;
    if len == 1 {
        return;
    }
    let mid = lo + len.div_ceil(2);
    ops.push(Op::Cnot {
        control: lo,
        target: mid,
    });
    emit(lo, mid, compressed, checks, ops, next_anc);
    emit(mid, hi, compressed, checks, ops, next_anc);
    if compressed {
        for &(a, b) in &checks[&(lo, hi)] {
            gadget(a, b, ops, next_anc);
        }
    }
}

fn gadget(a: usize, b: usize, ops: &mut Vec<Op>, next_anc: &mut usize) {
    let anc = *next_anc;
    *next_anc += 1;
    ops.push(Op::PrepZ(anc));
    ops.push(Op::Cnot {
        control: a,
        target: anc,
    });
    ops.push(Op::Cnot {
        control: b,
        target: anc,
    });
    ops.push(Op::MeasZ(anc));
}
