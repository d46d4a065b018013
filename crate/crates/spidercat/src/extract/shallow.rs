//! Depth-3 shallow construction.
//!
//! Every spider of the Z-graph becomes a little CAT over its legs (one
//! qubit per leg), built in two fanout layers; a third layer glues spiders
//! along z-edges by postselected Bell measurements on the two leg qubits.
//! A greedy maximal matching merges adjacent spider pairs into a single
//! 4-qubit CAT up front, saving one fanout and one gluing per pair.  Since
//! every spider has three legs, any maximal matching covers at least
//! (3V+2n)/5 spiders, which caps CNOTs at (29r+26)n/10 and live ancillas
//! at (12r+8)n/5.

use crate::treeplan::ZGraph;

use super::{Circuit, Op};

/// Number of spiders a greedy maximal matching on the z-edges covers.
pub fn greedy_matching_cover(z: &ZGraph) -> usize {
    greedy_matching(z).iter().filter(|m| m.is_some()).count()
}

/// matched[s] = Some(edge id) for covered spiders, in canonical edge order.
fn greedy_matching(z: &ZGraph) -> Vec<Option<usize>> {
    let mut matched = vec![None; z.spiders().len()];
    for (i, &(a, b)) in z.z_edges().iter().enumerate() {
        if a != b && matched[a].is_none() && matched[b].is_none() {
            matched[a] = Some(i);
            matched[b] = Some(i);
        }
    }
    matched
}

/// Build the depth-3 circuit for a connected Z-graph.
pub fn shallow_cat(z: &ZGraph) -> Circuit {
    let n = z.outputs().len();
    let matched = greedy_matching(z);
    let glued: Vec<usize> = (0..z.z_edges().len())
        .filter(|&i| {
            let (a, b) = z.z_edges()[i];
            matched[a] != Some(i) || matched[b] != Some(i)
        })
        .collect();

    // Qubit layout: outputs first, then two leg qubits per glued edge.
    let mut next = n;
    let mut glue_legs = vec![(usize::MAX, usize::MAX); z.z_edges().len()];
    for &i in &glued {
        glue_legs[i] = (next, next + 1);
        next += 2;
    }
    let mut legs: Vec<Vec<usize>> = vec![Vec::new(); z.spiders().len()];
    for (j, &b) in z.outputs().iter().enumerate() {
        legs[b].push(j);
    }
    for &i in &glued {
        let (a, b) = z.z_edges()[i];
        let (qa, qb) = glue_legs[i];
        legs[a].push(qa);
        legs[b].push(qb);
    }

    let mut ops = Vec::new();
    let cat = |qs: &[usize], ops: &mut Vec<Op>| {
        ops.push(Op::PrepX(qs[0]));
        for &q in &qs[1..] {
            ops.push(Op::PrepZ(q));
        }
    };
    // Matched pairs: joint 4-qubit CAT in two layers.
    for (i, &(a, b)) in z.z_edges().iter().enumerate() {
        if matched[a] != Some(i) || matched[b] != Some(i) {
            continue;
        }
        debug_assert!(legs[a].len() == 2 && legs[b].len() == 2);
        let (a1, a2, b1, b2) = (legs[a][0], legs[a][1], legs[b][0], legs[b][1]);
        cat(&[a1, a2, b1, b2], &mut ops);
        ops.push(Op::Cnot { control: a1, target: b1 });
        ops.push(Op::Cnot { control: a1, target: a2 });
        ops.push(Op::Cnot { control: b1, target: b2 });
    }
    // Unmatched spiders: 3-qubit CAT over their legs.
    for s in 0..z.spiders().len() {
        if matched[s].is_some() {
            continue;
        }
        debug_assert_eq!(legs[s].len(), 3);
        let (l0, l1, l2) = (legs[s][0], legs[s][1], legs[s][2]);
        cat(&[l0, l1, l2], &mut ops);
        ops.push(Op::Cnot { control: l0, target: l1 });
        ops.push(Op::Cnot { control: l0, target: l2 });
    }
    // Layer 3: Bell-measure the glued leg pairs.
    for &i in &glued {
        let (qa, qb) = glue_legs[i];
        ops.push(Op::Cnot { control: qa, target: qb });
        ops.push(Op::MeasX(qa));
        ops.push(Op::MeasZ(qb));
    }

    let circuit = Circuit {
        qubit_count: next,
        ops,
        output_qubits: (0..n).collect(),
    };
    debug_assert!(circuit.validate().is_ok());
    circuit
}
