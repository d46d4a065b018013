//! Circuit extraction from a Z-graph and its spider-ordering tree.
//!
//! The tree decomposes into descending lines.  Each line is one qubit
//! wire: it starts at the root (prepared |+>) or at an off-line child
//! (prepared |0> and CNOT-fanned from its parent's wire) and runs through
//! continuation children until it hits a boundary spider, whose output leg
//! is that wire.  Z-edges outside the tree become postselected ZZ parity
//! checks: a fresh ancilla takes a CNOT from each endpoint's wire and is
//! measured in Z.  Spider fusion makes the output state a CAT regardless
//! of which edges land in the tree; the off-tree checks buy the fault
//! tolerance.

use thiserror::Error;

use crate::treeplan::{validate_tree, SpiderKind, SpiderTree, ZGraph};

use super::{Circuit, Op};

#[derive(Debug, Error)]
pub enum ExtractError {
    #[error("spider tree fails validation against the Z-graph")]
    InvalidTree,
}

/// Extract a preparation circuit.  Qubits 0..n-1 are the output wires in
/// Z-graph output order; check ancillas follow in creation order.
pub fn extract_circuit(z: &ZGraph, tree: &SpiderTree) -> Result<Circuit, ExtractError> {
    if !validate_tree(z, tree) {
        return Err(ExtractError::InvalidTree);
    }
    let s_count = z.spiders().len();
    let n = z.outputs().len();
    let children = tree.children();

    // Continuation child: the line keeps going there.  Prefer a childless
    // boundary child so lines end early; fall back to the smallest child.
    let mut cont: Vec<Option<usize>> = vec![None; s_count];
    for s in 0..s_count {
        if z.spiders()[s] != SpiderKind::Internal || children[s].is_empty() {
            continue;
        }
        let pick = children[s]
            .iter()
            .copied()
            .filter(|&c| z.spiders()[c] == SpiderKind::Boundary && children[c].is_empty())
            .min()
            .or_else(|| children[s].iter().copied().min());
        cont[s] = pick;
    }

    // Consume one z-edge id per tree edge; the rest become parity checks.
    let mut used = vec![false; z.z_edges().len()];
    for (c, p) in tree.parent.iter().enumerate() {
        let Some(p) = *p else { continue };
        let id = z
            .z_edges()
            .iter()
            .enumerate()
            .position(|(i, &(a, b))| !used[i] && ((a, b) == (c, p) || (a, b) == (p, c)))
            .expect("validated tree edge exists");
        used[id] = true;
    }
    let mut check_at: Vec<Vec<usize>> = vec![Vec::new(); s_count];
    for (i, &(a, b)) in z.z_edges().iter().enumerate() {
        if used[i] {
            continue;
        }
        check_at[a].push(i);
        if b != a {
            check_at[b].push(i);
        }
    }

    // Wire assignment: walk each line to its terminal boundary spider; the
    // wire number is that spider's output position.
    let mut out_idx = vec![usize::MAX; s_count];
    for (j, &b) in z.outputs().iter().enumerate() {
        out_idx[b] = j;
    }
    let mut wire = vec![usize::MAX; s_count];
    for start in 0..s_count {
        let on_parent_line = tree.parent[start].is_some_and(|p| cont[p] == Some(start));
        if on_parent_line {
            continue;
        }
        let mut chain = vec![start];
        let mut v = start;
        while let Some(c) = cont[v] {
            chain.push(c);
            v = c;
        }
        debug_assert_eq!(z.spiders()[v], SpiderKind::Boundary);
        for s in chain {
            wire[s] = out_idx[v];
        }
    }

    let mut ops = vec![Op::PrepX(wire[tree.root])];
    let mut pending: Vec<Option<usize>> = vec![None; z.z_edges().len()];
    let mut next_anc = n;
    // Pre-order walk; children ascending.
    let mut stack = vec![tree.root];
    while let Some(s) = stack.pop() {
        for &c in &children[s] {
            if cont[s] == Some(c) {
                continue;
            }
            ops.push(Op::PrepZ(wire[c]));
            ops.push(Op::Cnot {
                control: wire[s],
                target: wire[c],
            });
        }
        for &e in &check_at[s] {
            match pending[e] {
                None => {
                    let a = next_anc;
                    next_anc += 1;
                    ops.push(Op::PrepZ(a));
                    ops.push(Op::Cnot {
                        control: wire[s],
                        target: a,
                    });
                    pending[e] = Some(a);
                }
                Some(a) => {
                    ops.push(Op::Cnot {
                        control: wire[s],
                        target: a,
                    });
                    ops.push(Op::MeasZ(a));
                }
            }
        }
        for &c in children[s].iter().rev() {
            stack.push(c);
        }
    }

    let circuit = Circuit {
        qubit_count: next_anc,
        ops,
        output_qubits: (0..n).collect(),
    };
    debug_assert!(circuit.validate().is_ok());
    Ok(circuit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extract::resource_counts;
    use crate::graph::{heawood, petersen, MarkedGraph};
    use crate::treeplan::{build_spider_tree, to_zgraph};

    fn extract_marked(g: &MarkedGraph) -> Circuit {
        let z = to_zgraph(g);
        let tree = build_spider_tree(&z).unwrap();
        extract_circuit(&z, &tree).unwrap()
    }

    #[test]
    fn singly_marked_theta_extracts() {
        // Smallest marked multigraph: the theta with one mark per edge.
        let g = MarkedGraph::new(2, [(0, 1, 1), (0, 1, 1), (0, 1, 1)]).unwrap();
        let z = to_zgraph(&g);
        let tree = build_spider_tree(&z).unwrap();
        let c = extract_circuit(&z, &tree).unwrap();
        // 2 internal + 3 boundary spiders, two off-tree edges.
        let r = resource_counts(&c);
        assert_eq!(r.cnots, 6);
        assert_eq!(r.flags, 2);
    }

    #[test]
    fn marked_petersen_hits_the_count_identity() {
        let g = petersen();
        let mut marks = vec![1u8; 15];
        marks[0] = 0;
        marks[5] = 0;
        marks[10] = 0;
        let g = g.with_marks(&marks).unwrap();
        let c = extract_marked(&g);
        let r = resource_counts(&c);
        // 10 internal + 12 boundary spiders; CNOTs = spiders + 1.
        assert_eq!(r.cnots, 23);
        assert_eq!(r.flags, 6);
        assert_eq!(c.output_qubits.len(), 12);
        c.validate().unwrap();
    }

    #[test]
    fn marked_heawood_hits_the_count_identity() {
        let g = heawood();
        let marks: Vec<u8> = (0..21).map(|i| u8::from(i < 14)).collect();
        let g = g.with_marks(&marks).unwrap();
        let c = extract_marked(&g);
        let r = resource_counts(&c);
        assert_eq!(r.cnots, 29);
        assert_eq!(r.flags, 8);
    }

    #[test]
    fn cnot_count_is_spiders_plus_one_on_cubic_corpus() {
        for (g, marks) in [
            (crate::graph::k4(), vec![2u8, 2, 2, 0, 1, 2]),
            (crate::graph::moebius_ladder(3), vec![2u8; 9]),
        ] {
            let g = g.with_marks(&marks).unwrap();
            let z = to_zgraph(&g);
            let tree = build_spider_tree(&z).unwrap();
            let c = extract_circuit(&z, &tree).unwrap();
            assert_eq!(resource_counts(&c).cnots, z.spiders().len() + 1);
        }
    }
}
