//! Synthesis and verification of fault-tolerant CAT-state preparation
//! circuits.
//!
//! The pipeline works on 3-regular *marked graphs*: each mark on an edge is
//! an output-qubit attachment point.  A graph whose small edge cuts never
//! isolate too many marks ("t-robust") yields a preparation circuit with
//! provably minimal CNOT count.  The crate provides
//!
//! * graph search and the known optimal families ([`graph`]),
//! * robustness checking by cut enumeration and SAT ([`robustness`]),
//! * mark placement by MaxSAT with counterexample feedback ([`marking`]),
//! * spider-ordering trees on the derived Z-graph ([`treeplan`]),
//! * circuit extraction plus the recursive and shallow constructions
//!   ([`extract`]),
//! * an independent stabilizer-level verifier ([`verify`]),
//! * a batch command-line front end ([`cli`]).

pub mod cli;
pub mod extract;
pub mod graph;
pub mod marking;
pub mod robustness;
pub mod treeplan;
pub mod verify;
