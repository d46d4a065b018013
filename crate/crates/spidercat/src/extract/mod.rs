//! Circuits and the three construction routes: Z-graph extraction,
//! recursive doubling, and the depth-3 shallow scheme.

mod recursive;
mod shallow;
mod zx;

pub use recursive::{recursive_cat, RecursiveError, RecursiveVariant};
pub use shallow::{greedy_matching_cover, shallow_cat};
pub use zx::{extract_circuit, ExtractError};

use std::fmt::Write as _;
use std::str::FromStr;

use thiserror::Error;

/// One gate or preparation/measurement event.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Op {
    PrepZ(usize),
    PrepX(usize),
    Cnot { control: usize, target: usize },
    MeasZ(usize),
    MeasX(usize),
}

impl Op {
    pub fn qubits(&self) -> Vec<usize> {
        match *self {
            Op::PrepZ(q) | Op::PrepX(q) | Op::MeasZ(q) | Op::MeasX(q) => vec![q],
            Op::Cnot { control, target } => vec![control, target],
        }
    }
}

/// A postselected CNOT+preparation+measurement circuit.  All measurement
/// outcomes are postselected on 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Circuit {
    pub qubit_count: usize,
    pub ops: Vec<Op>,
    pub output_qubits: Vec<usize>,
}

#[derive(Debug, Error)]
pub enum CircuitError {
    #[error("qubit {0} used before preparation")]
    UseBeforePrep(usize),
    #[error("qubit {0} used after measurement without re-preparation")]
    UseAfterMeasure(usize),
    #[error("output qubit {0} is measured")]
    MeasuredOutput(usize),
    #[error("qubit index {0} out of range ({1} qubits)")]
    QubitRange(usize, usize),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

impl Circuit {
    /// Structural well-formedness: preparation before use, no reuse after
    /// measurement without re-preparation, outputs never measured.
    pub fn validate(&self) -> Result<(), CircuitError> {
        #[derive(Clone, Copy, PartialEq)]
        enum S {
            Fresh,
            Live,
            Measured,
        }
        let mut state = vec![S::Fresh; self.qubit_count];
        for op in &self.ops {
            for q in op.qubits() {
                if q >= self.qubit_count {
                    return Err(CircuitError::QubitRange(q, self.qubit_count));
                }
            }
            match *op {
                Op::PrepZ(q) | Op::PrepX(q) => state[q] = S::Live,
                Op::Cnot { control, target } => {
                    for q in [control, target] {
                        match state[q] {
                            S::Fresh => return Err(CircuitError::UseBeforePrep(q)),
                            S::Measured => return Err(CircuitError::UseAfterMeasure(q)),
                            S::Live => {}
                        }
                    }
                }
                Op::MeasZ(q) | Op::MeasX(q) => {
                    match state[q] {
                        S::Fresh => return Err(CircuitError::UseBeforePrep(q)),
                        S::Measured => return Err(CircuitError::UseAfterMeasure(q)),
                        S::Live => state[q] = S::Measured,
                    }
                    if self.output_qubits.contains(&q) {
                        return Err(CircuitError::MeasuredOutput(q));
                    }
                }
            }
        }
        for &q in &self.output_qubits {
            if q >= self.qubit_count {
                return Err(CircuitError::QubitRange(q, self.qubit_count));
            }
            if state[q] != S::Live {
                return Err(CircuitError::UseBeforePrep(q));
            }
        }
        Ok(())
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "qubits {}", self.qubit_count).unwrap();
        write!(s, "outputs").unwrap();
        for q in &self.output_qubits {
            write!(s, " {q}").unwrap();
        }
        writeln!(s).unwrap();
        for op in &self.ops {
            match *op {
                Op::PrepZ(q) => writeln!(s, "prep_z {q}").unwrap(),
                Op::PrepX(q) => writeln!(s, "prep_x {q}").unwrap(),
                Op::Cnot { control, target } => writeln!(s, "cnot {control} {target}").unwrap(),
                Op::MeasZ(q) => writeln!(s, "mz {q}").unwrap(),
                Op::MeasX(q) => writeln!(s, "mx {q}").unwrap(),
            }
        }
        s
    }
}

impl FromStr for Circuit {
    type Err = CircuitError;

    fn from_str(text: &str) -> Result<Self, CircuitError> {
        let mut qubit_count = None;
        let mut outputs = None;
        let mut ops = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut it = line.split_whitespace();
            let head = it.next().unwrap();
            let arg = |it: &mut dyn Iterator<Item = &str>| -> Result<usize, CircuitError> {
                it.next()
                    .ok_or(CircuitError::Parse {
                        line: i + 1,
                        msg: "missing argument".into(),
                    })?
                    .parse()
                    .map_err(|_| CircuitError::Parse {
                        line: i + 1,
                        msg: "not an integer".into(),
                    })
            };
            match head {
                "qubits" => qubit_count = Some(arg(&mut it)?),
                "outputs" => {
                    let mut qs = Vec::new();
                    for tok in it.by_ref() {
                        qs.push(tok.parse().map_err(|_| CircuitError::Parse {
                            line: i + 1,
                            msg: "not an integer".into(),
                        })?);
                    }
                    outputs = Some(qs);
                }
                "prep_z" => ops.push(Op::PrepZ(arg(&mut it)?)),
                "prep_x" => ops.push(Op::PrepX(arg(&mut it)?)),
                "cnot" => ops.push(Op::Cnot {
                    control: arg(&mut it)?,
                    target: arg(&mut it)?,
                }),
                "mz" => ops.push(Op::MeasZ(arg(&mut it)?)),
                "mx" => ops.push(Op::MeasX(arg(&mut it)?)),
                other => {
                    return Err(CircuitError::Parse {
                        line: i + 1,
                        msg: format!("unknown op {other:?}"),
                    })
                }
            }
        }
        let c = Circuit {
            qubit_count: qubit_count.ok_or(CircuitError::Parse {
                line: 0,
                msg: "missing `qubits` header".into(),
            })?,
            ops,
            output_qubits: outputs.ok_or(CircuitError::Parse {
                line: 0,
                msg: "missing `outputs` line".into(),
            })?,
        };
        c.validate()?;
        Ok(c)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct ResourceCounts {
    pub cnots: usize,
    pub cnot_depth: usize,
    /// Maximum number of concurrently live non-output qubits.
    pub ancillas: usize,
    /// Number of postselected measurements.
    pub flags: usize,
}

/// CNOT count, greedy ASAP CNOT depth, peak live ancillas, flag count.
pub fn resource_counts(c: &Circuit) -> ResourceCounts {
    let mut cnots = 0;
    let mut depth_at = vec![0usize; c.qubit_count];
    let mut depth = 0;
    let mut live = vec![false; c.qubit_count];
    let mut live_anc = 0usize;
    let mut max_anc = 0usize;
    let mut flags = 0;
    let is_output = {
        let mut v = vec![false; c.qubit_count];
        for &q in &c.output_qubits {
            v[q] = true;
        }
        v
    };
    for op in &c.ops {
        match *op {
            Op::PrepZ(q) | Op::PrepX(q) => {
                if !live[q] {
                    live[q] = true;
                    if !is_output[q] {
                        live_anc += 1;
                        max_anc = max_anc.max(live_anc);
                    }
                }
            }
            Op::Cnot { control, target } => {
                cnots += 1;
                let layer = depth_at[control].max(depth_at[target]) + 1;
                depth_at[control] = layer;
                depth_at[target] = layer;
                depth = depth.max(layer);
            }
            Op::MeasZ(q) | Op::MeasX(q) => {
                flags += 1;
                if live[q] {
                    live[q] = false;
                    if !is_output[q] {
                        live_anc -= 1;
                    }
                }
            }
        }
    }
    ResourceCounts {
        cnots,
        cnot_depth: depth,
        ancillas: max_anc,
        flags,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct LowerBounds {
    pub cnot_lb: usize,
    pub flag_lb: usize,
    /// vertex ratio r_t as (numerator, denominator)
    pub vertex_ratio: (usize, usize),
    /// false when r_t is only known as a bound (t > 5)
    pub exact: bool,
}

/// Closed-form floor on CNOTs and flags for an n-qubit, t-fault-tolerant
/// preparation: cnot_lb = ceil(n(r_t+1))+1, flag_lb = ceil(n r_t/2)+1.
pub fn lower_bounds(n: usize, t: usize) -> LowerBounds {
    let (num, den, exact) = match t {
        0 | 1 => (0, 1, true),
        2 => (1, 3, true),
        3 => (2, 3, true),
        4 => (5, 6, true),
        5 => (1, 1, true),
        // r_t is nondecreasing in t, so r_5 = 1 stays a valid bound.
        _ => (1, 1, false),
    };
    let ceil_div = |a: usize, b: usize| a.div_ceil(b);
    LowerBounds {
        cnot_lb: ceil_div(n * (num + den), den) + 1,
        flag_lb: ceil_div(n * num, 2 * den) + 1,
        vertex_ratio: (num, den),
        exact,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cat3() -> Circuit {
        Circuit {
            qubit_count: 3,
            ops: vec![
                Op::PrepX(0),
                Op::PrepZ(1),
                Op::PrepZ(2),
                Op::Cnot { control: 0, target: 1 },
                Op::Cnot { control: 0, target: 2 },
            ],
            output_qubits: vec![0, 1, 2],
        }
    }

    #[test]
    fn cat3_counts() {
        let r = resource_counts(&cat3());
        assert_eq!(
            r,
            ResourceCounts {
                cnots: 2,
                cnot_depth: 2,
                ancillas: 0,
                flags: 0
            }
        );
    }

    #[test]
    fn zz_gadget_counts() {
        let c = Circuit {
            qubit_count: 3,
            ops: vec![
                Op::PrepX(0),
                Op::PrepX(1),
                Op::PrepZ(2),
                Op::Cnot { control: 0, target: 2 },
                Op::Cnot { control: 1, target: 2 },
                Op::MeasZ(2),
            ],
            output_qubits: vec![0, 1],
        };
        let r = resource_counts(&c);
        assert_eq!(
            r,
            ResourceCounts {
                cnots: 2,
                cnot_depth: 2,
                ancillas: 1,
                flags: 1
            }
        );
    }

    #[test]
    fn text_roundtrip() {
        let c = cat3();
        let back: Circuit = c.to_text().parse().unwrap();
        assert_eq!(c, back);
    }

    #[test]
    fn validation_catches_misuse() {
        let mut c = cat3();
        c.ops.push(Op::MeasZ(1));
        assert!(matches!(c.validate(), Err(CircuitError::MeasuredOutput(1))));
        let bad = Circuit {
            qubit_count: 2,
            ops: vec![Op::Cnot { control: 0, target: 1 }],
            output_qubits: vec![0, 1],
        };
        assert!(matches!(bad.validate(), Err(CircuitError::UseBeforePrep(_))));
    }

    #[test]
    fn truncated_text_fails() {
        assert!("qubits 3\nprep_x 0\n".parse::<Circuit>().is_err());
    }

    #[test]
    fn lower_bound_values() {
        assert_eq!(lower_bounds(12, 3).cnot_lb, 21);
        assert_eq!(lower_bounds(12, 3).flag_lb, 5);
        assert_eq!(lower_bounds(12, 4).cnot_lb, 23);
        assert_eq!(lower_bounds(12, 4).flag_lb, 6);
        assert_eq!(lower_bounds(9, 2).cnot_lb, 13);
        assert_eq!(lower_bounds(14, 5).cnot_lb, 29);
        for n in [3, 8, 17] {
            assert_eq!(lower_bounds(n, 1).cnot_lb, n + 1);
            assert_eq!(lower_bounds(n, 1).flag_lb, 1);
        }
        assert!(!lower_bounds(10, 6).exact);
    }
}
