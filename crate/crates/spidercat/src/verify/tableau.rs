//! Bit-packed stabilizer tableau simulation with postselection.
//!
//! Rows 0..n-1 hold destabilizers, rows n..2n-1 stabilizers, plus one
//! scratch row for deterministic measurement phases.  Each row stores an
//! operator i^r prod_q X_q^x Z_q^z with x and z blocks packed 64 wide and
//! r mod 4.  In this representation a CNOT never touches r, a Hadamard
//! adds 2 per XZ site, and a product of commuting rows adds 2 per crossing
//! of a left Z over a right X.

use thiserror::Error;

use crate::extract::{Circuit, Op};

#[derive(Debug, Error)]
pub enum SimError {
    #[error("postselection on 0 unsatisfiable at op index {op_index}")]
    UnsatisfiablePostselection { op_index: usize },
}

pub struct StabilizerState {
    n: usize,
    words: usize,
    /// 2n+1 rows; each row is the x block then the z block.
    rows: Vec<Vec<u64>>,
    phase: Vec<u8>,
}

impl StabilizerState {
    /// All-|0> state.
    pub fn new(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        let mut rows = vec![vec![0u64; 2 * words]; 2 * n + 1];
        for q in 0..n {
            rows[q][q / 64] |= 1 << (q % 64); // destabilizer X_q
            rows[n + q][words + q / 64] |= 1 << (q % 64); // stabilizer Z_q
        }
        StabilizerState {
            n,
            words,
            rows,
            phase: vec![0; 2 * n + 1],
        }
    }

    pub fn qubit_count(&self) -> usize {
        self.n
    }

    fn get(&self, row: usize, block: usize, q: usize) -> bool {
        self.rows[row][block * self.words + q / 64] >> (q % 64) & 1 == 1
    }

    pub fn cnot(&mut self, control: usize, target: usize) {
        let w = self.words;
        for row in 0..2 * self.n {
            if self.get(row, 0, control) {
                self.rows[row][target / 64] ^= 1 << (target % 64);
            }
            if self.get(row, 1, target) {
                self.rows[row][w + control / 64] ^= 1 << (control % 64);
            }
        }
    }

    pub fn hadamard(&mut self, q: usize) {
        let w = self.words;
        for row in 0..2 * self.n {
            let x = self.get(row, 0, q);
            let z = self.get(row, 1, q);
            if x & z {
                self.phase[row] = (self.phase[row] + 2) % 4;
            }
            if x != z {
                self.rows[row][q / 64] ^= 1 << (q % 64);
                self.rows[row][w + q / 64] ^= 1 << (q % 64);
            }
        }
    }

    /// row h := (row i) * (row h).  Exact phases only matter when both are
    /// stabilizer rows, which always commute.
    fn rowsum(&mut self, h: usize, i: usize) {
        let w = self.words;
        let mut cross = 0u32;
        for k in 0..w {
            cross += (self.rows[i][w + k] & self.rows[h][k]).count_ones();
        }
        self.phase[h] = (self.phase[h] + self.phase[i] + 2 * (cross as u8 & 1)) % 4;
        debug_assert_ne!(h, i);
        let (head, tail) = self.rows.split_at_mut(h.max(i));
        let (dst, src) = if h > i {
            (&mut tail[0], &head[i])
        } else {
            (&mut head[h], &tail[0])
        };
        for k in 0..2 * w {
            dst[k] ^= src[k];
        }
    }

    /// Measure Z on q, postselecting outcome 0.  A random outcome is
    /// projected; returns false on a deterministic 1.
    pub fn measure_z_postselect0(&mut self, q: usize) -> bool {
        let n = self.n;
        let w = self.words;
        match (n..2 * n).find(|&row| self.get(row, 0, q)) {
            Some(p) => {
                for row in 0..2 * n {
                    if row != p && self.get(row, 0, q) {
                        self.rowsum(row, p);
                    }
                }
                self.rows[p - n] = self.rows[p].clone();
                self.phase[p - n] = self.phase[p];
                self.rows[p] = vec![0u64; 2 * w];
                self.rows[p][w + q / 64] |= 1 << (q % 64);
                self.phase[p] = 0;
                true
            }
            None => {
                let scratch = 2 * n;
                self.rows[scratch] = vec![0u64; 2 * w];
                self.phase[scratch] = 0;
                for i in 0..n {
                    if self.get(i, 0, q) {
                        self.rowsum(scratch, i + n);
                    }
                }
                self.phase[scratch] == 0
            }
        }
    }

    /// Reset q to |0>: measure, then correct a deterministic 1 with an X.
    pub fn prep_z(&mut self, q: usize) {
        if !self.measure_z_postselect0(q) {
            for row in 0..2 * self.n {
                if self.get(row, 1, q) {
                    self.phase[row] = (self.phase[row] + 2) % 4;
                }
            }
        }
    }

    pub fn prep_x(&mut self, q: usize) {
        self.prep_z(q);
        self.hadamard(q);
    }

    /// Is the Pauli with these X/Z supports and +1 sign in the stabilizer
    /// group?  Membership modulo sign is commutation with every stabilizer
    /// generator; the sign check rebuilds the element as the product of
    /// generators selected by destabilizer anticommutation.
    pub fn contains_stabilizer(&self, x_support: &[usize], z_support: &[usize]) -> bool {
        let n = self.n;
        let w = self.words;
        let mut px = vec![0u64; w];
        let mut pz = vec![0u64; w];
        for &q in x_support {
            px[q / 64] ^= 1 << (q % 64);
        }
        for &q in z_support {
            pz[q / 64] ^= 1 << (q % 64);
        }
        let anticommutes = |row: &Vec<u64>| {
            let mut acc = 0u64;
            for k in 0..w {
                acc ^= (px[k] & row[w + k]) ^ (pz[k] & row[k]);
            }
            acc.count_ones() % 2 == 1
        };
        if (n..2 * n).any(|row| anticommutes(&self.rows[row])) {
            return false;
        }
        let mut acc = vec![0u64; 2 * w];
        let mut exp = 0u8;
        for i in 0..n {
            if !anticommutes(&self.rows[i]) {
                continue;
            }
            let s = &self.rows[i + n];
            let mut cross = 0u32;
            for k in 0..w {
                cross += (s[w + k] & acc[k]).count_ones();
            }
            exp = (exp + self.phase[i + n] + 2 * (cross as u8 & 1)) % 4;
            for k in 0..2 * w {
                acc[k] ^= s[k];
            }
        }
        acc[..w] == px[..] && acc[w..] == pz[..] && exp == 0
    }
}

/// Run a circuit from all-|0>, postselecting every measurement on 0.
pub fn simulate(c: &Circuit) -> Result<StabilizerState, SimError> {
    let mut st = StabilizerState::new(c.qubit_count);
    for (op_index, op) in c.ops.iter().enumerate() {
        match *op {
            Op::PrepZ(q) => st.prep_z(q),
            Op::PrepX(q) => st.prep_x(q),
            Op::Cnot { control, target } => st.cnot(control, target),
            Op::MeasZ(q) => {
                if !st.measure_z_postselect0(q) {
                    return Err(SimError::UnsatisfiablePostselection { op_index });
                }
            }
            Op::MeasX(q) => {
                st.hadamard(q);
                if !st.measure_z_postselect0(q) {
                    return Err(SimError::UnsatisfiablePostselection { op_index });
                }
                st.hadamard(q);
            }
        }
    }
    Ok(st)
}

/// Does the state restrict to a CAT on the given outputs?  Checked as
/// group membership of X on all outputs and ZZ on consecutive pairs.
pub fn is_cat(state: &StabilizerState, outputs: &[usize]) -> bool {
    if outputs.is_empty() {
        return false;
    }
    state.contains_stabilizer(outputs, &[])
        && outputs.windows(2).all(|p| state.contains_stabilizer(&[], p))
}
