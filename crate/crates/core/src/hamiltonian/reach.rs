//! Row-configuration connectivity of a circuit's Hamiltonian.
//!
//! A row configuration records which row each qubit sits on. The hopping
//! terms of the Hamiltonian move one qubit between rows `j-1` and `j`:
//! freely for a single-qubit gate, only while the target sits on row `j-1`
//! for the control of a controlled gate, and only while the control sits on
//! row `j` for its target. Configurations that cannot be reached from the
//! all-row-0 configuration are stranded: no term touches them, so they carry
//! zero-energy states unrelated to any input.

use crate::circuit::{Assignment, Circuit};
use crate::scalar::Scalar;

#[derive(Clone, Debug)]
pub struct RowReachability {
    num_qubits: usize,
    num_rows: usize,
    reachable: Vec<bool>,
}

impl RowReachability {
    pub fn of<T: Scalar>(circuit: &Circuit<T>) -> Self {
        let m = circuit.num_qubits;
        let rows = circuit.num_rows();
        let total = rows.pow(m as u32);
        let stride = |q: usize| rows.pow(q as u32);
        let row_of = |c: usize, q: usize| (c / stride(q)) % rows;

        let mut reachable = vec![false; total];
        let mut stack = vec![0usize];
        reachable[0] = true;
        while let Some(c) = stack.pop() {
            let mut visit = |next: usize, stack: &mut Vec<usize>| {
                if !reachable[next] {
                    reachable[next] = true;
                    stack.push(next);
                }
            };
            for (idx, stage) in circuit.stages.iter().enumerate() {
                let j = idx + 1;
                // qubit q toggles between rows j-1 and j
                let toggle = |q: usize| -> Option<usize> {
                    match row_of(c, q) {
                        r if r == j - 1 => Some(c + stride(q)),
                        r if r == j => Some(c - stride(q)),
                        _ => None,
                    }
                };
                for a in &stage.assignments {
                    match a {
                        Assignment::Single { qubit, .. } => {
                            if let Some(n) = toggle(*qubit) {
                                visit(n, &mut stack);
                            }
                        }
                        Assignment::Controlled(g) => {
                            if row_of(c, g.target) == j - 1 {
                                if let Some(n) = toggle(g.control) {
                                    visit(n, &mut stack);
                                }
                            }
                            if row_of(c, g.control) == j {
                                if let Some(n) = toggle(g.target) {
                                    visit(n, &mut stack);
                                }
                            }
                        }
                    }
                }
            }
        }
        RowReachability {
            num_qubits: m,
            num_rows: rows,
            reachable,
        }
    }

    pub fn num_configurations(&self) -> usize {
        self.reachable.len()
    }

    pub fn num_stranded(&self) -> usize {
        self.reachable.iter().filter(|r| !**r).count()
    }

    /// Rows per qubit (qubit 0 first) are reachable from all-row-0.
    pub fn is_reachable(&self, rows: &[usize]) -> bool {
        debug_assert_eq!(rows.len(), self.num_qubits);
        let idx = rows.iter().rev().fold(0, |acc, &r| acc * self.num_rows + r);
        self.reachable[idx]
    }

    /// Reachability of the row configuration underlying a product-basis index
    /// with `sites_per_qubit = 2 * num_rows`.
    pub fn is_reachable_basis(&self, mut index: usize) -> bool {
        let radix = 2 * self.num_rows;
        let mut cfg = 0;
        let mut place = 1;
        for _ in 0..self.num_qubits {
            cfg += ((index % radix) / 2) * place;
            index /= radix;
            place *= self.num_rows;
        }
        self.reachable[cfg]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{ControlledGate, SingleGate, Stage};

    fn cnot_stage() -> Stage<f64> {
        Stage::new(vec![Assignment::Controlled(ControlledGate::cnot(0, 1))])
    }

    #[test]
    fn single_qubit_gates_reach_everything() {
        let c = Circuit::<f64>::new(2, vec![Stage::uniform(2, SingleGate::Not); 3]);
        let r = RowReachability::of(&c);
        assert_eq!(r.num_configurations(), 16);
        assert_eq!(r.num_stranded(), 0);
    }

    #[test]
    fn one_cnot_strands_target_ahead() {
        // control must be on row 1 for the target to enter row 1
        let c = Circuit::<f64>::new(2, vec![cnot_stage()]);
        let r = RowReachability::of(&c);
        assert!(r.is_reachable(&[0, 0]));
        assert!(r.is_reachable(&[1, 0]));
        assert!(r.is_reachable(&[1, 1]));
        assert!(!r.is_reachable(&[0, 1]));
    }

    #[test]
    fn two_cnots_strand_split_configurations() {
        let c = Circuit::<f64>::new(2, vec![cnot_stage(), cnot_stage()]);
        let r = RowReachability::of(&c);
        // control two rows ahead, or target ahead at all
        assert!(!r.is_reachable(&[2, 0]));
        assert!(!r.is_reachable(&[0, 2]));
        assert!(!r.is_reachable(&[0, 1]));
        assert!(!r.is_reachable(&[1, 2]));
        assert_eq!(r.num_stranded(), 4);
        let l = crate::hilbert::Layout::new(2, 2).unwrap();
        let x = l
            .encode(&[crate::hilbert::site(2, 1), crate::hilbert::site(0, 0)])
            .unwrap();
        assert!(!r.is_reachable_basis(x));
    }
}
