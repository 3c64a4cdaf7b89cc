//! Random valid circuits for property tests and benchmarks.

use rand::seq::index::sample;
use rand::Rng;

use super::{Assignment, Circuit, ControlledGate, SingleGate, Stage};
use crate::scalar::Scalar;

/// Identity, NOT, a rotation, or a reflection, with equal odds.
pub fn random_gate<T: Scalar, R: Rng + ?Sized>(rng: &mut R) -> SingleGate<T> {
    let theta = T::lit(rng.random_range(-std::f64::consts::PI..std::f64::consts::PI));
    match rng.random_range(0..4) {
        0 => SingleGate::Identity,
        1 => SingleGate::Not,
        2 => SingleGate::Rotation(theta),
        _ => {
            let (s, c) = theta.sin_cos();
            SingleGate::Orthogonal([[c, s], [s, -c]])
        }
    }
}

/// `num_stages` stages on `num_qubits` qubits. Up to `controlled_stages`
/// distinct stages (chosen at random) carry one CNOT of random orientation
/// and control polarity; the remaining qubits get random single gates.
pub fn random_circuit<T: Scalar, R: Rng + ?Sized>(
    rng: &mut R,
    num_qubits: usize,
    num_stages: usize,
    controlled_stages: usize,
) -> Circuit<T> {
    let with_cnot: Vec<usize> = if num_qubits > 1 {
        sample(rng, num_stages, controlled_stages.min(num_stages)).into_vec()
    } else {
        Vec::new()
    };
    let stages = (0..num_stages)
        .map(|j| {
            let mut assignments = Vec::with_capacity(num_qubits);
            let mut busy = Vec::new();
            if with_cnot.contains(&j) {
                let pair = sample(rng, num_qubits, 2);
                let (control, target) = (pair.index(0), pair.index(1));
                let gate = if rng.random_bool(0.5) {
                    ControlledGate::cnot(control, target)
                } else {
                    ControlledGate::zero_controlled_not(control, target)
                };
                assignments.push(Assignment::Controlled(gate));
                busy = vec![control, target];
            }
            for qubit in (0..num_qubits).filter(|q| !busy.contains(q)) {
                assignments.push(Assignment::Single {
                    qubit,
                    gate: random_gate(rng),
                });
            }
            Stage::new(assignments)
        })
        .collect();
    Circuit::new(num_qubits, stages)
}
