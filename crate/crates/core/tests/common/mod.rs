#![allow(dead_code)]

use gsqc::circuit::random::random_circuit;
use gsqc::{build_grover_circuit, Assignment, Circuit64, ControlledGate, SingleGate, Stage};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn chain(gates: &[SingleGate<f64>]) -> Circuit64 {
    Circuit64::new(1, gates.iter().map(|g| Stage::uniform(1, *g)).collect())
}

fn controlled(gate: ControlledGate<f64>, m: usize) -> Stage<f64> {
    let mut a = vec![Assignment::Controlled(gate)];
    a.extend(
        (0..m)
            .filter(|&q| q != gate.control && q != gate.target)
            .map(|qubit| Assignment::Single {
                qubit,
                gate: SingleGate::Rotation(0.37),
            }),
    );
    Stage::new(a)
}

/// Named circuits covering every gate kind, both control polarities and a
/// general controlled pair, plus Grover.
pub fn fixed_circuits() -> Vec<(String, Circuit64)> {
    let refl = SingleGate::Orthogonal([[0.6, 0.8], [0.8, -0.6]]);
    let mut out = vec![
        ("identity chain".into(), chain(&[SingleGate::Identity; 3])),
        ("not chain".into(), chain(&[SingleGate::Not; 2])),
        (
            "rotation chain".into(),
            chain(&[SingleGate::Rotation(0.9), SingleGate::Rotation(-2.1)]),
        ),
        (
            "reflection chain".into(),
            chain(&[refl, SingleGate::Not, refl]),
        ),
        (
            "cnot on=1".into(),
            Circuit64::new(
                2,
                vec![
                    Stage::uniform(2, SingleGate::Rotation(0.5)),
                    controlled(ControlledGate::cnot(0, 1), 2),
                ],
            ),
        ),
        (
            "cnot on=0 reversed".into(),
            Circuit64::new(
                2,
                vec![
                    Stage::uniform(2, refl),
                    controlled(ControlledGate::zero_controlled_not(1, 0), 2),
                    Stage::uniform(2, SingleGate::Not),
                ],
            ),
        ),
        (
            "two cnots".into(),
            Circuit64::new(
                2,
                vec![
                    controlled(ControlledGate::cnot(0, 1), 2),
                    controlled(ControlledGate::cnot(0, 1), 2),
                ],
            ),
        ),
        (
            "general controlled, 3 qubits".into(),
            Circuit64::new(
                3,
                vec![
                    Stage::uniform(3, SingleGate::Rotation(1.2)),
                    controlled(
                        ControlledGate {
                            control: 2,
                            target: 0,
                            u_on_0: SingleGate::Rotation(0.4),
                            u_on_1: refl,
                        },
                        3,
                    ),
                ],
            ),
        ),
        (
            "cnot eps=2.5".into(),
            Circuit64::new(
                2,
                vec![
                    Stage::uniform(2, refl),
                    controlled(ControlledGate::cnot(1, 0), 2),
                ],
            )
            .with_epsilon(2.5),
        ),
        ("grover".into(), build_grover_circuit()),
    ];
    out.iter_mut().for_each(|(_, c)| c.validate().unwrap());
    out
}

/// Random circuits: `M ∈ {1,2,3}`, `N ∈ 1..=6`, 0 to 2 controlled stages
/// (none for one qubit), `per_cell` circuits per combination.
pub fn random_corpus(seed: u64, per_cell: usize) -> Vec<(String, Circuit64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for m in 1..=3 {
        for n in 1..=6 {
            let cnots = if m == 1 { 0..=0 } else { 0..=2 };
            for k in cnots {
                for i in 0..per_cell {
                    out.push((
                        format!("random M={m} N={n} cnots={k} #{i}"),
                        random_circuit(&mut rng, m, n, k),
                    ));
                }
            }
        }
    }
    out
}

pub fn corpus() -> Vec<(String, Circuit64)> {
    let mut c = fixed_circuits();
    c.extend(random_corpus(2024, 1));
    c
}
