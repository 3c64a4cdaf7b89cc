mod common;

use common::{corpus, random_corpus};
use gsqc::eigen::{solve_dense, solve_lanczos, LanczosOptions};
use gsqc::{
    assemble, build_grover_circuit, ground_space, verify, BiasSpec, Circuit32, GroundSpaceOptions,
    SolverChoice, VerifyOptions,
};

#[test]
fn lanczos_matches_dense_on_small_instances() {
    for (name, c) in random_corpus(77, 1)
        .into_iter()
        .filter(|(_, c)| c.num_qubits <= 2)
    {
        let m = c.num_qubits;
        for bias in [None, Some(BiasSpec::new(m, (1 << m) - 1, 0.1).unwrap())] {
            let h = assemble(&c, bias.as_ref()).unwrap();
            let k = ((1 << m) + 2).min(h.dim());
            let dense = solve_dense(&h, 4096).unwrap();
            let lanczos = solve_lanczos(&h, &LanczosOptions::new(k)).unwrap();
            for (i, (a, b)) in lanczos.values.iter().zip(&dense.values).enumerate() {
                assert!((a - b).abs() < 1e-8, "{name} #{i}: {a} vs {b}");
            }
        }
    }
}

#[test]
fn degenerate_ground_space_found_by_both_solvers() {
    for (name, c) in corpus()
        .into_iter()
        .filter(|(_, c)| c.num_qubits == 2 && c.num_stages() <= 4)
    {
        let h = assemble(&c, None).unwrap();
        for solver in [SolverChoice::Dense, SolverChoice::Lanczos] {
            let gs =
                ground_space(&h, &GroundSpaceOptions::default().solver(solver).expect(4)).unwrap();
            assert_eq!(gs.solver, solver);
            assert!(gs.gap.unwrap() > 1e-6, "{name}");
        }
    }
}

#[test]
fn lanczos_is_reproducible_for_a_seed() {
    let h = assemble(
        &build_grover_circuit::<f64>(),
        Some(&BiasSpec::new(2, 2, 0.1).unwrap()),
    )
    .unwrap();
    let a = solve_lanczos(&h, &LanczosOptions::new(3).seed(9)).unwrap();
    let b = solve_lanczos(&h, &LanczosOptions::new(3).seed(9)).unwrap();
    assert_eq!(a.values, b.values);
    assert_eq!(a.vectors, b.vectors);
}

#[test]
fn single_precision_pipeline() {
    let g: Circuit32 = build_grover_circuit();
    for input in 0..4 {
        let r = verify(&g, input, &VerifyOptions::default()).unwrap();
        assert_eq!(r.degeneracy, 1);
        assert!(r.ground_energy.abs() < 1e-4);
        assert!(r.min_fidelity() > 1.0 - 1e-3);
        assert_eq!(r.readout.top_outcome.unwrap().0, r.oracle_output.argmax().0);
    }
}
