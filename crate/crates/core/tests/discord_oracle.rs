//! The discord optimizer against independent brute-force oracles.

mod common;

use common::*;
use qcorr::bipartite::Side;
use qcorr::discord::{
    MeasurementBasis, OptimizerConfig, classical_correlation, conditional_entropy_given,
    discord_detailed,
};
use qcorr::matrix::ComplexMatrix;
use qcorr::states::DensityMatrix;
use qcorr::tol::Tolerances;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn optimizer_matches_the_bloch_grid_on_qubit_measurements() {
    let cfg = OptimizerConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    // Mixed states with a qubit on the measured side, in 2⊗2 and 2⊗3.
    let cases: Vec<(DensityMatrix, Side)> = vec![
        (random_state(&mut rng, 2, 2), Side::H),
        (random_state(&mut rng, 2, 2), Side::K),
        (random_state(&mut rng, 2, 3), Side::H),
        (random_full_rank_state(&mut rng, 2, 2), Side::H),
        (random_full_rank_state(&mut rng, 3, 2), Side::K),
    ];
    for (idx, (theta, side)) in cases.iter().enumerate() {
        let oracle = bloch_grid_classical(theta, *side);
        let (found, _) = classical_correlation(theta, *side, &cfg).unwrap();
        assert!(
            (found - oracle).abs() <= 1e-4,
            "case {idx}: optimizer {found} vs grid oracle {oracle}"
        );
        // The optimizer may never fall meaningfully below a brute-force
        // lower bound.
        assert!(found >= oracle - 1e-6, "case {idx}: {found} < {oracle}");
    }
}

#[test]
fn discord_is_invariant_under_local_unitaries() {
    let cfg = OptimizerConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(202);
    let theta = random_state(&mut rng, 2, 2);
    let u = random_unitary(&mut rng, 2);
    let v = random_unitary(&mut rng, 2);
    let w = u.kron(&v);
    let rotated = DensityMatrix::from_matrix(
        2,
        2,
        w.mul(theta.matrix()).mul(&w.adjoint()),
        &Tolerances::default(),
    )
    .unwrap();
    let a = discord_detailed(&theta, Side::H, &cfg).unwrap();
    let b = discord_detailed(&rotated, Side::H, &cfg).unwrap();
    assert!(
        (a.value - b.value).abs() <= 1e-6,
        "discord changed under local unitaries: {} vs {}",
        a.value,
        b.value
    );
}

#[test]
fn compressed_conditional_entropy_matches_the_dense_projector_path() {
    let mut rng = ChaCha8Rng::seed_from_u64(303);
    for (d_h, d_k) in [(2, 3), (3, 2), (3, 3), (2, 2)] {
        let theta = random_state(&mut rng, d_h, d_k);
        for side in [Side::H, Side::K] {
            let d = theta.op().dim(side);
            let basis = MeasurementBasis::from_unitary(&random_unitary(&mut rng, d)).unwrap();
            let fast = conditional_entropy_given(&theta, side, &basis).unwrap();
            let dense = dense_conditional_entropy(&theta, side, &basis);
            assert!(
                (fast - dense).abs() <= 1e-11,
                "({d_h},{d_k}) on {side:?}: fast {fast} vs dense {dense}"
            );
        }
    }
}

#[test]
fn qutrit_optimizer_beats_or_meets_the_euler_grid_on_a_random_state() {
    // A single random 3⊗3 state: the optimizer must reach at least the value
    // of the best basis in a 64 000-point grid (minus convergence slack).
    let cfg = OptimizerConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(404);
    let theta = random_state(&mut rng, 3, 3);
    let oracle = qutrit_grid_classical(&theta, Side::H);
    let (found, _) = classical_correlation(&theta, Side::H, &cfg).unwrap();
    assert!(
        found >= oracle - 1e-6,
        "optimizer {found} below grid oracle {oracle}"
    );
}

#[test]
fn maximally_mixed_padding_does_not_create_correlations() {
    // I = 0 ⇒ C = 0 for every measurement, so the optimizer must return ~0.
    let product = ComplexMatrix::identity(6).scale_re(1.0 / 6.0);
    let theta = DensityMatrix::from_matrix(2, 3, product, &Tolerances::default()).unwrap();
    let cfg = OptimizerConfig {
        restarts: 4,
        ..OptimizerConfig::default()
    };
    let est = discord_detailed(&theta, Side::H, &cfg).unwrap();
    assert!(est.classical.abs() <= 1e-9);
    assert!(est.value.abs() <= 1e-9);
}
