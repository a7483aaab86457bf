//! Shared generators and independent brute-force oracles for integration
//! tests. Everything here is deliberately naive — the point is to check the
//! library against straightforward, obviously-correct computations.
#![allow(dead_code)]

use qcorr::bipartite::Side;
use qcorr::discord::{MeasurementBasis, measured_mutual};
use qcorr::matrix::{C64, ComplexMatrix, exp_i_hermitian};
use qcorr::states::DensityMatrix;
use qcorr::tol::Tolerances;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

pub fn random_complex(rng: &mut ChaCha8Rng) -> C64 {
    C64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5)
}

pub fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| random_complex(rng))
}

pub fn random_hermitian(rng: &mut ChaCha8Rng, n: usize) -> ComplexMatrix {
    let g = random_matrix(rng, n, n);
    g.add(&g.adjoint()).scale_re(0.5)
}

/// Wishart-distributed state: `GG† / Tr(GG†)`. Full rank almost surely.
pub fn random_state(rng: &mut ChaCha8Rng, d_h: usize, d_k: usize) -> DensityMatrix {
    let n = d_h * d_k;
    let g = random_matrix(rng, n, n);
    let gg = g.mul(&g.adjoint());
    let tr = gg.trace().re;
    DensityMatrix::from_matrix(d_h, d_k, gg.scale_re(1.0 / tr), &Tolerances::default()).unwrap()
}

/// Wishart state mixed with the maximally mixed one, so the smallest
/// eigenvalue is bounded away from zero.
pub fn random_full_rank_state(rng: &mut ChaCha8Rng, d_h: usize, d_k: usize) -> DensityMatrix {
    let n = d_h * d_k;
    let base = random_state(rng, d_h, d_k);
    let mixed = base
        .matrix()
        .scale_re(0.9)
        .add(&ComplexMatrix::identity(n).scale_re(0.1 / n as f64));
    DensityMatrix::from_matrix(d_h, d_k, mixed, &Tolerances::default()).unwrap()
}

/// Haar-ish random pure state from a normalized complex Gaussian-ish vector.
pub fn random_pure_state(rng: &mut ChaCha8Rng, d_h: usize, d_k: usize) -> DensityMatrix {
    let n = d_h * d_k;
    let v: Vec<C64> = (0..n).map(|_| random_complex(rng)).collect();
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let v: Vec<C64> = v.into_iter().map(|z| z / norm).collect();
    let m = ComplexMatrix::outer(&v, &v);
    DensityMatrix::from_matrix(d_h, d_k, m, &Tolerances::default()).unwrap()
}

/// Random unitary as `exp(iH)` for a random Hermitian `H`.
pub fn random_unitary(rng: &mut ChaCha8Rng, n: usize) -> ComplexMatrix {
    exp_i_hermitian(&random_hermitian(rng, n).scale_re(2.0)).unwrap()
}

/// Random probability vector.
pub fn random_probabilities(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    let raw: Vec<f64> = (0..n).map(|_| rng.random::<f64>() + 1e-3).collect();
    let total: f64 = raw.iter().sum();
    raw.into_iter().map(|x| x / total).collect()
}

/// Qubit measurement basis at Bloch angles `(t, phi)`:
/// `u0 = (cos t/2, e^{iφ} sin t/2)`, `u1 = (sin t/2, −e^{iφ} cos t/2)`.
pub fn qubit_basis(t: f64, phi: f64) -> MeasurementBasis {
    let (c, s) = ((t / 2.0).cos(), (t / 2.0).sin());
    let e = C64::new(phi.cos(), phi.sin());
    MeasurementBasis::new(vec![
        vec![C64::new(c, 0.0), e * s],
        vec![C64::new(s, 0.0), -(e * c)],
    ])
    .unwrap()
}

/// Brute-force classical correlation for a qubit measured side: 1° Bloch
/// grid followed by a 40× local refinement around the best coarse point.
/// Accurate to ~1e-6 for smooth landscapes.
pub fn bloch_grid_classical(theta: &DensityMatrix, side: Side) -> f64 {
    assert_eq!(theta.op().dim(side), 2, "oracle needs a qubit on {side:?}");
    let step = PI / 180.0;
    let mut best = f64::NEG_INFINITY;
    let (mut best_t, mut best_p) = (0.0, 0.0);
    for ti in 0..=180 {
        for pi in 0..360 {
            let (t, p) = (step * ti as f64, step * pi as f64);
            let m = measured_mutual(theta, side, &qubit_basis(t, p)).unwrap();
            if m > best {
                best = m;
                best_t = t;
                best_p = p;
            }
        }
    }
    for i in -40i32..=40 {
        for j in -40i32..=40 {
            let t = (best_t + step * i as f64 / 40.0).clamp(0.0, PI);
            let p = best_p + step * j as f64 / 40.0;
            let m = measured_mutual(theta, side, &qubit_basis(t, p)).unwrap();
            if m > best {
                best = m;
            }
        }
    }
    best
}

/// Two-level rotation embedded in dimension `d`: acts on coordinates
/// `(a, b)` as `[[cos t, −e^{iφ} sin t], [e^{−iφ} sin t, cos t]]`.
pub fn plane_rotation(d: usize, a: usize, b: usize, t: f64, phi: f64) -> ComplexMatrix {
    let mut m = ComplexMatrix::identity(d);
    let e = C64::new(phi.cos(), phi.sin());
    m.set(a, a, C64::new(t.cos(), 0.0));
    m.set(a, b, -e * t.sin());
    m.set(b, a, e.conj() * t.sin());
    m.set(b, b, C64::new(t.cos(), 0.0));
    m
}

/// Brute-force classical correlation for a qutrit measured side: exhaustive
/// grid over three plane rotations (5 polar × 8 phase values each; the
/// all-zeros point is the computational basis). 64 000 bases.
pub fn qutrit_grid_classical(theta: &DensityMatrix, side: Side) -> f64 {
    assert_eq!(theta.op().dim(side), 3, "oracle needs a qutrit on {side:?}");
    let thetas: Vec<f64> = (0..5).map(|i| PI / 2.0 * i as f64 / 4.0).collect();
    let phis: Vec<f64> = (0..8).map(|i| PI / 4.0 * i as f64).collect();
    let mut best = f64::NEG_INFINITY;
    for &t1 in &thetas {
        for &p1 in &phis {
            let g1 = plane_rotation(3, 0, 1, t1, p1);
            for &t2 in &thetas {
                for &p2 in &phis {
                    let g12 = g1.mul(&plane_rotation(3, 0, 2, t2, p2));
                    for &t3 in &thetas {
                        for &p3 in &phis {
                            let u = g12.mul(&plane_rotation(3, 1, 2, t3, p3));
                            let basis = MeasurementBasis::from_unitary(&u).unwrap();
                            let m = measured_mutual(theta, side, &basis).unwrap();
                            if m > best {
                                best = m;
                            }
                        }
                    }
                }
            }
        }
    }
    best
}

/// Average conditional entropy computed the slow way: project with
/// `Π_k ⊗ 1` (or `1 ⊗ Π_k`) on the full matrix and take entropies of the
/// full-dimension conditional states.
pub fn dense_conditional_entropy(
    theta: &DensityMatrix,
    side: Side,
    basis: &MeasurementBasis,
) -> f64 {
    let (d_h, d_k) = theta.dims();
    let d_m = theta.op().dim(side);
    let mut total = 0.0;
    for k in 0..d_m {
        let u = basis.vector(k);
        let proj_small = ComplexMatrix::from_fn(d_m, d_m, |i, j| u[i] * u[j].conj());
        let proj = match side {
            Side::H => proj_small.kron(&ComplexMatrix::identity(d_k)),
            Side::K => ComplexMatrix::identity(d_h).kron(&proj_small),
        };
        let compressed = proj.mul(theta.matrix()).mul(&proj);
        let p = compressed.trace().re;
        if p < 1e-12 {
            continue;
        }
        total += p * qcorr::correlations::von_neumann_entropy(&compressed.scale_re(1.0 / p)).unwrap();
    }
    total
}
