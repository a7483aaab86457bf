//! Measurement-based correlation quantities: classical correlation and
//! quantum discord.
//!
//! A projective measurement on one side is described by an orthonormal basis
//! `{u_k}` of that factor. Conditioning on outcome `k` compresses the state
//! to a block on the unmeasured factor; the classical correlation is the
//! largest measured mutual information over bases,
//!
//! ```text
//! C_side(θ) = sup_basis [ S(marginal_other) − Σ_k p_k S(θ_k) ],
//! ```
//!
//! and the discord is `I(θ) − C_side(θ)`.
//!
//! The supremum is estimated by Nelder–Mead over a Hermitian generator
//! (`U = exp(iX)`, basis = columns of `U`) with deterministic seeded
//! restarts: restart 0 starts at the generator origin (the computational
//! basis), later restarts at uniform draws in `[−π, π]` per coordinate.
//! Restarts run sequentially, so results are reproducible bit-for-bit for a
//! fixed seed regardless of thread count.

use crate::bipartite::Side;
use crate::correlations::{mutual_entropy, von_neumann_entropy};
use crate::error::{Error, Result};
use crate::matrix::{C64, ComplexMatrix, exp_i_hermitian};
use crate::states::DensityMatrix;
use crate::tol::{EQ_BAND, P_FLOOR};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const ORTHO_TOL: f64 = 1e-8;

/// Orthonormal measurement basis on one factor.
#[derive(Clone, Debug)]
pub struct MeasurementBasis {
    d: usize,
    vectors: Vec<Vec<C64>>,
}

impl MeasurementBasis {
    /// Validate pairwise orthonormality.
    pub fn new(vectors: Vec<Vec<C64>>) -> Result<Self> {
        let d = vectors.len();
        if d == 0 {
            return Err(Error::BadMeasurement("empty basis".into()));
        }
        for v in &vectors {
            if v.len() != d {
                return Err(Error::BadMeasurement(format!(
                    "basis of {d} vectors needs length-{d} vectors, got {}",
                    v.len()
                )));
            }
        }
        for a in 0..d {
            for b in a..d {
                let dot: C64 = (0..d).map(|i| vectors[a][i].conj() * vectors[b][i]).sum();
                let expected = if a == b { 1.0 } else { 0.0 };
                if (dot - expected).norm() > ORTHO_TOL {
                    return Err(Error::BadMeasurement(format!(
                        "vectors {a},{b} have inner product {dot} (expected {expected})"
                    )));
                }
            }
        }
        Ok(MeasurementBasis { d, vectors })
    }

    /// Standard basis `e_0, …, e_{d−1}`.
    pub fn computational(d: usize) -> Self {
        let vectors = (0..d)
            .map(|k| {
                let mut v = vec![C64::new(0.0, 0.0); d];
                v[k] = C64::new(1.0, 0.0);
                v
            })
            .collect();
        MeasurementBasis { d, vectors }
    }

    /// Columns of a unitary.
    pub fn from_unitary(u: &ComplexMatrix) -> Result<Self> {
        if !u.is_square() {
            return Err(Error::NotSquare {
                rows: u.rows(),
                cols: u.cols(),
            });
        }
        MeasurementBasis::new((0..u.cols()).map(|j| u.column(j)).collect())
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn vector(&self, k: usize) -> &[C64] {
        &self.vectors[k]
    }
}

/// Conditional blocks after a projective measurement on one side.
pub struct PostMeasurement {
    /// `(p_k, θ_k)` for outcomes with weight above the probability floor;
    /// each `θ_k` is a unit-trace state on the unmeasured factor.
    pub outcomes: Vec<(f64, ComplexMatrix)>,
    /// Total weight of outcomes dropped for being below the floor.
    pub discarded_mass: f64,
}

/// Measure `side` of `theta` in `basis` and condition on the outcome.
pub fn post_measurement(
    theta: &DensityMatrix,
    side: Side,
    basis: &MeasurementBasis,
) -> Result<PostMeasurement> {
    let d_m = theta.op().dim(side);
    let d_o = theta.op().dim(side.other());
    if basis.d() != d_m {
        return Err(Error::BadMeasurement(format!(
            "basis dimension {} does not match measured factor {d_m}",
            basis.d()
        )));
    }
    let mut outcomes = Vec::with_capacity(d_m);
    let mut discarded_mass = 0.0;
    for k in 0..d_m {
        let u = basis.vector(k);
        let block = ComplexMatrix::from_fn(d_o, d_o, |a, b| {
            let mut s = C64::new(0.0, 0.0);
            for i in 0..d_m {
                for j in 0..d_m {
                    let entry = match side {
                        Side::H => theta.op().get2(i, a, j, b),
                        Side::K => theta.op().get2(a, i, b, j),
                    };
                    s += u[i].conj() * entry * u[j];
                }
            }
            s
        });
        let p = block.trace().re;
        if p < P_FLOOR {
            discarded_mass += p.max(0.0);
            continue;
        }
        outcomes.push((p, block.scale_re(1.0 / p)));
    }
    Ok(PostMeasurement {
        outcomes,
        discarded_mass,
    })
}

/// Average conditional entropy `Σ_k p_k S(θ_k)` for a measurement on `side`.
pub fn conditional_entropy_given(
    theta: &DensityMatrix,
    side: Side,
    basis: &MeasurementBasis,
) -> Result<f64> {
    let post = post_measurement(theta, side, basis)?;
    let mut total = 0.0;
    for (p, block) in &post.outcomes {
        total += p * von_neumann_entropy(block)?;
    }
    Ok(total)
}

/// Measured mutual information `S(marginal_other) − Σ_k p_k S(θ_k)`.
pub fn measured_mutual(
    theta: &DensityMatrix,
    side: Side,
    basis: &MeasurementBasis,
) -> Result<f64> {
    let s_other = von_neumann_entropy(&theta.marginal(side.other()))?;
    Ok(s_other - conditional_entropy_given(theta, side, basis)?)
}

/// Knobs for the basis search.
#[derive(Clone, Copy, Debug)]
pub struct OptimizerConfig {
    /// Independent Nelder–Mead starts (sequential, deterministic per seed).
    pub restarts: usize,
    /// Iteration cap per Nelder–Mead run.
    pub max_iters: usize,
    /// Simplex-diameter stopping threshold.
    pub step_tol: f64,
    /// Base seed for the restart sequence.
    pub seed: u64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        OptimizerConfig {
            restarts: 32,
            max_iters: 600,
            step_tol: 1e-10,
            seed: 42,
        }
    }
}

/// Result of a discord estimate.
#[derive(Clone, Debug)]
pub struct DiscordEstimate {
    /// `I − C` before the numerical-noise clamp.
    pub raw: f64,
    /// `raw`, with values in `[−EQ_BAND, 0)` clamped to zero.
    pub value: f64,
    /// Classical correlation found by the search.
    pub classical: f64,
    /// Basis attaining it.
    pub basis: MeasurementBasis,
    /// Restarts executed.
    pub restarts_used: usize,
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E3779B97F4A7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
    z ^ (z >> 31)
}

fn restart_seed(seed: u64, idx: usize) -> u64 {
    splitmix64(seed ^ 0x9E3779B97F4A7C15u64.wrapping_mul(idx as u64 + 1))
}

/// `d` real diagonal entries, then `(re, im)` for each `i < j` pair.
fn hermitian_from_params(d: usize, x: &[f64]) -> ComplexMatrix {
    let mut h = ComplexMatrix::zeros(d, d);
    for (i, &xi) in x.iter().enumerate().take(d) {
        h.set(i, i, C64::new(xi, 0.0));
    }
    let mut t = d;
    for i in 0..d {
        for j in (i + 1)..d {
            let v = C64::new(x[t], x[t + 1]);
            t += 2;
            h.set(i, j, v);
            h.set(j, i, v.conj());
        }
    }
    h
}

/// Basis given by the columns of `exp(i X(params))`.
pub fn basis_from_params(d: usize, x: &[f64]) -> Result<MeasurementBasis> {
    debug_assert_eq!(x.len(), d * d);
    MeasurementBasis::from_unitary(&exp_i_hermitian(&hermitian_from_params(d, x))?)
}

/// Standard Nelder–Mead (reflection 1, expansion 2, contraction 0.5,
/// shrink 0.5). Returns the best vertex and its value.
fn nelder_mead<F: FnMut(&[f64]) -> f64>(
    mut f: F,
    x0: &[f64],
    step: f64,
    max_iters: usize,
    step_tol: f64,
) -> (Vec<f64>, f64) {
    let n = x0.len();
    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(n + 1);
    simplex.push((x0.to_vec(), f(x0)));
    for i in 0..n {
        let mut x = x0.to_vec();
        x[i] += step;
        let fx = f(&x);
        simplex.push((x, fx));
    }
    for _ in 0..max_iters {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let diameter = simplex[1..]
            .iter()
            .map(|(x, _)| {
                x.iter()
                    .zip(&simplex[0].0)
                    .map(|(a, b)| (a - b).abs())
                    .fold(0.0, f64::max)
            })
            .fold(0.0, f64::max);
        let f_spread = simplex[n].1 - simplex[0].1;
        if diameter < step_tol || f_spread < 1e-13 {
            break;
        }
        let centroid: Vec<f64> = (0..n)
            .map(|i| simplex[..n].iter().map(|(x, _)| x[i]).sum::<f64>() / n as f64)
            .collect();
        let worst = simplex[n].0.clone();
        let reflect: Vec<f64> = (0..n).map(|i| 2.0 * centroid[i] - worst[i]).collect();
        let f_reflect = f(&reflect);
        if f_reflect < simplex[0].1 {
            let expand: Vec<f64> = (0..n).map(|i| 3.0 * centroid[i] - 2.0 * worst[i]).collect();
            let f_expand = f(&expand);
            simplex[n] = if f_expand < f_reflect {
                (expand, f_expand)
            } else {
                (reflect, f_reflect)
            };
        } else if f_reflect < simplex[n - 1].1 {
            simplex[n] = (reflect, f_reflect);
        } else {
            let toward = if f_reflect < simplex[n].1 {
                &reflect
            } else {
                &worst
            };
            let contract: Vec<f64> = (0..n)
                .map(|i| 0.5 * (centroid[i] + toward[i]))
                .collect();
            let f_contract = f(&contract);
            if f_contract < simplex[n].1.min(f_reflect) {
                simplex[n] = (contract, f_contract);
            } else {
                let best = simplex[0].0.clone();
                for entry in simplex.iter_mut().skip(1) {
                    let shrunk: Vec<f64> = (0..n)
                        .map(|i| 0.5 * (best[i] + entry.0[i]))
                        .collect();
                    let fs = f(&shrunk);
                    *entry = (shrunk, fs);
                }
            }
        }
    }
    simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
    let (x, fx) = simplex.swap_remove(0);
    (x, fx)
}

/// Classical correlation of `theta` under measurement on `side`, with the
/// maximizing basis. Deterministic for a fixed `config`.
pub fn classical_correlation(
    theta: &DensityMatrix,
    side: Side,
    config: &OptimizerConfig,
) -> Result<(f64, MeasurementBasis)> {
    let d = theta.op().dim(side);
    let n = d * d;
    let s_other = von_neumann_entropy(&theta.marginal(side.other()))?;

    // Any evaluation error (should not occur on a valid state) is pinned to
    // +∞ so the search simply avoids that point.
    let mut objective = |x: &[f64]| -> f64 {
        basis_from_params(d, x)
            .and_then(|basis| conditional_entropy_given(theta, side, &basis))
            .unwrap_or(f64::INFINITY)
    };

    let restarts = config.restarts.max(1);
    let mut best_x: Option<Vec<f64>> = None;
    let mut best_f = f64::INFINITY;
    for idx in 0..restarts {
        let x0: Vec<f64> = if idx == 0 {
            vec![0.0; n]
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(restart_seed(config.seed, idx));
            (0..n)
                .map(|_| (rng.random::<f64>() * 2.0 - 1.0) * std::f64::consts::PI)
                .collect()
        };
        let (coarse, _) = nelder_mead(&mut objective, &x0, 0.5, config.max_iters, config.step_tol);
        let (x, fx) = nelder_mead(&mut objective, &coarse, 0.05, config.max_iters, config.step_tol);
        if fx < best_f {
            best_f = fx;
            best_x = Some(x);
        }
    }
    let basis = basis_from_params(d, &best_x.expect("at least one restart"))?;
    Ok((s_other - best_f, basis))
}

/// Full discord estimate for a measurement on `side`.
pub fn discord_detailed(
    theta: &DensityMatrix,
    side: Side,
    config: &OptimizerConfig,
) -> Result<DiscordEstimate> {
    let mutual = mutual_entropy(theta)?;
    let (classical, basis) = classical_correlation(theta, side, config)?;
    let raw = mutual - classical;
    let value = if (-EQ_BAND..0.0).contains(&raw) { 0.0 } else { raw };
    Ok(DiscordEstimate {
        raw,
        value,
        classical,
        basis,
        restarts_used: config.restarts.max(1),
    })
}

/// Discord `I − C_side` (noise-clamped value).
pub fn discord(theta: &DensityMatrix, side: Side, config: &OptimizerConfig) -> Result<f64> {
    Ok(discord_detailed(theta, side, config)?.value)
}

/// Average of the two one-sided discords.
pub fn symmetric_discord(theta: &DensityMatrix, config: &OptimizerConfig) -> Result<f64> {
    let h = discord(theta, Side::H, config)?;
    let k = discord(theta, Side::K, config)?;
    Ok(0.5 * (h + k))
}
