//! Constructors for bipartite density matrices and the state families the
//! CLI sweeps over.
//!
//! Everything funnels through [`DensityMatrix`], which enforces the three
//! state invariants (Hermitian, positive semidefinite, unit trace) at build
//! time. The circulant machinery keeps states as cyclic blocks `a^(α)` so the
//! partial transpose can be computed blockwise and cross-checked against the
//! dense route.

use std::f64::consts::PI;

use crate::bipartite::{BipartiteOperator, Side};
use crate::error::{Error, Result};
use crate::matrix::{C64, ComplexMatrix, hermitian_eig, is_psd};
use crate::tol::{PROB_TOL, PSD_TOL, Tolerances};

/// A validated bipartite density matrix.
#[derive(Clone, Debug)]
pub struct DensityMatrix {
    op: BipartiteOperator,
}

impl DensityMatrix {
    /// Validate and wrap: Hermitian, then PSD, then unit trace.
    pub fn new(op: BipartiteOperator, tol: &Tolerances) -> Result<Self> {
        op.matrix().require_hermitian(tol.herm)?;
        let (ok, min_eig) = is_psd(op.matrix(), tol.psd)?;
        if !ok {
            return Err(Error::NotPsd {
                min_eig,
                tol: tol.psd,
            });
        }
        let trace = op.matrix().trace().re;
        if (trace - 1.0).abs() > tol.trace {
            return Err(Error::BadTrace {
                trace,
                expected: 1.0,
                tol: tol.trace,
            });
        }
        Ok(DensityMatrix { op })
    }

    /// Validate a raw matrix with explicit factor dimensions.
    pub fn from_matrix(
        d_h: usize,
        d_k: usize,
        mat: ComplexMatrix,
        tol: &Tolerances,
    ) -> Result<Self> {
        Self::new(BipartiteOperator::new(d_h, d_k, mat)?, tol)
    }

    pub fn op(&self) -> &BipartiteOperator {
        &self.op
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        self.op.matrix()
    }

    /// `(d_h, d_k)`.
    pub fn dims(&self) -> (usize, usize) {
        (self.op.d_h(), self.op.d_k())
    }

    /// Reduced state **on** `side` (the other factor is traced out).
    pub fn marginal(&self, side: Side) -> ComplexMatrix {
        self.op.partial_trace(side.other())
    }

    /// Eigenvalues of the state, ascending.
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        Ok(hermitian_eig(self.matrix(), Tolerances::default().herm)?.values)
    }
}

fn validate_weights(p: &[f64], what: &str) -> Result<()> {
    for (i, &x) in p.iter().enumerate() {
        if !x.is_finite() || x < -PROB_TOL {
            return Err(Error::BadProbability(format!(
                "{what}[{i}] = {x} is negative"
            )));
        }
    }
    let sum: f64 = p.iter().sum();
    if (sum - 1.0).abs() > PROB_TOL {
        return Err(Error::BadProbability(format!(
            "{what} sums to {sum}, expected 1"
        )));
    }
    Ok(())
}

/// `exp(2πi·e/d)` with a wrapped exponent.
fn phase(d: usize, e: i64) -> C64 {
    let r = e.rem_euclid(d as i64) as f64;
    C64::from_polar(1.0, 2.0 * PI * r / d as f64)
}

/// Pure state `|Ψ⟩⟨Ψ|` with `|Ψ⟩ = Σ_i √λ_i e_i ⊗ e_i` on `C^d ⊗ C^d`.
///
/// `lambda` is the Schmidt probability vector; both marginals come out as
/// `diag(lambda)`.
pub fn pure_from_schmidt(lambda: &[f64]) -> Result<DensityMatrix> {
    if lambda.is_empty() {
        return Err(Error::BadProbability("empty Schmidt vector".into()));
    }
    validate_weights(lambda, "Schmidt vector")?;
    let d = lambda.len();
    let mut psi = vec![C64::new(0.0, 0.0); d * d];
    for (i, &l) in lambda.iter().enumerate() {
        psi[i * d + i] = C64::new(l.max(0.0).sqrt(), 0.0);
    }
    let mat = ComplexMatrix::outer(&psi, &psi);
    DensityMatrix::from_matrix(d, d, mat, &Tolerances::default())
}

/// Convex mixture `Σ w_i ρ_i ⊗ σ_i` of product states — separable by construction.
pub fn separable_mixture(
    weights: &[f64],
    parts: &[(ComplexMatrix, ComplexMatrix)],
) -> Result<DensityMatrix> {
    if weights.len() != parts.len() || parts.is_empty() {
        return Err(Error::DimensionMismatch(format!(
            "{} weights for {} product terms",
            weights.len(),
            parts.len()
        )));
    }
    validate_weights(weights, "mixture weights")?;
    let tol = Tolerances::default();
    let (d_h, d_k) = (parts[0].0.rows(), parts[0].1.rows());
    let mut acc = BipartiteOperator::zeros(d_h, d_k);
    for (w, (rho, sigma)) in weights.iter().zip(parts) {
        // Each factor must itself be a state.
        for (m, d) in [(rho, d_h), (sigma, d_k)] {
            if m.rows() != d || m.cols() != d {
                return Err(Error::DimensionMismatch(
                    "product factors must share dimensions across terms".into(),
                ));
            }
            m.require_hermitian(tol.herm)?;
            let (ok, min_eig) = is_psd(m, tol.psd)?;
            if !ok {
                return Err(Error::NotPsd {
                    min_eig,
                    tol: tol.psd,
                });
            }
            let tr = m.trace().re;
            if (tr - 1.0).abs() > tol.trace {
                return Err(Error::BadTrace {
                    trace: tr,
                    expected: 1.0,
                    tol: tol.trace,
                });
            }
        }
        acc = acc.add(&BipartiteOperator::kron_parts(rho, sigma).scale_re(*w));
    }
    DensityMatrix::new(acc, &tol)
}

/// Trace-one maximally entangled state `(1/d) Σ_ij e_ij ⊗ e_ij` on `C^d ⊗ C^d`.
pub fn max_entangled(d: usize) -> Result<DensityMatrix> {
    if d < 2 {
        return Err(Error::BadDimension {
            d,
            reason: "maximally entangled state needs at least two levels".into(),
        });
    }
    let op = BipartiteOperator::from_fn(d, d, |i, a, j, b| {
        if i == a && j == b {
            C64::new(1.0 / d as f64, 0.0)
        } else {
            C64::new(0.0, 0.0)
        }
    });
    DensityMatrix::new(op, &Tolerances::default())
}

/// Weyl unitary `U_{mn}` on `C^d`: `U_{mn} e_k = λ^{mk} e_{k+n mod d}` with
/// `λ = exp(2πi/d)`.
pub fn weyl_unitary(d: usize, m: usize, n: usize) -> Result<ComplexMatrix> {
    if d == 0 {
        return Err(Error::BadDimension {
            d,
            reason: "dimension must be positive".into(),
        });
    }
    let mut u = ComplexMatrix::zeros(d, d);
    for k in 0..d {
        u.set((k + n) % d, k, phase(d, (m * k) as i64));
    }
    Ok(u)
}

/// Cyclic shift `S e_k = e_{k+1 mod d}` (the Weyl unitary `U_{01}`).
pub fn shift_matrix(d: usize) -> ComplexMatrix {
    weyl_unitary(d, 0, 1).expect("d > 0")
}

/// Weights `p_{mn}` over the d² Weyl-displaced maximally entangled projectors.
#[derive(Clone, Debug)]
pub struct BellWeights {
    d: usize,
    /// Row-major `p[m][n]`.
    p: Vec<f64>,
}

impl BellWeights {
    pub fn new(d: usize, p: Vec<f64>) -> Result<Self> {
        if d < 2 {
            return Err(Error::BadDimension {
                d,
                reason: "Bell-diagonal weights need d ≥ 2".into(),
            });
        }
        if p.len() != d * d {
            return Err(Error::DimensionMismatch(format!(
                "{} weights for d² = {}",
                p.len(),
                d * d
            )));
        }
        validate_weights(&p, "Bell weights")?;
        Ok(BellWeights { d, p })
    }

    /// Uniform weights `p_{mn} = 1/d²`.
    pub fn uniform(d: usize) -> Result<Self> {
        Self::new(d, vec![1.0 / (d * d) as f64; d * d])
    }

    pub fn d(&self) -> usize {
        self.d
    }

    #[inline]
    pub fn get(&self, m: usize, n: usize) -> f64 {
        self.p[m * self.d + n]
    }
}

/// Bell-diagonal state `Σ_{mn} p_{mn} (1 ⊗ U_{mn}) P⁺ (1 ⊗ U_{mn})†`.
pub fn bell_diagonal(w: &BellWeights) -> Result<DensityMatrix> {
    let d = w.d;
    let plus = max_entangled(d)?;
    let mut acc = BipartiteOperator::zeros(d, d);
    let id = ComplexMatrix::identity(d);
    for m in 0..d {
        for n in 0..d {
            let p = w.get(m, n);
            if p == 0.0 {
                continue;
            }
            let u = weyl_unitary(d, m, n)?;
            let conj = ComplexMatrix::kron(&id, &u);
            let term = conj.mul(plus.matrix()).mul(&conj.adjoint());
            acc = acc.add(&BipartiteOperator::new(d, d, term)?.scale_re(p));
        }
    }
    DensityMatrix::new(acc, &Tolerances::default())
}

/// Rank-`d` projector `Π_n = Σ_i e_ii ⊗ (Sⁿ e_ii Sⁿ†)` onto the cyclic
/// subspace spanned by `e_i ⊗ e_{i+n mod d}`.
pub fn sigma_projector(d: usize, n: usize) -> BipartiteOperator {
    BipartiteOperator::from_fn(d, d, |i, a, j, b| {
        if i == j && a == b && a == (i + n) % d {
            C64::new(1.0, 0.0)
        } else {
            C64::new(0.0, 0.0)
        }
    })
}

/// Cyclic block data `a^(0..d-1)` defining a circulant state
/// `ϑ = Σ_α Σ_ij a^(α)_ij · e_ij ⊗ (S^α e_ij S^α†)`.
#[derive(Clone, Debug)]
pub struct CirculantSpec {
    d: usize,
    blocks: Vec<ComplexMatrix>,
}

impl CirculantSpec {
    /// Validate: `d` blocks, each `d×d` PSD, traces summing to 1.
    pub fn new(d: usize, blocks: Vec<ComplexMatrix>) -> Result<Self> {
        if d < 2 {
            return Err(Error::BadDimension {
                d,
                reason: "circulant states need d ≥ 2".into(),
            });
        }
        if blocks.len() != d {
            return Err(Error::DimensionMismatch(format!(
                "{} blocks for dimension {d}",
                blocks.len()
            )));
        }
        let mut trace_sum = 0.0;
        for b in &blocks {
            if b.rows() != d || b.cols() != d {
                return Err(Error::DimensionMismatch(format!(
                    "block is {}x{}, expected {d}x{d}",
                    b.rows(),
                    b.cols()
                )));
            }
            let (ok, min_eig) = is_psd(b, PSD_TOL)?;
            if !ok {
                return Err(Error::NotPsd {
                    min_eig,
                    tol: PSD_TOL,
                });
            }
            trace_sum += b.trace().re;
        }
        if (trace_sum - 1.0).abs() > PROB_TOL {
            return Err(Error::BadTrace {
                trace: trace_sum,
                expected: 1.0,
                tol: PROB_TOL,
            });
        }
        Ok(CirculantSpec { d, blocks })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn blocks(&self) -> &[ComplexMatrix] {
        &self.blocks
    }

    /// Assemble the circulant state: block `α` lives on the span of
    /// `e_i ⊗ e_{i+α mod d}`.
    pub fn state(&self) -> Result<DensityMatrix> {
        let d = self.d;
        let mut op = BipartiteOperator::zeros(d, d);
        for (alpha, a) in self.blocks.iter().enumerate() {
            for i in 0..d {
                for j in 0..d {
                    op.set2(i, (i + alpha) % d, j, (j + alpha) % d, a.get(i, j));
                }
            }
        }
        DensityMatrix::new(op, &Tolerances::default())
    }

    /// Blocks of the partial transpose:
    /// `ã^(α) = Σ_β a^(α+β mod d) ∘ (Π S^β)` with `Π_ij = δ_{i,π(j)}`,
    /// `π(0) = 0`, `π(i) = d − i` and `∘` the entrywise product.
    pub fn pt_blocks(&self) -> Vec<ComplexMatrix> {
        let d = self.d;
        // Mask for β: (Π S^β)_{ij} = δ_{i, π(j+β)}.
        let mask = |beta: usize| {
            ComplexMatrix::from_fn(d, d, |i, j| {
                if i == (d - (j + beta) % d) % d {
                    C64::new(1.0, 0.0)
                } else {
                    C64::new(0.0, 0.0)
                }
            })
        };
        (0..d)
            .map(|alpha| {
                let mut acc = ComplexMatrix::zeros(d, d);
                for beta in 0..d {
                    let term = self.blocks[(alpha + beta) % d].hadamard(&mask(beta));
                    acc = acc.add(&term);
                }
                acc
            })
            .collect()
    }

    /// Assemble the partial transpose from its blocks: block `α` of the
    /// transposed state lives on the span of `e_i ⊗ e_{π(i)+α mod d}`.
    pub fn pt_state(&self) -> BipartiteOperator {
        let d = self.d;
        let pi = |i: usize| (d - i % d) % d;
        let mut op = BipartiteOperator::zeros(d, d);
        for (alpha, a) in self.pt_blocks().iter().enumerate() {
            for i in 0..d {
                for j in 0..d {
                    op.set2(i, (pi(i) + alpha) % d, j, (pi(j) + alpha) % d, a.get(i, j));
                }
            }
        }
        op
    }

    /// PPT check through the blocks: all `ã^(α)` PSD. Returns
    /// `(is_ppt, smallest block eigenvalue)`.
    pub fn is_ppt(&self) -> Result<(bool, f64)> {
        let mut min_eig = f64::INFINITY;
        for b in self.pt_blocks() {
            let (_, m) = is_psd(&b, PSD_TOL)?;
            min_eig = min_eig.min(m);
        }
        Ok((min_eig >= -PSD_TOL, min_eig))
    }
}

/// Fourier transform of Bell weights into circulant blocks:
/// `a^(n)_kl = (1/d) Σ_m p_{mn} λ^{m(k−l)}`.
///
/// The resulting spec assembles to exactly [`bell_diagonal`] of the same
/// weights.
pub fn bell_blocks_fourier(w: &BellWeights) -> Result<CirculantSpec> {
    let d = w.d();
    let blocks: Vec<ComplexMatrix> = (0..d)
        .map(|n| {
            ComplexMatrix::from_fn(d, d, |k, l| {
                (0..d)
                    .map(|m| {
                        phase(d, (m as i64) * (k as i64 - l as i64)).scale(w.get(m, n) / d as f64)
                    })
                    .sum()
            })
        })
        .collect();
    CirculantSpec::new(d, blocks)
}

/// Highest admissible parameter of [`horodecki_family`]: `(d−1)² + 1`.
pub fn horodecki_param_max(d: usize) -> f64 {
    ((d - 1) * (d - 1) + 1) as f64
}

/// One-parameter circulant family on `C^d ⊗ C^d` (`d ≥ 3`):
///
/// `θ(α) = λ_d P⁺ + Σ_{i=1}^{d−1} λ_i (Π_i / d)` with
/// `λ_1 = α/ℓ`, `λ_{d−1} = ((d−1)² + 1 − α)/ℓ`, all other `λ` equal to
/// `(d−1)/ℓ`, and `ℓ = (d−1)(2d−3) + 1`. The projector terms enter
/// normalised as `Π_i/d` so the mixture has unit trace. Domain:
/// `0 ≤ α ≤ (d−1)² + 1`.
pub fn horodecki_family(d: usize, alpha: f64) -> Result<DensityMatrix> {
    if d < 3 {
        return Err(Error::BadDimension {
            d,
            reason: "family is defined for d ≥ 3".into(),
        });
    }
    let hi = horodecki_param_max(d);
    if !alpha.is_finite() || alpha < 0.0 || alpha > hi {
        return Err(Error::OutOfDomain {
            family: "horodecki",
            value: alpha,
            domain: format!("[0, {hi}]"),
        });
    }
    let ell = ((d - 1) * (2 * d - 3) + 1) as f64;
    let lam = |i: usize| -> f64 {
        if i == 1 {
            alpha / ell
        } else if i == d - 1 {
            (hi - alpha) / ell
        } else {
            (d - 1) as f64 / ell
        }
    };
    let mut acc = max_entangled(d)?
        .op()
        .scale_re((d - 1) as f64 / ell);
    for i in 1..d {
        acc = acc.add(&sigma_projector(d, i).scale_re(lam(i) / d as f64));
    }
    DensityMatrix::new(acc, &Tolerances::default())
}

/// One-parameter Bell-type family on two qutrits (`ε > 0`):
///
/// `θ(ε) = (P⁺ + ε·Π₁/3 + ε⁻¹·Π₂/3) / Λ` with `Λ = 1 + ε + ε⁻¹`.
/// Spectrum `{1/Λ, ε/(3Λ) ×3, ε⁻¹/(3Λ) ×3, 0 ×2}`; as ε → 0 the state tends
/// to the perfectly correlated classical state `Π₂/3`.
pub fn bell_family_eps(eps: f64) -> Result<DensityMatrix> {
    if !eps.is_finite() || eps <= 0.0 {
        return Err(Error::OutOfDomain {
            family: "bell-eps",
            value: eps,
            domain: "(0, ∞)".into(),
        });
    }
    let lambda = 1.0 + eps + 1.0 / eps;
    let acc = max_entangled(3)?
        .op()
        .scale_re(1.0 / lambda)
        .add(&sigma_projector(3, 1).scale_re(eps / (3.0 * lambda)))
        .add(&sigma_projector(3, 2).scale_re(1.0 / (eps * 3.0 * lambda)));
    DensityMatrix::new(acc, &Tolerances::default())
}
