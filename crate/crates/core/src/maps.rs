//! Duality between bipartite operators, linear maps and normalized
//! conditional operators.
//!
//! A linear map `φ: M(K) → M(H)` is stored through its blocks
//! `φ(e_ij)`. The dictionary implemented here:
//!
//! * state → map: `φ(b) = Tr_K[(1 ⊗ b) θ]`, blockwise
//!   `φ(e_ij)[a][c] = θ[(a,j),(c,i)]`;
//! * map → state: `θ_φ = Σ_ij φ(e_ji) ⊗ e_ij` (the twisted assembly);
//! * the straight assembly `Σ_ij φ(e_ij) ⊗ e_ij` equals the partial
//!   transpose of the twisted one, so co-complete positivity of `φ` is
//!   positivity of `θ_φ` while complete positivity is positivity of the
//!   partial transpose;
//! * state ↔ normalized conditional operator:
//!   `π = (ρ^{-1/2} ⊗ 1) θ (ρ^{-1/2} ⊗ 1)` with `ρ = Tr_K θ`, which
//!   satisfies `π ≥ 0` and `Tr_K π = 1`, and reconstructs
//!   `θ = (ρ^{1/2} ⊗ 1) π (ρ^{1/2} ⊗ 1)`;
//! * map ↔ unital decomposition: `φ(b) = ρ^{1/2} varphi(bᵀ) ρ^{1/2}` with
//!   `varphi` unital, and completely positive whenever the source is a state.
//!
//! These conventions are interlocking; the round-trip tests below pin them.

use crate::bipartite::{BipartiteOperator, Side};
use crate::error::{Error, Result};
use crate::matrix::{
    C64, ComplexMatrix, hermitian_eig, hermitian_inv_sqrt, hermitian_sqrt, is_psd,
};
use crate::states::DensityMatrix;
use crate::tol::{FAITHFUL_TOL, HERM_TOL, PROB_TOL, PSD_TOL, Tolerances};

/// Linear map `M(K) → M(H)` stored through its values on matrix units.
#[derive(Clone, Debug)]
pub struct EntanglementMap {
    d_h: usize,
    d_k: usize,
    /// `blocks[i·d_k + j] = φ(e_ij)`, each `d_h × d_h`.
    blocks: Vec<ComplexMatrix>,
}

impl EntanglementMap {
    /// Wrap blocks; `blocks[i·d_k + j]` must hold `φ(e_ij)` of shape `d_h × d_h`.
    pub fn new(d_h: usize, d_k: usize, blocks: Vec<ComplexMatrix>) -> Result<Self> {
        if blocks.len() != d_k * d_k {
            return Err(Error::DimensionMismatch(format!(
                "{} blocks for input dimension {d_k}",
                blocks.len()
            )));
        }
        for b in &blocks {
            if b.rows() != d_h || b.cols() != d_h {
                return Err(Error::DimensionMismatch(format!(
                    "block is {}x{}, expected {d_h}x{d_h}",
                    b.rows(),
                    b.cols()
                )));
            }
        }
        Ok(EntanglementMap { d_h, d_k, blocks })
    }

    pub fn d_h(&self) -> usize {
        self.d_h
    }

    pub fn d_k(&self) -> usize {
        self.d_k
    }

    /// `φ(e_ij)`.
    pub fn block(&self, i: usize, j: usize) -> &ComplexMatrix {
        &self.blocks[i * self.d_k + j]
    }

    /// Apply the map: `φ(b) = Σ_ij b_ij φ(e_ij)`.
    pub fn apply(&self, b: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((b.rows(), b.cols()), (self.d_k, self.d_k));
        let mut out = ComplexMatrix::zeros(self.d_h, self.d_h);
        for i in 0..self.d_k {
            for j in 0..self.d_k {
                let w = b.get(i, j);
                if w == C64::new(0.0, 0.0) {
                    continue;
                }
                out = out.add(&self.block(i, j).scale(w));
            }
        }
        out
    }

    /// Apply the dual map `φ*: M(H) → M(K)`, defined by the pairing
    /// `Tr_H[a φ(b)] = Tr_K[φ*(a) b]`; entrywise `φ*(a)[α][γ] = Tr(a φ(e_γα))`.
    pub fn dual_apply(&self, a: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((a.rows(), a.cols()), (self.d_h, self.d_h));
        ComplexMatrix::from_fn(self.d_k, self.d_k, |alpha, gamma| {
            a.mul(self.block(gamma, alpha)).trace()
        })
    }

    /// `φ(1_K)` — the would-be H marginal.
    pub fn apply_identity(&self) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(self.d_h, self.d_h);
        for i in 0..self.d_k {
            out = out.add(self.block(i, i));
        }
        out
    }

    /// Trace normalization `Tr_H φ(1_K) = 1` within `tol`.
    pub fn is_trace_normalized(&self, tol: f64) -> bool {
        (self.apply_identity().trace().re - 1.0).abs() <= tol
            && self.apply_identity().trace().im.abs() <= tol
    }
}

/// Map from a bipartite operator: `φ(e_ij)[a][c] = θ[(a,j),(c,i)]`.
pub fn map_from_state(theta: &BipartiteOperator) -> EntanglementMap {
    let (d_h, d_k) = (theta.d_h(), theta.d_k());
    let blocks = (0..d_k * d_k)
        .map(|idx| {
            let (i, j) = (idx / d_k, idx % d_k);
            ComplexMatrix::from_fn(d_h, d_h, |a, c| theta.get2(a, j, c, i))
        })
        .collect();
    EntanglementMap { d_h, d_k, blocks }
}

/// Twisted assembly `θ_φ = Σ_ij φ(e_ji) ⊗ e_ij`; inverse of [`map_from_state`].
pub fn state_from_map(phi: &EntanglementMap) -> BipartiteOperator {
    let (d_h, d_k) = (phi.d_h, phi.d_k);
    BipartiteOperator::from_fn(d_h, d_k, |a, alpha, c, gamma| {
        phi.block(gamma, alpha).get(a, c)
    })
}

/// Straight assembly `Σ_ij φ(e_ij) ⊗ e_ij` — the partial transpose of the
/// twisted one.
pub fn straight_assembly(phi: &EntanglementMap) -> BipartiteOperator {
    let (d_h, d_k) = (phi.d_h, phi.d_k);
    BipartiteOperator::from_fn(d_h, d_k, |a, alpha, c, gamma| {
        phi.block(alpha, gamma).get(a, c)
    })
}

/// Co-complete positivity: positivity of the twisted assembly.
/// Returns `(is_ccp, min eigenvalue)`.
pub fn is_ccp(phi: &EntanglementMap) -> Result<(bool, f64)> {
    is_psd(state_from_map(phi).matrix(), PSD_TOL)
}

/// Complete positivity: positivity of the straight assembly, equivalently of
/// the partial transpose of the twisted one. Returns `(is_cp, min eigenvalue)`.
pub fn is_cp(phi: &EntanglementMap) -> Result<(bool, f64)> {
    is_psd(straight_assembly(phi).matrix(), PSD_TOL)
}

/// Normalized conditional operator: `π ≥ 0` with `Tr_K π = 1_H`.
#[derive(Clone, Debug)]
pub struct Qcpo {
    op: BipartiteOperator,
}

impl Qcpo {
    /// Validate both defining conditions.
    pub fn new(op: BipartiteOperator, tol: f64) -> Result<Self> {
        let (ok, min_eig) = is_psd(op.matrix(), tol)?;
        if !ok {
            return Err(Error::NotPsd { min_eig, tol });
        }
        let partial = op.partial_trace(Side::K);
        let id = ComplexMatrix::identity(op.d_h());
        let dev = partial.max_abs_diff(&id);
        if dev > PROB_TOL.max(tol) {
            return Err(Error::BadTrace {
                trace: partial.trace().re / op.d_h() as f64,
                expected: 1.0,
                tol: PROB_TOL.max(tol),
            });
        }
        Ok(Qcpo { op })
    }

    pub fn op(&self) -> &BipartiteOperator {
        &self.op
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        self.op.matrix()
    }
}

/// Normalize a state with faithful H marginal into its conditional operator:
/// `π = (ρ^{-1/2} ⊗ 1) θ (ρ^{-1/2} ⊗ 1)`.
pub fn qcpo_from_state(theta: &DensityMatrix) -> Result<Qcpo> {
    let rho = theta.marginal(Side::H);
    let root_inv = hermitian_inv_sqrt(&rho, FAITHFUL_TOL)?;
    let conj = root_inv.kron(&ComplexMatrix::identity(theta.dims().1));
    let pi = conj.mul(theta.matrix()).mul(&conj);
    Qcpo::new(
        BipartiteOperator::new(theta.dims().0, theta.dims().1, pi)?,
        PSD_TOL,
    )
}

/// Rebuild the state from a conditional operator and the marginal it was
/// normalized by: `θ = (ρ^{1/2} ⊗ 1) π (ρ^{1/2} ⊗ 1)`.
pub fn state_from_qcpo(pi: &Qcpo, rho: &ComplexMatrix) -> Result<DensityMatrix> {
    if rho.rows() != pi.op.d_h() {
        return Err(Error::DimensionMismatch(format!(
            "marginal is {}x{}, conditional operator has d_h = {}",
            rho.rows(),
            rho.cols(),
            pi.op.d_h()
        )));
    }
    let root = hermitian_sqrt(rho)?;
    let conj = root.kron(&ComplexMatrix::identity(pi.op.d_k()));
    let theta = conj.mul(pi.matrix()).mul(&conj);
    DensityMatrix::from_matrix(pi.op.d_h(), pi.op.d_k(), theta, &Tolerances::default())
}

/// Factor a trace-normalized map with faithful `ρ = φ(1_K)` into that
/// marginal and a unital map: `varphi(b) = ρ^{-1/2} φ(bᵀ) ρ^{-1/2}`, so that
/// `φ(b) = ρ^{1/2} varphi(bᵀ) ρ^{1/2}`.
///
/// The input transpose makes the factor completely positive whenever the
/// source operator of `φ` is a state: the straight assembly of `varphi`
/// equals the state's normalized conditional operator.
pub fn decompose_map(phi: &EntanglementMap) -> Result<(ComplexMatrix, EntanglementMap)> {
    let rho = phi.apply_identity();
    let root_inv = hermitian_inv_sqrt(&rho, FAITHFUL_TOL)?;
    let blocks = (0..phi.d_k * phi.d_k)
        .map(|idx| {
            let (k, l) = (idx / phi.d_k, idx % phi.d_k);
            root_inv.mul(phi.block(l, k)).mul(&root_inv)
        })
        .collect();
    Ok((
        rho,
        EntanglementMap {
            d_h: phi.d_h,
            d_k: phi.d_k,
            blocks,
        },
    ))
}

/// Inverse of [`decompose_map`]: `φ(e_kl) = ρ^{1/2} varphi(e_lk) ρ^{1/2}`.
pub fn recompose_map(rho: &ComplexMatrix, varphi: &EntanglementMap) -> Result<EntanglementMap> {
    if rho.rows() != varphi.d_h {
        return Err(Error::DimensionMismatch(format!(
            "marginal is {}x{}, map has d_h = {}",
            rho.rows(),
            rho.cols(),
            varphi.d_h
        )));
    }
    let root = hermitian_sqrt(rho)?;
    let blocks = (0..varphi.d_k * varphi.d_k)
        .map(|idx| {
            let (k, l) = (idx / varphi.d_k, idx % varphi.d_k);
            root.mul(varphi.block(l, k)).mul(&root)
        })
        .collect();
    Ok(EntanglementMap {
        d_h: varphi.d_h,
        d_k: varphi.d_k,
        blocks,
    })
}

/// Whether `varphi(1_K) = 1_H` within `tol`.
pub fn is_unital(phi: &EntanglementMap, tol: f64) -> bool {
    phi.apply_identity()
        .max_abs_diff(&ComplexMatrix::identity(phi.d_h)) <= tol
}

/// Trace pairing `Tr[(a ⊗ b) θ]` — the scalar both sides of the duality
/// reproduce.
pub fn pairing(theta: &BipartiteOperator, a: &ComplexMatrix, b: &ComplexMatrix) -> C64 {
    let ab = a.kron(b);
    ab.mul(theta.matrix()).trace()
}

/// Smallest marginal eigenvalue — the faithfulness margin used by the
/// normalizations above.
pub fn faithfulness_margin(theta: &DensityMatrix) -> Result<f64> {
    let rho = theta.marginal(Side::H);
    Ok(hermitian_eig(&rho, HERM_TOL)?.values[0])
}
