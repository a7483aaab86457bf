//! Entropy-based correlation measures for bipartite states.
//!
//! All entropies are von Neumann entropies in nats. The headline quantity is
//! the D-correlation `D(θ) = (S(ρ) + S(σ))/2 − S(θ)` (marginal average minus
//! joint entropy), which is positive on strongly correlated states and
//! bounded above by `ln d`; PPT states always have `D ≤ 0`.

use crate::bipartite::Side;
use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, hermitian_eig};
use crate::states::{DensityMatrix, horodecki_param_max};
use crate::tol::{EQ_BAND, HERM_TOL, MARGINAL_TOL, PROB_TOL, PSD_TOL, SUPPORT_TOL};

/// `w·ln v` with the convention that a zero weight contributes nothing.
fn w_ln(w: f64, v: f64) -> f64 {
    if w <= 0.0 { 0.0 } else { w * v.ln() }
}

/// Entropy of a clipped eigenvalue list; assumes validation already happened.
pub(crate) fn entropy_from_eigenvalues(values: &[f64]) -> f64 {
    -values.iter().map(|&x| w_ln(x.max(0.0), x)).sum::<f64>()
}

/// Von Neumann entropy `-Tr(m ln m)` of a density matrix, in nats.
///
/// Eigenvalues in `[-psd_tol, 0)` are clipped to zero; anything lower is an
/// error, as is a trace away from one.
pub fn von_neumann_entropy(m: &ComplexMatrix) -> Result<f64> {
    let eig = hermitian_eig(m, HERM_TOL)?;
    let min_eig = eig.values[0];
    if min_eig < -PSD_TOL {
        return Err(Error::NotPsd {
            min_eig,
            tol: PSD_TOL,
        });
    }
    let trace: f64 = eig.values.iter().sum();
    if (trace - 1.0).abs() > PROB_TOL {
        return Err(Error::BadTrace {
            trace,
            expected: 1.0,
            tol: PROB_TOL,
        });
    }
    Ok(entropy_from_eigenvalues(&eig.values))
}

/// Umegaki relative entropy `S(a ‖ b) = Tr a(ln a − ln b)`, in nats.
///
/// Returns `+∞` when the support of `a` leaks outside the support of `b`
/// (weight above the support threshold on the kernel of `b`).
pub fn relative_entropy(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<f64> {
    if a.rows() != b.rows() || a.cols() != b.cols() {
        return Err(Error::DimensionMismatch(format!(
            "relative entropy between {}x{} and {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    let ea = hermitian_eig(a, HERM_TOL)?;
    let eb = hermitian_eig(b, HERM_TOL)?;
    for (what, e) in [("first", &ea), ("second", &eb)] {
        if e.values[0] < -PSD_TOL {
            return Err(Error::NotPsd {
                min_eig: e.values[0],
                tol: PSD_TOL,
            });
        }
        let tr: f64 = e.values.iter().sum();
        if (tr - 1.0).abs() > PROB_TOL {
            return Err(Error::BadTrace {
                trace: tr,
                expected: 1.0,
                tol: PROB_TOL,
            });
        }
        let _ = what;
    }

    let n = a.rows();
    // Overlaps |⟨v_i|w_j⟩|².
    let mut overlap = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            let mut dot = crate::matrix::C64::new(0.0, 0.0);
            for k in 0..n {
                dot += ea.vectors.get(k, i).conj() * eb.vectors.get(k, j);
            }
            overlap[i * n + j] = dot.norm_sqr();
        }
    }

    let mut value = 0.0;
    for i in 0..n {
        let li = ea.values[i].max(0.0);
        if li <= 0.0 {
            continue;
        }
        value += w_ln(li, li);
        if li > SUPPORT_TOL {
            let outside: f64 = (0..n)
                .filter(|&j| eb.values[j] <= SUPPORT_TOL)
                .map(|j| overlap[i * n + j])
                .sum();
            if outside > SUPPORT_TOL {
                return Ok(f64::INFINITY);
            }
        }
        for j in 0..n {
            let mu = eb.values[j];
            if mu > SUPPORT_TOL {
                value -= li * overlap[i * n + j] * mu.ln();
            }
        }
    }
    Ok(value)
}

/// Mutual entropy `I(θ) = S(ρ) + S(σ) − S(θ)` of a bipartite state.
pub fn mutual_entropy(theta: &DensityMatrix) -> Result<f64> {
    let s_theta = von_neumann_entropy(theta.matrix())?;
    let s_h = von_neumann_entropy(&theta.marginal(Side::H))?;
    let s_k = von_neumann_entropy(&theta.marginal(Side::K))?;
    Ok(s_h + s_k - s_theta)
}

/// Conditional entropy `S(θ) − S(marginal of the conditioning side)`.
pub fn conditional_entropy(theta: &DensityMatrix, conditioning: Side) -> Result<f64> {
    let s_theta = von_neumann_entropy(theta.matrix())?;
    let s_cond = von_neumann_entropy(&theta.marginal(conditioning))?;
    Ok(s_theta - s_cond)
}

/// D-correlation `D(θ) = (S(ρ) + S(σ))/2 − S(θ)`.
pub fn d_correlation(theta: &DensityMatrix) -> Result<f64> {
    let s_theta = von_neumann_entropy(theta.matrix())?;
    let s_h = von_neumann_entropy(&theta.marginal(Side::H))?;
    let s_k = von_neumann_entropy(&theta.marginal(Side::K))?;
    Ok(0.5 * (s_h + s_k) - s_theta)
}

/// PPT check: `(min PT eigenvalue ≥ -psd_tol, that eigenvalue)`.
pub fn is_ppt(theta: &DensityMatrix) -> Result<(bool, f64)> {
    let pt = theta.op().partial_transpose(Side::K);
    let eig = hermitian_eig(pt.matrix(), HERM_TOL)?;
    let margin = eig.values[0];
    Ok((margin >= -PSD_TOL, margin))
}

/// Every entropy quantity of a state in one pass.
#[derive(Clone, Copy, Debug)]
pub struct CorrelationReport {
    /// Joint entropy `S(θ)`.
    pub s_theta: f64,
    /// Entropy of the H-side marginal.
    pub s_rho: f64,
    /// Entropy of the K-side marginal.
    pub s_sigma: f64,
    /// Mutual entropy `I = S(ρ) + S(σ) − S(θ)`.
    pub mutual: f64,
    /// `S(θ) − S(ρ)`.
    pub cond_given_h: f64,
    /// `S(θ) − S(σ)`.
    pub cond_given_k: f64,
    /// `D = (S(ρ) + S(σ))/2 − S(θ)`.
    pub d_corr: f64,
    /// Whether the partial transpose stays PSD.
    pub ppt: bool,
    /// Minimum eigenvalue of the partial transpose.
    pub ppt_margin: f64,
}

impl CorrelationReport {
    pub fn compute(theta: &DensityMatrix) -> Result<Self> {
        let s_theta = von_neumann_entropy(theta.matrix())?;
        let s_rho = von_neumann_entropy(&theta.marginal(Side::H))?;
        let s_sigma = von_neumann_entropy(&theta.marginal(Side::K))?;
        let (ppt, ppt_margin) = is_ppt(theta)?;
        Ok(CorrelationReport {
            s_theta,
            s_rho,
            s_sigma,
            mutual: s_rho + s_sigma - s_theta,
            cond_given_h: s_theta - s_rho,
            cond_given_k: s_theta - s_sigma,
            d_corr: 0.5 * (s_rho + s_sigma) - s_theta,
            ppt,
            ppt_margin,
        })
    }
}

/// Families with a closed-form D-correlation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AnalyticFamily {
    /// [`horodecki_family`](crate::states::horodecki_family) at `d = 3`.
    Horodecki3,
    /// [`bell_family_eps`](crate::states::bell_family_eps).
    BellEps,
}

/// Closed-form D-correlation of a family state.
///
/// For the qutrit circulant family:
/// `D(α) = ln 3 + (2/7)ln(2/7) + (α/7)ln(α/21) + ((5−α)/7)ln((5−α)/21)`.
/// For the Bell-type family with `Λ = 1 + ε + ε⁻¹`:
/// `D(ε) = (1/Λ)(ln(1/Λ) + ε⁻¹ ln(ε⁻¹/Λ) + ε ln(ε/Λ) + ln 3)`.
pub fn analytic_d(family: AnalyticFamily, param: f64) -> Result<f64> {
    match family {
        AnalyticFamily::Horodecki3 => {
            if !param.is_finite() || !(0.0..=5.0).contains(&param) {
                return Err(Error::OutOfDomain {
                    family: "horodecki",
                    value: param,
                    domain: "[0, 5]".into(),
                });
            }
            let a = param;
            Ok(3.0_f64.ln()
                + w_ln(2.0 / 7.0, 2.0 / 7.0)
                + w_ln(a / 7.0, a / 21.0)
                + w_ln((5.0 - a) / 7.0, (5.0 - a) / 21.0))
        }
        AnalyticFamily::BellEps => {
            if !param.is_finite() || param <= 0.0 {
                return Err(Error::OutOfDomain {
                    family: "bell-eps",
                    value: param,
                    domain: "(0, ∞)".into(),
                });
            }
            let eps = param;
            let lam = 1.0 + eps + 1.0 / eps;
            Ok(((1.0 / lam).ln()
                + (1.0 / eps) * (1.0 / (eps * lam)).ln()
                + eps * (eps / lam).ln()
                + 3.0_f64.ln())
                / lam)
        }
    }
}

/// A parameterised family point, as used by classification and sweeps.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilySpec {
    /// Circulant family on `C^d ⊗ C^d`, `d ≥ 3`.
    Horodecki { d: usize },
    /// Bell-type qutrit family over `ε > 0`.
    BellEps,
}

/// Separability class of a family state.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StateClass {
    Sep,
    PptEnt,
    Npt,
}

impl StateClass {
    pub fn as_str(self) -> &'static str {
        match self {
            StateClass::Sep => "SEP",
            StateClass::PptEnt => "PPT_ENT",
            StateClass::Npt => "NPT",
        }
    }
}

/// Separability classification of a family state, from the closed-form
/// boundaries: the circulant family is PPT iff `α ∈ [1, (d−1)²]` and
/// separable iff `α ∈ [d−1, (d−1)(d−2)+1]`; the Bell-type family is PPT for
/// every `ε > 0` and separable only at `ε = 1`.
pub fn classify_family(family: FamilySpec, param: f64) -> Result<StateClass> {
    match family {
        FamilySpec::Horodecki { d } => {
            if d < 3 {
                return Err(Error::BadDimension {
                    d,
                    reason: "family is defined for d ≥ 3".into(),
                });
            }
            let hi = horodecki_param_max(d);
            if !param.is_finite() || param < 0.0 || param > hi {
                return Err(Error::OutOfDomain {
                    family: "horodecki",
                    value: param,
                    domain: format!("[0, {hi}]"),
                });
            }
            let dm1 = (d - 1) as f64;
            let sep_lo = dm1;
            let sep_hi = dm1 * (d as f64 - 2.0) + 1.0;
            let ppt_lo = 1.0;
            let ppt_hi = dm1 * dm1;
            if param >= sep_lo - EQ_BAND && param <= sep_hi + EQ_BAND {
                Ok(StateClass::Sep)
            } else if param >= ppt_lo - EQ_BAND && param <= ppt_hi + EQ_BAND {
                Ok(StateClass::PptEnt)
            } else {
                Ok(StateClass::Npt)
            }
        }
        FamilySpec::BellEps => {
            if !param.is_finite() || param <= 0.0 {
                return Err(Error::OutOfDomain {
                    family: "bell-eps",
                    value: param,
                    domain: "(0, ∞)".into(),
                });
            }
            if (param - 1.0).abs() <= EQ_BAND {
                Ok(StateClass::Sep)
            } else {
                Ok(StateClass::PptEnt)
            }
        }
    }
}

/// Which of two states carries more D-correlation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DOrdering {
    AStronger,
    BStronger,
    Equal,
}

/// Compare D-correlations of two states sharing both marginals.
///
/// Errors with [`Error::MarginalMismatch`] if either pair of marginals
/// differs entrywise by more than `marg_tol`; the comparison is only
/// meaningful on states of the same pair of marginals.
pub fn compare_d(
    a: &DensityMatrix,
    b: &DensityMatrix,
    marg_tol: f64,
) -> Result<(DOrdering, f64, f64)> {
    if a.dims() != b.dims() {
        return Err(Error::DimensionMismatch(format!(
            "comparing states of dims {:?} and {:?}",
            a.dims(),
            b.dims()
        )));
    }
    for side in [Side::H, Side::K] {
        let dev = a.marginal(side).max_abs_diff(&b.marginal(side));
        if dev > marg_tol {
            return Err(Error::MarginalMismatch {
                deviation: dev,
                tol: marg_tol,
            });
        }
    }
    let da = d_correlation(a)?;
    let db = d_correlation(b)?;
    let ord = if (da - db).abs() <= EQ_BAND {
        DOrdering::Equal
    } else if da > db {
        DOrdering::AStronger
    } else {
        DOrdering::BStronger
    };
    Ok((ord, da, db))
}

/// Default marginal tolerance for [`compare_d`].
pub fn default_marginal_tol() -> f64 {
    MARGINAL_TOL
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{
        bell_family_eps, horodecki_family, max_entangled, pure_from_schmidt, separable_mixture,
    };

    const TOL: f64 = 1e-12;

    #[test]
    fn entropy_of_maximally_mixed_is_ln_d() {
        for d in [2usize, 3, 5] {
            let m = ComplexMatrix::identity(d).scale_re(1.0 / d as f64);
            assert!((von_neumann_entropy(&m).unwrap() - (d as f64).ln()).abs() <= TOL);
        }
    }

    #[test]
    fn entropy_of_pure_state_is_zero() {
        let theta = max_entangled(3).unwrap();
        assert!(von_neumann_entropy(theta.matrix()).unwrap().abs() <= 1e-10);
    }

    #[test]
    fn entropy_rejects_invalid_density_matrices() {
        assert!(matches!(
            von_neumann_entropy(&ComplexMatrix::diag(&[1.25, -0.25])),
            Err(Error::NotPsd { .. })
        ));
        assert!(matches!(
            von_neumann_entropy(&ComplexMatrix::identity(2)),
            Err(Error::BadTrace { .. })
        ));
    }

    #[test]
    fn relative_entropy_to_maximally_mixed_is_ln_d_minus_entropy() {
        let theta = horodecki_family(3, 2.5).unwrap();
        let id9 = ComplexMatrix::identity(9).scale_re(1.0 / 9.0);
        let re = relative_entropy(theta.matrix(), &id9).unwrap();
        let s = von_neumann_entropy(theta.matrix()).unwrap();
        assert!((re - (9.0_f64.ln() - s)).abs() <= 1e-10);
    }

    #[test]
    fn relative_entropy_is_zero_on_equal_states_and_positive_otherwise() {
        let theta = bell_family_eps(2.0).unwrap();
        assert!(relative_entropy(theta.matrix(), theta.matrix()).unwrap().abs() <= 1e-10);
        let a = ComplexMatrix::diag(&[1.0, 0.0]);
        let b = ComplexMatrix::diag(&[0.5, 0.5]);
        let re = relative_entropy(&a, &b).unwrap();
        assert!((re - 2.0_f64.ln()).abs() <= 1e-10);
        assert!(re > 0.0);
    }

    #[test]
    fn relative_entropy_infinite_on_support_violation() {
        let a = ComplexMatrix::diag(&[1.0, 0.0]);
        let b = ComplexMatrix::diag(&[0.0, 1.0]);
        assert!(relative_entropy(&a, &b).unwrap().is_infinite());
    }

    #[test]
    fn mutual_entropy_examples() {
        // Product state → 0.
        let rho = ComplexMatrix::diag(&[0.5, 0.5]);
        let sigma = ComplexMatrix::diag(&[0.25, 0.75]);
        let theta = separable_mixture(&[1.0], &[(rho, sigma)]).unwrap();
        assert!(mutual_entropy(&theta).unwrap().abs() <= 1e-10);
        // Maximally entangled → 2 ln d.
        for d in [2usize, 3] {
            let theta = max_entangled(d).unwrap();
            assert!((mutual_entropy(&theta).unwrap() - 2.0 * (d as f64).ln()).abs() <= 1e-9);
        }
        // Bell family at ε = 1 → S(ρ)+S(σ)−S(θ) = 2 ln3 − (5/3) ln3 = (1/3) ln3.
        let theta = bell_family_eps(1.0).unwrap();
        assert!((mutual_entropy(&theta).unwrap() - 3.0_f64.ln() / 3.0).abs() <= 1e-9);
    }

    #[test]
    fn conditional_entropy_signs() {
        // Product state: conditioning is free.
        let rho = ComplexMatrix::diag(&[0.5, 0.5]);
        let sigma = ComplexMatrix::diag(&[0.25, 0.75]);
        let theta = separable_mixture(&[1.0], &[(rho, sigma.clone())]).unwrap();
        let s_sigma = von_neumann_entropy(&sigma).unwrap();
        assert!((conditional_entropy(&theta, Side::H).unwrap() - s_sigma).abs() <= 1e-10);
        // Pure entangled state: conditional entropy is negative.
        let theta = pure_from_schmidt(&[0.5, 0.3, 0.2]).unwrap();
        let s_marg = von_neumann_entropy(&theta.marginal(Side::H)).unwrap();
        assert!((conditional_entropy(&theta, Side::H).unwrap() + s_marg).abs() <= 1e-9);
    }

    #[test]
    fn d_correlation_frozen_family_values() {
        // Worked value: D(θ(2.5)) = ln3 + (2/7)ln(2/7) + 2·(2.5/7)·ln(2.5/21).
        let expected = 3.0_f64.ln()
            + (2.0 / 7.0) * (2.0_f64 / 7.0).ln()
            + 2.0 * (2.5 / 7.0) * (2.5_f64 / 21.0).ln();
        let theta = horodecki_family(3, 2.5).unwrap();
        let d = d_correlation(&theta).unwrap();
        assert!((d - expected).abs() <= 1e-10);
        assert!((d + 0.7795).abs() <= 5e-4);
        // Bell point: D(θ(1)) = −(2/3) ln3.
        let theta = bell_family_eps(1.0).unwrap();
        let d = d_correlation(&theta).unwrap();
        assert!((d + 2.0 / 3.0 * 3.0_f64.ln()).abs() <= 1e-10);
        // Maximally entangled: D = ln d.
        let theta = max_entangled(3).unwrap();
        assert!((d_correlation(&theta).unwrap() - 3.0_f64.ln()).abs() <= 1e-9);
    }

    #[test]
    fn analytic_d_matches_numeric_at_spot_points() {
        for alpha in [0.0, 1.0, 2.5, 3.1, 5.0] {
            let a = analytic_d(AnalyticFamily::Horodecki3, alpha).unwrap();
            let n = d_correlation(&horodecki_family(3, alpha).unwrap()).unwrap();
            assert!((a - n).abs() <= 1e-10, "alpha={alpha}: {a} vs {n}");
        }
        for eps in [0.1, 0.5, 1.0, 2.0, 10.0] {
            let a = analytic_d(AnalyticFamily::BellEps, eps).unwrap();
            let n = d_correlation(&bell_family_eps(eps).unwrap()).unwrap();
            assert!((a - n).abs() <= 1e-10, "eps={eps}: {a} vs {n}");
        }
    }

    #[test]
    fn ppt_examples() {
        let (ok, margin) = is_ppt(&max_entangled(2).unwrap()).unwrap();
        assert!(!ok);
        assert!((margin + 0.5).abs() <= 1e-10);
        let (ok, _) = is_ppt(&horodecki_family(3, 2.5).unwrap()).unwrap();
        assert!(ok);
        let (ok, _) = is_ppt(&horodecki_family(3, 0.5).unwrap()).unwrap();
        assert!(!ok);
        let (ok, _) = is_ppt(&horodecki_family(3, 4.5).unwrap()).unwrap();
        assert!(!ok);
    }

    #[test]
    fn report_fields_are_consistent() {
        let theta = bell_family_eps(2.0).unwrap();
        let r = CorrelationReport::compute(&theta).unwrap();
        assert!((r.mutual - (r.s_rho + r.s_sigma - r.s_theta)).abs() <= TOL);
        assert!((r.d_corr - (0.5 * (r.s_rho + r.s_sigma) - r.s_theta)).abs() <= TOL);
        assert!((r.cond_given_h - (r.s_theta - r.s_rho)).abs() <= TOL);
        assert!((r.cond_given_k - (r.s_theta - r.s_sigma)).abs() <= TOL);
        assert!(r.ppt);
    }

    #[test]
    fn classification_boundaries() {
        use StateClass::*;
        let f3 = FamilySpec::Horodecki { d: 3 };
        for (alpha, expected) in [
            (0.5, Npt),
            (1.0, PptEnt),
            (1.5, PptEnt),
            (2.0, Sep),
            (2.5, Sep),
            (3.0, Sep),
            (3.5, PptEnt),
            (4.0, PptEnt),
            (4.5, Npt),
        ] {
            assert_eq!(classify_family(f3, alpha).unwrap(), expected, "alpha={alpha}");
        }
        let f4 = FamilySpec::Horodecki { d: 4 };
        for (alpha, expected) in [
            (0.5, Npt),
            (1.0, PptEnt),
            (3.0, Sep),
            (7.0, Sep),
            (8.0, PptEnt),
            (9.0, PptEnt),
            (9.5, Npt),
        ] {
            assert_eq!(classify_family(f4, alpha).unwrap(), expected, "alpha={alpha}");
        }
        assert_eq!(classify_family(FamilySpec::BellEps, 1.0).unwrap(), Sep);
        assert_eq!(classify_family(FamilySpec::BellEps, 2.0).unwrap(), PptEnt);
        assert!(classify_family(f3, 5.5).is_err());
    }

    #[test]
    fn compare_prefers_the_larger_d_value() {
        let a = bell_family_eps(1.0).unwrap();
        let b = horodecki_family(3, 3.1).unwrap();
        let (ord, da, db) = compare_d(&a, &b, MARGINAL_TOL).unwrap();
        assert_eq!(ord, DOrdering::AStronger);
        assert!(da > db);
        let (ord, _, _) = compare_d(&b, &a, MARGINAL_TOL).unwrap();
        assert_eq!(ord, DOrdering::BStronger);
        let (ord, _, _) = compare_d(&a, &a, MARGINAL_TOL).unwrap();
        assert_eq!(ord, DOrdering::Equal);
    }

    #[test]
    fn compare_rejects_mismatched_marginals() {
        let a = horodecki_family(3, 2.5).unwrap();
        let b = pure_from_schmidt(&[0.5, 0.3, 0.2]).unwrap();
        assert!(matches!(
            compare_d(&a, &b, MARGINAL_TOL),
            Err(Error::MarginalMismatch { .. })
        ));
    }
}
