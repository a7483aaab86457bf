//! Default numerical tolerances.
//!
//! Every check that compares floating-point results against an invariant goes
//! through one of these constants (or a [`Tolerances`] bundle built from
//! them), so callers can tighten or relax validation in one place.

/// Maximum allowed deviation `|m[i][j] - conj(m[j][i])|` for Hermiticity checks.
pub const HERM_TOL: f64 = 1e-10;

/// Target off-diagonal residual for the Jacobi eigensolver, relative to scale.
pub const EIG_TOL: f64 = 1e-9;

/// Slack for probability vectors and unit traces.
pub const PROB_TOL: f64 = 1e-9;

/// Eigenvalues above `-PSD_TOL` count as nonnegative; entropy clips them to 0.
pub const PSD_TOL: f64 = 1e-10;

/// Minimum eigenvalue a marginal must have before its inverse square root is taken.
pub const FAITHFUL_TOL: f64 = 1e-8;

/// Measurement outcomes with probability at or below this floor are dropped.
pub const P_FLOOR: f64 = 1e-12;

/// Eigenvalue threshold separating support from kernel in relative entropy.
pub const SUPPORT_TOL: f64 = 1e-10;

/// Band inside which two D-correlation values count as equal.
pub const EQ_BAND: f64 = 1e-9;

/// Maximum entrywise deviation for the marginal-equality gate in comparisons.
pub const MARGINAL_TOL: f64 = 1e-8;

/// Validation tolerances for density matrices.
#[derive(Clone, Copy, Debug)]
pub struct Tolerances {
    /// Hermiticity slack.
    pub herm: f64,
    /// Positive-semidefiniteness slack.
    pub psd: f64,
    /// Unit-trace slack.
    pub trace: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            herm: HERM_TOL,
            psd: PSD_TOL,
            trace: PROB_TOL,
        }
    }
}

impl Tolerances {
    /// Same value for all three checks; used by the CLI `--tol` override.
    pub fn uniform(tol: f64) -> Self {
        Tolerances {
            herm: tol,
            psd: tol,
            trace: tol,
        }
    }
}
