//! Correlation analysis for bipartite quantum states on small dimensions.
//!
//! The crate provides dense complex-Hermitian linear algebra sized for
//! product dimensions up to 16, entropy and correlation measures in natural
//! logarithms, the duality between bipartite states, linear maps, and
//! normalized conditional operators, projective-measurement correlation
//! quantities (classical correlation, quantum discord), two one-parameter
//! state families with known separability structure, and deterministic
//! parameter sweeps with CSV output.
//!
//! Conventions, fixed everywhere:
//!
//! * a bipartite operator on `H ⊗ K` is stored dense and row-major over the
//!   flat index `(i, α) ↦ i·d_K + α` (first factor slow);
//! * all entropies use natural logarithms, with `0·ln 0 = 0`;
//! * `Side::H` is the first factor, `Side::K` the second;
//! * validated states (`DensityMatrix`) are Hermitian, positive
//!   semidefinite, and unit trace within [`Tolerances`].

pub mod bipartite;
pub mod classical;
pub mod correlations;
pub mod discord;
pub mod error;
pub mod io;
pub mod maps;
pub mod matrix;
pub mod states;
pub mod sweep;
pub mod tol;

pub use bipartite::{BipartiteOperator, Side};
pub use classical::{
    JointDistribution, JointEntropies, StochasticChannel, channel_from_joint, joint_entropies,
    shannon_entropy,
};
pub use correlations::{
    AnalyticFamily, CorrelationReport, DOrdering, FamilySpec, StateClass, analytic_d,
    classify_family, compare_d, conditional_entropy, d_correlation, default_marginal_tol, is_ppt,
    mutual_entropy, relative_entropy, von_neumann_entropy,
};
pub use discord::{
    DiscordEstimate, MeasurementBasis, OptimizerConfig, PostMeasurement, classical_correlation,
    conditional_entropy_given, discord, discord_detailed, measured_mutual, post_measurement,
    symmetric_discord,
};
pub use error::{Error, Result};
pub use maps::{
    EntanglementMap, Qcpo, decompose_map, is_ccp, is_cp, map_from_state, qcpo_from_state,
    recompose_map, state_from_map, state_from_qcpo,
};
pub use matrix::{C64, ComplexMatrix, HermitianEig, hermitian_eig, is_psd};
pub use states::{
    BellWeights, CirculantSpec, DensityMatrix, bell_blocks_fourier, bell_diagonal,
    bell_family_eps, horodecki_family, horodecki_param_max, max_entangled, pure_from_schmidt,
    separable_mixture, weyl_unitary,
};
pub use sweep::{SweepConfig, SweepRecord, family_state, grid_points, run_sweep, write_csv};
pub use tol::Tolerances;
