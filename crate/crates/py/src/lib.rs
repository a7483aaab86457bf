//! Python bindings for the correlation library: state constructors, the
//! entropy/correlation report, discord optimization, and parameter sweeps.
//!
//! Complex matrices cross the boundary as `list[list[tuple[float, float]]]`
//! (row-major, `(re, im)` pairs), matching the JSON state format.

use pyo3::exceptions::{PyIOError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use qcorr::bipartite::Side;
use qcorr::correlations::{AnalyticFamily, CorrelationReport, FamilySpec, analytic_d};
use qcorr::discord::OptimizerConfig;
use qcorr::error::Error;
use qcorr::matrix::{C64, ComplexMatrix};
use qcorr::states::DensityMatrix;
use qcorr::sweep::{SweepConfig, run_sweep};
use qcorr::tol::Tolerances;

fn to_py(err: Error) -> PyErr {
    match err {
        Error::Io(_) => PyIOError::new_err(err.to_string()),
        Error::NoConvergence { .. } => PyRuntimeError::new_err(err.to_string()),
        _ => PyValueError::new_err(err.to_string()),
    }
}

fn parse_side(side: &str) -> PyResult<Side> {
    match side {
        "H" | "h" => Ok(Side::H),
        "K" | "k" => Ok(Side::K),
        _ => Err(PyValueError::new_err(format!(
            "side must be \"H\" or \"K\", got {side:?}"
        ))),
    }
}

fn parse_family(family: &str, d: usize) -> PyResult<FamilySpec> {
    match family {
        "horodecki" => Ok(FamilySpec::Horodecki { d }),
        "bell-eps" => {
            if d != 3 {
                return Err(PyValueError::new_err(
                    "bell-eps family is defined on two qutrits (d = 3)",
                ));
            }
            Ok(FamilySpec::BellEps)
        }
        _ => Err(PyValueError::new_err(format!(
            "unknown family {family:?}; expected \"horodecki\" or \"bell-eps\""
        ))),
    }
}

fn optimizer_config(restarts: usize, seed: u64) -> OptimizerConfig {
    OptimizerConfig {
        restarts,
        seed,
        ..OptimizerConfig::default()
    }
}

fn matrix_to_rows(m: &ComplexMatrix) -> Vec<Vec<(f64, f64)>> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| (m.get(i, j).re, m.get(i, j).im)).collect())
        .collect()
}

fn rows_to_matrix(rows: &[Vec<(f64, f64)>]) -> PyResult<ComplexMatrix> {
    let n = rows.len();
    for row in rows {
        if row.len() != n {
            return Err(PyValueError::new_err("matrix rows must form a square"));
        }
    }
    Ok(ComplexMatrix::from_fn(n, n, |i, j| {
        C64::new(rows[i][j].0, rows[i][j].1)
    }))
}

/// Validated bipartite density matrix.
#[pyclass(name = "State", frozen)]
struct PyState(DensityMatrix);

#[pymethods]
impl PyState {
    /// Build a state from a row-major matrix of `(re, im)` pairs.
    #[new]
    fn new(d_h: usize, d_k: usize, matrix: Vec<Vec<(f64, f64)>>) -> PyResult<Self> {
        let m = rows_to_matrix(&matrix)?;
        DensityMatrix::from_matrix(d_h, d_k, m, &Tolerances::default())
            .map(PyState)
            .map_err(to_py)
    }

    #[getter]
    fn d_h(&self) -> usize {
        self.0.dims().0
    }

    #[getter]
    fn d_k(&self) -> usize {
        self.0.dims().1
    }

    /// Row-major matrix as `(re, im)` pairs.
    fn matrix(&self) -> Vec<Vec<(f64, f64)>> {
        matrix_to_rows(self.0.matrix())
    }

    /// Ascending eigenvalues.
    fn eigenvalues(&self) -> PyResult<Vec<f64>> {
        self.0.eigenvalues().map_err(to_py)
    }

    /// Reduced state on the named side ("H" or "K").
    fn marginal(&self, side: &str) -> PyResult<Vec<Vec<(f64, f64)>>> {
        Ok(matrix_to_rows(&self.0.marginal(parse_side(side)?)))
    }

    /// `(is_ppt, margin)`: smallest eigenvalue of the partial transpose.
    fn ppt(&self) -> PyResult<(bool, f64)> {
        qcorr::correlations::is_ppt(&self.0).map_err(to_py)
    }

    /// Full entropy/correlation report as a dict.
    fn analyze<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let report = CorrelationReport::compute(&self.0).map_err(to_py)?;
        let out = PyDict::new(py);
        out.set_item("d_h", self.0.dims().0)?;
        out.set_item("d_k", self.0.dims().1)?;
        out.set_item("S_theta", report.s_theta)?;
        out.set_item("S_rho", report.s_rho)?;
        out.set_item("S_sigma", report.s_sigma)?;
        out.set_item("I", report.mutual)?;
        out.set_item("cond_given_H", report.cond_given_h)?;
        out.set_item("cond_given_K", report.cond_given_k)?;
        out.set_item("D", report.d_corr)?;
        out.set_item("ppt", report.ppt)?;
        out.set_item("ppt_margin", report.ppt_margin)?;
        Ok(out)
    }

    /// Write the state to a JSON file.
    fn save(&self, path: &str) -> PyResult<()> {
        qcorr::io::save_state(path, &self.0).map_err(to_py)
    }

    fn __repr__(&self) -> String {
        let (d_h, d_k) = self.0.dims();
        format!("<State {d_h}x{d_k}>")
    }
}

/// Spectrum-family state on `d ⊗ d` at the given parameter.
#[pyfunction]
#[pyo3(signature = (alpha, d = 3))]
fn horodecki(alpha: f64, d: usize) -> PyResult<PyState> {
    qcorr::states::horodecki_family(d, alpha)
        .map(PyState)
        .map_err(to_py)
}

/// Ratio-family state on two qutrits at the given parameter.
#[pyfunction]
fn bell_eps(eps: f64) -> PyResult<PyState> {
    qcorr::states::bell_family_eps(eps).map(PyState).map_err(to_py)
}

/// Maximally entangled state on `d ⊗ d`.
#[pyfunction]
fn max_entangled(d: usize) -> PyResult<PyState> {
    qcorr::states::max_entangled(d).map(PyState).map_err(to_py)
}

/// Load a state from a JSON file.
#[pyfunction]
fn load(path: &str) -> PyResult<PyState> {
    qcorr::io::load_state(path).map(PyState).map_err(to_py)
}

/// Entropy-based correlation measure `(S(ρ) + S(σ))/2 − S(θ)`.
#[pyfunction]
fn d_correlation(state: &PyState) -> PyResult<f64> {
    qcorr::correlations::d_correlation(&state.0).map_err(to_py)
}

/// Mutual entropy `S(ρ) + S(σ) − S(θ)`.
#[pyfunction]
fn mutual_entropy(state: &PyState) -> PyResult<f64> {
    qcorr::correlations::mutual_entropy(&state.0).map_err(to_py)
}

/// Von Neumann entropy of the full state, in nats.
#[pyfunction]
fn entropy(state: &PyState) -> PyResult<f64> {
    qcorr::correlations::von_neumann_entropy(state.0.matrix()).map_err(to_py)
}

/// Closed-form D for the named family ("horodecki" on d = 3, "bell-eps").
#[pyfunction]
fn analytic_d_value(family: &str, param: f64) -> PyResult<f64> {
    let fam = match family {
        "horodecki" => AnalyticFamily::Horodecki3,
        "bell-eps" => AnalyticFamily::BellEps,
        _ => {
            return Err(PyValueError::new_err(format!(
                "unknown family {family:?}; expected \"horodecki\" or \"bell-eps\""
            )));
        }
    };
    analytic_d(fam, param).map_err(to_py)
}

/// Measurement-based discord on the named side.
#[pyfunction]
#[pyo3(signature = (state, side = "H", restarts = 32, seed = 42))]
fn discord(state: &PyState, side: &str, restarts: usize, seed: u64) -> PyResult<f64> {
    qcorr::discord::discord(&state.0, parse_side(side)?, &optimizer_config(restarts, seed))
        .map_err(to_py)
}

/// Best measured mutual information on the named side.
#[pyfunction]
#[pyo3(signature = (state, side = "H", restarts = 32, seed = 42))]
fn classical_correlation(state: &PyState, side: &str, restarts: usize, seed: u64) -> PyResult<f64> {
    qcorr::discord::classical_correlation(
        &state.0,
        parse_side(side)?,
        &optimizer_config(restarts, seed),
    )
    .map(|(c, _)| c)
    .map_err(to_py)
}

/// Mean of the H-side and K-side discords.
#[pyfunction]
#[pyo3(signature = (state, restarts = 32, seed = 42))]
fn symmetric_discord(state: &PyState, restarts: usize, seed: u64) -> PyResult<f64> {
    qcorr::discord::symmetric_discord(&state.0, &optimizer_config(restarts, seed)).map_err(to_py)
}

/// Run a family sweep; returns one dict per grid point.
#[pyfunction]
#[pyo3(signature = (family, min, max, steps, d = 3, discord = false, restarts = 32, seed = 42))]
#[allow(clippy::too_many_arguments)]
fn sweep<'py>(
    py: Python<'py>,
    family: &str,
    min: f64,
    max: f64,
    steps: usize,
    d: usize,
    discord: bool,
    restarts: usize,
    seed: u64,
) -> PyResult<Vec<Bound<'py, PyDict>>> {
    let config = SweepConfig {
        family: parse_family(family, d)?,
        min,
        max,
        steps,
        discord: discord.then(|| optimizer_config(restarts, seed)),
    };
    let records = run_sweep(&config).map_err(to_py)?;
    records
        .iter()
        .map(|r| {
            let row = PyDict::new(py);
            row.set_item("param", r.param)?;
            row.set_item("S_theta", r.s_theta)?;
            row.set_item("S_rho", r.s_rho)?;
            row.set_item("S_sigma", r.s_sigma)?;
            row.set_item("I", r.mutual)?;
            row.set_item("D", r.d_corr)?;
            row.set_item("ppt_margin", r.ppt_margin)?;
            row.set_item("label", r.label.as_str())?;
            if let Some(ds) = r.discord_sym {
                row.set_item("discord_sym", ds)?;
            }
            if let Some(ru) = r.restarts_used {
                row.set_item("restarts_used", ru)?;
            }
            Ok(row)
        })
        .collect()
}

#[pymodule]
fn qcorr_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyState>()?;
    m.add_function(wrap_pyfunction!(horodecki, m)?)?;
    m.add_function(wrap_pyfunction!(bell_eps, m)?)?;
    m.add_function(wrap_pyfunction!(max_entangled, m)?)?;
    m.add_function(wrap_pyfunction!(load, m)?)?;
    m.add_function(wrap_pyfunction!(d_correlation, m)?)?;
    m.add_function(wrap_pyfunction!(mutual_entropy, m)?)?;
    m.add_function(wrap_pyfunction!(entropy, m)?)?;
    m.add_function(wrap_pyfunction!(analytic_d_value, m)?)?;
    m.add_function(wrap_pyfunction!(discord, m)?)?;
    m.add_function(wrap_pyfunction!(classical_correlation, m)?)?;
    m.add_function(wrap_pyfunction!(symmetric_discord, m)?)?;
    m.add_function(wrap_pyfunction!(sweep, m)?)?;
    Ok(())
}
