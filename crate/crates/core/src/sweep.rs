//! Parameter sweeps over the built-in state families, with CSV output.
//!
//! Sweep points evaluate in parallel, but the output order and every value
//! are deterministic: records keep grid order, and the discord search is
//! internally sequential per point. Floats are serialized with Rust's
//! shortest round-trip `Display`, so identical runs produce byte-identical
//! CSV.

use crate::correlations::{CorrelationReport, FamilySpec, StateClass, classify_family};
use crate::discord::{OptimizerConfig, symmetric_discord};
use crate::error::{Error, Result};
use crate::states::{DensityMatrix, bell_family_eps, horodecki_family};
use crate::tol::EQ_BAND;
use rayon::prelude::*;
use std::fmt::Write as _;

/// A family sweep: `steps` points from `min` to `max` (inclusive), linear
/// for the spectrum family, logarithmic for the positive-ratio family.
#[derive(Clone, Copy, Debug)]
pub struct SweepConfig {
    pub family: FamilySpec,
    pub min: f64,
    pub max: f64,
    pub steps: usize,
    /// When set, each point also carries the symmetric discord.
    pub discord: Option<OptimizerConfig>,
}

/// One evaluated sweep point.
#[derive(Clone, Debug)]
pub struct SweepRecord {
    pub param: f64,
    pub s_theta: f64,
    pub s_rho: f64,
    pub s_sigma: f64,
    pub mutual: f64,
    pub d_corr: f64,
    pub ppt_margin: f64,
    pub label: StateClass,
    pub discord_sym: Option<f64>,
    pub restarts_used: Option<usize>,
}

/// Build the family member at `param`.
pub fn family_state(family: FamilySpec, param: f64) -> Result<DensityMatrix> {
    match family {
        FamilySpec::Horodecki { d } => horodecki_family(d, param),
        FamilySpec::BellEps => bell_family_eps(param),
    }
}

/// The parameter grid for a sweep: linear spacing for the spectrum family,
/// log spacing for the positive-ratio family (symmetric about 1 when the
/// endpoints are reciprocal).
pub fn grid_points(family: FamilySpec, min: f64, max: f64, steps: usize) -> Result<Vec<f64>> {
    if steps == 0 {
        return Err(Error::OutOfDomain {
            family: "sweep",
            value: 0.0,
            domain: "steps >= 1".into(),
        });
    }
    if !(min.is_finite() && max.is_finite()) || min > max {
        return Err(Error::OutOfDomain {
            family: "sweep",
            value: min,
            domain: format!("finite range with min <= max (max = {max})"),
        });
    }
    if steps == 1 {
        return Ok(vec![min]);
    }
    let points = match family {
        FamilySpec::Horodecki { .. } => (0..steps)
            .map(|i| min + (max - min) * i as f64 / (steps - 1) as f64)
            .collect(),
        FamilySpec::BellEps => {
            if min <= 0.0 {
                return Err(Error::OutOfDomain {
                    family: "bell-eps sweep",
                    value: min,
                    domain: "(0, inf)".into(),
                });
            }
            let (lo, hi) = (min.ln(), max.ln());
            (0..steps)
                .map(|i| (lo + (hi - lo) * i as f64 / (steps - 1) as f64).exp())
                .collect()
        }
    };
    Ok(points)
}

fn sweep_point(
    family: FamilySpec,
    param: f64,
    discord_cfg: Option<&OptimizerConfig>,
) -> Result<SweepRecord> {
    let state = family_state(family, param)?;
    let report = CorrelationReport::compute(&state)?;
    // The label must satisfy `NPT ⇔ ppt_margin < −EQ_BAND` exactly, so the
    // computed margin overrides the parameter-domain classification in the
    // (numerically fuzzy) neighborhood of a boundary.
    let by_param = classify_family(family, param)?;
    let label = if report.ppt_margin < -EQ_BAND {
        StateClass::Npt
    } else if by_param == StateClass::Npt {
        StateClass::PptEnt
    } else {
        by_param
    };
    let (discord_sym, restarts_used) = match discord_cfg {
        Some(cfg) => (
            Some(symmetric_discord(&state, cfg)?),
            Some(cfg.restarts.max(1)),
        ),
        None => (None, None),
    };
    Ok(SweepRecord {
        param,
        s_theta: report.s_theta,
        s_rho: report.s_rho,
        s_sigma: report.s_sigma,
        mutual: report.mutual,
        d_corr: report.d_corr,
        ppt_margin: report.ppt_margin,
        label,
        discord_sym,
        restarts_used,
    })
}

/// Evaluate the sweep. Points run in parallel; the returned records are in
/// grid order.
pub fn run_sweep(config: &SweepConfig) -> Result<Vec<SweepRecord>> {
    let points = grid_points(config.family, config.min, config.max, config.steps)?;
    points
        .par_iter()
        .map(|&p| sweep_point(config.family, p, config.discord.as_ref()))
        .collect()
}

/// CSV header matching [`csv_row`].
pub fn csv_header(with_discord: bool) -> &'static str {
    if with_discord {
        "param,S_theta,S_rho,S_sigma,I,D,ppt_margin,label,discord_sym,restarts_used"
    } else {
        "param,S_theta,S_rho,S_sigma,I,D,ppt_margin,label"
    }
}

/// One CSV line (no trailing newline). Float fields use the shortest
/// representation that parses back to the same value.
pub fn csv_row(record: &SweepRecord, with_discord: bool) -> String {
    let mut line = String::new();
    write!(
        line,
        "{},{},{},{},{},{},{},{}",
        record.param,
        record.s_theta,
        record.s_rho,
        record.s_sigma,
        record.mutual,
        record.d_corr,
        record.ppt_margin,
        record.label.as_str()
    )
    .expect("writing to String cannot fail");
    if with_discord {
        match (record.discord_sym, record.restarts_used) {
            (Some(d), Some(r)) => write!(line, ",{d},{r}").expect("writing to String cannot fail"),
            _ => line.push_str(",,"),
        }
    }
    line
}

/// Write header plus one line per record.
pub fn write_csv<W: std::io::Write>(
    w: &mut W,
    records: &[SweepRecord],
    with_discord: bool,
) -> Result<()> {
    writeln!(w, "{}", csv_header(with_discord))?;
    for record in records {
        writeln!(w, "{}", csv_row(record, with_discord))?;
    }
    Ok(())
}
