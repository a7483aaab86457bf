//! Shannon entropies of finite distributions, joint tables and channels.
//!
//! All entropies are in nats (natural logarithm) with the usual convention
//! `0·ln 0 = 0`. These are the commutative counterparts of the operator
//! quantities in [`correlations`](crate::correlations) and serve as oracles
//! for them in tests.

use crate::error::{Error, Result};
use crate::tol::PROB_TOL;

/// `x ln x` with the zero convention, tolerating tiny negative round-off.
fn x_ln_x(x: f64) -> f64 {
    if x <= 0.0 { 0.0 } else { x * x.ln() }
}

fn validate_probabilities(p: &[f64], what: &str) -> Result<()> {
    if p.is_empty() {
        return Err(Error::BadProbability(format!("{what} is empty")));
    }
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

/// Shannon entropy `-Σ p_i ln p_i` of a probability vector, in nats.
pub fn shannon_entropy(p: &[f64]) -> Result<f64> {
    validate_probabilities(p, "distribution")?;
    Ok(-p.iter().map(|&x| x_ln_x(x)).sum::<f64>())
}

/// Joint probability table `r[x][y]` over a finite product alphabet.
#[derive(Clone, Debug)]
pub struct JointDistribution {
    rows: usize,
    cols: usize,
    p: Vec<f64>,
}

impl JointDistribution {
    /// Validate and wrap a row-major table.
    pub fn new(rows: usize, cols: usize, p: Vec<f64>) -> Result<Self> {
        if p.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "joint table has {} entries, expected {}",
                p.len(),
                rows * cols
            )));
        }
        validate_probabilities(&p, "joint table")?;
        Ok(JointDistribution { rows, cols, p })
    }

    /// Build from nested rows.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut p = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::DimensionMismatch("ragged joint table".into()));
            }
            p.extend_from_slice(row);
        }
        Self::new(r, c, p)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> f64 {
        self.p[x * self.cols + y]
    }

    /// Marginal over the column index: `p_x = Σ_y r[x][y]`.
    pub fn marginal_x(&self) -> Vec<f64> {
        (0..self.rows)
            .map(|x| (0..self.cols).map(|y| self.get(x, y)).sum())
            .collect()
    }

    /// Marginal over the row index: `q_y = Σ_x r[x][y]`.
    pub fn marginal_y(&self) -> Vec<f64> {
        (0..self.cols)
            .map(|y| (0..self.rows).map(|x| self.get(x, y)).sum())
            .collect()
    }
}

/// The standard entropies of a joint distribution, all in nats.
#[derive(Clone, Copy, Debug)]
pub struct JointEntropies {
    /// Entropy of the row marginal.
    pub s_x: f64,
    /// Entropy of the column marginal.
    pub s_y: f64,
    /// Entropy of the joint table.
    pub s_xy: f64,
    /// Mutual information `S_X + S_Y - S_XY`.
    pub mutual: f64,
    /// Conditional entropy `S_XY - S_Y`.
    pub x_given_y: f64,
    /// Conditional entropy `S_XY - S_X`.
    pub y_given_x: f64,
}

/// All joint/marginal/conditional entropies of a table at once.
pub fn joint_entropies(r: &JointDistribution) -> Result<JointEntropies> {
    let s_x = -r.marginal_x().iter().map(|&x| x_ln_x(x)).sum::<f64>();
    let s_y = -r.marginal_y().iter().map(|&x| x_ln_x(x)).sum::<f64>();
    let s_xy = -r.p.iter().map(|&x| x_ln_x(x)).sum::<f64>();
    Ok(JointEntropies {
        s_x,
        s_y,
        s_xy,
        mutual: s_x + s_y - s_xy,
        x_given_y: s_xy - s_y,
        y_given_x: s_xy - s_x,
    })
}

/// Column-stochastic channel `T[x][y]` plus the input distribution it acts on.
#[derive(Clone, Debug)]
pub struct StochasticChannel {
    /// Input distribution `q_y`.
    pub input: Vec<f64>,
    /// Row-major transition matrix; column `y` holds `P(x | y)`.
    pub t: Vec<f64>,
    pub outputs: usize,
    pub inputs: usize,
}

impl StochasticChannel {
    #[inline]
    pub fn get(&self, x: usize, y: usize) -> f64 {
        self.t[x * self.inputs + y]
    }

    /// Reassemble the joint table `r[x][y] = T[x][y]·q_y`.
    pub fn joint(&self) -> Result<JointDistribution> {
        let mut p = vec![0.0; self.outputs * self.inputs];
        for x in 0..self.outputs {
            for y in 0..self.inputs {
                p[x * self.inputs + y] = self.get(x, y) * self.input[y];
            }
        }
        JointDistribution::new(self.outputs, self.inputs, p)
    }
}

/// Factor a joint table as `r[x][y] = T[x][y]·q_y`.
///
/// Columns with `q_y = 0` carry no information; they are filled with the
/// uniform distribution so that `T` stays column-stochastic. Reassembling the
/// joint table multiplies those columns by zero again, so the round trip is
/// exact either way.
pub fn channel_from_joint(r: &JointDistribution) -> Result<StochasticChannel> {
    let q = r.marginal_y();
    let (outputs, inputs) = (r.rows(), r.cols());
    let mut t = vec![0.0; outputs * inputs];
    for y in 0..inputs {
        if q[y] > 0.0 {
            for x in 0..outputs {
                t[x * inputs + y] = r.get(x, y) / q[y];
            }
        } else {
            for x in 0..outputs {
                t[x * inputs + y] = 1.0 / outputs as f64;
            }
        }
    }
    Ok(StochasticChannel {
        input: q,
        t,
        outputs,
        inputs,
    })
}
