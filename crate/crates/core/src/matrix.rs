//! Dense complex matrices and the Hermitian eigensolver everything else uses.
//!
//! Storage is row-major `Vec<Complex64>`; all dimensions in this crate are
//! small (at most 16 for bipartite operators), so the kernels are plain loops
//! and the eigensolver is a cyclic Jacobi iteration specialised to Hermitian
//! input. Algebraic operations panic on shape mismatch (programmer error);
//! numerical contracts (Hermiticity, positivity, faithfulness) return
//! [`Error`](crate::error::Error) values instead.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::tol::HERM_TOL;

/// Shorthand used throughout the crate.
pub type C64 = Complex64;

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

/// Dense row-major complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl ComplexMatrix {
    /// Zero matrix of the given shape.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ComplexMatrix {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    /// Identity matrix of size `n`.
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, ONE);
        }
        m
    }

    /// Matrix unit `e_ij` of size `n` (1 at row `i`, column `j`).
    pub fn basis(n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(n, n);
        m.set(i, j, ONE);
        m
    }

    /// Build from a closure over (row, col).
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        ComplexMatrix { rows, cols, data }
    }

    /// Build from nested row slices; panics if the rows are ragged.
    pub fn from_rows(rows: &[Vec<C64>]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend_from_slice(row);
        }
        ComplexMatrix {
            rows: r,
            cols: c,
            data,
        }
    }

    /// Real diagonal matrix.
    pub fn diag(values: &[f64]) -> Self {
        let n = values.len();
        let mut m = Self::zeros(n, n);
        for (i, &v) in values.iter().enumerate() {
            m.set(i, i, C64::new(v, 0.0));
        }
        m
    }

    /// Outer product `u v†`.
    pub fn outer(u: &[C64], v: &[C64]) -> Self {
        Self::from_fn(u.len(), v.len(), |i, j| u[i] * v[j].conj())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: C64) {
        self.data[i * self.cols + j] = v;
    }

    /// Column `j` as a vector.
    pub fn column(&self, j: usize) -> Vec<C64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    /// Raw row-major data.
    pub fn data(&self) -> &[C64] {
        &self.data
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + b)
            .collect();
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a - b)
            .collect();
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn scale(&self, s: C64) -> Self {
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * s).collect(),
        }
    }

    pub fn scale_re(&self, s: f64) -> Self {
        self.scale(C64::new(s, 0.0))
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "inner dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == ZERO {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    /// Matrix-vector product.
    pub fn mul_vec(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) * v[j]).sum())
            .collect()
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    /// Plain transpose.
    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    /// Entrywise conjugate.
    pub fn conj(&self) -> Self {
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a.conj()).collect(),
        }
    }

    pub fn trace(&self) -> C64 {
        assert!(self.is_square());
        (0..self.rows).map(|i| self.get(i, i)).sum()
    }

    /// Frobenius norm.
    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entry magnitude.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|a| a.norm()).fold(0.0, f64::max)
    }

    /// Largest entrywise difference to `other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &Self) -> Self {
        let (r1, c1, r2, c2) = (self.rows, self.cols, other.rows, other.cols);
        Self::from_fn(r1 * r2, c1 * c2, |i, j| {
            self.get(i / r2, j / c2) * other.get(i % r2, j % c2)
        })
    }

    /// Entrywise (Hadamard) product.
    pub fn hadamard(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a * b)
            .collect();
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    /// Worst Hermiticity violation, if any: `(row, col, |m[i][j] - conj(m[j][i])|)`.
    pub fn hermiticity_violation(&self, tol: f64) -> Option<(usize, usize, f64)> {
        if !self.is_square() {
            return Some((0, 0, f64::INFINITY));
        }
        let mut worst: Option<(usize, usize, f64)> = None;
        for i in 0..self.rows {
            for j in i..self.cols {
                let dev = (self.get(i, j) - self.get(j, i).conj()).norm();
                if dev > tol && worst.is_none_or(|(_, _, w)| dev > w) {
                    worst = Some((i, j, dev));
                }
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.is_square() && self.hermiticity_violation(tol).is_none()
    }

    /// Error unless Hermitian within `tol`.
    pub fn require_hermitian(&self, tol: f64) -> Result<()> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        match self.hermiticity_violation(tol) {
            None => Ok(()),
            Some((row, col, deviation)) => Err(Error::NotHermitian {
                row,
                col,
                deviation,
                tol,
            }),
        }
    }
}

/// Eigendecomposition of a Hermitian matrix: `A = V diag(values) V†`.
#[derive(Clone, Debug)]
pub struct HermitianEig {
    /// Eigenvalues in ascending order.
    pub values: Vec<f64>,
    /// Unitary whose columns are the matching eigenvectors.
    pub vectors: ComplexMatrix,
}

impl HermitianEig {
    /// `V diag(f(λ)) V†` for a real function of the eigenvalues.
    pub fn apply(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let n = self.values.len();
        let v = &self.vectors;
        ComplexMatrix::from_fn(n, n, |i, j| {
            (0..n)
                .map(|k| v.get(i, k) * C64::new(f(self.values[k]), 0.0) * v.get(j, k).conj())
                .sum()
        })
    }

    /// Reassemble `V diag(values) V†`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        self.apply(|x| x)
    }
}

const MAX_SWEEPS: usize = 64;

/// Eigendecomposition of `a` via cyclic Jacobi rotations.
///
/// `a` must be Hermitian within `herm_tol`; the input is symmetrised before
/// iterating so that tolerated asymmetry cannot leak into the result.
/// Eigenvalues come back ascending with matching eigenvector columns.
pub fn hermitian_eig(a: &ComplexMatrix, herm_tol: f64) -> Result<HermitianEig> {
    a.require_hermitian(herm_tol)?;
    let n = a.rows();

    // Symmetrised working copy: m = (a + a†)/2.
    let mut m = a.add(&a.adjoint()).scale_re(0.5);
    let mut v = ComplexMatrix::identity(n);

    let scale = m.max_abs().max(1.0);
    let target = (1e-14 * scale) * (1e-14 * scale) * (n * n) as f64;

    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        let mut off = 0.0;
        for p in 0..n {
            for q in (p + 1)..n {
                off += m.get(p, q).norm_sqr();
            }
        }
        if off <= target {
            converged = true;
            break;
        }

        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m.get(p, q);
                let abs = apq.norm();
                if abs <= 1e-150 * scale {
                    continue;
                }
                let phase = apq / abs; // e^{iφ} with a_pq = |a_pq| e^{iφ}
                let app = m.get(p, p).re;
                let aqq = m.get(q, q).re;
                let tau = (aqq - app) / (2.0 * abs);
                // Smaller-magnitude root of t² + 2τt − 1 = 0.
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    1.0 / (tau - (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;

                // Rotation R: R[p][p]=c, R[p][q]=s·e^{iφ}, R[q][p]=−s·e^{−iφ}, R[q][q]=c.
                let se = C64::new(s, 0.0) * phase;

                // m ← m·R (columns p and q of every row).
                for k in 0..n {
                    let mp = m.get(k, p);
                    let mq = m.get(k, q);
                    m.set(k, p, mp.scale(c) - mq * se.conj());
                    m.set(k, q, mp * se + mq.scale(c));
                }
                // m ← R†·m (rows p and q of every column).
                for k in 0..n {
                    let mp = m.get(p, k);
                    let mq = m.get(q, k);
                    m.set(p, k, mp.scale(c) - mq * se);
                    m.set(q, k, mp * se.conj() + mq.scale(c));
                }
                // The pivot is zero by construction; pin it to kill round-off.
                m.set(p, q, ZERO);
                m.set(q, p, ZERO);

                // v ← v·R.
                for k in 0..n {
                    let vp = v.get(k, p);
                    let vq = v.get(k, q);
                    v.set(k, p, vp.scale(c) - vq * se.conj());
                    v.set(k, q, vp * se + vq.scale(c));
                }
            }
        }
    }

    if !converged {
        // One last residual check: the final sweep may have landed on target.
        let mut off = 0.0;
        for p in 0..n {
            for q in (p + 1)..n {
                off += m.get(p, q).norm_sqr();
            }
        }
        if off > target {
            return Err(Error::NoConvergence { sweeps: MAX_SWEEPS });
        }
    }

    // Sort eigenvalues ascending, permuting eigenvector columns alongside.
    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| m.get(i, i).re).collect();
    order.sort_by(|&i, &j| diag[i].partial_cmp(&diag[j]).unwrap());

    let values: Vec<f64> = order.iter().map(|&i| diag[i]).collect();
    let vectors = ComplexMatrix::from_fn(n, n, |i, j| v.get(i, order[j]));

    Ok(HermitianEig { values, vectors })
}

/// Positivity check: `(min eigenvalue ≥ -psd_tol, min eigenvalue)`.
pub fn is_psd(a: &ComplexMatrix, psd_tol: f64) -> Result<(bool, f64)> {
    let eig = hermitian_eig(a, HERM_TOL)?;
    let min_eig = eig.values[0];
    Ok((min_eig >= -psd_tol, min_eig))
}

/// `a^{1/2}` for PSD `a` (eigenvalues clipped at 0 before the root).
pub fn hermitian_sqrt(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    let eig = hermitian_eig(a, HERM_TOL)?;
    Ok(eig.apply(|x| x.max(0.0).sqrt()))
}

/// `a^{-1/2}` for faithful `a`: errors unless every eigenvalue ≥ `faithful_tol`.
pub fn hermitian_inv_sqrt(a: &ComplexMatrix, faithful_tol: f64) -> Result<ComplexMatrix> {
    let eig = hermitian_eig(a, HERM_TOL)?;
    let min_eig = eig.values[0];
    if min_eig < faithful_tol {
        return Err(Error::NotFaithful {
            min_eig,
            tol: faithful_tol,
        });
    }
    Ok(eig.apply(|x| 1.0 / x.sqrt()))
}

/// Unitary `exp(iH)` for Hermitian `h`.
pub fn exp_i_hermitian(h: &ComplexMatrix) -> Result<ComplexMatrix> {
    let eig = hermitian_eig(h, 1e-8)?;
    let n = eig.values.len();
    let v = &eig.vectors;
    Ok(ComplexMatrix::from_fn(n, n, |i, j| {
        (0..n)
            .map(|k| v.get(i, k) * C64::new(0.0, eig.values[k]).exp() * v.get(j, k).conj())
            .sum()
    }))
}
