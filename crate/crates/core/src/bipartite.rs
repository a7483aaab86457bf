//! Operators on a tensor product H ⊗ K and the index plumbing around them.
//!
//! The flat index convention is `(i, α) ↦ i·d_K + α`: the first factor varies
//! slowly. Kronecker products, partial traces and partial transposes all
//! follow from it and nothing else in the crate hard-codes another layout.

use crate::matrix::{C64, ComplexMatrix};

/// Which tensor factor an operation acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// First factor (dimension `d_h`).
    H,
    /// Second factor (dimension `d_k`).
    K,
}

impl Side {
    /// The opposite factor.
    pub fn other(self) -> Side {
        match self {
            Side::H => Side::K,
            Side::K => Side::H,
        }
    }
}

/// A `(d_h·d_k) × (d_h·d_k)` operator tagged with its factor dimensions.
#[derive(Clone, Debug, PartialEq)]
pub struct BipartiteOperator {
    d_h: usize,
    d_k: usize,
    mat: ComplexMatrix,
}

impl BipartiteOperator {
    /// Wrap a matrix, checking that its shape equals `(d_h·d_k)²`.
    pub fn new(d_h: usize, d_k: usize, mat: ComplexMatrix) -> crate::error::Result<Self> {
        let n = d_h * d_k;
        if mat.rows() != n || mat.cols() != n {
            return Err(crate::error::Error::DimensionMismatch(format!(
                "matrix is {}x{}, expected {n}x{n} for dims ({d_h}, {d_k})",
                mat.rows(),
                mat.cols()
            )));
        }
        Ok(BipartiteOperator { d_h, d_k, mat })
    }

    /// Zero operator.
    pub fn zeros(d_h: usize, d_k: usize) -> Self {
        BipartiteOperator {
            d_h,
            d_k,
            mat: ComplexMatrix::zeros(d_h * d_k, d_h * d_k),
        }
    }

    /// Build entrywise from a closure over `((i, α), (j, β))`.
    pub fn from_fn(
        d_h: usize,
        d_k: usize,
        mut f: impl FnMut(usize, usize, usize, usize) -> C64,
    ) -> Self {
        let mat = ComplexMatrix::from_fn(d_h * d_k, d_h * d_k, |r, c| {
            f(r / d_k, r % d_k, c / d_k, c % d_k)
        });
        BipartiteOperator { d_h, d_k, mat }
    }

    /// Kronecker product `a ⊗ b` of single-factor operators.
    pub fn kron_parts(a: &ComplexMatrix, b: &ComplexMatrix) -> Self {
        assert!(a.is_square() && b.is_square());
        BipartiteOperator {
            d_h: a.rows(),
            d_k: b.rows(),
            mat: a.kron(b),
        }
    }

    pub fn d_h(&self) -> usize {
        self.d_h
    }

    pub fn d_k(&self) -> usize {
        self.d_k
    }

    /// Dimension of one side.
    pub fn dim(&self, side: Side) -> usize {
        match side {
            Side::H => self.d_h,
            Side::K => self.d_k,
        }
    }

    /// Total dimension `d_h·d_k`.
    pub fn total_dim(&self) -> usize {
        self.d_h * self.d_k
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.mat
    }

    /// Flat row/column index of `(i, α)`.
    #[inline]
    pub fn flat(&self, i: usize, alpha: usize) -> usize {
        i * self.d_k + alpha
    }

    /// Entry `⟨i α| M |j β⟩`.
    #[inline]
    pub fn get2(&self, i: usize, alpha: usize, j: usize, beta: usize) -> C64 {
        self.mat.get(self.flat(i, alpha), self.flat(j, beta))
    }

    /// Set entry `⟨i α| M |j β⟩`.
    #[inline]
    pub fn set2(&mut self, i: usize, alpha: usize, j: usize, beta: usize, v: C64) {
        let (r, c) = (self.flat(i, alpha), self.flat(j, beta));
        self.mat.set(r, c, v);
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.d_h, self.d_k), (other.d_h, other.d_k));
        BipartiteOperator {
            d_h: self.d_h,
            d_k: self.d_k,
            mat: self.mat.add(&other.mat),
        }
    }

    pub fn scale_re(&self, s: f64) -> Self {
        BipartiteOperator {
            d_h: self.d_h,
            d_k: self.d_k,
            mat: self.mat.scale_re(s),
        }
    }

    /// Trace out `side`, leaving an operator on the other factor.
    pub fn partial_trace(&self, side: Side) -> ComplexMatrix {
        match side {
            // Keep K: M[α][β] = Σ_i θ[(i,α),(i,β)].
            Side::H => ComplexMatrix::from_fn(self.d_k, self.d_k, |alpha, beta| {
                (0..self.d_h).map(|i| self.get2(i, alpha, i, beta)).sum()
            }),
            // Keep H: M[i][j] = Σ_α θ[(i,α),(j,α)].
            Side::K => ComplexMatrix::from_fn(self.d_h, self.d_h, |i, j| {
                (0..self.d_k).map(|a| self.get2(i, a, j, a)).sum()
            }),
        }
    }

    /// Transpose the `side` factor only.
    pub fn partial_transpose(&self, side: Side) -> Self {
        match side {
            // (id ⊗ τ): swap α ↔ β.
            Side::K => Self::from_fn(self.d_h, self.d_k, |i, alpha, j, beta| {
                self.get2(i, beta, j, alpha)
            }),
            // (τ ⊗ id): swap i ↔ j.
            Side::H => Self::from_fn(self.d_h, self.d_k, |i, alpha, j, beta| {
                self.get2(j, alpha, i, beta)
            }),
        }
    }
}
