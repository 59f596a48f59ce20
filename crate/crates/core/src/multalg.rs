//! Multiplication operators `L_a(x) = a x`, `R_b(x) = x b` and the
//! multiplication algebra `M(A) = span{L_a R_b}`.
//!
//! Operators are matrices acting on coordinate columns: column `c` of the
//! matrix of `T` holds the coordinates of `T(e_c)`.

use num_traits::Zero;
use thiserror::Error;

use crate::algebra::{AlgebraError, Element, StructureAlgebra};
use crate::linalg::{self, QMatrix};
use crate::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MultAlgError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("operator presentation is empty")]
    EmptyPresentation,
    #[error("presentation does not match the operator matrix")]
    PresentationMismatch,
    #[error("operator matrix is {rows}x{cols}, algebra has dimension {dim}")]
    Shape { rows: usize, cols: usize, dim: usize },
}

/// Matrix of `x -> a x`.
pub fn left_mult_matrix(alg: &StructureAlgebra, a: &Element) -> Result<QMatrix, AlgebraError> {
    let n = alg.dim();
    let mut m = QMatrix::zeros(n, n);
    for c in 0..n {
        let col = alg.multiply(a, &alg.basis(c))?;
        for (r, v) in col.into_coords().into_iter().enumerate() {
            m.set(r, c, v);
        }
    }
    Ok(m)
}

/// Matrix of `x -> x b`.
pub fn right_mult_matrix(alg: &StructureAlgebra, b: &Element) -> Result<QMatrix, AlgebraError> {
    let n = alg.dim();
    let mut m = QMatrix::zeros(n, n);
    for c in 0..n {
        let col = alg.multiply(&alg.basis(c), b)?;
        for (r, v) in col.into_coords().into_iter().enumerate() {
            m.set(r, c, v);
        }
    }
    Ok(m)
}

/// Matrix of `x -> a x b`.
pub fn pair_matrix(alg: &StructureAlgebra, a: &Element, b: &Element) -> Result<QMatrix, AlgebraError> {
    Ok(&left_mult_matrix(alg, a)? * &right_mult_matrix(alg, b)?)
}

/// A linear operator on an algebra, optionally remembered as `sum L_a R_b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultOperator {
    matrix: QMatrix,
    presentation: Option<Vec<(Element, Element)>>,
}

impl MultOperator {
    pub fn from_matrix(alg: &StructureAlgebra, matrix: QMatrix) -> Result<Self, MultAlgError> {
        check_shape(alg, &matrix)?;
        Ok(MultOperator {
            matrix,
            presentation: None,
        })
    }

    /// `sum_k L_{a_k} R_{b_k}`.
    pub fn from_pairs(alg: &StructureAlgebra, pairs: Vec<(Element, Element)>) -> Result<Self, MultAlgError> {
        let matrix = presentation_matrix(alg, &pairs)?;
        Ok(MultOperator {
            matrix,
            presentation: Some(pairs),
        })
    }

    /// Attaches a presentation to a matrix after checking they agree.
    pub fn with_presentation(
        alg: &StructureAlgebra,
        matrix: QMatrix,
        pairs: Vec<(Element, Element)>,
    ) -> Result<Self, MultAlgError> {
        check_shape(alg, &matrix)?;
        if presentation_matrix(alg, &pairs)? != matrix {
            return Err(MultAlgError::PresentationMismatch);
        }
        Ok(MultOperator {
            matrix,
            presentation: Some(pairs),
        })
    }

    pub fn zero(alg: &StructureAlgebra) -> Self {
        MultOperator {
            matrix: QMatrix::zeros(alg.dim(), alg.dim()),
            presentation: Some(Vec::new()),
        }
    }

    pub fn identity(alg: &StructureAlgebra) -> Self {
        let matrix = QMatrix::identity(alg.dim());
        let presentation = alg.unit().map(|u| vec![(u.clone(), u.clone())]);
        MultOperator { matrix, presentation }
    }

    pub fn matrix(&self) -> &QMatrix {
        &self.matrix
    }

    pub fn presentation(&self) -> Option<&[(Element, Element)]> {
        self.presentation.as_deref()
    }

    pub fn apply(&self, x: &Element) -> Element {
        Element::new(self.matrix.mul_vec(x.coords()))
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    /// `self += c * other`; the presentation is kept when both sides have one.
    pub fn add_scaled(&mut self, c: &Rational, other: &MultOperator) {
        if c.is_zero() {
            return;
        }
        self.matrix = &self.matrix + &other.matrix.scale(c);
        self.presentation = match (self.presentation.take(), &other.presentation) {
            (Some(mut mine), Some(theirs)) => {
                mine.extend(theirs.iter().map(|(a, b)| (a.scale(c), b.clone())));
                Some(mine)
            }
            _ => None,
        };
    }

    pub fn scale(&self, c: &Rational) -> MultOperator {
        MultOperator {
            matrix: self.matrix.scale(c),
            presentation: self
                .presentation
                .as_ref()
                .map(|p| p.iter().map(|(a, b)| (a.scale(c), b.clone())).collect()),
        }
    }

    /// `self` after `other`. Presentations compose by
    /// `L_a R_b L_c R_d = L_{ac} R_{db}`.
    pub fn compose(&self, alg: &StructureAlgebra, other: &MultOperator) -> MultOperator {
        let presentation = match (&self.presentation, &other.presentation) {
            (Some(p), Some(q)) => Some(
                p.iter()
                    .flat_map(|(a, b)| q.iter().map(move |(c, d)| (alg.mul(a, c), alg.mul(d, b))))
                    .collect(),
            ),
            _ => None,
        };
        MultOperator {
            matrix: &self.matrix * &other.matrix,
            presentation,
        }
    }
}

fn check_shape(alg: &StructureAlgebra, m: &QMatrix) -> Result<(), MultAlgError> {
    if m.nrows() != alg.dim() || m.ncols() != alg.dim() {
        return Err(MultAlgError::Shape {
            rows: m.nrows(),
            cols: m.ncols(),
            dim: alg.dim(),
        });
    }
    Ok(())
}

fn presentation_matrix(alg: &StructureAlgebra, pairs: &[(Element, Element)]) -> Result<QMatrix, MultAlgError> {
    let mut m = QMatrix::zeros(alg.dim(), alg.dim());
    for (a, b) in pairs {
        m = &m + &pair_matrix(alg, a, b)?;
    }
    Ok(m)
}

/// Rank of the operator matrix; zero exactly for the zero operator.
pub fn operator_rank(w: &MultOperator) -> usize {
    w.rank()
}

/// The `n^2` operators `L_{e_i} R_{e_j}`, in row-major `(i, j)` order.
pub fn basis_pair_operators(alg: &StructureAlgebra) -> Vec<QMatrix> {
    let n = alg.dim();
    let mut out = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            // Column c is e_i e_c e_j.
            let mut m = QMatrix::zeros(n, n);
            let mut scratch = Vec::new();
            for c in 0..n {
                let left = alg.basis_product(i, c).clone();
                for (k, v) in alg.mul_sparse_basis(&left, j, &mut scratch) {
                    m.set(k, c, v);
                }
            }
            out.push(m);
        }
    }
    out
}

/// `dim span{L_{e_i} R_{e_j}}`, the rank of the flattened operators. For a
/// unital algebra this is the dimension of the multiplication algebra.
pub fn mult_algebra_dim(alg: &StructureAlgebra) -> usize {
    let n = alg.dim();
    let rows: Vec<Vec<Rational>> = basis_pair_operators(alg)
        .into_iter()
        .map(|m| m.as_slice().to_vec())
        .collect();
    linalg::rank_of(&rows, n * n)
}

/// Coefficients `lambda_ij` with `matrix = sum lambda_ij L_{e_i} R_{e_j}`
/// (row-major `(i, j)` order), if the operator lies in `M(A)`.
pub fn basis_pair_coefficients(alg: &StructureAlgebra, matrix: &QMatrix) -> Option<Vec<Rational>> {
    let columns: Vec<Vec<Rational>> = basis_pair_operators(alg)
        .into_iter()
        .map(|m| m.as_slice().to_vec())
        .collect();
    linalg::express_in_span(&columns, matrix.as_slice())
}

/// Rewrites `[(a_k, r_k)]`, read as `sum a_k x r_k(...)`, so that the left
/// elements are linearly independent. Left elements are taken greedily in
/// order; each dependent `a_k = sum lambda_l a_l` is folded into the kept
/// entries by `r_l += lambda_l * r_k` (performed by `axpy`).
pub fn fold_dependent_lefts<R>(
    items: Vec<(Element, R)>,
    mut axpy: impl FnMut(&mut R, &Rational, &R),
) -> Vec<(Element, R)> {
    let mut kept: Vec<(Element, R)> = Vec::new();
    for (a, r) in items {
        let lefts: Vec<Vec<Rational>> = kept.iter().map(|(x, _)| x.coords().to_vec()).collect();
        match linalg::express_in_span(&lefts, a.coords()) {
            Some(lambda) => {
                for ((_, target), l) in kept.iter_mut().zip(&lambda) {
                    if !l.is_zero() {
                        axpy(target, l, &r);
                    }
                }
            }
            None => kept.push((a, r)),
        }
    }
    kept
}

/// Same operator `sum L_a R_b`, rewritten with independent left elements.
pub fn reduce_to_independent_left(
    alg: &StructureAlgebra,
    pairs: Vec<(Element, Element)>,
) -> Result<Vec<(Element, Element)>, MultAlgError> {
    if pairs.is_empty() {
        return Err(MultAlgError::EmptyPresentation);
    }
    for (a, b) in &pairs {
        for e in [a, b] {
            if e.dim() != alg.dim() {
                return Err(AlgebraError::DimensionMismatch {
                    expected: alg.dim(),
                    found: e.dim(),
                }
                .into());
            }
        }
    }
    Ok(fold_dependent_lefts(pairs, |b, l, other| b.add_scaled(l, other)))
}
