//! Finite-dimensional algebras over the rationals, presented by a basis
//! `e1, ..., en` and structure constants `e_i e_j = sum_k gamma_ijk e_k`.

mod builtins;
mod file;

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::linalg::{self, QMatrix};
use crate::Rational;

pub use builtins::{
    direct_sum, mat_algebra, quadratic_field, quaternion_algebra, rationals,
    upper_triangular_algebra, zero_mult_algebra,
};
pub use file::{parse_algebra_file, parse_rational, AlgebraFileError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("algebra dimension must be positive")]
    ZeroDimension,
    #[error("structure constants have the wrong shape: {0}")]
    Shape(String),
    #[error("associativity fails on basis triple ({i}, {j}, {k})")]
    NonAssociative { i: String, j: String, k: String },
    #[error("unit is not a two-sided identity (fails on {0})")]
    BadUnit(String),
    #[error("element has {found} coordinates, algebra has dimension {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("algebra has no unit")]
    NotUnital,
    #[error("element is zero")]
    ZeroElement,
    #[error("internal check failed: {0}")]
    Internal(&'static str),
}

/// Coordinate vector relative to the basis of some algebra.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Element(Vec<Rational>);

impl Element {
    pub fn new(coords: Vec<Rational>) -> Self {
        Element(coords)
    }

    pub fn zero(n: usize) -> Self {
        Element(vec![Rational::zero(); n])
    }

    /// The basis vector `e_{i+1}` (zero-based `i`).
    pub fn basis(n: usize, i: usize) -> Self {
        let mut e = Element::zero(n);
        e.0[i] = Rational::one();
        e
    }

    pub fn from_integers(coords: &[i64]) -> Self {
        Element(coords.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<Rational> {
        self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, c: &Rational) -> Element {
        Element(self.0.iter().map(|v| v * c).collect())
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, c: &Rational, other: &Element) {
        assert_eq!(self.dim(), other.dim(), "element dimension mismatch");
        if c.is_zero() {
            return;
        }
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            if !b.is_zero() {
                *a += c * b;
            }
        }
    }
}

impl Add for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        assert_eq!(self.dim(), rhs.dim(), "element dimension mismatch");
        Element(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        assert_eq!(self.dim(), rhs.dim(), "element dimension mismatch");
        Element(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        Element(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

/// A sparse vector: `(coordinate index, nonzero value)` pairs in increasing index order.
pub type SparseVec = Vec<(usize, Rational)>;

/// An associative algebra over the rationals with validated structure constants.
#[derive(Clone, Debug)]
pub struct StructureAlgebra {
    dim: usize,
    /// Sparse `e_i e_j`, indexed by `i * dim + j`.
    products: Vec<SparseVec>,
    unit: Option<Element>,
    names: Vec<String>,
}

impl StructureAlgebra {
    /// Validates and builds an algebra. `products[i][j]` holds the
    /// coordinates of `e_{i+1} e_{j+1}`.
    pub fn new(
        dim: usize,
        products: Vec<Vec<Vec<Rational>>>,
        unit: Option<Vec<Rational>>,
    ) -> Result<Self, AlgebraError> {
        if dim == 0 {
            return Err(AlgebraError::ZeroDimension);
        }
        if products.len() != dim {
            return Err(AlgebraError::Shape(format!(
                "{} rows of products for dimension {dim}",
                products.len()
            )));
        }
        let mut sparse = Vec::with_capacity(dim * dim);
        for (i, row) in products.into_iter().enumerate() {
            if row.len() != dim {
                return Err(AlgebraError::Shape(format!(
                    "row {} has {} products, expected {dim}",
                    i + 1,
                    row.len()
                )));
            }
            for (j, coords) in row.into_iter().enumerate() {
                if coords.len() != dim {
                    return Err(AlgebraError::Shape(format!(
                        "product e{} e{} has {} coordinates, expected {dim}",
                        i + 1,
                        j + 1,
                        coords.len()
                    )));
                }
                sparse.push(
                    coords
                        .into_iter()
                        .enumerate()
                        .filter(|(_, c)| !c.is_zero())
                        .collect(),
                );
            }
        }
        let names = (1..=dim).map(|i| format!("e{i}")).collect();
        let mut alg = StructureAlgebra {
            dim,
            products: sparse,
            unit: None,
            names,
        };
        alg.check_associative()?;
        if let Some(u) = unit {
            alg.set_unit(Element(u))?;
        }
        Ok(alg)
    }

    /// Replaces the default basis names `e1..en`.
    pub fn with_names(mut self, names: Vec<String>) -> Self {
        assert_eq!(names.len(), self.dim, "one name per basis element");
        self.names = names;
        self
    }

    pub fn set_unit(&mut self, u: Element) -> Result<(), AlgebraError> {
        self.check_dim(&u)?;
        for i in 0..self.dim {
            let e = Element::basis(self.dim, i);
            if self.mul(&u, &e) != e || self.mul(&e, &u) != e {
                return Err(AlgebraError::BadUnit(self.names[i].clone()));
            }
        }
        self.unit = Some(u);
        Ok(())
    }

    /// Solves for a two-sided identity and records it if one exists.
    pub fn detect_unit(mut self) -> Self {
        if self.unit.is_none() {
            if let Some(u) = self.find_unit() {
                self.unit = Some(u);
            }
        }
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit(&self) -> Option<&Element> {
        self.unit.as_ref()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn basis(&self, i: usize) -> Element {
        Element::basis(self.dim, i)
    }

    pub fn basis_elements(&self) -> Vec<Element> {
        (0..self.dim).map(|i| self.basis(i)).collect()
    }

    pub fn zero(&self) -> Element {
        Element::zero(self.dim)
    }

    /// Sparse coordinates of `e_i e_j` (zero-based).
    pub fn basis_product(&self, i: usize, j: usize) -> &SparseVec {
        &self.products[i * self.dim + j]
    }

    /// `gamma_ijk`, zero-based.
    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> Rational {
        self.basis_product(i, j)
            .iter()
            .find(|(idx, _)| *idx == k)
            .map_or_else(Rational::zero, |(_, c)| c.clone())
    }

    fn check_dim(&self, a: &Element) -> Result<(), AlgebraError> {
        if a.dim() != self.dim {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.dim,
                found: a.dim(),
            });
        }
        Ok(())
    }

    /// Bilinear product; fails when an operand has the wrong dimension.
    pub fn multiply(&self, a: &Element, b: &Element) -> Result<Element, AlgebraError> {
        self.check_dim(a)?;
        self.check_dim(b)?;
        Ok(self.mul(a, b))
    }

    /// Product of elements already known to belong to this algebra.
    pub fn mul(&self, a: &Element, b: &Element) -> Element {
        debug_assert_eq!(a.dim(), self.dim);
        debug_assert_eq!(b.dim(), self.dim);
        let mut out = vec![Rational::zero(); self.dim];
        for (i, ai) in a.0.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.0.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                let ab = ai * bj;
                for (k, g) in self.basis_product(i, j) {
                    out[*k] += &ab * g;
                }
            }
        }
        Element(out)
    }

    /// Left-to-right product of a sequence; an empty sequence gives the
    /// unit (or `None` for a non-unital algebra).
    pub fn product_of<'a>(&self, factors: impl IntoIterator<Item = &'a Element>) -> Option<Element> {
        let mut acc: Option<Element> = None;
        for f in factors {
            acc = Some(match acc {
                None => f.clone(),
                Some(p) => self.mul(&p, f),
            });
        }
        acc.or_else(|| self.unit.clone())
    }

    /// `sparse * e_j` for a sparse left factor.
    pub fn mul_sparse_basis(&self, x: &SparseVec, j: usize, scratch: &mut Vec<Rational>) -> SparseVec {
        scratch.clear();
        scratch.resize(self.dim, Rational::zero());
        let mut touched = false;
        for (i, xi) in x {
            for (k, g) in self.basis_product(*i, j) {
                touched = true;
                if g.is_one() {
                    scratch[*k] += xi;
                } else {
                    scratch[*k] += xi * g;
                }
            }
        }
        if !touched {
            return Vec::new();
        }
        scratch
            .iter_mut()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(k, v)| (k, std::mem::take(v)))
            .collect()
    }

    fn check_associative(&self) -> Result<(), AlgebraError> {
        let n = self.dim;
        let mut scratch = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let eij = self.basis_product(i, j).clone();
                for k in 0..n {
                    let left = self.mul_sparse_basis(&eij, k, &mut scratch);
                    // e_i (e_j e_k) = sum_m c_m e_i e_m
                    let mut right = vec![Rational::zero(); n];
                    for (m, c) in self.basis_product(j, k) {
                        for (t, g) in self.basis_product(i, *m) {
                            right[*t] += c * g;
                        }
                    }
                    let right: SparseVec = right
                        .into_iter()
                        .enumerate()
                        .filter(|(_, v)| !v.is_zero())
                        .collect();
                    if left != right {
                        return Err(AlgebraError::NonAssociative {
                            i: self.names[i].clone(),
                            j: self.names[j].clone(),
                            k: self.names[k].clone(),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// A two-sided identity element, if the algebra has one.
    pub fn find_unit(&self) -> Option<Element> {
        let n = self.dim;
        // Unknown u; equations u e_i = e_i and e_i u = e_i, coordinatewise.
        let mut rows = Vec::with_capacity(2 * n * n);
        let mut rhs = Vec::with_capacity(2 * n * n);
        for i in 0..n {
            for k in 0..n {
                rows.push((0..n).map(|m| self.structure_constant(m, i, k)).collect::<Vec<_>>());
                rhs.push(if i == k { Rational::one() } else { Rational::zero() });
                rows.push((0..n).map(|m| self.structure_constant(i, m, k)).collect::<Vec<_>>());
                rhs.push(if i == k { Rational::one() } else { Rational::zero() });
            }
        }
        linalg::solve(&QMatrix::from_rows(rows), &rhs).map(Element)
    }

    /// Basis of the center `{z : z e_i = e_i z for all i}`.
    pub fn center(&self) -> Vec<Element> {
        let n = self.dim;
        let mut rows = Vec::with_capacity(n * n);
        for i in 0..n {
            for k in 0..n {
                rows.push(
                    (0..n)
                        .map(|m| self.structure_constant(m, i, k) - self.structure_constant(i, m, k))
                        .collect::<Vec<_>>(),
                );
            }
        }
        QMatrix::from_rows(rows).kernel().into_iter().map(Element).collect()
    }

    /// Unital with center equal to the scalar multiples of the unit.
    pub fn is_central(&self) -> bool {
        self.unit.is_some() && self.center().len() == 1
    }

    /// Basis of the two-sided ideal generated by `a` in a unital algebra,
    /// i.e. of `span{e_i a e_j}`.
    pub fn ideal_basis(&self, a: &Element) -> Result<Vec<Element>, AlgebraError> {
        self.check_dim(a)?;
        let vectors = self.ideal_spanning_set(a);
        let rref = linalg::Rref::from_rows(
            &vectors.into_iter().map(|(_, _, v)| v.0).collect::<Vec<_>>(),
            self.dim,
        );
        Ok(rref.rows().iter().cloned().map(Element).collect())
    }

    fn ideal_spanning_set(&self, a: &Element) -> Vec<(usize, usize, Element)> {
        let mut out = Vec::with_capacity(self.dim * self.dim);
        for i in 0..self.dim {
            let ea = self.mul(&self.basis(i), a);
            for j in 0..self.dim {
                out.push((i, j, self.mul(&ea, &self.basis(j))));
            }
        }
        out
    }

    /// Writes `1 = sum u_k a v_k` with `u_k, v_k` scaled basis elements, or
    /// certifies that the ideal generated by `a` is proper.
    pub fn express_one_as_ideal_combination(&self, a: &Element) -> Result<OneInIdeal, AlgebraError> {
        self.check_dim(a)?;
        let unit = self.unit.clone().ok_or(AlgebraError::NotUnital)?;
        if a.is_zero() {
            return Err(AlgebraError::ZeroElement);
        }
        if let Some(c) = scalar_multiple(a, &unit) {
            return Ok(OneInIdeal::Combination(vec![(unit.scale(&c.recip()), unit)]));
        }
        let spanning = self.ideal_spanning_set(a);
        let columns: Vec<Vec<Rational>> = spanning.iter().map(|(_, _, v)| v.0.clone()).collect();
        let Some(lambda) = linalg::express_in_span(&columns, unit.coords()) else {
            let dimension = linalg::rank_of(&columns, self.dim);
            return Ok(OneInIdeal::ProperIdeal { dimension });
        };
        let pairs: Vec<(Element, Element)> = spanning
            .iter()
            .zip(&lambda)
            .filter(|(_, l)| !l.is_zero())
            .map(|((i, j, _), l)| (self.basis(*i).scale(l), self.basis(*j)))
            .collect();
        let mut total = self.zero();
        for (u, v) in &pairs {
            total = &total + &self.mul(&self.mul(u, a), v);
        }
        if total != unit {
            return Err(AlgebraError::Internal("sum u a v does not equal 1"));
        }
        Ok(OneInIdeal::Combination(pairs))
    }

    /// Renders an element as a combination of basis names, e.g. `e11 - 1/2*e22`.
    pub fn format_element(&self, a: &Element) -> String {
        let mut s = String::new();
        for (c, name) in a.0.iter().zip(&self.names) {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            if s.is_empty() {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let abs = c.abs();
            if abs.is_one() {
                s.push_str(name);
            } else {
                s.push_str(&format!("{abs}*{name}"));
            }
        }
        if s.is_empty() {
            s.push('0');
        }
        s
    }
}

/// Outcome of asking whether 1 lies in the ideal generated by an element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OneInIdeal {
    /// Pairs `(u_k, v_k)` with `sum u_k a v_k = 1`, verified exactly.
    Combination(Vec<(Element, Element)>),
    /// 1 is not in the ideal; `dimension` is the ideal's dimension (less than `dim A`).
    ProperIdeal { dimension: usize },
}

/// `Some(c)` when `a = c * u` for a nonzero `u`.
fn scalar_multiple(a: &Element, u: &Element) -> Option<Rational> {
    let k = u.0.iter().position(|v| !v.is_zero())?;
    let c = &a.0[k] / &u.0[k];
    (u.scale(&c) == *a).then_some(c)
}
