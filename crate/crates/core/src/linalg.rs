//! Exact linear algebra over the rationals.
//!
//! Rank and echelon forms are computed by fraction-free elimination: every
//! row is scaled to a primitive integer vector, elimination uses integer
//! cross-multiplication, and each updated row is divided by the gcd of its
//! entries. Rational reduced row echelon forms (needed for kernels and
//! solving) are recovered from the integer echelon form by back-substitution.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::Rational;

/// Dense matrix of exact rationals, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = QMatrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Rational::one();
        }
        m
    }

    /// Builds a matrix from row vectors. Panics if the rows are ragged.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(nrows * ncols);
        for row in rows {
            assert_eq!(row.len(), ncols, "ragged matrix rows");
            data.extend(row);
        }
        QMatrix {
            rows: nrows,
            cols: ncols,
            data,
        }
    }

    /// Builds a matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns(rows: usize, columns: &[Vec<Rational>]) -> Self {
        let mut m = QMatrix::zeros(rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (r, v) in col.iter().enumerate() {
                m.data[r * columns.len() + c] = v.clone();
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn column(&self, c: usize) -> Vec<Rational> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    /// Row-major flattening.
    pub fn as_slice(&self) -> &[Rational] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> QMatrix {
        let mut t = QMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c).clone();
            }
        }
        t
    }

    pub fn scale(&self, s: &Rational) -> QMatrix {
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| v * s).collect(),
        }
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols, "dimension mismatch in matrix-vector product");
        (0..self.rows)
            .map(|r| {
                let mut acc = Rational::zero();
                for (a, b) in self.row(r).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += a * b;
                    }
                }
                acc
            })
            .collect()
    }

    pub fn rank(&self) -> usize {
        Echelon::from_rows(&self.row_vecs(), self.cols).rank()
    }

    /// Basis of the right null space `{x : self * x = 0}`.
    pub fn kernel(&self) -> Vec<Vec<Rational>> {
        Rref::from_rows(&self.row_vecs(), self.cols).kernel()
    }
}

impl Add for &QMatrix {
    type Output = QMatrix;
    fn add(self, rhs: &QMatrix) -> QMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &QMatrix {
    type Output = QMatrix;
    fn sub(self, rhs: &QMatrix) -> QMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &QMatrix {
    type Output = QMatrix;
    fn neg(self) -> QMatrix {
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| -a).collect(),
        }
    }
}

impl Mul for &QMatrix {
    type Output = QMatrix;
    fn mul(self, rhs: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in matrix product");
        let mut out = QMatrix::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = rhs.get(k, c);
                    if !b.is_zero() {
                        out.data[r * rhs.cols + c] += a * b;
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, ",")?;
            }
            write!(f, "[")?;
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Scales a rational vector to a primitive integer vector with the same
/// span (positive multiple). Zero vectors map to zero vectors.
pub fn primitive_integer_row(row: &[Rational]) -> Vec<BigInt> {
    let lcm = row
        .iter()
        .filter(|v| !v.is_zero())
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let mut ints: Vec<BigInt> = row
        .iter()
        .map(|v| {
            if v.is_zero() {
                BigInt::zero()
            } else {
                v.numer() * (&lcm / v.denom())
            }
        })
        .collect();
    make_primitive(&mut ints);
    ints
}

fn make_primitive(row: &mut [BigInt]) {
    let mut g = BigInt::zero();
    for v in row.iter() {
        if !v.is_zero() {
            g = g.gcd(v);
            if g.is_one() {
                return;
            }
        }
    }
    if g.is_zero() || g.is_one() {
        return;
    }
    for v in row.iter_mut() {
        if !v.is_zero() {
            *v /= &g;
        }
    }
}

/// Integer row echelon form produced by fraction-free elimination.
#[derive(Clone, Debug)]
pub struct Echelon {
    cols: usize,
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn from_rows(rows: &[Vec<Rational>], cols: usize) -> Self {
        let mut m: Vec<Vec<BigInt>> = rows
            .iter()
            .map(|r| {
                assert_eq!(r.len(), cols, "row length mismatch");
                primitive_integer_row(r)
            })
            .filter(|r| r.iter().any(|v| !v.is_zero()))
            .collect();
        let mut pivots = Vec::new();
        let mut next = 0;
        for c in 0..cols {
            if next == m.len() {
                break;
            }
            // Exact partial pivoting: smallest nonzero magnitude in the column.
            let choice = (next..m.len())
                .filter(|&i| !m[i][c].is_zero())
                .min_by_key(|&i| m[i][c].magnitude().bits());
            let Some(p) = choice else { continue };
            m.swap(next, p);
            let (head, tail) = m.split_at_mut(next + 1);
            let prow = &head[next];
            let support: Vec<usize> = (c..cols).filter(|&k| !prow[k].is_zero()).collect();
            for row in tail.iter_mut() {
                if row[c].is_zero() {
                    continue;
                }
                let g = row[c].gcd(&prow[c]);
                let row_mul = &prow[c] / &g;
                let piv_mul = &row[c] / &g;
                if !row_mul.is_one() {
                    for v in row[c..].iter_mut() {
                        if !v.is_zero() {
                            *v *= &row_mul;
                        }
                    }
                }
                for &k in &support {
                    row[k] -= &piv_mul * &prow[k];
                }
                make_primitive(row);
            }
            pivots.push(c);
            next += 1;
        }
        m.truncate(next);
        Echelon {
            cols,
            rows: m,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }
}

/// Reduced row echelon form over the rationals.
#[derive(Clone, Debug)]
pub struct Rref {
    cols: usize,
    rows: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl Rref {
    pub fn from_rows(rows: &[Vec<Rational>], cols: usize) -> Self {
        Rref::from_echelon(&Echelon::from_rows(rows, cols))
    }

    pub fn from_echelon(ech: &Echelon) -> Self {
        let mut rows: Vec<Vec<Rational>> = ech
            .rows
            .iter()
            .map(|r| r.iter().cloned().map(Rational::from_integer).collect())
            .collect();
        let pivots = ech.pivots.clone();
        for i in (0..rows.len()).rev() {
            let p = pivots[i];
            let inv = rows[i][p].recip();
            for v in rows[i][p..].iter_mut() {
                if !v.is_zero() {
                    *v *= &inv;
                }
            }
            let (above, rest) = rows.split_at_mut(i);
            let prow = &rest[0];
            for row in above.iter_mut() {
                if row[p].is_zero() {
                    continue;
                }
                let factor = row[p].clone();
                for k in p..ech.cols {
                    if !prow[k].is_zero() {
                        row[k] -= &factor * &prow[k];
                    }
                }
            }
        }
        Rref {
            cols: ech.cols,
            rows,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    /// Basis of the null space of the row space, one vector per free column
    /// (in increasing column order).
    pub fn kernel(&self) -> Vec<Vec<Rational>> {
        kernel_from_reduced(self.cols, self.pivots.iter().copied().zip(self.rows.iter()))
    }
}

fn kernel_from_reduced<'a>(
    cols: usize,
    rows: impl Iterator<Item = (usize, &'a Vec<Rational>)> + Clone,
) -> Vec<Vec<Rational>> {
    let mut is_pivot = vec![false; cols];
    for (p, _) in rows.clone() {
        is_pivot[p] = true;
    }
    (0..cols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut x = vec![Rational::zero(); cols];
            x[f] = Rational::one();
            for (p, row) in rows.clone() {
                if !row[f].is_zero() {
                    x[p] = -row[f].clone();
                }
            }
            x
        })
        .collect()
}

/// Solves `a * x = b`, returning one solution (free variables set to zero)
/// or `None` when the system is inconsistent.
pub fn solve(a: &QMatrix, b: &[Rational]) -> Option<Vec<Rational>> {
    assert_eq!(a.nrows(), b.len(), "right-hand side length mismatch");
    let cols = a.ncols();
    let augmented: Vec<Vec<Rational>> = (0..a.nrows())
        .map(|r| {
            let mut row = a.row(r).to_vec();
            row.push(b[r].clone());
            row
        })
        .collect();
    let rref = Rref::from_rows(&augmented, cols + 1);
    if rref.pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![Rational::zero(); cols];
    for (p, row) in rref.pivots.iter().zip(&rref.rows) {
        x[*p] = row[cols].clone();
    }
    Some(x)
}

/// Coefficients expressing `target` as a combination of `vectors`, if any.
pub fn express_in_span(vectors: &[Vec<Rational>], target: &[Rational]) -> Option<Vec<Rational>> {
    if vectors.is_empty() {
        return target.iter().all(Zero::is_zero).then(Vec::new);
    }
    solve(&QMatrix::from_columns(target.len(), vectors), target)
}

/// Rank of a list of vectors of common length `cols`.
pub fn rank_of(vectors: &[Vec<Rational>], cols: usize) -> usize {
    Echelon::from_rows(vectors, cols).rank()
}

/// A row space grown one vector at a time, kept in reduced echelon form.
#[derive(Clone, Debug)]
pub struct RowSpace {
    cols: usize,
    rows: Vec<(usize, Vec<Rational>)>,
}

impl RowSpace {
    pub fn new(cols: usize) -> Self {
        RowSpace {
            cols,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    fn reduce(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        let mut v = v.to_vec();
        for (p, row) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let c = v[*p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x -= &c * r;
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    /// Adds `v`; returns whether it increased the rank.
    pub fn insert(&mut self, v: &[Rational]) -> bool {
        let mut v = self.reduce(v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].recip();
        for x in v.iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        for (_, row) in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let c = row[p].clone();
            for (x, r) in row.iter_mut().zip(&v) {
                if !r.is_zero() {
                    *x -= &c * r;
                }
            }
        }
        self.rows.push((p, v));
        true
    }

    /// Null space of the accumulated rows, one basis vector per non-pivot
    /// column in increasing order.
    pub fn kernel(&self) -> Vec<Vec<Rational>> {
        kernel_from_reduced(self.cols, self.rows.iter().map(|(p, r)| (*p, r)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn qf(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn mat(rows: &[&[i64]]) -> QMatrix {
        QMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| q(v)).collect()).collect())
    }

    #[test]
    fn rank_of_small_matrices() {
        assert_eq!(mat(&[&[1, 2], &[2, 4]]).rank(), 1);
        assert_eq!(mat(&[&[1, 2], &[3, 4]]).rank(), 2);
        assert_eq!(QMatrix::zeros(3, 3).rank(), 0);
        assert_eq!(QMatrix::identity(5).rank(), 5);
        assert_eq!(mat(&[&[0, 0, 1], &[0, 1, 0], &[0, 1, 1]]).rank(), 2);
    }

    #[test]
    fn rank_with_fractions() {
        let m = QMatrix::from_rows(vec![
            vec![qf(1, 2), qf(1, 3)],
            vec![qf(3, 2), q(1)],
        ]);
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let m = mat(&[&[1, 2, 3, 4], &[2, 4, 6, 8], &[1, 0, 1, 0]]);
        let ker = m.kernel();
        assert_eq!(ker.len(), 2);
        for v in &ker {
            assert!(m.mul_vec(v).iter().all(Zero::is_zero));
        }
        assert_eq!(rank_of(&ker, 4), 2);
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let a = mat(&[&[1, 1], &[1, -1]]);
        let x = solve(&a, &[q(3), q(1)]).unwrap();
        assert_eq!(x, vec![q(2), q(1)]);
        let b = mat(&[&[1, 1], &[2, 2]]);
        assert!(solve(&b, &[q(1), q(3)]).is_none());
        let x = solve(&b, &[q(1), q(2)]).unwrap();
        assert_eq!(b.mul_vec(&x), vec![q(1), q(2)]);
    }

    #[test]
    fn express_in_span_finds_coefficients() {
        let vs = vec![vec![q(1), q(0), q(1)], vec![q(0), q(1), q(1)]];
        let c = express_in_span(&vs, &[q(2), q(3), q(5)]).unwrap();
        assert_eq!(c, vec![q(2), q(3)]);
        assert!(express_in_span(&vs, &[q(1), q(1), q(1)]).is_none());
        assert_eq!(express_in_span(&[], &[q(0), q(0)]), Some(vec![]));
        assert!(express_in_span(&[], &[q(1)]).is_none());
    }

    #[test]
    fn row_space_incremental() {
        let mut rs = RowSpace::new(3);
        assert!(rs.insert(&[q(1), q(2), q(3)]));
        assert!(!rs.insert(&[q(2), q(4), q(6)]));
        assert!(rs.insert(&[q(0), q(1), q(1)]));
        assert_eq!(rs.rank(), 2);
        assert!(rs.contains(&[q(1), q(3), q(4)]));
        let ker = rs.kernel();
        assert_eq!(ker.len(), 1);
        let v = &ker[0];
        let dot = |a: &[Rational]| a.iter().zip(v).fold(q(0), |s, (x, y)| s + x * y);
        assert!(dot(&[q(1), q(2), q(3)]).is_zero());
        assert!(dot(&[q(0), q(1), q(1)]).is_zero());
    }

    #[test]
    fn rank_matches_transpose_rank() {
        let m = mat(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9], &[1, 1, 1]]);
        assert_eq!(m.rank(), 2);
        assert_eq!(m.transpose().rank(), 2);
    }

    #[test]
    fn primitive_rows() {
        let r = primitive_integer_row(&[qf(1, 2), qf(-1, 3), q(0)]);
        assert_eq!(r, vec![BigInt::from(3), BigInt::from(-2), BigInt::from(0)]);
    }
}
