//! The integer matrix ring `M_n(Z)` inside `M_n(Q)`: ideals, the trace
//! operator `x -> sum e_ij x e_ji = tr(x) I`, central elements of ideals and
//! the `z^{-1} r` form of rational matrices.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::algebra::{mat_algebra, parse_rational, Element, StructureAlgebra};
use crate::multalg::{MultAlgError, MultOperator};
use crate::Rational;

/// Row-major integer matrix.
pub type IntMatrix = Vec<Vec<BigInt>>;
/// Row-major rational matrix.
pub type RatMatrix = Vec<Vec<Rational>>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PosnerError {
    #[error("matrix size must be positive")]
    ZeroSize,
    #[error("expected a {expected}x{expected} matrix, found {found}")]
    SizeMismatch { expected: usize, found: String },
    #[error("the zero ideal has no nonzero central element")]
    ZeroIdeal,
    #[error("{0}")]
    Parse(String),
    #[error(transparent)]
    MultAlg(#[from] MultAlgError),
    #[error("internal check failed: {0}")]
    Internal(&'static str),
}

/// The two-sided ideal `M_n(kZ)` of `M_n(Z)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealOfMnZ {
    n: usize,
    k: BigInt,
}

impl IdealOfMnZ {
    /// `k` is taken up to sign.
    pub fn new(n: usize, k: BigInt) -> Result<Self, PosnerError> {
        if n == 0 {
            return Err(PosnerError::ZeroSize);
        }
        Ok(IdealOfMnZ { n, k: k.abs() })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> &BigInt {
        &self.k
    }

    pub fn is_zero(&self) -> bool {
        self.k.is_zero()
    }

    pub fn contains(&self, m: &IntMatrix) -> bool {
        shape_ok(m, self.n)
            && m.iter().flatten().all(|v| {
                if self.k.is_zero() {
                    v.is_zero()
                } else {
                    v.is_multiple_of(&self.k)
                }
            })
    }
}

fn shape_ok<T>(m: &[Vec<T>], n: usize) -> bool {
    m.len() == n && m.iter().all(|r| r.len() == n)
}

fn shape_desc<T>(m: &[Vec<T>]) -> String {
    let cols: Vec<String> = m.iter().map(|r| r.len().to_string()).collect();
    format!("{} rows of lengths [{}]", m.len(), cols.join(","))
}

fn check_square<T>(m: &[Vec<T>], n: usize) -> Result<(), PosnerError> {
    if shape_ok(m, n) {
        Ok(())
    } else {
        Err(PosnerError::SizeMismatch {
            expected: n,
            found: shape_desc(m),
        })
    }
}

/// The ideal generated by integer matrices: `k` is the gcd of all entries,
/// since `e_ii g e_jj` isolates entries and `e_ri (.) e_js` moves them anywhere.
pub fn ideal_generated(n: usize, generators: &[IntMatrix]) -> Result<IdealOfMnZ, PosnerError> {
    for g in generators {
        check_square(g, n)?;
    }
    let k = generators
        .iter()
        .flatten()
        .flatten()
        .fold(BigInt::zero(), |acc, v| acc.gcd(v));
    IdealOfMnZ::new(n, k)
}

pub fn int_to_element(m: &IntMatrix) -> Element {
    Element::new(m.iter().flatten().map(|v| Rational::from_integer(v.clone())).collect())
}

fn element_to_int(e: &Element, n: usize) -> Option<IntMatrix> {
    e.coords()
        .chunks(n)
        .map(|row| row.iter().map(|v| v.is_integer().then(|| v.to_integer())).collect())
        .collect()
}

pub fn identity_matrix(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

pub fn scalar_matrix(n: usize, k: &BigInt) -> IntMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { k.clone() } else { BigInt::zero() }).collect())
        .collect()
}

pub fn trace(m: &IntMatrix) -> BigInt {
    m.iter().enumerate().map(|(i, r)| r[i].clone()).sum()
}

/// `T = sum_{i,j} L_{e_ij} R_{e_ji}` on `M_n(Q)`, with `T(x) = tr(x) I`.
#[derive(Clone, Debug)]
pub struct TraceOperator {
    n: usize,
    algebra: StructureAlgebra,
    operator: MultOperator,
}

impl TraceOperator {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn algebra(&self) -> &StructureAlgebra {
        &self.algebra
    }

    pub fn operator(&self) -> &MultOperator {
        &self.operator
    }

    /// The presentation pairs `(e_ij, e_ji)`.
    pub fn pairs(&self) -> &[(Element, Element)] {
        self.operator.presentation().expect("built from pairs")
    }

    pub fn apply(&self, x: &IntMatrix) -> Result<IntMatrix, PosnerError> {
        check_square(x, self.n)?;
        let y = self.operator.apply(&int_to_element(x));
        element_to_int(&y, self.n).ok_or(PosnerError::Internal("trace operator left Z"))
    }
}

/// Builds `T` and verifies `T(e_rs) = delta_rs I` on every matrix unit.
pub fn central_value_operator(n: usize) -> Result<TraceOperator, PosnerError> {
    if n == 0 {
        return Err(PosnerError::ZeroSize);
    }
    let algebra = mat_algebra(n);
    let pairs = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| (algebra.basis(i * n + j), algebra.basis(j * n + i)))
        .collect();
    let operator = MultOperator::from_pairs(&algebra, pairs)?;
    let unit = algebra.unit().expect("matrix algebra is unital").clone();
    for r in 0..n {
        for s in 0..n {
            let expected = if r == s { unit.clone() } else { algebra.zero() };
            if operator.apply(&algebra.basis(r * n + s)) != expected {
                return Err(PosnerError::Internal("T(x) differs from tr(x) I"));
            }
        }
    }
    Ok(TraceOperator { n, algebra, operator })
}

/// `T(k e_11) = k I`, a nonzero element of `I` that is central in `M_n(Z)`.
pub fn ideal_center_witness(ideal: &IdealOfMnZ) -> Result<IntMatrix, PosnerError> {
    if ideal.is_zero() {
        return Err(PosnerError::ZeroIdeal);
    }
    let n = ideal.n();
    let t = central_value_operator(n)?;
    let mut x = vec![vec![BigInt::zero(); n]; n];
    x[0][0] = ideal.k().clone();
    let w = t.apply(&x)?;
    if !ideal.contains(&x) || !ideal.contains(&w) {
        return Err(PosnerError::Internal("witness outside the ideal"));
    }
    let alg = t.algebra();
    let we = int_to_element(&w);
    let central = alg
        .basis_elements()
        .iter()
        .all(|e| alg.mul(&we, e) == alg.mul(e, &we));
    if !central || we.is_zero() {
        return Err(PosnerError::Internal("witness is not a nonzero central element"));
    }
    Ok(w)
}

/// `q = z^{-1} r` with `z` the least positive integer making `z q` integral.
pub fn central_quotient_form(q: &RatMatrix) -> (BigInt, IntMatrix) {
    let z = q
        .iter()
        .flatten()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let r = q
        .iter()
        .map(|row| row.iter().map(|v| (v * Rational::from_integer(z.clone())).to_integer()).collect())
        .collect();
    (z, r)
}

/// Parses `[[a,b],[c,d]]` (whitespace ignored) into rows of rationals.
pub fn parse_rational_matrix(text: &str) -> Result<RatMatrix, PosnerError> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let inner = s
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| PosnerError::Parse(format!("matrix must be written [[..],..], got '{text}'")))?;
    let mut rows = Vec::new();
    let mut rest = inner;
    while !rest.is_empty() {
        let body = rest
            .strip_prefix('[')
            .ok_or_else(|| PosnerError::Parse(format!("expected '[' at '{rest}'")))?;
        let close = body
            .find(']')
            .ok_or_else(|| PosnerError::Parse("unterminated row".into()))?;
        let row = body[..close]
            .split(',')
            .map(|tok| parse_rational(tok).ok_or_else(|| PosnerError::Parse(format!("malformed entry '{tok}'"))))
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(row);
        rest = &body[close + 1..];
        if let Some(r) = rest.strip_prefix(',') {
            if r.is_empty() {
                return Err(PosnerError::Parse("trailing ','".into()));
            }
            rest = r;
        } else if !rest.is_empty() {
            return Err(PosnerError::Parse(format!("expected ',' at '{rest}'")));
        }
    }
    if rows.is_empty() {
        return Err(PosnerError::Parse("empty matrix".into()));
    }
    let n = rows[0].len();
    if rows.iter().any(|r| r.len() != n) {
        return Err(PosnerError::Parse("rows have different lengths".into()));
    }
    Ok(rows)
}

/// As [`parse_rational_matrix`], rejecting non-integer entries.
pub fn parse_int_matrix(text: &str) -> Result<IntMatrix, PosnerError> {
    parse_rational_matrix(text)?
        .into_iter()
        .map(|row| {
            row.into_iter()
                .map(|v| {
                    v.is_integer()
                        .then(|| v.to_integer())
                        .ok_or_else(|| PosnerError::Parse(format!("entry {v} is not an integer")))
                })
                .collect()
        })
        .collect()
}

/// Displays a matrix as `[[a,b],[c,d]]`.
pub struct MatrixDisplay<'a, T>(pub &'a [Vec<T>]);

impl<T: fmt::Display> fmt::Display for MatrixDisplay<'_, T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "[")?;
            for (j, v) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{v}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn im(text: &str) -> IntMatrix {
        parse_int_matrix(text).unwrap()
    }

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn generated_ideals() {
        assert_eq!(ideal_generated(2, &[im("[[2,0],[0,0]]")]).unwrap().k(), &big(2));
        assert_eq!(ideal_generated(2, &[identity_matrix(2)]).unwrap().k(), &big(1));
        assert_eq!(
            ideal_generated(2, &[im("[[0,6],[0,0]]"), im("[[0,0],[4,0]]")]).unwrap().k(),
            &big(2)
        );
        assert!(ideal_generated(2, &[]).unwrap().is_zero());
        assert!(matches!(
            ideal_generated(2, &[im("[[1,2,3]]")]),
            Err(PosnerError::SizeMismatch { expected: 2, .. })
        ));
    }

    #[test]
    fn trace_operator_values() {
        let t = central_value_operator(2).unwrap();
        assert_eq!(t.pairs().len(), 4);
        assert_eq!(t.apply(&im("[[1,0],[0,0]]")).unwrap(), identity_matrix(2));
        assert_eq!(t.apply(&im("[[0,1],[0,0]]")).unwrap(), scalar_matrix(2, &big(0)));
        let t3 = central_value_operator(3).unwrap();
        assert_eq!(t3.apply(&im("[[1,0,0],[0,2,0],[0,0,3]]")).unwrap(), scalar_matrix(3, &big(6)));
    }

    #[test]
    fn center_witnesses() {
        let w = ideal_center_witness(&IdealOfMnZ::new(2, big(2)).unwrap()).unwrap();
        assert_eq!(w, scalar_matrix(2, &big(2)));
        let w = ideal_center_witness(&IdealOfMnZ::new(3, big(1)).unwrap()).unwrap();
        assert_eq!(w, identity_matrix(3));
        assert_eq!(
            ideal_center_witness(&IdealOfMnZ::new(2, big(0)).unwrap()),
            Err(PosnerError::ZeroIdeal)
        );
    }

    #[test]
    fn quotient_forms() {
        let q = parse_rational_matrix("[[1/2, 1/3], [0, 1]]").unwrap();
        assert_eq!(central_quotient_form(&q), (big(6), im("[[3,2],[0,6]]")));
        let q = parse_rational_matrix("[[7/5]]").unwrap();
        assert_eq!(central_quotient_form(&q), (big(5), im("[[7]]")));
        let q = parse_rational_matrix("[[1,-2],[3,4]]").unwrap();
        assert_eq!(central_quotient_form(&q), (big(1), im("[[1,-2],[3,4]]")));
    }

    #[test]
    fn matrix_text_roundtrip() {
        let m = im("[[1, -2],[3,4]]");
        assert_eq!(MatrixDisplay(&m).to_string(), "[[1,-2],[3,4]]");
        assert!(parse_int_matrix("[[1,2],[3]]").is_err());
        assert!(parse_int_matrix("[[1/2]]").is_err());
        assert!(parse_int_matrix("[1,2]").is_err());
        assert!(parse_int_matrix("[[1,2],]").is_err());
    }
}
