//! Stock algebras.

use num_traits::{One, Zero};

use super::{Element, StructureAlgebra};
use crate::Rational;

fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn build(dim: usize, product: impl Fn(usize, usize) -> Vec<Rational>, unit: Option<Vec<Rational>>) -> StructureAlgebra {
    let products = (0..dim)
        .map(|i| (0..dim).map(|j| product(i, j)).collect())
        .collect();
    StructureAlgebra::new(dim, products, unit).expect("built-in algebra is valid")
}

/// `M_k(Q)` on the matrix units `e_rs`, ordered row-major (`e11, e12, ..., ekk`).
pub fn mat_algebra(k: usize) -> StructureAlgebra {
    assert!(k >= 1, "matrix size must be positive");
    let dim = k * k;
    let product = |a: usize, b: usize| {
        let (r, s) = (a / k, a % k);
        let (t, u) = (b / k, b % k);
        let mut v = vec![Rational::zero(); dim];
        if s == t {
            v[r * k + u] = Rational::one();
        }
        v
    };
    let mut unit = vec![Rational::zero(); dim];
    for r in 0..k {
        unit[r * k + r] = Rational::one();
    }
    let names = (0..dim).map(|a| format!("e{}{}", a / k + 1, a % k + 1)).collect();
    build(dim, product, Some(unit)).with_names(names)
}

/// The rationals as a one-dimensional algebra with basis `1`.
pub fn rationals() -> StructureAlgebra {
    build(1, |_, _| vec![q(1)], Some(vec![q(1)])).with_names(vec!["1".into()])
}

/// Hamilton's quaternions over `Q`, basis `1, i, j, k`.
pub fn quaternion_algebra() -> StructureAlgebra {
    // (sign, index) of basis products.
    const TABLE: [[(i64, usize); 4]; 4] = [
        [(1, 0), (1, 1), (1, 2), (1, 3)],
        [(1, 1), (-1, 0), (1, 3), (-1, 2)],
        [(1, 2), (-1, 3), (-1, 0), (1, 1)],
        [(1, 3), (1, 2), (-1, 1), (-1, 0)],
    ];
    let product = |a: usize, b: usize| {
        let (sign, idx) = TABLE[a][b];
        let mut v = vec![Rational::zero(); 4];
        v[idx] = q(sign);
        v
    };
    build(4, product, Some(vec![q(1), q(0), q(0), q(0)]))
        .with_names(["1", "i", "j", "k"].map(String::from).to_vec())
}

/// `Q(sqrt(d))` as the two-dimensional algebra with basis `1, s`, `s^2 = d`.
/// `quadratic_field(-1)` is the Gaussian rationals.
pub fn quadratic_field(d: i64) -> StructureAlgebra {
    let product = |a: usize, b: usize| match (a, b) {
        (0, x) | (x, 0) => {
            let mut v = vec![q(0), q(0)];
            v[x] = q(1);
            v
        }
        _ => vec![q(d), q(0)],
    };
    build(2, product, Some(vec![q(1), q(0)])).with_names(vec!["1".into(), "s".into()])
}

/// `k`-dimensional algebra with all products zero (no unit).
pub fn zero_mult_algebra(k: usize) -> StructureAlgebra {
    assert!(k >= 1, "dimension must be positive");
    build(k, |_, _| vec![Rational::zero(); k], None)
}

/// Upper triangular `k x k` matrices on the units `e_rs`, `r <= s`, row-major.
pub fn upper_triangular_algebra(k: usize) -> StructureAlgebra {
    assert!(k >= 1, "matrix size must be positive");
    let units: Vec<(usize, usize)> = (0..k)
        .flat_map(|r| (r..k).map(move |s| (r, s)))
        .collect();
    let dim = units.len();
    let index = |r: usize, s: usize| units.iter().position(|&u| u == (r, s));
    let product = |a: usize, b: usize| {
        let (r, s) = units[a];
        let (t, u) = units[b];
        let mut v = vec![Rational::zero(); dim];
        if s == t {
            v[index(r, u).expect("upper triangular closed under product")] = Rational::one();
        }
        v
    };
    let mut unit = vec![Rational::zero(); dim];
    for r in 0..k {
        unit[index(r, r).expect("diagonal unit")] = Rational::one();
    }
    let names = units.iter().map(|(r, s)| format!("e{}{}", r + 1, s + 1)).collect();
    build(dim, product, Some(unit)).with_names(names)
}

/// `A (+) B` with basis the basis of `A` followed by that of `B`.
pub fn direct_sum(a: &StructureAlgebra, b: &StructureAlgebra) -> StructureAlgebra {
    let (n, m) = (a.dim(), b.dim());
    let dim = n + m;
    let product = |i: usize, j: usize| {
        let mut v = vec![Rational::zero(); dim];
        if i < n && j < n {
            for (k, c) in a.basis_product(i, j) {
                v[*k] = c.clone();
            }
        } else if i >= n && j >= n {
            for (k, c) in b.basis_product(i - n, j - n) {
                v[n + *k] = c.clone();
            }
        }
        v
    };
    let unit = match (a.unit(), b.unit()) {
        (Some(ua), Some(ub)) => {
            let mut u = ua.coords().to_vec();
            u.extend_from_slice(ub.coords());
            Some(u)
        }
        _ => None,
    };
    let names = a
        .names()
        .iter()
        .map(|s| format!("{s}_a"))
        .chain(b.names().iter().map(|s| format!("{s}_b")))
        .collect();
    build(dim, product, unit).with_names(names)
}

impl Element {
    /// Embeds an element of `M_k(Q)` given as a row-major `k x k` array.
    pub fn from_matrix_rows(rows: &[Vec<Rational>]) -> Element {
        Element::new(rows.iter().flat_map(|r| r.iter().cloned()).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shipped_algebras_are_associative_and_unital_where_expected() {
        for k in 1..=4 {
            let m = mat_algebra(k);
            assert_eq!(m.dim(), k * k);
            assert!(m.unit().is_some());
        }
        assert_eq!(upper_triangular_algebra(3).dim(), 6);
        assert!(zero_mult_algebra(3).unit().is_none());
        let s = direct_sum(&mat_algebra(2), &rationals());
        assert_eq!(s.dim(), 5);
        assert!(s.unit().is_some());
        assert!(direct_sum(&rationals(), &zero_mult_algebra(1)).unit().is_none());
    }

    #[test]
    fn gaussian_rationals_square_to_minus_one() {
        let g = quadratic_field(-1);
        let s = g.basis(1);
        assert_eq!(g.mul(&s, &s), Element::from_integers(&[-1, 0]));
    }

    #[test]
    fn direct_sum_center_dimension_adds() {
        let a = mat_algebra(2);
        let b = upper_triangular_algebra(2);
        let s = direct_sum(&a, &b);
        assert_eq!(s.center().len(), a.center().len() + b.center().len());
        let t = direct_sum(&quadratic_field(2), &quaternion_algebra());
        assert_eq!(t.center().len(), 2 + 1);
    }

    #[test]
    fn names_follow_matrix_units() {
        assert_eq!(mat_algebra(2).names(), ["e11", "e12", "e21", "e22"]);
        assert_eq!(upper_triangular_algebra(2).names(), ["e11", "e12", "e22"]);
    }
}
