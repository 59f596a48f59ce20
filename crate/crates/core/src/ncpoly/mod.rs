//! Polynomials in noncommuting indeterminates `x1, x2, ...` with exact
//! rational coefficients.
//!
//! A polynomial is a finite map from words (monomials) to nonzero
//! coefficients. Terms are kept in a `BTreeMap` under degree-lexicographic
//! order, so equality is structural and display order is deterministic.

mod parse;

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use itertools::Itertools;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::Rational;

pub use parse::{parse_poly, ParseError, ParseErrorKind};

/// Variable index; `x1` has index 1.
pub type Var = u32;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("standard polynomial degree must be at least 1")]
    ZeroStandardDegree,
    #[error("operation is undefined on the zero polynomial")]
    ZeroPolynomial,
    #[error("variable index 0 is not allowed")]
    ZeroVariable,
    #[error("no substitution given for x{0}")]
    MissingSubstitution(Var),
}

/// A word in the variables; the empty word is the constant monomial 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<Var>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(i: Var) -> Self {
        assert!(i >= 1, "variable indices start at 1");
        Monomial(vec![i])
    }

    pub fn new(word: Vec<Var>) -> Result<Self, PolyError> {
        if word.contains(&0) {
            return Err(PolyError::ZeroVariable);
        }
        Ok(Monomial(word))
    }

    pub fn word(&self) -> &[Var] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn occurrences(&self, i: Var) -> usize {
        self.0.iter().filter(|&&v| v == i).count()
    }

    /// Occurrence count of each variable in the word.
    pub fn multidegree(&self) -> BTreeMap<Var, usize> {
        let mut md = BTreeMap::new();
        for &v in &self.0 {
            *md.entry(v).or_insert(0) += 1;
        }
        md
    }

    pub fn concat(&self, other: &Monomial) -> Monomial {
        let mut w = Vec::with_capacity(self.0.len() + other.0.len());
        w.extend_from_slice(&self.0);
        w.extend_from_slice(&other.0);
        Monomial(w)
    }

    /// Position of the first occurrence of `i`, if any.
    pub fn position(&self, i: Var) -> Option<usize> {
        self.0.iter().position(|&v| v == i)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let runs = self
            .0
            .iter()
            .dedup_with_count()
            .map(|(count, v)| {
                if count == 1 {
                    format!("x{v}")
                } else {
                    format!("x{v}^{count}")
                }
            })
            .join("*");
        f.write_str(&runs)
    }
}

/// Element of the free algebra over the rationals.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct NcPolynomial {
    terms: BTreeMap<Monomial, Rational>,
}

impl NcPolynomial {
    pub fn zero() -> Self {
        NcPolynomial::default()
    }

    pub fn one() -> Self {
        NcPolynomial::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        NcPolynomial::term(Monomial::one(), c)
    }

    pub fn var(i: Var) -> Self {
        NcPolynomial::term(Monomial::var(i), Rational::one())
    }

    pub fn term(m: Monomial, c: Rational) -> Self {
        let mut p = NcPolynomial::zero();
        p.add_term(m, c);
        p
    }

    /// Sums the given terms; repeated monomials are combined.
    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = NcPolynomial::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// Adds `c * m` in place, dropping the entry if it cancels.
    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; `None` stands for the degree of the zero polynomial
    /// (minus infinity).
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Terms in degree-lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn variables(&self) -> BTreeSet<Var> {
        self.terms.keys().flat_map(|m| m.0.iter().copied()).collect()
    }

    pub fn max_variable(&self) -> Option<Var> {
        self.variables().last().copied()
    }

    /// Largest number of occurrences of `i` in any monomial.
    pub fn degree_in(&self, i: Var) -> usize {
        self.terms.keys().map(|m| m.occurrences(i)).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &Rational) -> NcPolynomial {
        if c.is_zero() {
            return NcPolynomial::zero();
        }
        NcPolynomial {
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> NcPolynomial {
        let mut acc = NcPolynomial::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// `self * other - other * self`.
    pub fn commutator(&self, other: &NcPolynomial) -> NcPolynomial {
        &(self * other) - &(other * self)
    }

    /// Keeps only the terms accepted by `keep`.
    pub fn filter_terms(&self, mut keep: impl FnMut(&Monomial, &Rational) -> bool) -> NcPolynomial {
        NcPolynomial {
            terms: self
                .terms
                .iter()
                .filter(|(m, c)| keep(m, c))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Image under the algebra homomorphism `x_i -> sigma[i]`. Every variable
    /// of `self` must be mapped.
    pub fn substitute(&self, sigma: &BTreeMap<Var, NcPolynomial>) -> Result<NcPolynomial, PolyError> {
        if let Some(v) = self.variables().into_iter().find(|v| !sigma.contains_key(v)) {
            return Err(PolyError::MissingSubstitution(v));
        }
        Ok(self.substitute_with(|v| sigma.get(&v).cloned()))
    }

    /// Substitution that leaves unmapped variables fixed.
    pub fn substitute_with(&self, mut image: impl FnMut(Var) -> Option<NcPolynomial>) -> NcPolynomial {
        let mut cache: BTreeMap<Var, NcPolynomial> = BTreeMap::new();
        let mut out = NcPolynomial::zero();
        for (m, c) in &self.terms {
            let mut prod = NcPolynomial::constant(c.clone());
            for &v in &m.0 {
                let img = cache
                    .entry(v)
                    .or_insert_with(|| image(v).unwrap_or_else(|| NcPolynomial::var(v)));
                prod = &prod * &*img;
                if prod.is_zero() {
                    break;
                }
            }
            out += &prod;
        }
        out
    }

    /// Replaces the single variable `i` by `q`.
    pub fn replace_var(&self, i: Var, q: &NcPolynomial) -> NcPolynomial {
        self.substitute_with(|v| (v == i).then(|| q.clone()))
    }

    /// Renames variables by an injective map on indices.
    pub fn rename(&self, mut map: impl FnMut(Var) -> Var) -> NcPolynomial {
        NcPolynomial::from_terms(
            self.terms
                .iter()
                .map(|(m, c)| (Monomial(m.0.iter().map(|&v| map(v)).collect()), c.clone())),
        )
    }

    /// `Some(V)` when every monomial uses each variable of `V` exactly once
    /// and nothing else; `None` otherwise.
    pub fn multilinear_support(&self) -> Result<Option<BTreeSet<Var>>, PolyError> {
        let Some(first) = self.terms.keys().next() else {
            return Err(PolyError::ZeroPolynomial);
        };
        let vars: BTreeSet<Var> = first.0.iter().copied().collect();
        if vars.len() != first.degree() {
            return Ok(None);
        }
        let ok = self.terms.keys().all(|m| {
            m.degree() == vars.len() && m.0.iter().all(|v| vars.contains(v)) && {
                let set: BTreeSet<Var> = m.0.iter().copied().collect();
                set.len() == m.degree()
            }
        });
        Ok(ok.then_some(vars))
    }

    pub fn is_multilinear(&self) -> bool {
        matches!(self.multilinear_support(), Ok(Some(_)))
    }
}

/// `St_m = sum over permutations p of sgn(p) x_{p(1)} ... x_{p(m)}`, terms in
/// lexicographic permutation order.
pub fn standard_poly(m: usize) -> Result<NcPolynomial, PolyError> {
    if m == 0 {
        return Err(PolyError::ZeroStandardDegree);
    }
    let vars: Vec<Var> = (1..=m as Var).collect();
    let terms = vars.iter().copied().permutations(m).map(|perm| {
        let sign = permutation_sign(&perm);
        (Monomial(perm), Rational::from_integer(sign.into()))
    });
    Ok(NcPolynomial::from_terms(terms))
}

/// Sign of a permutation given as a sequence of distinct keys.
pub fn permutation_sign<T: Ord>(perm: &[T]) -> i32 {
    let mut inversions = 0usize;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                inversions += 1;
            }
        }
    }
    if inversions.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

impl fmt::Display for NcPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            match (idx, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let a = c.abs();
            if m.is_one() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{a}*{m}")?;
            }
        }
        Ok(())
    }
}

impl std::str::FromStr for NcPolynomial {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_poly(s)
    }
}

impl AddAssign<&NcPolynomial> for NcPolynomial {
    fn add_assign(&mut self, rhs: &NcPolynomial) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&NcPolynomial> for NcPolynomial {
    fn sub_assign(&mut self, rhs: &NcPolynomial) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

impl Add for &NcPolynomial {
    type Output = NcPolynomial;
    fn add(self, rhs: &NcPolynomial) -> NcPolynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &NcPolynomial {
    type Output = NcPolynomial;
    fn sub(self, rhs: &NcPolynomial) -> NcPolynomial {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Neg for &NcPolynomial {
    type Output = NcPolynomial;
    fn neg(self) -> NcPolynomial {
        NcPolynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

impl Mul for &NcPolynomial {
    type Output = NcPolynomial;
    fn mul(self, rhs: &NcPolynomial) -> NcPolynomial {
        let mut out = NcPolynomial::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.concat(m2), c1 * c2);
            }
        }
        out
    }
}

macro_rules! forward_owned_binop {
    ($tr:ident, $method:ident) => {
        impl $tr for NcPolynomial {
            type Output = NcPolynomial;
            fn $method(self, rhs: NcPolynomial) -> NcPolynomial {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&NcPolynomial> for NcPolynomial {
            type Output = NcPolynomial;
            fn $method(self, rhs: &NcPolynomial) -> NcPolynomial {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl Neg for NcPolynomial {
    type Output = NcPolynomial;
    fn neg(self) -> NcPolynomial {
        -&self
    }
}
