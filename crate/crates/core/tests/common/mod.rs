#![allow(dead_code)]

use itertools::Itertools;
use polyid_core::algebra::Element;
use polyid_core::ncpoly::{Monomial, NcPolynomial, Var};
use polyid_core::Rational;
use proptest::prelude::*;
use rand::Rng;

pub fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

pub fn rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=4).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

pub fn nonzero_rational() -> impl Strategy<Value = Rational> {
    rational().prop_filter("nonzero", |r| *r != q(0))
}

pub fn monomial(max_var: Var, max_len: usize) -> impl Strategy<Value = Monomial> {
    prop::collection::vec(1..=max_var, 0..=max_len).prop_map(|w| Monomial::new(w).unwrap())
}

pub fn poly(max_var: Var, max_len: usize, max_terms: usize) -> impl Strategy<Value = NcPolynomial> {
    prop::collection::vec((monomial(max_var, max_len), rational()), 0..=max_terms)
        .prop_map(NcPolynomial::from_terms)
}

pub fn nonzero_poly(max_var: Var, max_len: usize, max_terms: usize) -> impl Strategy<Value = NcPolynomial> {
    poly(max_var, max_len, max_terms).prop_filter("nonzero", |p| !p.is_zero())
}

/// Multihomogeneous polynomial: words are random rearrangements of one
/// fixed multiset of variables.
pub fn multihomogeneous(max_var: Var, max_len: usize, max_terms: usize) -> impl Strategy<Value = NcPolynomial> {
    (prop::collection::vec(1..=max_var, 1..=max_len), 1..=max_terms)
        .prop_flat_map(|(letters, terms)| {
            let len = letters.len();
            prop::collection::vec((Just(letters.clone()).prop_shuffle(), nonzero_rational()), terms)
                .prop_map(move |ts| {
                    NcPolynomial::from_terms(ts.into_iter().map(|(w, c)| (Monomial::new(w).unwrap(), c)))
                })
                .prop_filter("nonzero", move |p| !p.is_zero() && len > 0)
        })
}

pub fn random_rational<R: Rng>(rng: &mut R) -> Rational {
    Rational::new(rng.gen_range(-5i64..=5).into(), rng.gen_range(1i64..=3).into())
}

pub fn random_element<R: Rng>(rng: &mut R, n: usize) -> Element {
    Element::new((0..n).map(|_| random_rational(rng)).collect())
}

pub fn random_nonzero_element<R: Rng>(rng: &mut R, n: usize) -> Element {
    loop {
        let e = random_element(rng, n);
        if !e.is_zero() {
            return e;
        }
    }
}

/// Random multilinear polynomial in `x1..xm` with small integer coefficients.
pub fn random_multilinear<R: Rng>(rng: &mut R, m: usize) -> NcPolynomial {
    loop {
        let p = NcPolynomial::from_terms((1..=m as Var).permutations(m).filter_map(|w| {
            let c = rng.gen_range(-2i64..=2);
            (c != 0 && rng.gen_bool(0.5)).then(|| (Monomial::new(w).unwrap(), q(c)))
        }));
        if !p.is_zero() {
            return p;
        }
    }
}
