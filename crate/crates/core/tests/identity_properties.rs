mod common;

use std::collections::BTreeMap;

use common::*;
use itertools::Itertools;
use polyid_core::algebra::{
    mat_algebra, quadratic_field, quaternion_algebra, rationals, upper_triangular_algebra, zero_mult_algebra,
    StructureAlgebra,
};
use polyid_core::identity::{
    eval_poly, identity_space, is_central_polynomial, is_identity, is_identity_multilinear,
    min_multilinear_identity_degree, CheckOptions,
};
use polyid_core::ncpoly::{parse_poly, standard_poly, Monomial, NcPolynomial, Var};
use polyid_core::Rational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn algebras() -> Vec<StructureAlgebra> {
    vec![
        rationals(),
        quadratic_field(-1),
        zero_mult_algebra(2),
        upper_triangular_algebra(2),
        mat_algebra(2),
        quaternion_algebra(),
    ]
}

fn coords_over_perms(p: &NcPolynomial, m: usize) -> Vec<Rational> {
    (1..=m as Var)
        .permutations(m)
        .map(|w| p.coefficient(&Monomial::new(w).unwrap()))
        .collect()
}

fn random_assignment<R: Rng>(rng: &mut R, alg: &StructureAlgebra, vars: &[Var]) -> BTreeMap<Var, polyid_core::algebra::Element> {
    vars.iter().map(|&v| (v, random_element(rng, alg.dim()))).collect()
}

#[test]
fn basis_tuple_criterion_is_sound() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let opts = CheckOptions::default();
    let mut identities_seen = 0;
    for round in 0..50 {
        let alg = &algebras()[round % 6];
        let m = rng.gen_range(2..=3);
        // Half the cases: a random element of the identity space, so that
        // genuine identities are exercised.
        let f = if round % 2 == 0 {
            let basis = identity_space(alg, m).unwrap();
            if basis.is_empty() {
                random_multilinear(&mut rng, m)
            } else {
                let mut f = NcPolynomial::zero();
                for b in &basis {
                    f += &b.scale(&random_rational(&mut rng));
                }
                if f.is_zero() { basis[0].clone() } else { f }
            }
        } else {
            random_multilinear(&mut rng, m)
        };
        let vars: Vec<Var> = f.variables().into_iter().collect();
        let check = is_identity_multilinear(alg, &f, &opts).unwrap();
        match &check.counterexample {
            None => {
                identities_seen += 1;
                for _ in 0..100 {
                    let sigma = random_assignment(&mut rng, alg, &vars);
                    assert!(eval_poly(alg, &f, &sigma).unwrap().is_zero(), "{f}");
                }
            }
            Some(cex) => {
                let sigma = cex.assignment.iter().map(|&(v, b)| (v, alg.basis(b))).collect();
                assert_eq!(eval_poly(alg, &f, &sigma).unwrap(), cex.value);
                assert!(!cex.value.is_zero());
            }
        }
    }
    assert!(identities_seen >= 10);
}

#[test]
fn fast_path_agrees_with_exhaustive_path() {
    let m2 = mat_algebra(2);
    let slow = CheckOptions {
        threads: 1,
        alternating_fast_path: false,
    };
    for m in [3, 4] {
        let st = standard_poly(m).unwrap();
        let fast = is_identity_multilinear(&m2, &st, &CheckOptions::default()).unwrap();
        let full = is_identity_multilinear(&m2, &st, &slow).unwrap();
        assert!(fast.alternating && !full.alternating);
        assert_eq!(fast.holds(), full.holds());
        assert_eq!(fast.counterexample, full.counterexample);
    }
}

#[test]
fn identity_status_is_invariant_under_scaling_and_renumbering() {
    let opts = CheckOptions::default();
    let polys = ["x1*x2 - x2*x1", "x1^2", "[x1,x2]^2", "St(3)", "x1*x2*x1 - x1^2*x2", "[[x1,x2]^2,x3]"];
    for alg in algebras() {
        for text in polys {
            let f = parse_poly(text).unwrap();
            let base = is_identity(&alg, &f, &opts).unwrap().holds();
            let scaled = f.scale(&Rational::new((-3).into(), 7.into()));
            assert_eq!(is_identity(&alg, &scaled, &opts).unwrap().holds(), base);
            let renamed = f.rename(|v| 2 * v + 3);
            assert_eq!(is_identity(&alg, &renamed, &opts).unwrap().holds(), base);
        }
    }
}

#[test]
fn identity_spaces_are_identities_and_permutation_closed() {
    let opts = CheckOptions::default();
    for alg in [mat_algebra(2), upper_triangular_algebra(2), quadratic_field(-1)] {
        for m in 2..=4 {
            let basis = identity_space(&alg, m).unwrap();
            let coords: Vec<Vec<Rational>> = basis.iter().map(|p| coords_over_perms(p, m)).collect();
            for p in &basis {
                assert!(is_identity_multilinear(&alg, p, &opts).unwrap().holds());
                // Generators of S_m: adjacent transpositions.
                for i in 1..m as Var {
                    let swapped = p.rename(|v| if v == i { i + 1 } else if v == i + 1 { i } else { v });
                    let target = coords_over_perms(&swapped, m);
                    assert!(polyid_core::linalg::express_in_span(&coords, &target).is_some());
                }
            }
        }
    }
}

#[test]
fn identity_space_examples() {
    let m2 = mat_algebra(2);
    assert!(identity_space(&m2, 3).unwrap().is_empty());
    let basis = identity_space(&m2, 4).unwrap();
    let coords: Vec<Vec<Rational>> = basis.iter().map(|p| coords_over_perms(p, 4)).collect();
    let st4 = coords_over_perms(&standard_poly(4).unwrap(), 4);
    assert!(polyid_core::linalg::express_in_span(&coords, &st4).is_some());
    assert!(identity_space(&rationals(), 2).unwrap().contains(&standard_poly(2).unwrap()));
}

#[test]
fn standard_polynomials_vanish_on_repeated_arguments() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    let m2 = mat_algebra(2);
    for m in 2..=4 {
        let st = standard_poly(m).unwrap();
        for _ in 0..10 {
            let mut sigma = random_assignment(&mut rng, &m2, &(1..=m as Var).collect::<Vec<_>>());
            let i = rng.gen_range(1..=m as Var);
            let j = loop {
                let j = rng.gen_range(1..=m as Var);
                if j != i {
                    break j;
                }
            };
            let a = sigma[&i].clone();
            sigma.insert(j, a);
            assert!(eval_poly(&m2, &st, &sigma).unwrap().is_zero());
        }
    }
}

#[test]
fn identity_examples() {
    let opts = CheckOptions::default();
    assert!(is_identity(&rationals(), &standard_poly(2).unwrap(), &opts).unwrap().holds());
    assert!(is_identity(&zero_mult_algebra(2), &standard_poly(3).unwrap(), &opts).unwrap().holds());
    assert!(!is_identity(&mat_algebra(2), &parse_poly("x1^2").unwrap(), &opts).unwrap().holds());
    assert!(is_identity_multilinear(&zero_mult_algebra(2), &parse_poly("x1*x2 + x2*x1").unwrap(), &opts)
        .unwrap()
        .holds());
}

#[test]
fn central_polynomial_examples() {
    let opts = CheckOptions::default();
    let hall = parse_poly("[x1,x2]^2").unwrap();
    assert!(is_central_polynomial(&mat_algebra(2), &hall, &opts).unwrap().holds());
    let on_m3 = is_central_polynomial(&mat_algebra(3), &hall, &opts).unwrap();
    assert!(!on_m3.values_central());
    assert!(!on_m3.holds());
    assert!(!is_central_polynomial(&mat_algebra(2), &standard_poly(4).unwrap(), &opts).unwrap().holds());
}

#[test]
fn minimal_identity_degrees() {
    assert_eq!(min_multilinear_identity_degree(&mat_algebra(2), None).unwrap().0, 4);
    assert_eq!(min_multilinear_identity_degree(&rationals(), None).unwrap().0, 2);
    assert_eq!(min_multilinear_identity_degree(&zero_mult_algebra(2), None).unwrap().0, 2);
}
