mod common;

use common::*;
use polyid_core::algebra::{mat_algebra, quaternion_algebra, Element, StructureAlgebra};
use polyid_core::identity::CheckOptions;
use polyid_core::kaplansky::{
    basis_pair_expansion, finite_rank_witness, lefts_independent, noncommuting_witness, verify_martindale,
    KaplanskyError,
};
use polyid_core::linalg;
use polyid_core::multalg::{operator_rank, MultOperator};
use polyid_core::ncpoly::standard_poly;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_instance<R: Rng>(rng: &mut R, alg: &StructureAlgebra) -> Vec<(Element, Element)> {
    let n = alg.dim();
    let r = rng.gen_range(1..=3);
    loop {
        let pairs: Vec<_> = (0..r)
            .map(|_| (random_nonzero_element(rng, n), random_element(rng, n)))
            .collect();
        if lefts_independent(alg, &pairs) {
            return pairs;
        }
    }
}

fn check_random_instances(alg: &StructureAlgebra, seed: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..100 {
        let lhs = random_instance(&mut rng, alg);
        let rhs = basis_pair_expansion(alg, &lhs).unwrap();
        let report = verify_martindale(alg, &lhs, &rhs).unwrap();
        for ((_, b), coeffs) in lhs.iter().zip(&report.coefficients) {
            let mut sum = alg.zero();
            for ((_, d), c) in rhs.iter().zip(coeffs) {
                sum.add_scaled(c, d);
            }
            assert_eq!(&sum, b);
        }
    }
}

#[test]
fn martindale_holds_on_random_m2_instances() {
    check_random_instances(&mat_algebra(2), 31);
}

#[test]
fn martindale_holds_on_random_m3_instances() {
    check_random_instances(&mat_algebra(3), 32);
}

#[test]
fn martindale_holds_on_quaternion_instances() {
    check_random_instances(&quaternion_algebra(), 33);
}

#[test]
fn noncommuting_witnesses_are_verified() {
    let mut rng = ChaCha8Rng::seed_from_u64(34);
    for alg in [mat_algebra(2), mat_algebra(3), quaternion_algebra()] {
        for _ in 0..20 {
            let b1 = random_nonzero_element(&mut rng, alg.dim());
            let b2 = random_nonzero_element(&mut rng, alg.dim());
            match noncommuting_witness(&alg, &b1, &b2) {
                Ok((_, c)) => assert_ne!(alg.mul(&alg.mul(&b1, &c), &b2), alg.mul(&alg.mul(&b2, &c), &b1)),
                Err(KaplanskyError::DependentPair { alpha, beta }) => {
                    let mut z = b1.scale(&alpha);
                    z.add_scaled(&beta, &b2);
                    assert!(z.is_zero());
                }
                Err(e) => panic!("{e}"),
            }
        }
    }
}

#[test]
fn finite_rank_witness_postconditions() {
    let m2 = mat_algebra(2);
    let w = finite_rank_witness(&m2, &standard_poly(4).unwrap(), &CheckOptions::default()).unwrap();
    assert!(!w.v.is_zero());
    let d: Vec<Vec<_>> = w.d().iter().map(|e| e.coords().to_vec()).collect();
    let base = linalg::rank_of(&d, 4);
    for c in 0..4 {
        let mut with = d.clone();
        with.push(w.v.matrix().column(c));
        assert_eq!(linalg::rank_of(&with, 4), base);
    }
    assert!(operator_rank(&w.v) <= w.d().len());
    // The presentation of V reproduces its matrix.
    let pres = w.v.presentation().unwrap().to_vec();
    assert_eq!(MultOperator::from_pairs(&m2, pres).unwrap().matrix(), w.v.matrix());
    for threads in [1, 3] {
        let opts = CheckOptions { threads, ..CheckOptions::default() };
        assert_eq!(finite_rank_witness(&m2, &standard_poly(4).unwrap(), &opts).unwrap(), w);
    }
}

#[test]
fn finite_rank_witness_on_other_identities() {
    let opts = CheckOptions::default();
    // St5 on M2 and the quaternions (degree 5 >= 4) also produce witnesses.
    for alg in [mat_algebra(2), quaternion_algebra()] {
        let w = finite_rank_witness(&alg, &standard_poly(5).unwrap(), &opts).unwrap();
        assert!(!w.v.is_zero());
    }
    assert!(matches!(
        finite_rank_witness(&mat_algebra(2), &standard_poly(3).unwrap(), &opts),
        Err(KaplanskyError::NotAnIdentity(_))
    ));
    assert!(matches!(
        finite_rank_witness(&mat_algebra(2), &polyid_core::ncpoly::NcPolynomial::zero(), &opts),
        Err(KaplanskyError::ZeroPolynomial)
    ));
}
