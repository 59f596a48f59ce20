//! Evaluating polynomials on algebras; identity, central-polynomial and
//! identity-space computations.
//!
//! A multilinear polynomial vanishes on an algebra iff it vanishes on every
//! tuple of basis elements, so multilinear checks are finite scans. General
//! polynomials are reduced to that case: each multihomogeneous component is
//! fully linearized, and over the rationals a component is an identity iff
//! its linearization is (substituting the split variables back recovers a
//! positive multiple of the component).

use std::collections::BTreeMap;

use itertools::Itertools;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::algebra::{AlgebraError, Element, SparseVec, StructureAlgebra};
use crate::enumerate::{find_first, Combinations, Odometer, TupleSpace};
use crate::linalg::{primitive_integer_row, RowSpace};
use crate::linearize::{linearize_homogeneous_traced, multihomogeneous_components, LinearizeError};
use crate::ncpoly::{Monomial, NcPolynomial, Var};
use crate::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IdentityError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Linearize(#[from] LinearizeError),
    #[error("polynomial is not multilinear")]
    NotMultilinear,
    #[error("operation is undefined on the zero polynomial")]
    ZeroPolynomial,
    #[error("no value assigned to x{0}")]
    MissingAssignment(Var),
    #[error("constant terms cannot be evaluated in an algebra without unit")]
    ConstantWithoutUnit,
    #[error("algebra has no unit")]
    NotUnital,
    #[error("search over {base}^{width} basis tuples is too large")]
    SearchTooLarge { base: usize, width: usize },
    #[error("degree must be positive")]
    ZeroDegree,
    #[error("no multilinear identity of degree at most {cap}")]
    DegreeCapExceeded { cap: usize },
}

/// Tuning for basis-tuple scans. Results never depend on these settings.
#[derive(Clone, Debug)]
pub struct CheckOptions {
    pub threads: usize,
    /// Scan only strictly increasing tuples when the polynomial alternates.
    pub alternating_fast_path: bool,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            threads: 1,
            alternating_fast_path: true,
        }
    }
}

/// Value of `f` under `x_v -> sigma[v]`; monomials are left-to-right products.
pub fn eval_poly(
    alg: &StructureAlgebra,
    f: &NcPolynomial,
    sigma: &BTreeMap<Var, Element>,
) -> Result<Element, IdentityError> {
    for v in f.variables() {
        let a = sigma.get(&v).ok_or(IdentityError::MissingAssignment(v))?;
        if a.dim() != alg.dim() {
            return Err(AlgebraError::DimensionMismatch {
                expected: alg.dim(),
                found: a.dim(),
            }
            .into());
        }
    }
    let mut out = alg.zero();
    for (m, c) in f.terms() {
        let value = alg
            .product_of(m.word().iter().map(|v| &sigma[v]))
            .ok_or(IdentityError::ConstantWithoutUnit)?;
        out.add_scaled(c, &value);
    }
    Ok(out)
}

/// A basis tuple on which a multilinear polynomial does not vanish.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    /// `(variable, zero-based basis index)` in increasing variable order.
    pub assignment: Vec<(Var, usize)>,
    pub value: Element,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultilinearCheck {
    /// First failing tuple in odometer order, if any.
    pub counterexample: Option<Counterexample>,
    /// Whether the scan was restricted to strictly increasing tuples.
    pub alternating: bool,
    /// Size of the scanned tuple space.
    pub search_space: u64,
}

impl MultilinearCheck {
    pub fn holds(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Prefix tree of words over variable slots; leaves carry term indices.
struct WordTrie {
    nodes: Vec<TrieNode>,
}

#[derive(Default)]
struct TrieNode {
    children: Vec<(usize, usize)>,
    leaf: Option<usize>,
}

impl WordTrie {
    fn new<'a>(words: impl IntoIterator<Item = &'a [usize]>) -> Self {
        let mut nodes = vec![TrieNode::default()];
        for (leaf, word) in words.into_iter().enumerate() {
            let mut at = 0;
            for &slot in word {
                at = match nodes[at].children.iter().find(|(s, _)| *s == slot) {
                    Some(&(_, child)) => child,
                    None => {
                        nodes.push(TrieNode::default());
                        let child = nodes.len() - 1;
                        nodes[at].children.push((slot, child));
                        child
                    }
                };
            }
            nodes[at].leaf = Some(leaf);
        }
        WordTrie { nodes }
    }

    /// Calls `visit(leaf, product)` for every nonzero word product under
    /// the slot assignment `tuple` (slot -> basis index).
    fn for_each_product(
        &self,
        alg: &StructureAlgebra,
        tuple: &[usize],
        scratch: &mut Vec<Rational>,
        visit: &mut impl FnMut(usize, &SparseVec),
    ) {
        for &(slot, child) in &self.nodes[0].children {
            let start = vec![(tuple[slot], Rational::one())];
            self.walk(alg, child, &start, tuple, scratch, visit);
        }
    }

    fn walk(
        &self,
        alg: &StructureAlgebra,
        node: usize,
        partial: &SparseVec,
        tuple: &[usize],
        scratch: &mut Vec<Rational>,
        visit: &mut impl FnMut(usize, &SparseVec),
    ) {
        let n = &self.nodes[node];
        if let Some(leaf) = n.leaf {
            visit(leaf, partial);
        }
        for &(slot, child) in &n.children {
            let next = alg.mul_sparse_basis(partial, tuple[slot], scratch);
            if !next.is_empty() {
                self.walk(alg, child, &next, tuple, scratch, visit);
            }
        }
    }
}

/// Evaluates a fixed multilinear polynomial on basis tuples.
struct MultilinearEvaluator<'a> {
    alg: &'a StructureAlgebra,
    vars: Vec<Var>,
    trie: WordTrie,
    coeffs: Vec<Rational>,
}

struct EvalState {
    scratch: Vec<Rational>,
    acc: Vec<Rational>,
}

impl<'a> MultilinearEvaluator<'a> {
    fn new(alg: &'a StructureAlgebra, f: &NcPolynomial, vars: Vec<Var>) -> Self {
        let slot: BTreeMap<Var, usize> = vars.iter().enumerate().map(|(s, &v)| (v, s)).collect();
        let words: Vec<Vec<usize>> = f
            .terms()
            .map(|(m, _)| m.word().iter().map(|v| slot[v]).collect())
            .collect();
        let trie = WordTrie::new(words.iter().map(Vec::as_slice));
        let coeffs = f.terms().map(|(_, c)| c.clone()).collect();
        MultilinearEvaluator {
            alg,
            vars,
            trie,
            coeffs,
        }
    }

    fn state(&self) -> EvalState {
        EvalState {
            scratch: Vec::new(),
            acc: vec![Rational::zero(); self.alg.dim()],
        }
    }

    fn value(&self, tuple: &[usize], st: &mut EvalState) -> Element {
        for a in st.acc.iter_mut() {
            a.set_zero();
        }
        let acc = &mut st.acc;
        let coeffs = &self.coeffs;
        self.trie.for_each_product(self.alg, tuple, &mut st.scratch, &mut |leaf, prod| {
            let c = &coeffs[leaf];
            for (k, v) in prod {
                acc[*k] += c * v;
            }
        });
        Element::new(acc.clone())
    }

    fn counterexample(&self, tuple: &[usize], st: &mut EvalState) -> Option<Counterexample> {
        let value = self.value(tuple, st);
        (!value.is_zero()).then(|| Counterexample {
            assignment: self.vars.iter().copied().zip(tuple.iter().copied()).collect(),
            value,
        })
    }
}

/// Sign-equivariance under the adjacent transpositions of the variable set,
/// which generate the full symmetric group.
pub fn is_alternating(f: &NcPolynomial) -> bool {
    let Ok(Some(vars)) = f.multilinear_support() else {
        return false;
    };
    let vars: Vec<Var> = vars.into_iter().collect();
    let neg = -f;
    vars.windows(2).all(|w| {
        let (a, b) = (w[0], w[1]);
        f.rename(|v| if v == a { b } else if v == b { a } else { v }) == neg
    })
}

/// Scans basis tuples for a nonvanishing value of a multilinear `f`.
///
/// For alternating `f` with the fast path enabled only strictly increasing
/// tuples are scanned; the first hit is still the first failing tuple in
/// full odometer order, since sorting a failing tuple keeps it failing.
pub fn is_identity_multilinear(
    alg: &StructureAlgebra,
    f: &NcPolynomial,
    opts: &CheckOptions,
) -> Result<MultilinearCheck, IdentityError> {
    let vars: Vec<Var> = f
        .multilinear_support()
        .map_err(|_| IdentityError::ZeroPolynomial)?
        .ok_or(IdentityError::NotMultilinear)?
        .into_iter()
        .collect();
    if vars.is_empty() {
        let c = f.coefficient(&Monomial::one());
        let unit = alg.unit().ok_or(IdentityError::ConstantWithoutUnit)?;
        let value = unit.scale(&c);
        return Ok(MultilinearCheck {
            counterexample: (!value.is_zero()).then(|| Counterexample {
                assignment: Vec::new(),
                value,
            }),
            alternating: false,
            search_space: 1,
        });
    }
    let (n, m) = (alg.dim(), vars.len());
    let too_large = IdentityError::SearchTooLarge { base: n, width: m };
    let alternating = opts.alternating_fast_path && is_alternating(f);
    let eval = MultilinearEvaluator::new(alg, f, vars);
    let test = |st: &mut EvalState, t: &[usize]| eval.counterexample(t, st);
    let (counterexample, search_space) = if alternating {
        let space = Combinations::new(n, m).ok_or(too_large)?;
        (find_first(&space, opts.threads, || eval.state(), test), space.len())
    } else {
        let space = Odometer::new(n, m).ok_or(too_large)?;
        (find_first(&space, opts.threads, || eval.state(), test), space.len())
    };
    Ok(MultilinearCheck {
        counterexample,
        alternating,
        search_space,
    })
}

/// Why a polynomial fails to be an identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentFailure {
    /// The multihomogeneous component that fails.
    pub component: NcPolynomial,
    /// Its full linearization (fresh variables numbered above the originals).
    pub linearized: NcPolynomial,
    /// Failing basis tuple of `linearized`.
    pub counterexample: Counterexample,
    /// An assignment to the original variables on which the polynomial is
    /// nonzero, with that value, when a small search finds one.
    pub witness: Option<(BTreeMap<Var, Element>, Element)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCheck {
    pub failure: Option<ComponentFailure>,
    /// Number of multihomogeneous components examined.
    pub components: usize,
}

impl IdentityCheck {
    pub fn holds(&self) -> bool {
        self.failure.is_none()
    }
}

/// Upper bound on evaluations spent looking for a direct witness.
const WITNESS_BUDGET: u64 = 4096;

/// Looks for `x_v = sum_s lambda_s b_s` (the `b_s` being the basis elements
/// assigned to the variables split off from `x_v`) with `f` nonzero, for
/// `lambda_s` in `1..=deg f + 1`. The coefficient of the product of all
/// `lambda_s` is the linearized value, so such a point exists on that grid;
/// the search is cut off after a fixed budget.
fn direct_witness(
    alg: &StructureAlgebra,
    f: &NcPolynomial,
    origin: &BTreeMap<Var, Var>,
    cex: &Counterexample,
) -> Option<(BTreeMap<Var, Element>, Element)> {
    let deg = f.degree()?;
    let grid = Odometer::new(deg + 1, cex.assignment.len())?;
    let mut t = grid.unrank(0);
    for _ in 0..grid.len().min(WITNESS_BUDGET) {
        let mut sigma: BTreeMap<Var, Element> = f.variables().into_iter().map(|v| (v, alg.zero())).collect();
        for ((w, b), lambda) in cex.assignment.iter().zip(&t) {
            let target = sigma.get_mut(&origin[w])?;
            target.add_scaled(&Rational::from_integer((*lambda + 1).into()), &alg.basis(*b));
        }
        if let Ok(value) = eval_poly(alg, f, &sigma) {
            if !value.is_zero() {
                return Some((sigma, value));
            }
        }
        if !grid.advance(&mut t) {
            break;
        }
    }
    None
}

/// Whether `f` vanishes on all of `alg`.
pub fn is_identity(
    alg: &StructureAlgebra,
    f: &NcPolynomial,
    opts: &CheckOptions,
) -> Result<IdentityCheck, IdentityError> {
    if f.is_zero() {
        return Err(IdentityError::ZeroPolynomial);
    }
    let components = multihomogeneous_components(f)?;
    let count = components.len();
    for component in components {
        let (linearized, origin) = linearize_homogeneous_traced(&component)?;
        let check = is_identity_multilinear(alg, &linearized, opts)?;
        if let Some(counterexample) = check.counterexample {
            let witness = if linearized == *f {
                let sigma = counterexample
                    .assignment
                    .iter()
                    .map(|&(v, b)| (v, alg.basis(b)))
                    .collect();
                Some((sigma, counterexample.value.clone()))
            } else {
                direct_witness(alg, f, &origin, &counterexample)
            };
            return Ok(IdentityCheck {
                failure: Some(ComponentFailure {
                    component,
                    linearized,
                    counterexample,
                    witness,
                }),
                components: count,
            });
        }
    }
    Ok(IdentityCheck {
        failure: None,
        components: count,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralCheck {
    /// `[f, x_fresh]`, which vanishes iff every value of `f` is central.
    pub commutator: NcPolynomial,
    /// Outcome for `[f, x_fresh]`; `None` when the commutator is the zero polynomial.
    pub commutator_check: Option<IdentityCheck>,
    /// Outcome for `f` itself.
    pub identity_check: IdentityCheck,
}

impl CentralCheck {
    pub fn values_central(&self) -> bool {
        self.commutator_check.as_ref().is_none_or(IdentityCheck::holds)
    }

    pub fn is_identity(&self) -> bool {
        self.identity_check.holds()
    }

    /// Central but not an identity.
    pub fn holds(&self) -> bool {
        self.values_central() && !self.is_identity()
    }
}

/// Whether `f` is a central polynomial of a unital algebra.
pub fn is_central_polynomial(
    alg: &StructureAlgebra,
    f: &NcPolynomial,
    opts: &CheckOptions,
) -> Result<CentralCheck, IdentityError> {
    if alg.unit().is_none() {
        return Err(IdentityError::NotUnital);
    }
    if f.is_zero() {
        return Err(IdentityError::ZeroPolynomial);
    }
    let fresh = f.max_variable().unwrap_or(0) + 1;
    let commutator = f.commutator(&NcPolynomial::var(fresh));
    let commutator_check = if commutator.is_zero() {
        None
    } else {
        Some(is_identity(alg, &commutator, opts)?)
    };
    let identity_check = is_identity(alg, f, opts)?;
    Ok(CentralCheck {
        commutator,
        commutator_check,
        identity_check,
    })
}

/// Basis of the multilinear identities of degree `m` in `x1, ..., xm`.
///
/// Coordinates are over the `m!` monomials `x_{p(1)}...x_{p(m)}`, `p` in
/// lexicographic order. Each basis tuple (odometer order) contributes the
/// coordinate rows of its evaluation map; the scan stops early once the
/// rows have full rank. Basis vectors are primitive integer rows with a
/// positive leading coefficient.
pub fn identity_space(alg: &StructureAlgebra, m: usize) -> Result<Vec<NcPolynomial>, IdentityError> {
    if m == 0 {
        return Err(IdentityError::ZeroDegree);
    }
    let n = alg.dim();
    let perms: Vec<Vec<usize>> = (0..m).permutations(m).collect();
    let cols = perms.len();
    let space = Odometer::new(n, m).ok_or(IdentityError::SearchTooLarge { base: n, width: m })?;
    let trie = WordTrie::new(perms.iter().map(Vec::as_slice));
    let mut rows = RowSpace::new(cols);
    let mut scratch = Vec::new();
    let mut block = vec![vec![Rational::zero(); cols]; n];
    let mut t = space.unrank(0);
    loop {
        for row in block.iter_mut() {
            for v in row.iter_mut() {
                v.set_zero();
            }
        }
        trie.for_each_product(alg, &t, &mut scratch, &mut |leaf, prod| {
            for (k, v) in prod {
                block[*k][leaf] = v.clone();
            }
        });
        for row in &block {
            if row.iter().any(|v| !v.is_zero()) {
                rows.insert(row);
            }
        }
        if rows.rank() == cols || !space.advance(&mut t) {
            break;
        }
    }
    let basis = rows
        .kernel()
        .into_iter()
        .map(|v| {
            let mut ints = primitive_integer_row(&v);
            if ints.iter().find(|c| !c.is_zero()).is_some_and(|c| c.is_negative()) {
                ints.iter_mut().for_each(|c| *c = -&*c);
            }
            NcPolynomial::from_terms(perms.iter().zip(ints).map(|(p, c)| {
                let word = p.iter().map(|&s| s as Var + 1).collect();
                (Monomial::new(word).expect("indices are positive"), Rational::from_integer(c))
            }))
        })
        .collect();
    Ok(basis)
}

/// Default degree cap `n^2 + 1` for an `n`-dimensional algebra; `St_{n+1}`
/// already vanishes, so the cap is never reached.
pub fn default_degree_cap(alg: &StructureAlgebra) -> usize {
    alg.dim() * alg.dim() + 1
}

/// Least `m` with a nonzero multilinear identity of degree `m`, and that
/// degree's identity basis.
pub fn min_multilinear_identity_degree(
    alg: &StructureAlgebra,
    cap: Option<usize>,
) -> Result<(usize, Vec<NcPolynomial>), IdentityError> {
    let cap = cap.unwrap_or_else(|| default_degree_cap(alg));
    for m in 1..=cap {
        let basis = identity_space(alg, m)?;
        if !basis.is_empty() {
            return Ok((m, basis));
        }
    }
    Err(IdentityError::DegreeCapExceeded { cap })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{mat_algebra, rationals, zero_mult_algebra};
    use crate::ncpoly::{parse_poly, standard_poly};

    fn poly(s: &str) -> NcPolynomial {
        parse_poly(s).unwrap()
    }

    fn sigma(elems: &[Element]) -> BTreeMap<Var, Element> {
        elems.iter().cloned().enumerate().map(|(i, e)| (i as Var + 1, e)).collect()
    }

    #[test]
    fn evaluates_matrix_unit_products() {
        let m2 = mat_algebra(2);
        let (e11, e12, e21) = (m2.basis(0), m2.basis(1), m2.basis(2));
        let st2 = standard_poly(2).unwrap();
        assert_eq!(eval_poly(&m2, &st2, &sigma(&[e11.clone(), e12.clone()])).unwrap(), e12);
        assert_eq!(
            eval_poly(&m2, &poly("x1*x2*x3"), &sigma(&[e11.clone(), e12.clone(), e21])).unwrap(),
            e11
        );
        assert_eq!(
            eval_poly(&m2, &poly("x1*x2 + 3*x2"), &sigma(&[m2.zero(), m2.zero()])).unwrap(),
            m2.zero()
        );
        assert_eq!(
            eval_poly(&m2, &poly("x1*x3"), &sigma(&[e11])),
            Err(IdentityError::MissingAssignment(3))
        );
    }

    #[test]
    fn constants_need_a_unit() {
        let z = zero_mult_algebra(2);
        let s = sigma(&[z.basis(0)]);
        assert_eq!(eval_poly(&z, &poly("x1 + 1"), &s), Err(IdentityError::ConstantWithoutUnit));
        let m2 = mat_algebra(2);
        assert_eq!(
            eval_poly(&m2, &poly("2"), &BTreeMap::new()).unwrap(),
            Element::from_integers(&[2, 0, 0, 2])
        );
    }

    #[test]
    fn standard_polynomials_on_m2() {
        let m2 = mat_algebra(2);
        let opts = CheckOptions::default();
        let st4 = is_identity_multilinear(&m2, &standard_poly(4).unwrap(), &opts).unwrap();
        assert!(st4.holds());
        assert!(st4.alternating);
        assert_eq!(st4.search_space, 1);
        let st3 = is_identity_multilinear(&m2, &standard_poly(3).unwrap(), &opts).unwrap();
        let cex = st3.counterexample.unwrap();
        let elems: Vec<Element> = cex.assignment.iter().map(|(_, b)| m2.basis(*b)).collect();
        assert_eq!(eval_poly(&m2, &standard_poly(3).unwrap(), &sigma(&elems)).unwrap(), cex.value);
    }

    #[test]
    fn fast_path_agrees_with_exhaustive_scan() {
        let m2 = mat_algebra(2);
        let slow = CheckOptions {
            alternating_fast_path: false,
            ..CheckOptions::default()
        };
        for m in 3..=4 {
            let st = standard_poly(m).unwrap();
            let fast = is_identity_multilinear(&m2, &st, &CheckOptions::default()).unwrap();
            let full = is_identity_multilinear(&m2, &st, &slow).unwrap();
            assert!(!full.alternating);
            assert_eq!(fast.counterexample, full.counterexample);
        }
    }

    #[test]
    fn alternation_detection() {
        assert!(is_alternating(&standard_poly(4).unwrap()));
        assert!(is_alternating(&poly("x2*x5 - x5*x2")));
        assert!(!is_alternating(&poly("x1*x2 + x2*x1")));
        assert!(!is_alternating(&poly("x1^2")));
        assert!(!is_alternating(&poly("x1*x2*x3 - x2*x1*x3")));
    }

    #[test]
    fn zero_multiplication_symmetrizer() {
        let z = zero_mult_algebra(2);
        let check = is_identity_multilinear(&z, &poly("x1*x2 + x2*x1"), &CheckOptions::default()).unwrap();
        assert!(check.holds());
        assert_eq!(
            is_identity_multilinear(&z, &poly("x1^2"), &CheckOptions::default()),
            Err(IdentityError::NotMultilinear)
        );
    }

    #[test]
    fn general_identities() {
        let opts = CheckOptions::default();
        assert!(is_identity(&rationals(), &standard_poly(2).unwrap(), &opts).unwrap().holds());
        assert!(is_identity(&zero_mult_algebra(2), &standard_poly(3).unwrap(), &opts).unwrap().holds());
        let m2 = mat_algebra(2);
        let check = is_identity(&m2, &poly("x1^2"), &opts).unwrap();
        let failure = check.failure.unwrap();
        assert_eq!(failure.linearized, poly("x1*x2 + x2*x1"));
        let (sigma, value) = failure.witness.unwrap();
        assert_eq!(eval_poly(&m2, &poly("x1^2"), &sigma).unwrap(), value);
        assert!(!value.is_zero());
        assert_eq!(is_identity(&m2, &NcPolynomial::zero(), &opts), Err(IdentityError::ZeroPolynomial));
    }

    #[test]
    fn mixed_components_are_checked_separately() {
        let opts = CheckOptions::default();
        // x1*x2 - x2*x1 vanishes on Q, x1^2 does not.
        let check = is_identity(&rationals(), &poly("x1*x2 - x2*x1 + x1^2"), &opts).unwrap();
        assert_eq!(check.failure.unwrap().component, poly("x1^2"));
    }

    #[test]
    fn hall_polynomial_is_central_on_m2() {
        let opts = CheckOptions::default();
        let hall = poly("[x1,x2]^2");
        assert!(is_central_polynomial(&mat_algebra(2), &hall, &opts).unwrap().holds());
        let st4 = is_central_polynomial(&mat_algebra(2), &standard_poly(4).unwrap(), &opts).unwrap();
        assert!(st4.values_central() && st4.is_identity() && !st4.holds());
        assert_eq!(
            is_central_polynomial(&zero_mult_algebra(1), &hall, &opts),
            Err(IdentityError::NotUnital)
        );
    }

    #[test]
    fn identity_spaces() {
        let m2 = mat_algebra(2);
        assert!(identity_space(&m2, 3).unwrap().is_empty());
        let space = identity_space(&rationals(), 2).unwrap();
        assert_eq!(space, vec![poly("x1*x2 - x2*x1")]);
        let st4 = standard_poly(4).unwrap();
        let basis = identity_space(&m2, 4).unwrap();
        assert!(!basis.is_empty());
        let coords: Vec<Vec<Rational>> = basis
            .iter()
            .map(|p| (0..4).permutations(4).map(|w| p.coefficient(&Monomial::new(w.iter().map(|&i| i as Var + 1).collect()).unwrap())).collect())
            .collect();
        let target: Vec<Rational> = (0..4)
            .permutations(4)
            .map(|w| st4.coefficient(&Monomial::new(w.iter().map(|&i| i as Var + 1).collect()).unwrap()))
            .collect();
        assert!(crate::linalg::express_in_span(&coords, &target).is_some());
    }

    #[test]
    fn minimal_degrees() {
        assert_eq!(min_multilinear_identity_degree(&rationals(), None).unwrap().0, 2);
        assert_eq!(min_multilinear_identity_degree(&zero_mult_algebra(2), None).unwrap().0, 2);
        assert_eq!(
            min_multilinear_identity_degree(&mat_algebra(2), Some(2)),
            Err(IdentityError::DegreeCapExceeded { cap: 2 })
        );
    }

    #[test]
    fn threads_do_not_change_results() {
        let m3 = mat_algebra(3);
        let st5 = standard_poly(5).unwrap();
        let slow = |threads| CheckOptions {
            threads,
            alternating_fast_path: false,
        };
        let one = is_identity_multilinear(&m3, &st5, &slow(1)).unwrap();
        assert!(!one.holds());
        assert_eq!(is_identity_multilinear(&m3, &st5, &slow(4)).unwrap(), one);
    }
}
