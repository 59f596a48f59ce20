//! Central simplicity, a finite-dimensional checker for the operator
//! independence theorem `sum a_i x b_i = sum c_j x d_j => b_i in span{d_j}`,
//! and the construction of a nonzero finite-rank operator from a
//! multilinear identity.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::algebra::{AlgebraError, Element, StructureAlgebra};
use crate::enumerate::{find_first, Odometer};
use crate::identity::{is_identity_multilinear, CheckOptions, Counterexample, IdentityError};
use crate::linalg::{self, QMatrix};
use crate::multalg::{
    basis_pair_coefficients, fold_dependent_lefts, mult_algebra_dim, MultAlgError, MultOperator,
};
use crate::ncpoly::{NcPolynomial, Var};
use crate::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KaplanskyError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    MultAlg(#[from] MultAlgError),
    #[error(transparent)]
    Identity(#[from] IdentityError),
    #[error("algebra has no unit")]
    NotUnital,
    #[error("algebra is not central simple")]
    NotCentralSimple,
    #[error("left element {index} is a linear combination of the earlier ones")]
    DependentLeft { index: usize, coefficients: Vec<Rational> },
    #[error("the two sides define different operators")]
    OperatorMismatch,
    #[error("internal error: right element {index} is not in the span of the d_j although all hypotheses hold")]
    TheoremViolated { index: usize },
    #[error("elements are linearly dependent: {alpha}*b1 + {beta}*b2 = 0")]
    DependentPair { alpha: Box<Rational>, beta: Box<Rational> },
    #[error("internal error: no basis element separates b1 c b2 from b2 c b1")]
    NoSeparatingElement,
    #[error("polynomial is not multilinear")]
    NotMultilinear,
    #[error("operation is undefined on the zero polynomial")]
    ZeroPolynomial,
    #[error("variables x{0} and x{1} must be distinct variables of the polynomial")]
    BadIndices(Var, Var),
    #[error("polynomial has degree {0}; degree at least 2 is required")]
    DegreeTooLow(usize),
    #[error("polynomial is not an identity of the algebra")]
    NotAnIdentity(Counterexample),
    #[error("no pair of variables splits the polynomial into two non-identities")]
    NoValidPair,
    #[error("internal check failed: {0}")]
    Internal(&'static str),
}

/// `dim M(A) = (dim A)^2`; for a unital algebra over the rationals this
/// holds exactly when it is simple with center `Q*1`.
pub fn is_central_simple(alg: &StructureAlgebra) -> Result<bool, KaplanskyError> {
    if alg.unit().is_none() {
        return Err(KaplanskyError::NotUnital);
    }
    Ok(mult_algebra_dim(alg) == alg.dim() * alg.dim())
}

fn require_central_simple(alg: &StructureAlgebra) -> Result<(), KaplanskyError> {
    if is_central_simple(alg)? {
        Ok(())
    } else {
        Err(KaplanskyError::NotCentralSimple)
    }
}

fn check_dims<'a>(alg: &StructureAlgebra, elems: impl IntoIterator<Item = &'a Element>) -> Result<(), KaplanskyError> {
    for e in elems {
        if e.dim() != alg.dim() {
            return Err(AlgebraError::DimensionMismatch {
                expected: alg.dim(),
                found: e.dim(),
            }
            .into());
        }
    }
    Ok(())
}

fn coords(elems: &[&Element]) -> Vec<Vec<Rational>> {
    elems.iter().map(|e| e.coords().to_vec()).collect()
}

/// Expansion of each `b_i` over the `d_j`: `b_i = sum_j coefficients[i][j] d_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MartindaleReport {
    pub coefficients: Vec<Vec<Rational>>,
}

/// Checks the hypotheses (central simple algebra, independent `a_i`,
/// `sum L_{a_i} R_{b_i} = sum L_{c_j} R_{d_j}`) and then the conclusion.
/// A failed conclusion is reported as [`KaplanskyError::TheoremViolated`].
pub fn verify_martindale(
    alg: &StructureAlgebra,
    lhs: &[(Element, Element)],
    rhs: &[(Element, Element)],
) -> Result<MartindaleReport, KaplanskyError> {
    check_dims(alg, lhs.iter().chain(rhs).flat_map(|(a, b)| [a, b]))?;
    require_central_simple(alg)?;
    for index in 0..lhs.len() {
        let earlier: Vec<&Element> = lhs[..index].iter().map(|(a, _)| a).collect();
        if let Some(coefficients) = linalg::express_in_span(&coords(&earlier), lhs[index].0.coords()) {
            return Err(KaplanskyError::DependentLeft { index, coefficients });
        }
    }
    let left = MultOperator::from_pairs(alg, lhs.to_vec())?;
    let right = MultOperator::from_pairs(alg, rhs.to_vec())?;
    if left.matrix() != right.matrix() {
        return Err(KaplanskyError::OperatorMismatch);
    }
    let ds: Vec<&Element> = rhs.iter().map(|(_, d)| d).collect();
    let ds = coords(&ds);
    let coefficients = lhs
        .iter()
        .enumerate()
        .map(|(index, (_, b))| {
            linalg::express_in_span(&ds, b.coords()).ok_or(KaplanskyError::TheoremViolated { index })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(MartindaleReport { coefficients })
}

/// Re-expresses `sum L_a R_b` over the basis as `sum_p L_{e_p} R_{d_p}`
/// with `d_p = sum_q lambda_pq e_q`; terms with `d_p = 0` are dropped.
pub fn basis_pair_expansion(
    alg: &StructureAlgebra,
    pairs: &[(Element, Element)],
) -> Result<Vec<(Element, Element)>, KaplanskyError> {
    let op = MultOperator::from_pairs(alg, pairs.to_vec())?;
    let lambda = basis_pair_coefficients(alg, op.matrix())
        .ok_or(KaplanskyError::Internal("operator outside span of basis pair operators"))?;
    let n = alg.dim();
    Ok((0..n)
        .filter_map(|p| {
            let d = Element::new(lambda[p * n..(p + 1) * n].to_vec());
            (!d.is_zero()).then(|| (alg.basis(p), d))
        })
        .collect())
}

/// The first basis index `c` (with the element) such that `b1 c b2 != b2 c b1`.
pub fn noncommuting_witness(
    alg: &StructureAlgebra,
    b1: &Element,
    b2: &Element,
) -> Result<(usize, Element), KaplanskyError> {
    check_dims(alg, [b1, b2])?;
    require_central_simple(alg)?;
    let m = QMatrix::from_columns(alg.dim(), &[b1.coords().to_vec(), b2.coords().to_vec()]);
    if let Some(k) = m.kernel().into_iter().next() {
        return Err(KaplanskyError::DependentPair {
            alpha: Box::new(k[0].clone()),
            beta: Box::new(k[1].clone()),
        });
    }
    for c in 0..alg.dim() {
        let e = alg.basis(c);
        let left = alg.mul(&alg.mul(b1, &e), b2);
        let right = alg.mul(&alg.mul(b2, &e), b1);
        if left != right {
            return Ok((c, e));
        }
    }
    Err(KaplanskyError::NoSeparatingElement)
}

fn multilinear_vars(f: &NcPolynomial) -> Result<Vec<Var>, KaplanskyError> {
    Ok(f
        .multilinear_support()
        .map_err(|_| KaplanskyError::ZeroPolynomial)?
        .ok_or(KaplanskyError::NotMultilinear)?
        .into_iter()
        .collect())
}

/// `(f_i, f_j)`: the monomials with `x_i` before `x_j`, and the rest.
pub fn before_after_split(f: &NcPolynomial, i: Var, j: Var) -> Result<(NcPolynomial, NcPolynomial), KaplanskyError> {
    let vars = multilinear_vars(f)?;
    if i == j || !vars.contains(&i) || !vars.contains(&j) {
        return Err(KaplanskyError::BadIndices(i, j));
    }
    let before = |m: &crate::ncpoly::Monomial| m.position(i) < m.position(j);
    Ok((f.filter_terms(|m, _| before(m)), f.filter_terms(|m, _| !before(m))))
}

/// Output of [`finite_rank_witness`]: the rewritten functional identity
/// `sum_i a_i x W_i(y) = sum_j S_j(y) x d_j` and the operator `V = W_1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteRankWitness {
    /// The identity actually used, after any descent steps.
    pub polynomial: NcPolynomial,
    /// Pairs `(i, j)` whose before-part replaced the polynomial, in order.
    pub descent: Vec<(Var, Var)>,
    /// The variables playing the roles of `x` and `y`.
    pub pair: (Var, Var),
    /// Basis indices frozen for every variable, with `f_i` nonzero there.
    pub assignment: Vec<(Var, usize)>,
    /// Independent left elements `a_i` and their operators `W_i`.
    pub lefts: Vec<(Element, MultOperator)>,
    /// Operators `S_j` and right elements `d_j`.
    pub rights: Vec<(MultOperator, Element)>,
    /// `V = W_i` for the first nonzero `W_i`.
    pub v: MultOperator,
}

impl FiniteRankWitness {
    pub fn d(&self) -> Vec<Element> {
        self.rights.iter().map(|(_, d)| d.clone()).collect()
    }
}

/// Product of the elements assigned to a word segment; empty gives the unit.
fn segment(alg: &StructureAlgebra, word: &[Var], sigma: &BTreeMap<Var, Element>) -> Element {
    alg.product_of(word.iter().map(|v| &sigma[v]))
        .expect("central simple algebras are unital")
}

/// The descended polynomial, the descent steps and the splitting pair.
type SplitPair = (NcPolynomial, Vec<(Var, Var)>, Var, Var);

/// Finds a pair `(i, j)` with `f_i`, `f_j` both non-identities. When one
/// side is an identity so is the other (their sum is), and `f` is replaced
/// by its nonzero before-part; each replacement fixes the relative order of
/// one more variable pair, so at most `n(n-1)/2` replacements occur.
fn find_split_pair(
    alg: &StructureAlgebra,
    f: &NcPolynomial,
    opts: &CheckOptions,
) -> Result<SplitPair, KaplanskyError> {
    let vars = multilinear_vars(f)?;
    let bound = vars.len() * (vars.len() - 1) / 2;
    let mut g = f.clone();
    let mut descent = Vec::new();
    'restart: loop {
        if descent.len() > bound {
            return Err(KaplanskyError::Internal("descent exceeded its bound"));
        }
        for (a, &i) in vars.iter().enumerate() {
            for &j in &vars[a + 1..] {
                let (gi, gj) = before_after_split(&g, i, j)?;
                if gi.is_zero() || gj.is_zero() {
                    continue;
                }
                let gi_holds = is_identity_multilinear(alg, &gi, opts)?.holds();
                let gj_holds = is_identity_multilinear(alg, &gj, opts)?.holds();
                if gi_holds != gj_holds {
                    return Err(KaplanskyError::Internal("split parts of an identity disagree"));
                }
                if !gi_holds {
                    return Ok((g, descent, i, j));
                }
                g = gi;
                descent.push((i, j));
                continue 'restart;
            }
        }
        return Err(KaplanskyError::NoValidPair);
    }
}

/// Builds a nonzero finite-rank operator `V in M(A)` with range inside the
/// span of finitely many elements, from a multilinear identity `f` of a
/// central simple algebra.
///
/// With `f_i(u) != 0`, freezing all variables but `x = x_i`, `y = x_j` turns
/// `f_i = -f_j` into `sum a_k x T_k(y) = sum S_l(y) x d_l`: a monomial
/// `c M x_i M' x_j M''` of `f_i` gives `a = c M`, `T = L_{M'} R_{M''}`, and
/// `c N x_j N' x_i N''` of `f_j` gives `S = L_{-c N} R_{N'}`, `d = N''`.
/// Dependent `a_k` are folded away and `V` is the first nonzero `W_k`.
pub fn finite_rank_witness(
    alg: &StructureAlgebra,
    f: &NcPolynomial,
    opts: &CheckOptions,
) -> Result<FiniteRankWitness, KaplanskyError> {
    if f.is_zero() {
        return Err(KaplanskyError::ZeroPolynomial);
    }
    let vars = multilinear_vars(f)?;
    if vars.len() < 2 {
        return Err(KaplanskyError::DegreeTooLow(vars.len()));
    }
    require_central_simple(alg)?;
    if let Some(cex) = is_identity_multilinear(alg, f, opts)?.counterexample {
        return Err(KaplanskyError::NotAnIdentity(cex));
    }
    let (g, descent, i, j) = find_split_pair(alg, f, opts)?;
    let (gi, gj) = before_after_split(&g, i, j)?;

    let space = Odometer::new(alg.dim(), vars.len())
        .ok_or(IdentityError::SearchTooLarge { base: alg.dim(), width: vars.len() })?;
    let basis = alg.basis_elements();
    let tuple = find_first(&space, opts.threads, || (), |_, t| {
        let sigma: BTreeMap<Var, Element> = vars.iter().zip(t).map(|(&v, &b)| (v, basis[b].clone())).collect();
        let value = crate::identity::eval_poly(alg, &gi, &sigma).ok()?;
        (!value.is_zero()).then(|| t.to_vec())
    })
    .ok_or(KaplanskyError::Internal("before-part vanishes on every basis tuple"))?;
    let sigma: BTreeMap<Var, Element> = vars.iter().zip(&tuple).map(|(&v, &b)| (v, basis[b].clone())).collect();

    let mut lefts: Vec<(Element, MultOperator)> = Vec::new();
    for (m, c) in gi.terms() {
        let w = m.word();
        let (pi, pj) = (m.position(i).expect("multilinear"), m.position(j).expect("multilinear"));
        let a = segment(alg, &w[..pi], &sigma).scale(c);
        let t = MultOperator::from_pairs(
            alg,
            vec![(segment(alg, &w[pi + 1..pj], &sigma), segment(alg, &w[pj + 1..], &sigma))],
        )?;
        lefts.push((a, t));
    }
    let mut rights: Vec<(MultOperator, Element)> = Vec::new();
    for (m, c) in gj.terms() {
        let w = m.word();
        let (pj, pi) = (m.position(j).expect("multilinear"), m.position(i).expect("multilinear"));
        let s = MultOperator::from_pairs(
            alg,
            vec![(segment(alg, &w[..pj], &sigma).scale(&-c), segment(alg, &w[pj + 1..pi], &sigma))],
        )?;
        rights.push((s, segment(alg, &w[pi + 1..], &sigma)));
    }

    let lefts: Vec<(Element, MultOperator)> = fold_dependent_lefts(lefts, |w, l, other| w.add_scaled(l, other))
        .into_iter()
        .filter(|(a, _)| !a.is_zero())
        .collect();
    check_functional_identity(alg, &lefts, &rights)?;
    let v = lefts
        .iter()
        .map(|(_, w)| w)
        .find(|w| !w.is_zero())
        .cloned()
        .ok_or(KaplanskyError::Internal("all W_i vanish"))?;

    let ds: Vec<Vec<Rational>> = rights.iter().map(|(_, d)| d.coords().to_vec()).collect();
    let span_rank = linalg::rank_of(&ds, alg.dim());
    let mut with_range = ds.clone();
    with_range.extend((0..alg.dim()).map(|c| v.matrix().column(c)));
    if linalg::rank_of(&with_range, alg.dim()) != span_rank {
        return Err(KaplanskyError::Internal("range of V is not inside span(D)"));
    }

    Ok(FiniteRankWitness {
        polynomial: g,
        descent,
        pair: (i, j),
        assignment: vars.into_iter().zip(tuple).collect(),
        lefts,
        rights,
        v,
    })
}

/// `sum a_i x W_i(y) = sum S_j(y) x d_j` on all basis pairs `(x, y)`.
fn check_functional_identity(
    alg: &StructureAlgebra,
    lefts: &[(Element, MultOperator)],
    rights: &[(MultOperator, Element)],
) -> Result<(), KaplanskyError> {
    for x in alg.basis_elements() {
        for y in alg.basis_elements() {
            let mut lhs = alg.zero();
            for (a, w) in lefts {
                lhs = &lhs + &alg.mul(&alg.mul(a, &x), &w.apply(&y));
            }
            let mut rhs = alg.zero();
            for (s, d) in rights {
                rhs = &rhs + &alg.mul(&alg.mul(&s.apply(&y), &x), d);
            }
            if lhs != rhs {
                return Err(KaplanskyError::Internal("functional identity fails"));
            }
        }
    }
    Ok(())
}

/// Whether the left elements of `pairs` are linearly independent.
pub fn lefts_independent(alg: &StructureAlgebra, pairs: &[(Element, Element)]) -> bool {
    let lefts: Vec<Vec<Rational>> = pairs.iter().map(|(a, _)| a.coords().to_vec()).collect();
    linalg::rank_of(&lefts, alg.dim()) == pairs.len()
}
