//! Polarization and multilinearization of polynomials.
//!
//! Over a field of characteristic zero, every nonzero polynomial identity
//! yields a nonzero multilinear identity of no larger degree: pick one
//! multihomogeneous component, then split repeated variables one at a time
//! with `p(x_i + x_j) - p(x_i) - p(x_j)` until every variable occurs once.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::ncpoly::{NcPolynomial, Var};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinearizeError {
    #[error("operation is undefined on the zero polynomial")]
    ZeroPolynomial,
    #[error("x{0} does not occur in the polynomial")]
    VariableAbsent(Var),
    #[error("x{0} already occurs in the polynomial")]
    NotFresh(Var),
    #[error("variable index 0 is not allowed")]
    ZeroVariable,
    #[error("internal invariant violated: {0}")]
    Internal(&'static str),
}

/// `p(x_i -> x_i + x_j) - p - p(x_i -> x_j)`.
pub fn polarize(p: &NcPolynomial, i: Var, j: Var) -> Result<NcPolynomial, LinearizeError> {
    if j == 0 || i == 0 {
        return Err(LinearizeError::ZeroVariable);
    }
    let vars = p.variables();
    if !vars.contains(&i) {
        return Err(LinearizeError::VariableAbsent(i));
    }
    if vars.contains(&j) {
        return Err(LinearizeError::NotFresh(j));
    }
    let xi = NcPolynomial::var(i);
    let xj = NcPolynomial::var(j);
    let mixed = p.replace_var(i, &(&xi + &xj));
    let pure_j = p.replace_var(i, &xj);
    Ok(&(&mixed - p) - &pure_j)
}

/// Occurrence counts keyed by variable; the grouping key for components.
type Multidegree = BTreeMap<Var, usize>;

/// Splits `p` into multihomogeneous components. Components are listed in
/// the degree-lexicographic order of their first term; they sum to `p`.
pub fn multihomogeneous_components(p: &NcPolynomial) -> Result<Vec<NcPolynomial>, LinearizeError> {
    if p.is_zero() {
        return Err(LinearizeError::ZeroPolynomial);
    }
    let mut order: Vec<Multidegree> = Vec::new();
    let mut parts: BTreeMap<Multidegree, NcPolynomial> = BTreeMap::new();
    for (m, c) in p.terms() {
        let md = m.multidegree();
        let entry = parts.entry(md.clone()).or_insert_with(|| {
            order.push(md);
            NcPolynomial::zero()
        });
        entry.add_term(m.clone(), c.clone());
    }
    Ok(order
        .into_iter()
        .map(|md| parts.remove(&md).expect("component recorded"))
        .collect())
}

/// Multidegree as a dense count vector `(deg in x1, deg in x2, ...)`.
fn dense_multidegree(p: &NcPolynomial) -> Vec<usize> {
    let first = p.terms().next().expect("nonzero component").0;
    let md = first.multidegree();
    let top = md.keys().last().copied().unwrap_or(0) as usize;
    (1..=top).map(|v| md.get(&(v as Var)).copied().unwrap_or(0)).collect()
}

/// The component of maximal total degree, ties broken by the largest dense
/// multidegree vector in lexicographic order.
pub fn select_component(p: &NcPolynomial) -> Result<NcPolynomial, LinearizeError> {
    let comps = multihomogeneous_components(p)?;
    comps
        .into_iter()
        .max_by(|a, b| {
            a.degree()
                .cmp(&b.degree())
                .then_with(|| dense_multidegree(a).cmp(&dense_multidegree(b)))
        })
        .ok_or(LinearizeError::ZeroPolynomial)
}

/// Fully linearizes a multihomogeneous polynomial without renumbering:
/// polarizes the lowest-index repeated variable into a fresh index
/// (current maximum plus one) until the result is multilinear.
pub fn linearize_homogeneous(component: &NcPolynomial) -> Result<NcPolynomial, LinearizeError> {
    linearize_homogeneous_traced(component).map(|(g, _)| g)
}

/// As [`linearize_homogeneous`], also returning for every variable of the
/// result the variable of `component` it descends from.
pub fn linearize_homogeneous_traced(
    component: &NcPolynomial,
) -> Result<(NcPolynomial, BTreeMap<Var, Var>), LinearizeError> {
    if component.is_zero() {
        return Err(LinearizeError::ZeroPolynomial);
    }
    let mut origin: BTreeMap<Var, Var> = component.variables().into_iter().map(|v| (v, v)).collect();
    let mut g = component.clone();
    loop {
        let vars = g.variables();
        // Every monomial carries every variable; holds for multihomogeneous
        // input and is preserved by polarization.
        if !g.terms().all(|(m, _)| vars.iter().all(|&v| m.occurrences(v) > 0)) {
            return Err(LinearizeError::Internal("monomial missing a variable"));
        }
        let Some(&v) = vars.iter().find(|&&v| g.degree_in(v) >= 2) else {
            break;
        };
        let fresh = vars.last().copied().unwrap_or(0) + 1;
        g = polarize(&g, v, fresh)?;
        if g.is_zero() {
            return Err(LinearizeError::Internal("polarization produced zero"));
        }
        origin.insert(fresh, origin[&v]);
    }
    if !g.is_multilinear() {
        return Err(LinearizeError::Internal("result is not multilinear"));
    }
    origin.retain(|v, _| g.variables().contains(v));
    Ok((g, origin))
}

/// Renumbers the variables of `p` to `1..=m` preserving their order.
pub fn renumber(p: &NcPolynomial) -> NcPolynomial {
    let map: BTreeMap<Var, Var> = p
        .variables()
        .into_iter()
        .zip(1..)
        .collect();
    p.rename(|v| map[&v])
}

/// A nonzero multilinear polynomial of degree at most `deg p` that is an
/// identity of every rational algebra satisfying `p`.
pub fn multilinearize(p: &NcPolynomial) -> Result<NcPolynomial, LinearizeError> {
    let component = select_component(p)?;
    Ok(renumber(&linearize_homogeneous(&component)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncpoly::{parse_poly, standard_poly, Monomial};
    use crate::Rational;
    use itertools::Itertools;

    fn poly(s: &str) -> NcPolynomial {
        parse_poly(s).unwrap()
    }

    /// Word-level oracle: relabel every nonempty proper subset of the
    /// occurrences of `i` to `j`.
    fn polarize_oracle(p: &NcPolynomial, i: Var, j: Var) -> NcPolynomial {
        let mut out = NcPolynomial::zero();
        for (m, c) in p.terms() {
            let positions: Vec<usize> = (0..m.degree()).filter(|&k| m.word()[k] == i).collect();
            let d = positions.len();
            for mask in 1..(1u32 << d) - 1 {
                let mut w = m.word().to_vec();
                for (bit, &pos) in positions.iter().enumerate() {
                    if mask & (1 << bit) != 0 {
                        w[pos] = j;
                    }
                }
                out.add_term(Monomial::new(w).unwrap(), c.clone());
            }
        }
        out
    }

    #[test]
    fn polarize_square() {
        assert_eq!(polarize(&poly("x1^2"), 1, 2).unwrap(), poly("x1*x2 + x2*x1"));
    }

    #[test]
    fn polarize_cube_matches_word_oracle() {
        let p = poly("x1^3");
        let expected = polarize_oracle(&p, 1, 2);
        assert_eq!(expected.num_terms(), 6);
        assert_eq!(
            expected,
            poly("x1^2*x2 + x1*x2*x1 + x2*x1^2 + x1*x2^2 + x2*x1*x2 + x2^2*x1")
        );
        assert_eq!(polarize(&p, 1, 2).unwrap(), expected);
    }

    #[test]
    fn polarize_with_interleaved_variable() {
        let p = poly("x1*x3*x1");
        let expected = polarize_oracle(&p, 1, 2);
        assert_eq!(expected, poly("x1*x3*x2 + x2*x3*x1"));
        assert_eq!(polarize(&p, 1, 2).unwrap(), expected);
    }

    #[test]
    fn polarize_errors() {
        assert_eq!(polarize(&poly("x1^2"), 3, 4), Err(LinearizeError::VariableAbsent(3)));
        assert_eq!(polarize(&poly("x1*x2"), 1, 2), Err(LinearizeError::NotFresh(2)));
    }

    #[test]
    fn components_partition_by_multidegree() {
        let comps = multihomogeneous_components(&poly("x1^2 + x1*x2")).unwrap();
        assert_eq!(comps, vec![poly("x1^2"), poly("x1*x2")]);
        let st4 = standard_poly(4).unwrap();
        assert_eq!(multihomogeneous_components(&st4).unwrap(), vec![st4]);
        let comps = multihomogeneous_components(&poly("x1*x2 + x2*x1 - x1^2")).unwrap();
        assert_eq!(comps.len(), 2);
        assert!(comps.contains(&poly("x1*x2 + x2*x1")));
        assert!(comps.contains(&poly("-x1^2")));
        assert_eq!(
            multihomogeneous_components(&NcPolynomial::zero()),
            Err(LinearizeError::ZeroPolynomial)
        );
    }

    #[test]
    fn multilinearize_examples() {
        assert_eq!(multilinearize(&poly("x1^2")).unwrap(), poly("x1*x2 + x2*x1"));
        let st4 = standard_poly(4).unwrap();
        assert_eq!(multilinearize(&st4).unwrap(), st4);
        // Renumbering: St on x2, x5 becomes St on x1, x2.
        assert_eq!(
            multilinearize(&poly("x2*x5 - x5*x2")).unwrap(),
            standard_poly(2).unwrap()
        );
    }

    #[test]
    fn multilinearize_cube_is_symmetrizer() {
        // Oracle: two polarization rounds, done on words.
        let round1 = polarize_oracle(&poly("x1^3"), 1, 2);
        let round2 = polarize_oracle(&round1, 1, 3);
        let sym: NcPolynomial = NcPolynomial::from_terms(
            (1..=3u32)
                .permutations(3)
                .map(|w| (Monomial::new(w).unwrap(), Rational::from_integer(1.into()))),
        );
        assert_eq!(round2, sym);
        assert_eq!(multilinearize(&poly("x1^3")).unwrap(), sym);
    }

    #[test]
    fn component_selection_prefers_top_degree_then_lex() {
        let p = poly("x1*x2 + x1^3 + x2^3");
        // Both cubes have total degree 3; (3) > (0,3) lexicographically.
        assert_eq!(select_component(&p).unwrap(), poly("x1^3"));
        assert_eq!(select_component(&poly("x1^2*x2 + x1*x2^2")).unwrap(), poly("x1^2*x2"));
    }

    #[test]
    fn traced_linearization_records_origins() {
        let (g, origin) = linearize_homogeneous_traced(&poly("x2^3*x5")).unwrap();
        assert!(g.is_multilinear());
        assert_eq!(origin.values().filter(|&&v| v == 2).count(), 3);
        assert_eq!(origin.values().filter(|&&v| v == 5).count(), 1);
        assert_eq!(origin.keys().copied().collect::<Vec<_>>(), g.variables().into_iter().collect::<Vec<_>>());
    }

    #[test]
    fn constants_and_linear_terms_are_fixed_points() {
        assert_eq!(multilinearize(&poly("3")).unwrap(), poly("3"));
        assert_eq!(multilinearize(&poly("2*x4")).unwrap(), poly("2*x1"));
    }
}
