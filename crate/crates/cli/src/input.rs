//! Parsing of algebra selectors, elements and element pairs.

use polyid_core::algebra::{
    mat_algebra, parse_algebra_file, parse_rational, quadratic_field, quaternion_algebra,
    upper_triangular_algebra, zero_mult_algebra, Element, StructureAlgebra,
};
use polyid_core::ncpoly::{parse_poly, NcPolynomial};
use polyid_core::Rational;

/// One-line input error.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputError(pub String);

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

fn err(msg: impl Into<String>) -> InputError {
    InputError(msg.into())
}

fn size(selector: &str, arg: &str) -> Result<usize, InputError> {
    match arg.parse::<usize>() {
        Ok(k) if k >= 1 => Ok(k),
        _ => Err(err(format!("algebra selector '{selector}': size '{arg}' must be a positive integer"))),
    }
}

/// `matn:K`, `quaternion`, `zeromult:K`, `uppertri:K`, `quadratic:D`, `file:PATH`.
pub fn parse_algebra(selector: &str) -> Result<StructureAlgebra, InputError> {
    let (kind, arg) = match selector.split_once(':') {
        Some((k, a)) => (k, Some(a)),
        None => (selector, None),
    };
    match (kind, arg) {
        ("matn", Some(a)) => Ok(mat_algebra(size(selector, a)?)),
        ("zeromult", Some(a)) => Ok(zero_mult_algebra(size(selector, a)?)),
        ("uppertri", Some(a)) => Ok(upper_triangular_algebra(size(selector, a)?)),
        ("quaternion", None) => Ok(quaternion_algebra()),
        ("quadratic", Some(a)) => {
            let d: i64 = a
                .parse()
                .map_err(|_| err(format!("algebra selector '{selector}': '{a}' is not an integer")))?;
            Ok(quadratic_field(d))
        }
        ("file", Some(path)) => {
            let text = std::fs::read_to_string(path).map_err(|e| err(format!("cannot read '{path}': {e}")))?;
            parse_algebra_file(&text).map_err(|e| err(format!("{path}: {e}")))
        }
        _ => Err(err(format!(
            "unknown algebra selector '{selector}' (expected matn:K, quaternion, zeromult:K, uppertri:K, quadratic:D or file:PATH)"
        ))),
    }
}

pub fn parse_polynomial(text: &str) -> Result<NcPolynomial, InputError> {
    parse_poly(text).map_err(|e| err(format!("cannot parse polynomial '{text}': {e}")))
}

/// Splits `a - 1/2*b + c` into signed terms, keeping signs that follow `*` or `/`.
fn signed_terms(text: &str) -> Vec<(bool, String)> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let mut terms = Vec::new();
    let mut negative = false;
    let mut current = String::new();
    let mut prev: Option<char> = None;
    for c in compact.chars() {
        let splits = (c == '+' || c == '-') && !matches!(prev, Some('*') | Some('/'));
        if splits {
            if !current.is_empty() || prev.is_some() {
                terms.push((negative, std::mem::take(&mut current)));
            }
            negative = c == '-';
        } else {
            current.push(c);
        }
        prev = Some(c);
    }
    terms.push((negative, current));
    terms
}

/// An element written as `[c1,...,cn]` or as a combination of basis names
/// (`e11 - 1/2*e22`, `1 + 2*i`); a bare rational means a multiple of the unit.
pub fn parse_element(alg: &StructureAlgebra, text: &str) -> Result<Element, InputError> {
    let trimmed = text.trim();
    if let Some(inner) = trimmed.strip_prefix('[').and_then(|t| t.strip_suffix(']')) {
        let coords = inner
            .split(',')
            .map(|t| {
                let t = t.trim();
                parse_rational(t).ok_or_else(|| err(format!("malformed coordinate '{t}' in '{text}'")))
            })
            .collect::<Result<Vec<Rational>, _>>()?;
        if coords.len() != alg.dim() {
            return Err(err(format!(
                "element '{text}' has {} coordinates, algebra has dimension {}",
                coords.len(),
                alg.dim()
            )));
        }
        return Ok(Element::new(coords));
    }
    let mut out = alg.zero();
    for (negative, term) in signed_terms(trimmed) {
        if term.is_empty() {
            return Err(err(format!("empty term in element '{text}'")));
        }
        let (coef, element) = term_value(alg, &term, text)?;
        let coef = if negative { -coef } else { coef };
        out.add_scaled(&coef, &element);
    }
    Ok(out)
}

fn basis_by_name(alg: &StructureAlgebra, name: &str) -> Option<Element> {
    alg.names().iter().position(|n| n == name).map(|i| alg.basis(i))
}

fn term_value(alg: &StructureAlgebra, term: &str, text: &str) -> Result<(Rational, Element), InputError> {
    if let Some(e) = basis_by_name(alg, term) {
        return Ok((Rational::from_integer(1.into()), e));
    }
    if let Some((coef, name)) = term.rsplit_once('*') {
        let c = parse_rational(coef).ok_or_else(|| err(format!("malformed coefficient '{coef}' in '{text}'")))?;
        let e = basis_by_name(alg, name).ok_or_else(|| err(format!("unknown basis element '{name}' in '{text}'")))?;
        return Ok((c, e));
    }
    if let Some(c) = parse_rational(term) {
        let unit = alg
            .unit()
            .ok_or_else(|| err(format!("scalar '{term}' in '{text}' needs an algebra with unit")))?;
        return Ok((c, unit.clone()));
    }
    Err(err(format!("unknown basis element '{term}' in '{text}'")))
}

/// `a1:b1; a2:b2; ...` (an empty string is the empty list).
pub fn parse_pairs(alg: &StructureAlgebra, text: &str) -> Result<Vec<(Element, Element)>, InputError> {
    text.split(';')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|pair| {
            let (a, b) = pair
                .split_once(':')
                .ok_or_else(|| err(format!("pair '{pair}' must be written a:b")))?;
            Ok((parse_element(alg, a)?, parse_element(alg, b)?))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    #[test]
    fn selectors() {
        assert_eq!(parse_algebra("matn:2").unwrap().dim(), 4);
        assert_eq!(parse_algebra("quaternion").unwrap().dim(), 4);
        assert_eq!(parse_algebra("zeromult:3").unwrap().dim(), 3);
        assert_eq!(parse_algebra("uppertri:2").unwrap().dim(), 3);
        assert_eq!(parse_algebra("quadratic:-1").unwrap().dim(), 2);
        assert!(parse_algebra("matn:0").is_err());
        assert!(parse_algebra("matn").is_err());
        assert!(parse_algebra("octonion").is_err());
        assert!(parse_algebra("file:/nonexistent/x.alg").is_err());
    }

    #[test]
    fn elements() {
        let m2 = mat_algebra(2);
        assert_eq!(parse_element(&m2, "e11 - 1/2*e22").unwrap(), Element::new(vec![
            Rational::from_integer(1.into()),
            Rational::zero(),
            Rational::zero(),
            Rational::new((-1).into(), 2.into()),
        ]));
        assert_eq!(parse_element(&m2, "[1,2,3,4]").unwrap(), Element::from_integers(&[1, 2, 3, 4]));
        assert_eq!(parse_element(&m2, "2").unwrap(), Element::from_integers(&[2, 0, 0, 2]));
        assert_eq!(parse_element(&m2, "-e12 + 3*e21").unwrap(), Element::from_integers(&[0, -1, 3, 0]));
        assert_eq!(parse_element(&m2, "-3/2*e12").unwrap().coords()[1], Rational::new((-3).into(), 2.into()));
        assert!(parse_element(&m2, "e13").is_err());
        assert!(parse_element(&m2, "[1,2]").is_err());
        assert!(parse_element(&m2, "e11 +").is_err());
        let h = quaternion_algebra();
        assert_eq!(parse_element(&h, "1 + 2*i").unwrap(), Element::from_integers(&[1, 2, 0, 0]));
        assert!(parse_element(&zero_mult_algebra(2), "1").is_err());
    }

    #[test]
    fn pairs() {
        let m2 = mat_algebra(2);
        let p = parse_pairs(&m2, "e11:e12; e22 : e21").unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(p[1], (m2.basis(3), m2.basis(2)));
        assert!(parse_pairs(&m2, "e11").is_err());
        assert!(parse_pairs(&m2, "").unwrap().is_empty());
    }
}
