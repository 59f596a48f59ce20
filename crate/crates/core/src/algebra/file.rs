//! Plain-text algebra description.
//!
//! ```text
//! # comment
//! dim 2
//! unit 1 0                 # optional
//! e 2 2 : -1 0             # coordinates of e2 * e2
//! ```
//!
//! Omitted products are zero. Without a `unit` line a two-sided identity is
//! solved for and recorded when it exists.

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use super::{AlgebraError, StructureAlgebra};
use crate::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraFileError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("invalid algebra: {0}")]
    Invalid(#[from] AlgebraError),
}

fn syntax(line: usize, message: impl Into<String>) -> AlgebraFileError {
    AlgebraFileError::Syntax {
        line,
        message: message.into(),
    }
}

/// Parses `p/q` or `p` (optionally negative).
pub fn parse_rational(tok: &str) -> Option<Rational> {
    let (num, den) = match tok.split_once('/') {
        Some((n, d)) => (n, d),
        None => (tok, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    if den.starts_with(['-', '+']) {
        return None;
    }
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(Rational::new(num, den))
}

fn parse_coords(line: usize, toks: &[&str], dim: usize) -> Result<Vec<Rational>, AlgebraFileError> {
    if toks.len() != dim {
        return Err(syntax(
            line,
            format!("expected {dim} coordinates, found {}", toks.len()),
        ));
    }
    toks.iter()
        .map(|t| parse_rational(t).ok_or_else(|| syntax(line, format!("malformed rational '{t}'"))))
        .collect()
}

fn parse_index(line: usize, tok: Option<&&str>, dim: usize) -> Result<usize, AlgebraFileError> {
    let tok = tok.ok_or_else(|| syntax(line, "missing basis index"))?;
    let i: usize = tok
        .parse()
        .map_err(|_| syntax(line, format!("malformed basis index '{tok}'")))?;
    if i == 0 || i > dim {
        return Err(syntax(line, format!("basis index {i} out of range 1..={dim}")));
    }
    Ok(i - 1)
}

pub fn parse_algebra_file(text: &str) -> Result<StructureAlgebra, AlgebraFileError> {
    let mut dim: Option<usize> = None;
    let mut unit: Option<Vec<Rational>> = None;
    let mut products: Vec<Vec<Option<Vec<Rational>>>> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let toks: Vec<&str> = content.split_whitespace().collect();
        match (toks[0], dim) {
            ("dim", None) => {
                let n: usize = toks
                    .get(1)
                    .and_then(|t| t.parse().ok())
                    .filter(|&n| n > 0)
                    .ok_or_else(|| syntax(line, "expected 'dim N' with N >= 1"))?;
                if toks.len() > 2 {
                    return Err(syntax(line, "trailing tokens after dimension"));
                }
                dim = Some(n);
                products = vec![vec![None; n]; n];
            }
            ("dim", Some(_)) => return Err(syntax(line, "duplicate 'dim' line")),
            (_, None) => return Err(syntax(line, "first entry must be 'dim N'")),
            ("unit", Some(n)) => {
                if unit.is_some() {
                    return Err(syntax(line, "duplicate 'unit' line"));
                }
                unit = Some(parse_coords(line, &toks[1..], n)?);
            }
            ("e", Some(n)) => {
                let i = parse_index(line, toks.get(1), n)?;
                let j = parse_index(line, toks.get(2), n)?;
                if toks.get(3) != Some(&":") {
                    return Err(syntax(line, "expected ':' after the two basis indices"));
                }
                let coords = parse_coords(line, &toks[4..], n)?;
                if products[i][j].replace(coords).is_some() {
                    return Err(syntax(line, format!("duplicate product e{} e{}", i + 1, j + 1)));
                }
            }
            (other, Some(_)) => return Err(syntax(line, format!("unknown directive '{other}'"))),
        }
    }
    let n = dim.ok_or_else(|| syntax(text.lines().count().max(1), "missing 'dim N' line"))?;
    let products = products
        .into_iter()
        .map(|row| {
            row.into_iter()
                .map(|p| p.unwrap_or_else(|| vec![Rational::zero(); n]))
                .collect()
        })
        .collect();
    let has_unit = unit.is_some();
    let alg = StructureAlgebra::new(n, products, unit)?;
    Ok(if has_unit { alg } else { alg.detect_unit() })
}
