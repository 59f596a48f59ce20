//! Recursive-descent parser for the polynomial surface syntax.
//!
//! ```text
//! poly     := sign? term (('+' | '-') term)*
//! term     := rational | (rational '*')? factor ('*' factor)*
//! factor   := atom ('^' nat)?
//! atom     := 'x' nat | '(' poly ')' | '[' poly ',' poly ']' | 'St(' nat ')'
//! rational := ('-')? nat ('/' nat)?
//! ```
//!
//! Whitespace is ignored everywhere. Positions in errors are byte offsets
//! into the original input.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use super::{standard_poly, NcPolynomial, Var};
use crate::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{kind} at position {pos}")]
pub struct ParseError {
    pub pos: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    Expected { expected: &'static str, found: String },
    ZeroVariable,
    BadRational(&'static str),
    NumberTooLarge,
    ZeroStandardDegree,
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::Expected { expected, found } => {
                write!(f, "expected {expected}, found {found}")
            }
            ParseErrorKind::ZeroVariable => write!(f, "variable index 0 (indices start at x1)"),
            ParseErrorKind::BadRational(why) => write!(f, "malformed rational: {why}"),
            ParseErrorKind::NumberTooLarge => write!(f, "number too large"),
            ParseErrorKind::ZeroStandardDegree => write!(f, "St(0) is not defined"),
        }
    }
}

/// Parses a polynomial from its surface syntax.
pub fn parse_poly(text: &str) -> Result<NcPolynomial, ParseError> {
    let mut p = Parser::new(text);
    let poly = p.poly()?;
    p.skip_ws();
    if let Some((pos, c)) = p.peek_raw() {
        return Err(ParseError {
            pos,
            kind: ParseErrorKind::Expected {
                expected: "'+', '-' or end of input",
                found: format!("'{c}'"),
            },
        });
    }
    Ok(poly)
}

struct Parser {
    chars: Vec<(usize, char)>,
    idx: usize,
    len: usize,
}

impl Parser {
    fn new(src: &str) -> Self {
        Parser {
            chars: src.char_indices().collect(),
            idx: 0,
            len: src.len(),
        }
    }

    fn skip_ws(&mut self) {
        while self.idx < self.chars.len() && self.chars[self.idx].1.is_whitespace() {
            self.idx += 1;
        }
    }

    fn peek_raw(&self) -> Option<(usize, char)> {
        self.chars.get(self.idx).copied()
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.peek_raw().map(|(_, c)| c)
    }

    fn pos(&mut self) -> usize {
        self.skip_ws();
        self.peek_raw().map_or(self.len, |(p, _)| p)
    }

    fn found(&mut self) -> String {
        match self.peek() {
            Some(c) => format!("'{c}'"),
            None => "end of input".to_string(),
        }
    }

    fn expected(&mut self, expected: &'static str) -> ParseError {
        let found = self.found();
        ParseError {
            pos: self.pos(),
            kind: ParseErrorKind::Expected { expected, found },
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.idx += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char, what: &'static str) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.expected(what))
        }
    }

    fn digits(&mut self) -> Option<(usize, String)> {
        self.skip_ws();
        let start = self.idx;
        let mut s = String::new();
        while let Some((_, c)) = self.peek_raw() {
            if c.is_ascii_digit() {
                s.push(c);
                self.idx += 1;
            } else {
                break;
            }
        }
        (self.idx > start).then(|| (self.chars[start].0, s))
    }

    fn nat_u32(&mut self, what: &'static str) -> Result<(usize, u32), ParseError> {
        let Some((pos, s)) = self.digits() else {
            return Err(self.expected(what));
        };
        let v = s.parse::<u32>().map_err(|_| ParseError {
            pos,
            kind: ParseErrorKind::NumberTooLarge,
        })?;
        Ok((pos, v))
    }

    fn poly(&mut self) -> Result<NcPolynomial, ParseError> {
        let mut negate = false;
        if self.peek() == Some('-') && !self.next_is_digit_after_minus() {
            self.idx += 1;
            negate = true;
        } else if self.peek() == Some('+') {
            self.idx += 1;
        }
        let first = self.term()?;
        let mut acc = if negate { -first } else { first };
        loop {
            match self.peek() {
                Some('+') => {
                    self.idx += 1;
                    acc += &self.term()?;
                }
                Some('-') => {
                    self.idx += 1;
                    acc -= &self.term()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    /// A leading '-' directly followed by a number belongs to a rational.
    fn next_is_digit_after_minus(&mut self) -> bool {
        let save = self.idx;
        self.idx += 1;
        let r = matches!(self.peek(), Some(c) if c.is_ascii_digit());
        self.idx = save;
        r
    }

    fn rational(&mut self) -> Result<Rational, ParseError> {
        let start = self.pos();
        let negative = self.eat('-');
        let Some((_, num)) = self.digits() else {
            return Err(ParseError {
                pos: start,
                kind: ParseErrorKind::BadRational("missing numerator"),
            });
        };
        let num: BigInt = num.parse().expect("digit string");
        let den: BigInt = if self.eat('/') {
            let Some((_, den)) = self.digits() else {
                return Err(ParseError {
                    pos: start,
                    kind: ParseErrorKind::BadRational("missing denominator"),
                });
            };
            den.parse().expect("digit string")
        } else {
            BigInt::from(1)
        };
        if den.is_zero() {
            return Err(ParseError {
                pos: start,
                kind: ParseErrorKind::BadRational("zero denominator"),
            });
        }
        let r = Rational::new(num, den);
        Ok(if negative { -r } else { r })
    }

    fn term(&mut self) -> Result<NcPolynomial, ParseError> {
        let starts_rational = match self.peek() {
            Some(c) if c.is_ascii_digit() => true,
            Some('-') => true,
            _ => false,
        };
        let mut acc = if starts_rational {
            let c = self.rational()?;
            if !self.eat('*') {
                return Ok(NcPolynomial::constant(c));
            }
            self.factor()?.scale(&c)
        } else {
            self.factor()?
        };
        while self.eat('*') {
            let f = self.factor()?;
            acc = &acc * &f;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<NcPolynomial, ParseError> {
        let base = self.atom()?;
        if self.eat('^') {
            let (_, k) = self.nat_u32("an exponent")?;
            return Ok(base.pow(k));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<NcPolynomial, ParseError> {
        match self.peek() {
            Some('x') => {
                self.idx += 1;
                let (pos, i) = self.nat_u32("a variable index after 'x'")?;
                if i == 0 {
                    return Err(ParseError {
                        pos,
                        kind: ParseErrorKind::ZeroVariable,
                    });
                }
                Ok(NcPolynomial::var(i as Var))
            }
            Some('(') => {
                self.idx += 1;
                let p = self.poly()?;
                self.expect(')', "')'")?;
                Ok(p)
            }
            Some('[') => {
                self.idx += 1;
                let a = self.poly()?;
                self.expect(',', "','")?;
                let b = self.poly()?;
                self.expect(']', "']'")?;
                Ok(a.commutator(&b))
            }
            Some('S') => {
                self.idx += 1;
                self.expect('t', "'St('")?;
                self.expect('(', "'('")?;
                let (pos, m) = self.nat_u32("a degree")?;
                self.expect(')', "')'")?;
                standard_poly(m as usize).map_err(|_| ParseError {
                    pos,
                    kind: ParseErrorKind::ZeroStandardDegree,
                })
            }
            _ => Err(self.expected("'x', '(', '[' or 'St('")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncpoly::Monomial;

    fn x(i: Var) -> NcPolynomial {
        NcPolynomial::var(i)
    }

    #[test]
    fn commutator_sugar() {
        assert_eq!(parse_poly("[x1,x2]").unwrap(), standard_poly(2).unwrap());
    }

    #[test]
    fn standard_poly_sugar() {
        assert_eq!(parse_poly("St(4)").unwrap(), standard_poly(4).unwrap());
        assert_eq!(parse_poly(" S t ( 3 ) ").unwrap(), standard_poly(3).unwrap());
    }

    #[test]
    fn direct_reading_with_fraction() {
        let p = parse_poly("1/2*x1^2 - x2*x1").unwrap();
        let expected = NcPolynomial::from_terms([
            (Monomial::new(vec![1, 1]).unwrap(), Rational::new(1.into(), 2.into())),
            (Monomial::new(vec![2, 1]).unwrap(), Rational::from_integer((-1).into())),
        ]);
        assert_eq!(p, expected);
    }

    #[test]
    fn nested_and_powers() {
        let p = parse_poly("[x1,x2]^2").unwrap();
        let c = x(1).commutator(&x(2));
        assert_eq!(p, &c * &c);
        let q = parse_poly("(x1 + x2)^3 - x1^3").unwrap();
        assert_eq!(q, &(&x(1) + &x(2)).pow(3) - &x(1).pow(3));
        assert_eq!(parse_poly("-x1 + -2*x2").unwrap(), -&x(1) - x(2).scale(&Rational::from_integer(2.into())));
        assert_eq!(parse_poly("3").unwrap(), NcPolynomial::constant(Rational::from_integer(3.into())));
        assert!(parse_poly("0").unwrap().is_zero());
    }

    #[test]
    fn error_positions() {
        let e = parse_poly("x1 + x0").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::ZeroVariable);
        assert_eq!(e.pos, 6);

        let e = parse_poly("1/0*x1").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::BadRational("zero denominator"));
        assert_eq!(e.pos, 0);

        let e = parse_poly("x1 + 1/*x2").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::BadRational("missing denominator"));

        let e = parse_poly("x1 * ").unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::Expected { .. }));
        assert_eq!(e.pos, 5);

        let e = parse_poly("x1 x2").unwrap_err();
        assert_eq!(e.pos, 3);

        assert_eq!(parse_poly("St(0)").unwrap_err().kind, ParseErrorKind::ZeroStandardDegree);
        assert!(parse_poly("[x1 x2]").is_err());
        assert!(parse_poly("").is_err());
    }
}
