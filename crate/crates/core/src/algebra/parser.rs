//! Recursive-descent parser for polynomial expressions.
//!
//! Grammar: integer and rational literals (`7`, `2/3`), variables `x0…xN`,
//! operators `+ - * ^`, parentheses, and an implicit coefficient of 1.
//! `/` is only part of a rational literal, never a general operator.

use num_bigint::BigInt;
use num_traits::One;

use super::{Polynomial, Rational};

/// Parse failure with the byte offset where it happened.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "parse error at byte {}: {}", self.position, self.message)
    }
}

impl std::error::Error for ParseError {}

/// Parse `text` into a canonical polynomial in `num_vars` variables.
pub fn parse_polynomial(text: &str, num_vars: usize) -> Result<Polynomial, ParseError> {
    let mut p = Parser {
        bytes: text.as_bytes(),
        pos: 0,
        num_vars,
    };
    p.skip_ws();
    if p.at_end() {
        return Err(p.error("empty expression"));
    }
    let poly = p.expr()?;
    p.skip_ws();
    if !p.at_end() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(poly)
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
    num_vars: usize,
}

impl<'a> Parser<'a> {
    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError { position: self.pos, message: message.into() }
    }

    fn error_at(&self, position: usize, message: impl Into<String>) -> ParseError {
        ParseError { position, message: message.into() }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.bytes.len()
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b' ' | b'\t' | b'\n' | b'\r')) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, byte: u8) -> bool {
        if self.peek() == Some(byte) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    // expr := term (('+' | '-') term)*
    fn expr(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.term()?;
        loop {
            self.skip_ws();
            if self.eat(b'+') {
                let rhs = self.term()?;
                acc = acc.checked_add(&rhs).expect("parser keeps one ring");
            } else if self.eat(b'-') {
                let rhs = self.term()?;
                acc = acc.checked_sub(&rhs).expect("parser keeps one ring");
            } else {
                return Ok(acc);
            }
        }
    }

    // term := factor ('*' factor)*
    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.factor()?;
        loop {
            self.skip_ws();
            if self.eat(b'*') {
                let rhs = self.factor()?;
                acc = acc.checked_mul(&rhs).expect("parser keeps one ring");
            } else {
                return Ok(acc);
            }
        }
    }

    // factor := '-' factor | atom ('^' exponent)?
    fn factor(&mut self) -> Result<Polynomial, ParseError> {
        self.skip_ws();
        if self.eat(b'-') {
            return Ok(self.factor()?.neg());
        }
        let base = self.atom()?;
        self.skip_ws();
        if self.eat(b'^') {
            let e = self.exponent()?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    // atom := literal | variable | '(' expr ')'
    fn atom(&mut self) -> Result<Polynomial, ParseError> {
        self.skip_ws();
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.skip_ws();
                if !self.eat(b')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(inner)
            }
            Some(b'x') => {
                let start = self.pos;
                self.pos += 1;
                let index = self.integer_literal().map_err(|_| {
                    self.error_at(start, "variable name must be x<index>")
                })?;
                let index: usize = index.try_into().map_err(|_| {
                    self.error_at(start, "variable index too large")
                })?;
                if index >= self.num_vars {
                    return Err(self.error_at(
                        start,
                        format!(
                            "variable x{index} out of range for {} variables (x0..x{})",
                            self.num_vars,
                            self.num_vars - 1
                        ),
                    ));
                }
                Ok(Polynomial::variable(index, self.num_vars))
            }
            Some(c) if c.is_ascii_digit() => {
                let numer = self.integer_literal()?;
                let mut value = Rational::from_integer(BigInt::from(numer));
                if self.peek() == Some(b'/') {
                    let slash = self.pos;
                    self.pos += 1;
                    let denom = self.integer_literal().map_err(|_| {
                        self.error_at(slash + 1, "expected denominator after '/'")
                    })?;
                    if denom == 0 {
                        return Err(self.error_at(slash + 1, "zero denominator"));
                    }
                    value = Rational::new(value.numer() * BigInt::one(), BigInt::from(denom));
                }
                Ok(Polynomial::constant(self.num_vars, value))
            }
            Some(c) => Err(self.error(format!("unexpected character '{}'", c as char))),
            None => Err(self.error("unexpected end of input")),
        }
    }

    // exponent := integer; a leading '-' is reported as a negative exponent.
    fn exponent(&mut self) -> Result<u32, ParseError> {
        self.skip_ws();
        if self.peek() == Some(b'-') {
            return Err(self.error("negative exponent"));
        }
        let start = self.pos;
        let value = self.integer_literal()?;
        value
            .try_into()
            .map_err(|_| self.error_at(start, "exponent too large"))
    }

    fn integer_literal(&mut self) -> Result<u64, ParseError> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.error("expected an integer"));
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .expect("digits are ascii")
            .parse()
            .map_err(|_| self.error_at(start, "integer literal too large"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, Monomial};

    #[test]
    fn literal_and_parentheses() {
        let q = parse_polynomial("(x0 + x1)^2 - 2*x0*x1", 2).unwrap();
        assert_eq!(q, parse_polynomial("x0^2 + x1^2", 2).unwrap());
    }

    #[test]
    fn unary_minus_binds_tighter_than_sums() {
        let q = parse_polynomial("-x0^2 + x1^2", 2).unwrap();
        assert_eq!(q.coefficient(&Monomial::new(vec![2, 0])), rat(-1, 1));
        assert_eq!(q.coefficient(&Monomial::new(vec![0, 2])), rat(1, 1));
    }

    #[test]
    fn rational_literal_only_after_number() {
        let err = parse_polynomial("x0/2", 2).unwrap_err();
        assert!(err.position > 0);
    }

    #[test]
    fn negative_exponent_rejected_with_position() {
        let err = parse_polynomial("x1^-2", 3).unwrap_err();
        assert_eq!(err.position, 3);
        assert!(err.message.contains("negative exponent"));
    }

    #[test]
    fn zero_parses_to_zero_polynomial() {
        assert!(parse_polynomial("0", 3).unwrap().is_zero());
    }

    #[test]
    fn juxtaposition_is_an_error() {
        assert!(parse_polynomial("2x0", 2).is_err());
    }
}
