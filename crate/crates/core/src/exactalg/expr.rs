//! Plain-text grammar shared by every polynomial-like type:
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := number | atom ['^' ['-'] digits]
//! number := digits ['/' digits]
//! atom   := letters ['_' (digits | '{' digits (',' digits)* '}')]
//! ```
//!
//! Examples: `5/2*T_2`, `1/4*T_0^2 - 3*T_1`, `t_{2,1}*t_{0,0}`, `q^-1 + 2*q`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use super::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

impl ParseError {
    /// Error located at byte offset `pos` of `src`.
    pub fn at(src: &str, pos: usize, message: impl Into<String>) -> Self {
        let pos = pos.min(src.len());
        let before = &src[..pos];
        let line = before.matches('\n').count() + 1;
        let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        ParseError {
            line,
            column,
            message: message.into(),
        }
    }
}

/// A variable symbol such as `T_3`, `t_{2,1}` or `q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Atom {
    pub name: String,
    pub subscript: Vec<u64>,
    /// Byte offset in the source, for error reporting.
    pub pos: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ParsedTerm {
    pub coeff: Rational,
    pub factors: Vec<(Atom, i64)>,
}

struct Cursor<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn err(&self, msg: impl Into<String>) -> ParseError {
        ParseError::at(self.src, self.pos, msg)
    }

    fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected '{}'", c as char)))
        }
    }

    fn digits(&mut self) -> Result<&'a str, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        Ok(&self.src[start..self.pos])
    }

    fn number(&mut self) -> Result<Rational, ParseError> {
        let n: BigInt = self.digits()?.parse().expect("digits");
        let d: BigInt = if self.peek() == Some(b'/') {
            self.pos += 1;
            let at = self.pos;
            let d: BigInt = self.digits()?.parse().expect("digits");
            if d == BigInt::from(0) {
                return Err(ParseError::at(self.src, at, "zero denominator"));
            }
            d
        } else {
            BigInt::one()
        };
        Ok(Rational::new(n, d))
    }

    fn small(&mut self) -> Result<u64, ParseError> {
        let at = self.pos;
        self.digits()?
            .parse()
            .map_err(|_| ParseError::at(self.src, at, "index too large"))
    }

    fn atom(&mut self) -> Result<Atom, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_alphabetic() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a number or a variable"));
        }
        let name = self.src[start..self.pos].to_string();
        let mut subscript = Vec::new();
        if self.bytes.get(self.pos) == Some(&b'_') {
            self.pos += 1;
            if self.peek() == Some(b'{') {
                self.pos += 1;
                subscript.push(self.small()?);
                while self.peek() == Some(b',') {
                    self.pos += 1;
                    subscript.push(self.small()?);
                }
                self.expect(b'}')?;
            } else {
                subscript.push(self.small()?);
            }
        }
        Ok(Atom {
            name,
            subscript,
            pos: start,
        })
    }

    fn exponent(&mut self) -> Result<i64, ParseError> {
        if self.peek() != Some(b'^') {
            return Ok(1);
        }
        self.pos += 1;
        let neg = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let e = self.small()? as i64;
        Ok(if neg { -e } else { e })
    }

    fn term(&mut self, sign: bool) -> Result<ParsedTerm, ParseError> {
        let mut coeff = if sign { -Rational::one() } else { Rational::one() };
        let mut factors = Vec::new();
        loop {
            match self.peek() {
                Some(c) if c.is_ascii_digit() => coeff *= self.number()?,
                Some(c) if c.is_ascii_alphabetic() => {
                    let a = self.atom()?;
                    let e = self.exponent()?;
                    factors.push((a, e));
                }
                None => return Err(self.err("unexpected end of input")),
                Some(c) => return Err(self.err(format!("unexpected '{}'", c as char))),
            }
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else {
                return Ok(ParsedTerm { coeff, factors });
            }
        }
    }
}

/// Parses a sum of monomial terms. Repeated atoms within a term are kept as separate factors;
/// callers combine them when mapping atoms to their own variable type.
pub fn parse_terms(src: &str) -> Result<Vec<ParsedTerm>, ParseError> {
    let mut cur = Cursor {
        src,
        bytes: src.as_bytes(),
        pos: 0,
    };
    let mut terms = Vec::new();
    let mut sign = match cur.peek() {
        Some(b'-') => {
            cur.pos += 1;
            true
        }
        Some(b'+') => {
            cur.pos += 1;
            false
        }
        None => return Err(cur.err("empty expression")),
        _ => false,
    };
    loop {
        terms.push(cur.term(sign)?);
        match cur.peek() {
            None => return Ok(terms),
            Some(b'+') => sign = false,
            Some(b'-') => sign = true,
            Some(c) => return Err(cur.err(format!("unexpected '{}'", c as char))),
        }
        cur.pos += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rational::rat;

    #[test]
    fn parses_fock_style_terms() {
        let t = parse_terms("5/2*T_2 - T_0^3*T_1").unwrap();
        assert_eq!(t.len(), 2);
        assert_eq!(t[0].coeff, rat(5, 2));
        assert_eq!(t[0].factors[0].0.name, "T");
        assert_eq!(t[0].factors[0].0.subscript, vec![2]);
        assert_eq!(t[1].coeff, rat(-1, 1));
        assert_eq!(t[1].factors[0].1, 3);
    }

    #[test]
    fn parses_braced_subscripts_and_negative_powers() {
        let t = parse_terms("t_{2,1}*t_{0,0} + 3*q^-2").unwrap();
        assert_eq!(t[0].factors[0].0.subscript, vec![2, 1]);
        assert_eq!(t[1].factors[0].1, -2);
    }

    #[test]
    fn reports_column() {
        let e = parse_terms("T_1 + * T_2").unwrap_err();
        assert_eq!(e.line, 1);
        assert_eq!(e.column, 7);
        let e = parse_terms("T_1 +\n 2/0").unwrap_err();
        assert_eq!(e.line, 2);
    }
}
