//! Recursive-descent parser for monomial form expressions.
//!
//! ```text
//! expr := term (('*' | whitespace) term)*
//! term := gen ('^' signed-integer)?
//! gen  := Delta | Delta2 | j | j2 | G(h) | Egamma2 | E04 | Einf4
//!       | E(N,inf,k) | phi(N) | Phi(N) | S(n,d) | T(h) | T2(h)
//! ```

use std::fmt;

use super::{FormExpr, Generator};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub struct ParseError {
    /// Byte offset into the input.
    pub position: usize,
    pub expected: Vec<String>,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at position {}: {}", self.position, self.message)?;
        if !self.expected.is_empty() {
            write!(f, " (expected one of: {})", self.expected.join(", "))?;
        }
        Ok(())
    }
}

const GENERATORS: &[&str] = &[
    "Delta", "Delta2", "j", "j2", "G(", "Egamma2", "E04", "Einf4", "E(", "phi(", "Phi(", "S(",
    "T(", "T2(",
];

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn skip_ws(&mut self) -> bool {
        let start = self.pos;
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
        self.pos > start
    }

    fn err(&self, pos: usize, expected: &[&str], message: impl Into<String>) -> ParseError {
        ParseError {
            position: pos,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            message: message.into(),
        }
    }

    fn expect(&mut self, tok: &str) -> Result<(), ParseError> {
        self.skip_ws();
        if self.src[self.pos..].starts_with(tok) {
            self.pos += tok.len();
            Ok(())
        } else {
            Err(self.err(self.pos, &[tok], format!("expected '{tok}'")))
        }
    }

    fn ident(&mut self) -> &'a str {
        let start = self.pos;
        while let Some(c) = self.peek() {
            if c.is_ascii_alphanumeric() {
                self.pos += 1;
            } else {
                break;
            }
        }
        &self.src[start..self.pos]
    }

    fn integer(&mut self, signed: bool) -> Result<i64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        if signed && matches!(self.peek(), Some('-') | Some('+')) {
            self.pos += 1;
            self.skip_ws();
        }
        let digits_start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == digits_start {
            let exp: &[&str] = if signed { &["integer", "-"] } else { &["integer"] };
            return Err(self.err(self.pos, exp, "expected an integer"));
        }
        let text: String = self.src[start..self.pos].chars().filter(|c| !c.is_whitespace()).collect();
        text.parse::<i64>()
            .map_err(|_| self.err(start, &["integer"], format!("integer '{text}' out of range")))
    }

    fn arg(&mut self) -> Result<u32, ParseError> {
        let start = self.pos;
        let v = self.integer(false)?;
        u32::try_from(v).map_err(|_| self.err(start, &["integer"], "argument out of range"))
    }

    fn generator(&mut self) -> Result<Generator, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let name = self.ident();
        let g = match name {
            "Delta" => Generator::Delta,
            "Delta2" => Generator::Delta2,
            "j" => Generator::J,
            "j2" => Generator::J2,
            "Egamma2" => Generator::Egamma2,
            "E04" => Generator::E04,
            "Einf4" => Generator::Einf4,
            "G" | "E" | "phi" | "Phi" | "S" | "T" | "T2" => {
                self.expect("(")?;
                let g = match name {
                    "G" => Generator::G(self.arg()?),
                    "E" => {
                        let level = self.arg()?;
                        self.expect(",")?;
                        self.expect("inf")?;
                        self.expect(",")?;
                        Generator::EInf { level, k: self.arg()? }
                    }
                    "phi" => Generator::Phi(self.arg()?),
                    "Phi" => Generator::PhiRoot(self.arg()?),
                    "S" => {
                        let n = self.arg()?;
                        self.expect(",")?;
                        Generator::S { n, d: self.arg()? }
                    }
                    "T" => Generator::T(self.arg()?),
                    _ => Generator::T2(self.arg()?),
                };
                self.expect(")")?;
                g
            }
            "" => return Err(self.err(start, GENERATORS, "expected a generator")),
            other => {
                return Err(self.err(start, GENERATORS, format!("unknown generator '{other}'")))
            }
        };
        g.validate().map_err(|e| self.err(start, &[], e.to_string()))
    }

    fn term(&mut self) -> Result<(Generator, i64), ParseError> {
        let g = self.generator()?;
        let before = self.pos;
        self.skip_ws();
        let mut e = 1;
        if self.peek() != Some('^') {
            self.pos = before;
        } else {
            self.pos += 1;
            let at = self.pos;
            e = self.integer(true)?;
            if e == 0 {
                return Err(self.err(at, &[], "zero exponent is not allowed"));
            }
        }
        Ok((g, e))
    }

    fn expr(&mut self) -> Result<FormExpr, ParseError> {
        let mut factors = vec![self.term()?];
        loop {
            let ws = self.skip_ws();
            match self.peek() {
                None => break,
                Some('*') => {
                    self.pos += 1;
                }
                Some(_) if ws => {}
                Some(_) => {
                    return Err(self.err(self.pos, &["*", "^", "whitespace", "end of input"], "unexpected character"))
                }
            }
            factors.push(self.term()?);
        }
        Ok(FormExpr { factors })
    }
}

/// Parses a form expression. Parameters are validated here, so a successful
/// parse always evaluates.
pub fn parse_expr(src: &str) -> Result<FormExpr> {
    let mut p = Parser { src, pos: 0 };
    p.expr().map_err(Error::from)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perr(s: &str) -> ParseError {
        match parse_expr(s) {
            Err(Error::Parse(e)) => e,
            other => panic!("{s}: expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn parses_every_generator() {
        let e = parse_expr(
            "Delta Delta2 j j2 G(4) Egamma2 E04 Einf4 E(3,inf,6) phi(2) Phi(3) S(1,2) T(20) T2(10)",
        )
        .unwrap();
        assert_eq!(e.factors.len(), 14);
        assert_eq!(e.factors[8].0, Generator::EInf { level: 3, k: 6 });
        assert_eq!(e.factors[10].0, Generator::PhiRoot(3));
    }

    #[test]
    fn exponents_and_separators() {
        let a = parse_expr("Egamma2^2*E04 * Einf4^-3").unwrap();
        let b = parse_expr("  Egamma2 ^ 2   E04\tEinf4^ - 3 ").unwrap();
        assert_eq!(a, b);
        assert_eq!(a.factors[2], (Generator::Einf4, -3));
        assert_eq!(parse_expr("G( 12 )^+2").unwrap().factors[0], (Generator::G(12), 2));
        assert_eq!(parse_expr("E( 2 , inf , 8 )^-1").unwrap().factors[0].0, Generator::EInf { level: 2, k: 8 });
    }

    #[test]
    fn display_round_trips() {
        for s in ["Delta^-1", "Egamma2^2 * E04 * Einf4^-4", "E(3,inf,12)^-5", "phi(3)^-1 * G(10)", "S(2,4)^-3"] {
            let e = parse_expr(s).unwrap();
            assert_eq!(e.to_string(), s);
            assert_eq!(parse_expr(&e.to_string()).unwrap(), e);
        }
    }

    #[test]
    fn errors_report_position_and_expectations() {
        let e = perr("Delta^0");
        assert!(e.message.contains("zero exponent"));
        assert_eq!(e.position, 6);

        let e = perr("Delta * Foo");
        assert_eq!(e.position, 8);
        assert!(e.expected.iter().any(|t| t == "Delta"));

        let e = perr("Delta^");
        assert_eq!(e.position, 6);
        assert!(e.expected.iter().any(|t| t == "integer"));

        let e = perr("E(2,8)");
        assert_eq!(e.expected, vec!["inf".to_string()]);

        let e = perr("G(4");
        assert_eq!(e.expected, vec![")".to_string()]);

        assert!(perr("").message.contains("generator"));
        assert!(perr("Delta)").message.contains("unexpected"));
        assert!(perr("Delta *").message.contains("generator"));
    }

    #[test]
    fn parameters_are_validated() {
        assert!(perr("G(5)").message.contains("even"));
        assert!(perr("E(5,inf,4)").message.contains("level"));
        assert!(perr("S(3,2)").message.contains("S(3,2)"));
        assert!(perr("T(2)").message.contains("T(2)"));
        assert!(parse_expr("T2(2)").is_ok());
        assert!(parse_expr("G(0)").is_ok());
        assert!(parse_expr("G(2)").is_ok());
    }
}
