//! Recursive-descent parser for expressions over the double plane.
//!
//! Grammar, loosest binding first:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' number)?
//! atom   := number 'j'? | 'j' | 'h' | name '(' expr ')' | '(' expr ')'
//! ```
//!
//! Exponents must be number literals: an integer-shaped one becomes an
//! integer power, anything with a point or exponent field a real power.
//! `conj(...)` is built in; every other name resolves through the function
//! registry, so the aliases (`ln`, `asin`, `sqrt`, ...) work here too.

use std::fmt;
use std::str::FromStr;

use splitplane_core::expr::{Builtin, Expr};
use splitplane_core::DoubleNumber;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseError {
    Syntax { offset: usize, expected: &'static str },
    UnknownFunction { offset: usize, name: String },
    ExponentRange { offset: usize },
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseError::Syntax { offset, expected } => {
                write!(f, "expected {expected} at byte {offset}")
            }
            ParseError::UnknownFunction { offset, name } => {
                write!(f, "unknown function `{name}` at byte {offset}")
            }
            ParseError::ExponentRange { offset } => {
                write!(f, "integer exponent out of range at byte {offset}")
            }
        }
    }
}

impl std::error::Error for ParseError {}

/// Parses the expression text, requiring it to be consumed completely.
pub fn parse_expr(src: &str) -> Result<Expr, ParseError> {
    let mut p = Parser { src: src.as_bytes(), pos: 0 };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(ParseError::Syntax { offset: p.pos, expected: "end of input" });
    }
    Ok(e)
}

/// A parsed expression that remembers its source text, for echoing into
/// output metadata. The `FromStr` form is what the command line uses.
#[derive(Debug, Clone)]
pub struct ExprArg {
    pub expr: Expr,
    pub src: String,
}

impl FromStr for ExprArg {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        Ok(ExprArg { expr: parse_expr(s)?, src: s.to_owned() })
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b' ' | b'\t' | b'\n' | b'\r')) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut e = self.term()?;
        loop {
            self.skip_ws();
            if self.eat(b'+') {
                e = Expr::add(e, self.term()?);
            } else if self.eat(b'-') {
                e = Expr::sub(e, self.term()?);
            } else {
                return Ok(e);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut e = self.unary()?;
        loop {
            self.skip_ws();
            if self.eat(b'*') {
                e = Expr::mul(e, self.unary()?);
            } else if self.eat(b'/') {
                e = Expr::div(e, self.unary()?);
            } else {
                return Ok(e);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        self.skip_ws();
        if self.eat(b'-') {
            Ok(Expr::neg(self.unary()?))
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        self.skip_ws();
        if !self.eat(b'^') {
            return Ok(base);
        }
        self.skip_ws();
        let start = self.pos;
        let neg = self.eat(b'-');
        let (value, integral) = self.number(start)?;
        let value = if neg { -value } else { value };
        let builtin = if integral {
            if value.abs() > i32::MAX as f64 {
                return Err(ParseError::ExponentRange { offset: start });
            }
            Builtin::PowInt(value as i32)
        } else {
            Builtin::PowReal(value)
        };
        Ok(Expr::apply(builtin, base))
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        self.skip_ws();
        let start = self.pos;
        match self.peek() {
            Some(c) if c.is_ascii_digit() || c == b'.' => {
                let (value, _) = self.number(start)?;
                if self.eat(b'j') {
                    Ok(Expr::constant(DoubleNumber::new(0.0, value)))
                } else {
                    Ok(Expr::real(value))
                }
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let name = self.ident();
                match name {
                    "h" => Ok(Expr::var()),
                    "j" => Ok(Expr::constant(DoubleNumber::J)),
                    "conj" => {
                        let inner = self.parenthesized()?;
                        Ok(Expr::conj(inner))
                    }
                    _ => match Builtin::by_name(name) {
                        Some(b) => {
                            let inner = self.parenthesized()?;
                            Ok(Expr::apply(b, inner))
                        }
                        None => Err(ParseError::UnknownFunction {
                            offset: start,
                            name: name.to_owned(),
                        }),
                    },
                }
            }
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.skip_ws();
                if !self.eat(b')') {
                    return Err(ParseError::Syntax {
                        offset: self.pos,
                        expected: "`)` to close the group",
                    });
                }
                Ok(e)
            }
            _ => Err(ParseError::Syntax { offset: start, expected: "an expression" }),
        }
    }

    fn ident(&mut self) -> &'a str {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == b'_') {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).unwrap()
    }

    // Scans digits ['.' digits] [('e'|'E') sign? digits]; reports whether
    // the literal is integer-shaped.
    fn number(&mut self, err_offset: usize) -> Result<(f64, bool), ParseError> {
        let start = self.pos;
        let mut integral = true;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.peek() == Some(b'.') {
            integral = false;
            self.pos += 1;
            while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                self.pos += 1;
            }
        }
        if matches!(self.peek(), Some(b'e' | b'E')) {
            let mark = self.pos;
            self.pos += 1;
            if matches!(self.peek(), Some(b'+' | b'-')) {
                self.pos += 1;
            }
            if matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                integral = false;
                while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                    self.pos += 1;
                }
            } else {
                // not an exponent field: an identifier like `exp` follows
                self.pos = mark;
            }
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        match text.parse::<f64>() {
            Ok(v) => Ok((v, integral)),
            Err(_) => Err(ParseError::Syntax { offset: err_offset, expected: "a number" }),
        }
    }

    fn parenthesized(&mut self) -> Result<Expr, ParseError> {
        self.skip_ws();
        if !self.eat(b'(') {
            return Err(ParseError::Syntax {
                offset: self.pos,
                expected: "`(` after the function name",
            });
        }
        let e = self.expr()?;
        self.skip_ws();
        if !self.eat(b')') {
            return Err(ParseError::Syntax {
                offset: self.pos,
                expected: "`)` to close the argument",
            });
        }
        Ok(e)
    }
}
