//! Recursive-descent parser for coefficient expressions.
//!
//! Grammar: integer literals, variable tokens `x1..xN`, operators `+ - * / ^`
//! with integer exponents, parentheses.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::ratfunc::RatFunc;
use crate::error::{Error, Result};

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Var(usize), // 0-based
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer { src: src.as_bytes(), pos: 0 }
    }

    fn err(&self, msg: &str) -> Error {
        Error::Parse { line: 0, col: self.pos + 1, msg: msg.to_string() }
    }

    fn next_tok(&mut self) -> Result<Tok> {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        if self.pos >= self.src.len() {
            return Ok(Tok::End);
        }
        let c = self.src[self.pos];
        self.pos += 1;
        match c {
            b'+' => Ok(Tok::Plus),
            b'-' => Ok(Tok::Minus),
            b'*' => Ok(Tok::Star),
            b'/' => Ok(Tok::Slash),
            b'^' => Ok(Tok::Caret),
            b'(' => Ok(Tok::LParen),
            b')' => Ok(Tok::RParen),
            b'0'..=b'9' => {
                let start = self.pos - 1;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                Ok(Tok::Int(text.parse::<BigInt>().unwrap()))
            }
            b'x' => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                if self.pos == start {
                    return Err(self.err("expected variable index after 'x'"));
                }
                let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                let idx: usize = text
                    .parse()
                    .map_err(|_| self.err("variable index out of range"))?;
                if idx == 0 {
                    return Err(self.err("variable indices start at 1"));
                }
                Ok(Tok::Var(idx - 1))
            }
            _ => Err(self.err(&format!("unexpected character '{}'", c as char))),
        }
    }
}

struct Parser<'a> {
    lex: Lexer<'a>,
    cur: Tok,
    n_vars: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str, n_vars: usize) -> Result<Self> {
        let mut lex = Lexer::new(src);
        let cur = lex.next_tok()?;
        Ok(Parser { lex, cur, n_vars })
    }

    fn bump(&mut self) -> Result<()> {
        self.cur = self.lex.next_tok()?;
        Ok(())
    }

    fn err(&self, msg: &str) -> Error {
        self.lex.err(msg)
    }

    fn expr(&mut self) -> Result<RatFunc> {
        let mut acc = self.term()?;
        loop {
            match self.cur {
                Tok::Plus => {
                    self.bump()?;
                    acc = acc.add(&self.term()?);
                }
                Tok::Minus => {
                    self.bump()?;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<RatFunc> {
        let mut acc = self.unary()?;
        loop {
            match self.cur {
                Tok::Star => {
                    self.bump()?;
                    acc = acc.mul(&self.unary()?);
                }
                Tok::Slash => {
                    self.bump()?;
                    acc = acc.div(&self.unary()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<RatFunc> {
        match self.cur {
            Tok::Minus => {
                self.bump()?;
                Ok(self.unary()?.neg())
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<RatFunc> {
        let base = self.atom()?;
        if self.cur == Tok::Caret {
            self.bump()?;
            let neg = if self.cur == Tok::Minus {
                self.bump()?;
                true
            } else {
                false
            };
            let e = match std::mem::replace(&mut self.cur, Tok::End) {
                Tok::Int(v) => v,
                other => {
                    self.cur = other;
                    return Err(self.err("expected integer exponent after '^'"));
                }
            };
            self.bump()?;
            let e: i64 = e
                .try_into()
                .map_err(|_| self.err("exponent out of range"))?;
            return base.pow(if neg { -e } else { e });
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<RatFunc> {
        match std::mem::replace(&mut self.cur, Tok::End) {
            Tok::Int(v) => {
                self.bump()?;
                Ok(RatFunc::constant(self.n_vars, BigRational::from_integer(v)))
            }
            Tok::Var(idx) => {
                self.bump()?;
                if idx >= self.n_vars {
                    return Err(self.err(&format!(
                        "variable x{} exceeds declared count {}",
                        idx + 1,
                        self.n_vars
                    )));
                }
                Ok(RatFunc::var(self.n_vars, idx))
            }
            Tok::LParen => {
                self.bump()?;
                let inner = self.expr()?;
                if self.cur != Tok::RParen {
                    return Err(self.err("expected ')'"));
                }
                self.bump()?;
                Ok(inner)
            }
            other => {
                self.cur = other;
                Err(self.err("expected integer, variable or '('"))
            }
        }
    }
}

/// Parse a coefficient expression over `n_vars` variables.
pub fn parse_coeff(src: &str, n_vars: usize) -> Result<RatFunc> {
    let mut p = Parser::new(src, n_vars)?;
    let out = p.expr()?;
    if p.cur != Tok::End {
        return Err(p.err("trailing input after expression"));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::multipoly::rat;

    #[test]
    fn parses_polynomials() {
        let f = parse_coeff("x2^2 - 2*x1 + 3", 2).unwrap();
        assert_eq!(f.eval(&[rat(1), rat(2)]).unwrap(), rat(5));
    }

    #[test]
    fn parses_fractions_and_unary_minus() {
        let f = parse_coeff("-x2/x1", 2).unwrap();
        assert_eq!(f, RatFunc::var(2, 1).neg().div(&RatFunc::var(2, 0)).unwrap());
        let g = parse_coeff("x1^-1", 2).unwrap();
        assert_eq!(g, RatFunc::var(2, 0).inv().unwrap());
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_coeff("x3", 2).is_err());
        assert!(parse_coeff("1 +", 2).is_err());
        assert!(parse_coeff("y1", 2).is_err());
        assert!(parse_coeff("1/0", 2).is_err());
    }
}
