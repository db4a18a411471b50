//! Parser for polynomials written in factored form, e.g.
//! `(1-t^2)^4 (t-1)(3t-1)(3t^2+1)(9t^4-2t^2+1)`.
//!
//! Grammar: sums and differences of products; products may be implicit
//! (juxtaposition) or use `*`; `^` takes a non-negative integer exponent.
//! The indeterminate may be written `t` or `x`; `−` is accepted for `-`.

use num_bigint::BigInt;

use super::poly::IntPolynomial;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Num(BigInt),
    Var,
    Plus,
    Minus,
    Star,
    Caret,
    Open,
    Close,
}

fn tokenize(src: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let mut chars = src.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            c if c.is_whitespace() => {
                chars.next();
            }
            '0'..='9' => {
                let mut digits = String::new();
                while let Some(&d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                    digits.push(d);
                    chars.next();
                }
                out.push(Token::Num(digits.parse().expect("ascii digits")));
            }
            _ => {
                chars.next();
                out.push(match c {
                    't' | 'x' => Token::Var,
                    '+' => Token::Plus,
                    '-' | '−' => Token::Minus,
                    '*' | '·' => Token::Star,
                    '^' => Token::Caret,
                    '(' => Token::Open,
                    ')' => Token::Close,
                    other => return Err(Error::Parse(format!("unexpected character {other:?} in {src:?}"))),
                });
            }
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at token {}", self.pos))
    }

    fn expr(&mut self) -> Result<IntPolynomial> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.pos += 1;
                    acc = acc + self.term()?;
                }
                Some(Token::Minus) => {
                    self.pos += 1;
                    acc = acc - self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<IntPolynomial> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.pos += 1;
                    acc = acc * self.unary()?;
                }
                Some(Token::Num(_) | Token::Var | Token::Open) => acc = acc * self.power()?,
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<IntPolynomial> {
        match self.peek() {
            Some(Token::Minus) => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some(Token::Plus) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<IntPolynomial> {
        let base = self.atom()?;
        if self.peek() == Some(&Token::Caret) {
            self.pos += 1;
            match self.next() {
                Some(Token::Num(k)) => {
                    let k: u32 = k.try_into().map_err(|_| self.err("exponent too large"))?;
                    Ok(base.pow(k))
                }
                _ => Err(self.err("expected an integer exponent")),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<IntPolynomial> {
        match self.next() {
            Some(Token::Num(n)) => Ok(IntPolynomial::constant(n)),
            Some(Token::Var) => Ok(IntPolynomial::t()),
            Some(Token::Open) => {
                let inner = self.expr()?;
                match self.next() {
                    Some(Token::Close) => Ok(inner),
                    _ => Err(self.err("expected ')'")),
                }
            }
            _ => Err(self.err("expected a number, variable or '('")),
        }
    }
}

/// Expand a factored-form expression into an [`IntPolynomial`].
pub fn parse_factored(src: &str) -> Result<IntPolynomial> {
    let mut p = Parser { tokens: tokenize(src)?, pos: 0 };
    if p.tokens.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let value = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(p.err("trailing input"));
    }
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expands_products_and_powers() {
        assert_eq!(parse_factored("(1-t)(1+t)").unwrap(), IntPolynomial::from_i64s(&[1, 0, -1]));
        assert_eq!(
            parse_factored("(1−t)(1−3t)(1+3t^2)").unwrap(),
            IntPolynomial::from_i64s(&[1, -4, 6, -12, 9])
        );
        assert_eq!(parse_factored("-t^2").unwrap(), IntPolynomial::from_i64s(&[0, 0, -1]));
        assert_eq!(parse_factored("x^10 (x^2-16)").unwrap().degree(), Some(12));
        assert_eq!(parse_factored("2*3 t").unwrap(), IntPolynomial::from_i64s(&[0, 6]));
    }

    #[test]
    fn rejects_malformed_input() {
        for bad in ["", "(1-t", "t^", "t^t", "1 + ?", "()"] {
            assert!(parse_factored(bad).is_err(), "{bad}");
        }
    }
}
