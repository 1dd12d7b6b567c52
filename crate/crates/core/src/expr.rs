//! Text syntax for polynomials with rational coefficients.
//!
//! Grammar: `+ - * / ^`, parentheses, integer literals and named variables.
//! Division is allowed only by nonzero constants, so `3/4*x` works.

use num_traits::Zero;
use thiserror::Error;

use crate::algebra::mpoly::MPoly;
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at column {col}: {msg}")]
pub struct ParseError {
    pub col: usize,
    pub msg: String,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(num_bigint::BigInt),
    Ident(String),
    Sym(char),
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push((start + 1, Tok::Num(s.parse().expect("digits"))));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((start + 1, Tok::Ident(chars[start..i].iter().collect())));
        } else if "+-*/^()".contains(c) {
            out.push((i + 1, Tok::Sym(c)));
            i += 1;
        } else {
            return Err(ParseError {
                col: i + 1,
                msg: format!("unexpected character '{c}'"),
            });
        }
    }
    Ok(out)
}

struct Parser<'a, const N: usize> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    names: &'a [&'a str; N],
    end_col: usize,
}

impl<const N: usize> Parser<'_, N> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        let col = self.toks.get(self.pos).map(|t| t.0).unwrap_or(self.end_col);
        Err(ParseError { col, msg: msg.into() })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<MPoly<Rational, N>, ParseError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<MPoly<Rational, N>, ParseError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.unary()?;
            } else if self.eat('/') {
                let d = self.unary()?;
                let c = match d.total_degree() {
                    Some(0) => d.coeff(&[0; N]),
                    None => return self.err("division by zero"),
                    Some(_) => return self.err("division by a non-constant"),
                };
                acc = acc.scale(&c.recip());
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<MPoly<Rational, N>, ParseError> {
        if self.eat('-') {
            return Ok(-&self.unary()?);
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<MPoly<Rational, N>, ParseError> {
        let base = self.atom()?;
        if self.eat('^') {
            match self.peek().cloned() {
                Some(Tok::Num(n)) => {
                    self.pos += 1;
                    let e: u32 = match n.try_into() {
                        Ok(e) if e <= 4096 => e,
                        _ => return self.err("exponent too large"),
                    };
                    Ok(base.pow(e))
                }
                _ => self.err("expected a non-negative integer exponent"),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<MPoly<Rational, N>, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(MPoly::constant(Rational::from_integer(n)))
            }
            Some(Tok::Ident(name)) => match self.names.iter().position(|v| *v == name) {
                Some(i) => {
                    self.pos += 1;
                    Ok(MPoly::var(i))
                }
                None => self.err(format!("unknown variable '{name}'")),
            },
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return self.err("expected ')'");
                }
                Ok(inner)
            }
            Some(_) => self.err("unexpected token"),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses a polynomial in the variables `names`.
pub fn parse_poly<const N: usize>(src: &str, names: &[&str; N]) -> Result<MPoly<Rational, N>, ParseError> {
    let toks = lex(src)?;
    if toks.is_empty() {
        return Err(ParseError {
            col: 1,
            msg: "empty expression".into(),
        });
    }
    let mut p = Parser {
        toks,
        pos: 0,
        names,
        end_col: src.chars().count() + 1,
    };
    let out = p.expr()?;
    if p.pos < p.toks.len() {
        return p.err("trailing input");
    }
    Ok(out)
}

/// Parses a germ in `x, y`.
pub fn parse_xy(src: &str) -> Result<crate::Poly2, ParseError> {
    parse_poly(src, &["x", "y"])
}

/// Evaluates a constant expression such as `-3/4`.
pub fn parse_constant(src: &str) -> Result<Rational, ParseError> {
    let p = parse_poly::<1>(src, &["_"])?;
    match p.total_degree() {
        None => Ok(Rational::zero()),
        Some(0) => Ok(p.coeff(&[0])),
        Some(_) => Err(ParseError {
            col: 1,
            msg: "expected a constant".into(),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn parses_germs() {
        let f = parse_xy("x*y*(x+y)").unwrap();
        assert_eq!(f.display_with(&["x", "y"]).to_string(), "x^2*y + x*y^2");
        let g = parse_xy("y^2 - x^3").unwrap();
        assert_eq!(g.display_with(&["x", "y"]).to_string(), "-x^3 + y^2");
        let h = parse_xy("3/4*x - -y").unwrap();
        assert_eq!(h.coeff(&[1, 0]), rat(3, 4));
        assert_eq!(h.coeff(&[0, 1]), rat(1, 1));
    }

    #[test]
    fn reports_errors() {
        assert!(parse_xy("x+").is_err());
        assert!(parse_xy("x/y").is_err());
        assert!(parse_xy("x/0").is_err());
        assert!(parse_xy("z").is_err());
        assert!(parse_xy("(x").is_err());
        assert!(parse_xy("x y").is_err());
        assert!(parse_xy("").is_err());
    }

    #[test]
    fn constants() {
        assert_eq!(parse_constant("-3/4").unwrap(), rat(-3, 4));
        assert_eq!(parse_constant("2^3").unwrap(), rat(8, 1));
    }
}
