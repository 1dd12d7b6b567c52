//! Plain-text constraint systems.
//!
//! ```text
//! # comment
//! int mu nu
//! var t
//! 2*mu + nu <= 3*m
//! mu - nu = 0
//! t > m/4
//! ```
//!
//! The symbol `m` is replaced by the supplied level; any other identifier
//! must be declared before use.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use thiserror::Error;

use super::{Cmp, ConstraintSystem};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {msg}")]
pub struct TextError {
    pub line: usize,
    pub msg: String,
}

#[derive(Debug, Clone, Default)]
struct Lin {
    coeffs: BTreeMap<String, Rational>,
    constant: Rational,
}

impl Lin {
    fn constant(c: Rational) -> Self {
        Lin {
            coeffs: BTreeMap::new(),
            constant: c,
        }
    }

    fn var(name: &str) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(name.to_string(), Rational::one());
        Lin {
            coeffs,
            constant: Rational::zero(),
        }
    }

    fn is_constant(&self) -> bool {
        self.coeffs.values().all(|v| v.is_zero())
    }

    fn scale(mut self, c: &Rational) -> Self {
        for v in self.coeffs.values_mut() {
            *v = &*v * c;
        }
        self.constant = &self.constant * c;
        self
    }

    fn add(mut self, other: Lin, sign: i32) -> Self {
        for (k, v) in other.coeffs {
            let e = self.coeffs.entry(k).or_insert_with(Rational::zero);
            if sign > 0 {
                *e = &*e + v;
            } else {
                *e = &*e - v;
            }
        }
        if sign > 0 {
            self.constant += other.constant;
        } else {
            self.constant -= other.constant;
        }
        self
    }
}

struct LinParser<'a> {
    chars: Vec<char>,
    pos: usize,
    declared: &'a [String],
    m: &'a Rational,
}

impl LinParser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.chars.get(self.pos) == Some(&c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Lin, String> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc.add(self.term()?, 1);
            } else if self.eat('-') {
                acc = acc.add(self.term()?, -1);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Lin, String> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                let rhs = self.unary()?;
                acc = if acc.is_constant() {
                    rhs.scale(&acc.constant)
                } else if rhs.is_constant() {
                    acc.scale(&rhs.constant)
                } else {
                    return Err("product of two variables is not linear".into());
                };
            } else if self.eat('/') {
                let rhs = self.unary()?;
                if !rhs.is_constant() {
                    return Err("division by a variable".into());
                }
                if rhs.constant.is_zero() {
                    return Err("division by zero".into());
                }
                acc = acc.scale(&rhs.constant.recip());
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Lin, String> {
        if self.eat('-') {
            return Ok(self.unary()?.scale(&-Rational::one()));
        }
        if self.eat('+') {
            return self.unary();
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<Lin, String> {
        self.skip_ws();
        if self.eat('(') {
            let inner = self.expr()?;
            if !self.eat(')') {
                return Err("expected ')'".into());
            }
            return Ok(inner);
        }
        let start = self.pos;
        match self.chars.get(self.pos) {
            Some(c) if c.is_ascii_digit() => {
                while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
                    self.pos += 1;
                }
                let s: String = self.chars[start..self.pos].iter().collect();
                let n: num_bigint::BigInt = s.parse().map_err(|_| "bad number".to_string())?;
                Ok(Lin::constant(Rational::from_integer(n)))
            }
            Some(c) if c.is_ascii_alphabetic() || *c == '_' => {
                while self
                    .chars
                    .get(self.pos)
                    .is_some_and(|c| c.is_ascii_alphanumeric() || *c == '_')
                {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().collect();
                if name == "m" {
                    Ok(Lin::constant(self.m.clone()))
                } else if self.declared.contains(&name) {
                    Ok(Lin::var(&name))
                } else {
                    Err(format!("undeclared variable '{name}'"))
                }
            }
            Some(c) => Err(format!("unexpected '{c}'")),
            None => Err("unexpected end of line".into()),
        }
    }
}

fn parse_side(src: &str, declared: &[String], m: &Rational) -> Result<Lin, String> {
    let mut p = LinParser {
        chars: src.chars().collect(),
        pos: 0,
        declared,
        m,
    };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos < p.chars.len() {
        return Err("trailing input".into());
    }
    Ok(out)
}

fn split_relation(line: &str) -> Option<(&str, Cmp, &str)> {
    for (tok, cmp) in [
        ("<=", Cmp::Le),
        (">=", Cmp::Ge),
        ("<", Cmp::Lt),
        (">", Cmp::Gt),
        ("=", Cmp::Eq),
    ] {
        if let Some(i) = line.find(tok) {
            return Some((&line[..i], cmp, &line[i + tok.len()..]));
        }
    }
    None
}

/// Parses a system, substituting `m`.
pub fn parse_system(src: &str, m: &Rational) -> Result<ConstraintSystem<Rational>, TextError> {
    let mut sys = ConstraintSystem::new();
    let mut declared: Vec<String> = Vec::new();
    for (idx, raw) in src.lines().enumerate() {
        let line_no = idx + 1;
        let err = |msg: String| TextError { line: line_no, msg };
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut words = line.split_whitespace();
        let head = words.next().unwrap_or("");
        if head == "int" || head == "var" {
            let names: Vec<&str> = words.collect();
            if names.is_empty() {
                return Err(err("declaration without variables".into()));
            }
            for n in names {
                let valid = n.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                    && n.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
                if !valid || n == "m" {
                    return Err(err(format!("invalid variable name '{n}'")));
                }
                sys.declare(n, head == "int");
                if !declared.iter().any(|d| d == n) {
                    declared.push(n.to_string());
                }
            }
            continue;
        }
        let (lhs, cmp, rhs) = split_relation(line).ok_or_else(|| err("missing relation".into()))?;
        let l = parse_side(lhs, &declared, m).map_err(err)?;
        let r = parse_side(rhs, &declared, m).map_err(err)?;
        let diff = l.add(r, -1);
        let terms: Vec<(&str, Rational)> = diff.coeffs.iter().map(|(k, v)| (k.as_str(), v.clone())).collect();
        sys.add(&terms, cmp, -diff.constant);
    }
    Ok(sys)
}
