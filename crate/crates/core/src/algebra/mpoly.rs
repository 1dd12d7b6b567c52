//! Sparse multivariate polynomials in a fixed number of variables.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::scalar::Field;

pub type Exponent<const N: usize> = [u32; N];

#[derive(Clone, Debug, PartialEq)]
pub struct MPoly<T, const N: usize> {
    terms: BTreeMap<Exponent<N>, T>,
}

impl<T: Field, const N: usize> Default for MPoly<T, N> {
    fn default() -> Self {
        Self::zero()
    }
}

fn total(e: &[u32]) -> u32 {
    e.iter().sum()
}

impl<T: Field, const N: usize> MPoly<T, N> {
    pub fn zero() -> Self {
        MPoly { terms: BTreeMap::new() }
    }

    pub fn constant(c: T) -> Self {
        Self::monomial(c, [0; N])
    }

    pub fn one() -> Self {
        Self::constant(T::one())
    }

    pub fn monomial(c: T, e: Exponent<N>) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        MPoly { terms }
    }

    /// The `i`-th coordinate function.
    pub fn var(i: usize) -> Self {
        let mut e = [0; N];
        e[i] = 1;
        Self::monomial(T::one(), e)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Exponent<N>, T)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, e: Exponent<N>, c: T) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                *v = v.clone() + c;
                if v.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent<N>, &T)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &Exponent<N>) -> T {
        self.terms.get(e).cloned().unwrap_or_else(T::zero)
    }

    /// Highest total degree, `None` for zero.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| total(e)).max()
    }

    /// Lowest total degree of a nonzero term (the multiplicity at the
    /// origin), `None` for zero.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(|e| total(e)).min()
    }

    pub fn degree_in(&self, i: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[i]).max()
    }

    /// Sum of the terms of total degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> Self {
        MPoly {
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| total(*e) == d)
                .map(|(e, c)| (*e, c.clone()))
                .collect(),
        }
    }

    /// Lowest-degree homogeneous part.
    pub fn initial_form(&self) -> Self {
        match self.order() {
            Some(d) => self.homogeneous_part(d),
            None => Self::zero(),
        }
    }

    pub fn scale(&self, c: &T) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        MPoly {
            terms: self.terms.iter().map(|(e, v)| (*e, v.clone() * c.clone())).collect(),
        }
    }

    pub fn pow(&self, mut k: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn eval(&self, point: &[T; N]) -> T {
        let mut acc = T::zero();
        for (e, c) in &self.terms {
            let mut v = c.clone();
            for (x, &k) in point.iter().zip(e.iter()) {
                for _ in 0..k {
                    v = v * x.clone();
                }
            }
            acc = acc + v;
        }
        acc
    }

    pub fn partial(&self, i: usize) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut e2 = *e;
            e2[i] -= 1;
            out.add_term(e2, c.clone() * T::from_i64(e[i] as i64));
        }
        out
    }

    /// Substitutes the `i`-th variable by `images[i]`.
    pub fn substitute<const M: usize>(&self, images: &[MPoly<T, M>; N]) -> MPoly<T, M> {
        let mut powers: Vec<Vec<MPoly<T, M>>> = Vec::with_capacity(N);
        for (i, img) in images.iter().enumerate() {
            let max = self.degree_in(i).unwrap_or(0);
            let mut v = vec![MPoly::one()];
            for k in 1..=max as usize {
                let next = &v[k - 1] * img;
                v.push(next);
            }
            powers.push(v);
        }
        let mut out = MPoly::zero();
        for (e, c) in &self.terms {
            let mut term = MPoly::constant(c.clone());
            for i in 0..N {
                if e[i] > 0 {
                    term = &term * &powers[i][e[i] as usize];
                }
            }
            out = &out + &term;
        }
        out
    }

    pub fn map<U: Field>(&self, f: impl Fn(&T) -> U) -> MPoly<U, N> {
        MPoly::from_terms(self.terms.iter().map(|(e, c)| (*e, f(c))))
    }

    /// Divides every exponent by `mono` componentwise; `None` unless the
    /// monomial divides every term.
    pub fn div_monomial(&self, mono: &Exponent<N>) -> Option<Self> {
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut e2 = *e;
            for i in 0..N {
                e2[i] = e[i].checked_sub(mono[i])?;
            }
            terms.insert(e2, c.clone());
        }
        Some(MPoly { terms })
    }

    pub fn mul_monomial(&self, mono: &Exponent<N>) -> Self {
        MPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut e2 = *e;
                    for i in 0..N {
                        e2[i] += mono[i];
                    }
                    (e2, c.clone())
                })
                .collect(),
        }
    }

    /// Terms in graded-lexicographic order, highest first.
    pub fn terms_grlex(&self) -> Vec<(Exponent<N>, T)> {
        let mut v: Vec<_> = self.terms.iter().map(|(e, c)| (*e, c.clone())).collect();
        v.sort_by(|(a, _), (b, _)| total(b).cmp(&total(a)).then_with(|| b.cmp(a)));
        v
    }

    pub fn display_with<'a>(&'a self, names: &'a [&'a str; N]) -> DisplayPoly<'a, T, N> {
        DisplayPoly { poly: self, names }
    }
}

pub struct DisplayPoly<'a, T, const N: usize> {
    poly: &'a MPoly<T, N>,
    names: &'a [&'a str; N],
}

pub(crate) fn fmt_monomial<const N: usize>(e: &Exponent<N>, names: &[&str; N]) -> String {
    let parts: Vec<String> = e
        .iter()
        .zip(names.iter())
        .filter(|(k, _)| **k > 0)
        .map(|(&k, n)| if k == 1 { n.to_string() } else { format!("{n}^{k}") })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

impl<T: Field + fmt::Display + PartialOrd, const N: usize> fmt::Display for DisplayPoly<'_, T, N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.poly.terms_grlex();
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (e, c)) in terms.iter().enumerate() {
            let neg = *c < T::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let is_const = e.iter().all(|&k| k == 0);
            let mono = fmt_monomial(e, self.names);
            let mag_s = mag.to_string();
            let needs_paren = mag_s.contains('/');
            if is_const {
                write!(f, "{mag_s}")?;
            } else if mag.is_one() {
                write!(f, "{mono}")?;
            } else if needs_paren {
                write!(f, "({mag_s})*{mono}")?;
            } else {
                write!(f, "{mag_s}*{mono}")?;
            }
        }
        Ok(())
    }
}

impl<'a, T: Field, const N: usize> Add<&'a MPoly<T, N>> for &'a MPoly<T, N> {
    type Output = MPoly<T, N>;
    fn add(self, rhs: &MPoly<T, N>) -> MPoly<T, N> {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl<'a, T: Field, const N: usize> Sub<&'a MPoly<T, N>> for &'a MPoly<T, N> {
    type Output = MPoly<T, N>;
    fn sub(self, rhs: &MPoly<T, N>) -> MPoly<T, N> {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl<'a, T: Field, const N: usize> Mul<&'a MPoly<T, N>> for &'a MPoly<T, N> {
    type Output = MPoly<T, N>;
    fn mul(self, rhs: &MPoly<T, N>) -> MPoly<T, N> {
        let mut out = MPoly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let mut e = *ea;
                for i in 0..N {
                    e[i] += eb[i];
                }
                out.add_term(e, ca.clone() * cb.clone());
            }
        }
        out
    }
}

impl<T: Field, const N: usize> Neg for &MPoly<T, N> {
    type Output = MPoly<T, N>;
    fn neg(self) -> MPoly<T, N> {
        self.scale(&-T::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat_int;
    use crate::Rational;

    type P2 = MPoly<Rational, 2>;

    #[test]
    fn order_and_initial_form() {
        let x = P2::var(0);
        let y = P2::var(1);
        let f = &(&y * &y) - &(&(&x * &x) * &x);
        assert_eq!(f.order(), Some(2));
        assert_eq!(f.initial_form(), &y * &y);
        assert_eq!(f.total_degree(), Some(3));
    }

    #[test]
    fn substitution_composes() {
        let x = P2::var(0);
        let y = P2::var(1);
        // f(x, y) = x*y ; f(x, x*y) = x^2*y
        let f = &x * &y;
        let g = f.substitute(&[x.clone(), &x * &y]);
        assert_eq!(g, &(&x * &x) * &y);
        let v = g.eval(&[rat_int(2), rat_int(3)]);
        assert_eq!(v, rat_int(12));
    }

    #[test]
    fn display_grlex() {
        let x = P2::var(0);
        let y = P2::var(1);
        let f = &(&(&y * &y) - &(&(&x * &x) * &x)) + &P2::constant(rat_int(0));
        assert_eq!(f.display_with(&["x", "y"]).to_string(), "-x^3 + y^2");
    }
}
