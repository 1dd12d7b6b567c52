//! Simple algebraic number fields `Q(θ) = Q[t]/(m)` and factorization of
//! univariate polynomials over them (Trager's norm method).
//!
//! [`AlgNum`] carries its field as a runtime context so that it can be used
//! as a scalar in the generic polynomial types. Rationals have no context
//! and mix freely with elements of any field.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Rem, Sub};
use std::sync::Arc;

use num_traits::{Num, One, Zero};

use crate::algebra::factor::factor_rational;
use crate::algebra::upoly::{interpolate, UPoly};
use crate::scalar::{fmt_rational, rat_int};
use crate::Rational;

#[derive(Debug, PartialEq)]
pub struct NumberField {
    minpoly: UPoly<Rational>,
}

impl NumberField {
    /// `minpoly` must be irreducible over `Q`; it is made monic.
    pub fn new(minpoly: &UPoly<Rational>) -> Arc<Self> {
        assert!(
            minpoly.degree().is_some_and(|d| d >= 1),
            "minimal polynomial must be nonconstant"
        );
        Arc::new(NumberField {
            minpoly: minpoly.monic(),
        })
    }

    pub fn minpoly(&self) -> &UPoly<Rational> {
        &self.minpoly
    }

    pub fn degree(&self) -> usize {
        self.minpoly.degree().unwrap_or(0)
    }
}

/// Element of `Q` or of a number field, stored as a reduced polynomial in
/// the generator.
#[derive(Clone, Debug)]
pub struct AlgNum {
    field: Option<Arc<NumberField>>,
    c: Vec<Rational>,
}

impl PartialEq for AlgNum {
    fn eq(&self, other: &Self) -> bool {
        self.c == other.c
    }
}

fn trim(mut c: Vec<Rational>) -> Vec<Rational> {
    while c.last().is_some_and(|v| v.is_zero()) {
        c.pop();
    }
    c
}

impl AlgNum {
    pub fn rational(r: Rational) -> Self {
        AlgNum {
            field: None,
            c: trim(vec![r]),
        }
    }

    /// The class of `t` in `field`.
    pub fn generator(field: &Arc<NumberField>) -> Self {
        Self::from_poly(field, &UPoly::var())
    }

    /// The class of `p(t)` in `field`.
    pub fn from_poly(field: &Arc<NumberField>, p: &UPoly<Rational>) -> Self {
        AlgNum {
            field: Some(field.clone()),
            c: p.rem(&field.minpoly).into_coeffs(),
        }
    }

    pub fn field(&self) -> Option<&Arc<NumberField>> {
        self.field.as_ref()
    }

    pub fn is_rational(&self) -> bool {
        self.c.len() <= 1
    }

    pub fn as_rational(&self) -> Option<Rational> {
        match self.c.len() {
            0 => Some(Rational::zero()),
            1 => Some(self.c[0].clone()),
            _ => None,
        }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.c
    }

    fn as_poly(&self) -> UPoly<Rational> {
        UPoly::new(self.c.clone())
    }

    /// Field norm down to `Q` (the element itself when rational and
    /// context-free).
    pub fn norm(&self) -> Rational {
        match &self.field {
            None => self.as_rational().expect("context-free value is rational"),
            Some(k) => k.minpoly.resultant(&self.as_poly()),
        }
    }

    fn context(a: &Self, b: &Self) -> Option<Arc<NumberField>> {
        match (&a.field, &b.field) {
            (Some(x), Some(y)) => {
                if !Arc::ptr_eq(x, y) && x != y {
                    if a.is_rational() {
                        return Some(y.clone());
                    }
                    if b.is_rational() {
                        return Some(x.clone());
                    }
                    panic!("arithmetic between different number fields");
                }
                Some(x.clone())
            }
            (Some(x), None) | (None, Some(x)) => Some(x.clone()),
            (None, None) => None,
        }
    }

    fn build(field: Option<Arc<NumberField>>, p: UPoly<Rational>) -> Self {
        let p = match &field {
            Some(k) => p.rem(&k.minpoly),
            None => p,
        };
        AlgNum {
            field,
            c: p.into_coeffs(),
        }
    }

    pub fn inverse(&self) -> Self {
        assert!(!self.c.is_empty(), "division by zero");
        if let Some(r) = self.as_rational() {
            return AlgNum {
                field: self.field.clone(),
                c: vec![r.recip()],
            };
        }
        let k = self.field.as_ref().expect("irrational value has a field");
        let (g, s, _) = self.as_poly().ext_gcd(&k.minpoly);
        assert!(g.is_one(), "minimal polynomial is not irreducible");
        Self::build(Some(k.clone()), s)
    }
}

impl UPoly<Rational> {
    fn is_one(&self) -> bool {
        self.degree() == Some(0) && self.coeff(0).is_one()
    }
}

impl Zero for AlgNum {
    fn zero() -> Self {
        AlgNum {
            field: None,
            c: Vec::new(),
        }
    }
    fn is_zero(&self) -> bool {
        self.c.is_empty()
    }
}

impl One for AlgNum {
    fn one() -> Self {
        AlgNum::rational(Rational::one())
    }
}

impl Add for AlgNum {
    type Output = AlgNum;
    fn add(self, rhs: AlgNum) -> AlgNum {
        let k = AlgNum::context(&self, &rhs);
        AlgNum::build(k, &self.as_poly() + &rhs.as_poly())
    }
}

impl Sub for AlgNum {
    type Output = AlgNum;
    fn sub(self, rhs: AlgNum) -> AlgNum {
        let k = AlgNum::context(&self, &rhs);
        AlgNum::build(k, &self.as_poly() - &rhs.as_poly())
    }
}

impl Mul for AlgNum {
    type Output = AlgNum;
    fn mul(self, rhs: AlgNum) -> AlgNum {
        let k = AlgNum::context(&self, &rhs);
        AlgNum::build(k, &self.as_poly() * &rhs.as_poly())
    }
}

impl Div for AlgNum {
    type Output = AlgNum;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: AlgNum) -> AlgNum {
        self * rhs.inverse()
    }
}

impl Rem for AlgNum {
    type Output = AlgNum;
    fn rem(self, _rhs: AlgNum) -> AlgNum {
        AlgNum::zero()
    }
}

impl Neg for AlgNum {
    type Output = AlgNum;
    fn neg(self) -> AlgNum {
        AlgNum {
            field: self.field,
            c: self.c.into_iter().map(|v| -v).collect(),
        }
    }
}

impl Num for AlgNum {
    type FromStrRadixErr = <Rational as Num>::FromStrRadixErr;
    fn from_str_radix(s: &str, radix: u32) -> Result<Self, Self::FromStrRadixErr> {
        Rational::from_str_radix(s, radix).map(AlgNum::rational)
    }
}

impl From<Rational> for AlgNum {
    fn from(r: Rational) -> Self {
        AlgNum::rational(r)
    }
}

impl fmt::Display for AlgNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.as_rational() {
            return write!(f, "{}", fmt_rational(&r));
        }
        let parts: Vec<String> = self
            .c
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(k, v)| match k {
                0 => fmt_rational(v),
                1 => format!("{}*a", fmt_rational(v)),
                _ => format!("{}*a^{k}", fmt_rational(v)),
            })
            .collect();
        write!(f, "({})", parts.join(" + "))
    }
}

/// A ring map `K -> L` determined by the image of the generator of `K`.
#[derive(Clone, Debug)]
pub struct Embedding {
    target: Arc<NumberField>,
    image: Option<AlgNum>,
}

impl Embedding {
    pub fn target(&self) -> &Arc<NumberField> {
        &self.target
    }

    pub fn map(&self, e: &AlgNum) -> AlgNum {
        match (&self.image, e.as_rational()) {
            (_, Some(r)) => AlgNum::rational(r),
            (None, None) => panic!("embedding from Q applied to an irrational value"),
            (Some(img), None) => {
                let mut acc = AlgNum::from_poly(&self.target, &UPoly::zero());
                for v in e.c.iter().rev() {
                    acc = acc * img.clone() + AlgNum::rational(v.clone());
                }
                acc
            }
        }
    }

    pub fn map_poly(&self, p: &UPoly<AlgNum>) -> UPoly<AlgNum> {
        p.map(|c| self.map(c))
    }
}

/// Where a root of an irreducible factor lives.
#[derive(Clone, Debug)]
pub enum Root {
    /// Linear factor: the root is already in the base field.
    InField(AlgNum),
    /// Nonlinear factor: the root generates `embed.target()` over the base.
    Extended { embed: Embedding, root: AlgNum },
}

/// An irreducible monic factor over the base field, with the Trager data
/// needed to adjoin one of its roots.
#[derive(Clone, Debug)]
pub struct Factor {
    pub poly: UPoly<AlgNum>,
    norm: UPoly<Rational>,
    shift: i64,
    base: Option<Arc<NumberField>>,
}

fn to_rational_poly(p: &UPoly<AlgNum>) -> UPoly<Rational> {
    p.map(|c| c.as_rational().expect("rational coefficient"))
}

fn lift(p: &UPoly<Rational>) -> UPoly<AlgNum> {
    p.map(|c| AlgNum::rational(c.clone()))
}

/// `Norm_{K/Q}(p(z - s*alpha))` as a polynomial in `z`.
fn shifted_norm(p: &UPoly<AlgNum>, k: &Arc<NumberField>, s: i64) -> UPoly<Rational> {
    let deg = p.degree().unwrap_or(0) * k.degree();
    let alpha = AlgNum::generator(k);
    let mut xs = Vec::with_capacity(deg + 1);
    let mut ys = Vec::with_capacity(deg + 1);
    for i in 0..=deg as i64 {
        let z = AlgNum::rational(rat_int(i)) - AlgNum::rational(rat_int(s)) * alpha.clone();
        let v = p.eval(&z);
        let v = AlgNum::build(Some(k.clone()), v.as_poly());
        xs.push(rat_int(i));
        ys.push(v.norm());
    }
    interpolate(&xs, &ys)
}

/// Monic irreducible factors of `p` over `base` (`None` for `Q`), each
/// listed once.
pub fn factor_over(p: &UPoly<AlgNum>, base: Option<&Arc<NumberField>>) -> Vec<Factor> {
    if p.is_constant() {
        return Vec::new();
    }
    let p = p.squarefree_part();
    let Some(k) = base.cloned() else {
        return factor_rational(&to_rational_poly(&p))
            .into_iter()
            .map(|g| Factor {
                poly: lift(&g),
                norm: g,
                shift: 0,
                base: None,
            })
            .collect();
    };
    let alpha = AlgNum::generator(&k);
    for s in 0..64i64 {
        let n = shifted_norm(&p, &k, s);
        if !n.is_squarefree() {
            continue;
        }
        let shift_poly = UPoly::new(vec![AlgNum::rational(rat_int(s)) * alpha.clone(), AlgNum::one()]);
        let mut out = Vec::new();
        for ni in factor_rational(&n) {
            let h = p.gcd(&lift(&ni).compose(&shift_poly));
            if !h.is_constant() {
                out.push(Factor {
                    poly: h,
                    norm: ni,
                    shift: s,
                    base: Some(k.clone()),
                });
            }
        }
        return out;
    }
    unreachable!("a square-free shifted norm exists for all but finitely many shifts")
}

impl Factor {
    pub fn degree(&self) -> usize {
        self.poly.degree().unwrap_or(0)
    }

    pub fn root(&self) -> Root {
        if self.degree() == 1 {
            return Root::InField(-self.poly.coeff(0) / self.poly.coeff(1));
        }
        let l = NumberField::new(&self.norm);
        let gamma = AlgNum::generator(&l);
        let Some(k) = &self.base else {
            return Root::Extended {
                embed: Embedding { target: l, image: None },
                root: gamma,
            };
        };
        // h(gamma - s*a) as a polynomial in a over L, with K's generator
        // replaced by a
        let s = AlgNum::rational(rat_int(self.shift));
        let lin = UPoly::new(vec![gamma.clone(), -s.clone()]);
        let mut q = UPoly::zero();
        let mut lin_pow = UPoly::one();
        for cj in self.poly.coeffs() {
            let cpoly = UPoly::new(cj.coeffs().iter().map(|v| AlgNum::rational(v.clone())).collect());
            q = &q + &(&cpoly * &lin_pow);
            lin_pow = &lin_pow * &lin;
        }
        let q = q.map(|c| AlgNum::build(Some(l.clone()), c.as_poly()));
        let g = q.gcd(&lift(&k.minpoly));
        assert_eq!(g.degree(), Some(1), "shifted norm separates conjugates");
        let alpha_l = -g.coeff(0);
        let root = gamma - s * alpha_l.clone();
        Root::Extended {
            embed: Embedding {
                target: l,
                image: Some(alpha_l),
            },
            root,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qp(v: &[i64]) -> UPoly<Rational> {
        UPoly::new(v.iter().map(|&c| rat_int(c)).collect())
    }

    #[test]
    fn sqrt2_arithmetic() {
        let k = NumberField::new(&qp(&[-2, 0, 1]));
        let a = AlgNum::generator(&k);
        assert_eq!(a.clone() * a.clone(), AlgNum::rational(rat_int(2)));
        let b = a.clone() + AlgNum::one();
        let inv = b.inverse();
        assert_eq!(b.clone() * inv, AlgNum::one());
        assert_eq!(b.norm(), rat_int(-1));
    }

    #[test]
    fn factor_over_rationals_and_extension() {
        // t^2 - 2 is irreducible over Q
        let p = lift(&qp(&[-2, 0, 1]));
        let fs = factor_over(&p, None);
        assert_eq!(fs.len(), 1);
        let Root::Extended { embed, root } = fs[0].root() else {
            panic!("expected an extension");
        };
        assert_eq!(embed.target().degree(), 2);
        assert!(embed.map_poly(&p).eval(&root).is_zero());
    }

    #[test]
    fn splits_over_its_own_field() {
        // over Q(sqrt2), t^2 - 2 = (t - a)(t + a)
        let k = NumberField::new(&qp(&[-2, 0, 1]));
        let two = AlgNum::from_poly(&k, &qp(&[2]));
        let p = UPoly::new(vec![-two, AlgNum::zero(), AlgNum::one()]);
        let fs = factor_over(&p, Some(&k));
        assert_eq!(fs.len(), 2);
        assert!(fs.iter().all(|f| f.degree() == 1));
    }

    #[test]
    fn tower_is_flattened() {
        // over K = Q(sqrt2), t^2 - 3 stays irreducible; adjoining a root
        // gives a degree-4 field containing both square roots
        let k = NumberField::new(&qp(&[-2, 0, 1]));
        let alpha = AlgNum::generator(&k);
        let p = UPoly::new(vec![AlgNum::from_poly(&k, &qp(&[-3])), AlgNum::zero(), AlgNum::one()]);
        let fs = factor_over(&p, Some(&k));
        assert_eq!(fs.len(), 1);
        let Root::Extended { embed, root } = fs[0].root() else {
            panic!("expected an extension");
        };
        assert_eq!(embed.target().degree(), 4);
        assert_eq!(root.clone() * root, AlgNum::rational(rat_int(3)));
        let a_l = embed.map(&alpha);
        assert_eq!(a_l.clone() * a_l, AlgNum::rational(rat_int(2)));
    }

    #[test]
    fn cube_root_factors_over_its_field() {
        // t^3 - 2 over Q(cbrt 2) = (t - a)(t^2 + a t + a^2)
        let k = NumberField::new(&qp(&[-2, 0, 0, 1]));
        let p = UPoly::new(vec![
            AlgNum::from_poly(&k, &qp(&[-2])),
            AlgNum::zero(),
            AlgNum::zero(),
            AlgNum::one(),
        ]);
        let mut degs: Vec<usize> = factor_over(&p, Some(&k)).iter().map(|f| f.degree()).collect();
        degs.sort();
        assert_eq!(degs, vec![1, 2]);
    }
}
