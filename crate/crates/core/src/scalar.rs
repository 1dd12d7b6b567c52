//! Scalar traits shared by the polynomial and constraint machinery.
//!
//! Everything numeric in this crate is written against [`Field`] (and
//! [`OrderedField`] where comparisons are needed). The concrete exact type
//! used throughout is [`Rational`](crate::Rational); the algebraic-number
//! type used inside the resolution engine also implements [`Field`].

use std::fmt;
use std::ops::Neg;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{Num, Signed, Zero};

/// A commutative field. Any `num_traits::Num` type with negation qualifies;
/// exactness is the caller's concern.
pub trait Field: Clone + fmt::Debug + Num + Neg<Output = Self> {
    fn from_i64(v: i64) -> Self {
        let mut acc = Self::zero();
        let mut pow = Self::one();
        let mut n = v.unsigned_abs();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc + pow.clone();
            }
            pow = pow.clone() + pow;
            n >>= 1;
        }
        if v < 0 {
            -acc
        } else {
            acc
        }
    }

    fn inv(&self) -> Self {
        Self::one() / self.clone()
    }
}

impl<T: Clone + fmt::Debug + Num + Neg<Output = T>> Field for T {}

/// A totally ordered field, as required by Fourier–Motzkin and simplex.
pub trait OrderedField: Field + PartialOrd + Signed {}

impl<T: Field + PartialOrd + Signed> OrderedField for T {}

/// Types that can decide whether a value is an integer.
pub trait Integrality {
    fn is_integral(&self) -> bool;
}

impl<T: Clone + num_integer::Integer> Integrality for Ratio<T> {
    fn is_integral(&self) -> bool {
        self.is_integer()
    }
}

impl Integrality for f64 {
    fn is_integral(&self) -> bool {
        self.fract() == 0.0
    }
}

impl Integrality for f32 {
    fn is_integral(&self) -> bool {
        self.fract() == 0.0
    }
}

/// Builds `n/d` as a big rational.
pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Formats a rational as `p/q`, or a bare integer when `q = 1`.
pub fn fmt_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `int` or `int/int` (optional leading sign on the numerator).
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(BigRational::new(n, d))
}

/// Serde helper that writes rationals as lowest-terms strings.
pub mod serde_rational {
    use num_rational::BigRational;
    use serde::Serializer;

    pub fn serialize<S: Serializer>(r: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&super::fmt_rational(r))
    }

    pub mod option {
        use num_rational::BigRational;
        use serde::Serializer;

        pub fn serialize<S: Serializer>(r: &Option<BigRational>, s: S) -> Result<S::Ok, S::Error> {
            match r {
                Some(r) => s.serialize_str(&crate::scalar::fmt_rational(r)),
                None => s.serialize_none(),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn from_i64_matches_native() {
        for v in [-7i64, -1, 0, 1, 2, 13, 1024] {
            assert_eq!(<BigRational as Field>::from_i64(v), rat_int(v));
            assert_eq!(<f64 as Field>::from_i64(v), v as f64);
        }
    }

    #[test]
    fn rational_text_roundtrip() {
        assert_eq!(parse_rational("-4/6"), Some(rat(-2, 3)));
        assert_eq!(parse_rational("5"), Some(rat_int(5)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(fmt_rational(&rat(6, 3)), "2");
        assert_eq!(fmt_rational(&rat(-5, 10)), "-1/2");
    }

    #[test]
    fn integrality() {
        assert!(rat(4, 2).is_integral());
        assert!(!rat(5, 2).is_integral());
        assert!(Ratio::<i64>::new(9, 3).is_integral());
    }
}
