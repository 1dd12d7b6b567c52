//! Log canonical thresholds of plane-curve germs at the origin.
//!
//! Two independent methods: the Newton polygon ([`newton_lct`]) and an
//! embedded resolution by point blow-ups ([`blowup_lct`]), plus the
//! multiplicity and product bounds that relate them.

pub mod blowup;
pub mod newton;

use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::algebra::bivariate;
use crate::algebra::mpoly::MPoly;
use crate::expr::{parse_xy, ParseError};
use crate::scalar::serde_rational;
use crate::{Poly2, Rational};

pub use blowup::{blowup_lct, blowup_lct_with_bound, ResolutionNode, DEFAULT_MAX_BLOWUPS};
pub use newton::{newton_lct, Face, NewtonPolygon};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LctError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("germ is identically zero")]
    Zero,
    #[error("germ does not vanish at the origin")]
    NonVanishing,
    #[error("resolution needs more than {bound} blow-ups")]
    DepthExceeded { bound: usize },
    #[error("{0}")]
    Precondition(String),
}

/// A nonzero polynomial germ vanishing at the origin.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveGerm {
    f: Poly2,
}

impl CurveGerm {
    pub fn new(f: Poly2) -> Result<Self, LctError> {
        if f.is_zero() {
            return Err(LctError::Zero);
        }
        if !f.coeff(&[0, 0]).is_zero() {
            return Err(LctError::NonVanishing);
        }
        Ok(CurveGerm { f })
    }

    pub fn parse(src: &str) -> Result<Self, LctError> {
        Self::new(parse_xy(src)?)
    }

    pub fn poly(&self) -> &Poly2 {
        &self.f
    }

    pub fn into_poly(self) -> Poly2 {
        self.f
    }

    pub fn mul(&self, o: &Self) -> Self {
        CurveGerm { f: &self.f * &o.f }
    }

    pub fn pow(&self, k: u32) -> Self {
        CurveGerm { f: self.f.pow(k) }
    }

    pub fn scale(&self, c: &Rational) -> Result<Self, LctError> {
        Self::new(self.f.scale(c))
    }

    /// `f(a x + b y, c x + d y)`.
    pub fn linear_substitution(&self, m: [[i64; 2]; 2]) -> Result<Self, LctError> {
        let lin = |p: i64, q: i64| {
            &Poly2::var(0).scale(&Rational::from_integer(p.into()))
                + &Poly2::var(1).scale(&Rational::from_integer(q.into()))
        };
        Self::new(self.f.substitute(&[lin(m[0][0], m[0][1]), lin(m[1][0], m[1][1])]))
    }
}

impl std::fmt::Display for CurveGerm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.f.display_with(&["x", "y"]))
    }
}

pub fn multiplicity(f: &CurveGerm) -> u32 {
    f.f.order().expect("nonzero germ")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Newton,
    Blowup,
}

/// What attains the reported minimum.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// Compact Newton face.
    Face(Face),
    /// Vertical boundary ray `i = const`.
    VerticalRay { i: u32 },
    /// Horizontal boundary ray `j = const`.
    HorizontalRay { j: u32 },
    /// Diagonal point inside the unit square; the value is capped at 1.
    Capped,
    /// Exceptional divisor of the resolution.
    Node { index: usize, a: u64, b: u64 },
    /// Reduced component group of multiplicity `multiplicity` in `f`.
    Component { multiplicity: u32 },
}

impl std::fmt::Display for Witness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Witness::Face(face) => write!(
                f,
                "face {}*i + {}*j = {} from {:?} to {:?}",
                face.w1, face.w2, face.level, face.from, face.to
            ),
            Witness::VerticalRay { i } => write!(f, "ray i = {i}"),
            Witness::HorizontalRay { j } => write!(f, "ray j = {j}"),
            Witness::Capped => write!(f, "capped at 1"),
            Witness::Node { index, a, b } => write!(f, "node {} (a={a}, b={b})", index + 1),
            Witness::Component { multiplicity } => {
                write!(f, "component of multiplicity {multiplicity}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LctReport {
    #[serde(serialize_with = "serde_rational::serialize")]
    pub value: Rational,
    pub method: Method,
    pub witness: Witness,
    /// Newton: nondegeneracy certified. Blow-up: always true.
    pub exact: bool,
    /// Resolution nodes in creation order (blow-up method).
    pub nodes: Vec<ResolutionNode>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub polygon: Option<NewtonPolygon>,
}

/// Product bound `1/c(fg) ≤ 1/c(f) + 1/c(g)` by the blow-up method.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HolderVerdict {
    #[serde(serialize_with = "serde_rational::serialize")]
    pub c_f: Rational,
    #[serde(serialize_with = "serde_rational::serialize")]
    pub c_g: Rational,
    #[serde(serialize_with = "serde_rational::serialize")]
    pub c_fg: Rational,
    pub holds: bool,
    pub equality: bool,
}

pub fn holder_product_bound(f: &CurveGerm, g: &CurveGerm) -> Result<HolderVerdict, LctError> {
    let c_f = blowup_lct(f)?.value;
    let c_g = blowup_lct(g)?.value;
    let c_fg = blowup_lct(&f.mul(g))?.value;
    let lhs = c_fg.recip();
    let rhs = c_f.recip() + c_g.recip();
    Ok(HolderVerdict {
        holds: lhs <= rhs,
        equality: lhs == rhs,
        c_f,
        c_g,
        c_fg,
    })
}

/// `1/k ≤ c ≤ 2/k` for `k = mult₀ f`, with the equality-case structure.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MultBoundsVerdict {
    pub k: u32,
    #[serde(serialize_with = "serde_rational::serialize")]
    pub value: Rational,
    pub lower_holds: bool,
    pub upper_holds: bool,
    /// At `c = 1/k`: whether `f = unit · h^k` with `mult₀ h = 1` was
    /// certified from the square-free factorization. `None` otherwise.
    pub equality_structure: Option<bool>,
}

impl MultBoundsVerdict {
    pub fn holds(&self) -> bool {
        self.lower_holds && self.upper_holds && self.equality_structure != Some(false)
    }
}

fn through_origin(g: &Poly2) -> bool {
    g.coeff(&[0, 0]).is_zero()
}

pub fn check_mult_bounds(f: &CurveGerm) -> Result<MultBoundsVerdict, LctError> {
    let k = multiplicity(f);
    let value = blowup_lct(f)?.value;
    let lower = Rational::new(1.into(), k.into());
    let upper = Rational::new(2.into(), k.into());
    let equality_structure = (value == lower).then(|| {
        let groups: Vec<(Poly2, u32)> = bivariate::squarefree_factorization(f.poly())
            .into_iter()
            .filter(|(g, _)| through_origin(g))
            .collect();
        groups.len() == 1 && groups[0].1 == k && groups[0].0.order() == Some(1)
    });
    Ok(MultBoundsVerdict {
        k,
        lower_holds: lower <= value,
        upper_holds: value <= upper,
        value,
        equality_structure,
    })
}

/// `c₀(x^{2k} y^k h) > 1/(3k)` for `mult₀ h = k`, `x ∤ h`, `y ∤ h`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MonomialVerdict {
    pub k: u32,
    pub f: String,
    #[serde(serialize_with = "serde_rational::serialize")]
    pub value: Rational,
    #[serde(serialize_with = "serde_rational::serialize")]
    pub threshold: Rational,
    pub holds: bool,
}

pub fn check_monomial_bound(k: u32, h: &CurveGerm) -> Result<MonomialVerdict, LctError> {
    if k == 0 {
        return Err(LctError::Precondition("k must be positive".into()));
    }
    let hk = multiplicity(h);
    if hk != k {
        return Err(LctError::Precondition(format!("h has multiplicity {hk}, expected {k}")));
    }
    let on_axis = |axis: usize| {
        MPoly::from_terms(
            h.poly()
                .terms()
                .filter(|(e, _)| e[axis] == 0)
                .map(|(e, c)| (*e, c.clone())),
        )
        .is_zero()
    };
    if on_axis(0) {
        return Err(LctError::Precondition("h divisible by coordinate x".into()));
    }
    if on_axis(1) {
        return Err(LctError::Precondition("h divisible by coordinate y".into()));
    }
    let mono = Poly2::monomial(Rational::one(), [2 * k, k]);
    let f = CurveGerm::new(&mono * h.poly())?;
    let value = blowup_lct(&f)?.value;
    let threshold = Rational::new(1.into(), (3 * k).into());
    Ok(MonomialVerdict {
        k,
        f: f.to_string(),
        holds: value > threshold,
        value,
        threshold,
    })
}
