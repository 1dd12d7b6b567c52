//! Six points in the projective plane, the lines and conics they span, and
//! Eckardt points in the blow-up model and on explicit cubic forms.
//!
//! Point indices in reports are 1-based, matching the labels `E1..E6`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::algebra::linalg;
use crate::algebra::mpoly::{fmt_monomial, MPoly};
use crate::expr::{parse_poly, ParseError};
use crate::lattice::{enumerate_negative_curves, tritangent_triples, SurfaceMode, NODAL_TRIPLE};
use crate::scalar::{fmt_rational, parse_rational};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PlaneError {
    #[error("the zero vector is not a projective point")]
    ZeroPoint,
    #[error("expected {expected} coordinates, found {found}")]
    WrongDimension { expected: usize, found: usize },
    #[error("points impose dependent conditions (kernel dimension {kernel_dim}, dependent points {dependent:?})")]
    Degenerate { kernel_dim: usize, dependent: Vec<usize> },
    #[error("invalid {}", .0)]
    InvalidConfig(ValidationReport),
    #[error("cubic form is identically zero")]
    ZeroCubic,
    #[error("cubic form is not homogeneous of degree 3")]
    NotCubic,
    #[error("point {0} is not on the surface")]
    NotOnSurface(ProjPoint),
    #[error("point {0} is a singular point of the surface")]
    SingularPoint(ProjPoint),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Expr(#[from] ParseError),
}

/// Primitive integer vector with first nonzero entry positive.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint {
    coords: Vec<BigInt>,
}

fn primitive(v: &[Rational]) -> Option<Vec<BigInt>> {
    let lcm = v.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    let ints: Vec<BigInt> = v.iter().map(|r| (r * &lcm).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return None;
    }
    let sign = if ints.iter().find(|x| !x.is_zero())?.is_negative() {
        -BigInt::one()
    } else {
        BigInt::one()
    };
    Some(ints.into_iter().map(|x| x / &g * &sign).collect())
}

impl ProjPoint {
    pub fn new(coords: &[Rational]) -> Result<Self, PlaneError> {
        primitive(coords)
            .map(|coords| ProjPoint { coords })
            .ok_or(PlaneError::ZeroPoint)
    }

    pub fn from_ints(coords: &[i64]) -> Result<Self, PlaneError> {
        let r: Vec<Rational> = coords.iter().map(|&c| Rational::from_integer(c.into())).collect();
        Self::new(&r)
    }

    /// Whitespace-, comma- or colon-separated rationals, optionally in
    /// parentheses.
    pub fn parse(src: &str) -> Result<Self, PlaneError> {
        let cleaned: String = src
            .chars()
            .map(|c| if matches!(c, '(' | ')' | ':' | ',') { ' ' } else { c })
            .collect();
        let coords = cleaned
            .split_whitespace()
            .map(|t| {
                parse_rational(t).ok_or_else(|| PlaneError::Parse {
                    line: 1,
                    msg: format!("bad coordinate '{t}'"),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(&coords)
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn to_rationals(&self) -> Vec<Rational> {
        self.coords.iter().map(|c| Rational::from_integer(c.clone())).collect()
    }

    fn expect_dim(&self, n: usize) -> Result<(), PlaneError> {
        if self.dim() == n {
            Ok(())
        } else {
            Err(PlaneError::WrongDimension {
                expected: n,
                found: self.dim(),
            })
        }
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(":"))
    }
}

impl Serialize for ProjPoint {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

fn det3(a: &[BigInt], b: &[BigInt], c: &[BigInt]) -> BigInt {
    &a[0] * (&b[1] * &c[2] - &b[2] * &c[1]) - &a[1] * (&b[0] * &c[2] - &b[2] * &c[0])
        + &a[2] * (&b[0] * &c[1] - &b[1] * &c[0])
}

fn cross(a: &[BigInt], b: &[BigInt]) -> [BigInt; 3] {
    [
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

/// Three plane points lie on a line.
pub fn collinear(p: &ProjPoint, q: &ProjPoint, r: &ProjPoint) -> bool {
    det3(&p.coords, &q.coords, &r.coords).is_zero()
}

/// Coefficients `(a, b, c)` of the line `a x + b y + c z = 0` through two
/// distinct points.
pub fn line_through(p: &ProjPoint, q: &ProjPoint) -> [BigInt; 3] {
    cross(&p.coords, &q.coords)
}

/// Conic monomials `x², xy, xz, y², yz, z²`.
const CONIC_MONOMIALS: [[u32; 3]; 6] = [[2, 0, 0], [1, 1, 0], [1, 0, 1], [0, 2, 0], [0, 1, 1], [0, 0, 2]];

fn monomial_row<const N: usize>(p: &ProjPoint, monos: &[[u32; N]]) -> Vec<Rational> {
    monos
        .iter()
        .map(|e| {
            let v = p
                .coords
                .iter()
                .zip(e)
                .fold(BigInt::one(), |acc, (c, &k)| acc * c.pow(k));
            Rational::from_integer(v)
        })
        .collect()
}

/// Primitive plane conic, coefficients on `x², xy, xz, y², yz, z²`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Conic {
    pub coeffs: [BigInt; 6],
}

impl Conic {
    pub fn eval(&self, p: &ProjPoint) -> BigInt {
        monomial_row(p, &CONIC_MONOMIALS)
            .iter()
            .zip(&self.coeffs)
            .map(|(m, c)| m.to_integer() * c)
            .sum()
    }

    /// Polar form `B(p, q)`, so that `Q(p + t q) = Q(p) + 2t B(p, q) + t² Q(q)`.
    fn polar(&self, p: &[BigInt], q: &[BigInt]) -> BigInt {
        let [a, b, c, d, e, f] = &self.coeffs;
        let two = BigInt::from(2);
        &two * a * &p[0] * &q[0]
            + b * (&p[0] * &q[1] + &p[1] * &q[0])
            + c * (&p[0] * &q[2] + &p[2] * &q[0])
            + &two * d * &p[1] * &q[1]
            + e * (&p[1] * &q[2] + &p[2] * &q[1])
            + &two * f * &p[2] * &q[2]
    }
}

impl fmt::Display for Conic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let poly = MPoly::<Rational, 3>::from_terms(
            CONIC_MONOMIALS
                .iter()
                .zip(&self.coeffs)
                .map(|(e, c)| (*e, Rational::from_integer(c.clone()))),
        );
        write!(f, "{}", poly.display_with(&["x", "y", "z"]))
    }
}

fn dependent_indices(rows: &[Vec<Rational>]) -> Vec<usize> {
    linalg::row_dependency(rows)
        .map(|c| {
            c.iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(i, _)| i + 1)
                .collect()
        })
        .unwrap_or_default()
}

/// The unique conic through five points imposing independent conditions.
pub fn conic_through(points: &[ProjPoint; 5]) -> Result<Conic, PlaneError> {
    for p in points {
        p.expect_dim(3)?;
    }
    let rows: Vec<Vec<Rational>> = points.iter().map(|p| monomial_row(p, &CONIC_MONOMIALS)).collect();
    let ker = linalg::kernel(&rows, 6);
    if ker.len() != 1 {
        return Err(PlaneError::Degenerate {
            kernel_dim: ker.len(),
            dependent: dependent_indices(&rows),
        });
    }
    let coeffs = primitive(&ker[0]).expect("nonzero kernel vector");
    Ok(Conic {
        coeffs: coeffs.try_into().expect("six coefficients"),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SixPointConfig {
    pub points: [ProjPoint; 6],
    pub mode: SurfaceMode,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    WrongDimension {
        point: usize,
    },
    Duplicate {
        points: [usize; 2],
    },
    Collinear {
        points: [usize; 3],
    },
    FourCollinear {
        points: [usize; 4],
    },
    /// Nodal mode: `p1, p2, p3` are not collinear.
    MissingNodalLine,
    Conconic,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ps = |v: &[usize]| v.iter().map(|i| format!("p{i}")).collect::<Vec<_>>().join(", ");
        match self {
            Violation::WrongDimension { point } => write!(f, "p{point} is not a plane point"),
            Violation::Duplicate { points } => write!(f, "duplicate points {}", ps(points)),
            Violation::Collinear { points } => write!(f, "collinear points {}", ps(points)),
            Violation::FourCollinear { points } => write!(f, "four collinear points {}", ps(points)),
            Violation::MissingNodalLine => write!(f, "p1, p2, p3 are not collinear"),
            Violation::Conconic => write!(f, "all six points lie on a conic"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub mode: SurfaceMode,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return write!(f, "{}: valid", self.mode);
        }
        let v: Vec<String> = self.violations.iter().map(|v| v.to_string()).collect();
        write!(f, "{}: {}", self.mode, v.join("; "))
    }
}

fn subsets<const K: usize>(n: usize) -> Vec<[usize; K]> {
    let mut out = Vec::new();
    let mut cur = [0usize; K];
    fn rec<const K: usize>(start: usize, depth: usize, n: usize, cur: &mut [usize; K], out: &mut Vec<[usize; K]>) {
        if depth == K {
            out.push(*cur);
            return;
        }
        for i in start..n {
            cur[depth] = i;
            rec(i + 1, depth + 1, n, cur, out);
        }
    }
    rec(0, 0, n, &mut cur, &mut out);
    out
}

/// Checks the position conditions of the configuration's mode.
pub fn validate(config: &SixPointConfig) -> ValidationReport {
    let pts = &config.points;
    let mut violations = Vec::new();
    for (i, p) in pts.iter().enumerate() {
        if p.dim() != 3 {
            violations.push(Violation::WrongDimension { point: i + 1 });
        }
    }
    if !violations.is_empty() {
        return ValidationReport {
            mode: config.mode,
            violations,
        };
    }
    let mut duplicate = false;
    for [i, j] in subsets::<2>(6) {
        if pts[i] == pts[j] {
            duplicate = true;
            violations.push(Violation::Duplicate { points: [i + 1, j + 1] });
        }
    }
    let nodal = [NODAL_TRIPLE[0] - 1, NODAL_TRIPLE[1] - 1, NODAL_TRIPLE[2] - 1];
    for t @ [i, j, k] in subsets::<3>(6) {
        if pts[i] == pts[j] || pts[j] == pts[k] || pts[i] == pts[k] {
            continue;
        }
        let col = collinear(&pts[i], &pts[j], &pts[k]);
        let expected = config.mode == SurfaceMode::Nodal && t == nodal;
        if col && !expected {
            violations.push(Violation::Collinear {
                points: [i + 1, j + 1, k + 1],
            });
        }
        if expected && !col {
            violations.push(Violation::MissingNodalLine);
        }
    }
    for [i, j, k, l] in subsets::<4>(6) {
        let q = [&pts[i], &pts[j], &pts[k], &pts[l]];
        let distinct = (0..4).all(|a| (a + 1..4).all(|b| q[a] != q[b]));
        if distinct && collinear(q[0], q[1], q[2]) && collinear(q[0], q[1], q[3]) {
            violations.push(Violation::FourCollinear {
                points: [i + 1, j + 1, k + 1, l + 1],
            });
        }
    }
    if !duplicate {
        let rows: Vec<Vec<Rational>> = pts.iter().map(|p| monomial_row(p, &CONIC_MONOMIALS)).collect();
        if linalg::determinant(&rows).is_zero() {
            violations.push(Violation::Conconic);
        }
    }
    ValidationReport {
        mode: config.mode,
        violations,
    }
}

impl SixPointConfig {
    pub fn new(points: [ProjPoint; 6], mode: SurfaceMode) -> Result<Self, PlaneError> {
        let c = SixPointConfig { points, mode };
        let report = validate(&c);
        if report.is_valid() {
            Ok(c)
        } else {
            Err(PlaneError::InvalidConfig(report))
        }
    }

    /// Conic through the five points other than `p_j` (1-based).
    pub fn conic_avoiding(&self, j: usize) -> Result<Conic, PlaneError> {
        let five: Vec<ProjPoint> = (1..=6)
            .filter(|&i| i != j)
            .map(|i| self.points[i - 1].clone())
            .collect();
        conic_through(&five.try_into().expect("five points"))
    }

    pub fn to_file_string(&self) -> String {
        let mut s = format!("mode: {}\n", self.mode);
        for p in &self.points {
            let c: Vec<String> = p.coords.iter().map(|c| c.to_string()).collect();
            s.push_str(&c.join(" "));
            s.push('\n');
        }
        s
    }
}

/// Reads a configuration: a `mode: smooth|nodal` header and six lines of
/// three rational coordinates. `#` starts a comment.
pub fn parse_config(src: &str) -> Result<SixPointConfig, PlaneError> {
    let mut mode = None;
    let mut points = Vec::new();
    for (idx, raw) in src.lines().enumerate() {
        let line = idx + 1;
        let err = |msg: String| PlaneError::Parse { line, msg };
        let text = raw.split('#').next().unwrap_or("").trim();
        if text.is_empty() {
            continue;
        }
        if let Some(rest) = text.strip_prefix("mode:") {
            if mode.is_some() {
                return Err(err("duplicate mode header".into()));
            }
            mode = Some(
                rest.trim()
                    .parse::<SurfaceMode>()
                    .map_err(|_| err(format!("unknown mode '{}'", rest.trim())))?,
            );
            continue;
        }
        let coords = text
            .split_whitespace()
            .map(|t| parse_rational(t).ok_or_else(|| err(format!("bad coordinate '{t}'"))))
            .collect::<Result<Vec<_>, _>>()?;
        if coords.len() != 3 {
            return Err(err(format!("expected 3 coordinates, found {}", coords.len())));
        }
        points.push(ProjPoint::new(&coords).map_err(|e| err(e.to_string()))?);
    }
    let mode = mode.ok_or(PlaneError::Parse {
        line: 0,
        msg: "missing 'mode:' header".into(),
    })?;
    let n = points.len();
    let points: [ProjPoint; 6] = points.try_into().map_err(|_| PlaneError::Parse {
        line: 0,
        msg: format!("expected 6 points, found {n}"),
    })?;
    SixPointConfig::new(points, mode)
}

/// Where the three lines of a tritangent triple meet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Location {
    Point(ProjPoint),
    /// On the exceptional curve over `p_i`.
    InfinitelyNear(usize),
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Location::Point(p) => write!(f, "{p}"),
            Location::InfinitelyNear(i) => write!(f, "infinitely near p{i}"),
        }
    }
}

impl Serialize for Location {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EckardtRecord {
    pub triple: [String; 3],
    pub location: Location,
}

impl fmt::Display for EckardtRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}} at {}", self.triple.join(", "), self.location)
    }
}

enum Kind {
    E(usize),
    L(usize, usize),
    F(usize),
}

fn kind(label: &str) -> Option<Kind> {
    let d: Vec<usize> = label[1..]
        .chars()
        .filter_map(|c| c.to_digit(10))
        .map(|d| d as usize)
        .collect();
    match (label.chars().next()?, d.as_slice()) {
        ('E', [i]) => Some(Kind::E(*i)),
        ('F', [i]) => Some(Kind::F(*i)),
        ('L', [i, j]) => Some(Kind::L(*i, *j)),
        _ => None,
    }
}

/// Geometric test of one tritangent triple: concurrency for three lines
/// `L_ij`, tangency of `F_j` to `p_i p_j` at `p_i` for `{E_i, L_ij, F_j}`.
pub fn triple_location(config: &SixPointConfig, triple: &[String; 3]) -> Option<Location> {
    let kinds: Vec<Kind> = triple.iter().map(|l| kind(l)).collect::<Option<_>>()?;
    let p = |i: usize| &config.points[i - 1];
    if let [Kind::L(a, b), Kind::L(c, d), Kind::L(e, f)] = kinds.as_slice() {
        let l1 = line_through(p(*a), p(*b));
        let l2 = line_through(p(*c), p(*d));
        let l3 = line_through(p(*e), p(*f));
        if !det3(&l1, &l2, &l3).is_zero() {
            return None;
        }
        let meet = cross(&l1, &l2);
        let r: Vec<Rational> = meet.iter().map(|c| Rational::from_integer(c.clone())).collect();
        return ProjPoint::new(&r).ok().map(Location::Point);
    }
    let i = kinds.iter().find_map(|k| match k {
        Kind::E(i) => Some(*i),
        _ => None,
    })?;
    let j = kinds.iter().find_map(|k| match k {
        Kind::F(j) => Some(*j),
        _ => None,
    })?;
    let has_line = kinds
        .iter()
        .any(|k| matches!(k, Kind::L(a, b) if (*a, *b) == (i.min(j), i.max(j))));
    if !has_line {
        return None;
    }
    let conic = config.conic_avoiding(j).ok()?;
    conic
        .polar(&p(i).coords, &p(j).coords)
        .is_zero()
        .then_some(Location::InfinitelyNear(i))
}

/// Eckardt points of the blow-up model: tritangent triples whose lines
/// meet in a point.
pub fn eckardt_points(config: &SixPointConfig) -> Result<Vec<EckardtRecord>, PlaneError> {
    let report = validate(config);
    if !report.is_valid() {
        return Err(PlaneError::InvalidConfig(report));
    }
    let curves = enumerate_negative_curves(config.mode);
    let mut out = Vec::new();
    for t in tritangent_triples(&curves) {
        let triple = t.map(|i| curves.curves[i].label.clone());
        if let Some(location) = triple_location(config, &triple) {
            out.push(EckardtRecord { triple, location });
        }
    }
    Ok(out)
}

/// Cubic monomials in `z0..z3`, graded lexicographic.
pub const CUBIC_MONOMIALS: [[u32; 4]; 20] = [
    [3, 0, 0, 0],
    [2, 1, 0, 0],
    [2, 0, 1, 0],
    [2, 0, 0, 1],
    [1, 2, 0, 0],
    [1, 1, 1, 0],
    [1, 1, 0, 1],
    [1, 0, 2, 0],
    [1, 0, 1, 1],
    [1, 0, 0, 2],
    [0, 3, 0, 0],
    [0, 2, 1, 0],
    [0, 2, 0, 1],
    [0, 1, 2, 0],
    [0, 1, 1, 1],
    [0, 1, 0, 2],
    [0, 0, 3, 0],
    [0, 0, 2, 1],
    [0, 0, 1, 2],
    [0, 0, 0, 3],
];

const Z: [&str; 4] = ["z0", "z1", "z2", "z3"];

/// Quaternary cubic form with coefficients on [`CUBIC_MONOMIALS`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubicForm {
    coeffs: Vec<Rational>,
}

impl CubicForm {
    pub fn new(coeffs: Vec<Rational>) -> Result<Self, PlaneError> {
        if coeffs.len() != 20 {
            return Err(PlaneError::WrongDimension {
                expected: 20,
                found: coeffs.len(),
            });
        }
        if coeffs.iter().all(Zero::is_zero) {
            return Err(PlaneError::ZeroCubic);
        }
        Ok(CubicForm { coeffs })
    }

    pub fn from_poly(f: &MPoly<Rational, 4>) -> Result<Self, PlaneError> {
        if f.terms().any(|(e, _)| e.iter().sum::<u32>() != 3) {
            return Err(PlaneError::NotCubic);
        }
        Self::new(CUBIC_MONOMIALS.iter().map(|e| f.coeff(e)).collect())
    }

    /// Parses an expression in `z0..z3`, e.g. `z0^3 + z1^3 + z2^3 + z3^3`.
    pub fn from_expression(src: &str) -> Result<Self, PlaneError> {
        Self::from_poly(&parse_poly::<4>(src, &Z)?)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn to_poly(&self) -> MPoly<Rational, 4> {
        MPoly::from_terms(CUBIC_MONOMIALS.iter().copied().zip(self.coeffs.iter().cloned()))
    }

    /// `f(A z)`.
    pub fn pullback(&self, a: &[[i64; 4]; 4]) -> Result<Self, PlaneError> {
        let images: [MPoly<Rational, 4>; 4] = std::array::from_fn(|i| {
            MPoly::from_terms((0..4).map(|j| {
                let mut e = [0; 4];
                e[j] = 1;
                (e, Rational::from_integer(a[i][j].into()))
            }))
        });
        Self::from_poly(&self.to_poly().substitute(&images))
    }

    /// Twenty `monomial coefficient` lines.
    pub fn to_file_string(&self) -> String {
        CUBIC_MONOMIALS
            .iter()
            .zip(&self.coeffs)
            .map(|(e, c)| format!("{} {}\n", fmt_monomial(e, &Z), fmt_rational(c)))
            .collect()
    }
}

fn parse_monomial(s: &str) -> Option<[u32; 4]> {
    let mut e = [0u32; 4];
    for factor in s.split('*') {
        let (var, pow) = match factor.split_once('^') {
            Some((v, p)) => (v, p.parse::<u32>().ok()?),
            None => (factor, 1),
        };
        let i = Z.iter().position(|z| *z == var)?;
        e[i] += pow;
    }
    Some(e)
}

/// Reads twenty `monomial coefficient` lines, one per cubic monomial.
pub fn parse_cubic(src: &str) -> Result<CubicForm, PlaneError> {
    let mut coeffs: Vec<Option<Rational>> = vec![None; 20];
    for (idx, raw) in src.lines().enumerate() {
        let line = idx + 1;
        let err = |msg: String| PlaneError::Parse { line, msg };
        let text = raw.split('#').next().unwrap_or("").trim();
        if text.is_empty() {
            continue;
        }
        let (mono, coeff) = text
            .split_once(char::is_whitespace)
            .ok_or_else(|| err("expected 'monomial coefficient'".into()))?;
        let e = parse_monomial(mono).ok_or_else(|| err(format!("bad monomial '{mono}'")))?;
        let k = CUBIC_MONOMIALS
            .iter()
            .position(|m| *m == e)
            .ok_or_else(|| err(format!("'{mono}' is not a cubic monomial")))?;
        if coeffs[k].is_some() {
            return Err(err(format!("monomial '{mono}' repeated")));
        }
        let c = parse_rational(coeff).ok_or_else(|| err(format!("bad coefficient '{}'", coeff.trim())))?;
        coeffs[k] = Some(c);
    }
    if let Some(k) = coeffs.iter().position(Option::is_none) {
        return Err(PlaneError::Parse {
            line: 0,
            msg: format!("missing monomial '{}'", fmt_monomial(&CUBIC_MONOMIALS[k], &Z)),
        });
    }
    CubicForm::new(coeffs.into_iter().map(Option::unwrap).collect())
}

/// Outcome of the tangent-cone test at a smooth point.
#[derive(Debug, Clone, PartialEq)]
pub struct ConeTest {
    pub eckardt: bool,
    /// `f(s0 p + s1 u + s2 v)` for a basis `p, u, v` of the tangent plane.
    pub restricted: MPoly<Rational, 3>,
}

impl ConeTest {
    pub fn restricted_string(&self) -> String {
        self.restricted.display_with(&["s0", "s1", "s2"]).to_string()
    }
}

fn linear_form(v: &[Rational]) -> [MPoly<Rational, 3>; 1] {
    [MPoly::from_terms(v.iter().enumerate().map(|(i, c)| {
        let mut e = [0; 3];
        e[i] = 1;
        (e, c.clone())
    }))]
}

/// Restricts `f` to the tangent plane at `p` and tests for a cone with
/// vertex `p`.
pub fn eckardt_cone_test(f: &CubicForm, p: &ProjPoint) -> Result<ConeTest, PlaneError> {
    p.expect_dim(4)?;
    let poly = f.to_poly();
    let pr: [Rational; 4] = p.to_rationals().try_into().expect("four coordinates");
    if !poly.eval(&pr).is_zero() {
        return Err(PlaneError::NotOnSurface(p.clone()));
    }
    let grad: Vec<Rational> = (0..4).map(|i| poly.partial(i).eval(&pr)).collect();
    if grad.iter().all(Zero::is_zero) {
        return Err(PlaneError::SingularPoint(p.clone()));
    }
    let plane = linalg::kernel(&[grad], 4);
    let (u, v) = subsets::<2>(3)
        .into_iter()
        .map(|[i, j]| (plane[i].clone(), plane[j].clone()))
        .find(|(u, v)| linalg::rank(&[pr.to_vec(), u.clone(), v.clone()]) == 3)
        .expect("tangent plane contains p");
    let images: [MPoly<Rational, 3>; 4] = std::array::from_fn(|k| {
        let [l] = linear_form(&[pr[k].clone(), u[k].clone(), v[k].clone()]);
        l
    });
    let restricted = poly.substitute(&images);
    let eckardt = restricted.terms().all(|(e, _)| e[0] == 0);
    Ok(ConeTest { eckardt, restricted })
}

/// `p` is an Eckardt point of the smooth cubic surface `f = 0`.
pub fn is_eckardt_on_cubic(f: &CubicForm, p: &ProjPoint) -> Result<bool, PlaneError> {
    Ok(eckardt_cone_test(f, p)?.eckardt)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(v: &[i64]) -> ProjPoint {
        ProjPoint::from_ints(v).unwrap()
    }

    fn frame() -> [ProjPoint; 6] {
        [
            pt(&[1, 0, 0]),
            pt(&[0, 1, 0]),
            pt(&[0, 0, 1]),
            pt(&[1, 1, 1]),
            pt(&[1, 2, 3]),
            pt(&[2, 3, 1]),
        ]
    }

    #[test]
    fn normalization() {
        assert_eq!(pt(&[-2, 4, 0]), pt(&[1, -2, 0]));
        assert_eq!(pt(&[0, -3, 6]).coords()[1], BigInt::from(1));
        assert_eq!(ProjPoint::from_ints(&[0, 0, 0]), Err(PlaneError::ZeroPoint));
        assert_eq!(ProjPoint::parse("(1/2 : 1 : 0)").unwrap(), pt(&[1, 2, 0]));
    }

    #[test]
    fn collinearity() {
        assert!(collinear(&pt(&[1, 0, 0]), &pt(&[0, 1, 0]), &pt(&[1, 1, 0])));
        assert!(!collinear(&pt(&[1, 0, 0]), &pt(&[0, 1, 0]), &pt(&[0, 0, 1])));
        assert!(collinear(&pt(&[1, 1, 1]), &pt(&[2, 2, 2]), &pt(&[0, 0, 1])));
    }

    #[test]
    fn conic_through_five() {
        let f = frame();
        let five: [ProjPoint; 5] = f[..5].to_vec().try_into().unwrap();
        let c = conic_through(&five).unwrap();
        for p in &five {
            assert!(c.eval(p).is_zero());
        }
        let bad = [
            pt(&[1, 0, 0]),
            pt(&[0, 1, 0]),
            pt(&[1, 1, 0]),
            pt(&[1, 2, 0]),
            pt(&[0, 0, 1]),
        ];
        assert!(matches!(
            conic_through(&bad),
            Err(PlaneError::Degenerate { kernel_dim: 2, .. })
        ));
        let dup = [
            pt(&[1, 0, 0]),
            pt(&[1, 0, 0]),
            pt(&[0, 0, 1]),
            pt(&[1, 1, 1]),
            pt(&[1, 2, 3]),
        ];
        let Err(PlaneError::Degenerate { dependent, .. }) = conic_through(&dup) else {
            panic!("duplicate accepted")
        };
        assert_eq!(dependent, vec![1, 2]);
    }

    #[test]
    fn validation_modes() {
        assert!(SixPointConfig::new(frame(), SurfaceMode::Smooth).is_ok());
        let mut f = frame();
        f[1] = f[0].clone();
        let r = validate(&SixPointConfig {
            points: f,
            mode: SurfaceMode::Smooth,
        });
        assert!(r.violations.contains(&Violation::Duplicate { points: [1, 2] }));
        let nodal = [
            pt(&[1, 0, 0]),
            pt(&[0, 1, 0]),
            pt(&[1, 1, 0]),
            pt(&[0, 0, 1]),
            pt(&[1, 2, 3]),
            pt(&[2, 3, 1]),
        ];
        assert!(SixPointConfig::new(nodal.clone(), SurfaceMode::Nodal).is_ok());
        let r = validate(&SixPointConfig {
            points: nodal,
            mode: SurfaceMode::Smooth,
        });
        assert_eq!(r.violations, vec![Violation::Collinear { points: [1, 2, 3] }]);
        let r = validate(&SixPointConfig {
            points: frame(),
            mode: SurfaceMode::Nodal,
        });
        assert_eq!(r.violations, vec![Violation::MissingNodalLine]);
    }

    #[test]
    fn concurrent_lines_give_record() {
        // p1p2: z = 0, p3p4: x = y; they meet at (1:1:0), p5p6 through it
        let pts = [
            pt(&[1, 0, 0]),
            pt(&[0, 1, 0]),
            pt(&[0, 0, 1]),
            pt(&[1, 1, 1]),
            pt(&[2, 3, 5]),
            pt(&[3, 4, 5]),
        ];
        assert!(collinear(&pts[4], &pts[5], &pt(&[1, 1, 0])));
        let c = SixPointConfig::new(pts, SurfaceMode::Smooth).unwrap();
        let recs = eckardt_points(&c).unwrap();
        let want = ["L12".to_string(), "L34".into(), "L56".into()];
        let rec = recs.iter().find(|r| r.triple == want).expect("record present");
        assert_eq!(rec.location, Location::Point(pt(&[1, 1, 0])));
    }

    #[test]
    fn tangency_record() {
        // y^2 = xz through p1, p3..p6 is tangent at p1 to z = 0, which holds p2
        let pts = [
            pt(&[1, 0, 0]),
            pt(&[0, 1, 0]),
            pt(&[0, 0, 1]),
            pt(&[1, 1, 1]),
            pt(&[1, 2, 4]),
            pt(&[1, 3, 9]),
        ];
        let c = SixPointConfig::new(pts, SurfaceMode::Smooth).unwrap();
        let recs = eckardt_points(&c).unwrap();
        let tri = ["E1".to_string(), "F2".into(), "L12".into()];
        let mut sorted: Vec<[String; 3]> = recs
            .iter()
            .map(|r| {
                let mut t = r.triple.clone();
                t.sort();
                t
            })
            .collect();
        sorted.sort();
        assert!(sorted.contains(&tri));
        assert!(recs.iter().any(|r| r.location == Location::InfinitelyNear(1)));
    }

    #[test]
    fn cubic_cone_tests() {
        let ex = CubicForm::from_expression("z1^3 + z2^3 + z3^3 + 6*z1*z2*z3 + z0^2*(z1 + 2*z2 + 3*z3)").unwrap();
        assert!(is_eckardt_on_cubic(&ex, &pt(&[1, 0, 0, 0])).unwrap());
        let fermat = CubicForm::from_expression("z0^3 + z1^3 + z2^3 + z3^3").unwrap();
        assert!(is_eckardt_on_cubic(&fermat, &pt(&[1, -1, 0, 0])).unwrap());
        assert!(!is_eckardt_on_cubic(&fermat, &pt(&[3, 4, 5, -6])).unwrap());
        assert!(matches!(
            is_eckardt_on_cubic(&fermat, &pt(&[1, 0, 0, 0])),
            Err(PlaneError::NotOnSurface(_))
        ));
        let cone = CubicForm::from_expression("z1^3 + z2^3 + z3^3").unwrap();
        assert!(matches!(
            is_eckardt_on_cubic(&cone, &pt(&[1, 0, 0, 0])),
            Err(PlaneError::SingularPoint(_))
        ));
    }

    #[test]
    fn cubic_file_round_trip() {
        let f = CubicForm::from_expression("z0^3 + 2*z0*z1*z3 - z3^3/2").unwrap();
        let text = f.to_file_string();
        assert!(text.starts_with("z0^3 1\nz0^2*z1 0\n"));
        assert_eq!(parse_cubic(&text).unwrap(), f);
        assert!(parse_cubic("z0^3 1\n").is_err());
    }

    #[test]
    fn config_file() {
        let src = "# frame\nmode: smooth\n1 0 0\n0 1 0\n0 0 1\n1 1 1\n1 2 3\n2 3 1\n";
        let c = parse_config(src).unwrap();
        assert_eq!(parse_config(&c.to_file_string()).unwrap(), c);
        assert!(parse_config("1 0 0\n").is_err());
        let e = parse_config("mode: smooth\n1 0\n").unwrap_err();
        assert!(matches!(e, PlaneError::Parse { line: 2, .. }));
    }
}
