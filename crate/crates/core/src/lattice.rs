//! Picard lattice of the plane blown up at six points.
//!
//! A class `aH − Σ bᵢEᵢ` is stored as `(a; b₁, …, b₆)` and paired by
//! `D₁·D₂ = a₁a₂ − Σ b₁ᵢb₂ᵢ`. In nodal mode the points `p₁, p₂, p₃` are
//! collinear and `C = H − E₁ − E₂ − E₃` is the (−2)-curve.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::OnceLock;

use serde::Serialize;
use thiserror::Error;

use crate::constraints::simplex::feasible_point;
use crate::scalar::rat_int;
use crate::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct DivisorClass {
    pub a: i64,
    pub b: [i64; 6],
}

impl DivisorClass {
    pub const fn new(a: i64, b: [i64; 6]) -> Self {
        DivisorClass { a, b }
    }

    pub const fn zero() -> Self {
        Self::new(0, [0; 6])
    }

    pub const fn hyperplane() -> Self {
        Self::new(1, [0; 6])
    }

    /// Exceptional class `Eᵢ`, `i` in `1..=6`.
    pub fn e(i: usize) -> Self {
        let mut b = [0; 6];
        b[i - 1] = -1;
        Self::new(0, b)
    }

    /// Line through `pᵢ, pⱼ`: `H − Eᵢ − Eⱼ`.
    pub fn l(i: usize, j: usize) -> Self {
        assert!(i != j);
        let mut b = [0; 6];
        b[i - 1] = 1;
        b[j - 1] = 1;
        Self::new(1, b)
    }

    /// Conic through all points but `pᵢ`: `2H − Σ_{j≠i} Eⱼ`.
    pub fn f(i: usize) -> Self {
        let mut b = [1; 6];
        b[i - 1] = 0;
        Self::new(2, b)
    }

    /// The (−2)-curve of the nodal model.
    pub const fn nodal_curve() -> Self {
        Self::new(1, [1, 1, 1, 0, 0, 0])
    }

    pub const fn anticanonical() -> Self {
        Self::new(3, [1; 6])
    }

    pub fn dot(&self, o: &Self) -> i64 {
        self.a * o.a - self.b.iter().zip(&o.b).map(|(x, y)| x * y).sum::<i64>()
    }

    pub fn square(&self) -> i64 {
        self.dot(self)
    }

    /// Anticanonical degree `D·(−K)`.
    pub fn degree(&self) -> i64 {
        self.dot(&Self::anticanonical())
    }

    pub fn is_zero(&self) -> bool {
        *self == Self::zero()
    }

    pub fn to_vec(&self) -> [i64; 7] {
        let mut v = [0; 7];
        v[0] = self.a;
        v[1..].copy_from_slice(&self.b);
        v
    }
}

pub fn intersect(d1: &DivisorClass, d2: &DivisorClass) -> i64 {
    d1.dot(d2)
}

pub fn anticanonical() -> DivisorClass {
    DivisorClass::anticanonical()
}

impl Add for DivisorClass {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let mut b = self.b;
        for (x, y) in b.iter_mut().zip(o.b) {
            *x += y;
        }
        Self::new(self.a + o.a, b)
    }
}

impl Sub for DivisorClass {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl Neg for DivisorClass {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.a, self.b.map(|x| -x))
    }
}

impl Mul<DivisorClass> for i64 {
    type Output = DivisorClass;
    fn mul(self, d: DivisorClass) -> DivisorClass {
        DivisorClass::new(self * d.a, d.b.map(|x| self * x))
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let b: Vec<String> = self.b.iter().map(|x| x.to_string()).collect();
        write!(f, "({}; {})", self.a, b.join(","))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SurfaceMode {
    Smooth,
    Nodal,
}

impl FromStr for SurfaceMode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.trim().to_ascii_lowercase().as_str() {
            "smooth" => Ok(SurfaceMode::Smooth),
            "nodal" => Ok(SurfaceMode::Nodal),
            other => Err(format!("unknown surface mode '{other}' (expected smooth or nodal)")),
        }
    }
}

impl fmt::Display for SurfaceMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SurfaceMode::Smooth => "smooth",
            SurfaceMode::Nodal => "nodal",
        })
    }
}

/// The collinear triple of the nodal model (1-based).
pub const NODAL_TRIPLE: [usize; 3] = [1, 2, 3];

/// Label of a (−1)-class or of `C`, if it is one of the standard ones.
pub fn label_of(d: &DivisorClass) -> Option<String> {
    if *d == DivisorClass::nodal_curve() {
        return Some("C".into());
    }
    for i in 1..=6 {
        if *d == DivisorClass::e(i) {
            return Some(format!("E{i}"));
        }
        if *d == DivisorClass::f(i) {
            return Some(format!("F{i}"));
        }
        for j in i + 1..=6 {
            if *d == DivisorClass::l(i, j) {
                return Some(format!("L{i}{j}"));
            }
        }
    }
    None
}

/// Parses a label such as `E3`, `L45`, `F2` or `C`.
pub fn class_of_label(s: &str) -> Option<DivisorClass> {
    let s = s.trim();
    let digit = |c: char| c.to_digit(10).map(|d| d as usize).filter(|d| (1..=6).contains(d));
    let chars: Vec<char> = s.chars().collect();
    match chars.as_slice() {
        ['C'] => Some(DivisorClass::nodal_curve()),
        ['E', i] => digit(*i).map(DivisorClass::e),
        ['F', i] => digit(*i).map(DivisorClass::f),
        ['L', i, j] => {
            let (i, j) = (digit(*i)?, digit(*j)?);
            (i < j).then(|| DivisorClass::l(i, j))
        }
        _ => None,
    }
}

/// The standard ordering `E₁…E₆, L₁₂…L₅₆, F₁…F₆`.
fn standard_rank(d: &DivisorClass) -> usize {
    let mut idx = 0;
    for i in 1..=6 {
        if *d == DivisorClass::e(i) {
            return idx;
        }
        idx += 1;
    }
    for i in 1..=6 {
        for j in i + 1..=6 {
            if *d == DivisorClass::l(i, j) {
                return idx;
            }
            idx += 1;
        }
    }
    for i in 1..=6 {
        if *d == DivisorClass::f(i) {
            return idx;
        }
        idx += 1;
    }
    usize::MAX
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Curve {
    pub label: String,
    pub class: DivisorClass,
}

/// Negative curves of a model: the 27 lines (smooth), or the 21
/// (−1)-curves followed by `C` (nodal).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CurveSet {
    pub mode: SurfaceMode,
    pub curves: Vec<Curve>,
}

impl CurveSet {
    pub fn len(&self) -> usize {
        self.curves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.curves.is_empty()
    }

    pub fn classes(&self) -> Vec<DivisorClass> {
        self.curves.iter().map(|c| c.class).collect()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.curves.iter().position(|c| c.label == label)
    }

    /// The (−1)-curves only.
    pub fn lines(&self) -> impl Iterator<Item = &Curve> {
        self.curves.iter().filter(|c| c.class.square() == -1)
    }
}

/// All integral `D` with `D² = −1`, `D·(−K) = 1`, by exhaustive search.
///
/// Cauchy–Schwarz gives `(3a − 1)² ≤ 6(a² + 1)`, so `0 ≤ a ≤ 2`, and
/// `bᵢ² ≤ a² + 1` gives `|bᵢ| ≤ 2`.
pub fn minus_one_classes() -> &'static [DivisorClass] {
    static CELL: OnceLock<Vec<DivisorClass>> = OnceLock::new();
    CELL.get_or_init(|| search_classes(0..=2, 2, |d| d.square() == -1 && d.degree() == 1))
}

/// Conic classes: `D² = 0`, `D·(−K) = 2` (27 of them).
pub fn conic_classes() -> &'static [DivisorClass] {
    static CELL: OnceLock<Vec<DivisorClass>> = OnceLock::new();
    CELL.get_or_init(|| search_classes(1..=3, 3, |d| d.square() == 0 && d.degree() == 2))
}

/// Pullbacks of a line under some blow-down to the plane:
/// `H'² = 1`, `H'·(−K) = 3` (72 of them).
pub fn blowdown_classes() -> &'static [DivisorClass] {
    static CELL: OnceLock<Vec<DivisorClass>> = OnceLock::new();
    CELL.get_or_init(|| search_classes(1..=5, 4, |d| d.square() == 1 && d.degree() == 3))
}

fn search_classes(
    a_range: std::ops::RangeInclusive<i64>,
    bmax: i64,
    keep: impl Fn(&DivisorClass) -> bool,
) -> Vec<DivisorClass> {
    let width = (2 * bmax + 1) as usize;
    let mut out = Vec::new();
    for a in a_range {
        for code in 0..width.pow(6) {
            let mut c = code;
            let mut b = [0i64; 6];
            for slot in b.iter_mut() {
                *slot = (c % width) as i64 - bmax;
                c /= width;
            }
            let d = DivisorClass::new(a, b);
            if keep(&d) {
                out.push(d);
            }
        }
    }
    out.sort();
    out
}

/// Nodal ordering: `E₁…E₆`, then `L_{i j}` with `i ≤ 3 < j` by `j`, then
/// `L₄₅, L₄₆, L₅₆`, then `F₁, F₂, F₃`.
fn nodal_rank(d: &DivisorClass) -> (usize, usize, usize) {
    for i in 1..=6 {
        if *d == DivisorClass::e(i) {
            return (0, i, 0);
        }
        if *d == DivisorClass::f(i) {
            return (3, i, 0);
        }
        for j in i + 1..=6 {
            if *d == DivisorClass::l(i, j) {
                return if i <= 3 && j > 3 { (1, j, i) } else { (2, i, j) };
            }
        }
    }
    (4, 0, 0)
}

pub fn enumerate_negative_curves(mode: SurfaceMode) -> CurveSet {
    let mut classes = minus_one_classes().to_vec();
    if mode == SurfaceMode::Nodal {
        let c = DivisorClass::nodal_curve();
        classes.retain(|d| d.dot(&c) >= 0);
    }
    match mode {
        SurfaceMode::Smooth => classes.sort_by_key(standard_rank),
        SurfaceMode::Nodal => classes.sort_by_key(nodal_rank),
    }
    let mut curves: Vec<Curve> = classes
        .into_iter()
        .map(|class| Curve {
            label: label_of(&class).expect("every (−1)-class is a standard line"),
            class,
        })
        .collect();
    if mode == SurfaceMode::Nodal {
        curves.push(Curve {
            label: "C".into(),
            class: DivisorClass::nodal_curve(),
        });
    }
    CurveSet { mode, curves }
}

/// For each curve, the other curves it meets positively, with the
/// intersection number.
pub fn incidence_graph(curves: &CurveSet) -> Vec<Vec<(usize, i64)>> {
    curves
        .curves
        .iter()
        .enumerate()
        .map(|(i, ci)| {
            curves
                .curves
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .filter_map(|(j, cj)| {
                    let k = ci.class.dot(&cj.class);
                    (k > 0).then_some((j, k))
                })
                .collect()
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("{0} and {1} do not meet with intersection number 1 (got {2})")]
    NotIntersecting(DivisorClass, DivisorClass, i64),
    #[error("{0} is not a line")]
    NotALine(DivisorClass),
}

fn is_line(d: &DivisorClass) -> bool {
    d.square() == -1 && d.degree() == 1
}

/// The third line in the plane spanned by two meeting lines.
pub fn third_line(l1: &DivisorClass, l2: &DivisorClass) -> Result<DivisorClass, LatticeError> {
    for l in [l1, l2] {
        if !is_line(l) {
            return Err(LatticeError::NotALine(*l));
        }
    }
    let k = l1.dot(l2);
    if k != 1 {
        return Err(LatticeError::NotIntersecting(*l1, *l2, k));
    }
    Ok(DivisorClass::anticanonical() - *l1 - *l2)
}

/// Index triples `i < j < k` of lines summing to `−K` with pairwise
/// intersection 1.
pub fn tritangent_triples(curves: &CurveSet) -> Vec<[usize; 3]> {
    let cs = &curves.curves;
    let k = DivisorClass::anticanonical();
    let mut out = Vec::new();
    for i in 0..cs.len() {
        for j in i + 1..cs.len() {
            if cs[i].class.dot(&cs[j].class) != 1 {
                continue;
            }
            for l in j + 1..cs.len() {
                let (a, b, c) = (cs[i].class, cs[j].class, cs[l].class);
                if a + b + c == k && a.dot(&c) == 1 && b.dot(&c) == 1 {
                    out.push([i, j, l]);
                }
            }
        }
    }
    out
}

/// Nakai–Moishezon against the lines of the smooth model.
pub fn is_ample(d: &DivisorClass) -> bool {
    is_ample_on(&enumerate_negative_curves(SurfaceMode::Smooth), d)
}

/// `D² > 0` and `D·X > 0` for every curve `X` in `curves`.
pub fn is_ample_on(curves: &CurveSet, d: &DivisorClass) -> bool {
    d.square() > 0 && curves.curves.iter().all(|c| d.dot(&c.class) > 0)
}

/// `D·X ≥ 0` for every curve in `curves`.
pub fn is_nef_on(curves: &CurveSet, d: &DivisorClass) -> bool {
    curves.curves.iter().all(|c| d.dot(&c.class) >= 0)
}

/// Non-negative rational combination of the negative curves of `mode`,
/// decided by exact LP feasibility.
pub fn is_effective(mode: SurfaceMode, d: &DivisorClass) -> bool {
    effective_witness(&enumerate_negative_curves(mode), d).is_some()
}

/// Coefficients `λ ≥ 0` with `Σ λᵢ Cᵢ = D` over the given generators.
pub fn effective_witness(curves: &CurveSet, d: &DivisorClass) -> Option<Vec<Rational>> {
    if d.is_zero() {
        return Some(vec![rat_int(0); curves.len()]);
    }
    let gens = curves.classes();
    let target = d.to_vec();
    let a: Vec<Vec<Rational>> = (0..7)
        .map(|row| gens.iter().map(|g| rat_int(g.to_vec()[row])).collect())
        .collect();
    let b: Vec<Rational> = target.iter().map(|&v| rat_int(v)).collect();
    feasible_point(&a, &b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_products() {
        let e1 = DivisorClass::e(1);
        assert_eq!(e1.dot(&e1), -1);
        assert_eq!(DivisorClass::l(1, 2).dot(&DivisorClass::f(1)), 1);
        assert_eq!(anticanonical().square(), 3);
        assert_eq!(anticanonical().dot(&DivisorClass::nodal_curve()), 0);
        assert_eq!(DivisorClass::nodal_curve().square(), -2);
    }

    #[test]
    fn twenty_seven_lines() {
        let set = enumerate_negative_curves(SurfaceMode::Smooth);
        assert_eq!(set.len(), 27);
        assert!(incidence_graph(&set).iter().all(|n| n.len() == 10));
        assert_eq!(set.curves[0].label, "E1");
        assert_eq!(set.curves[26].label, "F6");
    }

    #[test]
    fn nodal_curves() {
        let set = enumerate_negative_curves(SurfaceMode::Nodal);
        assert_eq!(set.lines().count(), 21);
        let c = set.index_of("C").unwrap();
        let mut adj: Vec<&str> = incidence_graph(&set)[c]
            .iter()
            .map(|(j, _)| set.curves[*j].label.as_str())
            .collect();
        adj.sort();
        assert_eq!(adj, vec!["E1", "E2", "E3", "L45", "L46", "L56"]);
        assert_eq!(DivisorClass::l(1, 2), DivisorClass::nodal_curve() + DivisorClass::e(3));
    }

    #[test]
    fn third_lines_and_triples() {
        let e1 = DivisorClass::e(1);
        assert_eq!(third_line(&e1, &DivisorClass::l(1, 2)), Ok(DivisorClass::f(2)));
        assert_eq!(
            third_line(&DivisorClass::l(1, 2), &DivisorClass::l(3, 4)),
            Ok(DivisorClass::l(5, 6))
        );
        assert!(third_line(&e1, &DivisorClass::e(2)).is_err());
        let set = enumerate_negative_curves(SurfaceMode::Smooth);
        let triples = tritangent_triples(&set);
        assert_eq!(triples.len(), 45);
        for i in 0..27 {
            assert_eq!(triples.iter().filter(|t| t.contains(&i)).count(), 5);
        }
    }

    #[test]
    fn ampleness_and_effectivity() {
        assert!(is_ample(&anticanonical()));
        assert!(!is_ample(&(DivisorClass::e(1) + DivisorClass::l(1, 2))));
        assert!(!is_ample(&DivisorClass::hyperplane()));
        assert!(is_effective(SurfaceMode::Smooth, &anticanonical()));
        assert!(!is_effective(SurfaceMode::Smooth, &-DivisorClass::e(1)));
        let d = DivisorClass::new(2, [3, 0, 0, 0, 0, 0]);
        assert!(!is_effective(SurfaceMode::Smooth, &d));
        assert!(is_effective(SurfaceMode::Nodal, &DivisorClass::l(1, 2)));
    }

    #[test]
    fn class_searches() {
        assert_eq!(minus_one_classes().len(), 27);
        assert_eq!(conic_classes().len(), 27);
        assert_eq!(blowdown_classes().len(), 72);
    }

    #[test]
    fn labels_roundtrip() {
        for c in enumerate_negative_curves(SurfaceMode::Nodal).curves {
            assert_eq!(class_of_label(&c.label), Some(c.class));
        }
        assert_eq!(class_of_label("L21"), None);
    }
}
