//! Exhaustive lattice scans of decompositions `Z = Σ μᵢ Cᵢ + Ω ∈ |−mK|`
//! whose curves `Cᵢ` carry coefficient `μᵢ ≥ m/λ`.
//!
//! Each candidate is refuted by the first applicable numerical test, in
//! this order:
//!
//! 1. degree: `Σ μᵢ Cᵢ·(−K) > 3m`;
//! 2. ampleness (smooth model): the degree budget is used up, so `Ω = 0`
//!    and `Σ μᵢ Cᵢ` would be ample, which Nakai–Moishezon refutes;
//! 3. intersection: a nef class `N` with `N·Ω < 0`;
//! 4. propagation: every negative curve `X ⊄ {Cᵢ}` with `X·R < 0` is
//!    forced into `Ω` with coefficient `⌈X·R / X²⌉`, and the residual `R`
//!    shrinks until a support curve, the degree or a nef class goes
//!    negative;
//! 5. effectivity of the final residual.
//!
//! Candidates passing all five survive.

use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::lattice::{
    blowdown_classes, conic_classes, enumerate_negative_curves, is_ample, is_effective, is_nef_on, label_of,
    tritangent_triples, CurveSet, DivisorClass, SurfaceMode,
};
use crate::lct::{blowup_lct, CurveGerm};
use crate::plane_config::{eckardt_points, validate, EckardtRecord, PlaneError, SixPointConfig};
use crate::scalar::{fmt_rational, rat, serde_rational};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScanError {
    #[error("threshold must satisfy 0 < lambda <= 2/3, got {0}")]
    Threshold(String),
    #[error("level must be at least 2, got {0}")]
    Level(i64),
    #[error("configuration must be in smooth mode")]
    NotSmooth,
    #[error(transparent)]
    Plane(#[from] PlaneError),
}

fn label(d: &DivisorClass) -> String {
    label_of(d).unwrap_or_else(|| d.to_string())
}

fn fmt_terms(terms: &[(String, i64)]) -> String {
    terms
        .iter()
        .map(|(l, k)| if *k == 1 { l.clone() } else { format!("{k}{l}") })
        .collect::<Vec<_>>()
        .join(" + ")
}

/// `Σ μᵢ Cᵢ + Ω` at level `m` and threshold `λ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub m: i64,
    #[serde(serialize_with = "serde_rational::serialize")]
    pub lambda: Rational,
    /// `(label, class, μ)` of the curves in the non-klt locus.
    pub curves: Vec<(String, DivisorClass, i64)>,
    pub omega: DivisorClass,
}

impl Decomposition {
    /// Residual `Ω = −mK − Σ μᵢ Cᵢ`.
    pub fn new(m: i64, lambda: Rational, curves: Vec<(DivisorClass, i64)>) -> Self {
        let sum = curves.iter().fold(DivisorClass::zero(), |acc, (c, mu)| acc + *mu * *c);
        Decomposition {
            m,
            lambda,
            omega: m * DivisorClass::anticanonical() - sum,
            curves: curves.into_iter().map(|(c, mu)| (label(&c), c, mu)).collect(),
        }
    }

    pub fn support_class(&self) -> DivisorClass {
        self.curves
            .iter()
            .fold(DivisorClass::zero(), |acc, (_, c, mu)| acc + *mu * *c)
    }

    pub fn curves_degree(&self) -> i64 {
        self.curves.iter().map(|(_, c, mu)| mu * c.degree()).sum()
    }

    /// `Σ μᵢ Cᵢ + Ω = −mK`.
    pub fn is_lattice_identity(&self) -> bool {
        self.support_class() + self.omega == self.m * DivisorClass::anticanonical()
    }
}

impl fmt::Display for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t: Vec<(String, i64)> = self.curves.iter().map(|(l, _, mu)| (l.clone(), *mu)).collect();
        write!(f, "{} + Ω{}", fmt_terms(&t), self.omega)
    }
}

/// `Σ μᵢ Cᵢ·(−K) + Ω·(−K) = 3m` with `Ω·(−K) ≥ 0`.
pub fn degree_budget_check(d: &Decomposition) -> bool {
    let omega_deg = d.omega.degree();
    omega_deg >= 0 && d.curves_degree() + omega_deg == 3 * d.m
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum Contradiction {
    DegreeOverflow {
        degree: i64,
        budget: i64,
    },
    /// `Ω·(−K) = 0` forces `Ω = 0`, but `class` is not ample.
    NotAmple {
        class: DivisorClass,
    },
    /// Nef `test_class` has negative product `value` with `Ω`.
    IntersectionViolation {
        test_class: DivisorClass,
        value: i64,
    },
    /// Components forced into `Ω` overrun the residual.
    NeighborCount {
        forced: Vec<(String, i64)>,
        residual: DivisorClass,
        failure: PropagationFailure,
    },
    ResidualNotEffective {
        residual: DivisorClass,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PropagationFailure {
    /// A curve of the non-klt locus would have to lie in `Ω`.
    SupportCurve {
        curve: String,
        product: i64,
    },
    NegativeDegree {
        degree: i64,
    },
    NefClass {
        test_class: DivisorClass,
        value: i64,
    },
}

impl fmt::Display for Contradiction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Contradiction::DegreeOverflow { degree, budget } => {
                write!(f, "degree overflow ({degree} > {budget})")
            }
            Contradiction::NotAmple { class } => write!(f, "not ample {class}"),
            Contradiction::IntersectionViolation { test_class, value } => {
                write!(f, "intersection violation {test_class}·Ω = {value}")
            }
            Contradiction::NeighborCount { forced, failure, .. } => {
                let why = match failure {
                    PropagationFailure::SupportCurve { curve, product } => {
                        format!("{curve}·R = {product}")
                    }
                    PropagationFailure::NegativeDegree { degree } => format!("deg R = {degree}"),
                    PropagationFailure::NefClass { test_class, value } => {
                        format!("{test_class}·R = {value}")
                    }
                };
                write!(f, "neighbor count: {} forced, {why}", fmt_terms(forced))
            }
            Contradiction::ResidualNotEffective { residual } => {
                write!(f, "residual {residual} not effective")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Outcome {
    Contradicted(Contradiction),
    Survives {
        /// Components forced into `Ω`, with lower-bound coefficients.
        forced: Vec<(String, i64)>,
        residual: DivisorClass,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Candidate {
    /// Case number of the enumeration (see [`smooth_scan`], [`nodal_scan`]).
    pub case: u8,
    pub decomposition: Decomposition,
    pub outcome: Outcome,
}

impl Candidate {
    pub fn survives(&self) -> bool {
        matches!(self.outcome, Outcome::Survives { .. })
    }

    /// `Z` with `Ω` written through its forced components, e.g.
    /// `6C + 2(E1+E2+E3+L45+L46+L56)`.
    pub fn z_string(&self) -> String {
        let t: Vec<(String, i64)> = self
            .decomposition
            .curves
            .iter()
            .map(|(l, _, mu)| (l.clone(), *mu))
            .collect();
        let mut s = fmt_terms(&t);
        if let Outcome::Survives { forced, residual } = &self.outcome {
            let mut groups: Vec<(i64, Vec<&str>)> = Vec::new();
            for (l, k) in forced {
                match groups.iter_mut().find(|(g, _)| g == k) {
                    Some((_, v)) => v.push(l),
                    None => groups.push((*k, vec![l])),
                }
            }
            for (k, ls) in groups {
                let inner = ls.join("+");
                if k == 1 {
                    s.push_str(&format!(" + {inner}"));
                } else {
                    s.push_str(&format!(" + {k}({inner})"));
                }
            }
            if !residual.is_zero() {
                s.push_str(&format!(" + R{residual}"));
            }
        }
        s
    }
}

impl fmt::Display for Candidate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.outcome {
            Outcome::Contradicted(c) => write!(f, "case {}: {} : {c}", self.case, self.z_string()),
            Outcome::Survives { .. } => write!(f, "case {}: survivor: {}", self.case, self.z_string()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CaseVerdict {
    pub scan: String,
    pub mode: SurfaceMode,
    pub m: i64,
    #[serde(serialize_with = "serde_rational::serialize")]
    pub lambda: Rational,
    pub candidates: Vec<Candidate>,
}

impl CaseVerdict {
    pub fn survivors(&self) -> Vec<&Candidate> {
        self.candidates.iter().filter(|c| c.survives()).collect()
    }

    pub fn summary(&self) -> String {
        let n = self.survivors().len();
        format!(
            "{} m={} lambda={}: {} candidates, {} survivor{}",
            self.scan,
            self.m,
            fmt_rational(&self.lambda),
            self.candidates.len(),
            n,
            if n == 1 { "" } else { "s" }
        )
    }
}

/// Nef classes used as intersection tests: `−K` and the nef blow-down
/// classes of the model.
fn nef_tests(curves: &CurveSet) -> Vec<DivisorClass> {
    std::iter::once(DivisorClass::anticanonical())
        .chain(blowdown_classes().iter().copied().filter(|h| is_nef_on(curves, h)))
        .collect()
}

struct Scanner {
    mode: SurfaceMode,
    curves: CurveSet,
    nef: Vec<DivisorClass>,
}

fn ceil_div(a: i64, b: i64) -> i64 {
    debug_assert!(b > 0);
    a.div_euclid(b) + i64::from(a.rem_euclid(b) != 0)
}

impl Scanner {
    fn new(mode: SurfaceMode) -> Self {
        let curves = enumerate_negative_curves(mode);
        let nef = nef_tests(&curves);
        Scanner { mode, curves, nef }
    }

    fn propagate(&self, d: &Decomposition) -> Result<(Vec<(String, i64)>, DivisorClass), Contradiction> {
        let support: Vec<DivisorClass> = d.curves.iter().map(|(_, c, _)| *c).collect();
        let mut forced: Vec<(usize, i64)> = Vec::new();
        let mut r = d.omega;
        let fail = |forced: &[(usize, i64)], r: DivisorClass, failure| {
            let mut f: Vec<(String, i64)> = forced
                .iter()
                .map(|(i, k)| (self.curves.curves[*i].label.clone(), *k))
                .collect();
            f.sort_by_key(|(l, _)| self.curves.index_of(l));
            Contradiction::NeighborCount {
                forced: f,
                residual: r,
                failure,
            }
        };
        loop {
            let mut changed = false;
            for (i, x) in self.curves.curves.iter().enumerate() {
                let v = x.class.dot(&r);
                if v >= 0 {
                    continue;
                }
                if support.contains(&x.class) {
                    return Err(fail(
                        &forced,
                        r,
                        PropagationFailure::SupportCurve {
                            curve: x.label.clone(),
                            product: v,
                        },
                    ));
                }
                let k = ceil_div(-v, -x.class.square());
                r = r - k * x.class;
                match forced.iter_mut().find(|(j, _)| *j == i) {
                    Some((_, kk)) => *kk += k,
                    None => forced.push((i, k)),
                }
                changed = true;
            }
            if r.degree() < 0 {
                return Err(fail(
                    &forced,
                    r,
                    PropagationFailure::NegativeDegree { degree: r.degree() },
                ));
            }
            if let Some(n) = self.nef.iter().find(|n| n.dot(&r) < 0) {
                return Err(fail(
                    &forced,
                    r,
                    PropagationFailure::NefClass {
                        test_class: *n,
                        value: n.dot(&r),
                    },
                ));
            }
            if !changed {
                break;
            }
        }
        forced.sort();
        let forced = forced
            .into_iter()
            .map(|(i, k)| (self.curves.curves[i].label.clone(), k))
            .collect();
        Ok((forced, r))
    }

    fn evaluate(&self, d: &Decomposition) -> Outcome {
        let deg = d.curves_degree();
        if deg > 3 * d.m {
            return Outcome::Contradicted(Contradiction::DegreeOverflow {
                degree: deg,
                budget: 3 * d.m,
            });
        }
        if self.mode == SurfaceMode::Smooth && deg == 3 * d.m {
            let class = d.support_class();
            if !is_ample(&class) {
                return Outcome::Contradicted(Contradiction::NotAmple { class });
            }
        }
        if let Some(n) = self.nef.iter().find(|n| n.dot(&d.omega) < 0) {
            return Outcome::Contradicted(Contradiction::IntersectionViolation {
                test_class: *n,
                value: n.dot(&d.omega),
            });
        }
        let (forced, residual) = match self.propagate(d) {
            Ok(v) => v,
            Err(c) => return Outcome::Contradicted(c),
        };
        if !is_effective(self.mode, &residual) {
            return Outcome::Contradicted(Contradiction::ResidualNotEffective { residual });
        }
        Outcome::Survives { forced, residual }
    }
}

/// Refutes or accepts one decomposition on the given model.
pub fn evaluate(mode: SurfaceMode, d: &Decomposition) -> Outcome {
    Scanner::new(mode).evaluate(d)
}

/// Independently re-verifies a recorded contradiction.
pub fn recheck(mode: SurfaceMode, d: &Decomposition, c: &Contradiction) -> bool {
    let curves = enumerate_negative_curves(mode);
    match c {
        Contradiction::DegreeOverflow { degree, budget } => {
            *degree == d.curves_degree() && *budget == 3 * d.m && degree > budget
        }
        Contradiction::NotAmple { class } => {
            *class == d.support_class() && d.curves_degree() == 3 * d.m && !is_ample(class)
        }
        Contradiction::IntersectionViolation { test_class, value } => {
            is_nef_on(&curves, test_class) && test_class.dot(&d.omega) == *value && *value < 0
        }
        Contradiction::NeighborCount {
            forced,
            residual,
            failure,
        } => {
            let sum = forced.iter().fold(DivisorClass::zero(), |acc, (l, k)| {
                acc + *k * curves.curves[curves.index_of(l).expect("known label")].class
            });
            let consistent = d.omega - sum == *residual;
            let fails = match failure {
                PropagationFailure::SupportCurve { curve, product } => {
                    let c = curves.curves[curves.index_of(curve).expect("known label")].class;
                    c.dot(residual) == *product && *product < 0
                }
                PropagationFailure::NegativeDegree { degree } => residual.degree() == *degree && *degree < 0,
                PropagationFailure::NefClass { test_class, value } => {
                    is_nef_on(&curves, test_class) && test_class.dot(residual) == *value && *value < 0
                }
            };
            consistent && fails
        }
        Contradiction::ResidualNotEffective { residual } => !is_effective(mode, residual),
    }
}

fn min_coefficient(m: i64, lambda: &Rational) -> i64 {
    let q = Rational::from_integer(m.into()) / lambda;
    q.ceil().to_integer().try_into().expect("small level")
}

/// Negative curves and the nef conic classes of the model.
fn pool(curves: &CurveSet) -> Vec<DivisorClass> {
    let mut out = curves.classes();
    out.extend(conic_classes().iter().copied().filter(|d| is_nef_on(curves, d)));
    out
}

fn enumerate(scanner: &Scanner, m: i64, lambda: &Rational, case_of: impl Fn(&[DivisorClass]) -> u8) -> Vec<Candidate> {
    let pool = pool(&scanner.curves);
    let lo = min_coefficient(m, lambda);
    let budget = 3 * m;
    let mut supports: Vec<Vec<usize>> = Vec::new();
    fn rec(
        pool: &[DivisorClass],
        start: usize,
        cur: &mut Vec<usize>,
        used: i64,
        lo: i64,
        budget: i64,
        out: &mut Vec<Vec<usize>>,
    ) {
        for i in start..pool.len() {
            let next = used + lo * pool[i].degree();
            if next > budget {
                continue;
            }
            cur.push(i);
            out.push(cur.clone());
            rec(pool, i + 1, cur, next, lo, budget, out);
            cur.pop();
        }
    }
    rec(&pool, 0, &mut Vec::new(), 0, lo, budget, &mut supports);
    let mut out = Vec::new();
    for s in supports {
        let classes: Vec<DivisorClass> = s.iter().map(|&i| pool[i]).collect();
        let case = case_of(&classes);
        // coefficient vectors within the degree budget; degree-0 curves are
        // bounded by 3m through the hyperplane class
        let mut mus = vec![lo; classes.len()];
        loop {
            let deg: i64 = classes.iter().zip(&mus).map(|(c, mu)| mu * c.degree()).sum();
            if deg <= budget {
                let d = Decomposition::new(
                    m,
                    lambda.clone(),
                    classes.iter().copied().zip(mus.iter().copied()).collect(),
                );
                let outcome = scanner.evaluate(&d);
                out.push(Candidate {
                    case,
                    decomposition: d,
                    outcome,
                });
            }
            if !advance(&mut mus, lo, budget) {
                break;
            }
        }
    }
    out
}

/// Odometer step over `[lo, hi]^n`; false after the last vector.
fn advance(v: &mut [i64], lo: i64, hi: i64) -> bool {
    for x in v.iter_mut() {
        if *x < hi {
            *x += 1;
            return true;
        }
        *x = lo;
    }
    false
}

/// Smooth cubic surface. Case 1: two lines; case 2: one conic class
/// (`D² = 0`, `D·(−K) = 2`); case 3: one line.
pub fn smooth_scan(m: i64, lambda: &Rational) -> Result<CaseVerdict, ScanError> {
    if *lambda <= Rational::zero() || *lambda > rat(2, 3) {
        return Err(ScanError::Threshold(fmt_rational(lambda)));
    }
    if m < 2 {
        return Err(ScanError::Level(m));
    }
    let scanner = Scanner::new(SurfaceMode::Smooth);
    let candidates = enumerate(&scanner, m, lambda, |cs| match cs {
        [a, _] if a.square() == -1 => 1,
        [a] if a.square() == 0 => 2,
        [_] => 3,
        _ => 0,
    });
    Ok(CaseVerdict {
        scan: "smooth".into(),
        mode: SurfaceMode::Smooth,
        m,
        lambda: lambda.clone(),
        candidates,
    })
}

/// One-nodal cubic surface at `λ = 2/3`; case `k + 1` collects supports of
/// total degree `k`.
pub fn nodal_scan(m: i64) -> Result<CaseVerdict, ScanError> {
    if m < 2 {
        return Err(ScanError::Level(m));
    }
    let lambda = rat(2, 3);
    let scanner = Scanner::new(SurfaceMode::Nodal);
    let candidates = enumerate(&scanner, m, &lambda, |cs| {
        let deg: i64 = cs.iter().map(DivisorClass::degree).sum();
        (deg + 1) as u8
    });
    Ok(CaseVerdict {
        scan: "nodal".into(),
        mode: SurfaceMode::Nodal,
        m,
        lambda,
        candidates,
    })
}

/// The decomposition `(3m/2)C + (m/2)(E1+E2+E3+L45+L46+L56)` for even `m`.
pub fn nodal_expected(m: i64) -> Option<Decomposition> {
    if m % 2 != 0 {
        return None;
    }
    let lines = [
        DivisorClass::e(1),
        DivisorClass::e(2),
        DivisorClass::e(3),
        DivisorClass::l(4, 5),
        DivisorClass::l(4, 6),
        DivisorClass::l(5, 6),
    ];
    let d = Decomposition::new(m, rat(2, 3), vec![(DivisorClass::nodal_curve(), 3 * m / 2)]);
    debug_assert_eq!(
        d.omega,
        lines.iter().fold(DivisorClass::zero(), |acc, l| acc + (m / 2) * *l)
    );
    Some(d)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Alpha1Report {
    #[serde(serialize_with = "serde_rational::serialize")]
    pub value: Rational,
    /// `false` when the value is only an upper bound.
    pub exact: bool,
    pub witness: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eckardt: Option<EckardtRecord>,
}

/// The first anticanonical threshold from tritangent sections: three
/// concurrent lines (`xy(x + y)`) at an Eckardt point, otherwise a
/// triangle of lines (`xy`) as an upper bound.
pub fn alpha1_report(config: &SixPointConfig) -> Result<Alpha1Report, ScanError> {
    if config.mode != SurfaceMode::Smooth {
        return Err(ScanError::NotSmooth);
    }
    let report = validate(config);
    if !report.is_valid() {
        return Err(PlaneError::InvalidConfig(report).into());
    }
    let germ = |s: &str| {
        blowup_lct(&CurveGerm::parse(s).expect("fixed germ"))
            .expect("resolves")
            .value
    };
    if let Some(rec) = eckardt_points(config)?.into_iter().next() {
        return Ok(Alpha1Report {
            value: germ("x*y*(x + y)"),
            exact: true,
            witness: rec.triple.to_vec(),
            eckardt: Some(rec),
        });
    }
    let curves = enumerate_negative_curves(SurfaceMode::Smooth);
    let t = tritangent_triples(&curves)[0];
    let value = germ("x*y");
    debug_assert!(value == Rational::one());
    Ok(Alpha1Report {
        value,
        exact: false,
        witness: t.iter().map(|&i| curves.curves[i].label.clone()).collect(),
        eckardt: None,
    })
}
