//! Exact linear constraint systems solved by Fourier–Motzkin elimination.
//!
//! A system is a list of constraints `Σ aᵢ xᵢ REL c` with `REL` one of
//! `<=`, `<`, `=`. [`solve`] decides rational feasibility and computes, for
//! each variable, the exact projection of the feasible set onto that
//! variable, keeping track of which bounds are attained.

pub mod encodings;
pub mod simplex;
pub mod text;

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::scalar::{Integrality, OrderedField};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Relation {
    Le,
    Lt,
    Eq,
}

/// `Σ coeffs[v]·v  REL  constant`.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearConstraint<T> {
    pub coeffs: BTreeMap<String, T>,
    pub relation: Relation,
    pub constant: T,
}

/// Relation as written by a user, before normalization to `<=, <, =`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cmp {
    Le,
    Lt,
    Eq,
    Ge,
    Gt,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Variable {
    pub name: String,
    pub integral: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConstraintSystem<T> {
    vars: Vec<Variable>,
    constraints: Vec<LinearConstraint<T>>,
}

impl<T: OrderedField> Default for ConstraintSystem<T> {
    fn default() -> Self {
        Self::new()
    }
}

impl<T: OrderedField> ConstraintSystem<T> {
    pub fn new() -> Self {
        ConstraintSystem {
            vars: Vec::new(),
            constraints: Vec::new(),
        }
    }

    /// Declares a variable (idempotent; a later `integral = true` sticks).
    pub fn declare(&mut self, name: &str, integral: bool) -> &mut Self {
        match self.vars.iter_mut().find(|v| v.name == name) {
            Some(v) => v.integral |= integral,
            None => self.vars.push(Variable {
                name: name.to_string(),
                integral,
            }),
        }
        self
    }

    pub fn vars(&self) -> &[Variable] {
        &self.vars
    }

    pub fn constraints(&self) -> &[LinearConstraint<T>] {
        &self.constraints
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v.name == name)
    }

    /// Adds `Σ terms  cmp  rhs`; undeclared variables are declared
    /// non-integral.
    pub fn add(&mut self, terms: &[(&str, T)], cmp: Cmp, rhs: T) -> &mut Self {
        let mut coeffs = BTreeMap::new();
        for (name, c) in terms {
            self.declare(name, false);
            let e: &mut T = coeffs.entry(name.to_string()).or_insert_with(T::zero);
            *e = e.clone() + c.clone();
        }
        coeffs.retain(|_, v: &mut T| !v.is_zero());
        let (relation, flip) = match cmp {
            Cmp::Le => (Relation::Le, false),
            Cmp::Lt => (Relation::Lt, false),
            Cmp::Eq => (Relation::Eq, false),
            Cmp::Ge => (Relation::Le, true),
            Cmp::Gt => (Relation::Lt, true),
        };
        let (coeffs, constant) = if flip {
            (coeffs.into_iter().map(|(k, v)| (k, -v)).collect(), -rhs)
        } else {
            (coeffs, rhs)
        };
        self.constraints.push(LinearConstraint {
            coeffs,
            relation,
            constant,
        });
        self
    }

    pub fn push(&mut self, c: LinearConstraint<T>) -> &mut Self {
        for name in c.coeffs.keys() {
            self.declare(name, false);
        }
        self.constraints.push(c);
        self
    }

    /// True iff `point` (indexed like [`vars`](Self::vars)) satisfies every
    /// constraint.
    pub fn satisfied_by(&self, point: &[T]) -> bool {
        self.constraints.iter().all(|c| {
            let lhs = c.coeffs.iter().fold(T::zero(), |acc, (name, a)| {
                acc + a.clone() * point[self.index_of(name).expect("declared")].clone()
            });
            match c.relation {
                Relation::Le => lhs <= c.constant,
                Relation::Lt => lhs < c.constant,
                Relation::Eq => lhs == c.constant,
            }
        })
    }
}

/// One side of a projected interval.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Bound<T> {
    pub value: T,
    /// `true` when the bound is a strict inf/sup (not attained).
    pub strict: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VarBounds<T> {
    pub name: String,
    pub lower: Option<Bound<T>>,
    pub upper: Option<Bound<T>>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Forced<T> {
    pub name: String,
    pub value: T,
    /// `Some(ok)` for variables flagged integral; `None` otherwise.
    pub integral: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolveReport<T> {
    pub feasible: bool,
    pub bounds: Vec<VarBounds<T>>,
    pub forced: Vec<Forced<T>>,
}

impl<T> SolveReport<T> {
    /// Forced values of integral variables that are not integers.
    pub fn integrality_failures(&self) -> impl Iterator<Item = &Forced<T>> {
        self.forced.iter().filter(|f| f.integral == Some(false))
    }

    /// Infeasible over the rationals, or a forced integral variable takes
    /// a non-integer value.
    pub fn contradiction(&self) -> bool {
        !self.feasible || self.integrality_failures().next().is_some()
    }

    pub fn forced_value(&self, name: &str) -> Option<&T> {
        self.forced.iter().find(|f| f.name == name).map(|f| &f.value)
    }

    pub fn bounds_of(&self, name: &str) -> Option<&VarBounds<T>> {
        self.bounds.iter().find(|b| b.name == name)
    }
}

/// Inequality row `a·x <= rhs` (or `<` when strict).
#[derive(Debug, Clone, PartialEq)]
struct Row<T> {
    a: Vec<T>,
    rhs: T,
    strict: bool,
}

impl<T: OrderedField> Row<T> {
    fn is_trivial(&self) -> bool {
        self.a.iter().all(|v| v.is_zero())
    }

    fn trivially_true(&self) -> bool {
        if self.strict {
            T::zero() < self.rhs
        } else {
            T::zero() <= self.rhs
        }
    }

    /// Scales so the first nonzero coefficient has absolute value 1.
    fn normalized(mut self) -> Self {
        if let Some(p) = self.a.iter().find(|v| !v.is_zero()).cloned() {
            let s = p.abs();
            for v in self.a.iter_mut() {
                *v = v.clone() / s.clone();
            }
            self.rhs = self.rhs / s;
        }
        self
    }
}

/// Equation `a·x = rhs`.
#[derive(Debug, Clone)]
struct Equation<T> {
    a: Vec<T>,
    rhs: T,
}

struct Work<T> {
    rows: Vec<Row<T>>,
    infeasible: bool,
}

impl<T: OrderedField> Work<T> {
    fn insert(&mut self, row: Row<T>) {
        if row.is_trivial() {
            if !row.trivially_true() {
                self.infeasible = true;
            }
            return;
        }
        let row = row.normalized();
        // keep only the tightest row per coefficient direction
        if let Some(existing) = self.rows.iter_mut().find(|r| r.a == row.a) {
            let tighter = row.rhs < existing.rhs || (row.rhs == existing.rhs && row.strict);
            if tighter {
                *existing = row;
            }
            return;
        }
        self.rows.push(row);
    }

    fn eliminate(&mut self, j: usize) {
        let rows = std::mem::take(&mut self.rows);
        let (mut pos, mut neg) = (Vec::new(), Vec::new());
        for r in rows {
            if r.a[j] > T::zero() {
                pos.push(r);
            } else if r.a[j] < T::zero() {
                neg.push(r);
            } else {
                self.rows.push(r);
            }
        }
        for p in &pos {
            for q in &neg {
                let sp = p.a[j].clone();
                let sq = -q.a[j].clone();
                let a: Vec<T> =
                    p.a.iter()
                        .zip(&q.a)
                        .map(|(x, y)| x.clone() / sp.clone() + y.clone() / sq.clone())
                        .collect();
                let rhs = p.rhs.clone() / sp.clone() + q.rhs.clone() / sq.clone();
                let mut row = Row {
                    a,
                    rhs,
                    strict: p.strict || q.strict,
                };
                row.a[j] = T::zero();
                self.insert(row);
            }
        }
    }
}

fn build<T: OrderedField>(sys: &ConstraintSystem<T>) -> (Vec<Row<T>>, Vec<Equation<T>>) {
    let n = sys.vars.len();
    let mut rows = Vec::new();
    let mut eqs = Vec::new();
    for c in &sys.constraints {
        let mut a = vec![T::zero(); n];
        for (name, v) in &c.coeffs {
            let i = sys.index_of(name).expect("declared");
            a[i] = a[i].clone() + v.clone();
        }
        match c.relation {
            Relation::Le => rows.push(Row {
                a,
                rhs: c.constant.clone(),
                strict: false,
            }),
            Relation::Lt => rows.push(Row {
                a,
                rhs: c.constant.clone(),
                strict: true,
            }),
            Relation::Eq => eqs.push(Equation {
                a,
                rhs: c.constant.clone(),
            }),
        }
    }
    (rows, eqs)
}

/// Substitutes equations away, avoiding `keep` as a pivot when possible;
/// equations that only involve `keep` become two inequalities.
fn substitute_equations<T: OrderedField>(rows: Vec<Row<T>>, mut eqs: Vec<Equation<T>>, keep: Option<usize>) -> Work<T> {
    let mut work = Work {
        rows: Vec::new(),
        infeasible: false,
    };
    let mut rows = rows;
    while let Some(eq) = eqs.pop() {
        let pivot =
            eq.a.iter()
                .enumerate()
                .find(|(i, v)| !v.is_zero() && Some(*i) != keep)
                .map(|(i, _)| i);
        let Some(p) = pivot else {
            // constant equation, or an equation in `keep` alone
            work.insert(Row {
                a: eq.a.clone(),
                rhs: eq.rhs.clone(),
                strict: false,
            });
            work.insert(Row {
                a: eq.a.iter().map(|v| -v.clone()).collect(),
                rhs: -eq.rhs.clone(),
                strict: false,
            });
            continue;
        };
        let ap = eq.a[p].clone();
        let apply = |a: &mut Vec<T>, rhs: &mut T| {
            let f = a[p].clone() / ap.clone();
            if f.is_zero() {
                return;
            }
            for (v, e) in a.iter_mut().zip(&eq.a) {
                *v = v.clone() - f.clone() * e.clone();
            }
            *rhs = rhs.clone() - f * eq.rhs.clone();
            a[p] = T::zero();
        };
        for r in rows.iter_mut() {
            apply(&mut r.a, &mut r.rhs);
        }
        for e in eqs.iter_mut() {
            apply(&mut e.a, &mut e.rhs);
        }
    }
    for r in rows.drain(..) {
        work.insert(r);
    }
    work
}

fn elimination_order(n: usize, order: Option<&[usize]>) -> Vec<usize> {
    match order {
        Some(o) => o.to_vec(),
        None => (0..n).collect(),
    }
}

/// Projects onto variable `v` and returns its bounds, or `None` if the
/// system is infeasible.
fn project<T: OrderedField>(
    sys: &ConstraintSystem<T>,
    v: usize,
    order: Option<&[usize]>,
) -> Option<(Option<Bound<T>>, Option<Bound<T>>)> {
    let (rows, eqs) = build(sys);
    let mut work = substitute_equations(rows, eqs, Some(v));
    for j in elimination_order(sys.vars.len(), order) {
        if j != v {
            work.eliminate(j);
        }
        if work.infeasible {
            return None;
        }
    }
    let mut lower: Option<Bound<T>> = None;
    let mut upper: Option<Bound<T>> = None;
    for r in &work.rows {
        let c = r.a[v].clone();
        let val = r.rhs.clone() / c.clone();
        if c > T::zero() {
            let tighter = match &upper {
                None => true,
                Some(b) => val < b.value || (val == b.value && r.strict),
            };
            if tighter {
                upper = Some(Bound {
                    value: val,
                    strict: r.strict,
                });
            }
        } else {
            let tighter = match &lower {
                None => true,
                Some(b) => val > b.value || (val == b.value && r.strict),
            };
            if tighter {
                lower = Some(Bound {
                    value: val,
                    strict: r.strict,
                });
            }
        }
    }
    if let (Some(lo), Some(hi)) = (&lower, &upper) {
        if lo.value > hi.value || (lo.value == hi.value && (lo.strict || hi.strict)) {
            return None;
        }
    }
    Some((lower, upper))
}

/// Rational feasibility by eliminating every variable.
pub fn is_feasible<T: OrderedField>(sys: &ConstraintSystem<T>) -> bool {
    is_feasible_with_order(sys, None)
}

pub fn is_feasible_with_order<T: OrderedField>(sys: &ConstraintSystem<T>, order: Option<&[usize]>) -> bool {
    let (rows, eqs) = build(sys);
    let mut work = substitute_equations(rows, eqs, None);
    for j in elimination_order(sys.vars.len(), order) {
        work.eliminate(j);
        if work.infeasible {
            return false;
        }
    }
    !work.infeasible
}

/// Feasibility, per-variable bounds and forced values.
pub fn solve<T: OrderedField + Integrality>(sys: &ConstraintSystem<T>) -> SolveReport<T> {
    solve_with_order(sys, None)
}

/// As [`solve`], eliminating variables in the given index order.
pub fn solve_with_order<T: OrderedField + Integrality>(
    sys: &ConstraintSystem<T>,
    order: Option<&[usize]>,
) -> SolveReport<T> {
    if !is_feasible_with_order(sys, order) {
        return SolveReport {
            feasible: false,
            bounds: Vec::new(),
            forced: Vec::new(),
        };
    }
    let mut bounds = Vec::new();
    let mut forced = Vec::new();
    for (i, var) in sys.vars.iter().enumerate() {
        let (lower, upper) = project(sys, i, order).expect("feasible system projects");
        if let (Some(lo), Some(hi)) = (&lower, &upper) {
            if lo.value == hi.value && !lo.strict && !hi.strict {
                forced.push(Forced {
                    name: var.name.clone(),
                    value: lo.value.clone(),
                    integral: var.integral.then(|| lo.value.is_integral()),
                });
            }
        }
        bounds.push(VarBounds {
            name: var.name.clone(),
            lower,
            upper,
        });
    }
    SolveReport {
        feasible: true,
        bounds,
        forced,
    }
}

impl<T: fmt::Display> fmt::Display for Bound<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, rat_int};
    use crate::Rational;

    fn r(v: i64) -> Rational {
        rat_int(v)
    }

    #[test]
    fn forced_point() {
        let mut s = ConstraintSystem::new();
        s.add(&[("x", r(1))], Cmp::Le, r(1));
        s.add(&[("x", r(1))], Cmp::Ge, r(1));
        let rep = solve(&s);
        assert!(rep.feasible);
        assert_eq!(rep.forced_value("x"), Some(&r(1)));
    }

    #[test]
    fn strict_infeasible() {
        let mut s = ConstraintSystem::new();
        s.add(&[("x", r(1))], Cmp::Lt, r(1));
        s.add(&[("x", r(1))], Cmp::Gt, r(1));
        assert!(!solve(&s).feasible);
    }

    #[test]
    fn equations_force_both() {
        let mut s = ConstraintSystem::new();
        s.add(&[("x", r(1)), ("y", r(1))], Cmp::Eq, r(2));
        s.add(&[("x", r(1)), ("y", r(-1))], Cmp::Eq, r(0));
        let rep = solve(&s);
        assert_eq!(rep.forced_value("x"), Some(&r(1)));
        assert_eq!(rep.forced_value("y"), Some(&r(1)));
    }

    #[test]
    fn strictness_propagates() {
        // x < y, y <= 1  =>  sup x = 1, not attained
        let mut s = ConstraintSystem::new();
        s.add(&[("x", r(1)), ("y", r(-1))], Cmp::Lt, r(0));
        s.add(&[("y", r(1))], Cmp::Le, r(1));
        let rep = solve(&s);
        let b = rep.bounds_of("x").unwrap();
        assert_eq!(
            b.upper,
            Some(Bound {
                value: r(1),
                strict: true
            })
        );
        assert_eq!(b.lower, None);
    }

    #[test]
    fn integrality_verdict() {
        let mut s = ConstraintSystem::new();
        s.declare("x", true);
        s.add(&[("x", r(2))], Cmp::Eq, r(5));
        let rep = solve(&s);
        assert_eq!(rep.forced_value("x"), Some(&rat(5, 2)));
        assert!(rep.contradiction());
    }
}
