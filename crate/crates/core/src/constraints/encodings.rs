//! Inequality systems for the multiplicity case analysis at a point `p` of
//! a cubic surface where `Z(s) ∈ |-mK|` has a non-log-terminal point.
//!
//! Variables are multiplicities and curve coefficients; all are integral.
//! The blow-up constraints come from the non-log-terminal point `Q` on the
//! exceptional curve over `p` and are supplied as axioms.

use serde::Serialize;

use super::{Cmp, ConstraintSystem};
use crate::scalar::OrderedField;

/// Whether to include the constraints produced by blowing up `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Stage {
    BeforeBlowup,
    Full,
}

/// Position of the non-log-terminal point `Q` in the nodal analysis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum NodalBranch {
    /// `Q` on the strict transform of the (−2)-curve.
    QOnC,
    /// `Q` on the strict transform of the (−1)-curve.
    QOnL,
    /// `Q` on neither.
    QGeneric,
}

fn k<T: OrderedField>(v: i64) -> T {
    T::from_i64(v)
}

fn half<T: OrderedField>(v: i64) -> T {
    T::from_i64(v) / T::from_i64(2)
}

/// Line `L₁` through `p` with residual conic `D`, `Z(s) = μL₁ + Ω`.
///
/// Variables: `mu`, `multOmega`, `multS`, `multQ`.
pub fn encode_case2<T: OrderedField>(m: i64, stage: Stage) -> ConstraintSystem<T> {
    let mut s = ConstraintSystem::new();
    for v in ["mu", "multOmega", "multS", "multQ"] {
        s.declare(v, true);
    }
    let one = T::one;
    s.add(&[("multS", one())], Cmp::Gt, k::<T>(3 * m) / k(2));
    s.add(
        &[("multOmega", one()), ("mu", one()), ("multS", -one())],
        Cmp::Eq,
        T::zero(),
    );
    // L₁·Z(s) = m ≥ −μ + mult_p Ω
    s.add(&[("mu", -one()), ("multOmega", one())], Cmp::Le, k(m));
    // D·Z(s) = 2m ≥ 2μ + mult_p Ω
    s.add(&[("mu", k(2)), ("multOmega", one())], Cmp::Le, k(2 * m));
    if stage == Stage::Full {
        s.add(&[("multQ", one()), ("multS", one())], Cmp::Ge, k(3 * m));
        s.add(&[("multQ", one()), ("multOmega", -one())], Cmp::Le, T::zero());
        s.add(&[("multQ", one())], Cmp::Ge, T::zero());
    }
    s
}

/// Two lines `L₁, L₂` through `p`, third coplanar line `L₃ ∌ p`,
/// `Z(s) = μL₁ + νL₂ + D`; `d = mult_p D` and `eᵢ = Lᵢ·D`.
///
/// Variables: `mu`, `nu`, `d`, `e1`, `e2`, `e3`, `multS`, `multQ`.
pub fn encode_case3<T: OrderedField>(m: i64, stage: Stage) -> ConstraintSystem<T> {
    let mut s = ConstraintSystem::new();
    for v in ["mu", "nu", "d", "e1", "e2", "e3", "multS", "multQ"] {
        s.declare(v, true);
    }
    let one = T::one;
    s.add(&[("mu", -one()), ("nu", one()), ("e1", one())], Cmp::Eq, k(m));
    s.add(&[("e1", one()), ("d", -one())], Cmp::Ge, T::zero());
    s.add(&[("mu", one()), ("nu", -one()), ("e2", one())], Cmp::Eq, k(m));
    s.add(&[("e2", one()), ("d", -one())], Cmp::Ge, T::zero());
    s.add(&[("mu", one()), ("nu", one()), ("e3", one())], Cmp::Eq, k(m));
    s.add(&[("e3", one())], Cmp::Ge, T::zero());
    s.add(
        &[("multS", one()), ("mu", -one()), ("nu", -one()), ("d", -one())],
        Cmp::Eq,
        T::zero(),
    );
    s.add(&[("multS", one())], Cmp::Gt, k::<T>(3 * m) / k(2));
    if stage == Stage::Full {
        s.add(&[("multQ", one()), ("d", -one())], Cmp::Le, T::zero());
        s.add(&[("multQ", one()), ("multS", one())], Cmp::Ge, k(3 * m));
        s.add(&[("multQ", one()), ("d", one())], Cmp::Ge, k(2 * m));
    }
    s
}

/// Nodal surface: `p` on the (−2)-curve `C` and a (−1)-curve `L`, with `D`
/// the residual curve in `|-K - C - L|`, `Z(s) = μC + νL + Ω`.
///
/// The intersection inequalities are taken in local form
/// (`X·Ω ≥ mult_p Ω` for each curve `X` through `p`). With a branch, the
/// blow-up constraints for that position of `Q` are added, together with
/// `μ ≤ m`, `ν ≤ m` and the product-bound consequence `mult_p Ω ≥ m/2`
/// (otherwise the threshold exceeds `2/(3m)`).
///
/// Variables: `mu`, `nu`, `multS`, `multOmega`, and `multQ` for
/// [`NodalBranch::QGeneric`].
pub fn encode_nodal<T: OrderedField>(m: i64, branch: Option<NodalBranch>) -> ConstraintSystem<T> {
    let mut s = ConstraintSystem::new();
    for v in ["mu", "nu", "multS", "multOmega"] {
        s.declare(v, true);
    }
    let one = T::one;
    // C·Ω = 2μ − ν
    s.add(
        &[("mu", k(2)), ("nu", -one()), ("multOmega", -one())],
        Cmp::Ge,
        T::zero(),
    );
    // L·Ω = m − μ + ν
    s.add(&[("mu", -one()), ("nu", one()), ("multOmega", -one())], Cmp::Ge, k(-m));
    // D·Ω = 2m − μ − ν
    s.add(
        &[("mu", -one()), ("nu", -one()), ("multOmega", -one())],
        Cmp::Ge,
        k(-2 * m),
    );
    s.add(
        &[("multS", one()), ("mu", -one()), ("nu", -one()), ("multOmega", -one())],
        Cmp::Eq,
        T::zero(),
    );
    s.add(&[("multS", one())], Cmp::Gt, half(3 * m));
    let Some(branch) = branch else {
        return s;
    };
    s.add(&[("mu", one())], Cmp::Le, k(m));
    s.add(&[("nu", one())], Cmp::Le, k(m));
    match branch {
        NodalBranch::QOnC => {
            s.add(&[("mu", one())], Cmp::Ge, k(m));
            s.add(&[("multOmega", one())], Cmp::Ge, half(m));
        }
        NodalBranch::QOnL => {
            s.add(&[("nu", one())], Cmp::Ge, k(m));
            s.add(&[("multOmega", one())], Cmp::Ge, half(m));
        }
        NodalBranch::QGeneric => {
            s.declare("multQ", true);
            s.add(&[("multQ", one()), ("multS", one())], Cmp::Ge, k(3 * m));
            s.add(&[("multQ", one()), ("multOmega", -one())], Cmp::Le, T::zero());
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constraints::solve;
    use crate::scalar::{rat, rat_int};
    use crate::Rational;

    #[test]
    fn case2_forces_thirds() {
        let rep = solve(&encode_case2::<Rational>(6, Stage::Full));
        assert_eq!(rep.forced_value("mu"), Some(&rat_int(2)));
        assert_eq!(rep.forced_value("multOmega"), Some(&rat_int(8)));
        assert!(!rep.contradiction());
        let rep = solve(&encode_case2::<Rational>(4, Stage::Full));
        assert_eq!(rep.forced_value("mu"), Some(&rat(4, 3)));
        assert!(rep.contradiction());
    }

    #[test]
    fn case2_bounds_before_blowup() {
        let rep = solve(&encode_case2::<Rational>(6, Stage::BeforeBlowup));
        let s = rep.bounds_of("multS").unwrap();
        assert_eq!(
            s.upper.as_ref().map(|b| (&b.value, b.strict)),
            Some((&rat_int(10), false))
        );
        let mu = rep.bounds_of("mu").unwrap();
        assert_eq!(
            mu.lower.as_ref().map(|b| (&b.value, b.strict)),
            Some((&rat(3, 2), true))
        );
        assert_eq!(
            mu.upper.as_ref().map(|b| (&b.value, b.strict)),
            Some((&rat_int(3), true))
        );
    }

    #[test]
    fn case3_forces_halves() {
        let rep = solve(&encode_case3::<Rational>(6, Stage::Full));
        assert_eq!(rep.forced_value("mu"), Some(&rat_int(3)));
        assert_eq!(rep.forced_value("nu"), Some(&rat_int(3)));
        assert_eq!(rep.forced_value("d"), Some(&rat_int(6)));
        let rep = solve(&encode_case3::<Rational>(5, Stage::Full));
        assert_eq!(rep.forced_value("mu"), Some(&rat(5, 2)));
        assert!(rep.contradiction());
    }

    #[test]
    fn nodal_branches() {
        let rep = solve(&encode_nodal::<Rational>(6, None));
        assert_eq!(
            rep.bounds_of("multS").unwrap().upper.as_ref().unwrap().value,
            rat_int(12)
        );
        assert_eq!(
            rep.bounds_of("multOmega").unwrap().upper.as_ref().unwrap().value,
            rat_int(5)
        );
        let rep = solve(&encode_nodal::<Rational>(6, Some(NodalBranch::QOnC)));
        assert_eq!(rep.forced_value("nu"), Some(&rat_int(3)));
        assert_eq!(rep.forced_value("multOmega"), Some(&rat_int(3)));
        assert!(solve(&encode_nodal::<Rational>(5, Some(NodalBranch::QOnC))).contradiction());
        assert!(!solve(&encode_nodal::<Rational>(6, Some(NodalBranch::QOnL))).feasible);
        assert!(!solve(&encode_nodal::<Rational>(6, Some(NodalBranch::QGeneric))).feasible);
    }
}
