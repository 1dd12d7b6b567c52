//! Cubic-surface toolkit: Picard-lattice intersection theory, six-point
//! plane configurations, exact log canonical thresholds of plane-curve
//! germs, exact linear-constraint solving, and lattice case scans.

pub mod algebra;
pub mod cli;
pub mod constraints;
pub mod expr;
pub mod lattice;
pub mod lct;
pub mod lemma_verify;
pub mod plane_config;
pub mod scalar;

/// Exact arbitrary-precision rational.
pub type Rational = num_rational::BigRational;
/// Bivariate polynomial over the rationals in `(x, y)`.
pub type Poly2 = algebra::mpoly::MPoly<Rational, 2>;
/// Exact constraint system.
pub type RationalSystem = constraints::ConstraintSystem<Rational>;
/// Floating-point constraint system, for quick exploratory solves.
pub type FloatSystem = constraints::ConstraintSystem<f64>;
