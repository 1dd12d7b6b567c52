mod common;

use delpezzo::constraints::encodings::{encode_case2, encode_case3, encode_nodal, NodalBranch, Stage};
use delpezzo::constraints::text::parse_system;
use delpezzo::constraints::{is_feasible, solve, solve_with_order, Cmp, ConstraintSystem};
use delpezzo::scalar::rat;
use delpezzo::{FloatSystem, Rational, RationalSystem};
use num_rational::Ratio;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn matches_vertex_oracle(seed in any::<u64>()) {
        let s = common::random_system(&mut ChaCha8Rng::seed_from_u64(seed));
        let r = solve(&s.system);
        let ranges = common::vertex_ranges(&s);
        prop_assert_eq!(r.feasible, ranges.is_some());
        if let Some(ranges) = ranges {
            for (i, (lo, hi)) in ranges.iter().enumerate() {
                let b = &r.bounds[i];
                prop_assert_eq!(b.lower.as_ref().map(|b| &b.value), Some(lo));
                prop_assert_eq!(b.upper.as_ref().map(|b| &b.value), Some(hi));
            }
        }
        if let Some(x) = common::grid_point(&s, 2) {
            prop_assert!(r.feasible);
            prop_assert!(s.system.satisfied_by(&x));
        }
    }

    #[test]
    fn elimination_order_is_irrelevant(seed in any::<u64>(), rot in 0usize..4) {
        let s = common::random_system(&mut ChaCha8Rng::seed_from_u64(seed));
        let order: Vec<usize> = (0..s.n).map(|i| (i + rot) % s.n).collect();
        prop_assert_eq!(solve(&s.system), solve_with_order(&s.system, Some(&order)));
    }
}

#[test]
fn strict_inequalities() {
    let mut s = RationalSystem::new();
    s.add(&[("t", rat(1, 1))], Cmp::Gt, rat(0, 1));
    s.add(&[("t", rat(1, 1))], Cmp::Lt, rat(1, 1));
    let r = solve(&s);
    let b = r.bounds_of("t").unwrap();
    assert!(r.feasible && r.forced.is_empty());
    assert!(b.lower.as_ref().unwrap().strict && b.upper.as_ref().unwrap().strict);

    s.add(&[("t", rat(2, 1))], Cmp::Ge, rat(2, 1));
    assert!(!is_feasible(&s));
}

#[test]
fn case_encodings_over_other_scalars() {
    // Small exact type.
    let r = solve(&encode_case3::<Ratio<i64>>(6, Stage::Full));
    assert_eq!(r.forced_value("mu"), Some(&Ratio::from_integer(3)));
    let r = solve(&encode_case3::<Ratio<i64>>(5, Stage::Full));
    assert!(r.contradiction());

    // Floating point agrees on these small systems.
    let r = solve(&encode_case2::<f64>(6, Stage::Full));
    assert_eq!(r.forced_value("mu"), Some(&2.0));
    assert_eq!(r.forced_value("multOmega"), Some(&8.0));
    let r = solve(&encode_case3::<f32>(4, Stage::Full));
    assert_eq!(r.forced_value("nu"), Some(&2.0f32));

    let mut f = FloatSystem::new();
    f.add(&[("a", 1.0), ("b", 1.0)], Cmp::Le, 1.0);
    f.add(&[("a", 1.0)], Cmp::Ge, 1.0);
    f.add(&[("b", 1.0)], Cmp::Ge, 0.0);
    let r = solve(&f);
    assert_eq!((r.forced_value("a"), r.forced_value("b")), (Some(&1.0), Some(&0.0)));
}

#[test]
fn nodal_branches() {
    for m in [2i64, 4, 6] {
        let r = solve(&encode_nodal::<Rational>(m, None));
        let s = r.bounds_of("multS").unwrap();
        assert_eq!(s.upper.as_ref().unwrap().value, rat(2 * m, 1));
    }
    for m in 1..=8i64 {
        let sys: ConstraintSystem<Rational> = encode_nodal(m, Some(NodalBranch::QOnC));
        let r = solve(&sys);
        assert_eq!(r.contradiction(), m % 2 == 1, "m = {m}");
        assert_eq!(r.forced_value("nu"), Some(&rat(m, 2)));
        for branch in [NodalBranch::QOnL, NodalBranch::QGeneric] {
            assert!(!solve(&encode_nodal::<Rational>(m, Some(branch))).feasible);
        }
    }
}

#[test]
fn text_systems_round_through_the_solver() {
    let src = "# case 3 by hand\nint mu nu d\nmu - nu = 0\nmu + nu = d\nd = m\n";
    let r = solve(&parse_system(src, &rat(6, 1)).unwrap());
    assert_eq!(r.forced_value("mu"), Some(&rat(3, 1)));
    let r = solve(&parse_system(src, &rat(5, 1)).unwrap());
    assert!(r.integrality_failures().any(|f| f.name == "mu"));
    assert!(parse_system("mu <= 1\n", &rat(1, 1)).is_err());
}
