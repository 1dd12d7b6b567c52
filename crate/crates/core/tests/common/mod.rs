#![allow(dead_code)]

use delpezzo::algebra::mpoly::MPoly;
use delpezzo::lct::CurveGerm;
use delpezzo::{Poly2, Rational};
use rand::Rng;

/// Germs with hand-checked thresholds.
pub const GOLDEN: &[(&str, i64, i64)] = &[
    ("x*y", 1, 1),
    ("x*y*(x+y)", 2, 3),
    ("y^2 - x^3", 5, 6),
    ("(x+y)^2", 1, 2),
    ("y^2 - x^5", 7, 10),
    ("x^2*y^3", 1, 3),
];

pub fn golden_germs() -> Vec<(CurveGerm, Rational)> {
    GOLDEN
        .iter()
        .map(|&(s, p, q)| (CurveGerm::parse(s).unwrap(), Rational::new(p.into(), q.into())))
        .collect()
}

/// Random germ of exact multiplicity `k` and degree at most `max_deg`, with
/// integer coefficients in `[-5, 5]`.
pub fn random_germ<R: Rng>(rng: &mut R, k: u32, max_deg: u32) -> CurveGerm {
    loop {
        let density = rng.gen_range(0.15..0.6);
        let mut terms = Vec::new();
        for d in k..=max_deg {
            for i in 0..=d {
                if rng.gen_bool(density) {
                    let c: i64 = rng.gen_range(-5..=5);
                    if c != 0 {
                        terms.push(([i, d - i], Rational::from_integer(c.into())));
                    }
                }
            }
        }
        let f: Poly2 = MPoly::from_terms(terms);
        if f.order() == Some(k) {
            return CurveGerm::new(f).unwrap();
        }
    }
}

/// `(y - a x)^k` plus random terms of degree `k+1..=max_deg`: multiplicity
/// `k` with a Newton face that is usually degenerate.
pub fn random_degenerate_germ<R: Rng>(rng: &mut R, k: u32, max_deg: u32) -> CurveGerm {
    let a = Rational::from_integer(rng.gen_range(1..=3).into());
    let line = &Poly2::var(1) - &Poly2::var(0).scale(&a);
    let tail = random_germ(rng, k + 1, max_deg.max(k + 1));
    CurveGerm::new(&line.pow(k) + tail.poly()).unwrap()
}

/// Random matrix with entries in `[-3, 3]` and nonzero determinant.
pub fn random_invertible<R: Rng>(rng: &mut R) -> [[i64; 2]; 2] {
    loop {
        let m = [
            [rng.gen_range(-3..=3), rng.gen_range(-3..=3)],
            [rng.gen_range(-3..=3), rng.gen_range(-3..=3)],
        ];
        if m[0][0] * m[1][1] - m[0][1] * m[1][0] != 0 {
            return m;
        }
    }
}

pub fn run(args: &[&str]) -> delpezzo::cli::RunReport {
    delpezzo::cli::run(std::iter::once("delpezzo").chain(args.iter().copied()))
}

/// Random bounded system: box `-2 <= xi <= 2` plus a few integer rows
/// `a·x {<=,>=,=} b`, kept in integer form for the oracles.
#[derive(Debug, Clone)]
pub struct RandomSystem {
    pub n: usize,
    /// `a·x <= b` rows (equalities appear as two rows).
    pub rows: Vec<(Vec<i64>, i64)>,
    pub system: delpezzo::constraints::ConstraintSystem<Rational>,
}

pub fn random_system<R: Rng>(rng: &mut R) -> RandomSystem {
    use delpezzo::constraints::{Cmp, ConstraintSystem};
    let n = rng.gen_range(1..=4);
    let names: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
    let q = |v: i64| Rational::from_integer(v.into());
    let mut sys = ConstraintSystem::new();
    let mut rows = Vec::new();
    for (i, name) in names.iter().enumerate() {
        sys.declare(name, false);
        sys.add(&[(name.as_str(), q(1))], Cmp::Le, q(2));
        sys.add(&[(name.as_str(), q(1))], Cmp::Ge, q(-2));
        let mut e = vec![0; n];
        e[i] = 1;
        rows.push((e.clone(), 2));
        rows.push((e.iter().map(|v| -v).collect(), 2));
    }
    for _ in 0..rng.gen_range(1..=4) {
        let a: Vec<i64> = (0..n).map(|_| rng.gen_range(-3..=3)).collect();
        let b: i64 = rng.gen_range(-4..=4);
        let terms: Vec<(&str, Rational)> = names.iter().zip(&a).map(|(v, c)| (v.as_str(), q(*c))).collect();
        let neg: Vec<i64> = a.iter().map(|v| -v).collect();
        match rng.gen_range(0..5) {
            0 => {
                sys.add(&terms, Cmp::Eq, q(b));
                rows.push((a, b));
                rows.push((neg, -b));
            }
            1 | 2 => {
                sys.add(&terms, Cmp::Ge, q(b));
                rows.push((neg, -b));
            }
            _ => {
                sys.add(&terms, Cmp::Le, q(b));
                rows.push((a, b));
            }
        }
    }
    RandomSystem { n, rows, system: sys }
}

/// Unique solution of the square system `a x = b`, if any.
fn solve_square(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    use num_traits::Zero;
    let n = b.len();
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(r, v)| r.iter().cloned().chain([v.clone()]).collect())
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, p);
        let piv = m[col][col].clone();
        for v in m[col].iter_mut() {
            *v = &*v / &piv;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in 0..=n {
                    let d = &f * &m[col][c];
                    m[r][c] -= d;
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n].clone()).collect())
}

/// Per-variable exact range over the polytope, from its vertices.
pub fn vertex_ranges(s: &RandomSystem) -> Option<Vec<(Rational, Rational)>> {
    use itertools::Itertools;
    let q = |v: i64| Rational::from_integer(v.into());
    let mut ranges: Option<Vec<(Rational, Rational)>> = None;
    for pick in (0..s.rows.len()).combinations(s.n) {
        let a: Vec<Vec<Rational>> = pick
            .iter()
            .map(|&i| s.rows[i].0.iter().map(|&c| q(c)).collect())
            .collect();
        let b: Vec<Rational> = pick.iter().map(|&i| q(s.rows[i].1)).collect();
        let Some(x) = solve_square(&a, &b) else { continue };
        let ok = s.rows.iter().all(|(a, b)| {
            let lhs: Rational = a.iter().zip(&x).map(|(c, v)| q(*c) * v).sum();
            lhs <= q(*b)
        });
        if !ok {
            continue;
        }
        match &mut ranges {
            None => ranges = Some(x.iter().map(|v| (v.clone(), v.clone())).collect()),
            Some(r) => {
                for (rv, v) in r.iter_mut().zip(&x) {
                    if *v < rv.0 {
                        rv.0 = v.clone();
                    }
                    if *v > rv.1 {
                        rv.1 = v.clone();
                    }
                }
            }
        }
    }
    ranges
}

/// Some point of the grid `(1/den) Z^n` inside the box satisfying every row.
pub fn grid_point(s: &RandomSystem, den: i64) -> Option<Vec<Rational>> {
    let lim = 2 * den;
    let mut k = vec![-lim; s.n];
    loop {
        if s.rows
            .iter()
            .all(|(a, b)| a.iter().zip(&k).map(|(c, v)| c * v).sum::<i64>() <= b * den)
        {
            return Some(k.iter().map(|&v| Rational::new(v.into(), den.into())).collect());
        }
        let mut i = 0;
        loop {
            if i == s.n {
                return None;
            }
            k[i] += 1;
            if k[i] <= lim {
                break;
            }
            k[i] = -lim;
            i += 1;
        }
    }
}
