//! Dense two-phase simplex with Bland's rule, exact over any ordered field.
//!
//! Standard form: minimize `c·x` subject to `A x = b`, `x >= 0`.

use crate::scalar::OrderedField;

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome<T> {
    Optimal { value: T, x: Vec<T> },
    Infeasible,
    Unbounded,
}

struct Tableau<T> {
    // rows 0..m are constraints, each of width n + 1 (last column rhs)
    rows: Vec<Vec<T>>,
    basis: Vec<usize>,
    n: usize,
}

impl<T: OrderedField> Tableau<T> {
    fn pivot(&mut self, r: usize, col: usize, obj: &mut [T]) {
        let p = self.rows[r][col].clone();
        for v in self.rows[r].iter_mut() {
            *v = v.clone() / p.clone();
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                *v = v.clone() - f.clone() * pv.clone();
            }
        }
        if !obj[col].is_zero() {
            let f = obj[col].clone();
            for (v, pv) in obj.iter_mut().zip(&pivot_row) {
                *v = v.clone() - f.clone() * pv.clone();
            }
        }
        self.basis[r] = col;
    }

    /// Minimizes the reduced-cost row `obj` (width n + 1, last entry is the
    /// negated objective value) over columns `< limit`.
    fn run(&mut self, obj: &mut [T], limit: usize) -> bool {
        loop {
            let Some(col) = (0..limit).find(|&j| obj[j] < T::zero()) else {
                return true;
            };
            let mut best: Option<(usize, T)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if row[col] > T::zero() {
                    let ratio = row[self.n].clone() / row[col].clone();
                    let better = match &best {
                        None => true,
                        Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
                    };
                    if better {
                        best = Some((i, ratio));
                    }
                }
            }
            match best {
                Some((r, _)) => self.pivot(r, col, obj),
                None => return false,
            }
        }
    }
}

/// Solves `min c·x, A x = b, x >= 0`.
pub fn minimize<T: OrderedField>(a: &[Vec<T>], b: &[T], c: &[T]) -> LpOutcome<T> {
    let m = a.len();
    let n = c.len();
    // phase one with artificials n..n+m
    let width = n + m;
    let mut rows = Vec::with_capacity(m);
    for (i, (ai, bi)) in a.iter().zip(b).enumerate() {
        let flip = *bi < T::zero();
        let mut row: Vec<T> = Vec::with_capacity(width + 1);
        for v in ai {
            row.push(if flip { -v.clone() } else { v.clone() });
        }
        for k in 0..m {
            row.push(if k == i { T::one() } else { T::zero() });
        }
        row.push(if flip { -bi.clone() } else { bi.clone() });
        rows.push(row);
    }
    let mut t = Tableau {
        rows,
        basis: (n..n + m).collect(),
        n: width,
    };
    let mut obj = vec![T::zero(); width + 1];
    for row in &t.rows {
        for j in 0..n {
            obj[j] = obj[j].clone() - row[j].clone();
        }
        obj[width] = obj[width].clone() - row[width].clone();
    }
    t.run(&mut obj, width);
    if obj[width] < T::zero() {
        return LpOutcome::Infeasible;
    }
    // drive remaining artificials out of the basis
    for r in 0..m {
        if t.basis[r] >= n {
            if let Some(col) = (0..n).find(|&j| !t.rows[r][j].is_zero()) {
                let mut dummy = vec![T::zero(); width + 1];
                t.pivot(r, col, &mut dummy);
            }
        }
    }
    // phase two over original columns only
    let mut obj = vec![T::zero(); width + 1];
    obj[..n].clone_from_slice(&c[..n]);
    for (r, &bv) in t.basis.iter().enumerate() {
        if bv < n && !obj[bv].is_zero() {
            let f = obj[bv].clone();
            for (v, pv) in obj.iter_mut().zip(&t.rows[r]) {
                *v = v.clone() - f.clone() * pv.clone();
            }
        }
    }
    if !t.run(&mut obj, n) {
        return LpOutcome::Unbounded;
    }
    let mut x = vec![T::zero(); n];
    for (r, &bv) in t.basis.iter().enumerate() {
        if bv < n {
            x[bv] = t.rows[r][width].clone();
        }
    }
    let value = c
        .iter()
        .zip(&x)
        .fold(T::zero(), |acc, (ci, xi)| acc + ci.clone() * xi.clone());
    LpOutcome::Optimal { value, x }
}

/// Feasibility of `A x = b, x >= 0`, with a witness.
pub fn feasible_point<T: OrderedField>(a: &[Vec<T>], b: &[T]) -> Option<Vec<T>> {
    let n = a.first().map(|r| r.len()).unwrap_or(0);
    match minimize(a, b, &vec![T::zero(); n]) {
        LpOutcome::Optimal { x, .. } => Some(x),
        _ => None,
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
    fn small_lp() {
        // max x + y s.t. x + 2y + s1 = 4, 3x + y + s2 = 6
        let a = vec![vec![r(1), r(2), r(1), r(0)], vec![r(3), r(1), r(0), r(1)]];
        let b = vec![r(4), r(6)];
        let c = vec![r(-1), r(-1), r(0), r(0)];
        match minimize(&a, &b, &c) {
            LpOutcome::Optimal { value, x } => {
                assert_eq!(value, rat(-14, 5));
                assert_eq!(x[0], rat(8, 5));
                assert_eq!(x[1], rat(6, 5));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn infeasible_and_unbounded() {
        // x = -1, x >= 0
        assert_eq!(minimize(&[vec![r(1)]], &[r(-1)], &[r(0)]), LpOutcome::Infeasible);
        // min -x, x - s = 0
        assert_eq!(
            minimize(&[vec![r(1), r(-1)]], &[r(0)], &[r(-1), r(0)]),
            LpOutcome::Unbounded
        );
    }

    #[test]
    fn degenerate_redundant_rows() {
        let a = vec![vec![r(1), r(1)], vec![r(2), r(2)]];
        let b = vec![r(1), r(2)];
        let x = feasible_point(&a, &b).unwrap();
        assert_eq!(x[0].clone() + x[1].clone(), r(1));
    }
}
