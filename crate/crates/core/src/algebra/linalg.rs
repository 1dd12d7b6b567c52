//! Dense exact linear algebra over a field.

use crate::scalar::Field;

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref<T: Field>(m: &mut [Vec<T>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = T::one() / m[r][c].clone();
        for v in m[r].iter_mut() {
            *v = v.clone() * inv.clone();
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let d = f.clone() * m[r][j].clone();
                    m[i][j] = m[i][j].clone() - d;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    pivots
}

pub fn rank<T: Field>(m: &[Vec<T>]) -> usize {
    rref(&mut m.to_vec()).len()
}

/// Basis of `{v : M v = 0}`.
pub fn kernel<T: Field>(m: &[Vec<T>], cols: usize) -> Vec<Vec<T>> {
    let mut a = m.to_vec();
    let pivots = rref(&mut a);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![T::zero(); cols];
            v[f] = T::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -a[r][f].clone();
            }
            v
        })
        .collect()
}

/// Coefficients `c` with `Σ cᵢ rowᵢ = 0`, if the rows are dependent.
pub fn row_dependency<T: Field>(m: &[Vec<T>]) -> Option<Vec<T>> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let transposed: Vec<Vec<T>> = (0..cols)
        .map(|j| (0..rows).map(|i| m[i][j].clone()).collect())
        .collect();
    kernel(&transposed, rows).into_iter().next()
}

pub fn determinant<T: Field>(m: &[Vec<T>]) -> T {
    let n = m.len();
    let mut a = m.to_vec();
    let mut det = T::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return T::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det = det * a[c][c].clone();
        for i in c + 1..n {
            let f = a[i][c].clone() / a[c][c].clone();
            for j in c..n {
                let d = f.clone() * a[c][j].clone();
                a[i][j] = a[i][j].clone() - d;
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat_int;
    use crate::Rational;

    fn mat(v: &[&[i64]]) -> Vec<Vec<Rational>> {
        v.iter().map(|r| r.iter().map(|&x| rat_int(x)).collect()).collect()
    }

    #[test]
    fn kernel_and_rank() {
        let m = mat(&[&[1, 2, 3], &[2, 4, 6]]);
        assert_eq!(rank(&m), 1);
        let k = kernel(&m, 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            let s: Rational = (0..3).map(|j| &m[0][j] * &v[j]).sum();
            assert_eq!(s, rat_int(0));
        }
        let dep = row_dependency(&m).unwrap();
        assert_eq!(dep[0].clone(), -&dep[1] * rat_int(2));
    }

    #[test]
    fn determinant_matches_cofactor() {
        let m = mat(&[&[2, 0, 1], &[1, 3, 2], &[1, 1, 1]]);
        assert_eq!(determinant(&m), rat_int(2 * (3 - 2) + (1 - 3)));
    }
}
