//! GCD, exact division and square-free factorization in `Q[x, y]`.
//!
//! Polynomials are viewed recursively as elements of `(Q[x])[y]`. Gcds
//! specialize `x` at integer points and interpolate the monic images.

use crate::algebra::mpoly::MPoly;
use crate::algebra::upoly::UPoly;
use crate::scalar::Field;

type Coef<T> = UPoly<T>;

/// `(Q[x])[y]`, index = power of `y`, trimmed.
#[derive(Clone, Debug, PartialEq)]
struct Rec<T> {
    c: Vec<Coef<T>>,
}

impl<T: Field> Rec<T> {
    fn new(mut c: Vec<Coef<T>>) -> Self {
        while c.last().is_some_and(|p| p.is_zero()) {
            c.pop();
        }
        Rec { c }
    }

    fn from_mpoly(f: &MPoly<T, 2>) -> Self {
        let dy = f.degree_in(1).map(|d| d as usize + 1).unwrap_or(0);
        let mut cols: Vec<Vec<T>> = vec![Vec::new(); dy];
        for (e, v) in f.terms() {
            let col = &mut cols[e[1] as usize];
            let i = e[0] as usize;
            if col.len() <= i {
                col.resize(i + 1, T::zero());
            }
            col[i] = v.clone();
        }
        Rec::new(cols.into_iter().map(UPoly::new).collect())
    }

    fn to_mpoly(&self) -> MPoly<T, 2> {
        let mut out = MPoly::zero();
        for (j, p) in self.c.iter().enumerate() {
            for (i, v) in p.coeffs().iter().enumerate() {
                out.add_term([i as u32, j as u32], v.clone());
            }
        }
        out
    }

    fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    fn deg(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    fn lc(&self) -> Coef<T> {
        self.c.last().cloned().unwrap_or_else(UPoly::zero)
    }

    fn content(&self) -> Coef<T> {
        self.c.iter().fold(UPoly::zero(), |g, p| g.gcd(p))
    }

    fn div_coef(&self, d: &Coef<T>) -> Self {
        Rec::new(
            self.c
                .iter()
                .map(|p| p.exact_div(d).expect("content divides coefficient"))
                .collect(),
        )
    }

    fn mul_coef(&self, d: &Coef<T>) -> Self {
        Rec::new(self.c.iter().map(|p| p * d).collect())
    }

    fn primitive(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.div_coef(&self.content())
    }

    fn sub(&self, other: &Self) -> Self {
        let n = self.c.len().max(other.c.len());
        Rec::new(
            (0..n)
                .map(|k| {
                    let a = self.c.get(k).cloned().unwrap_or_else(UPoly::zero);
                    let b = other.c.get(k).cloned().unwrap_or_else(UPoly::zero);
                    &a - &b
                })
                .collect(),
        )
    }

    fn shift_mul(&self, k: usize, d: &Coef<T>) -> Self {
        let mut c = vec![UPoly::zero(); k];
        c.extend(self.c.iter().map(|p| p * d));
        Rec::new(c)
    }

    fn dy(&self) -> Self {
        Rec::new(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, p)| p.scale(&T::from_i64(k as i64)))
                .collect(),
        )
    }

    /// Exact quotient in `(Q[x])[y]`, or `None`.
    fn exact_div(&self, b: &Self) -> Option<Self> {
        if b.is_zero() {
            return None;
        }
        let mut a = self.clone();
        let mut q = vec![UPoly::zero(); self.c.len().saturating_sub(b.deg()).max(1)];
        let lb = b.lc();
        while !a.is_zero() {
            if a.deg() < b.deg() {
                return None;
            }
            let k = a.deg() - b.deg();
            let t = a.lc().exact_div(&lb)?;
            a = a.sub(&b.shift_mul(k, &t));
            q[k] = &q[k] + &t;
        }
        Some(Rec::new(q))
    }

    fn eval_x(&self, x0: &T) -> Coef<T> {
        UPoly::new(self.c.iter().map(|p| p.eval(x0)).collect())
    }

    fn x_degree(&self) -> usize {
        self.c.iter().filter_map(|p| p.degree()).max().unwrap_or(0)
    }

    /// Gcd by specializing `x`, taking univariate gcds in `y` and
    /// interpolating; a candidate is accepted once it divides both inputs.
    fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let cont = self.content().gcd(&other.content());
        let (a, b) = (self.primitive(), other.primitive());
        let gamma = a.lc().gcd(&b.lc());
        let bound = gamma.degree().unwrap_or(0) + a.x_degree().min(b.x_degree()) + 1;
        let mut deg = a.deg().min(b.deg());
        let mut xs: Vec<T> = Vec::new();
        let mut images: Vec<Coef<T>> = Vec::new();
        let mut k = 0i64;
        loop {
            let x0 = T::from_i64(if k % 2 == 0 { k / 2 } else { -(k + 1) / 2 });
            k += 1;
            let g0 = gamma.eval(&x0);
            if g0.is_zero() || a.lc().eval(&x0).is_zero() || b.lc().eval(&x0).is_zero() {
                continue;
            }
            let h = a.eval_x(&x0).gcd(&b.eval_x(&x0));
            let d = h.degree().unwrap_or(0);
            if d == 0 {
                return Rec::new(vec![cont]);
            }
            if d > deg {
                continue;
            }
            if d < deg {
                deg = d;
                xs.clear();
                images.clear();
            }
            xs.push(x0);
            images.push(h.scale(&g0));
            if xs.len() < bound {
                continue;
            }
            let g = Rec::new(
                (0..=deg)
                    .map(|j| {
                        let ys: Vec<T> = images.iter().map(|h| h.coeff(j)).collect();
                        crate::algebra::upoly::interpolate(&xs, &ys)
                    })
                    .collect(),
            )
            .primitive();
            if a.exact_div(&g).is_some() && b.exact_div(&g).is_some() {
                return g.mul_coef(&cont);
            }
        }
    }
}

/// Scales so that the lexicographically largest term has coefficient 1.
pub fn normalize<T: Field>(f: &MPoly<T, 2>) -> MPoly<T, 2> {
    match f.terms().last() {
        Some((_, c)) => f.scale(&c.inv()),
        None => f.clone(),
    }
}

/// Normalized gcd in `Q[x, y]`.
pub fn gcd<T: Field>(a: &MPoly<T, 2>, b: &MPoly<T, 2>) -> MPoly<T, 2> {
    normalize(&Rec::from_mpoly(a).gcd(&Rec::from_mpoly(b)).to_mpoly())
}

/// `a / b` when `b` divides `a` exactly.
pub fn exact_div<T: Field>(a: &MPoly<T, 2>, b: &MPoly<T, 2>) -> Option<MPoly<T, 2>> {
    Rec::from_mpoly(a).exact_div(&Rec::from_mpoly(b)).map(|q| q.to_mpoly())
}

/// Sufficient test for a primitive `f` to be square-free: some `f(x0, y)`
/// with nonvanishing leading coefficient is square-free.
fn specializes_squarefree<T: Field>(f: &Rec<T>) -> bool {
    (0..8).map(T::from_i64).any(|x0| {
        let lc = f.lc().eval(&x0);
        if lc.is_zero() {
            return false;
        }
        let g = UPoly::new(f.c.iter().map(|p| p.eval(&x0)).collect());
        g.is_squarefree()
    })
}

/// `f = c * prod g_k^k`: returns the nonconstant `(g_k, k)`, each square-free,
/// pairwise coprime, normalized, in increasing `k`.
pub fn squarefree_factorization<T: Field>(f: &MPoly<T, 2>) -> Vec<(MPoly<T, 2>, u32)> {
    let rec = Rec::from_mpoly(f);
    if rec.is_zero() {
        return Vec::new();
    }
    let mut groups: Vec<(MPoly<T, 2>, u32)> = Vec::new();
    let push = |g: MPoly<T, 2>, k: u32, groups: &mut Vec<(MPoly<T, 2>, u32)>| {
        if let Some(slot) = groups.iter_mut().find(|(_, kk)| *kk == k) {
            slot.0 = &slot.0 * &g;
        } else {
            groups.push((g, k));
        }
    };

    let content = rec.content();
    for (g, k) in content.squarefree_decomposition() {
        let m = MPoly::from_terms(g.coeffs().iter().enumerate().map(|(i, v)| ([i as u32, 0], v.clone())));
        push(m, k, &mut groups);
    }

    let pp = rec.primitive();
    if pp.deg() > 0 && specializes_squarefree(&pp) {
        push(pp.to_mpoly(), 1, &mut groups);
    } else if pp.deg() > 0 {
        let d = pp.dy();
        let a0 = pp.gcd(&d);
        let mut b = pp.exact_div(&a0).expect("gcd divides");
        let mut c = d.exact_div(&a0).expect("gcd divides");
        let mut dd = c.sub(&b.dy());
        let mut k = 1;
        while b.deg() > 0 {
            let a = b.gcd(&dd);
            if a.deg() > 0 {
                push(a.to_mpoly(), k, &mut groups);
            }
            b = b.exact_div(&a).expect("gcd divides");
            c = dd.exact_div(&a).expect("gcd divides");
            dd = c.sub(&b.dy());
            k += 1;
        }
    }
    groups.sort_by_key(|(_, k)| *k);
    groups.into_iter().map(|(g, k)| (normalize(&g), k)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat_int;
    use crate::Rational;

    type P = MPoly<Rational, 2>;

    fn x() -> P {
        P::var(0)
    }
    fn y() -> P {
        P::var(1)
    }
    fn c(v: i64) -> P {
        P::constant(rat_int(v))
    }

    #[test]
    fn gcd_of_products() {
        let a = &(&x() + &y()) * &(&x() - &c(1));
        let b = &(&x() + &y()) * &(&y() + &c(2));
        assert_eq!(gcd(&a, &b), normalize(&(&x() + &y())));
        assert_eq!(gcd(&x(), &y()), c(1));
    }

    #[test]
    fn exact_division() {
        let a = &(&x() + &y()) * &(&x() * &y());
        assert_eq!(exact_div(&a, &(&x() + &y())), Some(&x() * &y()));
        assert_eq!(exact_div(&a, &(&x() + &c(1))), None);
    }

    #[test]
    fn squarefree_groups() {
        // x^2 y^3 (x+y) (y - x^2)^2
        let f = &(&(&x().pow(2) * &y().pow(3)) * &(&x() + &y())) * &(&y() - &x().pow(2)).pow(2);
        let groups = squarefree_factorization(&f);
        let ks: Vec<u32> = groups.iter().map(|(_, k)| *k).collect();
        assert_eq!(ks, vec![1, 2, 3]);
        assert_eq!(groups[0].0, normalize(&(&x() + &y())));
        assert_eq!(groups[1].0, normalize(&(&x() * &(&y() - &x().pow(2)))));
        assert_eq!(groups[2].0, normalize(&y()));
        // product reconstructs f up to a constant
        let prod = groups.iter().fold(P::one(), |acc, (g, k)| &acc * &g.pow(*k));
        assert_eq!(normalize(&prod), normalize(&f));
    }
}
