//! Irreducible factorization of univariate polynomials over `Q`.
//!
//! Big-prime Zassenhaus: factor modulo a prime larger than twice the
//! Mignotte-style coefficient bound, then recombine modular factors by
//! trial products over `Z`.

use num_bigint::{BigInt, RandBigInt};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::upoly::UPoly;
use crate::Rational;

/// Monic irreducible factors of `f` over `Q` (each listed once), sorted by
/// degree then coefficients. Repeated factors are reported once.
pub fn factor_rational(f: &UPoly<Rational>) -> Vec<UPoly<Rational>> {
    let mut out = Vec::new();
    if f.is_constant() {
        return out;
    }
    for (g, _) in f.squarefree_decomposition() {
        for h in factor_squarefree(&g) {
            out.push(h);
        }
    }
    out.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.coeffs().cmp(b.coeffs())));
    out
}

/// Rational roots of `f`, each once, sorted ascending.
pub fn rational_roots(f: &UPoly<Rational>) -> Vec<Rational> {
    let mut roots: Vec<Rational> = factor_rational(f)
        .into_iter()
        .filter(|g| g.degree() == Some(1))
        .map(|g| -g.coeff(0) / g.coeff(1))
        .collect();
    roots.sort();
    roots
}

fn to_primitive_int(f: &UPoly<Rational>) -> Vec<BigInt> {
    let lcm = f.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = f
        .coeffs()
        .iter()
        .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
        .collect();
    primitive(ints)
}

fn primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if g.is_zero() {
        return v;
    }
    let sign = if v.last().is_some_and(|c| c.is_negative()) {
        -BigInt::one()
    } else {
        BigInt::one()
    };
    let g = g * sign;
    for c in v.iter_mut() {
        *c = &*c / &g;
    }
    v
}

fn int_to_rat(v: &[BigInt]) -> UPoly<Rational> {
    UPoly::new(v.iter().map(|c| Rational::from_integer(c.clone())).collect())
}

fn factor_squarefree(f: &UPoly<Rational>) -> Vec<UPoly<Rational>> {
    let deg = f.degree().unwrap_or(0);
    if deg <= 1 {
        return vec![f.monic()];
    }
    let fz = to_primitive_int(f);
    // strip the factor t^k early; it confuses nothing but is cheap to drop
    if fz[0].is_zero() {
        let rest = int_to_rat(&fz[1..]);
        let mut out = vec![UPoly::var()];
        out.extend(factor_squarefree(&rest));
        return out;
    }
    let lc = fz.last().unwrap().clone();
    let norm1: BigInt = fz.iter().map(|c| c.abs()).sum();
    let bound = lc.abs() * (BigInt::one() << deg) * norm1;
    let mut p = &bound * 2u32 + 1u32;
    if p.is_even() {
        p += 1u32;
    }
    loop {
        if is_probable_prime(&p) && !(&lc % &p).is_zero() {
            let fp = ModPoly::from_ints(&fz, &p);
            if fp.gcd(&fp.derivative()).degree() == 0 {
                break;
            }
        }
        p += 2u32;
    }
    let fp = ModPoly::from_ints(&fz, &p).monic();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_cafe);
    let modular = factor_mod_p(&fp, &mut rng);
    recombine(fz, modular, &p)
        .into_iter()
        .map(|g| int_to_rat(&g).monic())
        .collect()
}

fn recombine(mut f: Vec<BigInt>, mut facs: Vec<ModPoly>, p: &BigInt) -> Vec<Vec<BigInt>> {
    let mut result = Vec::new();
    let mut s = 1;
    while 2 * s <= facs.len() {
        let mut found = None;
        for subset in combinations(facs.len(), s) {
            let lc = f.last().unwrap().clone();
            let lc_mod = ModPoly::constant(&lc, p);
            let mut g = lc_mod.clone();
            let mut h = lc_mod;
            for (i, fac) in facs.iter().enumerate() {
                if subset.contains(&i) {
                    g = g.mul(fac);
                } else {
                    h = h.mul(fac);
                }
            }
            let gi = g.symmetric();
            let hi = h.symmetric();
            let lhs = int_mul(&gi, &hi);
            let rhs: Vec<BigInt> = f.iter().map(|c| c * &lc).collect();
            if lhs == rhs {
                found = Some((subset, primitive(gi), primitive(hi)));
                break;
            }
        }
        match found {
            Some((subset, g, h)) => {
                result.push(g);
                f = h;
                facs = facs
                    .into_iter()
                    .enumerate()
                    .filter(|(i, _)| !subset.contains(i))
                    .map(|(_, x)| x)
                    .collect();
            }
            None => s += 1,
        }
    }
    result.push(f);
    result
}

fn int_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    while out.len() > 1 && out.last().is_some_and(|c| c.is_zero()) {
        out.pop();
    }
    out
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Miller–Rabin with a fixed base set; deterministic below 3.3e24.
pub(crate) fn is_probable_prime(n: &BigInt) -> bool {
    let small = [
        2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71,
    ];
    if *n < BigInt::from(2) {
        return false;
    }
    for &q in &small {
        let q = BigInt::from(q);
        if *n == q {
            return true;
        }
        if (n % &q).is_zero() {
            return false;
        }
    }
    let one = BigInt::one();
    let nm1 = n - &one;
    let mut d = nm1.clone();
    let mut r = 0;
    while d.is_even() {
        d >>= 1;
        r += 1;
    }
    'witness: for &a in &small {
        let mut x = BigInt::from(a).modpow(&d, n);
        if x == one || x == nm1 {
            continue;
        }
        for _ in 1..r {
            x = (&x * &x) % n;
            if x == nm1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Dense polynomial over `Z/pZ`, coefficients in `[0, p)`, trimmed.
#[derive(Clone, Debug, PartialEq)]
struct ModPoly {
    c: Vec<BigInt>,
    p: BigInt,
}

impl ModPoly {
    fn new(mut c: Vec<BigInt>, p: &BigInt) -> Self {
        for v in c.iter_mut() {
            *v = v.mod_floor(p);
        }
        while c.last().is_some_and(|v| v.is_zero()) {
            c.pop();
        }
        ModPoly { c, p: p.clone() }
    }

    fn from_ints(v: &[BigInt], p: &BigInt) -> Self {
        Self::new(v.to_vec(), p)
    }

    fn constant(v: &BigInt, p: &BigInt) -> Self {
        Self::new(vec![v.clone()], p)
    }

    fn degree(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    fn inv(&self, a: &BigInt) -> BigInt {
        a.modpow(&(&self.p - 2u32), &self.p)
    }

    fn monic(&self) -> Self {
        let Some(lc) = self.c.last() else {
            return self.clone();
        };
        let inv = self.inv(lc);
        Self::new(self.c.iter().map(|v| v * &inv).collect(), &self.p)
    }

    fn sub(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let z = BigInt::zero();
        Self::new(
            (0..n)
                .map(|k| self.c.get(k).unwrap_or(&z) - o.c.get(k).unwrap_or(&z))
                .collect(),
            &self.p,
        )
    }

    fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::new(Vec::new(), &self.p);
        }
        let mut out = vec![BigInt::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            for (j, b) in o.c.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out, &self.p)
    }

    fn derivative(&self) -> Self {
        Self::new(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, v)| v * BigInt::from(k))
                .collect(),
            &self.p,
        )
    }

    fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree();
        if self.c.len() <= dd {
            return (Self::new(Vec::new(), &self.p), self.clone());
        }
        let inv = self.inv(d.c.last().unwrap());
        let mut rem = self.c.clone();
        let mut q = vec![BigInt::zero(); rem.len() - dd];
        for k in (0..q.len()).rev() {
            let c = (&rem[k + dd] * &inv).mod_floor(&self.p);
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.c.iter().enumerate() {
                rem[k + j] = (&rem[k + j] - &c * dc).mod_floor(&self.p);
            }
            q[k] = c;
        }
        rem.truncate(dd);
        (Self::new(q, &self.p), Self::new(rem, &self.p))
    }

    fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    fn powmod(&self, e: &BigInt, m: &Self) -> Self {
        let mut base = self.rem(m);
        let mut acc = Self::constant(&BigInt::one(), &self.p);
        let bits = e.bits();
        for i in 0..bits {
            if e.bit(i) {
                acc = acc.mul(&base).rem(m);
            }
            if i + 1 < bits {
                base = base.mul(&base).rem(m);
            }
        }
        acc
    }

    fn symmetric(&self) -> Vec<BigInt> {
        let half = &self.p >> 1;
        let mut v: Vec<BigInt> = self
            .c
            .iter()
            .map(|c| if *c > half { c - &self.p } else { c.clone() })
            .collect();
        if v.is_empty() {
            v.push(BigInt::zero());
        }
        v
    }
}

fn factor_mod_p(f: &ModPoly, rng: &mut ChaCha8Rng) -> Vec<ModPoly> {
    let p = f.p.clone();
    let x = ModPoly::new(vec![BigInt::zero(), BigInt::one()], &p);
    let mut rest = f.clone();
    let mut h = x.clone();
    let mut out = Vec::new();
    let mut d = 1usize;
    while rest.degree() >= 2 * d {
        h = h.powmod(&p, &rest);
        let g = h.sub(&x).gcd(&rest);
        if g.degree() > 0 {
            equal_degree(&g, d, rng, &mut out);
            rest = rest.div_rem(&g).0;
            h = h.rem(&rest);
        }
        d += 1;
    }
    if rest.degree() > 0 {
        out.push(rest.monic());
    }
    out
}

fn equal_degree(g: &ModPoly, d: usize, rng: &mut ChaCha8Rng, out: &mut Vec<ModPoly>) {
    if g.degree() == d {
        out.push(g.monic());
        return;
    }
    let p = g.p.clone();
    let exp = (p.pow(d as u32) - 1u32) >> 1;
    loop {
        let a = ModPoly::new(
            (0..g.degree())
                .map(|_| rng.gen_bigint_range(&BigInt::zero(), &p))
                .collect(),
            &p,
        );
        if a.degree() == 0 {
            continue;
        }
        let b = a.powmod(&exp, g).sub(&ModPoly::constant(&BigInt::one(), &p));
        let u = b.gcd(g);
        if u.degree() > 0 && u.degree() < g.degree() {
            let v = g.div_rem(&u).0;
            equal_degree(&u, d, rng, out);
            equal_degree(&v, d, rng, out);
            return;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat_int;

    fn p(v: &[i64]) -> UPoly<Rational> {
        UPoly::new(v.iter().map(|&c| rat_int(c)).collect())
    }

    fn product(fs: &[UPoly<Rational>]) -> UPoly<Rational> {
        fs.iter().fold(UPoly::one(), |acc, f| &acc * f)
    }

    #[test]
    fn primality() {
        assert!(is_probable_prime(&BigInt::from(1_000_000_007u64)));
        assert!(!is_probable_prime(&BigInt::from(1_000_000_007u64 * 3)));
        assert!(!is_probable_prime(&BigInt::from(561)));
    }

    #[test]
    fn factors_products_of_irreducibles() {
        let a = p(&[-2, 0, 1]); // t^2 - 2
        let b = p(&[1, 1, 0, 1]); // t^3 + t + 1
        let c = p(&[-3, 2]); // 2t - 3
        let f = product(&[a.clone(), b.clone(), c.clone()]);
        let fs = factor_rational(&f);
        assert_eq!(fs.len(), 3);
        assert_eq!(product(&fs), f.monic());
        assert!(fs.contains(&a.monic()));
        assert!(fs.contains(&b.monic()));
        assert!(fs.contains(&c.monic()));
    }

    #[test]
    fn swinnerton_dyer_like_stays_irreducible() {
        // t^4 - 10 t^2 + 1 splits modulo every prime but is irreducible over Q
        let f = p(&[1, 0, -10, 0, 1]);
        assert_eq!(factor_rational(&f), vec![f.clone()]);
    }

    #[test]
    fn cyclotomic_split() {
        // t^6 - 1 = (t-1)(t+1)(t^2+t+1)(t^2-t+1)
        let f = p(&[-1, 0, 0, 0, 0, 0, 1]);
        let fs = factor_rational(&f);
        assert_eq!(fs.len(), 4);
        assert_eq!(product(&fs), f);
        assert_eq!(rational_roots(&f), vec![rat_int(-1), rat_int(1)]);
    }

    #[test]
    fn repeated_factors_listed_once() {
        let f = &p(&[-1, 1]).pow(3) * &p(&[0, 1]);
        assert_eq!(factor_rational(&f), vec![p(&[-1, 1]), p(&[0, 1])]);
    }
}
