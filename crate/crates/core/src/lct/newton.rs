//! Newton polygon of a germ and the diagonal threshold `min(1, 1/t₀)`.

use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use super::{CurveGerm, LctReport, Method, Witness};
use crate::algebra::upoly::UPoly;
use crate::Rational;

/// Compact edge `w₁ i + w₂ j = level` between consecutive vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Face {
    pub from: (u32, u32),
    pub to: (u32, u32),
    pub w1: u32,
    pub w2: u32,
    pub level: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NewtonPolygon {
    /// Vertices by increasing `i` (hence decreasing `j`).
    pub vertices: Vec<(u32, u32)>,
    pub faces: Vec<Face>,
}

fn cross(o: (i64, i64), a: (i64, i64), b: (i64, i64)) -> i64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

impl NewtonPolygon {
    pub fn of(f: &CurveGerm) -> Self {
        let mut lowest: BTreeMap<u32, u32> = BTreeMap::new();
        for (e, _) in f.poly().terms() {
            let j = lowest.entry(e[0]).or_insert(e[1]);
            *j = (*j).min(e[1]);
        }
        // staircase: points whose j is below every j to their left
        let mut stair: Vec<(u32, u32)> = Vec::new();
        for (i, j) in lowest {
            if stair.last().is_none_or(|&(_, jj)| j < jj) {
                stair.push((i, j));
            }
        }
        // lower convex hull of the staircase
        let mut hull: Vec<(u32, u32)> = Vec::new();
        for p in stair {
            while hull.len() >= 2 {
                let a = hull[hull.len() - 2];
                let b = hull[hull.len() - 1];
                let c = cross(
                    (a.0 as i64, a.1 as i64),
                    (b.0 as i64, b.1 as i64),
                    (p.0 as i64, p.1 as i64),
                );
                if c <= 0 {
                    hull.pop();
                } else {
                    break;
                }
            }
            hull.push(p);
        }
        let faces = hull
            .windows(2)
            .map(|w| {
                let (a, b) = (w[0], w[1]);
                let di = b.0 - a.0;
                let dj = a.1 - b.1;
                let g = di.gcd(&dj);
                let (w1, w2) = (dj / g, di / g);
                Face {
                    from: a,
                    to: b,
                    w1,
                    w2,
                    level: w1 * a.0 + w2 * a.1,
                }
            })
            .collect();
        NewtonPolygon { vertices: hull, faces }
    }
}

/// Face polynomial `h(s) = Σ c_k s^k` along a compact face.
fn face_polynomial(f: &CurveGerm, face: &Face) -> UPoly<Rational> {
    let len = (face.to.0 - face.from.0) / face.w2;
    let coeffs = (0..=len)
        .map(|k| {
            let e = [face.from.0 + k * face.w2, face.from.1 - k * face.w1];
            f.poly().coeff(&e)
        })
        .collect();
    UPoly::new(coeffs)
}

/// Every compact face polynomial is square-free.
pub fn is_nondegenerate(f: &CurveGerm, poly: &NewtonPolygon) -> bool {
    poly.faces.iter().all(|face| face_polynomial(f, face).is_squarefree())
}

/// Threshold read off the Newton polygon. Exact when every compact face
/// is nondegenerate; otherwise an upper bound on the true threshold.
pub fn newton_lct(f: &CurveGerm) -> LctReport {
    let poly = NewtonPolygon::of(f);
    let first = poly.vertices[0];
    let last = *poly.vertices.last().expect("nonzero germ");
    let mut t0 = Rational::from_integer(first.0.into());
    let mut witness = Witness::VerticalRay { i: first.0 };
    if Rational::from_integer(last.1.into()) > t0 {
        t0 = Rational::from_integer(last.1.into());
        witness = Witness::HorizontalRay { j: last.1 };
    }
    for face in &poly.faces {
        let t = Rational::new(face.level.into(), (face.w1 + face.w2).into());
        if t > t0 {
            t0 = t;
            witness = Witness::Face(face.clone());
        }
    }
    let value = if t0 <= Rational::one() {
        witness = Witness::Capped;
        Rational::one()
    } else {
        t0.recip()
    };
    debug_assert!(value > Rational::zero());
    LctReport {
        value,
        method: Method::Newton,
        witness,
        exact: is_nondegenerate(f, &poly),
        nodes: Vec::new(),
        polygon: Some(poly),
    }
}
