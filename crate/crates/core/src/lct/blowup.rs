//! Log canonical threshold from an embedded log resolution.
//!
//! The germ is factored square-free over `Q` and each infinitely near point
//! is tracked in local coordinates over the number field needed to reach
//! it. Conjugate points are equivalent under Galois action, so one
//! representative per tangent direction is visited.

use std::sync::Arc;

use num_traits::Zero;
use serde::Serialize;

use super::{CurveGerm, LctError, LctReport, Method, Witness};
use crate::algebra::bivariate;
use crate::algebra::mpoly::MPoly;
use crate::algebra::numfield::{factor_over, AlgNum, NumberField, Root};
use crate::algebra::upoly::UPoly;
use crate::Rational;

pub const DEFAULT_MAX_BLOWUPS: usize = 64;

type APoly = MPoly<AlgNum, 2>;

/// Exceptional divisor `E` with discrepancy `a = k_E` and `b = ord_E f`;
/// its threshold candidate is `(a + 1) / b`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResolutionNode {
    pub index: usize,
    pub a: u64,
    pub b: u64,
    /// Node whose exceptional divisor contains the blown-up point.
    pub parent: Option<usize>,
    /// Chart and direction leading to the blown-up point.
    pub center: String,
    /// Degree over `Q` of the field of definition of the center.
    pub field_degree: usize,
}

#[derive(Debug, Clone, Copy)]
struct Axis {
    a: u64,
    b: u64,
}

#[derive(Debug, Clone)]
struct LocalPoint {
    field: Option<Arc<NumberField>>,
    comps: Vec<(APoly, u32)>,
    /// Exceptional divisor `{x = 0}` through the point.
    x_axis: Option<Axis>,
    /// Exceptional divisor `{y = 0}` through the point.
    y_axis: Option<Axis>,
    parent: Option<usize>,
    center: String,
}

fn order(g: &APoly) -> u32 {
    g.order().expect("nonzero component")
}

fn tangent_cone(comps: &[(APoly, u32)]) -> APoly {
    comps.iter().fold(APoly::one(), |acc, (g, _)| &acc * &g.initial_form())
}

/// `T(1, t)` for a form `T(x, y)` of degree `s`.
fn dehomogenize(t: &APoly, s: u32) -> UPoly<AlgNum> {
    UPoly::new((0..=s).map(|j| t.coeff(&[s - j, j])).collect())
}

fn is_snc(p: &LocalPoint) -> bool {
    let s: u32 = p.comps.iter().map(|(g, _)| order(g)).sum();
    let e = p.x_axis.is_some() as u32 + p.y_axis.is_some() as u32;
    match (s, e) {
        (0, _) => true,
        (1, 0) => true,
        (1, 1) => {
            let g = &p.comps.iter().find(|(g, _)| order(g) == 1).expect("smooth branch").0;
            if p.x_axis.is_some() {
                !g.coeff(&[0, 1]).is_zero()
            } else {
                !g.coeff(&[1, 0]).is_zero()
            }
        }
        (2, 0) => {
            let t = tangent_cone(&p.comps);
            dehomogenize(&t, 2).is_squarefree() && !t.coeff(&[0, 2]).is_zero()
                || t.coeff(&[0, 2]).is_zero() && !t.coeff(&[1, 1]).is_zero()
        }
        _ => false,
    }
}

fn strict_transform(comps: &[(APoly, u32)], images: &[APoly; 2], exceptional: [u32; 2]) -> Vec<(APoly, u32)> {
    comps
        .iter()
        .filter_map(|(g, m)| {
            let o = order(g);
            let mono = [exceptional[0] * o, exceptional[1] * o];
            let h = g.substitute(images).div_monomial(&mono).expect("exact");
            h.coeff(&[0, 0]).is_zero().then_some((h, *m))
        })
        .collect()
}

fn to_alg(g: &crate::Poly2) -> APoly {
    g.map(|c| AlgNum::rational(c.clone()))
}

/// Threshold via blow-ups with the default depth bound.
pub fn blowup_lct(f: &CurveGerm) -> Result<LctReport, LctError> {
    blowup_lct_with_bound(f, DEFAULT_MAX_BLOWUPS)
}

pub fn blowup_lct_with_bound(f: &CurveGerm, max_blowups: usize) -> Result<LctReport, LctError> {
    let groups: Vec<(crate::Poly2, u32)> = bivariate::squarefree_factorization(f.poly())
        .into_iter()
        .filter(|(g, _)| g.coeff(&[0, 0]).is_zero())
        .collect();
    let mut best: Option<(Rational, Witness)> = None;
    let offer = |v: Rational, w: Witness, best: &mut Option<(Rational, Witness)>| {
        if best.as_ref().is_none_or(|(b, _)| v < *b) {
            *best = Some((v, w));
        }
    };
    for (_, m) in &groups {
        offer(
            Rational::new(1.into(), (*m).into()),
            Witness::Component { multiplicity: *m },
            &mut best,
        );
    }
    let mut nodes: Vec<ResolutionNode> = Vec::new();
    let mut stack = vec![LocalPoint {
        field: None,
        comps: groups.iter().map(|(g, m)| (to_alg(g), *m)).collect(),
        x_axis: None,
        y_axis: None,
        parent: None,
        center: "origin".into(),
    }];
    while let Some(p) = stack.pop() {
        if is_snc(&p) {
            continue;
        }
        if nodes.len() >= max_blowups {
            return Err(LctError::DepthExceeded { bound: max_blowups });
        }
        let axes = [p.x_axis, p.y_axis];
        let a = 1 + axes.iter().flatten().map(|ax| ax.a).sum::<u64>();
        let b = p
            .comps
            .iter()
            .map(|(g, m)| u64::from(*m) * u64::from(order(g)))
            .sum::<u64>()
            + axes.iter().flatten().map(|ax| ax.b).sum::<u64>();
        let index = nodes.len();
        nodes.push(ResolutionNode {
            index,
            a,
            b,
            parent: p.parent,
            center: p.center.clone(),
            field_degree: p.field.as_ref().map_or(1, |k| k.degree()),
        });
        offer(
            Rational::new((a + 1).into(), b.into()),
            Witness::Node { index, a, b },
            &mut best,
        );
        let new_axis = Some(Axis { a, b });
        let s: u32 = p.comps.iter().map(|(g, _)| order(g)).sum();
        let t = tangent_cone(&p.comps);
        let t1 = dehomogenize(&t, s);
        let x = APoly::var(0);
        let y = APoly::var(1);
        let mut children = Vec::new();
        for factor in factor_over(&t1, p.field.as_ref()) {
            let (field, comps, c) = match factor.root() {
                Root::InField(c) => (p.field.clone(), p.comps.clone(), c),
                Root::Extended { embed, root } => {
                    let comps = p.comps.iter().map(|(g, m)| (g.map(|v| embed.map(v)), *m)).collect();
                    (Some(embed.target().clone()), comps, root)
                }
            };
            let shifted = &y + &APoly::constant(c.clone());
            let images = [x.clone(), &x * &shifted];
            let comps = strict_transform(&comps, &images, [1, 0]);
            let y_axis = if c.is_zero() { p.y_axis } else { None };
            children.push(LocalPoint {
                field,
                comps,
                x_axis: new_axis,
                y_axis,
                parent: Some(index),
                center: format!("x-chart y = x*(y + {c})"),
            });
        }
        if t.coeff(&[0, s]).is_zero() {
            let images = [&x * &y, y.clone()];
            children.push(LocalPoint {
                field: p.field.clone(),
                comps: strict_transform(&p.comps, &images, [0, 1]),
                x_axis: p.x_axis,
                y_axis: new_axis,
                parent: Some(index),
                center: "y-chart x = x*y".into(),
            });
        }
        // visit in creation order
        stack.extend(children.into_iter().rev());
    }
    let (value, witness) = best.expect("germ has a component through the origin");
    Ok(LctReport {
        value,
        method: Method::Blowup,
        witness,
        exact: true,
        nodes,
        polygon: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn lct(s: &str) -> LctReport {
        blowup_lct(&CurveGerm::parse(s).unwrap()).unwrap()
    }

    #[test]
    fn golden_values() {
        assert_eq!(lct("x*y").value, rat(1, 1));
        assert_eq!(lct("x*y*(x+y)").value, rat(2, 3));
        assert_eq!(lct("(x+y)^2").value, rat(1, 2));
        assert_eq!(lct("y^2 - x^5").value, rat(7, 10));
        assert_eq!(lct("x^2*y^3").value, rat(1, 3));
    }

    #[test]
    fn cusp_nodes() {
        let r = lct("y^2 - x^3");
        assert_eq!(r.value, rat(5, 6));
        let ab: Vec<(u64, u64)> = r.nodes.iter().map(|n| (n.a, n.b)).collect();
        assert_eq!(ab, vec![(1, 2), (2, 3), (4, 6)]);
        assert!(matches!(r.witness, Witness::Node { index: 2, .. }));
    }

    #[test]
    fn irrational_directions() {
        // four lines with tangents t^2 = 2 and t^2 = 3
        let r = lct("(y^2 - 2*x^2)*(y^2 - 3*x^2)");
        assert_eq!(r.value, rat(1, 2));
        // ordinary triple point with irreducible tangent cone
        let r = lct("y^3 - 2*x^3 + x^4");
        assert_eq!(r.value, rat(2, 3));
        assert_eq!(r.nodes.len(), 1);
    }

    #[test]
    fn depth_bound() {
        let f = CurveGerm::parse("y^2 - x^3").unwrap();
        assert!(matches!(
            blowup_lct_with_bound(&f, 2),
            Err(LctError::DepthExceeded { bound: 2 })
        ));
    }
}
