use super::epsilon::epsilon_of_triangulation;
use super::triangulation::{MarkedPoint, Triangulation};
use super::Assignment;
use crate::arith::{RatFunc, Var};
use crate::cluster::ClusterMap;
use crate::{Error, Result};
use std::collections::HashMap;

/// The involution σ as a cluster map on I₃.
///
/// Centers go to their inverses. On an internal edge, let `X` be the triangle crossing it
/// from tail to head, `Y` the other one, `Z` the point near the head and `W` the point near
/// the tail; then `Z ↦ W·X(1+Y)/(1+X)` and `W ↦ Z·Y(1+X)/(1+Y)`. Boundary points are fixed.
pub fn sigma_map(tri: &Triangulation) -> Result<ClusterMap> {
    let seed = epsilon_of_triangulation(tri)?;
    let one = RatFunc::one();
    let mut images: HashMap<String, RatFunc> = HashMap::new();
    for t in 0..tri.triangles().len() {
        let c = tri.center_name(t);
        images.insert(c.clone(), RatFunc::named(&c).inv()?);
    }
    for e in tri.internal_edges() {
        let (mut x, mut y) = (None, None);
        for (ti, t) in tri.triangles().iter().enumerate() {
            for s in &t.sides {
                if s.edge == e {
                    if s.forward {
                        x = Some(ti);
                    } else {
                        y = Some(ti);
                    }
                }
            }
        }
        let (x, y) = (x.unwrap(), y.unwrap());
        let xv = RatFunc::named(&tri.center_name(x));
        let yv = RatFunc::named(&tri.center_name(y));
        let z = tri.point_name(MarkedPoint::Edge { edge: e, at_tail: false });
        let w = tri.point_name(MarkedPoint::Edge { edge: e, at_tail: true });
        let (px, py) = (&one + &xv, &one + &yv);
        let zi = &(&RatFunc::named(&w) * &xv) * &(&py / &px);
        let wi = &(&RatFunc::named(&z) * &yv) * &(&px / &py);
        images.insert(z, zi);
        images.insert(w, wi);
    }
    let imgs = seed.names().iter().map(|n| images.remove(n).unwrap_or_else(|| RatFunc::named(n))).collect();
    ClusterMap::new(seed.clone(), seed, imgs)
}

/// σ applied to a positive numeric assignment.
pub fn sigma_assignment(tri: &Triangulation, values: &Assignment) -> Result<Assignment> {
    let m = sigma_map(tri)?;
    let point: HashMap<Var, crate::Rat> = values.iter().map(|(k, v)| (Var::new(k), v.clone())).collect();
    for n in m.source().names() {
        if !values.contains_key(n) {
            return Err(Error::UnknownVariable(n.clone()));
        }
    }
    let vals = m.eval(&point)?;
    Ok(m.target().names().iter().cloned().zip(vals).collect())
}
