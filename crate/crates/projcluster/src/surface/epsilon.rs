use super::triangulation::Triangulation;
use crate::cluster::Seed;
use crate::Result;
use std::collections::HashMap;

/// Local ε pattern on the seven points of one triangle, indexed `u_0..u_5, c`.
pub type Pattern = [[i32; 7]; 7];

/// The pattern every triangle contributes: ε(c,u_{2k}) = −1, ε(c,u_{2k+1}) = +1,
/// ε(u_{2k+1},u_{2k+2}) = +1 around the corners, zero elsewhere.
pub fn triangle_pattern() -> Pattern {
    let mut p = [[0; 7]; 7];
    for i in 0..6 {
        let v = if i % 2 == 0 { -1 } else { 1 };
        p[6][i] = v;
        p[i][6] = -v;
    }
    for i in [1, 3, 5] {
        let j = (i + 1) % 6;
        p[i][j] = 1;
        p[j][i] = -1;
    }
    p
}

/// Seed on I₃ obtained by summing the triangle pattern over all triangles.
pub fn epsilon_of_triangulation(tri: &Triangulation) -> Result<Seed> {
    epsilon_with_pattern(tri, &triangle_pattern())
}

pub fn epsilon_with_pattern(tri: &Triangulation, pattern: &Pattern) -> Result<Seed> {
    let names = tri.point_names();
    let index: HashMap<&str, usize> = names.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
    let n = names.len();
    let mut eps = vec![vec![0; n]; n];
    for t in 0..tri.triangles().len() {
        let mut local: Vec<Option<usize>> =
            tri.triangle_points(t).iter().map(|p| p.as_ref().map(|s| index[s.as_str()])).collect();
        local.push(Some(index[tri.center_name(t).as_str()]));
        for i in 0..7 {
            for j in 0..7 {
                if let (Some(a), Some(b)) = (local[i], local[j]) {
                    if a != b {
                        eps[a][b] += pattern[i][j];
                    }
                }
            }
        }
    }
    Seed::new(names, eps)
}

/// Orbits of point pairs under the rotation of a triangle, as `(i, j)` representatives.
const ORBITS: [(usize, usize); 6] = [(6, 0), (6, 1), (1, 2), (0, 2), (0, 3), (1, 3)];

fn pattern_from_orbits(vals: &[i32; 6]) -> Pattern {
    let mut p = [[0; 7]; 7];
    for (&(i, j), &v) in ORBITS.iter().zip(vals) {
        for r in 0..3 {
            let rot = |a: usize| if a == 6 { 6 } else { (a + 2 * r) % 6 };
            let (a, b) = (rot(i), rot(j));
            p[a][b] = v;
            p[b][a] = -v;
        }
    }
    p
}

/// Exhaustive search over rotation-invariant patterns with entries in {−1, 0, 1}.
///
/// Pairs on the same side are held at zero. `accept` decides whether a pattern is admissible.
pub fn bootstrap_patterns(mut accept: impl FnMut(&Pattern) -> bool) -> Vec<Pattern> {
    let mut out = Vec::new();
    for code in 0..3usize.pow(ORBITS.len() as u32) {
        let mut vals = [0i32; 6];
        let mut c = code;
        for v in vals.iter_mut() {
            *v = (c % 3) as i32 - 1;
            c /= 3;
        }
        let p = pattern_from_orbits(&vals);
        if accept(&p) {
            out.push(p);
        }
    }
    out
}

/// Nonzero patterns for which the closed-form flip of the quadrilateral (boundary
/// coordinates included) preserves the bracket `{X_i, X_j} = c·ε_ij X_i X_j`.
///
/// Patterns are screened exactly at one rational point, and survivors are checked symbolically.
pub fn flip_compatible_patterns(c: &crate::Rat) -> Result<Vec<Pattern>> {
    use crate::cluster::{check_poisson_preserved, log_gradient, ClusterMap};
    let tri = Triangulation::polygon(4)?;
    let e = tri.edge_by_key("0.2")?;
    let (after, closed) = super::flip::flip_closed_form(&tri, e)?;
    let base = epsilon_of_triangulation(&tri)?;
    let point: HashMap<crate::Var, crate::Rat> =
        base.vars().into_iter().enumerate().map(|(i, v)| (v, crate::arith::rat(2 + i as i64, 3 + 2 * i as i64))).collect();
    let grads = closed
        .images()
        .iter()
        .map(|f| log_gradient(&base, f).iter().map(|g| g.eval_at(&point)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let mut candidates = Vec::new();
    for p in bootstrap_patterns(|p| p.iter().any(|r| r.iter().any(|&v| v != 0))) {
        let (src, tgt) = (epsilon_with_pattern(&tri, &p)?, epsilon_with_pattern(&after, &p)?);
        let n = src.len();
        let ok = (0..n).all(|i| {
            (i + 1..n).all(|j| {
                let mut s = crate::Rat::from_integer(0.into());
                for k in 0..n {
                    for l in 0..n {
                        let v = src.eps(k, l);
                        if v != 0 {
                            s += &grads[i][k] * &grads[j][l] * crate::Rat::from_integer(v.into());
                        }
                    }
                }
                s == crate::Rat::from_integer(tgt.eps(i, j).into())
            })
        });
        if ok {
            candidates.push((p, src, tgt));
        }
    }
    let mut out = Vec::new();
    for (p, src, tgt) in candidates {
        if check_poisson_preserved(&ClusterMap::new(src, tgt, closed.images().to_vec())?, c) {
            out.push(p);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pattern_is_rotation_invariant() {
        let p = triangle_pattern();
        let rot = |a: usize| if a == 6 { 6 } else { (a + 2) % 6 };
        for i in 0..7 {
            for j in 0..7 {
                assert_eq!(p[i][j], p[rot(i)][rot(j)]);
            }
        }
        assert!(bootstrap_patterns(|q| *q == p).len() == 1);
    }

    #[test]
    fn bootstrap_recovers_pattern() {
        let p = triangle_pattern();
        let neg = p.map(|r| r.map(|v| -v));
        let found = flip_compatible_patterns(&crate::arith::rat(2, 1)).unwrap();
        assert_eq!(found.len(), 2);
        assert!(found.contains(&p) && found.contains(&neg));
    }

    #[test]
    fn quadrilateral_entries() {
        let t = Triangulation::polygon(4).unwrap();
        let s = epsilon_of_triangulation(&t).unwrap();
        let e = |a: &str, b: &str| s.eps_named(a, b).unwrap();
        let (z, w) = ("edge:0.2:near:0", "edge:0.2:near:2");
        let (x, y) = ("tri:0.1.2:center", "tri:0.2.3:center");
        assert_eq!(e(z, w), 0);
        assert_eq!(e("edge:0.1:near:0", z), -1);
        assert_eq!(e("edge:0.3:near:0", z), 1);
        assert_eq!(e("edge:1.2:near:2", w), 1);
        assert_eq!(e("edge:2.3:near:2", w), -1);
        assert_eq!((e(x, z), e(x, w), e(y, z), e(y, w)), (1, -1, -1, 1));
    }
}
