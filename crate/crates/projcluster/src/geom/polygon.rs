use super::proj::{add, cross, dot, from_ints, primitive, ratio, scale, sub, Flag, Vec3};
use super::ratios::{cross_ratio, fourth_with_cross_ratio, triple_ratio};
use crate::arith::Rat;
use crate::surface::{Assignment, MarkedPoint, Triangulation};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Deserialize;
use std::collections::{BTreeMap, VecDeque};

/// Inscribed vertices `A_i` and circumscribed sides `a_i`, with `A_i ∈ a_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolygonPair {
    pub points: Vec<Vec3>,
    pub lines: Vec<Vec3>,
}

impl PolygonPair {
    pub fn new(points: Vec<Vec3>, lines: Vec<Vec3>) -> Result<PolygonPair> {
        if points.len() != lines.len() || points.len() < 3 {
            return Err(Error::Degenerate("need n ≥ 3 points and as many lines".into()));
        }
        for (p, l) in points.iter().zip(&lines) {
            Flag::new(p.clone(), l.clone())?;
        }
        Ok(PolygonPair { points, lines })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn flag(&self, i: usize) -> Flag {
        Flag { point: self.points[i].clone(), line: self.lines[i].clone() }
    }

    /// Vertices of the circumscribed polygon, `a_i ∩ a_{i+1}`.
    pub fn outer_vertices(&self) -> Vec<Vec3> {
        let n = self.len();
        (0..n).map(|i| cross(&self.lines[i], &self.lines[(i + 1) % n])).collect()
    }

    /// Points and lines exchanged.
    pub fn dual(&self) -> PolygonPair {
        PolygonPair { points: self.lines.clone(), lines: self.points.clone() }
    }

    /// Same pair with primitive integer coordinates.
    pub fn normalized(&self) -> PolygonPair {
        let norm = |v: &Vec<Vec3>| v.iter().map(|x| from_ints(&primitive(x))).collect();
        PolygonPair { points: norm(&self.points), lines: norm(&self.lines) }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let ints = |v: &Vec<Vec3>| v.iter().map(|x| primitive(x).iter().map(int_json).collect::<Vec<_>>()).collect::<Vec<_>>();
        serde_json::json!({ "points": ints(&self.points), "lines": ints(&self.lines) })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<PolygonPair> {
        let j: PairJson = serde_json::from_value(v.clone())?;
        let parse = |v: &Vec<[serde_json::Value; 3]>| -> Result<Vec<Vec3>> {
            v.iter()
                .map(|t| Ok(from_ints(&[json_int(&t[0])?, json_int(&t[1])?, json_int(&t[2])?])))
                .collect()
        };
        PolygonPair::new(parse(&j.points)?, parse(&j.lines)?)
    }

    /// An affine chart in which the circumscribed polygon is convex and each `A_i` lies
    /// strictly inside the side `a_i`.
    pub fn convex_chart(&self) -> Option<Vec3> {
        candidate_charts(self).into_iter().find(|l| self.convex_in_chart(l))
    }

    pub fn is_convex_inscribed(&self) -> bool {
        self.convex_chart().is_some()
    }

    fn convex_in_chart(&self, chart: &Vec3) -> bool {
        let n = self.len();
        let lift = |v: &Vec3| -> Option<Vec3> {
            let s = dot(chart, v);
            if s.is_zero() {
                None
            } else if s.is_positive() {
                Some(v.clone())
            } else {
                Some(scale(v, &-Rat::one()))
            }
        };
        let Some(outer) = self.outer_vertices().iter().map(lift).collect::<Option<Vec<_>>>() else {
            return false;
        };
        let Some(inner) = self.points.iter().map(lift).collect::<Option<Vec<_>>>() else {
            return false;
        };
        for i in 0..n {
            let mut sign = 0;
            for (j, v) in outer.iter().enumerate() {
                if j == i || (j + 1) % n == i {
                    continue;
                }
                let s = dot(&self.lines[i], v);
                let s = if s.is_positive() { 1 } else if s.is_negative() { -1 } else { return false };
                if sign != 0 && s != sign {
                    return false;
                }
                sign = s;
            }
            let (prev, next) = (&outer[(i + n - 1) % n], &outer[i]);
            let base = cross(prev, next);
            let (Ok(alpha), Ok(beta)) = (ratio(&cross(&inner[i], next), &base), ratio(&cross(prev, &inner[i]), &base))
            else {
                return false;
            };
            if !alpha.is_positive() || !beta.is_positive() {
                return false;
            }
        }
        true
    }

    /// SVG drawing of both polygons in the convex chart (or `z = 1` if there is none).
    pub fn to_svg(&self) -> String {
        let chart = self.convex_chart().unwrap_or_else(|| super::proj::v3(0, 0, 1));
        let (u, w) = chart_basis(&chart);
        let project = |v: &Vec3| -> (f64, f64) {
            let s = dot(&chart, v);
            (to_f64(&(dot(&u, v) / &s)), to_f64(&(dot(&w, v) / &s)))
        };
        let outer: Vec<(f64, f64)> = self.outer_vertices().iter().map(project).collect();
        let inner: Vec<(f64, f64)> = self.points.iter().map(project).collect();
        let all = outer.iter().chain(&inner);
        let (mut x0, mut y0, mut x1, mut y1) = (f64::MAX, f64::MAX, f64::MIN, f64::MIN);
        for &(x, y) in all {
            x0 = x0.min(x);
            y0 = y0.min(y);
            x1 = x1.max(x);
            y1 = y1.max(y);
        }
        let size = (x1 - x0).max(y1 - y0).max(1e-12);
        let map = |&(x, y): &(f64, f64)| (20.0 + 360.0 * (x - x0) / size, 380.0 - 360.0 * (y - y0) / size);
        let poly = |pts: &[(f64, f64)], style: &str| {
            let coords: Vec<String> =
                pts.iter().map(map).map(|(x, y)| format!("{},{}", fmt12(x), fmt12(y))).collect();
            format!("  <polygon points=\"{}\" {style}/>\n", coords.join(" "))
        };
        let mut out = String::from(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"400\" height=\"400\" viewBox=\"0 0 400 400\">\n",
        );
        out += &poly(&outer, "fill=\"none\" stroke=\"black\"");
        out += &poly(&inner, "fill=\"none\" stroke=\"steelblue\"");
        for p in &inner {
            let (x, y) = map(p);
            out += &format!("  <circle cx=\"{}\" cy=\"{}\" r=\"3\" fill=\"steelblue\"/>\n", fmt12(x), fmt12(y));
        }
        out += "</svg>\n";
        out
    }
}

#[derive(Deserialize)]
struct PairJson {
    points: Vec<[serde_json::Value; 3]>,
    lines: Vec<[serde_json::Value; 3]>,
}

/// Integers that do not fit in 64 bits are written as decimal strings.
fn int_json(x: &BigInt) -> serde_json::Value {
    match x.to_i64() {
        Some(v) => v.into(),
        None => x.to_string().into(),
    }
}

fn json_int(v: &serde_json::Value) -> Result<BigInt> {
    let bad = || Error::Parse(format!("expected an integer, got {v}"));
    match v {
        serde_json::Value::Number(n) => n.as_i64().map(BigInt::from).ok_or_else(bad),
        serde_json::Value::String(s) => s.parse().map_err(|_| bad()),
        _ => Err(bad()),
    }
}

fn candidate_charts(pp: &PolygonPair) -> Vec<Vec3> {
    let mut out: Vec<Vec3> = (0..3).map(|i| std::array::from_fn(|j| Rat::from_integer(((i == j) as i64).into()))).collect();
    let n = pp.len().min(12);
    for mask in 0u32..(1 << n) {
        let mut l = [Rat::zero(), Rat::zero(), Rat::zero()];
        for i in 0..n {
            l = if mask >> i & 1 == 0 { add(&l, &pp.lines[i]) } else { sub(&l, &pp.lines[i]) };
        }
        out.push(l);
    }
    for i in 0..pp.len() {
        for j in 0..pp.len() {
            if i != j {
                out.push(add(&pp.lines[i], &scale(&pp.lines[j], &Rat::new(1.into(), 1000.into()))));
            }
        }
    }
    out
}

fn chart_basis(chart: &Vec3) -> (Vec3, Vec3) {
    let e: Vec<Vec3> = (0..3).map(|i| std::array::from_fn(|j| Rat::from_integer(((i == j) as i64).into()))).collect();
    for a in 0..3 {
        for b in (a + 1)..3 {
            if !super::proj::det(chart, &e[a], &e[b]).is_zero() {
                return (e[a].clone(), e[b].clone());
            }
        }
    }
    (e[0].clone(), e[1].clone())
}

fn to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

fn fmt12(x: f64) -> String {
    let s = format!("{:.12}", x);
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" { "0".into() } else { s.into() }
}

fn polygon_size(tri: &Triangulation) -> Result<usize> {
    match tri.kind() {
        crate::surface::Kind::Polygon { n } => Ok(n),
        _ => Err(Error::InvalidTriangulation("polygon pairs need a polygon triangulation".into())),
    }
}

/// For each diagonal: its edge index, endpoints and the third vertices of its two triangles.
fn diagonal_quads(tri: &Triangulation) -> Vec<(usize, usize, usize, [usize; 2])> {
    let mut out = Vec::new();
    for e in tri.internal_edges() {
        let edge = tri.edges()[e];
        let thirds: Vec<usize> = tri
            .triangles()
            .iter()
            .filter(|t| t.sides.iter().any(|s| s.edge == e))
            .map(|t| *t.corners.iter().find(|&&c| c != edge.tail && c != edge.head).unwrap())
            .collect();
        out.push((e, edge.tail, edge.head, [thirds[0], thirds[1]]));
    }
    out
}

/// The quad vertices counterclockwise after and before `p`.
fn neighbours(n: usize, p: usize, others: [usize; 3]) -> (usize, usize) {
    let d = |v: usize| (v + n - p) % n;
    let next = *others.iter().min_by_key(|&&v| d(v)).unwrap();
    let prev = *others.iter().max_by_key(|&&v| d(v)).unwrap();
    (next, prev)
}

fn edge_point(tri: &Triangulation, e: usize, near: usize) -> String {
    tri.point_name(MarkedPoint::Edge { edge: e, at_tail: tri.edges()[e].tail == near })
}

/// Cross-ratio of the lines through `A_p`: `a_p`, towards the next vertex, along the
/// diagonal, towards the previous vertex.
fn edge_value(pp: &PolygonPair, n: usize, p: usize, q: usize, thirds: [usize; 2]) -> Result<Rat> {
    let (next, prev) = neighbours(n, p, [q, thirds[0], thirds[1]]);
    let a = &pp.points[p];
    cross_ratio(&pp.lines[p], &cross(a, &pp.points[next]), &cross(a, &pp.points[q]), &cross(a, &pp.points[prev]))
}

/// Values at the internal marked points: triple ratios at centers and cross-ratios on diagonals.
pub fn coords_of_polygon_pair(pp: &PolygonPair, tri: &Triangulation) -> Result<Assignment> {
    let n = polygon_size(tri)?;
    if pp.len() != n {
        return Err(Error::Degenerate(format!("{}-gon pair for a {n}-gon triangulation", pp.len())));
    }
    let mut out = BTreeMap::new();
    for (t, triangle) in tri.triangles().iter().enumerate() {
        let [i, j, k] = triangle.corners;
        out.insert(tri.center_name(t), triple_ratio(&pp.flag(i), &pp.flag(k), &pp.flag(j))?);
    }
    for (e, a, b, thirds) in diagonal_quads(tri) {
        out.insert(edge_point(tri, e, a), edge_value(pp, n, a, b, thirds)?);
        out.insert(edge_point(tri, e, b), edge_value(pp, n, b, a, thirds)?);
    }
    Ok(out)
}

/// Inverse of [`coords_of_polygon_pair`] for positive values.
pub fn polygon_pair_from_coords(values: &Assignment, tri: &Triangulation) -> Result<PolygonPair> {
    for (name, v) in values {
        if !v.is_positive() {
            return Err(Error::NonPositive(format!("{name} = {v}")));
        }
    }
    realize(values, tri)
}

/// Reconstruction without the positivity check; the result may fail to be convex.
pub fn realize(values: &Assignment, tri: &Triangulation) -> Result<PolygonPair> {
    let n = polygon_size(tri)?;
    let get = |name: &String| values.get(name).cloned().ok_or_else(|| Error::UnknownVariable(name.clone()));
    let mut flags: Vec<Option<Flag>> = vec![None; n];
    let tris = tri.triangles();
    let [i, j, k] = tris[0].corners;
    let x = get(&tri.center_name(0))?;
    let one = Rat::one();
    flags[i] = Some(Flag::new(super::proj::v3(1, -1, 1), [one.clone(), &one + &x, x])?);
    flags[k] = Some(Flag::new(super::proj::v3(0, 0, 1), super::proj::v3(1, 0, 0))?);
    flags[j] = Some(Flag::new(super::proj::v3(1, 0, 0), super::proj::v3(0, 0, 1))?);

    let quads = diagonal_quads(tri);
    let mut done = vec![false; tris.len()];
    done[0] = true;
    let mut queue = VecDeque::from([0usize]);
    while let Some(t) = queue.pop_front() {
        for &(e, a, b, thirds) in &quads {
            if !tris[t].sides.iter().any(|s| s.edge == e) {
                continue;
            }
            let Some(u) = (0..tris.len()).find(|&u| !done[u] && tris[u].sides.iter().any(|s| s.edge == e)) else {
                continue;
            };
            let s = *tris[u].corners.iter().find(|&&c| c != a && c != b).unwrap();
            let known = |v: usize| flags[v].clone().unwrap();
            let through = |p: usize, q: usize| -> Result<Vec3> {
                let (next, prev) = neighbours(n, p, [q, thirds[0], thirds[1]]);
                let fp = known(p);
                let z = get(&edge_point(tri, e, p))?;
                let l = |v: usize| cross(&fp.point, &known(v).point);
                if next == s {
                    fourth_with_cross_ratio(&l(q), &l(prev), &fp.line, &z)
                } else {
                    fourth_with_cross_ratio(&fp.line, &l(next), &l(q), &z)
                }
            };
            let point = cross(&through(a, b)?, &through(b, a)?);
            // Solve the center value for the line through the new point.
            let c = tris[u].corners;
            let center = get(&tri.center_name(u))?;
            let order = [c[0], c[2], c[1]];
            let start = order.iter().position(|&v| v == s).unwrap();
            let (fb, fc) = (known(order[(start + 1) % 3]), known(order[(start + 2) % 3]));
            let den = dot(&fb.line, &fc.point) * dot(&fc.line, &point);
            if den.is_zero() {
                return Err(Error::Degenerate(format!("cannot place vertex {s}")));
            }
            let r = center * dot(&fb.line, &point) * dot(&fc.line, &fb.point) / den;
            let line = cross(&point, &sub(&fb.point, &scale(&fc.point, &r)));
            flags[s] = Some(Flag::new(point, line)?);
            done[u] = true;
            queue.push_back(u);
        }
    }
    let flags: Vec<Flag> = flags.into_iter().collect::<Option<Vec<_>>>().ok_or_else(|| {
        Error::InvalidTriangulation("triangulation is not connected".into())
    })?;
    let pp = PolygonPair::new(flags.iter().map(|f| f.point.clone()).collect(), flags.into_iter().map(|f| f.line).collect())?;
    Ok(pp.normalized())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn values(tri: &Triangulation, seed: i64) -> Assignment {
        let names = tri.clone().without_boundary_coords().point_names();
        names.into_iter().enumerate().map(|(i, n)| (n, rat((i as i64 * 7 + seed) % 11 + 1, (i as i64 * 3 + seed) % 5 + 1))).collect()
    }

    #[test]
    fn round_trip() {
        for n in 3..=6 {
            let tri = Triangulation::polygon(n).unwrap();
            let v = values(&tri, n as i64);
            let pp = polygon_pair_from_coords(&v, &tri).unwrap();
            assert_eq!(coords_of_polygon_pair(&pp, &tri).unwrap(), v, "n = {n}");
            assert!(pp.is_convex_inscribed(), "n = {n}");
        }
    }

    #[test]
    fn zigzag_round_trip() {
        let tri = Triangulation::polygon_from_triangles(6, &[[0, 1, 5], [1, 4, 5], [1, 2, 4], [2, 3, 4]]).unwrap();
        let v = values(&tri, 3);
        let pp = polygon_pair_from_coords(&v, &tri).unwrap();
        assert_eq!(coords_of_polygon_pair(&pp, &tri).unwrap(), v);
    }

    #[test]
    fn negative_center_is_not_convex() {
        let tri = Triangulation::polygon(3).unwrap();
        let v: Assignment = [(tri.center_name(0), rat(-2, 1))].into_iter().collect();
        assert!(polygon_pair_from_coords(&v, &tri).is_err());
        let pp = realize(&v, &tri).unwrap();
        assert!(!pp.is_convex_inscribed());
    }

    #[test]
    fn json_round_trip() {
        let tri = Triangulation::polygon(5).unwrap();
        let pp = polygon_pair_from_coords(&values(&tri, 1), &tri).unwrap();
        assert_eq!(PolygonPair::from_json(&pp.to_json()).unwrap(), pp);
        assert!(pp.to_svg().starts_with("<svg"));
    }

    fn apply(map: &crate::cluster::ClusterMap, v: &Assignment) -> Assignment {
        let point = map.source().vars().into_iter().map(|x| (x, v[&x.name()].clone())).collect();
        map.target().names().iter().cloned().zip(map.eval(&point).unwrap()).collect()
    }

    #[test]
    fn flips_agree_with_geometry() {
        let tri = Triangulation::polygon(5).unwrap().without_boundary_coords();
        let pp = polygon_pair_from_coords(&values(&tri, 4), &tri).unwrap();
        let before = coords_of_polygon_pair(&pp, &tri).unwrap();
        for e in tri.internal_edges() {
            let (after, map) = crate::surface::flip_closed_form(&tri, e).unwrap();
            assert_eq!(apply(&map, &before), coords_of_polygon_pair(&pp, &after).unwrap());
        }
    }

    #[test]
    fn duality_is_sigma() {
        for n in 3..=5 {
            let tri = Triangulation::polygon(n).unwrap().without_boundary_coords();
            let v = values(&tri, 2);
            let pp = polygon_pair_from_coords(&v, &tri).unwrap();
            let dual = coords_of_polygon_pair(&pp.dual(), &tri).unwrap();
            assert_eq!(dual, crate::surface::sigma_assignment(&tri, &v).unwrap(), "n = {n}");
            assert!(pp.dual().is_convex_inscribed());
        }
    }
}
