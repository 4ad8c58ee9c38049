use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    Polygon { n: usize },
    Surface { genus: usize, punctures: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub tail: usize,
    pub head: usize,
    pub boundary: bool,
}

/// A side of a triangle: the edge it lies on and whether it runs tail → head.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Side {
    pub edge: usize,
    pub forward: bool,
}

/// Corners in counterclockwise order; side `k` runs from corner `k` to corner `k+1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Triangle {
    pub corners: [usize; 3],
    pub sides: [Side; 3],
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MarkedPoint {
    Edge { edge: usize, at_tail: bool },
    Center { tri: usize },
}

/// An ideal triangulation of a polygon or a punctured surface.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triangulation {
    kind: Kind,
    edges: Vec<Edge>,
    triangles: Vec<Triangle>,
    boundary_coords: bool,
}

/// The quadrilateral around an internal edge: `P1P2P3P4` counterclockwise,
/// diagonal `P1P3`, triangle `x = P1P2P3` and `y = P1P3P4`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quad {
    pub edge: usize,
    pub p: [usize; 4],
    pub x: usize,
    pub y: usize,
    /// Sides `P1P2, P2P3, P3P4, P4P1`.
    pub sides: [Side; 4],
}

impl Triangulation {
    pub fn new(kind: Kind, edges: Vec<Edge>, triangles: Vec<Triangle>, boundary_coords: bool) -> Result<Triangulation> {
        let t = Triangulation { kind, edges, triangles, boundary_coords };
        t.validate()?;
        Ok(t)
    }

    /// Fan triangulation of the `n`-gon from vertex 0.
    pub fn polygon(n: usize) -> Result<Triangulation> {
        let tris: Vec<[usize; 3]> = (1..n.saturating_sub(1)).map(|i| [0, i, i + 1]).collect();
        Triangulation::polygon_from_triangles(n, &tris)
    }

    /// Polygon with vertices `0..n` counterclockwise and the given triangles.
    pub fn polygon_from_triangles(n: usize, tris: &[[usize; 3]]) -> Result<Triangulation> {
        if n < 3 {
            return Err(Error::InvalidTriangulation(format!("polygon needs 3 vertices, got {n}")));
        }
        if tris.len() != n - 2 {
            return Err(Error::InvalidTriangulation(format!("{n}-gon needs {} triangles", n - 2)));
        }
        let mut edges: Vec<Edge> = (0..n)
            .map(|i| {
                let (a, b) = (i, (i + 1) % n);
                Edge { tail: a.min(b), head: a.max(b), boundary: true }
            })
            .collect();
        let mut diagonals = BTreeSet::new();
        for t in tris {
            if t.iter().any(|&v| v >= n) {
                return Err(Error::InvalidTriangulation(format!("vertex out of range in {t:?}")));
            }
            let mut c = *t;
            c.sort_unstable();
            for (a, b) in [(c[0], c[1]), (c[1], c[2]), (c[0], c[2])] {
                if b - a != 1 && !(a == 0 && b == n - 1) {
                    diagonals.insert((a, b));
                }
            }
        }
        for &(a, b) in &diagonals {
            edges.push(Edge { tail: a, head: b, boundary: false });
        }
        let find = |a: usize, b: usize| -> Result<Side> {
            let (lo, hi) = (a.min(b), a.max(b));
            let edge = edges
                .iter()
                .position(|e| e.tail == lo && e.head == hi)
                .ok_or_else(|| Error::InvalidTriangulation(format!("missing edge {lo}.{hi}")))?;
            Ok(Side { edge, forward: a < b })
        };
        let mut triangles = Vec::new();
        for t in tris {
            let mut c = *t;
            c.sort_unstable();
            let sides = [find(c[0], c[1])?, find(c[1], c[2])?, find(c[2], c[0])?];
            triangles.push(Triangle { corners: c, sides });
        }
        Triangulation::new(Kind::Polygon { n }, edges, triangles, true)
    }

    /// Closed surface of genus `g` with `s ≥ 1` punctures (`s ≥ 3` when `g = 0`).
    pub fn surface(genus: usize, punctures: usize) -> Result<Triangulation> {
        let kind = Kind::Surface { genus, punctures };
        let mut t = if genus == 0 {
            if punctures < 3 {
                return Err(Error::InvalidTriangulation("sphere needs at least 3 punctures".into()));
            }
            let edges = vec![
                Edge { tail: 0, head: 1, boundary: false },
                Edge { tail: 1, head: 2, boundary: false },
                Edge { tail: 2, head: 0, boundary: false },
            ];
            let f = |edge| Side { edge, forward: true };
            let b = |edge| Side { edge, forward: false };
            let triangles = vec![
                Triangle { corners: [0, 1, 2], sides: [f(0), f(1), f(2)] },
                Triangle { corners: [0, 2, 1], sides: [b(2), b(1), b(0)] },
            ];
            Triangulation { kind, edges, triangles, boundary_coords: false }
        } else {
            if punctures < 1 {
                return Err(Error::InvalidTriangulation("need at least one puncture".into()));
            }
            Triangulation { kind, ..glued_polygon(genus) }
        };
        let have = if genus == 0 { 3 } else { 1 };
        for p in have..punctures {
            let last = t.triangles.len() - 1;
            t.insert_puncture(last, p);
        }
        t.validate()?;
        Ok(t)
    }

    fn insert_puncture(&mut self, tri: usize, p: usize) {
        let Triangle { corners: [a, b, c], sides: [sa, sb, sc] } = self.triangles[tri];
        let base = self.edges.len();
        for &v in &[a, b, c] {
            self.edges.push(Edge { tail: v, head: p, boundary: false });
        }
        let (ea, eb, ec) = (base, base + 1, base + 2);
        let fw = |edge| Side { edge, forward: true };
        let bw = |edge| Side { edge, forward: false };
        self.triangles[tri] = Triangle { corners: [a, b, p], sides: [sa, fw(eb), bw(ea)] };
        self.triangles.push(Triangle { corners: [b, c, p], sides: [sb, fw(ec), bw(eb)] });
        self.triangles.push(Triangle { corners: [c, a, p], sides: [sc, fw(ea), bw(ec)] });
    }

    /// Drop the coordinates carried by boundary sides.
    pub fn without_boundary_coords(mut self) -> Triangulation {
        self.boundary_coords = false;
        self
    }

    pub fn with_boundary_coords(mut self, on: bool) -> Triangulation {
        self.boundary_coords = on;
        self
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn is_polygon(&self) -> bool {
        matches!(self.kind, Kind::Polygon { .. })
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn triangles(&self) -> &[Triangle] {
        &self.triangles
    }

    pub fn boundary_coords(&self) -> bool {
        self.boundary_coords
    }

    pub fn internal_edges(&self) -> Vec<usize> {
        (0..self.edges.len()).filter(|&e| !self.edges[e].boundary).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        match self.kind {
            Kind::Polygon { .. } => 1,
            Kind::Surface { genus, punctures } => 2 - 2 * genus as i64 - punctures as i64,
        }
    }

    fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidTriangulation(m));
        let mut uses = vec![Vec::new(); self.edges.len()];
        for (ti, t) in self.triangles.iter().enumerate() {
            for k in 0..3 {
                let s = t.sides[k];
                let Some(e) = self.edges.get(s.edge) else {
                    return bad(format!("triangle {ti} uses unknown edge {}", s.edge));
                };
                let (from, to) = (t.corners[k], t.corners[(k + 1) % 3]);
                let ends = if s.forward { (e.tail, e.head) } else { (e.head, e.tail) };
                if ends != (from, to) {
                    return bad(format!("triangle {ti} side {k} does not match edge {}", s.edge));
                }
                uses[s.edge].push((ti, s.forward));
            }
        }
        for (i, (e, u)) in self.edges.iter().zip(&uses).enumerate() {
            let ok = match (e.boundary, u.as_slice()) {
                (true, [_]) => true,
                (false, [(_, f1), (_, f2)]) => f1 != f2,
                _ => false,
            };
            if !ok {
                return bad(format!("edge {i} is not glued correctly"));
            }
        }
        if let Kind::Surface { .. } = self.kind {
            let v = self.edges.len() as i64;
            let f = self.triangles.len() as i64;
            if 3 * f != 2 * v || f != -2 * self.euler_characteristic() {
                return bad("Euler characteristic mismatch".into());
            }
        }
        Ok(())
    }

    /// Name component for an edge: `i.j` for polygons, the index otherwise.
    pub fn edge_key(&self, e: usize) -> String {
        let edge = &self.edges[e];
        if self.is_polygon() {
            format!("{}.{}", edge.tail, edge.head)
        } else {
            e.to_string()
        }
    }

    pub fn tri_key(&self, t: usize) -> String {
        if self.is_polygon() {
            let mut c = self.triangles[t].corners;
            c.sort_unstable();
            format!("{}.{}.{}", c[0], c[1], c[2])
        } else {
            t.to_string()
        }
    }

    pub fn edge_by_key(&self, key: &str) -> Result<usize> {
        let unknown = || Error::InvalidTriangulation(format!("no edge {key}"));
        if self.is_polygon() {
            let (a, b) = key.split_once('.').ok_or_else(unknown)?;
            let a: usize = a.parse().map_err(|_| unknown())?;
            let b: usize = b.parse().map_err(|_| unknown())?;
            let (lo, hi) = (a.min(b), a.max(b));
            self.edges.iter().position(|e| e.tail == lo && e.head == hi).ok_or_else(unknown)
        } else {
            let e: usize = key.parse().map_err(|_| unknown())?;
            if e < self.edges.len() {
                Ok(e)
            } else {
                Err(unknown())
            }
        }
    }

    pub fn point_name(&self, p: MarkedPoint) -> String {
        match p {
            MarkedPoint::Center { tri } => format!("tri:{}:center", self.tri_key(tri)),
            MarkedPoint::Edge { edge, at_tail } => {
                let e = &self.edges[edge];
                let end = match (e.tail == e.head, at_tail) {
                    (false, true) => e.tail.to_string(),
                    (false, false) => e.head.to_string(),
                    (true, true) => "tail".to_string(),
                    (true, false) => "head".to_string(),
                };
                format!("edge:{}:near:{}", self.edge_key(edge), end)
            }
        }
    }

    fn carries_coords(&self, e: usize) -> bool {
        !self.edges[e].boundary || self.boundary_coords
    }

    /// The index set I₃: two points per coordinate-carrying edge, then the centers.
    pub fn marked_points(&self) -> Vec<MarkedPoint> {
        let mut out = Vec::new();
        for e in 0..self.edges.len() {
            if self.carries_coords(e) {
                out.push(MarkedPoint::Edge { edge: e, at_tail: true });
                out.push(MarkedPoint::Edge { edge: e, at_tail: false });
            }
        }
        out.extend((0..self.triangles.len()).map(|tri| MarkedPoint::Center { tri }));
        out
    }

    pub fn point_names(&self) -> Vec<String> {
        self.marked_points().into_iter().map(|p| self.point_name(p)).collect()
    }

    pub fn center_name(&self, t: usize) -> String {
        self.point_name(MarkedPoint::Center { tri: t })
    }

    /// Point on side `k` of triangle `t`, near its start (`near_start`) or end.
    pub fn side_point(&self, t: usize, k: usize, near_start: bool) -> Option<String> {
        self.point_on(self.triangles[t].sides[k], near_start)
    }

    pub fn point_on(&self, s: Side, near_start: bool) -> Option<String> {
        if !self.carries_coords(s.edge) {
            return None;
        }
        Some(self.point_name(MarkedPoint::Edge { edge: s.edge, at_tail: s.forward == near_start }))
    }

    /// The six edge points `u_0..u_5` of a triangle: `u_{2k}` near the start of side `k`.
    pub fn triangle_points(&self, t: usize) -> [Option<String>; 6] {
        std::array::from_fn(|i| self.side_point(t, i / 2, i % 2 == 0))
    }

    pub fn quad(&self, e: usize) -> Result<Quad> {
        if e >= self.edges.len() || self.edges[e].boundary {
            return Err(Error::NotInternal(format!("edge {e} is not internal")));
        }
        let mut occ = Vec::new();
        for (ti, t) in self.triangles.iter().enumerate() {
            for k in 0..3 {
                if t.sides[k].edge == e {
                    occ.push((ti, k, t.sides[k].forward));
                }
            }
        }
        let (y, ky) = occ.iter().find(|o| o.2).map(|o| (o.0, o.1)).unwrap();
        let (x, kx) = occ.iter().find(|o| !o.2).map(|o| (o.0, o.1)).unwrap();
        if x == y {
            return Err(Error::SelfFolded("flip not supported at self-glued edge".into()));
        }
        let (tx, ty) = (&self.triangles[x], &self.triangles[y]);
        let p1 = ty.corners[ky];
        let p3 = ty.corners[(ky + 1) % 3];
        let p4 = ty.corners[(ky + 2) % 3];
        let p2 = tx.corners[(kx + 2) % 3];
        let sides = [tx.sides[(kx + 1) % 3], tx.sides[(kx + 2) % 3], ty.sides[(ky + 1) % 3], ty.sides[(ky + 2) % 3]];
        Ok(Quad { edge: e, p: [p1, p2, p3, p4], x, y, sides })
    }

    /// Exchange the diagonal of the quadrilateral around `e`.
    ///
    /// The edge keeps its index; triangle `x` becomes `P1P2P4` and `y` becomes `P2P3P4`.
    pub fn flip(&self, e: usize) -> Result<Triangulation> {
        let q = self.quad(e)?;
        let [p1, p2, p3, p4] = q.p;
        let tail_at_p4 = new_tail_at_p4(&q);
        let mut out = self.clone();
        out.edges[e] = if tail_at_p4 {
            Edge { tail: p4, head: p2, boundary: false }
        } else {
            Edge { tail: p2, head: p4, boundary: false }
        };
        let d = |forward| Side { edge: e, forward };
        out.triangles[q.x] = Triangle { corners: [p1, p2, p4], sides: [q.sides[0], d(!tail_at_p4), q.sides[3]] };
        out.triangles[q.y] = Triangle { corners: [p2, p3, p4], sides: [q.sides[1], q.sides[2], d(tail_at_p4)] };
        out.validate()?;
        Ok(out)
    }

    pub fn flip_key(&self, key: &str) -> Result<Triangulation> {
        self.flip(self.edge_by_key(key)?)
    }

    /// Internal edges of a polygon as sorted vertex pairs.
    pub fn diagonals(&self) -> BTreeSet<(usize, usize)> {
        self.edges.iter().filter(|e| !e.boundary).map(|e| (e.tail, e.head)).collect()
    }
}

/// Orientation of the new diagonal `P2P4`: smaller vertex first, `P4 → P2` for loops.
pub fn new_tail_at_p4(q: &Quad) -> bool {
    q.p[1] == q.p[3] || q.p[3] < q.p[1]
}

/// Fan triangulation of the 4g-gon glued by `a1 b1 a1⁻¹ b1⁻¹ …`, one puncture.
fn glued_polygon(genus: usize) -> Triangulation {
    let m = 4 * genus;
    let mut edges = Vec::new();
    let mut side_of = vec![Side { edge: 0, forward: true }; m];
    for j in 0..genus {
        for (off, partner) in [(0, 2), (1, 3)] {
            let id = edges.len();
            edges.push(Edge { tail: 0, head: 0, boundary: false });
            side_of[4 * j + off] = Side { edge: id, forward: true };
            side_of[4 * j + partner] = Side { edge: id, forward: false };
        }
    }
    let diag_base = edges.len();
    for _ in 2..=(m - 2) {
        edges.push(Edge { tail: 0, head: 0, boundary: false });
    }
    let diag = |i: usize, forward| Side { edge: diag_base + i - 2, forward };
    let mut triangles = Vec::new();
    for i in 1..=(m - 2) {
        let s0 = if i == 1 { side_of[0] } else { diag(i, true) };
        let s2 = if i + 1 == m - 1 { side_of[m - 1] } else { diag(i + 1, false) };
        triangles.push(Triangle { corners: [0, 0, 0], sides: [s0, side_of[i], s2] });
    }
    Triangulation { kind: Kind::Surface { genus, punctures: 1 }, edges, triangles, boundary_coords: false }
}

#[derive(Serialize, Deserialize)]
struct TriJson {
    #[serde(skip_serializing_if = "Option::is_none")]
    polygon: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    genus: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    punctures: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    triangles: Option<Vec<[usize; 3]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    boundary_coordinates: Option<bool>,
}

impl Triangulation {
    pub fn from_json(v: &serde_json::Value) -> Result<Triangulation> {
        let j: TriJson = serde_json::from_value(v.clone())?;
        let t = match (j.polygon, j.genus, j.punctures) {
            (Some(n), None, None) => match &j.triangles {
                Some(ts) => Triangulation::polygon_from_triangles(n, ts)?,
                None => Triangulation::polygon(n)?,
            },
            (None, Some(g), Some(s)) => {
                if j.triangles.is_some() {
                    return Err(Error::Parse("explicit triangles are supported for polygons only".into()));
                }
                Triangulation::surface(g, s)?
            }
            _ => return Err(Error::Parse("expected {\"polygon\": n} or {\"genus\": g, \"punctures\": s}".into())),
        };
        Ok(match j.boundary_coordinates {
            Some(b) => t.with_boundary_coords(b),
            None => t,
        })
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut j = match self.kind {
            Kind::Polygon { n } => TriJson {
                polygon: Some(n),
                genus: None,
                punctures: None,
                triangles: Some(self.triangles.iter().map(|t| t.corners).collect()),
                boundary_coordinates: Some(self.boundary_coords),
            },
            Kind::Surface { genus, punctures } => TriJson {
                polygon: None,
                genus: Some(genus),
                punctures: Some(punctures),
                triangles: None,
                boundary_coordinates: None,
            },
        };
        if let Some(ts) = j.triangles.as_mut() {
            for t in ts.iter_mut() {
                t.sort_unstable();
            }
            ts.sort_unstable();
        }
        serde_json::to_value(j).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        for (g, s) in [(1, 1), (0, 3), (1, 2), (2, 1), (0, 5)] {
            let t = Triangulation::surface(g, s).unwrap();
            let chi = t.euler_characteristic();
            assert_eq!(t.marked_points().len() as i64, -8 * chi, "({g},{s})");
        }
        let q = Triangulation::polygon(4).unwrap();
        assert_eq!(q.marked_points().len(), 12);
        assert_eq!(q.clone().without_boundary_coords().marked_points().len(), 4);
        assert_eq!(Triangulation::polygon(5).unwrap().marked_points().len(), 17);
    }

    #[test]
    fn quad_labels() {
        let t = Triangulation::polygon(4).unwrap();
        let q = t.quad(t.edge_by_key("0.2").unwrap()).unwrap();
        assert_eq!(q.p, [0, 1, 2, 3]);
    }

    #[test]
    fn polygon_flip_twice() {
        let t = Triangulation::polygon(6).unwrap();
        let e = t.edge_by_key("0.3").unwrap();
        let f = t.flip(e).unwrap();
        assert!(f.diagonals().contains(&(2, 4)));
        let back = f.flip(e).unwrap();
        assert_eq!(back.diagonals(), t.diagonals());
        let mut a = back.point_names();
        let mut b = t.point_names();
        a.sort();
        b.sort();
        assert_eq!(a, b);
    }

    #[test]
    fn json_roundtrip() {
        let t = Triangulation::polygon_from_triangles(5, &[[0, 1, 3], [1, 2, 3], [0, 3, 4]]).unwrap();
        assert_eq!(Triangulation::from_json(&t.to_json()).unwrap().diagonals(), t.diagonals());
        let s = Triangulation::from_json(&serde_json::json!({"genus": 1, "punctures": 2})).unwrap();
        assert_eq!(s.triangles().len(), 4);
    }
}
