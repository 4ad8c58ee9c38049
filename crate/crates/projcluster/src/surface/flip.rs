use super::epsilon::epsilon_of_triangulation;
use super::triangulation::{new_tail_at_p4, MarkedPoint, Quad, Triangulation};
use crate::arith::RatFunc;
use crate::cluster::{mutation_sequence, ClusterMap, Seed};
use crate::Result;
use std::collections::HashMap;

/// Marked-point names of a flip quadrilateral.
///
/// `A,B` lie on `P1P2` (A near P1), `C,D` on `P2P3`, `E,F` on `P3P4`, `G,H` on `P4P1`
/// (H near P1); `Z` near P1 and `W` near P3 on the diagonal; `X`, `Y` the centers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadRoles {
    pub sides: [Option<String>; 8],
    pub x: String,
    pub y: String,
    pub z: String,
    pub w: String,
}

/// Names of the new coordinates after the flip.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlippedRoles {
    /// Center of `P1P2P4`.
    pub n1: String,
    /// Center of `P2P3P4`.
    pub n2: String,
    pub near_p2: String,
    pub near_p4: String,
}

pub const SIDE_LABELS: [&str; 8] = ["A", "B", "C", "D", "E", "F", "G", "H"];

impl QuadRoles {
    pub fn of(tri: &Triangulation, q: &Quad) -> QuadRoles {
        let sides = std::array::from_fn(|i| tri.point_on(q.sides[i / 2], i % 2 == 0));
        let pt = |at_tail| tri.point_name(MarkedPoint::Edge { edge: q.edge, at_tail });
        QuadRoles { sides, x: tri.center_name(q.x), y: tri.center_name(q.y), z: pt(true), w: pt(false) }
    }

    /// Role label (`A`..`H`, `X`, `Y`, `Z`, `W`) to name.
    pub fn labeled(&self) -> Vec<(&'static str, String)> {
        let mut out: Vec<(&'static str, String)> = SIDE_LABELS
            .iter()
            .zip(&self.sides)
            .filter_map(|(l, s)| s.clone().map(|s| (*l, s)))
            .collect();
        out.extend([("X", self.x.clone()), ("Y", self.y.clone()), ("Z", self.z.clone()), ("W", self.w.clone())]);
        out
    }
}

impl FlippedRoles {
    pub fn of(flipped: &Triangulation, q: &Quad) -> FlippedRoles {
        let t4 = new_tail_at_p4(q);
        let pt = |at_tail| flipped.point_name(MarkedPoint::Edge { edge: q.edge, at_tail });
        FlippedRoles {
            n1: flipped.center_name(q.x),
            n2: flipped.center_name(q.y),
            near_p2: pt(!t4),
            near_p4: pt(t4),
        }
    }
}

pub struct Flip {
    pub before: Triangulation,
    pub after: Triangulation,
    pub quad: Quad,
    pub roles: QuadRoles,
    pub new_roles: FlippedRoles,
}

impl Flip {
    pub fn new(tri: &Triangulation, edge: usize) -> Result<Flip> {
        let quad = tri.quad(edge)?;
        let after = tri.flip(edge)?;
        let roles = QuadRoles::of(tri, &quad);
        let new_roles = FlippedRoles::of(&after, &quad);
        Ok(Flip { before: tri.clone(), after, quad, roles, new_roles })
    }
}

/// The twelve flip formulas as functions of the role variables, keyed by role label.
pub fn flip_formulas(v: &HashMap<&str, RatFunc>) -> HashMap<&'static str, RatFunc> {
    let one = RatFunc::one();
    let (x, y, z, w) = (&v["X"], &v["Y"], &v["Z"], &v["W"]);
    let pz = &one + z;
    let pw = &one + w;
    let zx = z * x;
    let wy = w * y;
    let sz = &(&pz + &zx) + &(&zx * w);
    let sw = &(&pw + &wy) + &(&wy * z);
    let mut f = HashMap::new();
    f.insert("A", pz.clone());
    f.insert("B", &sz / &pz);
    f.insert("C", &(&pw * &zx) / &sz);
    f.insert("D", w / &pw);
    f.insert("E", pw.clone());
    f.insert("F", &sw / &pw);
    f.insert("G", &(&pz * &wy) / &sw);
    f.insert("H", z / &pz);
    f.insert("X'", &pz / &(&zx * &pw));
    f.insert("Y'", &pw / &(&wy * &pz));
    f.insert("Z'", &(x * &sw) / &sz);
    f.insert("W'", &(y * &sz) / &sw);
    f
}

/// Flip as a cluster map given by the closed-form formulas.
///
/// Side entries `A`..`H` are multiplicative factors; a point playing several roles
/// (as on a once-punctured torus) receives the product.
pub fn flip_closed_form(tri: &Triangulation, edge: usize) -> Result<(Triangulation, ClusterMap)> {
    let fl = Flip::new(tri, edge)?;
    let source = epsilon_of_triangulation(tri)?;
    let target = epsilon_of_triangulation(&fl.after)?;
    let r = &fl.roles;
    let vars: HashMap<&str, RatFunc> = [("X", &r.x), ("Y", &r.y), ("Z", &r.z), ("W", &r.w)]
        .into_iter()
        .map(|(l, n)| (l, RatFunc::named(n)))
        .collect();
    let f = flip_formulas(&vars);
    let mut images: HashMap<String, RatFunc> = HashMap::new();
    for (label, name) in SIDE_LABELS.iter().zip(&r.sides) {
        if let Some(name) = name {
            let cur = images.remove(name).unwrap_or_else(|| RatFunc::named(name));
            images.insert(name.clone(), &cur * &f[label]);
        }
    }
    let n = &fl.new_roles;
    images.insert(n.near_p2.clone(), f["X'"].clone());
    images.insert(n.near_p4.clone(), f["Y'"].clone());
    images.insert(n.n1.clone(), f["Z'"].clone());
    images.insert(n.n2.clone(), f["W'"].clone());
    let imgs = target
        .names()
        .iter()
        .map(|name| images.remove(name).unwrap_or_else(|| RatFunc::named(name)))
        .collect();
    Ok((fl.after, ClusterMap::new(source, target, imgs)?))
}

/// Flip as the composite of mutations at `Z, W, X, Y` followed by the relabeling
/// `Z → center(P1P2P4)`, `W → center(P2P3P4)`, `X → near P2`, `Y → near P4`.
pub fn flip_via_mutations(tri: &Triangulation, edge: usize) -> Result<(Triangulation, ClusterMap)> {
    let fl = Flip::new(tri, edge)?;
    let source = epsilon_of_triangulation(tri)?;
    let r = &fl.roles;
    let m = mutation_sequence(&source, &[&r.z, &r.w, &r.x, &r.y])?;
    let n = &fl.new_roles;
    let rename: HashMap<&str, &str> = [
        (r.z.as_str(), n.n1.as_str()),
        (r.w.as_str(), n.n2.as_str()),
        (r.x.as_str(), n.near_p2.as_str()),
        (r.y.as_str(), n.near_p4.as_str()),
    ]
    .into_iter()
    .collect();
    let relabel = ClusterMap::relabeling(m.target(), |s| rename.get(s).map_or(s.to_string(), |t| t.to_string()))?;
    let composite = m.then(&relabel)?;
    let target = epsilon_of_triangulation(&fl.after)?;
    if !composite.target().same_up_to_order(&target) {
        return Err(crate::Error::SeedMismatch("mutated seed differs from the flipped triangulation".into()));
    }
    Ok((fl.after, composite.reorder_target(&target)?))
}

/// Renaming from `flip(flip(tri, e), e)` back to `tri`.
///
/// Flipping twice turns the quadrilateral by a half turn: on surfaces the two triangle
/// indices trade places and a loop edge is reversed. Polygon names are unaffected.
pub fn double_flip_relabeling(tri: &Triangulation, edge: usize) -> Result<ClusterMap> {
    let q = tri.quad(edge)?;
    let twice = tri.flip(edge)?.flip(edge)?;
    let mut swap: HashMap<String, String> = HashMap::new();
    if !tri.is_polygon() {
        let (cx, cy) = (twice.center_name(q.x), twice.center_name(q.y));
        swap.insert(cx.clone(), cy.clone());
        swap.insert(cy, cx);
        let e = tri.edges()[edge];
        if e.tail == e.head {
            let t = twice.point_name(MarkedPoint::Edge { edge, at_tail: true });
            let h = twice.point_name(MarkedPoint::Edge { edge, at_tail: false });
            swap.insert(t.clone(), h.clone());
            swap.insert(h, t);
        }
    }
    let seed: Seed = epsilon_of_triangulation(&twice)?;
    let m = ClusterMap::relabeling(&seed, |s| swap.get(s).cloned().unwrap_or_else(|| s.to_string()))?;
    m.reorder_target(&epsilon_of_triangulation(tri)?)
}
