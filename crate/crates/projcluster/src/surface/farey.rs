use super::triangulation::Triangulation;
use crate::Result;
use num_integer::Integer;
use std::cmp::Ordering;
use std::collections::BTreeSet;

/// A finite piece of the Farey triangulation as a triangulated polygon.
#[derive(Clone, Debug)]
pub struct FareyWindow {
    pub triangulation: Triangulation,
    /// Vertex `i` of the polygon is the fraction `labels[i]` (`inf` for ∞).
    pub labels: Vec<String>,
    /// The distinguished edge `0 → ∞`.
    pub base_edge: usize,
}

type Frac = (i64, i64);

fn norm((p, q): Frac) -> Frac {
    let g = p.gcd(&q);
    let (p, q) = (p / g, q / g);
    if q < 0 || (q == 0 && p < 0) {
        (-p, -q)
    } else {
        (p, q)
    }
}

fn cmp_frac(a: &Frac, b: &Frac) -> Ordering {
    match (a.1 == 0, b.1 == 0) {
        (true, true) => Ordering::Equal,
        (true, false) => Ordering::Greater,
        (false, true) => Ordering::Less,
        _ => (a.0 * b.1).cmp(&(b.0 * a.1)),
    }
}

fn label((p, q): Frac) -> String {
    match q {
        0 => "inf".to_string(),
        1 => p.to_string(),
        _ => format!("{p}/{q}"),
    }
}

/// Farey triangles within `depth` steps of the two triangles on the edge `0 → ∞`.
pub fn farey_window(depth: usize) -> Result<FareyWindow> {
    let zero = (0, 1);
    let inf = (1, 0);
    let mut tris: Vec<[Frac; 3]> = vec![[zero, inf, (1, 1)], [zero, inf, (-1, 1)]];
    // (edge endpoints, opposite vertex) pending expansion.
    let mut frontier: Vec<(Frac, Frac, Frac)> =
        vec![(zero, (1, 1), inf), (inf, (1, 1), zero), (zero, (-1, 1), inf), (inf, (-1, 1), zero)];
    for _ in 0..depth {
        let mut next = Vec::new();
        for (u, v, w) in frontier {
            let a = norm((u.0 + v.0, u.1 + v.1));
            let b = norm((u.0 - v.0, u.1 - v.1));
            let n = if a == norm(w) { b } else { a };
            tris.push([u, v, n]);
            next.push((u, n, v));
            next.push((v, n, u));
        }
        frontier = next;
    }
    let verts: BTreeSet<Frac> = tris.iter().flatten().copied().collect();
    let mut verts: Vec<Frac> = verts.into_iter().collect();
    verts.sort_by(cmp_frac);
    let idx = |f: &Frac| verts.iter().position(|g| g == f).unwrap();
    let ids: Vec<[usize; 3]> = tris.iter().map(|t| [idx(&t[0]), idx(&t[1]), idx(&t[2])]).collect();
    let triangulation = Triangulation::polygon_from_triangles(verts.len(), &ids)?.without_boundary_coords();
    let base_edge = triangulation.edge_by_key(&format!("{}.{}", idx(&zero), idx(&inf)))?;
    Ok(FareyWindow { triangulation, labels: verts.into_iter().map(label).collect(), base_edge })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_windows() {
        let w0 = farey_window(0).unwrap();
        assert_eq!(w0.labels, ["-1", "0", "1", "inf"]);
        assert_eq!(w0.triangulation.triangles().len(), 2);
        let w1 = farey_window(1).unwrap();
        assert_eq!(w1.labels, ["-2", "-1", "-1/2", "0", "1/2", "1", "2", "inf"]);
        let w3 = farey_window(3).unwrap();
        assert_eq!(w3.labels.len(), 4 + 4 + 8 + 16);
        assert!(w3.triangulation.internal_edges().contains(&w3.base_edge));
    }
}
