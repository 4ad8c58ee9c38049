use super::matrix::{e_matrix, t_inverse, t_matrix, Matrix3};
use crate::arith::RatFunc;
use crate::surface::Triangulation;
use crate::{Error, Result};

/// Crossing of an internal edge, `forward` when leaving the triangle whose side runs
/// tail → head (that triangle lies to the left of the edge).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Crossing {
    pub edge: usize,
    pub forward: bool,
}

impl Crossing {
    pub fn reversed(self) -> Crossing {
        Crossing { edge: self.edge, forward: !self.forward }
    }
}

/// A closed path in the graph, recorded by the edges it crosses.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LoopWord(pub Vec<Crossing>);

impl LoopWord {
    /// Cyclic rotation starting at crossing `k`.
    pub fn rotated(&self, k: usize) -> LoopWord {
        let mut v = self.0.clone();
        let n = v.len().max(1);
        v.rotate_left(k % n);
        LoopWord(v)
    }

    pub fn inverse(&self) -> LoopWord {
        LoopWord(self.0.iter().rev().map(|c| c.reversed()).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Text form with edge keys of `tri`, e.g. `0+ 1- 2+`.
    pub fn display(&self, tri: &Triangulation) -> String {
        let parts: Vec<String> =
            self.0.iter().map(|c| format!("{}{}", tri.edge_key(c.edge), if c.forward { '+' } else { '-' })).collect();
        parts.join(" ")
    }

    pub fn parse(text: &str, tri: &Triangulation) -> Result<LoopWord> {
        let mut out = Vec::new();
        for tok in text.split(|c: char| c.is_whitespace() || c == ',').filter(|t| !t.is_empty()) {
            let (key, forward) = match tok.chars().last() {
                Some('+') => (&tok[..tok.len() - 1], true),
                Some('-') => (&tok[..tok.len() - 1], false),
                _ => return Err(Error::Parse(format!("crossing {tok} needs a + or - suffix"))),
            };
            out.push(Crossing { edge: tri.edge_by_key(key)?, forward });
        }
        Ok(LoopWord(out))
    }
}

/// Turn inside a triangle between two crossings.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Turn {
    /// Along the little triangle counterclockwise.
    Left,
    /// Against the orientation.
    Right,
    /// Back through the side just crossed.
    Back,
}

/// Half of an e-edge: the side of a triangle it leaves through.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Port {
    pub tri: usize,
    pub side: usize,
}

/// The trivalent graph: one little triangle per triangle, one e-edge per internal edge.
#[derive(Clone, Debug)]
pub struct MonodromyGraph {
    tri: Triangulation,
    /// For each edge, the ports on its forward and backward sides.
    ports: Vec<Option<(Port, Port)>>,
}

impl MonodromyGraph {
    pub fn new(tri: &Triangulation) -> Result<MonodromyGraph> {
        let mut fwd = vec![None; tri.edges().len()];
        let mut bwd = vec![None; tri.edges().len()];
        for (t, triangle) in tri.triangles().iter().enumerate() {
            for (k, s) in triangle.sides.iter().enumerate() {
                let slot = if s.forward { &mut fwd[s.edge] } else { &mut bwd[s.edge] };
                *slot = Some(Port { tri: t, side: k });
            }
        }
        let ports = (0..tri.edges().len())
            .map(|e| match (fwd[e], bwd[e], tri.edges()[e].boundary) {
                (Some(a), Some(b), false) => Some((a, b)),
                _ => None,
            })
            .collect();
        Ok(MonodromyGraph { tri: tri.clone(), ports })
    }

    pub fn triangulation(&self) -> &Triangulation {
        &self.tri
    }

    pub fn vertex_count(&self) -> usize {
        3 * self.tri.triangles().len()
    }

    pub fn t_edge_count(&self) -> usize {
        3 * self.tri.triangles().len()
    }

    pub fn e_edges(&self) -> Vec<usize> {
        (0..self.ports.len()).filter(|&e| self.ports[e].is_some()).collect()
    }

    /// Rank of the fundamental group of the graph.
    pub fn first_betti_number(&self) -> usize {
        let edges = self.t_edge_count() + self.e_edges().len();
        edges + self.components() - self.vertex_count()
    }

    /// Rank of the fundamental group of the surface: little-triangle cycles are contractible.
    pub fn fundamental_group_rank(&self) -> usize {
        self.first_betti_number() - self.tri.triangles().len()
    }

    fn components(&self) -> usize {
        let n = self.tri.triangles().len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            if p[x] != x {
                let r = find(p, p[x]);
                p[x] = r;
            }
            p[x]
        }
        for (a, b) in self.ports.iter().flatten() {
            let (ra, rb) = (find(&mut parent, a.tri), find(&mut parent, b.tri));
            parent[ra] = rb;
        }
        (0..n).filter(|&x| find(&mut parent, x) == x).count()
    }

    /// Exit and entry ports of a crossing.
    pub fn ports(&self, c: Crossing) -> Result<(Port, Port)> {
        let (f, b) = self
            .ports
            .get(c.edge)
            .copied()
            .flatten()
            .ok_or_else(|| Error::InvalidLoop(format!("edge {} is not crossed by the graph", self.tri.edge_key(c.edge))))?;
        Ok(if c.forward { (f, b) } else { (b, f) })
    }

    /// Turns between consecutive crossings; errors if the word is not closed.
    pub fn turns(&self, w: &LoopWord) -> Result<Vec<Turn>> {
        if w.is_empty() {
            return Err(Error::InvalidLoop("empty word".into()));
        }
        let n = w.len();
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let (_, entry) = self.ports(w.0[i])?;
            let (exit, _) = self.ports(w.0[(i + 1) % n])?;
            if entry.tri != exit.tri {
                return Err(Error::InvalidLoop(format!("crossings {} and {} do not meet", i, (i + 1) % n)));
            }
            out.push(match (exit.side + 3 - entry.side) % 3 {
                0 => Turn::Back,
                1 => Turn::Left,
                _ => Turn::Right,
            });
        }
        Ok(out)
    }

    /// `E(Z,W)` for a crossing: `W` is the point on the traveller's left, `Z` on the right.
    pub fn crossing_matrix(&self, c: Crossing) -> Result<Matrix3> {
        let (exit, _) = self.ports(c)?;
        let name = |near_start| {
            self.tri
                .side_point(exit.tri, exit.side, near_start)
                .ok_or_else(|| Error::InvalidLoop("edge carries no coordinates".into()))
        };
        e_matrix(&RatFunc::named(&name(true)?), &RatFunc::named(&name(false)?))
    }

    /// Monodromy `∏ E_i·T_i^{±1}`, multiplied left to right in path order.
    pub fn monodromy(&self, w: &LoopWord) -> Result<Matrix3> {
        let turns = self.turns(w)?;
        let mut m = Matrix3::identity();
        for (i, c) in w.0.iter().enumerate() {
            m = m.mul(&self.crossing_matrix(*c)?);
            let (_, entry) = self.ports(*c)?;
            let x = RatFunc::named(&self.tri.center_name(entry.tri));
            match turns[i] {
                Turn::Left => m = m.mul(&t_matrix(&x)),
                Turn::Right => m = m.mul(&t_inverse(&x)?),
                Turn::Back => {}
            }
        }
        Ok(m)
    }

    /// A loop that turns the same way in every triangle encircles a puncture.
    pub fn is_peripheral(&self, w: &LoopWord) -> Result<bool> {
        let turns = self.turns(w)?;
        Ok(turns.iter().all(|t| *t == Turn::Left) || turns.iter().all(|t| *t == Turn::Right))
    }

    /// Reduced closed words with at most `max_len` crossings, one per cyclic class and
    /// orientation, ordered by length.
    pub fn loops(&self, max_len: usize) -> Vec<LoopWord> {
        let crossings: Vec<Crossing> =
            self.e_edges().into_iter().flat_map(|e| [Crossing { edge: e, forward: true }, Crossing { edge: e, forward: false }]).collect();
        let mut seen = std::collections::HashSet::new();
        let mut stack: Vec<Vec<Crossing>> = crossings.iter().map(|c| vec![*c]).collect();
        stack.reverse();
        let mut found: Vec<LoopWord> = Vec::new();
        while let Some(path) = stack.pop() {
            let last = *path.last().unwrap();
            let (_, entry) = self.ports(last).unwrap();
            if path.len() <= max_len {
                let w = LoopWord(path.clone());
                if self.turns(&w).is_ok_and(|t| !t.contains(&Turn::Back)) && path[0] <= *path.iter().min().unwrap() {
                    let key = canonical(&w);
                    if seen.insert(key) {
                        seen.insert(canonical(&w.inverse()));
                        found.push(w);
                    }
                }
            }
            if path.len() == max_len {
                continue;
            }
            for &c in &crossings {
                let (exit, _) = self.ports(c).unwrap();
                if exit.tri == entry.tri && exit.side != entry.side {
                    let mut next = path.clone();
                    next.push(c);
                    stack.push(next);
                }
            }
        }
        found.sort_by_key(|w| w.len());
        found.into_iter().filter(is_primitive).collect()
    }
}

fn canonical(w: &LoopWord) -> Vec<Crossing> {
    (0..w.len()).map(|k| w.rotated(k).0).min().unwrap_or_default()
}

fn is_primitive(w: &LoopWord) -> bool {
    let n = w.len();
    (1..n).filter(|d| n % d == 0).all(|d| w.rotated(d) != *w)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph_counts() {
        let torus = MonodromyGraph::new(&Triangulation::surface(1, 1).unwrap()).unwrap();
        assert_eq!(torus.triangulation().triangles().len(), 2);
        assert_eq!(torus.e_edges().len(), 3);
        assert_eq!(torus.first_betti_number(), 4);
        assert_eq!(torus.fundamental_group_rank(), 2);
        let tri = MonodromyGraph::new(&Triangulation::polygon(3).unwrap()).unwrap();
        assert_eq!((tri.e_edges().len(), tri.fundamental_group_rank()), (0, 0));
        let quad = MonodromyGraph::new(&Triangulation::polygon(4).unwrap()).unwrap();
        assert_eq!((quad.e_edges().len(), quad.fundamental_group_rank()), (1, 0));
    }

    #[test]
    fn torus_loops() {
        let tri = Triangulation::surface(1, 1).unwrap();
        let g = MonodromyGraph::new(&tri).unwrap();
        let loops = g.loops(6);
        assert!(loops.iter().any(|w| w.len() == 2 && !g.is_peripheral(w).unwrap()));
        let peripheral: Vec<&LoopWord> = loops.iter().filter(|w| g.is_peripheral(w).unwrap()).collect();
        assert_eq!(peripheral.len(), 1);
        assert_eq!(peripheral[0].len(), 6);
        let w = &loops[0];
        assert_eq!(LoopWord::parse(&w.display(&tri), &tri).unwrap(), *w);
    }

    #[test]
    fn open_word_is_rejected() {
        let tri = Triangulation::polygon(4).unwrap();
        let g = MonodromyGraph::new(&tri).unwrap();
        let w = LoopWord::parse("0.2+", &tri).unwrap();
        assert!(g.monodromy(&w).is_err());
        assert!(LoopWord::parse("0.2", &tri).is_err());
    }
}
