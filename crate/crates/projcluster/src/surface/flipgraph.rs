use super::triangulation::Triangulation;
use crate::{Error, Result};
use std::collections::{BTreeSet, HashMap, VecDeque};

pub const DEFAULT_FLIP_CAP: usize = 10_000;

type Key = BTreeSet<(usize, usize)>;

/// Shortest sequence of diagonal flips turning polygon triangulation `from` into `to`.
///
/// Each entry is the key (`i.j`) of the diagonal flipped in the current triangulation.
pub fn flip_sequence(from: &Triangulation, to: &Triangulation, cap: usize) -> Result<Vec<String>> {
    if !from.is_polygon() || from.kind() != to.kind() {
        return Err(Error::InvalidTriangulation("flip sequences are computed between triangulations of one polygon".into()));
    }
    let goal = to.diagonals();
    let mut parent: HashMap<Key, Option<(Key, String)>> = HashMap::new();
    parent.insert(from.diagonals(), None);
    let mut queue = VecDeque::from([from.clone()]);
    while let Some(t) = queue.pop_front() {
        let key = t.diagonals();
        if key == goal {
            let mut path = Vec::new();
            let mut at = key;
            while let Some(Some((prev, step))) = parent.get(&at) {
                path.push(step.clone());
                at = prev.clone();
            }
            path.reverse();
            return Ok(path);
        }
        for e in t.internal_edges() {
            let next = t.flip(e)?;
            let nk = next.diagonals();
            if parent.contains_key(&nk) {
                continue;
            }
            if parent.len() >= cap {
                return Err(Error::SearchLimit(format!("flip graph exceeds {cap} triangulations")));
            }
            parent.insert(nk, Some((key.clone(), t.edge_key(e))));
            queue.push_back(next);
        }
    }
    Err(Error::InvalidTriangulation("target not reachable".into()))
}
