use super::dynkin::{dynkin_type, DynkinType};
use super::quiver::{canonical_form, CanonicalForm};
use super::seed::Seed;
use crate::{Error, Result};
use std::collections::{HashSet, VecDeque};

pub const DEFAULT_STATE_CAP: usize = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOutcome {
    /// Mutation sequence (vertex names of the start seed) reaching the target.
    pub witness: Option<Vec<String>>,
    /// Isomorphism classes visited.
    pub class_size: usize,
    /// True when the whole class was enumerated.
    pub complete: bool,
    pub max_depth: usize,
}

struct Node {
    seed: Seed,
    parent: Option<(usize, usize)>,
    depth: usize,
}

/// Breadth-first search of the mutation class up to isomorphism.
///
/// With a `target` the search stops at the first seed whose graph is that Dynkin diagram.
/// `depth_limit` bounds the number of mutations; `cap` bounds the number of classes.
pub fn mutation_class_search(
    start: &Seed,
    target: Option<DynkinType>,
    depth_limit: Option<usize>,
    cap: usize,
) -> Result<SearchOutcome> {
    let hit = |s: &Seed| target.is_some() && dynkin_type(s) == target;
    let mut nodes = vec![Node { seed: start.clone(), parent: None, depth: 0 }];
    let mut seen: HashSet<CanonicalForm> = HashSet::from([canonical_form(start)?]);
    if hit(start) {
        return Ok(outcome(&nodes, Some(0), 1, false));
    }
    let mut queue = VecDeque::from([0usize]);
    let mut truncated = false;
    while let Some(at) = queue.pop_front() {
        if depth_limit.is_some_and(|d| nodes[at].depth >= d) {
            truncated = true;
            continue;
        }
        for k in 0..start.len() {
            let next = nodes[at].seed.mutate_epsilon(k);
            let cf = canonical_form(&next)?;
            if seen.contains(&cf) {
                continue;
            }
            if seen.len() >= cap {
                return Err(Error::SearchLimit(format!("more than {cap} classes")));
            }
            let id = nodes.len();
            let depth = nodes[at].depth + 1;
            nodes.push(Node { seed: next, parent: Some((at, k)), depth });
            seen.insert(cf);
            if hit(&nodes[id].seed) {
                return Ok(outcome(&nodes, Some(id), seen.len(), false));
            }
            queue.push_back(id);
        }
    }
    Ok(outcome(&nodes, None, seen.len(), !truncated))
}

fn outcome(nodes: &[Node], hit: Option<usize>, class_size: usize, complete: bool) -> SearchOutcome {
    let witness = hit.map(|mut at| {
        let mut path = Vec::new();
        while let Some((p, k)) = nodes[at].parent {
            path.push(nodes[at].seed.name(k).to_string());
            at = p;
        }
        path.reverse();
        path
    });
    let max_depth = nodes.iter().map(|n| n.depth).max().unwrap_or(0);
    SearchOutcome { witness, class_size, complete, max_depth }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn d4_class() {
        let star = Seed::from_entries(&["c", "x", "y", "z"], &[(0, 1, 1), (0, 2, 1), (0, 3, 1)]).unwrap();
        let out = mutation_class_search(&star, None, None, DEFAULT_STATE_CAP).unwrap();
        assert!(out.complete);
        assert_eq!(out.class_size, 6);
    }

    #[test]
    fn witness_reaches_target() {
        let a3 = Seed::from_entries(&["a", "b", "c"], &[(0, 1, 1), (1, 2, 1)]).unwrap();
        let cyc = Seed::from_entries(&["p", "q", "r"], &[(0, 1, 1), (1, 2, 1), (2, 0, 1)]).unwrap();
        let out = mutation_class_search(&cyc, Some(DynkinType::A(3)), None, DEFAULT_STATE_CAP).unwrap();
        let w = out.witness.unwrap();
        assert_eq!(w.len(), 1);
        let s = cyc.mutate_named(&w[0]).unwrap();
        assert_eq!(dynkin_type(&s), Some(DynkinType::A(3)));
        let none = mutation_class_search(&a3, Some(DynkinType::D(4)), None, DEFAULT_STATE_CAP).unwrap();
        assert!(none.witness.is_none() && none.complete);
    }

    #[test]
    fn cap_is_enforced() {
        let kr = Seed::from_entries(&["a", "b", "c"], &[(0, 1, 2), (1, 2, 2), (2, 0, 2)]).unwrap();
        assert!(mutation_class_search(&kr, None, None, 1).is_ok());
        let wild = Seed::from_entries(&["a", "b", "c"], &[(0, 1, 3), (1, 2, 1)]).unwrap();
        assert!(matches!(mutation_class_search(&wild, None, None, 50), Err(Error::SearchLimit(_))));
    }
}
