use super::epsilon::epsilon_of_triangulation;
use super::flip::{flip_closed_form, Flip};
use super::triangulation::Triangulation;
use crate::arith::RatFunc;
use crate::cluster::{mutation_sequence, ClusterMap};
use crate::Result;
use std::collections::{BTreeMap, HashMap};

/// Keys of the five diagonals flipped around the pentagon, starting from the fan at vertex 0.
pub fn pentagon_keys() -> Result<Vec<String>> {
    let mut t = Triangulation::polygon(5)?;
    let mut last: Option<(usize, usize)> = None;
    let mut keys = Vec::new();
    for _ in 0..5 {
        let d = *t.diagonals().iter().find(|d| Some(**d) != last).unwrap();
        let key = format!("{}.{}", d.0, d.1);
        let e = t.edge_by_key(&key)?;
        t = t.flip(e)?;
        let new = t.edges()[e];
        last = Some((new.tail, new.head));
        keys.push(key);
    }
    Ok(keys)
}

/// The pentagon composite with geometric names: five closed-form flips.
pub fn pentagon_geometric() -> Result<ClusterMap> {
    let mut t = Triangulation::polygon(5)?;
    let mut total = ClusterMap::identity(&epsilon_of_triangulation(&t)?);
    for key in pentagon_keys()? {
        let (next, m) = flip_closed_form(&t, t.edge_by_key(&key)?)?;
        total = total.then(&m)?;
        t = next;
    }
    Ok(total)
}

/// Flips of a sequence realized on a fixed index set: each flip is the four mutations at
/// the current positions of `Z, W, X, Y`, with no renaming.
pub struct SlotRun {
    /// Mutation sequence in the names of the initial seed.
    pub mutations: Vec<String>,
    pub map: ClusterMap,
    /// Geometric name after the run → initial-seed name occupying it.
    pub slots: BTreeMap<String, String>,
}

pub fn slot_run(start: &Triangulation, keys: &[String]) -> Result<SlotRun> {
    let mut t = start.clone();
    let mut slot: HashMap<String, String> = t.point_names().into_iter().map(|n| (n.clone(), n)).collect();
    let mut mutations = Vec::new();
    for key in keys {
        let fl = Flip::new(&t, t.edge_by_key(key)?)?;
        let r = &fl.roles;
        let s = |n: &String| slot[n].clone();
        let (sz, sw, sx, sy) = (s(&r.z), s(&r.w), s(&r.x), s(&r.y));
        mutations.extend([sz.clone(), sw.clone(), sx.clone(), sy.clone()]);
        for n in [&r.z, &r.w, &r.x, &r.y] {
            slot.remove(n);
        }
        let nr = &fl.new_roles;
        slot.insert(nr.n1.clone(), sz);
        slot.insert(nr.n2.clone(), sw);
        slot.insert(nr.near_p2.clone(), sx);
        slot.insert(nr.near_p4.clone(), sy);
        t = fl.after;
    }
    let map = mutation_sequence(&epsilon_of_triangulation(start)?, &mutations)?;
    Ok(SlotRun { mutations, map, slots: slot.into_iter().collect() })
}

/// Name permutation when every image is a distinct source generator.
pub fn as_permutation(map: &ClusterMap) -> Option<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    for (name, f) in map.named_images() {
        let v = *f.vars().iter().next()?;
        if f != RatFunc::var(v) {
            return None;
        }
        out.insert(name, v.name());
    }
    let mut seen: Vec<&String> = out.values().collect();
    seen.sort();
    seen.dedup();
    (seen.len() == out.len()).then_some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keys_cycle() {
        assert_eq!(pentagon_keys().unwrap(), ["0.2", "0.3", "1.3", "1.4", "2.4"]);
    }

    #[test]
    fn geometric_pentagon_is_identity() {
        assert!(pentagon_geometric().unwrap().is_identity());
    }
}
