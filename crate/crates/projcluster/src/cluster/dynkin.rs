use super::seed::Seed;
use crate::{Error, Result};
use std::fmt;
use std::str::FromStr;

/// Simply-laced Dynkin types.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DynkinType {
    A(usize),
    D(usize),
    E(usize),
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DynkinType::A(n) => write!(f, "A{n}"),
            DynkinType::D(n) => write!(f, "D{n}"),
            DynkinType::E(n) => write!(f, "E{n}"),
        }
    }
}

impl FromStr for DynkinType {
    type Err = Error;
    fn from_str(s: &str) -> Result<DynkinType> {
        let bad = || Error::Parse(format!("unknown Dynkin type {s}"));
        let (head, tail) = s.split_at(1.min(s.len()));
        let n: usize = tail.parse().map_err(|_| bad())?;
        let t = match head {
            "A" | "a" if n >= 1 => DynkinType::A(n),
            "D" | "d" if n >= 4 => DynkinType::D(n),
            "E" | "e" if (6..=8).contains(&n) => DynkinType::E(n),
            _ => return Err(bad()),
        };
        Ok(t)
    }
}

impl DynkinType {
    pub fn rank(&self) -> usize {
        match *self {
            DynkinType::A(n) | DynkinType::D(n) | DynkinType::E(n) => n,
        }
    }
}

/// Type of the underlying unoriented graph of ε, if it is a Dynkin diagram.
pub fn dynkin_type(seed: &Seed) -> Option<DynkinType> {
    let n = seed.len();
    if n == 0 {
        return None;
    }
    let mut adj = vec![Vec::new(); n];
    let mut edges = 0;
    for i in 0..n {
        for j in (i + 1)..n {
            match seed.eps(i, j).abs() {
                0 => {}
                1 => {
                    adj[i].push(j);
                    adj[j].push(i);
                    edges += 1;
                }
                _ => return None,
            }
        }
    }
    if edges != n - 1 || !connected(&adj) {
        return None;
    }
    let branch: Vec<usize> = (0..n).filter(|&v| adj[v].len() >= 3).collect();
    match branch.as_slice() {
        [] => Some(DynkinType::A(n)),
        [c] if adj[*c].len() == 3 => {
            let mut arms: Vec<usize> = adj[*c].iter().map(|&s| arm_length(&adj, *c, s)).collect();
            arms.sort_unstable();
            match arms.as_slice() {
                [1, 1, _] => Some(DynkinType::D(n)),
                [1, 2, 2] | [1, 2, 3] | [1, 2, 4] => Some(DynkinType::E(n)),
                _ => None,
            }
        }
        _ => None,
    }
}

fn connected(adj: &[Vec<usize>]) -> bool {
    let mut seen = vec![false; adj.len()];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen.into_iter().all(|b| b)
}

fn arm_length(adj: &[Vec<usize>], center: usize, start: usize) -> usize {
    let (mut prev, mut cur, mut len) = (center, start, 1);
    loop {
        let next: Vec<usize> = adj[cur].iter().copied().filter(|&w| w != prev).collect();
        match next.as_slice() {
            [w] => {
                prev = cur;
                cur = *w;
                len += 1;
            }
            _ => return len,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recognizes_types() {
        let path = Seed::from_entries(&["a", "b", "c"], &[(0, 1, 1), (2, 1, 1)]).unwrap();
        assert_eq!(dynkin_type(&path), Some(DynkinType::A(3)));
        let star = Seed::from_entries(&["c", "x", "y", "z"], &[(0, 1, 1), (0, 2, 1), (3, 0, 1)]).unwrap();
        assert_eq!(dynkin_type(&star), Some(DynkinType::D(4)));
        let names: Vec<String> = (0..7).map(|i| i.to_string()).collect();
        let e7 = Seed::from_entries(&names, &[(0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 4, 1), (4, 5, 1), (2, 6, 1)]).unwrap();
        assert_eq!(dynkin_type(&e7), Some(DynkinType::E(7)));
        let cycle = Seed::from_entries(&["a", "b", "c"], &[(0, 1, 1), (1, 2, 1), (2, 0, 1)]).unwrap();
        assert_eq!(dynkin_type(&cycle), None);
        assert_eq!("E7".parse::<DynkinType>().unwrap(), DynkinType::E(7));
        assert!("E9".parse::<DynkinType>().is_err());
    }
}
