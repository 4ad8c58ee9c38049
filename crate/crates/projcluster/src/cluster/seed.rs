use crate::arith::Var;
use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

/// A seed: named vertices with a skew-symmetric integer matrix ε.
#[derive(Clone, Debug)]
pub struct Seed {
    names: Vec<String>,
    index: HashMap<String, usize>,
    eps: Vec<Vec<i32>>,
}

impl PartialEq for Seed {
    fn eq(&self, other: &Seed) -> bool {
        self.names == other.names && self.eps == other.eps
    }
}

impl Eq for Seed {}

#[derive(Serialize, Deserialize)]
struct SeedJson {
    vertices: Vec<String>,
    epsilon: Vec<(usize, usize, i32)>,
}

impl Seed {
    pub fn new(names: Vec<String>, eps: Vec<Vec<i32>>) -> Result<Seed> {
        let n = names.len();
        if eps.len() != n || eps.iter().any(|r| r.len() != n) {
            return Err(Error::Invalid("epsilon has wrong shape".into()));
        }
        for i in 0..n {
            for j in 0..n {
                if eps[i][j] != -eps[j][i] {
                    return Err(Error::Invalid(format!("epsilon not skew at ({i},{j})")));
                }
            }
        }
        let index: HashMap<String, usize> =
            names.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        if index.len() != n {
            return Err(Error::Invalid("duplicate vertex names".into()));
        }
        Ok(Seed { names, index, eps })
    }

    /// Build from entries `(i, j, v)` meaning ε_ij = v, ε_ji = −v.
    pub fn from_entries<S: AsRef<str>>(names: &[S], entries: &[(usize, usize, i32)]) -> Result<Seed> {
        let n = names.len();
        let mut eps = vec![vec![0; n]; n];
        for &(i, j, v) in entries {
            if i >= n || j >= n || i == j {
                return Err(Error::Invalid(format!("bad epsilon entry ({i},{j})")));
            }
            eps[i][j] += v;
            eps[j][i] -= v;
        }
        Seed::new(names.iter().map(|s| s.as_ref().to_string()).collect(), eps)
    }

    pub fn empty_with<S: AsRef<str>>(names: &[S]) -> Seed {
        Seed::from_entries(names, &[]).expect("valid")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn var(&self, i: usize) -> Var {
        Var::new(&self.names[i])
    }

    pub fn vars(&self) -> Vec<Var> {
        (0..self.len()).map(|i| self.var(i)).collect()
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.index.get(name).copied().ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn contains(&self, name: &str) -> bool {
        self.index.contains_key(name)
    }

    pub fn eps(&self, i: usize, j: usize) -> i32 {
        self.eps[i][j]
    }

    pub fn eps_named(&self, a: &str, b: &str) -> Result<i32> {
        Ok(self.eps[self.index_of(a)?][self.index_of(b)?])
    }

    pub fn matrix(&self) -> &[Vec<i32>] {
        &self.eps
    }

    /// ε′_ij = −ε_ij if k ∈ {i,j}, else ε_ij + ε_ik·max(0, sgn(ε_ik)·ε_kj).
    pub fn mutate_epsilon(&self, k: usize) -> Seed {
        let n = self.len();
        let e = &self.eps;
        let mut out = vec![vec![0; n]; n];
        for i in 0..n {
            for j in 0..n {
                out[i][j] = if i == k || j == k {
                    -e[i][j]
                } else {
                    e[i][j] + e[i][k] * 0.max(e[i][k].signum() * e[k][j])
                };
            }
        }
        Seed { names: self.names.clone(), index: self.index.clone(), eps: out }
    }

    pub fn mutate_named(&self, k: &str) -> Result<Seed> {
        Ok(self.mutate_epsilon(self.index_of(k)?))
    }

    pub fn opposite(&self) -> Seed {
        let eps = self.eps.iter().map(|r| r.iter().map(|v| -v).collect()).collect();
        Seed { names: self.names.clone(), index: self.index.clone(), eps }
    }

    /// Rename vertices; `f` must be injective.
    pub fn rename(&self, f: impl Fn(&str) -> String) -> Result<Seed> {
        Seed::new(self.names.iter().map(|s| f(s)).collect(), self.eps.clone())
    }

    /// Sub-seed on the given vertices, in the given order.
    pub fn restrict<S: AsRef<str>>(&self, keep: &[S]) -> Result<Seed> {
        let idx: Vec<usize> = keep.iter().map(|s| self.index_of(s.as_ref())).collect::<Result<_>>()?;
        let eps = idx.iter().map(|&i| idx.iter().map(|&j| self.eps[i][j]).collect()).collect();
        Seed::new(keep.iter().map(|s| s.as_ref().to_string()).collect(), eps)
    }

    /// Same vertex set up to order, and equal ε after matching names.
    pub fn same_up_to_order(&self, other: &Seed) -> bool {
        self.len() == other.len()
            && self.names.iter().all(|a| {
                other.contains(a)
                    && self.names.iter().all(|b| {
                        self.eps_named(a, b).ok() == other.eps_named(a, b).ok()
                    })
            })
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut epsilon = Vec::new();
        for i in 0..self.len() {
            for j in 0..self.len() {
                if self.eps[i][j] > 0 {
                    epsilon.push((i, j, self.eps[i][j]));
                }
            }
        }
        serde_json::to_value(SeedJson { vertices: self.names.clone(), epsilon }).unwrap()
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Seed> {
        let j: SeedJson = serde_json::from_value(v.clone())?;
        if j.epsilon.iter().any(|e| e.2 <= 0) {
            return Err(Error::Parse("seed JSON lists only positive entries".into()));
        }
        Seed::from_entries(&j.vertices, &j.epsilon)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mutation_examples() {
        let a2 = Seed::from_entries(&["1", "2"], &[(0, 1, 1)]).unwrap();
        assert_eq!(a2.mutate_epsilon(0).eps(0, 1), -1);

        let s = Seed::from_entries(&["i", "k", "j"], &[(0, 1, 2), (1, 2, 1)]).unwrap();
        assert_eq!(s.mutate_epsilon(1).eps(0, 2), 2);
        let s = Seed::from_entries(&["i", "k", "j"], &[(0, 1, 2), (1, 2, -1)]).unwrap();
        assert_eq!(s.mutate_epsilon(1).eps(0, 2), 0);
    }

    #[test]
    fn json_roundtrip() {
        let s = Seed::from_entries(&["a", "b", "c"], &[(0, 1, 1), (2, 1, 2)]).unwrap();
        let j = s.to_json();
        assert_eq!(Seed::from_json(&j).unwrap(), s);
        assert_eq!(j["epsilon"], serde_json::json!([[0, 1, 1], [2, 1, 2]]));
    }

    #[test]
    fn rejects_non_skew() {
        assert!(Seed::new(vec!["a".into(), "b".into()], vec![vec![0, 1], vec![1, 0]]).is_err());
    }
}
