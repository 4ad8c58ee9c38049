use super::var::Var;
use std::cmp::Ordering;

/// Sparse exponent vector: sorted by variable, no zero exponents.
#[derive(Clone, PartialEq, Eq, Hash, Default, Debug)]
pub struct Monomial(Vec<(Var, i32)>);

impl Monomial {
    pub fn one() -> Monomial {
        Monomial(Vec::new())
    }

    pub fn var(v: Var) -> Monomial {
        Monomial(vec![(v, 1)])
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (Var, i32)>) -> Monomial {
        let mut v: Vec<(Var, i32)> = Vec::new();
        for (x, e) in pairs {
            v.push((x, e));
        }
        v.sort_by_key(|p| p.0);
        let mut out: Vec<(Var, i32)> = Vec::with_capacity(v.len());
        for (x, e) in v {
            match out.last_mut() {
                Some(last) if last.0 == x => last.1 += e,
                _ => out.push((x, e)),
            }
        }
        out.retain(|p| p.1 != 0);
        Monomial(out)
    }

    pub fn pairs(&self) -> &[(Var, i32)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponent(&self, v: Var) -> i32 {
        match self.0.binary_search_by_key(&v, |p| p.0) {
            Ok(i) => self.0[i].1,
            Err(_) => 0,
        }
    }

    fn merge(&self, other: &Monomial, sign: i32) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
                out.push(a[i]);
                i += 1;
            } else if i == a.len() || b[j].0 < a[i].0 {
                out.push((b[j].0, sign * b[j].1));
                j += 1;
            } else {
                let e = a[i].1 + sign * b[j].1;
                if e != 0 {
                    out.push((a[i].0, e));
                }
                i += 1;
                j += 1;
            }
        }
        Monomial(out)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        self.merge(other, 1)
    }

    pub fn div(&self, other: &Monomial) -> Monomial {
        self.merge(other, -1)
    }

    pub fn pow(&self, n: i32) -> Monomial {
        if n == 0 {
            return Monomial::one();
        }
        Monomial(self.0.iter().map(|&(v, e)| (v, e * n)).collect())
    }

    pub fn inv(&self) -> Monomial {
        self.pow(-1)
    }

    /// Componentwise minimum (absent variables count as exponent 0).
    pub fn meet(&self, other: &Monomial) -> Monomial {
        let mut pairs: Vec<(Var, i32)> = Vec::new();
        for &(v, e) in &self.0 {
            pairs.push((v, e.min(other.exponent(v))));
        }
        for &(v, e) in &other.0 {
            if self.exponent(v) == 0 {
                pairs.push((v, e.min(0)));
            }
        }
        Monomial::from_pairs(pairs)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|p| p.1 > 0)
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().map(|p| p.1 as i64).sum()
    }

    pub fn without(&self, v: Var) -> Monomial {
        Monomial(self.0.iter().copied().filter(|p| p.0 != v).collect())
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        self.0.iter().map(|p| p.0)
    }

    /// Factors sorted by variable name.
    pub fn named_pairs(&self) -> Vec<(String, i32)> {
        let mut v: Vec<(String, i32)> = self.0.iter().map(|&(x, e)| (x.name(), e)).collect();
        v.sort();
        v
    }

    /// Same lexicographic order as `Ord`, with variables ranked by name.
    pub fn name_cmp(&self, other: &Monomial) -> Ordering {
        lex(&self.named_pairs(), &other.named_pairs())
    }
}

fn lex<K: Ord>(a: &[(K, i32)], b: &[(K, i32)]) -> Ordering {
    let (mut i, mut j) = (0, 0);
    loop {
        match (a.get(i), b.get(j)) {
            (None, None) => return Ordering::Equal,
            (Some((_, e)), None) => return e.cmp(&0),
            (None, Some((_, e))) => return 0.cmp(e),
            (Some((va, ea)), Some((vb, eb))) => match va.cmp(vb) {
                Ordering::Equal if ea != eb => return ea.cmp(eb),
                Ordering::Equal => {
                    i += 1;
                    j += 1;
                }
                Ordering::Less => return ea.cmp(&0),
                Ordering::Greater => return 0.cmp(eb),
            },
        }
    }
}

impl Ord for Monomial {
    /// Lexicographic order on dense exponent vectors, lower variable ids most significant.
    fn cmp(&self, other: &Self) -> Ordering {
        lex(&self.0, &other.0)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lex_order() {
        let x = Var::new("mono_x");
        let y = Var::new("mono_y");
        let m = |a, b| Monomial::from_pairs([(x, a), (y, b)]);
        assert!(m(1, 0) > m(0, 5));
        assert!(m(0, 1) > m(0, 0));
        assert!(m(-1, 3) < m(0, 0));
        assert!(m(0, -1) < Monomial::one());
        assert_eq!(m(2, 1).div(&m(2, 1)), Monomial::one());
        assert_eq!(m(2, -1).meet(&m(1, 3)), m(1, -1));
    }
}
