use super::qlaurent::QLaurent;
use crate::arith::{Laurent, Monomial, Rat, RatFunc};
use crate::cluster::Seed;
use crate::{Error, Result};
use std::collections::BTreeMap;
use std::fmt;

/// Element `Σ c_a(q)·X^a` of the quantum torus of a seed, in Weyl-ordered monomials
/// `X^a = q^{−Σ_{i<j} ε_ij a_i a_j} X_1^{a_1}···X_n^{a_n}`, so that
/// `X^a·X^b = q^{⟨a,b⟩} X^{a+b}` with `⟨a,b⟩ = Σ ε_ij a_i b_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QTorusElem {
    n: usize,
    terms: BTreeMap<Vec<i32>, QLaurent>,
}

/// The pairing `⟨a,b⟩ = Σ ε_ij a_i b_j`.
pub fn pairing(seed: &Seed, a: &[i32], b: &[i32]) -> i32 {
    let mut s = 0;
    for (i, ai) in a.iter().enumerate().filter(|(_, x)| **x != 0) {
        for (j, bj) in b.iter().enumerate().filter(|(_, x)| **x != 0) {
            s += seed.eps(i, j) * ai * bj;
        }
    }
    s
}

impl QTorusElem {
    pub fn zero(seed: &Seed) -> QTorusElem {
        QTorusElem { n: seed.len(), terms: BTreeMap::new() }
    }

    pub fn one(seed: &Seed) -> QTorusElem {
        QTorusElem::monomial(seed, vec![0; seed.len()], QLaurent::one())
    }

    pub fn monomial(seed: &Seed, a: Vec<i32>, c: QLaurent) -> QTorusElem {
        let mut out = QTorusElem::zero(seed);
        if !c.is_zero() {
            out.terms.insert(a, c);
        }
        out
    }

    /// The generator `X_k`.
    pub fn generator(seed: &Seed, k: usize) -> QTorusElem {
        let mut a = vec![0; seed.len()];
        a[k] = 1;
        QTorusElem::monomial(seed, a, QLaurent::one())
    }

    pub fn named(seed: &Seed, name: &str) -> Result<QTorusElem> {
        Ok(QTorusElem::generator(seed, seed.index_of(name)?))
    }

    /// `X^a` for an exponent map given by names.
    pub fn from_exponents(seed: &Seed, exps: &[(&str, i32)], c: QLaurent) -> Result<QTorusElem> {
        let mut a = vec![0; seed.len()];
        for (name, e) in exps {
            a[seed.index_of(name)?] += e;
        }
        Ok(QTorusElem::monomial(seed, a, c))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i32>, &QLaurent)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The single monomial `c·X^a`, if the element has one term.
    pub fn as_monomial(&self) -> Option<(&Vec<i32>, &QLaurent)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    fn add_term(&mut self, a: Vec<i32>, c: QLaurent) {
        let e = self.terms.entry(a.clone()).or_insert_with(QLaurent::zero);
        *e = &*e + &c;
        if e.is_zero() {
            self.terms.remove(&a);
        }
    }

    pub fn add(&self, other: &QTorusElem) -> QTorusElem {
        let mut out = self.clone();
        for (a, c) in &other.terms {
            out.add_term(a.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &QTorusElem) -> QTorusElem {
        let mut out = self.clone();
        for (a, c) in &other.terms {
            out.add_term(a.clone(), -c);
        }
        out
    }

    pub fn scale(&self, c: &QLaurent) -> QTorusElem {
        let mut out = QTorusElem { n: self.n, terms: BTreeMap::new() };
        for (a, x) in &self.terms {
            out.add_term(a.clone(), x * c);
        }
        out
    }

    /// Invert a monomial: `(c·X^a)⁻¹ = c⁻¹·X^{−a}` for `c = ±q^k`.
    pub fn monomial_inverse(&self) -> Result<QTorusElem> {
        let (a, c) = self.as_monomial().ok_or_else(|| Error::Degenerate("not a monomial".into()))?;
        let mut it = c.terms();
        let (k, coeff) = it.next().ok_or(Error::ZeroDenominator)?;
        if it.next().is_some() || coeff.magnitude() != &num_bigint::BigUint::from(1u32) {
            return Err(Error::Degenerate("coefficient is not a unit".into()));
        }
        let neg: Vec<i32> = a.iter().map(|x| -x).collect();
        Ok(QTorusElem { n: self.n, terms: [(neg, QLaurent::term(coeff.clone(), -k))].into_iter().collect() })
    }

    /// The `*`-involution: `q ↦ q⁻¹`, fixing every `X^a`.
    pub fn star(&self) -> QTorusElem {
        QTorusElem { n: self.n, terms: self.terms.iter().map(|(a, c)| (a.clone(), c.bar())).collect() }
    }

    /// Commutative image at `q = 1`.
    pub fn at_q_one(&self, seed: &Seed) -> RatFunc {
        let lt = Laurent::from_terms(self.terms.iter().map(|(a, c)| {
            let m = Monomial::from_pairs(a.iter().enumerate().filter(|(_, e)| **e != 0).map(|(i, e)| (seed.var(i), *e)));
            (m, Rat::from_integer(c.at_one()))
        }));
        RatFunc::from(lt)
    }

    pub fn display(&self, seed: &Seed) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(a, c)| {
                let mono: Vec<String> = a
                    .iter()
                    .enumerate()
                    .filter(|(_, e)| **e != 0)
                    .map(|(i, e)| if *e == 1 { seed.name(i).to_string() } else { format!("{}^{}", seed.name(i), e) })
                    .collect();
                let coeff = c.to_string();
                match (mono.is_empty(), coeff.as_str()) {
                    (true, _) => format!("({coeff})"),
                    (false, "1") => format!("X[{}]", mono.join(" ")),
                    _ => format!("({coeff})*X[{}]", mono.join(" ")),
                }
            })
            .collect();
        parts.join(" + ")
    }
}

/// Product in the quantum torus.
pub fn qmul(seed: &Seed, x: &QTorusElem, y: &QTorusElem) -> Result<QTorusElem> {
    if x.n != seed.len() || y.n != seed.len() {
        return Err(Error::SeedMismatch("quantum torus elements of another seed".into()));
    }
    let mut out = QTorusElem::zero(seed);
    for (a, c) in &x.terms {
        for (b, d) in &y.terms {
            let sum: Vec<i32> = a.iter().zip(b).map(|(u, v)| u + v).collect();
            out.add_term(sum, (c * d).shift(pairing(seed, a, b)));
        }
    }
    Ok(out)
}

impl fmt::Display for QTorusElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.terms.iter().map(|(a, c)| format!("({c})*X{a:?}")).collect();
        write!(f, "{}", if parts.is_empty() { "0".into() } else { parts.join(" + ") })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seed() -> Seed {
        Seed::from_entries(&["qa", "qb", "qc"], &[(0, 1, 1), (1, 2, -2)]).unwrap()
    }

    #[test]
    fn commutation() {
        let s = seed();
        let (a, b, c) = (QTorusElem::generator(&s, 0), QTorusElem::generator(&s, 1), QTorusElem::generator(&s, 2));
        let ab = qmul(&s, &a, &b).unwrap();
        let ba = qmul(&s, &b, &a).unwrap();
        assert_eq!(ab, ba.scale(&QLaurent::q_pow(2)));
        let ac = qmul(&s, &a, &c).unwrap();
        assert_eq!(ac, qmul(&s, &c, &a).unwrap());
        // X_a X_b is q times the Weyl monomial X^{(1,1,0)}.
        assert_eq!(ab, QTorusElem::monomial(&s, vec![1, 1, 0], QLaurent::q_pow(1)));
    }

    #[test]
    fn star_reverses_products() {
        let s = seed();
        let one = QTorusElem::one(&s);
        let x = one.add(&QTorusElem::generator(&s, 0).scale(&QLaurent::q_pow(3)));
        let y = QTorusElem::generator(&s, 1).add(&QTorusElem::generator(&s, 2).scale(&QLaurent::q_pow(-1)));
        let lhs = qmul(&s, &x, &y).unwrap().star();
        let rhs = qmul(&s, &y.star(), &x.star()).unwrap();
        assert_eq!(lhs, rhs);
        let (a, b) = (QTorusElem::generator(&s, 0), QTorusElem::generator(&s, 1));
        assert_eq!(qmul(&s, &a, &b).unwrap().star(), qmul(&s, &b, &a).unwrap());
    }

    #[test]
    fn associativity() {
        let s = seed();
        let g = |k| QTorusElem::generator(&s, k);
        let x = g(0).add(&g(1).scale(&QLaurent::q_pow(1)));
        let y = g(1).add(&g(2));
        let z = g(2).add(&QTorusElem::one(&s)).add(&g(0).monomial_inverse().unwrap());
        let l = qmul(&s, &qmul(&s, &x, &y).unwrap(), &z).unwrap();
        let r = qmul(&s, &x, &qmul(&s, &y, &z).unwrap()).unwrap();
        assert_eq!(l, r);
    }
}
