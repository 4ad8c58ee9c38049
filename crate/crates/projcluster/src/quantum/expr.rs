use super::qlaurent::QLaurent;
use super::torus::{qmul, QTorusElem};
use crate::arith::RatFunc;
use crate::cluster::{ClusterMap, Seed};
use crate::{Error, Result};

/// A product of quantum torus elements and formal inverses, kept unexpanded.
#[derive(Clone, Debug, PartialEq)]
pub enum QExpr {
    Elem(QTorusElem),
    Inv(Box<QExpr>),
    Prod(Vec<QExpr>),
}

impl QExpr {
    pub fn inv(self) -> QExpr {
        QExpr::Inv(Box::new(self))
    }

    /// Multiplication that flattens nested products.
    pub fn times(self, rhs: QExpr) -> QExpr {
        let mut out = match self {
            QExpr::Prod(v) => v,
            e => vec![e],
        };
        match rhs {
            QExpr::Prod(v) => out.extend(v),
            e => out.push(e),
        }
        QExpr::Prod(out)
    }

    pub fn product(factors: impl IntoIterator<Item = QExpr>) -> QExpr {
        factors.into_iter().fold(QExpr::Prod(Vec::new()), QExpr::times)
    }

    /// The `*`-involution: reverses products and conjugates `q`.
    pub fn star(&self) -> QExpr {
        match self {
            QExpr::Elem(e) => QExpr::Elem(e.star()),
            QExpr::Inv(e) => QExpr::Inv(Box::new(e.star())),
            QExpr::Prod(v) => QExpr::Prod(v.iter().rev().map(QExpr::star).collect()),
        }
    }

    /// The element itself when no non-monomial inverse occurs.
    pub fn expand(&self, seed: &Seed) -> Result<QTorusElem> {
        match self {
            QExpr::Elem(e) => Ok(e.clone()),
            QExpr::Inv(e) => e.expand(seed)?.monomial_inverse(),
            QExpr::Prod(v) => v.iter().try_fold(QTorusElem::one(seed), |acc, f| qmul(seed, &acc, &f.expand(seed)?)),
        }
    }

    pub fn at_q_one(&self, seed: &Seed) -> Result<RatFunc> {
        match self {
            QExpr::Elem(e) => Ok(e.at_q_one(seed)),
            QExpr::Inv(e) => e.at_q_one(seed)?.inv(),
            QExpr::Prod(v) => v.iter().try_fold(RatFunc::one(), |acc, f| Ok(&acc * &f.at_q_one(seed)?)),
        }
    }

    /// Replaces generator `i` by `images[i]`, an expression over `target`. A factor with
    /// several terms is expanded, which fails when that needs the inverse of a sum.
    pub fn substitute(&self, seed: &Seed, images: &[QExpr], target: &Seed) -> Result<QExpr> {
        match self {
            QExpr::Elem(x) => {
                if let Some((a, c)) = x.as_monomial() {
                    let mut phase = 0;
                    for i in 0..a.len() {
                        for j in i + 1..a.len() {
                            phase -= seed.eps(i, j) * a[i] * a[j];
                        }
                    }
                    let scalar = QTorusElem::one(target).scale(&c.shift(phase));
                    let mut factors = vec![QExpr::Elem(scalar)];
                    for (i, &e) in a.iter().enumerate() {
                        for _ in 0..e.unsigned_abs() {
                            factors.push(if e > 0 { images[i].clone() } else { images[i].clone().inv() });
                        }
                    }
                    return Ok(QExpr::product(factors));
                }
                let mut out = QTorusElem::zero(target);
                for (a, c) in x.terms() {
                    let term = QExpr::Elem(QTorusElem::monomial(seed, a.clone(), c.clone()));
                    out = out.add(&term.substitute(seed, images, target)?.expand(target)?);
                }
                Ok(QExpr::Elem(out))
            }
            QExpr::Inv(e) => Ok(e.substitute(seed, images, target)?.inv()),
            QExpr::Prod(v) => Ok(QExpr::product(v.iter().map(|f| f.substitute(seed, images, target)).collect::<Result<Vec<_>>>()?)),
        }
    }

    fn factors(&self) -> Vec<QExpr> {
        match self {
            QExpr::Prod(v) => v.iter().flat_map(QExpr::factors).collect(),
            e => vec![e.clone()],
        }
    }

    /// Cancels adjacent factors `P·P⁻¹` and `P⁻¹·P`, then multiplies out what is left when no
    /// inverse remains.
    pub fn simplify(&self, seed: &Seed) -> Result<QExpr> {
        let value = |e: &QExpr| e.expand(seed).ok();
        let mut stack: Vec<QExpr> = Vec::new();
        for f in self.factors() {
            let f = match f {
                QExpr::Inv(inner) => match inner.expand(seed).and_then(|m| m.monomial_inverse()) {
                    Ok(m) => QExpr::Elem(m),
                    Err(_) => QExpr::Inv(Box::new(inner.simplify(seed)?)),
                },
                e => e,
            };
            let cancels = match (stack.last(), &f) {
                (Some(QExpr::Elem(a)), QExpr::Inv(b)) | (Some(QExpr::Inv(b)), QExpr::Elem(a)) => {
                    value(b).is_some_and(|b| &b == a)
                }
                _ => false,
            };
            if cancels {
                stack.pop();
            } else {
                stack.push(f);
            }
        }
        if stack.iter().all(|f| matches!(f, QExpr::Elem(_))) {
            return Ok(QExpr::Elem(QExpr::Prod(stack).expand(seed)?));
        }
        Ok(QExpr::Prod(stack))
    }

    pub fn display(&self, seed: &Seed) -> String {
        match self {
            QExpr::Elem(e) => {
                let s = e.display(seed);
                if e.terms().count() > 1 {
                    format!("({s})")
                } else {
                    s
                }
            }
            QExpr::Inv(e) => format!("{}^-1", paren(&e.display(seed))),
            QExpr::Prod(v) if v.is_empty() => "1".into(),
            QExpr::Prod(v) => v.iter().map(|f| f.display(seed)).collect::<Vec<_>>().join(" "),
        }
    }
}

fn paren(s: &str) -> String {
    if s.starts_with('(') && s.ends_with(')') {
        s.to_string()
    } else {
        format!("({s})")
    }
}

/// Images of the target generators as expressions in the source quantum torus.
#[derive(Clone, Debug)]
pub struct QRationalMap {
    pub source: Seed,
    pub target: Seed,
    pub images: Vec<QExpr>,
}

impl QRationalMap {
    pub fn image(&self, name: &str) -> Result<&QExpr> {
        Ok(&self.images[self.target.index_of(name)?])
    }

    /// `self` followed by `next`: images of `next`'s target generators over `self`'s source.
    pub fn then(&self, next: &QRationalMap) -> Result<QRationalMap> {
        if !self.target.same_up_to_order(&next.source) || self.target.names() != next.source.names() {
            return Err(Error::SeedMismatch("maps do not compose".into()));
        }
        let images = next
            .images
            .iter()
            .map(|e| e.substitute(&next.source, &self.images, &self.source))
            .collect::<Result<Vec<_>>>()?;
        Ok(QRationalMap { source: self.source.clone(), target: next.target.clone(), images })
    }

    /// The classical map obtained at `q = 1`.
    pub fn at_q_one(&self) -> Result<ClusterMap> {
        let images = self.images.iter().map(|e| e.at_q_one(&self.source)).collect::<Result<Vec<_>>>()?;
        ClusterMap::new(self.source.clone(), self.target.clone(), images)
    }
}

/// `G_a(q; x) = ∏_{i=1}^{a} (1 + q^{2i−1} x)`, expanded (its factors commute).
pub fn g_factor(seed: &Seed, a: u32, x: &QTorusElem) -> Result<QTorusElem> {
    let one = QTorusElem::one(seed);
    let mut acc = one.clone();
    for i in 1..=a {
        let f = one.add(&x.scale(&QLaurent::q_pow(2 * i as i32 - 1)));
        acc = qmul(seed, &acc, &f)?;
    }
    Ok(acc)
}

/// Quantum mutation at `k` as a map `Frac(T_{μ_k seed}) → Frac(T_seed)`.
pub fn quantum_mutation(seed: &Seed, k: usize) -> Result<QRationalMap> {
    if k >= seed.len() {
        return Err(Error::UnknownVertex(k.to_string()));
    }
    let xk = QTorusElem::generator(seed, k);
    let xk_inv = xk.monomial_inverse()?;
    let images = (0..seed.len())
        .map(|i| {
            let xi = QExpr::Elem(QTorusElem::generator(seed, i));
            let e = seed.eps(i, k);
            Ok(if i == k {
                QExpr::Elem(xk_inv.clone())
            } else if e == 0 {
                xi
            } else if e < 0 {
                xi.times(QExpr::Elem(g_factor(seed, e.unsigned_abs(), &xk)?))
            } else {
                xi.times(QExpr::Elem(g_factor(seed, e.unsigned_abs(), &xk_inv)?).inv())
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(QRationalMap { source: seed.clone(), target: seed.mutate_epsilon(k), images })
}

pub fn quantum_mutation_named(seed: &Seed, k: &str) -> Result<QRationalMap> {
    quantum_mutation(seed, seed.index_of(k)?)
}

/// Checks that every image is `*`-invariant after clearing the inverse factor:
/// `X_i G` is compared with `*(X_i G)`, and `X_i G⁻¹` through `G* X_i = X_i G`.
pub fn mutation_is_star_equivariant(map: &QRationalMap) -> Result<bool> {
    let s = &map.source;
    for img in &map.images {
        let ok = match img {
            QExpr::Prod(v) if v.len() == 2 => match (&v[0], &v[1]) {
                (QExpr::Elem(x), QExpr::Inv(g)) => {
                    let g = g.expand(s)?;
                    qmul(s, &g.star(), x)? == qmul(s, x, &g)?
                }
                _ => {
                    let e = img.expand(s)?;
                    e.star() == e
                }
            },
            _ => {
                let e = img.expand(s)?;
                e.star() == e
            }
        };
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cluster::mutate_x;

    #[test]
    fn mutation_examples() {
        let s = Seed::from_entries(&["qi", "qk", "qj"], &[(0, 1, -1)]).unwrap();
        let m = quantum_mutation(&s, 1).unwrap();
        // X_i(1 + qX_k) = X^{e_i} + q·q^{ε_ik} X^{e_i+e_k} with ε_ik = −1.
        let expected = QTorusElem::monomial(&s, vec![1, 0, 0], QLaurent::one())
            .add(&QTorusElem::monomial(&s, vec![1, 1, 0], QLaurent::one()));
        assert_eq!(m.image("qi").unwrap().expand(&s).unwrap(), expected);
        assert_eq!(m.image("qj").unwrap(), &QExpr::Elem(QTorusElem::generator(&s, 2)));
    }

    #[test]
    fn specializes_to_classical() {
        for e in -3..=3 {
            let s = Seed::from_entries(&["qi", "qk"], &[(0, 1, e)]).unwrap();
            let quantum = quantum_mutation(&s, 1).unwrap().at_q_one().unwrap();
            assert!(quantum.same_as(&mutate_x(&s, 1).unwrap()), "eps = {e}");
        }
    }

    #[test]
    fn mutation_is_an_involution() {
        for e in -2..=2 {
            for f in -2..=2 {
                let s = Seed::from_entries(&["qi", "qk", "qj"], &[(0, 1, e), (1, 2, f), (0, 2, 1)]).unwrap();
                let first = quantum_mutation(&s, 1).unwrap();
                let twice = first.then(&quantum_mutation(&first.target, 1).unwrap()).unwrap();
                for (i, img) in twice.images.iter().enumerate() {
                    let simple = img.simplify(&s).unwrap();
                    assert_eq!(simple, QExpr::Elem(QTorusElem::generator(&s, i)), "eps ({e},{f}), generator {i}");
                }
            }
        }
    }

    #[test]
    fn star_equivariance() {
        for e in -2..=2 {
            let s = Seed::from_entries(&["qi", "qk", "qj"], &[(0, 1, e), (1, 2, 1), (0, 2, -1)]).unwrap();
            for k in 0..3 {
                assert!(mutation_is_star_equivariant(&quantum_mutation(&s, k).unwrap()).unwrap());
            }
        }
    }
}
