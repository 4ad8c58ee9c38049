use super::monomial::Monomial;
use super::var::Var;
use super::Rat;
use num_traits::{One, Signed, Zero};
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::ops::{Add, Mul, Neg, Sub};

/// Multivariate Laurent polynomial with rational coefficients.
///
/// Terms are kept in a map ordered by [`Monomial`]'s lex order, so equality
/// is structural.
#[derive(Clone, PartialEq, Eq, Hash, Default, Debug)]
pub struct Laurent {
    terms: BTreeMap<Monomial, Rat>,
}

impl Laurent {
    pub fn zero() -> Laurent {
        Laurent::default()
    }

    pub fn one() -> Laurent {
        Laurent::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Laurent {
        Laurent::term(c, Monomial::one())
    }

    pub fn int(n: i64) -> Laurent {
        Laurent::constant(Rat::from_integer(n.into()))
    }

    pub fn var(v: Var) -> Laurent {
        Laurent::term(Rat::one(), Monomial::var(v))
    }

    pub fn var_pow(v: Var, e: i32) -> Laurent {
        Laurent::term(Rat::one(), Monomial::from_pairs([(v, e)]))
    }

    pub fn term(c: Rat, m: Monomial) -> Laurent {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Laurent { terms }
    }

    pub fn from_terms(it: impl IntoIterator<Item = (Monomial, Rat)>) -> Laurent {
        let mut out = Laurent::zero();
        for (m, c) in it {
            out.add_term(m, c);
        }
        out
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&Monomial::one()).is_some_and(|c| c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.contains_key(&Monomial::one()))
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn constant_value(&self) -> Option<Rat> {
        if self.is_zero() {
            Some(Rat::zero())
        } else if self.is_constant() {
            self.terms.values().next().cloned()
        } else {
            None
        }
    }

    fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Leading term in lex order.
    pub fn leading(&self) -> Option<(&Monomial, &Rat)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> Rat {
        self.leading().map(|t| t.1.clone()).unwrap_or_else(Rat::zero)
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.terms.keys().flat_map(|m| m.vars().collect::<Vec<_>>()).collect()
    }

    pub fn scale(&self, c: &Rat) -> Laurent {
        if c.is_zero() {
            return Laurent::zero();
        }
        Laurent { terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Laurent {
        Laurent { terms: self.terms.iter().map(|(k, a)| (k.mul(m), a.clone())).collect() }
    }

    pub fn pow(&self, n: u32) -> Laurent {
        if self.is_monomial() {
            let (m, c) = self.leading().unwrap();
            return Laurent::term(num_traits::pow(c.clone(), n as usize), m.pow(n as i32));
        }
        let mut acc = Laurent::one();
        let mut base = self.clone();
        let mut k = n;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Inverse of a monomial, `None` otherwise.
    pub fn monomial_inverse(&self) -> Option<Laurent> {
        if !self.is_monomial() {
            return None;
        }
        let (m, c) = self.leading().unwrap();
        Some(Laurent::term(c.recip(), m.inv()))
    }

    /// Componentwise minimum exponent over all terms.
    pub fn min_exponents(&self) -> Monomial {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else { return Monomial::one() };
        let mut acc = first.clone();
        for m in it {
            acc = acc.meet(m);
        }
        acc
    }

    /// True when every exponent is nonnegative.
    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|m| m.is_nonnegative())
    }

    pub fn degree_in(&self, v: Var) -> i32 {
        self.terms.keys().map(|m| m.exponent(v)).max().unwrap_or(0)
    }

    /// View as a polynomial in `v` with coefficients free of `v`.
    pub fn coeffs_in(&self, v: Var) -> BTreeMap<i32, Laurent> {
        let mut out: BTreeMap<i32, Laurent> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.exponent(v)).or_default().add_term(m.without(v), c.clone());
        }
        out
    }

    pub fn derivative(&self, v: Var) -> Laurent {
        let mut out = Laurent::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(v);
            if e != 0 {
                out.add_term(m.div(&Monomial::var(v)), c * Rat::from_integer(e.into()));
            }
        }
        out
    }

    /// Exact evaluation; `None` if a variable is missing or a negative power hits zero.
    pub fn eval(&self, point: &HashMap<Var, Rat>) -> Option<Rat> {
        let mut total = Rat::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for &(v, e) in m.pairs() {
                let x = point.get(&v)?;
                if e < 0 && x.is_zero() {
                    return None;
                }
                t *= num_traits::pow::Pow::pow(x, e);
            }
            total += t;
        }
        Some(total)
    }

    pub fn eval_f64(&self, point: &HashMap<Var, f64>) -> Option<f64> {
        let mut total = 0.0;
        for (m, c) in &self.terms {
            let mut t = super::rat_to_f64(c);
            for &(v, e) in m.pairs() {
                t *= point.get(&v)?.powi(e);
            }
            total += t;
        }
        Some(total)
    }

    /// All coefficients positive.
    pub fn all_positive(&self) -> bool {
        !self.is_zero() && self.terms.values().all(|c| c.is_positive())
    }

    pub fn all_positive_integers(&self) -> bool {
        self.all_positive() && self.terms.values().all(|c| c.is_integer())
    }

    /// Sum of coefficients (value at the all-ones point).
    pub fn coefficient_sum(&self) -> Rat {
        self.terms.values().fold(Rat::zero(), |a, c| a + c)
    }

    /// Apply a monomial substitution `v ↦ image` to each variable.
    pub fn map_monomials(&self, f: impl Fn(&Monomial) -> (Rat, Monomial)) -> Laurent {
        let mut out = Laurent::zero();
        for (m, c) in &self.terms {
            let (k, m2) = f(m);
            out.add_term(m2, c * k);
        }
        out
    }
}

impl Add for &Laurent {
    type Output = Laurent;
    fn add(self, rhs: &Laurent) -> Laurent {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Laurent {
    type Output = Laurent;
    fn sub(self, rhs: &Laurent) -> Laurent {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        Laurent { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect() }
    }
}

impl Mul for &Laurent {
    type Output = Laurent;
    fn mul(self, rhs: &Laurent) -> Laurent {
        let mut out = Laurent::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for Laurent {
            type Output = Laurent;
            fn $f(self, rhs: Laurent) -> Laurent {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&Laurent> for Laurent {
            type Output = Laurent;
            fn $f(self, rhs: &Laurent) -> Laurent {
                (&self).$f(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        -&self
    }
}

impl From<Var> for Laurent {
    fn from(v: Var) -> Laurent {
        Laurent::var(v)
    }
}
