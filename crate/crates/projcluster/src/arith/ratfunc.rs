use super::gcd::{div_exact, gcd, split_monomial};
use super::laurent::Laurent;
use super::var::Var;
use super::Rat;
use crate::{Error, Result};
use num_traits::{One, Zero};
use std::collections::HashMap;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Reduced quotient of Laurent polynomials.
///
/// Canonical form: `den` is a polynomial with no monomial factor and leading
/// coefficient one, and `gcd(num, den) = 1`. A value is a Laurent polynomial
/// exactly when `den == 1`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFunc {
    num: Laurent,
    den: Laurent,
}

impl Default for RatFunc {
    fn default() -> Self {
        RatFunc::zero()
    }
}

impl RatFunc {
    pub fn zero() -> RatFunc {
        RatFunc { num: Laurent::zero(), den: Laurent::one() }
    }

    pub fn one() -> RatFunc {
        RatFunc { num: Laurent::one(), den: Laurent::one() }
    }

    pub fn var(v: Var) -> RatFunc {
        RatFunc::from(Laurent::var(v))
    }

    pub fn named(name: &str) -> RatFunc {
        RatFunc::var(Var::new(name))
    }

    pub fn constant(c: Rat) -> RatFunc {
        RatFunc::from(Laurent::constant(c))
    }

    pub fn int(n: i64) -> RatFunc {
        RatFunc::from(Laurent::int(n))
    }

    pub fn new(num: Laurent, den: Laurent) -> Result<RatFunc> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: Laurent, den: Laurent) -> RatFunc {
        if num.is_zero() {
            return RatFunc::zero();
        }
        let (m, pden) = split_monomial(&den);
        let num = num.mul_monomial(&m.inv());
        let g = gcd(&num, &pden);
        let (num, pden) = if g.is_one() {
            (num, pden)
        } else {
            (div_exact(&num, &g).unwrap(), div_exact(&pden, &g).unwrap())
        };
        Self::normalized(num, pden)
    }

    /// Normalize a coprime pair whose `den` has no monomial factor.
    fn normalized(num: Laurent, den: Laurent) -> RatFunc {
        let lc = den.leading_coeff();
        if lc.is_one() {
            RatFunc { num, den }
        } else {
            let s = lc.recip();
            RatFunc { num: num.scale(&s), den: den.scale(&s) }
        }
    }

    pub fn num(&self) -> &Laurent {
        &self.num
    }

    pub fn den(&self) -> &Laurent {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_laurent(&self) -> Option<&Laurent> {
        self.is_laurent().then_some(&self.num)
    }

    pub fn constant_value(&self) -> Option<Rat> {
        if self.is_laurent() {
            self.num.constant_value()
        } else {
            None
        }
    }

    pub fn vars(&self) -> std::collections::BTreeSet<Var> {
        let mut v = self.num.vars();
        v.extend(self.den.vars());
        v
    }

    pub fn inv(&self) -> Result<RatFunc> {
        if self.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        let (m, pnum) = split_monomial(&self.num);
        let num = self.den.mul_monomial(&m.inv());
        Ok(Self::normalized(num, pnum))
    }

    pub fn pow(&self, n: i32) -> Result<RatFunc> {
        if n < 0 {
            return self.inv()?.pow(-n);
        }
        let n = n as u32;
        Ok(RatFunc { num: self.num.pow(n), den: self.den.pow(n) }.renormalized())
    }

    fn renormalized(self) -> RatFunc {
        Self::normalized(self.num, self.den)
    }

    pub fn scale(&self, c: &Rat) -> RatFunc {
        RatFunc { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn derivative(&self, v: Var) -> RatFunc {
        let dn = self.num.derivative(v);
        let dd = self.den.derivative(v);
        if dd.is_zero() {
            return RatFunc::reduce(dn, self.den.clone());
        }
        let num = &(&dn * &self.den) - &(&self.num * &dd);
        RatFunc::reduce(num, self.den.pow(2))
    }

    /// Simultaneous substitution of variables; unmapped variables stay fixed.
    pub fn substitute(&self, assignment: &HashMap<Var, RatFunc>) -> Result<RatFunc> {
        let mut cache: HashMap<(Var, i32), RatFunc> = HashMap::new();
        let num = subst_laurent(&self.num, assignment, &mut cache)?;
        let den = subst_laurent(&self.den, assignment, &mut cache)?;
        if den.is_zero() {
            return Err(Error::DenominatorVanishes(self.to_string()));
        }
        num.checked_div(&den)
    }

    pub fn eval_at(&self, point: &HashMap<Var, Rat>) -> Result<Rat> {
        let d = self.den.eval(point).ok_or_else(|| self.missing(point))?;
        if d.is_zero() {
            return Err(Error::PoleAtPoint(self.den.to_string()));
        }
        let n = self.num.eval(point).ok_or_else(|| self.missing(point))?;
        Ok(n / d)
    }

    fn missing(&self, point: &HashMap<Var, Rat>) -> Error {
        match self.vars().into_iter().find(|v| !point.contains_key(v)) {
            Some(v) => Error::UnknownVariable(v.name()),
            None => Error::PoleAtPoint(self.num.to_string()),
        }
    }

    pub fn eval_f64(&self, point: &HashMap<Var, f64>) -> Option<f64> {
        Some(self.num.eval_f64(point)? / self.den.eval_f64(point)?)
    }

    pub fn checked_div(&self, rhs: &RatFunc) -> Result<RatFunc> {
        Ok(self * &rhs.inv()?)
    }
}

fn subst_laurent(
    p: &Laurent,
    a: &HashMap<Var, RatFunc>,
    cache: &mut HashMap<(Var, i32), RatFunc>,
) -> Result<RatFunc> {
    let mut acc = RatFunc::zero();
    for (m, c) in p.terms() {
        let mut t = RatFunc::constant(c.clone());
        for &(v, e) in m.pairs() {
            let img = match cache.get(&(v, e)) {
                Some(r) => r.clone(),
                None => {
                    let base = a.get(&v).cloned().unwrap_or_else(|| RatFunc::var(v));
                    let r = base.pow(e).map_err(|_| Error::DenominatorVanishes(v.name()))?;
                    cache.insert((v, e), r.clone());
                    r
                }
            };
            t = &t * &img;
        }
        acc = &acc + &t;
    }
    Ok(acc)
}

impl From<Laurent> for RatFunc {
    fn from(l: Laurent) -> RatFunc {
        RatFunc { num: l, den: Laurent::one() }
    }
}

impl From<Var> for RatFunc {
    fn from(v: Var) -> RatFunc {
        RatFunc::var(v)
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        if self.is_laurent() && rhs.is_laurent() {
            return RatFunc::from(&self.num * &rhs.num);
        }
        let g1 = gcd(&self.num, &rhs.den);
        let g2 = gcd(&rhs.num, &self.den);
        let a = div_exact(&self.num, &g1).unwrap();
        let d = div_exact(&rhs.den, &g1).unwrap();
        let c = div_exact(&rhs.num, &g2).unwrap();
        let b = div_exact(&self.den, &g2).unwrap();
        RatFunc::normalized(&a * &c, &b * &d)
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            let num = &self.num + &rhs.num;
            if self.den.is_one() {
                return RatFunc::from(num);
            }
            return RatFunc::reduce(num, self.den.clone());
        }
        let g = gcd(&self.den, &rhs.den);
        let b1 = div_exact(&self.den, &g).unwrap();
        let d1 = div_exact(&rhs.den, &g).unwrap();
        let num = &(&self.num * &d1) + &(&rhs.num * &b1);
        let den = &self.den * &d1;
        if num.is_zero() {
            return RatFunc::zero();
        }
        let g2 = gcd(&num, &g);
        if g2.is_one() {
            RatFunc::normalized(num, den)
        } else {
            RatFunc::normalized(div_exact(&num, &g2).unwrap(), div_exact(&den, &g2).unwrap())
        }
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

/// Panics on division by zero; use [`RatFunc::checked_div`] for a checked version.
impl Div for &RatFunc {
    type Output = RatFunc;
    fn div(self, rhs: &RatFunc) -> RatFunc {
        RatFunc::checked_div(self, rhs).expect("division by zero rational function")
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for RatFunc {
            type Output = RatFunc;
            fn $f(self, rhs: RatFunc) -> RatFunc {
                $tr::$f(&self, &rhs)
            }
        }
        impl $tr<&RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $f(self, rhs: &RatFunc) -> RatFunc {
                $tr::$f(&self, rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(n: &str) -> RatFunc {
        RatFunc::named(n)
    }

    #[test]
    fn reduction() {
        let x = v("rx");
        let one = RatFunc::one();
        let a = &(&x * &x) - &one;
        let b = &x - &one;
        let q = &a / &b;
        assert_eq!(q, &x + &one);
        assert!(q.is_laurent());
        let inv = x.inv().unwrap();
        assert!(inv.is_laurent());
        assert!((&inv * &x).is_one());
    }

    #[test]
    fn substitution_roundtrip() {
        let x = Var::new("rsx");
        let z = Var::new("rsz");
        let e = &RatFunc::var(x) / &RatFunc::var(z);
        let mut a = HashMap::new();
        a.insert(x, &RatFunc::var(x) * &(&RatFunc::one() + &RatFunc::var(z)));
        let r = e.substitute(&a).unwrap();
        assert_eq!(r, &(&RatFunc::var(x) * &(&RatFunc::one() + &RatFunc::var(z))) / &RatFunc::var(z));
        let mut inv = HashMap::new();
        inv.insert(x, RatFunc::var(x).inv().unwrap());
        let twice = RatFunc::var(x).substitute(&inv).unwrap().substitute(&inv).unwrap();
        assert_eq!(twice, RatFunc::var(x));
    }

    #[test]
    fn evaluation() {
        let x = Var::new("ex");
        let z = Var::new("ez");
        let w = Var::new("ew");
        let one = RatFunc::one();
        let f = &(&one + &RatFunc::var(z))
            / &(&(&RatFunc::var(x) * &RatFunc::var(z)) * &(&one + &RatFunc::var(w)));
        let p: HashMap<Var, Rat> = [(x, Rat::one()), (z, Rat::one()), (w, Rat::one())].into();
        assert_eq!(f.eval_at(&p).unwrap(), Rat::one());
        let g = (&RatFunc::var(x) - &one).inv().unwrap();
        assert!(g.eval_at(&p).is_err());
    }
}
