use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, ToPrimitive, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Laurent polynomial in `q` with integer coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QLaurent(BTreeMap<i32, BigInt>);

impl QLaurent {
    pub fn zero() -> QLaurent {
        QLaurent(BTreeMap::new())
    }

    pub fn one() -> QLaurent {
        QLaurent::q_pow(0)
    }

    /// `q^n`.
    pub fn q_pow(n: i32) -> QLaurent {
        QLaurent::term(BigInt::one(), n)
    }

    pub fn term(c: BigInt, n: i32) -> QLaurent {
        let mut m = BTreeMap::new();
        if !c.is_zero() {
            m.insert(n, c);
        }
        QLaurent(m)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &BigInt)> {
        self.0.iter().map(|(k, v)| (*k, v))
    }

    /// `q ↦ q⁻¹`.
    pub fn bar(&self) -> QLaurent {
        QLaurent(self.0.iter().map(|(k, v)| (-k, v.clone())).collect())
    }

    pub fn shift(&self, n: i32) -> QLaurent {
        QLaurent(self.0.iter().map(|(k, v)| (k + n, v.clone())).collect())
    }

    /// Value at `q = 1`.
    pub fn at_one(&self) -> BigInt {
        self.0.values().sum()
    }

    pub fn eval(&self, q: Complex64) -> Complex64 {
        self.0.iter().map(|(k, v)| q.powi(*k) * v.to_f64().unwrap_or(f64::NAN)).sum()
    }

    fn insert(&mut self, k: i32, c: BigInt) {
        let e = self.0.entry(k).or_insert_with(BigInt::zero);
        *e += c;
        if e.is_zero() {
            self.0.remove(&k);
        }
    }
}

impl Add for &QLaurent {
    type Output = QLaurent;
    fn add(self, rhs: &QLaurent) -> QLaurent {
        let mut out = self.clone();
        for (k, v) in &rhs.0 {
            out.insert(*k, v.clone());
        }
        out
    }
}

impl Sub for &QLaurent {
    type Output = QLaurent;
    fn sub(self, rhs: &QLaurent) -> QLaurent {
        self + &(-rhs)
    }
}

impl Neg for &QLaurent {
    type Output = QLaurent;
    fn neg(self) -> QLaurent {
        QLaurent(self.0.iter().map(|(k, v)| (*k, -v)).collect())
    }
}

impl Mul for &QLaurent {
    type Output = QLaurent;
    fn mul(self, rhs: &QLaurent) -> QLaurent {
        let mut out = QLaurent::zero();
        for (a, x) in &self.0 {
            for (b, y) in &rhs.0 {
                out.insert(a + b, x * y);
            }
        }
        out
    }
}

impl fmt::Display for QLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in &self.0 {
            let neg = c < &BigInt::zero();
            let abs = if neg { -c } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let mono = match k {
                0 => String::new(),
                1 => "q".into(),
                _ => format!("q^{k}"),
            };
            match (abs.is_one(), mono.is_empty()) {
                (true, true) => write!(f, "1")?,
                (true, false) => write!(f, "{mono}")?,
                (false, true) => write!(f, "{abs}")?,
                (false, false) => write!(f, "{abs}*{mono}")?,
            }
        }
        Ok(())
    }
}
