use crate::arith::Rat;
use crate::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Homogeneous coordinates of a point or a line.
pub type Vec3 = [Rat; 3];

pub fn v3(a: i64, b: i64, c: i64) -> Vec3 {
    [Rat::from_integer(a.into()), Rat::from_integer(b.into()), Rat::from_integer(c.into())]
}

pub fn cross(u: &Vec3, v: &Vec3) -> Vec3 {
    [
        &u[1] * &v[2] - &u[2] * &v[1],
        &u[2] * &v[0] - &u[0] * &v[2],
        &u[0] * &v[1] - &u[1] * &v[0],
    ]
}

pub fn dot(u: &Vec3, v: &Vec3) -> Rat {
    &u[0] * &v[0] + &u[1] * &v[1] + &u[2] * &v[2]
}

pub fn det(u: &Vec3, v: &Vec3, w: &Vec3) -> Rat {
    dot(u, &cross(v, w))
}

pub fn scale(u: &Vec3, s: &Rat) -> Vec3 {
    [&u[0] * s, &u[1] * s, &u[2] * s]
}

pub fn add(u: &Vec3, v: &Vec3) -> Vec3 {
    [&u[0] + &v[0], &u[1] + &v[1], &u[2] + &v[2]]
}

pub fn sub(u: &Vec3, v: &Vec3) -> Vec3 {
    [&u[0] - &v[0], &u[1] - &v[1], &u[2] - &v[2]]
}

pub fn is_zero(u: &Vec3) -> bool {
    u.iter().all(Zero::is_zero)
}

/// Equal up to a nonzero scalar.
pub fn proportional(u: &Vec3, v: &Vec3) -> bool {
    !is_zero(u) && !is_zero(v) && is_zero(&cross(u, v))
}

/// `u = λ·v`, returning λ.
pub fn ratio(u: &Vec3, v: &Vec3) -> Result<Rat> {
    let k = (0..3)
        .find(|&i| !v[i].is_zero())
        .ok_or_else(|| Error::Degenerate("zero vector".into()))?;
    let l = &u[k] / &v[k];
    if scale(v, &l) != *u {
        return Err(Error::Degenerate("vectors are not proportional".into()));
    }
    Ok(l)
}

/// Primitive integer representative, first nonzero entry positive.
pub fn primitive(u: &Vec3) -> [BigInt; 3] {
    let lcm = u.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = u.iter().map(|x| (x * Rat::from_integer(lcm.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let g = if g.is_zero() { BigInt::one() } else { g };
    let sign = if ints.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
        -BigInt::one()
    } else {
        BigInt::one()
    };
    [&ints[0] / &g * &sign, &ints[1] / &g * &sign, &ints[2] / &g * &sign]
}

pub fn from_ints(u: &[BigInt; 3]) -> Vec3 {
    [Rat::from_integer(u[0].clone()), Rat::from_integer(u[1].clone()), Rat::from_integer(u[2].clone())]
}

/// A point with a line through it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Flag {
    pub point: Vec3,
    pub line: Vec3,
}

impl Flag {
    pub fn new(point: Vec3, line: Vec3) -> Result<Flag> {
        if is_zero(&point) || is_zero(&line) {
            return Err(Error::Degenerate("zero coordinates".into()));
        }
        if !dot(&point, &line).is_zero() {
            return Err(Error::Degenerate("point is not on the line".into()));
        }
        Ok(Flag { point, line })
    }

    /// Points become lines and lines become points.
    pub fn dual(&self) -> Flag {
        Flag { point: self.line.clone(), line: self.point.clone() }
    }

    /// Image under `g`: points by `g`, lines by the inverse transpose.
    pub fn transform(&self, g: &[Vec3; 3]) -> Result<Flag> {
        let apply = |m: &[Vec3; 3], v: &Vec3| [dot(&m[0], v), dot(&m[1], v), dot(&m[2], v)];
        let inv_t = inverse_transpose(g)?;
        Flag::new(apply(g, &self.point), apply(&inv_t, &self.line))
    }
}

/// `(g⁻¹)ᵀ` up to the scalar `det g`.
fn inverse_transpose(g: &[Vec3; 3]) -> Result<[Vec3; 3]> {
    let col = |j: usize| [g[0][j].clone(), g[1][j].clone(), g[2][j].clone()];
    let (c0, c1, c2) = (col(0), col(1), col(2));
    let d = det(&c0, &c1, &c2);
    if d.is_zero() {
        return Err(Error::Degenerate("singular matrix".into()));
    }
    let r = [cross(&c1, &c2), cross(&c2, &c0), cross(&c0, &c1)];
    Ok(std::array::from_fn(|i| [r[0][i].clone(), r[1][i].clone(), r[2][i].clone()]))
}
