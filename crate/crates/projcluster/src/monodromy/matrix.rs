use crate::arith::{Rat, RatFunc, Var};
use crate::{Error, Result};
use std::collections::HashMap;
use std::fmt;

/// A 3×3 matrix over the coordinate function field.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix3(pub [[RatFunc; 3]; 3]);

impl Matrix3 {
    pub fn from_fn(f: impl Fn(usize, usize) -> RatFunc) -> Matrix3 {
        Matrix3(std::array::from_fn(|i| std::array::from_fn(|j| f(i, j))))
    }

    pub fn identity() -> Matrix3 {
        Matrix3::from_fn(|i, j| if i == j { RatFunc::one() } else { RatFunc::zero() })
    }

    pub fn from_ints(m: [[i64; 3]; 3]) -> Matrix3 {
        Matrix3::from_fn(|i, j| RatFunc::int(m[i][j]))
    }

    pub fn get(&self, i: usize, j: usize) -> &RatFunc {
        &self.0[i][j]
    }

    pub fn mul(&self, rhs: &Matrix3) -> Matrix3 {
        Matrix3::from_fn(|i, j| {
            let mut acc = RatFunc::zero();
            for k in 0..3 {
                if !self.0[i][k].is_zero() && !rhs.0[k][j].is_zero() {
                    acc = &acc + &(&self.0[i][k] * &rhs.0[k][j]);
                }
            }
            acc
        })
    }

    pub fn scale(&self, c: &RatFunc) -> Matrix3 {
        Matrix3::from_fn(|i, j| &self.0[i][j] * c)
    }

    pub fn trace(&self) -> RatFunc {
        &(&self.0[0][0] + &self.0[1][1]) + &self.0[2][2]
    }

    /// Minor with the given rows and columns (both increasing).
    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> RatFunc {
        let e = |a: usize, b: usize| &self.0[rows[a]][cols[b]];
        match rows.len() {
            1 => e(0, 0).clone(),
            2 => &(e(0, 0) * e(1, 1)) - &(e(0, 1) * e(1, 0)),
            _ => {
                let mut acc = RatFunc::zero();
                for (j, sign) in [(0usize, 1i64), (1, -1), (2, 1)] {
                    let others: Vec<usize> = (0..3).filter(|&c| c != j).collect();
                    let sub = &(e(1, others[0]) * e(2, others[1])) - &(e(1, others[1]) * e(2, others[0]));
                    acc = &acc + &(&(e(0, j) * &sub) * &RatFunc::int(sign));
                }
                acc
            }
        }
    }

    pub fn det(&self) -> RatFunc {
        self.minor(&[0, 1, 2], &[0, 1, 2])
    }

    pub fn inverse(&self) -> Result<Matrix3> {
        let d = self.det();
        if d.is_zero() {
            return Err(Error::Degenerate("singular matrix".into()));
        }
        let dinv = d.inv()?;
        // Adjugate: entry (i, j) is the signed (j, i) cofactor.
        Ok(Matrix3::from_fn(|i, j| {
            let rows: Vec<usize> = (0..3).filter(|&r| r != j).collect();
            let cols: Vec<usize> = (0..3).filter(|&c| c != i).collect();
            let c = self.minor(&rows, &cols);
            let c = if (i + j) % 2 == 1 { &c * &RatFunc::int(-1) } else { c };
            &c * &dinv
        }))
    }

    pub fn pow(&self, n: u32) -> Matrix3 {
        let mut out = Matrix3::identity();
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    /// Equal up to a nonzero scalar factor.
    pub fn projectively_equal(&self, other: &Matrix3) -> bool {
        let Some((i, j)) = (0..9).map(|k| (k / 3, k % 3)).find(|&(i, j)| !self.0[i][j].is_zero()) else {
            return false;
        };
        if other.0[i][j].is_zero() {
            return false;
        }
        let Ok(c) = other.0[i][j].checked_div(&self.0[i][j]) else {
            return false;
        };
        self.scale(&c) == *other
    }

    pub fn is_upper_triangular(&self) -> bool {
        (0..3).all(|i| (0..i).all(|j| self.0[i][j].is_zero()))
    }

    pub fn is_lower_triangular(&self) -> bool {
        (0..3).all(|i| (i + 1..3).all(|j| self.0[i][j].is_zero()))
    }

    pub fn eval(&self, point: &HashMap<Var, Rat>) -> Result<[[Rat; 3]; 3]> {
        let mut out: [[Rat; 3]; 3] = Default::default();
        for i in 0..3 {
            for j in 0..3 {
                out[i][j] = self.0[i][j].eval_at(point)?;
            }
        }
        Ok(out)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.0.iter().map(|row| serde_json::Value::Array(row.iter().map(|e| e.to_string().into()).collect())).collect(),
        )
    }
}

impl fmt::Display for Matrix3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.0 {
            let cells: Vec<String> = row.iter().map(|e| e.to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// `T(X)`, assigned to the counterclockwise sides of a little triangle.
pub fn t_matrix(x: &RatFunc) -> Matrix3 {
    let (zero, one) = (RatFunc::zero(), RatFunc::one());
    Matrix3([
        [zero.clone(), zero.clone(), one.clone()],
        [zero, RatFunc::int(-1), RatFunc::int(-1)],
        [x.clone(), &one + x, one],
    ])
}

/// `E(Z,W)`, assigned to the edge joining two little triangles.
pub fn e_matrix(z: &RatFunc, w: &RatFunc) -> Result<Matrix3> {
    let zero = RatFunc::zero();
    Ok(Matrix3([
        [zero.clone(), zero.clone(), z.inv()?],
        [zero.clone(), RatFunc::int(-1), zero.clone()],
        [w.clone(), zero.clone(), zero],
    ]))
}

/// `T(X)⁻¹ = X⁻¹·T(X)²`.
pub fn t_inverse(x: &RatFunc) -> Result<Matrix3> {
    Ok(t_matrix(x).pow(2).scale(&x.inv()?))
}
