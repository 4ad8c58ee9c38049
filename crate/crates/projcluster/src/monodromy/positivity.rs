use super::graph::{LoopWord, MonodromyGraph};
use super::matrix::Matrix3;
use crate::arith::{is_positive_laurent, Laurent, Positivity, Rat, RatFunc};
use crate::{Error, Result};
use num_traits::{Signed, Zero};
use serde::Serialize;
use std::collections::HashMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Triangular {
    None,
    Upper,
    Lower,
}

#[derive(Clone, Debug, Serialize)]
pub struct MinorCertificate {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub value: String,
    #[serde(flatten)]
    pub status: Positivity,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum TpStatus {
    Certified,
    Failed,
    Indeterminate,
}

#[derive(Clone, Debug, Serialize)]
pub struct TpCertificate {
    pub status: TpStatus,
    pub minors: Vec<MinorCertificate>,
}

fn subsets(k: usize) -> Vec<Vec<usize>> {
    match k {
        1 => vec![vec![0], vec![1], vec![2]],
        2 => vec![vec![0, 1], vec![0, 2], vec![1, 2]],
        _ => vec![vec![0, 1, 2]],
    }
}

/// Certificates for every minor; in triangular mode identically zero minors are skipped.
pub fn certify_total_positivity(m: &Matrix3, hint: Triangular) -> TpCertificate {
    let mut minors = Vec::new();
    let mut status = TpStatus::Certified;
    for k in 1..=3 {
        for rows in subsets(k) {
            for cols in subsets(k) {
                let v = m.minor(&rows, &cols);
                if v.is_zero() && hint != Triangular::None {
                    continue;
                }
                let p = if v.is_zero() {
                    Positivity::NegativeWitness { point: Default::default(), value: "0".into() }
                } else {
                    is_positive_laurent(&v)
                };
                match &p {
                    Positivity::NegativeWitness { .. } => status = TpStatus::Failed,
                    Positivity::Indeterminate if status == TpStatus::Certified => status = TpStatus::Indeterminate,
                    _ => {}
                }
                minors.push(MinorCertificate { rows: rows.clone(), cols, value: v.to_string(), status: p });
            }
        }
    }
    TpCertificate { status, minors }
}

/// Total positivity of some cyclic rotation of the loop (a conjugate of its monodromy).
/// Returns the rotation used, or the best status seen when none certifies.
pub fn certify_loop_positivity(g: &MonodromyGraph, w: &LoopWord) -> Result<(Option<usize>, TpCertificate)> {
    let hint = if g.is_peripheral(w)? { Triangular::Upper } else { Triangular::None };
    let mut last = None;
    for k in 0..w.len() {
        let m = g.monodromy(&w.rotated(k))?;
        let hint = match hint {
            Triangular::None => Triangular::None,
            _ if m.is_upper_triangular() => Triangular::Upper,
            _ if m.is_lower_triangular() => Triangular::Lower,
            _ => Triangular::None,
        };
        let cert = certify_total_positivity(&m, hint);
        if cert.status == TpStatus::Certified {
            return Ok((Some(k), cert));
        }
        last = Some(cert);
    }
    let mut cert = last.ok_or_else(|| Error::InvalidLoop("empty word".into()))?;
    if cert.status == TpStatus::Failed {
        cert.status = TpStatus::Indeterminate;
    }
    Ok((None, cert))
}

/// Three distinct real eigenvalues at a rational point, decided by a Sturm sequence of
/// the characteristic polynomial.
pub fn check_regular_hyperbolic(m: &Matrix3, point: &HashMap<crate::Var, Rat>) -> Result<bool> {
    let a = m.eval(point)?;
    Ok(is_regular_hyperbolic(&a))
}

pub fn is_regular_hyperbolic(a: &[[Rat; 3]; 3]) -> bool {
    let tr = &a[0][0] + &a[1][1] + &a[2][2];
    let m2 = |i: usize, j: usize| &a[i][i] * &a[j][j] - &a[i][j] * &a[j][i];
    let c2 = m2(0, 1) + m2(0, 2) + m2(1, 2);
    let det = &a[0][0] * (&a[1][1] * &a[2][2] - &a[1][2] * &a[2][1])
        - &a[0][1] * (&a[1][0] * &a[2][2] - &a[1][2] * &a[2][0])
        + &a[0][2] * (&a[1][0] * &a[2][1] - &a[1][1] * &a[2][0]);
    // λ³ − tr λ² + c2 λ − det, coefficients from the constant term up.
    let p = vec![-det, c2, -tr, Rat::from_integer(1.into())];
    distinct_real_roots(&p) == 3
}

/// Number of distinct real roots, by Sturm's theorem.
pub fn distinct_real_roots(p: &[Rat]) -> usize {
    let p = trim(p.to_vec());
    if p.len() <= 1 {
        return 0;
    }
    let mut seq = vec![p.clone(), derivative(&p)];
    loop {
        let n = seq.len();
        let r = rem(&seq[n - 2], &seq[n - 1]);
        if r.is_empty() {
            break;
        }
        seq.push(r.into_iter().map(|c| -c).collect());
    }
    let changes = |signs: Vec<i32>| {
        let s: Vec<i32> = signs.into_iter().filter(|&x| x != 0).collect();
        s.windows(2).filter(|w| w[0] != w[1]).count()
    };
    let sign = |r: &Rat| if r.is_positive() { 1 } else if r.is_negative() { -1 } else { 0 };
    let at_pos = seq.iter().map(|q| sign(q.last().unwrap())).collect();
    let at_neg = seq.iter().map(|q| sign(q.last().unwrap()) * if (q.len() - 1) % 2 == 0 { 1 } else { -1 }).collect();
    changes(at_neg) - changes(at_pos)
}

fn trim(mut p: Vec<Rat>) -> Vec<Rat> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn derivative(p: &[Rat]) -> Vec<Rat> {
    trim(p.iter().enumerate().skip(1).map(|(i, c)| c * Rat::from_integer((i as i64).into())).collect())
}

fn rem(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut r = a.to_vec();
    let lead = b.last().unwrap();
    while r.len() >= b.len() {
        let c = r.last().unwrap() / lead;
        let shift = r.len() - b.len();
        for (i, bc) in b.iter().enumerate() {
            r[shift + i] = &r[shift + i] - &c * bc;
        }
        r.pop();
        r = trim(r);
    }
    r
}

/// Trace of the `n`-th power of the monodromy with the verbatim matrices, and its
/// positivity certificate.
pub fn trace_of_power(g: &MonodromyGraph, w: &LoopWord, n: u32) -> Result<(RatFunc, Positivity)> {
    if n == 0 {
        return Err(Error::InvalidLoop("power must be at least 1".into()));
    }
    let t = g.monodromy(w)?.pow(n).trace();
    let cert = is_positive_laurent(&t);
    Ok((t, cert))
}

/// The trace as a Laurent polynomial, if it is one.
pub fn trace_laurent(t: &RatFunc) -> Option<Laurent> {
    t.as_laurent().cloned()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::monodromy::matrix::{e_matrix, t_inverse, t_matrix};
    use crate::surface::Triangulation;

    fn v(n: &str) -> RatFunc {
        RatFunc::named(n)
    }

    #[test]
    fn triangular_factors() {
        let e = e_matrix(&v("mz"), &v("mw")).unwrap();
        let up = e.mul(&t_matrix(&v("mx")));
        assert_eq!(certify_total_positivity(&up, Triangular::Upper).status, TpStatus::Certified);
        let low = e.mul(&t_inverse(&v("mx")).unwrap());
        assert_eq!(certify_total_positivity(&low, Triangular::Lower).status, TpStatus::Certified);
        assert_eq!(certify_total_positivity(&Matrix3::identity(), Triangular::None).status, TpStatus::Failed);
    }

    #[test]
    fn sturm_counts() {
        let r = |v: &[i64]| v.iter().map(|&x| rat(x, 1)).collect::<Vec<_>>();
        assert_eq!(distinct_real_roots(&r(&[-6, 11, -6, 1])), 3);
        assert_eq!(distinct_real_roots(&r(&[1, 0, 1])), 0);
        assert_eq!(distinct_real_roots(&r(&[-1, 3, -3, 1])), 1);
        let scalar = [[rat(2, 1), rat(0, 1), rat(0, 1)], [rat(0, 1), rat(2, 1), rat(0, 1)], [rat(0, 1), rat(0, 1), rat(2, 1)]];
        assert!(!is_regular_hyperbolic(&scalar));
    }

    #[test]
    fn torus_loops_are_positive() {
        let tri = Triangulation::surface(1, 1).unwrap();
        let g = MonodromyGraph::new(&tri).unwrap();
        for w in g.loops(4) {
            let (_, cert) = trace_of_power(&g, &w, 1).unwrap();
            assert_eq!(cert, Positivity::PositiveLaurent, "{}", w.display(&tri));
            let (rot, tp) = certify_loop_positivity(&g, &w).unwrap();
            assert!(rot.is_some(), "{} {:?}", w.display(&tri), tp.status);
        }
    }

    #[test]
    fn torus_loop_is_regular_hyperbolic() {
        use rand::SeedableRng;
        let tri = Triangulation::surface(1, 1).unwrap();
        let g = MonodromyGraph::new(&tri).unwrap();
        let w = LoopWord::parse("0+ 2+", &tri).unwrap();
        let m = g.monodromy(&w).unwrap();
        let vars: Vec<crate::Var> = tri.point_names().iter().map(|n| crate::Var::new(n)).collect();
        let ones = vars.iter().map(|&v| (v, rat(1, 1))).collect();
        assert!(check_regular_hyperbolic(&m, &ones).unwrap());
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let p = crate::arith::random_positive_point(&vars, &mut rng);
            assert!(check_regular_hyperbolic(&m, &p).unwrap());
        }
        let peripheral = LoopWord::parse("0- 2- 1- 0+ 2+ 1+", &tri).unwrap();
        assert!(!check_regular_hyperbolic(&g.monodromy(&peripheral).unwrap(), &ones).unwrap());
    }
}
