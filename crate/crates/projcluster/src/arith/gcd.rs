//! Multivariate gcd over Q by recursive primitive remainder sequences.

use super::laurent::Laurent;
use super::monomial::Monomial;
use super::var::Var;
use super::Rat;
use num_traits::Zero;
use std::collections::{BTreeSet, HashMap};

/// Split `a = x^m · p` with `p` free of monomial factors.
pub fn split_monomial(a: &Laurent) -> (Monomial, Laurent) {
    let m = a.min_exponents();
    (m.clone(), a.mul_monomial(&m.inv()))
}

/// Scale to leading coefficient one.
pub fn monic(a: &Laurent) -> Laurent {
    if a.is_zero() {
        return a.clone();
    }
    a.scale(&a.leading_coeff().recip())
}

/// Exact quotient `a / b` in the Laurent ring, if it exists.
pub fn div_exact(a: &Laurent, b: &Laurent) -> Option<Laurent> {
    if b.is_zero() {
        return None;
    }
    if a.is_zero() {
        return Some(Laurent::zero());
    }
    if let Some(inv) = b.monomial_inverse() {
        return Some(a * &inv);
    }
    let (ma, pa) = split_monomial(a);
    let (mb, pb) = split_monomial(b);
    let q = poly_div_exact(&pa, &pb)?;
    Some(q.mul_monomial(&ma.div(&mb)))
}

fn poly_div_exact(a: &Laurent, b: &Laurent) -> Option<Laurent> {
    let (mb, cb) = b.leading().map(|(m, c)| (m.clone(), c.clone()))?;
    let mut r = a.clone();
    let mut q = Laurent::zero();
    while let Some((mr, cr)) = r.leading().map(|(m, c)| (m.clone(), c.clone())) {
        let m = mr.div(&mb);
        if !m.is_nonnegative() {
            return None;
        }
        let t = Laurent::term(cr / &cb, m);
        r = &r - &(&t * b);
        q = &q + &t;
    }
    Some(q)
}

/// Monic gcd of the polynomial parts (monomials are units in the Laurent ring).
pub fn gcd(a: &Laurent, b: &Laurent) -> Laurent {
    if a.is_zero() && b.is_zero() {
        return Laurent::zero();
    }
    if a.is_zero() {
        return monic(&split_monomial(b).1);
    }
    if b.is_zero() {
        return monic(&split_monomial(a).1);
    }
    monic(&gcd_prim(&split_monomial(a).1, &split_monomial(b).1))
}

/// Polynomial gcd keeping monomial factors.
fn poly_gcd(a: &Laurent, b: &Laurent) -> Laurent {
    if a.is_zero() {
        return monic(b);
    }
    if b.is_zero() {
        return monic(a);
    }
    let (ma, pa) = split_monomial(a);
    let (mb, pb) = split_monomial(b);
    let m = ma.meet(&mb);
    monic(&gcd_prim(&pa, &pb)).mul_monomial(&m)
}

fn content_in(a: &Laurent, x: Var) -> Laurent {
    let mut g = Laurent::zero();
    for c in a.coeffs_in(x).values() {
        g = poly_gcd(&g, c);
        if g.is_constant() && !g.is_zero() {
            return Laurent::one();
        }
    }
    g
}

fn primitive_in(a: &Laurent, x: Var) -> Laurent {
    let c = content_in(a, x);
    monic(&div_exact(a, &c).expect("content divides"))
}

fn prem(a: &Laurent, b: &Laurent, x: Var) -> Laurent {
    let db = b.degree_in(x);
    let lcb = b.coeffs_in(x).remove(&db).unwrap_or_default();
    let mut r = a.clone();
    while !r.is_zero() && r.degree_in(x) >= db {
        let dr = r.degree_in(x);
        let lcr = r.coeffs_in(x).remove(&dr).unwrap_or_default();
        let shift = Laurent::var_pow(x, dr - db);
        r = &(&r * &lcb) - &(&(&lcr * &shift) * b);
    }
    r
}

/// gcd of polynomials without monomial content.
fn gcd_prim(a: &Laurent, b: &Laurent) -> Laurent {
    let (_, a) = split_monomial(a);
    let (_, b) = split_monomial(b);
    if a.is_constant() || b.is_constant() {
        return Laurent::one();
    }
    if a == b {
        return monic(&a);
    }
    let va = a.vars();
    let vb = b.vars();
    if let Some(&v) = va.iter().find(|v| !vb.contains(v)) {
        return gcd_prim(&content_in(&a, v), &b);
    }
    if let Some(&v) = vb.iter().find(|v| !va.contains(v)) {
        return gcd_prim(&a, &content_in(&b, v));
    }
    if coprime_by_evaluation(&a, &b, &va) {
        return Laurent::one();
    }
    let x = *va
        .iter()
        .min_by_key(|&&v| (a.degree_in(v).max(b.degree_in(v)), a.degree_in(v) + b.degree_in(v), v.name()))
        .unwrap();
    let ca = content_in(&a, x);
    let cb = content_in(&b, x);
    let gc = gcd_prim(&ca, &cb);
    let mut p = monic(&div_exact(&a, &ca).unwrap());
    let mut q = monic(&div_exact(&b, &cb).unwrap());
    if p.degree_in(x) < q.degree_in(x) {
        std::mem::swap(&mut p, &mut q);
    }
    while !q.is_zero() {
        let r = prem(&p, &q, x);
        p = q;
        q = if r.is_zero() { r } else { primitive_in(&r, x) };
    }
    let g = if p.degree_in(x) == 0 { Laurent::one() } else { primitive_in(&p, x) };
    &g * &gc
}

/// Coefficients in `x` with the other variables set to `point`, lowest degree first.
fn univariate_image(a: &Laurent, x: Var, point: &HashMap<Var, Rat>) -> Option<Vec<Rat>> {
    let coeffs = a.coeffs_in(x);
    let top = *coeffs.keys().next_back()?;
    let mut out = vec![Rat::zero(); top as usize + 1];
    for (d, c) in coeffs {
        out[d as usize] = c.eval(point)?;
    }
    Some(out)
}

fn univariate_gcd_degree(mut p: Vec<Rat>, mut q: Vec<Rat>) -> usize {
    let trim = |v: &mut Vec<Rat>| {
        while v.last().is_some_and(|c| c.is_zero()) {
            v.pop();
        }
    };
    trim(&mut p);
    trim(&mut q);
    while !q.is_empty() {
        while p.len() >= q.len() && !p.is_empty() {
            let f = p.last().unwrap() / q.last().unwrap();
            let shift = p.len() - q.len();
            for (i, c) in q.iter().enumerate() {
                p[shift + i] -= &f * c;
            }
            trim(&mut p);
        }
        std::mem::swap(&mut p, &mut q);
    }
    p.len().saturating_sub(1)
}

/// Certifies `gcd(a, b) = 1` for polynomials in the variables `vars`: if in every variable
/// the specialized gcd is constant at a point where the leading coefficient of `a` survives,
/// the true gcd has degree zero in that variable.
fn coprime_by_evaluation(a: &Laurent, b: &Laurent, vars: &BTreeSet<Var>) -> bool {
    let mut names: Vec<(String, Var)> = a.vars().union(&b.vars()).map(|v| (v.name(), *v)).collect();
    names.sort();
    vars.iter().all(|&x| {
        (0..3i64).any(|attempt| {
            let point: HashMap<Var, Rat> = names
                .iter()
                .enumerate()
                .filter(|(_, (_, v))| *v != x)
                .map(|(i, (_, v))| (*v, Rat::from_integer((2 + (7 * i as i64 + 5 * attempt) % 29).into())))
                .collect();
            match (univariate_image(a, x, &point), univariate_image(b, x, &point)) {
                (Some(pa), Some(pb)) => {
                    pa.len() as i32 - 1 == a.degree_in(x)
                        && !pa.last().unwrap().is_zero()
                        && univariate_gcd_degree(pa, pb) == 0
                }
                _ => false,
            }
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(n: &str) -> Laurent {
        Laurent::var(Var::new(n))
    }

    #[test]
    fn gcd_basic() {
        let x = v("gx");
        let y = v("gy");
        let one = Laurent::one();
        let a = &(&x + &y) * &(&x - &one);
        let b = &(&x + &y) * &(&y + &one);
        assert_eq!(gcd(&a, &b), monic(&(&x + &y)));
        let c = &(&x * &y) + &one;
        assert!(gcd(&c, &(&x + &one)).is_one());
    }

    #[test]
    fn gcd_with_monomials() {
        let x = v("gx");
        let z = v("gz");
        let one = Laurent::one();
        let a = &(&x * &z) * &(&z + &one);
        let b = &z * &(&(&z + &one) * &(&x + &z));
        assert_eq!(gcd(&a, &b), monic(&(&z + &one)));
    }

    #[test]
    fn exact_division() {
        let x = v("gx");
        let y = v("gy");
        let one = Laurent::one();
        let f = &(&x + &y) * &(&(&x * &x) + &one);
        assert_eq!(div_exact(&f, &(&x + &y)).unwrap(), &(&x * &x) + &one);
        assert!(div_exact(&(&x + &one), &(&x + &y)).is_none());
        let g = &f * &x.monomial_inverse().unwrap();
        assert_eq!(div_exact(&g, &(&x + &y)).unwrap(), &x + &x.monomial_inverse().unwrap());
    }

    #[test]
    fn evaluation_certificate() {
        let (x, y, z) = (v("ex"), v("ey"), v("ez"));
        let one = Laurent::one();
        let a = &(&x * &y) + &(&z + &one);
        let b = &(&x * &z) + &(&y * &y);
        let vars = a.vars().intersection(&b.vars()).copied().collect();
        assert!(coprime_by_evaluation(&a, &b, &vars));
        let c = &a * &(&x + &z);
        let d = &b * &(&x + &z);
        let vars = c.vars().intersection(&d.vars()).copied().collect();
        assert!(!coprime_by_evaluation(&c, &d, &vars));
        assert_eq!(gcd(&c, &d), monic(&(&x + &z)));
    }
}
