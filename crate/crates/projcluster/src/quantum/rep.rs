use super::expr::{QExpr, QRationalMap};
use super::torus::QTorusElem;
use crate::cluster::Seed;
use crate::{Error, Result};
use nalgebra::DMatrix;
use num_complex::Complex64;
use std::collections::HashMap;
use std::f64::consts::PI;

pub type CMat = DMatrix<Complex64>;

/// Integer basis `b_r` (rows) in which the form `G = B ε Bᵀ` is block diagonal with
/// blocks `[[0, d], [−d, 0]]` followed by a kernel. `coords[i]` expresses `e_i` in the basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewNormalForm {
    pub basis: Vec<Vec<i64>>,
    pub blocks: Vec<i64>,
    pub coords: Vec<Vec<i64>>,
}

fn gram(b: &[Vec<i64>], eps: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = b.len();
    let mut g = vec![vec![0; n]; n];
    for r in 0..n {
        for s in 0..n {
            let mut acc = 0;
            for i in 0..n {
                if b[r][i] == 0 {
                    continue;
                }
                for j in 0..n {
                    acc += b[r][i] * eps[i][j] * b[s][j];
                }
            }
            g[r][s] = acc;
        }
    }
    g
}

pub fn skew_normal_form(seed: &Seed) -> SkewNormalForm {
    let n = seed.len();
    let eps: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| seed.eps(i, j) as i64).collect()).collect();
    let unit = |i: usize| (0..n).map(|j| i64::from(i == j)).collect::<Vec<i64>>();
    let mut b: Vec<Vec<i64>> = (0..n).map(unit).collect();
    let mut inv: Vec<Vec<i64>> = (0..n).map(unit).collect();
    let swap = |b: &mut Vec<Vec<i64>>, inv: &mut Vec<Vec<i64>>, r: usize, s: usize| {
        b.swap(r, s);
        for row in inv.iter_mut() {
            row.swap(r, s);
        }
    };
    // b_r ← b_r − x·b_p, with the inverse updated by column p += x·column r.
    let axpy = |b: &mut Vec<Vec<i64>>, inv: &mut Vec<Vec<i64>>, r: usize, p: usize, x: i64| {
        if x == 0 {
            return;
        }
        for i in 0..n {
            b[r][i] -= x * b[p][i];
        }
        for row in inv.iter_mut() {
            row[p] += x * row[r];
        }
    };
    let mut blocks = Vec::new();
    let mut p = 0;
    'outer: while p + 1 < n {
        let g = gram(&b, &eps);
        let mut best: Option<(usize, usize)> = None;
        for r in p..n {
            for s in p..n {
                if g[r][s] > 0 && best.is_none_or(|(i, j)| g[r][s] < g[i][j]) {
                    best = Some((r, s));
                }
            }
        }
        let Some((i, j)) = best else { break };
        swap(&mut b, &mut inv, p, i);
        let j = if j == p { i } else { j };
        swap(&mut b, &mut inv, p + 1, j);
        let g = gram(&b, &eps);
        let d = g[p][p + 1];
        for r in p + 2..n {
            let (a, c) = (g[p][r], g[p + 1][r]);
            // ⟨b_p, b_r − x b_p − y b_{p+1}⟩ = a − y d and ⟨b_{p+1}, ·⟩ = c + x d.
            let y = a.div_euclid(d);
            let x = -c.div_euclid(d);
            axpy(&mut b, &mut inv, r, p + 1, y);
            axpy(&mut b, &mut inv, r, p, x);
            if a.rem_euclid(d) != 0 || c.rem_euclid(d) != 0 {
                continue 'outer;
            }
        }
        blocks.push(d);
        p += 2;
    }
    SkewNormalForm { basis: b, blocks, coords: inv }
}

/// `q^m` for `q = e^{2πi/N}`.
pub fn root_power(order: u32, m: i64) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI * (m.rem_euclid(order as i64) as f64) / order as f64)
}

/// Matrices `ρ(X_i)` of the quantum torus at `q = e^{2πi/N}`, with
/// `ρ(X_i)ρ(X_j) = q^{2ε_ij} ρ(X_j)ρ(X_i)`.
#[derive(Clone, Debug)]
pub struct Representation {
    pub order: u32,
    pub q: Complex64,
    pub dim: usize,
    pub gens: Vec<CMat>,
}

/// Tensor product of clock and shift matrices over the symplectic blocks; each generator
/// is scaled by its twist.
pub fn clock_shift_representation(seed: &Seed, order: u32, twists: &[f64], max_dim: usize) -> Result<Representation> {
    if twists.len() != seed.len() {
        return Err(Error::SeedMismatch(format!("{} twists for {} generators", twists.len(), seed.len())));
    }
    let nf = skew_normal_form(seed);
    let nb = nf.blocks.len();
    let n = order as usize;
    let dim = n.checked_pow(nb as u32).filter(|&d| d <= max_dim).ok_or_else(|| {
        Error::TooLarge(format!("representation of dimension {order}^{nb} exceeds {max_dim}"))
    })?;
    let eps: Vec<Vec<i64>> = (0..seed.len()).map(|i| (0..seed.len()).map(|j| seed.eps(i, j) as i64).collect()).collect();
    let g = gram(&nf.basis, &eps);
    let gens = (0..seed.len())
        .map(|i| {
            let c = &nf.coords[i];
            let mut phase = 0;
            for r in 0..c.len() {
                for s in r + 1..c.len() {
                    phase -= g[r][s] * c[r] * c[s];
                }
            }
            let mut m = CMat::from_element(1, 1, root_power(order, phase) * twists[i]);
            for (k, d) in nf.blocks.iter().enumerate() {
                // C^a S^b with C = diag(q^{2dj}) and S e_j = e_{j+1}.
                let (a, bb) = (c[2 * k], c[2 * k + 1]);
                let mut f = CMat::zeros(n, n);
                for j in 0..n {
                    let row = (j as i64 + bb).rem_euclid(n as i64) as usize;
                    f[(row, j)] = root_power(order, 2 * d * a * row as i64);
                }
                m = m.kronecker(&f);
            }
            m
        })
        .collect::<Vec<_>>();
    Ok(Representation { order, q: root_power(order, 1), dim, gens })
}

/// Complex product through three real products.
pub fn cmul(a: &CMat, b: &CMat) -> CMat {
    let (ar, ai) = (a.map(|z| z.re), a.map(|z| z.im));
    let (br, bi) = (b.map(|z| z.re), b.map(|z| z.im));
    let t1 = &ar * &br;
    let t2 = &ai * &bi;
    let t3 = (ar + ai) * (br + bi);
    CMat::from_fn(a.nrows(), b.ncols(), |i, j| {
        Complex64::new(t1[(i, j)] - t2[(i, j)], t3[(i, j)] - t1[(i, j)] - t2[(i, j)])
    })
}

const BASE: usize = 48;

/// Packed LU factors with partial pivoting (`P·A = L·U`, unit `L`) and the row order.
pub fn lu_blocked(mut a: CMat) -> Option<(CMat, Vec<usize>)> {
    let n = a.nrows();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut k0 = 0;
    while k0 < n {
        let k1 = (k0 + 32).min(n);
        for j in k0..k1 {
            let p = (j..n).max_by(|&x, &y| a[(x, j)].norm_sqr().total_cmp(&a[(y, j)].norm_sqr()))?;
            let piv = a[(p, j)];
            if !(piv.norm_sqr() > 0.0) {
                return None;
            }
            if p != j {
                a.swap_rows(j, p);
                perm.swap(j, p);
            }
            for i in j + 1..n {
                a[(i, j)] /= piv;
            }
            for c in j + 1..k1 {
                let u = a[(j, c)];
                for i in j + 1..n {
                    let l = a[(i, j)];
                    a[(i, c)] -= l * u;
                }
            }
        }
        if k1 < n {
            for r in k0..k1 {
                for r2 in r + 1..k1 {
                    let l = a[(r2, r)];
                    for c in k1..n {
                        let u = a[(r, c)];
                        a[(r2, c)] -= l * u;
                    }
                }
            }
            let l21 = a.view((k1, k0), (n - k1, k1 - k0)).into_owned();
            let u12 = a.view((k0, k1), (k1 - k0, n - k1)).into_owned();
            let upd = cmul(&l21, &u12);
            let mut a22 = a.view_mut((k1, k1), (n - k1, n - k1));
            a22 -= upd;
        }
        k0 = k1;
    }
    Some((a, perm))
}

fn split_rows(b: &CMat, h: usize) -> (CMat, CMat) {
    (b.rows(0, h).into_owned(), b.rows(h, b.nrows() - h).into_owned())
}

fn join_rows(top: &CMat, bottom: &CMat) -> CMat {
    let mut out = CMat::zeros(top.nrows() + bottom.nrows(), top.ncols());
    out.rows_mut(0, top.nrows()).copy_from(top);
    out.rows_mut(top.nrows(), bottom.nrows()).copy_from(bottom);
    out
}

/// Solves `L X = B` for the unit lower factor on rows `off..off + n`.
fn solve_lower(lu: &CMat, off: usize, mut b: CMat) -> CMat {
    let n = b.nrows();
    if n <= BASE {
        for c in 0..b.ncols() {
            for r in 0..n {
                let x = b[(r, c)];
                for r2 in r + 1..n {
                    b[(r2, c)] -= lu[(off + r2, off + r)] * x;
                }
            }
        }
        return b;
    }
    let h = n / 2;
    let (b1, b2) = split_rows(&b, h);
    let x1 = solve_lower(lu, off, b1);
    let l21 = lu.view((off + h, off), (n - h, h)).into_owned();
    let x2 = solve_lower(lu, off + h, b2 - cmul(&l21, &x1));
    join_rows(&x1, &x2)
}

/// Solves `U X = B` for the upper factor on rows `off..off + n`.
fn solve_upper(lu: &CMat, off: usize, mut b: CMat) -> CMat {
    let n = b.nrows();
    if n <= BASE {
        for c in 0..b.ncols() {
            for r in (0..n).rev() {
                let mut x = b[(r, c)];
                for k in r + 1..n {
                    x -= lu[(off + r, off + k)] * b[(k, c)];
                }
                b[(r, c)] = x / lu[(off + r, off + r)];
            }
        }
        return b;
    }
    let h = n / 2;
    let (b1, b2) = split_rows(&b, h);
    let x2 = solve_upper(lu, off + h, b2);
    let u12 = lu.view((off, off + h), (h, n - h)).into_owned();
    let x1 = solve_upper(lu, off, b1 - cmul(&u12, &x2));
    join_rows(&x1, &x2)
}

/// Inverse through a blocked pivoted LU factorization.
pub fn inverse(m: &CMat) -> Option<CMat> {
    let n = m.nrows();
    let (lu, perm) = lu_blocked(m.clone())?;
    let mut p = CMat::zeros(n, n);
    for (i, &j) in perm.iter().enumerate() {
        p[(i, j)] = Complex64::new(1.0, 0.0);
    }
    let out = solve_upper(&lu, 0, solve_lower(&lu, 0, p));
    out.iter().all(|z| z.re.is_finite() && z.im.is_finite()).then_some(out)
}

fn product(factors: impl IntoIterator<Item = CMat>, dim: usize) -> CMat {
    factors.into_iter().reduce(|acc, m| cmul(&acc, &m)).unwrap_or_else(|| CMat::identity(dim, dim))
}

/// Relative Frobenius distance.
pub fn residual(a: &CMat, b: &CMat) -> f64 {
    (a - b).norm() / b.norm().max(1.0)
}

/// Largest defect in `ρ_i ρ_j = q^{2ε_ij} ρ_j ρ_i`.
pub fn commutation_residual(seed: &Seed, order: u32, gens: &[CMat]) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..gens.len() {
        for j in i + 1..gens.len() {
            let lhs = cmul(&gens[i], &gens[j]);
            let rhs = cmul(&gens[j], &gens[i]) * root_power(order, 2 * seed.eps(i, j) as i64);
            worst = worst.max(residual(&lhs, &rhs));
        }
    }
    worst
}

/// Evaluates quantum torus expressions of a seed on matrices standing for its generators.
pub struct Evaluator<'a> {
    seed: &'a Seed,
    order: u32,
    gens: &'a [CMat],
    inverses: HashMap<usize, CMat>,
    cache: HashMap<String, CMat>,
}

fn singular() -> Error {
    Error::Degenerate("singular matrix".into())
}

impl<'a> Evaluator<'a> {
    pub fn new(seed: &'a Seed, order: u32, gens: &'a [CMat]) -> Evaluator<'a> {
        Evaluator::with_inverses(seed, order, gens, HashMap::new())
    }

    /// An evaluator that already knows some generator inverses.
    pub fn with_inverses(seed: &'a Seed, order: u32, gens: &'a [CMat], inverses: HashMap<usize, CMat>) -> Evaluator<'a> {
        Evaluator { seed, order, gens, inverses, cache: HashMap::new() }
    }

    fn power(&mut self, i: usize, e: i32) -> Result<CMat> {
        let base = if e >= 0 {
            self.gens[i].clone()
        } else {
            if !self.inverses.contains_key(&i) {
                let m = inverse(&self.gens[i]).ok_or_else(singular)?;
                self.inverses.insert(i, m);
            }
            self.inverses[&i].clone()
        };
        let d = base.nrows();
        Ok(product(std::iter::repeat_n(base, e.unsigned_abs() as usize), d))
    }

    /// `X^a = q^{−Σ_{i<j} ε_ij a_i a_j} X_1^{a_1}···X_n^{a_n}`.
    pub fn monomial(&mut self, a: &[i32]) -> Result<CMat> {
        let key = format!("m{a:?}");
        if let Some(m) = self.cache.get(&key) {
            return Ok(m.clone());
        }
        let mut phase = 0i64;
        for i in 0..a.len() {
            for j in i + 1..a.len() {
                phase -= (self.seed.eps(i, j) * a[i] * a[j]) as i64;
            }
        }
        let d = self.gens[0].nrows();
        let factors = a.iter().enumerate().filter(|(_, e)| **e != 0).map(|(i, &e)| self.power(i, e)).collect::<Result<Vec<_>>>()?;
        let mut out = product(factors, d);
        if phase != 0 {
            out *= root_power(self.order, phase);
        }
        self.cache.insert(key, out.clone());
        Ok(out)
    }

    pub fn element(&mut self, x: &QTorusElem) -> Result<CMat> {
        let d = self.gens[0].nrows();
        let q = root_power(self.order, 1);
        let mut out = CMat::zeros(d, d);
        if let Some((a, c)) = x.as_monomial() {
            let m = self.monomial(a)?;
            let c = c.eval(q);
            return Ok(if c == Complex64::new(1.0, 0.0) { m } else { m * c });
        }
        for (a, c) in x.terms() {
            out += self.monomial(a)? * c.eval(q);
        }
        Ok(out)
    }

    pub fn expr(&mut self, e: &QExpr) -> Result<CMat> {
        match e {
            QExpr::Elem(x) => self.element(x),
            QExpr::Inv(inner) => {
                let key = format!("i{inner:?}");
                if let Some(m) = self.cache.get(&key) {
                    return Ok(m.clone());
                }
                let m = inverse(&self.expr(inner)?).ok_or_else(singular)?;
                self.cache.insert(key, m.clone());
                Ok(m)
            }
            QExpr::Prod(v) => {
                let d = self.gens[0].nrows();
                let factors = v.iter().map(|f| self.expr(f)).collect::<Result<Vec<_>>>()?;
                Ok(product(factors, d))
            }
        }
    }
}

/// Matrices for the target generators of a map, given matrices for its source.
pub fn apply_map(map: &QRationalMap, order: u32, gens: &[CMat]) -> Result<Vec<CMat>> {
    let mut ev = Evaluator::new(&map.source, order, gens);
    map.images.iter().map(|e| ev.expr(e)).collect()
}

/// Runs quantum mutations by name; returns the final seed and matrices.
pub fn apply_mutations<S: AsRef<str>>(seed: &Seed, order: u32, gens: &[CMat], names: &[S]) -> Result<(Seed, Vec<CMat>)> {
    let mut seed = seed.clone();
    let mut gens = gens.to_vec();
    let mut known: HashMap<usize, CMat> = HashMap::new();
    for name in names {
        let k = seed.index_of(name.as_ref())?;
        let map = super::expr::quantum_mutation(&seed, k)?;
        let mut ev = Evaluator::with_inverses(&seed, order, &gens, std::mem::take(&mut known));
        let next = map.images.iter().map(|e| ev.expr(e)).collect::<Result<Vec<_>>>()?;
        // Untouched generators keep their inverses and the new X_k is inverse to the old one.
        known = ev.inverses.into_iter().filter(|(i, _)| *i != k && seed.eps(*i, k) == 0).collect();
        known.insert(k, gens[k].clone());
        gens = next;
        seed = map.target;
    }
    Ok((seed, gens))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::{epsilon_of_triangulation, Triangulation};

    fn check_form(seed: &Seed) -> SkewNormalForm {
        let nf = skew_normal_form(seed);
        let n = seed.len();
        let eps: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| seed.eps(i, j) as i64).collect()).collect();
        let g = gram(&nf.basis, &eps);
        for r in 0..n {
            for s in 0..n {
                let expected = match (r / 2 < nf.blocks.len(), r ^ 1 == s) {
                    (true, true) if r % 2 == 0 => nf.blocks[r / 2],
                    (true, true) => -nf.blocks[r / 2],
                    _ => 0,
                };
                assert_eq!(g[r][s], expected, "entry ({r},{s})");
            }
        }
        for i in 0..n {
            for j in 0..n {
                let v: i64 = (0..n).map(|r| nf.coords[i][r] * nf.basis[r][j]).sum();
                assert_eq!(v, i64::from(i == j));
            }
        }
        nf
    }

    #[test]
    fn normal_forms() {
        let s = Seed::from_entries(&["ra", "rb"], &[(0, 1, 2)]).unwrap();
        assert_eq!(check_form(&s).blocks, vec![2]);
        let s = Seed::from_entries(&["ra", "rb", "rc"], &[(0, 1, 2), (1, 2, 3), (0, 2, 1)]).unwrap();
        assert_eq!(check_form(&s).blocks, vec![1]);
        for n in [4, 5, 6] {
            let tri = Triangulation::polygon(n).unwrap().without_boundary_coords();
            check_form(&epsilon_of_triangulation(&tri).unwrap());
        }
    }

    #[test]
    fn relations_hold() {
        let two = Seed::from_entries(&["ra", "rb"], &[(0, 1, 1)]).unwrap();
        let flat = Seed::from_entries(&["ra", "rb"], &[]).unwrap();
        let quad = epsilon_of_triangulation(&Triangulation::polygon(4).unwrap().without_boundary_coords()).unwrap();
        for s in [two, flat, quad] {
            let twists: Vec<f64> = (0..s.len()).map(|i| 1.0 + 0.1 * i as f64).collect();
            let rep = clock_shift_representation(&s, 5, &twists, 10_000).unwrap();
            assert!(commutation_residual(&s, 5, &rep.gens) < 1e-12);
        }
    }

    #[test]
    fn inverse_is_accurate() {
        let n = 101;
        let m = CMat::from_fn(n, n, |i, j| Complex64::new(((i * 31 + j * 17) % 13) as f64 - 6.0, ((i * 7 + j * 3) % 11) as f64) + if i == j { Complex64::new(40.0, 0.0) } else { Complex64::new(0.0, 0.0) });
        let inv = inverse(&m).unwrap();
        assert!((cmul(&m, &inv) - CMat::identity(n, n)).norm() < 1e-10);
    }

    #[test]
    fn mutation_preserves_relations() {
        let tri = Triangulation::polygon(4).unwrap().without_boundary_coords();
        let s = epsilon_of_triangulation(&tri).unwrap();
        let rep = clock_shift_representation(&s, 7, &[1.3, 0.7, 1.9, 0.6], 10_000).unwrap();
        let (t, gens) = apply_mutations(&s, 7, &rep.gens, &[s.name(0).to_string()]).unwrap();
        assert!(commutation_residual(&t, 7, &gens) < 1e-9);
    }
}
