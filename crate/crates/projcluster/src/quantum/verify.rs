use super::expr::QRationalMap;
use super::flip::{quantum_flip, quantum_flip_intermediate, role_names};
use super::rep::{apply_map, apply_mutations, clock_shift_representation, commutation_residual, residual, CMat, Evaluator};
use crate::cluster::Seed;
use crate::surface::{as_permutation, epsilon_of_triangulation, pentagon_keys, slot_run, Flip, Triangulation};
use crate::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::BTreeMap;

#[derive(Clone, Debug)]
pub struct QuantumOptions {
    /// `q = e^{2πi/order}`.
    pub order: u32,
    pub trials: usize,
    /// Trials for the order-3 checks.
    pub aux_trials: usize,
    pub seed: u64,
    pub tolerance: f64,
    pub max_dim: usize,
}

impl Default for QuantumOptions {
    fn default() -> Self {
        QuantumOptions { order: 5, trials: 20, aux_trials: 3, seed: 0, tolerance: 1e-9, max_dim: 4096 }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct QuantumCheck {
    pub name: String,
    pub order: u32,
    pub dim: usize,
    pub trials: usize,
    pub residual: f64,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct QuantumReport {
    pub order: u32,
    pub trials: usize,
    pub resampled: usize,
    pub tolerance: f64,
    pub checks: Vec<QuantumCheck>,
    pub passed: bool,
}

const RESAMPLE_LIMIT: usize = 10;

struct Sampler {
    rng: ChaCha8Rng,
    resampled: usize,
}

impl Sampler {
    /// Worst residual of `f` over `trials` twists, redrawing twists that hit a singular matrix.
    fn worst(&mut self, seed: &Seed, order: u32, trials: usize, max_dim: usize, f: impl Fn(&[CMat]) -> Result<f64>) -> Result<(usize, f64)> {
        let mut worst = 0.0f64;
        let mut dim = 0;
        for t in 0..trials {
            let mut attempts = 0;
            loop {
                let twists: Vec<f64> = (0..seed.len()).map(|_| self.rng.gen_range(0.5..2.0)).collect();
                let rep = clock_shift_representation(seed, order, &twists, max_dim)?;
                dim = rep.dim;
                match f(&rep.gens) {
                    Ok(r) => {
                        worst = worst.max(r);
                        if t == 0 {
                            worst = worst.max(commutation_residual(seed, order, &rep.gens));
                        }
                        break;
                    }
                    Err(Error::Degenerate(_)) if attempts < RESAMPLE_LIMIT => {
                        attempts += 1;
                        self.resampled += 1;
                    }
                    Err(e) => return Err(e),
                }
            }
        }
        Ok((dim, worst))
    }
}

fn interior(n: usize) -> Result<Triangulation> {
    Ok(Triangulation::polygon(n)?.without_boundary_coords())
}

/// Residual between the run's final matrices and the initial ones permuted by `perm`
/// (slot after the run → initial slot).
fn permuted_residual(seed: &Seed, gens: &[CMat], end: &Seed, out: &[CMat], perm: &BTreeMap<String, String>) -> Result<f64> {
    let mut worst = 0.0f64;
    for (t, s) in perm {
        worst = worst.max(residual(&out[end.index_of(t)?], &gens[seed.index_of(s)?]));
    }
    Ok(worst)
}

/// The composite of the slot mutations for `keys` is a relabeling; checks the quantum
/// composite is the same relabeling.
fn relabeling_residual(start: &Triangulation, keys: &[String], order: u32, gens: &[CMat]) -> Result<f64> {
    let seed = epsilon_of_triangulation(start)?;
    let run = slot_run(start, keys)?;
    let perm = as_permutation(&run.map).ok_or_else(|| Error::Degenerate("composite is not a relabeling".into()))?;
    let (end, out) = apply_mutations(&seed, order, gens, &run.mutations)?;
    permuted_residual(&seed, gens, &end, &out, &perm)
}

/// The printed flip formulas against the four slot mutations, also at the stage after `Z, W`.
fn flip_residual(tri: &Triangulation, key: &str, order: u32, gens: &[CMat]) -> Result<f64> {
    let seed = epsilon_of_triangulation(tri)?;
    let e = tri.edge_by_key(key)?;
    let map: QRationalMap = quantum_flip(tri, e)?;
    let flipped = apply_map(&map, order, gens)?;
    let run = slot_run(tri, &[key.to_string()])?;
    let (end, mutated) = apply_mutations(&seed, order, gens, &run.mutations)?;
    let mut worst = 0.0f64;
    for (geo, slot) in &run.slots {
        worst = worst.max(residual(&flipped[map.target.index_of(geo)?], &mutated[end.index_of(slot)?]));
    }
    let names = role_names(&Flip::new(tri, e)?)?;
    let stage = quantum_flip_intermediate(&seed, names.clone())?;
    let (mid, half) = apply_mutations(&seed, order, gens, &run.mutations[..2])?;
    let mut ev = Evaluator::new(&seed, order, gens);
    for (label, expr) in stage {
        let slot = &names[&label[..1]];
        worst = worst.max(residual(&ev.expr(&expr)?, &half[mid.index_of(slot)?]));
    }
    Ok(worst)
}

/// Flips at two edges with no common triangle, in both orders.
fn commuting_residual(start: &Triangulation, a: &str, b: &str, order: u32, gens: &[CMat]) -> Result<f64> {
    let seed = epsilon_of_triangulation(start)?;
    let one = slot_run(start, &[a.to_string(), b.to_string()])?;
    let two = slot_run(start, &[b.to_string(), a.to_string()])?;
    let (s1, m1) = apply_mutations(&seed, order, gens, &one.mutations)?;
    let (s2, m2) = apply_mutations(&seed, order, gens, &two.mutations)?;
    let mut worst = 0.0f64;
    for (geo, slot) in &one.slots {
        let other = two.slots.get(geo).ok_or_else(|| Error::UnknownVariable(geo.clone()))?;
        worst = worst.max(residual(&m1[s1.index_of(slot)?], &m2[s2.index_of(other)?]));
    }
    Ok(worst)
}

/// Numerical checks of the quantum pentagon, the involution `flip²` and commuting flips in
/// clock and shift representations at a root of unity, over random positive twists.
/// The flip comparisons with boundary coordinates and the commuting check run at order 3
/// to keep the dimension small.
pub fn verify_quantum(opts: &QuantumOptions) -> Result<QuantumReport> {
    if opts.order < 3 || opts.order % 2 == 0 {
        return Err(Error::Invalid(format!("order must be odd and at least 3, got {}", opts.order)));
    }
    let mut sampler = Sampler { rng: ChaCha8Rng::seed_from_u64(opts.seed), resampled: 0 };
    let (n, trials, aux, max) = (opts.order, opts.trials, opts.aux_trials, opts.max_dim);
    let mut checks = Vec::new();
    let mut push = |name: &str, order: u32, trials: usize, (dim, r): (usize, f64)| {
        checks.push(QuantumCheck { name: name.into(), order, dim, trials, residual: r, passed: r < opts.tolerance });
    };

    let pent = interior(5)?;
    let ps = epsilon_of_triangulation(&pent)?;
    let keys = pentagon_keys()?;
    push("pentagon", n, trials, sampler.worst(&ps, n, trials, max, |g| relabeling_residual(&pent, &keys, n, g))?);

    let e = pent.edge_by_key("0.2")?;
    let back = pent.flip(e)?.edge_key(e);
    let twice = ["0.2".to_string(), back];
    push("flip_squared", n, aux, sampler.worst(&ps, n, aux, max, |g| relabeling_residual(&pent, &twice, n, g))?);

    let quad = interior(4)?;
    let qs = epsilon_of_triangulation(&quad)?;
    push("flip_formulas", n, trials, sampler.worst(&qs, n, trials, max, |g| flip_residual(&quad, "0.2", n, g))?);

    let full = Triangulation::polygon(4)?;
    let fs = epsilon_of_triangulation(&full)?;
    push("flip_formulas_boundary", 3, aux, sampler.worst(&fs, 3, aux, max, |g| flip_residual(&full, "0.2", 3, g))?);

    let hex = interior(6)?;
    let hs = epsilon_of_triangulation(&hex)?;
    push("commuting_flips", 3, aux, sampler.worst(&hs, 3, aux, max, |g| commuting_residual(&hex, "0.2", "0.4", 3, g))?);

    let passed = checks.iter().all(|c| c.passed);
    Ok(QuantumReport { order: n, trials, resampled: sampler.resampled, tolerance: opts.tolerance, checks, passed })
}
