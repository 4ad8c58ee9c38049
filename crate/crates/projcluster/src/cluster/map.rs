use super::seed::Seed;
use crate::arith::{Rat, RatFunc, Var};
use crate::{Error, Result};
use num_traits::Zero;
use std::collections::HashMap;

/// A homomorphism of coordinate fields `Frac(target) → Frac(source)`,
/// recorded as the images of the target generators in the source variables.
#[derive(Clone, Debug, PartialEq)]
pub struct ClusterMap {
    source: Seed,
    target: Seed,
    images: Vec<RatFunc>,
}

impl ClusterMap {
    pub fn new(source: Seed, target: Seed, images: Vec<RatFunc>) -> Result<ClusterMap> {
        if images.len() != target.len() {
            return Err(Error::SeedMismatch("one image per target vertex".into()));
        }
        Ok(ClusterMap { source, target, images })
    }

    pub fn identity(seed: &Seed) -> ClusterMap {
        let images = seed.vars().into_iter().map(RatFunc::var).collect();
        ClusterMap { source: seed.clone(), target: seed.clone(), images }
    }

    /// The automorphism renaming vertex `a` of `seed` to `f(a)`.
    pub fn relabeling(seed: &Seed, f: impl Fn(&str) -> String) -> Result<ClusterMap> {
        let target = seed.rename(f)?;
        let images = seed.vars().into_iter().map(RatFunc::var).collect();
        Ok(ClusterMap { source: seed.clone(), target, images })
    }

    pub fn source(&self) -> &Seed {
        &self.source
    }

    pub fn target(&self) -> &Seed {
        &self.target
    }

    pub fn images(&self) -> &[RatFunc] {
        &self.images
    }

    pub fn image(&self, name: &str) -> Result<&RatFunc> {
        Ok(&self.images[self.target.index_of(name)?])
    }

    /// Images keyed by target vertex name.
    pub fn named_images(&self) -> Vec<(String, RatFunc)> {
        self.target.names().iter().cloned().zip(self.images.iter().cloned()).collect()
    }

    /// `self: S → T` followed by `next: T → U`, giving `S → U`.
    pub fn then(&self, next: &ClusterMap) -> Result<ClusterMap> {
        if !self.target.same_up_to_order(&next.source) {
            return Err(Error::SeedMismatch("composition of non-matching seeds".into()));
        }
        let assignment: HashMap<Var, RatFunc> = self
            .target
            .vars()
            .into_iter()
            .zip(self.images.iter().cloned())
            .collect();
        let images = next
            .images
            .iter()
            .map(|f| f.substitute(&assignment))
            .collect::<Result<Vec<_>>>()?;
        Ok(ClusterMap { source: self.source.clone(), target: next.target.clone(), images })
    }

    /// The same map with target vertices listed in the order of `target`.
    pub fn reorder_target(&self, target: &Seed) -> Result<ClusterMap> {
        if !self.target.same_up_to_order(target) {
            return Err(Error::SeedMismatch("targets differ".into()));
        }
        let images = target.names().iter().map(|n| self.image(n).cloned()).collect::<Result<_>>()?;
        Ok(ClusterMap { source: self.source.clone(), target: target.clone(), images })
    }

    /// Same seed on both sides (up to vertex order) and every generator fixed.
    pub fn is_identity(&self) -> bool {
        self.source.same_up_to_order(&self.target)
            && self.images.iter().zip(self.target.vars()).all(|(f, v)| *f == RatFunc::var(v))
    }

    /// Equal images for every target name, with matching seeds.
    pub fn same_as(&self, other: &ClusterMap) -> bool {
        self.source.same_up_to_order(&other.source)
            && self.target.same_up_to_order(&other.target)
            && self.target.names().iter().all(|n| self.image(n).ok() == other.image(n).ok())
    }

    /// Evaluate all images at a point given by source vertex names.
    pub fn eval(&self, point: &HashMap<Var, Rat>) -> Result<Vec<Rat>> {
        self.images.iter().map(|f| f.eval_at(point)).collect()
    }
}

/// Coordinate mutation at `k`.
pub fn mutate_x(seed: &Seed, k: usize) -> Result<ClusterMap> {
    if k >= seed.len() {
        return Err(Error::UnknownVertex(k.to_string()));
    }
    let xk = RatFunc::var(seed.var(k));
    let one = RatFunc::one();
    let plus = &one + &xk;
    let plus_inv = &one + &xk.inv()?;
    let mut images = Vec::with_capacity(seed.len());
    for i in 0..seed.len() {
        let xi = RatFunc::var(seed.var(i));
        let e = seed.eps(i, k);
        images.push(if i == k {
            xk.inv()?
        } else if e <= 0 {
            &xi * &plus.pow(-e)?
        } else {
            &xi * &plus_inv.pow(-e)?
        });
    }
    Ok(ClusterMap { source: seed.clone(), target: seed.mutate_epsilon(k), images })
}

pub fn mutate_x_named(seed: &Seed, k: &str) -> Result<ClusterMap> {
    mutate_x(seed, seed.index_of(k)?)
}

/// Composite of coordinate mutations along a vertex sequence.
pub fn mutation_sequence<S: AsRef<str>>(seed: &Seed, ks: &[S]) -> Result<ClusterMap> {
    let mut map = ClusterMap::identity(seed);
    for k in ks {
        let step = mutate_x_named(map.target(), k.as_ref())?;
        map = map.then(&step)?;
    }
    Ok(map)
}

/// Log-canonical bracket {f,g} = Σ c·ε_ij X_i X_j ∂_i f ∂_j g.
pub fn poisson_bracket(seed: &Seed, f: &RatFunc, g: &RatFunc, c: &Rat) -> RatFunc {
    let lf = log_gradient(seed, f);
    let lg = log_gradient(seed, g);
    let s = pairing(seed, &lf, &lg);
    &(&s * f) * &RatFunc::constant(c.clone()) * g
}

/// (X_i ∂_i f / f)_i.
pub fn log_gradient(seed: &Seed, f: &RatFunc) -> Vec<RatFunc> {
    seed.vars()
        .into_iter()
        .map(|v| {
            let d = f.derivative(v);
            if d.is_zero() {
                RatFunc::zero()
            } else {
                &(&d * &RatFunc::var(v)) / f
            }
        })
        .collect()
}

fn pairing(seed: &Seed, a: &[RatFunc], b: &[RatFunc]) -> RatFunc {
    let n = seed.len();
    let mut total = RatFunc::zero();
    for i in 0..n {
        if a[i].is_zero() {
            continue;
        }
        let mut row = RatFunc::zero();
        for j in 0..n {
            let e = seed.eps(i, j);
            if e != 0 && !b[j].is_zero() {
                row = &row + &b[j].scale(&Rat::from_integer(e.into()));
            }
        }
        if !row.is_zero() {
            total = &total + &(&a[i] * &row);
        }
    }
    total
}

/// Checks `map({X′_i, X′_j}) = {map(X′_i), map(X′_j)}` for all generator pairs.
pub fn check_poisson_preserved(map: &ClusterMap, c: &Rat) -> bool {
    poisson_defects(map, c).is_empty()
}

/// Generator pairs where bracket preservation fails.
pub fn poisson_defects(map: &ClusterMap, c: &Rat) -> Vec<(String, String)> {
    if c.is_zero() {
        return Vec::new();
    }
    let src = map.source();
    let tgt = map.target();
    let grads: Vec<Vec<RatFunc>> = map.images().iter().map(|f| log_gradient(src, f)).collect();
    let mut bad = Vec::new();
    for i in 0..tgt.len() {
        for j in (i + 1)..tgt.len() {
            // Both sides divided by c·img_i·img_j.
            let lhs = RatFunc::int(tgt.eps(i, j) as i64);
            if lhs != pairing(src, &grads[i], &grads[j]) {
                bad.push((tgt.name(i).to_string(), tgt.name(j).to_string()));
            }
        }
    }
    bad
}
