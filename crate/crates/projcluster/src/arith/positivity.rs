use super::laurent::Laurent;
use super::ratfunc::RatFunc;
use super::var::Var;
use super::Rat;
use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::{BTreeMap, HashMap};

/// Outcome of the positivity semi-decision.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Positivity {
    /// Laurent polynomial with positive integer coefficients.
    PositiveLaurent,
    /// Quotient of positive-coefficient polynomials, possibly after
    /// multiplying both by `multiplier`.
    PositiveRatio { multiplier: Option<String> },
    Indeterminate,
    NegativeWitness { point: BTreeMap<String, String>, value: String },
}

impl Positivity {
    pub fn is_positive(&self) -> bool {
        matches!(self, Positivity::PositiveLaurent | Positivity::PositiveRatio { .. })
    }

    pub fn label(&self) -> &'static str {
        match self {
            Positivity::PositiveLaurent => "POSITIVE_LAURENT",
            Positivity::PositiveRatio { .. } => "POSITIVE_RATIO",
            Positivity::Indeterminate => "INDETERMINATE",
            Positivity::NegativeWitness { .. } => "NEGATIVE_WITNESS",
        }
    }
}

pub const DEFAULT_SAMPLES: usize = 100;
pub const DEFAULT_SEED: u64 = 0x5eed;

pub fn is_positive_laurent(expr: &RatFunc) -> Positivity {
    certify_positive(expr, DEFAULT_SAMPLES, DEFAULT_SEED)
}

pub fn certify_positive(expr: &RatFunc, samples: usize, seed: u64) -> Positivity {
    let (num, den) = (expr.num(), expr.den());
    if expr.is_laurent() && num.all_positive_integers() {
        return Positivity::PositiveLaurent;
    }
    if num.all_positive() && den.all_positive() {
        return Positivity::PositiveRatio { multiplier: None };
    }
    for f in multiplier_library(expr) {
        if (num * &f).all_positive() && (den * &f).all_positive() {
            return Positivity::PositiveRatio { multiplier: Some(f.to_string()) };
        }
    }
    sample_for_witness(expr, samples, seed).unwrap_or(Positivity::Indeterminate)
}

fn multiplier_library(expr: &RatFunc) -> Vec<Laurent> {
    let vars: Vec<Var> = expr.vars().into_iter().collect();
    let one = Laurent::one();
    let mut out = Vec::new();
    for &v in &vars {
        let x = Laurent::var(v);
        let lin = &one + &x;
        let quad = &lin + &x.pow(2);
        for k in 1..=4 {
            out.push(lin.pow(k));
        }
        out.push(quad.clone());
        out.push(&lin * &quad);
    }
    if vars.len() > 1 {
        let sum = vars.iter().fold(one.clone(), |a, &v| &a + &Laurent::var(v));
        for k in 1..=3 {
            out.push(sum.pow(k));
        }
    }
    out
}

/// Random positive rational point with small numerators and denominators.
pub fn random_positive_point(vars: &[Var], rng: &mut impl Rng) -> HashMap<Var, Rat> {
    vars.iter()
        .map(|&v| {
            let n: i64 = rng.gen_range(1..=20);
            let d: i64 = rng.gen_range(1..=20);
            (v, Rat::new(n.into(), d.into()))
        })
        .collect()
}

fn sample_for_witness(expr: &RatFunc, samples: usize, seed: u64) -> Option<Positivity> {
    let vars: Vec<Var> = expr.vars().into_iter().collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let p = random_positive_point(&vars, &mut rng);
        if let Ok(val) = expr.eval_at(&p) {
            if !val.is_positive() {
                let point = p.iter().map(|(v, x)| (v.name(), x.to_string())).collect();
                return Some(Positivity::NegativeWitness { point, value: val.to_string() });
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_positive_and_mixed() {
        let a: RatFunc = "px + 2 * px^-1".parse().unwrap();
        assert_eq!(is_positive_laurent(&a), Positivity::PositiveLaurent);
        let b: RatFunc = "1 - px + px^2".parse().unwrap();
        match is_positive_laurent(&b) {
            Positivity::PositiveRatio { multiplier: Some(m) } => assert_eq!(m, "px + 1"),
            other => panic!("unexpected {other:?}"),
        }
        let c: RatFunc = "px - 1".parse().unwrap();
        assert!(matches!(is_positive_laurent(&c), Positivity::NegativeWitness { .. }));
    }
}
