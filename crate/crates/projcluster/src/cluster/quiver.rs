use super::seed::Seed;
use crate::{Error, Result};

/// Arrow view of a seed: `i → j` with multiplicity ε_ij whenever ε_ij > 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    pub vertices: Vec<String>,
    pub arrows: Vec<(usize, usize, u32)>,
}

impl Quiver {
    pub fn from_seed(seed: &Seed) -> Quiver {
        let mut arrows = Vec::new();
        for i in 0..seed.len() {
            for j in 0..seed.len() {
                if seed.eps(i, j) > 0 {
                    arrows.push((i, j, seed.eps(i, j) as u32));
                }
            }
        }
        Quiver { vertices: seed.names().to_vec(), arrows }
    }

    pub fn to_seed(&self) -> Result<Seed> {
        let e: Vec<(usize, usize, i32)> = self.arrows.iter().map(|&(i, j, m)| (i, j, m as i32)).collect();
        Seed::from_entries(&self.vertices, &e)
    }
}

/// Isomorphism-invariant label: the lexicographically least relabeled matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    pub n: usize,
    pub matrix: Vec<i32>,
}

pub const DEFAULT_SIZE_BOUND: usize = 16;

pub fn canonical_form(seed: &Seed) -> Result<CanonicalForm> {
    canonical_form_bounded(seed, DEFAULT_SIZE_BOUND)
}

pub fn canonical_form_bounded(seed: &Seed, bound: usize) -> Result<CanonicalForm> {
    let n = seed.len();
    if n > bound {
        return Err(Error::SearchLimit(format!("seed has {n} vertices, bound is {bound}")));
    }
    let eps = seed.matrix();
    let colors = refine(eps, vec![0; n]);
    let mut best: Option<Vec<i32>> = None;
    search(eps, colors, &mut best);
    Ok(CanonicalForm { n, matrix: best.unwrap_or_default() })
}

/// Equitable refinement; colors are ranks of sorted signatures, so the
/// result depends only on the isomorphism class of (ε, colors).
fn refine(eps: &[Vec<i32>], mut colors: Vec<usize>) -> Vec<usize> {
    let n = colors.len();
    loop {
        let sigs: Vec<(usize, Vec<(i32, usize)>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<(i32, usize)> =
                    (0..n).filter(|&w| eps[v][w] != 0).map(|w| (eps[v][w], colors[w])).collect();
                nb.sort_unstable();
                (colors[v], nb)
            })
            .collect();
        let mut uniq = sigs.clone();
        uniq.sort();
        uniq.dedup();
        let next: Vec<usize> = sigs.iter().map(|s| uniq.binary_search(s).unwrap()).collect();
        let before = distinct(&colors);
        colors = next;
        if distinct(&colors) == before {
            return colors;
        }
    }
}

fn distinct(c: &[usize]) -> usize {
    let mut v = c.to_vec();
    v.sort_unstable();
    v.dedup();
    v.len()
}

fn search(eps: &[Vec<i32>], colors: Vec<usize>, best: &mut Option<Vec<i32>>) {
    let n = colors.len();
    if distinct(&colors) == n {
        let mut order = vec![0; n];
        for v in 0..n {
            order[colors[v]] = v;
        }
        let m: Vec<i32> = order.iter().flat_map(|&a| order.iter().map(move |&b| eps[a][b])).collect();
        if best.as_ref().is_none_or(|b| m < *b) {
            *best = Some(m);
        }
        return;
    }
    // First non-singleton cell in color order.
    let mut count = vec![0usize; n];
    for &c in &colors {
        count[c] += 1;
    }
    let cell = (0..n).find(|&c| count[c] > 1).unwrap();
    for v in (0..n).filter(|&v| colors[v] == cell) {
        let ind: Vec<usize> = (0..n).map(|w| 2 * colors[w] + usize::from(colors[w] == cell && w != v)).collect();
        search(eps, refine(eps, ind), best);
    }
}
