//! Poisson brackets of X-coordinates and the flip-compatible ε patterns.

use projcluster::arith::rat;
use projcluster::cluster::{check_poisson_preserved, mutate_x, poisson_bracket};
use projcluster::surface::{epsilon_of_triangulation, flip_closed_form, flip_compatible_patterns, triangle_pattern, Triangulation};
use projcluster::RatFunc;

fn main() -> projcluster::Result<()> {
    let c = rat(2, 1);
    let tri = Triangulation::polygon(4)?;
    let seed = epsilon_of_triangulation(&tri)?;
    let (a, b) = (RatFunc::named(seed.name(0)), RatFunc::named(seed.name(1)));
    println!("{{{}, {}}} = {}", seed.name(0), seed.name(1), poisson_bracket(&seed, &a, &b, &c));

    let all = (0..seed.len()).all(|k| mutate_x(&seed, k).is_ok_and(|m| check_poisson_preserved(&m, &c)));
    println!("every mutation preserves the bracket: {all}");
    let flip = flip_closed_form(&tri, tri.edge_by_key("0.2")?)?.1;
    println!("the flip preserves the bracket: {}", check_poisson_preserved(&flip, &c));

    let found = flip_compatible_patterns(&c)?;
    println!("{} of 729 rotation-invariant patterns are flip compatible", found.len());
    for p in found {
        println!("  {}", if p == triangle_pattern() { "the triangle pattern" } else { "its negative" });
    }
    Ok(())
}
