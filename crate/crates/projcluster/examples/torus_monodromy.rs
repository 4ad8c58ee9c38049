//! Monodromy of loops on the once-punctured torus: traces, total positivity, hyperbolicity.

use projcluster::arith::random_positive_point;
use projcluster::monodromy::{certify_loop_positivity, check_regular_hyperbolic, trace_of_power, LoopWord, MonodromyGraph};
use projcluster::surface::{epsilon_of_triangulation, Triangulation};
use rand::SeedableRng;

fn main() -> projcluster::Result<()> {
    let tri = Triangulation::surface(1, 1)?;
    let g = MonodromyGraph::new(&tri)?;
    let vars = epsilon_of_triangulation(&tri)?.vars();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
    for word in ["0+ 2+", "1+ 2+", "0+ 2+ 1+ 2+", "0- 2- 1- 0+ 2+ 1+"] {
        let w = LoopWord::parse(word, &tri)?;
        let (rot, cert) = certify_loop_positivity(&g, &w)?;
        println!("{word}: peripheral {}, total positivity {:?} (rotation {rot:?})", g.is_peripheral(&w)?, cert.status);
        for n in 1..=3 {
            let (t, p) = trace_of_power(&g, &w, n)?;
            println!("  tr^{n}: {} terms, {}", t.num().len(), p.label());
        }
        let m = g.monodromy(&w)?;
        let point = random_positive_point(&vars, &mut rng);
        println!("  regular hyperbolic at a random point: {}", check_regular_hyperbolic(&m, &point)?);
    }
    Ok(())
}
