//! Quantum flip formulas with q symbolic, and their classical limit.

use projcluster::quantum::{quantum_flip, quantum_flip_formulas, role_names};
use projcluster::surface::{epsilon_of_triangulation, flip_closed_form, Flip, Triangulation};

fn main() -> projcluster::Result<()> {
    let tri = Triangulation::polygon(4)?;
    let e = tri.edge_by_key("0.2")?;
    let seed = epsilon_of_triangulation(&tri)?;
    let names = role_names(&Flip::new(&tri, e)?)?;
    for (label, expr) in quantum_flip_formulas(&seed, names)? {
        println!("{label} = {}", expr.display(&seed));
    }
    let classical = quantum_flip(&tri, e)?.at_q_one()?;
    println!("q = 1 gives the classical flip: {}", classical.same_as(&flip_closed_form(&tri, e)?.1));
    Ok(())
}
