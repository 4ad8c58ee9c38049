//! Flips of the quadrilateral: closed form, four mutations, and flip twice.

use projcluster::surface::{double_flip_relabeling, flip_closed_form, flip_via_mutations, Triangulation};

fn main() -> projcluster::Result<()> {
    let tri = Triangulation::polygon(4)?;
    let e = tri.edge_by_key("0.2")?;
    let (after, closed) = flip_closed_form(&tri, e)?;
    let (_, via) = flip_via_mutations(&tri, e)?;
    println!("flip 0.2 -> {}", after.edge_key(e));
    for (name, f) in closed.named_images() {
        println!("  {name} <- {f}");
    }
    println!("agrees with mutations: {}", closed.same_as(&via));

    let (_, back) = flip_closed_form(&after, e)?;
    println!("flip twice is the identity: {}", closed.then(&back)?.is_identity());

    let torus = Triangulation::surface(1, 1)?;
    for e in torus.internal_edges() {
        let (t1, m1) = flip_closed_form(&torus, e)?;
        let (_, m2) = flip_closed_form(&t1, e)?;
        let id = m1.then(&m2)?.then(&double_flip_relabeling(&torus, e)?)?.is_identity();
        println!("torus edge {}: flip twice is a relabeling: {id}", torus.edge_key(e));
    }
    Ok(())
}
