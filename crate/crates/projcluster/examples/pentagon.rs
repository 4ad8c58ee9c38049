//! The pentagon relation: five flips around a pentagon, with geometric names and on slots.

use projcluster::surface::{as_permutation, pentagon_geometric, pentagon_keys, slot_run, Triangulation};

fn main() -> projcluster::Result<()> {
    let keys = pentagon_keys()?;
    println!("flips: {}", keys.join(" "));
    println!("geometric composite is the identity: {}", pentagon_geometric()?.is_identity());

    let tri = Triangulation::polygon(5)?;
    for reps in [1, 2] {
        let seq: Vec<String> = (0..reps).flat_map(|_| keys.clone()).collect();
        let run = slot_run(&tri, &seq)?;
        println!("{} mutations on {} variables", run.mutations.len(), run.map.source().len());
        match as_permutation(&run.map) {
            Some(p) => {
                for (a, b) in p.iter().filter(|(a, b)| a != b) {
                    println!("  {a} <- {b}");
                }
            }
            None => println!("  not a permutation"),
        }
    }
    Ok(())
}
