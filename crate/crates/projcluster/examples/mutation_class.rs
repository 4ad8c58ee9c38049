//! Seeds, mutations and finite mutation classes of the interior polygon seeds.

use projcluster::cluster::{dynkin_type, mutation_class_search, DynkinType, DEFAULT_STATE_CAP};
use projcluster::surface::{epsilon_of_triangulation, Triangulation};

fn main() -> projcluster::Result<()> {
    for (n, target) in [(4, DynkinType::D(4)), (5, DynkinType::E(7))] {
        let tri = Triangulation::polygon(n)?.without_boundary_coords();
        let seed = epsilon_of_triangulation(&tri)?;
        println!("{n}-gon: {} interior coordinates, initial type {:?}", seed.len(), dynkin_type(&seed));
        let hit = mutation_class_search(&seed, Some(target), None, DEFAULT_STATE_CAP)?;
        println!("  reaches {target} via {:?}", hit.witness.unwrap_or_default());
        let all = mutation_class_search(&seed, None, None, DEFAULT_STATE_CAP)?;
        println!("  class size {} (complete: {}, depth {})", all.class_size, all.complete, all.max_depth);
    }
    Ok(())
}
