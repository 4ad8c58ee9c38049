//! Convex polygon pairs from positive coordinates and back, duality and SVG output.

use projcluster::arith::rat;
use projcluster::geom::{coords_of_polygon_pair, polygon_pair_from_coords};
use projcluster::surface::{sigma_assignment, Assignment, Triangulation};

fn main() -> projcluster::Result<()> {
    let tri = Triangulation::polygon(5)?.without_boundary_coords();
    let values: Assignment = tri.point_names().into_iter().enumerate().map(|(i, n)| (n, rat(i as i64 + 1, 2))).collect();
    let pp = polygon_pair_from_coords(&values, &tri)?;
    println!("{}", serde_json::to_string(&pp.to_json())?);
    println!("convex: {}", pp.is_convex_inscribed());
    println!("round trip: {}", coords_of_polygon_pair(&pp, &tri)? == values);
    println!("dual is sigma: {}", coords_of_polygon_pair(&pp.dual(), &tri)? == sigma_assignment(&tri, &values)?);

    let path = std::env::temp_dir().join("polygon_pair.svg");
    std::fs::write(&path, pp.to_svg())?;
    println!("wrote {}", path.display());
    Ok(())
}
