//! Projective geometry over ℚ: flags, cross-ratios, triple ratios and convex polygon pairs.

mod polygon;
mod proj;
mod ratios;

pub use proj::{cross, dot, from_ints, primitive, proportional, v3, Flag, Vec3};
pub use ratios::{cross_ratio, fourth_with_cross_ratio, triple_ratio, triple_ratio_by_lines};
pub use polygon::{coords_of_polygon_pair, polygon_pair_from_coords, realize, PolygonPair};
