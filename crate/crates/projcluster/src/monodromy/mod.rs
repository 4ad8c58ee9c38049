//! Monodromy of convex projective structures in coordinates.
//!
//! Each triangle carries a little triangle whose counterclockwise sides get `T(X)`, with
//! `X` the center coordinate. Each internal edge is crossed by an e-edge labelled
//! `E(Z,W)`, where `W` is the edge point on the traveller's left and `Z` the one on the
//! right; crossing the other way gives `E(W,Z) = E(Z,W)⁻¹`. A loop is recorded by the
//! edges it crosses, and its monodromy is the product `E₁T₁^{±1}E₂T₂^{±1}…` taken left
//! to right in path order.

mod graph;
mod matrix;
mod positivity;

pub use graph::{Crossing, LoopWord, MonodromyGraph, Port, Turn};
pub use matrix::{e_matrix, t_inverse, t_matrix, Matrix3};
pub use positivity::{
    certify_loop_positivity, certify_total_positivity, check_regular_hyperbolic, distinct_real_roots,
    is_regular_hyperbolic, trace_laurent, trace_of_power, MinorCertificate, TpCertificate, TpStatus, Triangular,
};
