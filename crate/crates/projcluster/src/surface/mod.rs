//! Triangulations of polygons and punctured surfaces, the marked-point set I₃,
//! its ε function, flips, the involution σ and Farey windows.
//!
//! Marked points are named `edge:<key>:near:<end>` and `tri:<key>:center`. For polygons the
//! keys are vertex lists (`0.2`, `0.1.2`); for surfaces they are indices, and the ends of a
//! loop edge are `tail` and `head`.

mod epsilon;
mod farey;
mod flip;
mod flipgraph;
mod pentagon;
mod sigma;
mod triangulation;

pub use epsilon::{
    bootstrap_patterns, epsilon_of_triangulation, epsilon_with_pattern, flip_compatible_patterns, triangle_pattern, Pattern,
};
pub use farey::{farey_window, FareyWindow};
pub use flip::{
    flip_closed_form, flip_formulas, flip_via_mutations, double_flip_relabeling, Flip, FlippedRoles, QuadRoles,
    SIDE_LABELS,
};
pub use pentagon::{as_permutation, pentagon_geometric, pentagon_keys, slot_run, SlotRun};
pub use flipgraph::{flip_sequence, DEFAULT_FLIP_CAP};
pub use sigma::{sigma_assignment, sigma_map};
pub use triangulation::{Edge, Kind, MarkedPoint, Quad, Side, Triangle, Triangulation};

/// Values of marked points by name.
pub type Assignment = std::collections::BTreeMap<String, crate::Rat>;
