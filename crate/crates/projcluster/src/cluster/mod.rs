//! Seeds, mutations, Poisson brackets and finite-type certification.

mod dynkin;
mod map;
mod quiver;
mod search;
mod seed;

pub use dynkin::{dynkin_type, DynkinType};
pub use map::{
    check_poisson_preserved, log_gradient, mutate_x, mutate_x_named, mutation_sequence, poisson_bracket,
    poisson_defects, ClusterMap,
};
pub use quiver::{canonical_form, CanonicalForm, Quiver};
pub use search::{mutation_class_search, SearchOutcome, DEFAULT_STATE_CAP};
pub use seed::Seed;
