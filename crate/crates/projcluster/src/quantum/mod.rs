//! Quantum torus, quantum mutations and flips, and root-of-unity checks.

mod expr;
mod flip;
mod qlaurent;
mod rep;
mod verify;
mod torus;

pub use expr::{g_factor, mutation_is_star_equivariant, quantum_mutation, quantum_mutation_named, QExpr, QRationalMap};
pub use flip::{quantum_flip, quantum_flip_formulas, quantum_flip_intermediate, role_names};
pub use qlaurent::QLaurent;
pub use rep::{
    apply_map, apply_mutations, clock_shift_representation, cmul, inverse, lu_blocked, commutation_residual, residual, root_power, skew_normal_form, CMat,
    Evaluator, Representation, SkewNormalForm,
};
pub use torus::{pairing, qmul, QTorusElem};
pub use verify::{verify_quantum, QuantumCheck, QuantumOptions, QuantumReport};
