//! Exact coordinates on moduli of convex projective structures.
//!
//! The crate is organised bottom-up:
//!
//! * [`arith`]: rationals, Laurent polynomials, reduced rational functions,
//!   substitution and positivity certificates.
//! * [`cluster`]: seeds, mutations, Poisson brackets, quiver canonical forms
//!   and mutation-class search.
//! * [`surface`]: ideal triangulations, the marked-point set, the ε-function,
//!   flips, the involution σ and Farey windows.
//! * [`geom`]: flags, cross- and triple ratios, polygon pairs and their
//!   coordinates.
//! * [`monodromy`]: the T/E matrices, loops in the monodromy graph,
//!   total positivity and hyperbolicity checks.
//! * [`quantum`]: the quantum torus, quantum mutations and flips, and
//!   root-of-unity representations.
//!
//! The `examples/` directory has one runnable program per capability.

pub mod arith;
pub mod cli;
pub mod cluster;
pub mod geom;
pub mod monodromy;
pub mod quantum;
pub mod surface;

pub use arith::{Laurent, RatFunc, Rat, Var};

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("denominator vanishes identically: {0}")]
    DenominatorVanishes(String),
    #[error("pole at evaluation point: {0}")]
    PoleAtPoint(String),
    #[error("unknown variable {0}")]
    UnknownVariable(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("seed mismatch: {0}")]
    SeedMismatch(String),
    #[error("invalid triangulation: {0}")]
    InvalidTriangulation(String),
    #[error("flip not supported at self-glued edge {0}")]
    SelfFolded(String),
    #[error("edge {0} is not an internal edge")]
    NotInternal(String),
    #[error("degenerate configuration: {0}")]
    Degenerate(String),
    #[error("non-positive coordinate {0}")]
    NonPositive(String),
    #[error("search limit exceeded: {0}")]
    SearchLimit(String),
    #[error("representation too large: {0}")]
    TooLarge(String),
    #[error("invalid loop: {0}")]
    InvalidLoop(String),
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
