//! Exact decision procedure for equivariant real structures on complex
//! symmetric spaces `G/H`.
//!
//! The library models the finite data that controls the decision: the finite
//! abelian quotient `Q = N_G(G^θ)/G^θ` with its Galois action, the subgroup
//! `H̄ = H/G^θ`, the center `Z(G)` with its action, the connecting-map value
//! `δ(σ)`, and the compatibility of the involutions `σ` and `θ`. From these it
//! decides existence (compatibility, stability, vanishing of the obstruction
//! `Δ_H(σ)`) and counts the equivalence classes of structures, which always
//! number a power of two.
//!
//! All arithmetic is exact: group elements are residue vectors, lattices are
//! handled through Hermite and Smith normal forms over arbitrary-precision
//! integers, and every division is checked.

pub mod abelian;
pub mod engine;
pub mod factor_graph;
pub mod families;
pub mod gamma;
pub mod matrix;
pub mod oracle;

use thiserror::Error;

/// Errors reported by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid group presentation: {0}")]
    InvalidPresentation(String),

    #[error("parent mismatch: {0}")]
    ParentMismatch(String),

    #[error("ill-defined homomorphism: {0}")]
    IllDefinedHomomorphism(String),

    #[error("{0} is not prime")]
    NotPrime(i64),

    #[error("the action is not an automorphism (kernel of order {kernel_order})")]
    NotAutomorphism { kernel_order: u128 },

    #[error("the action is not involutive (its square is not the identity)")]
    NotInvolutive,

    #[error("homomorphism is not equivariant for the Galois actions")]
    NotEquivariant,

    #[error("representative violates the degree-{degree} cocycle condition")]
    NotACocycle { degree: u8 },

    #[error("expected a degree-2 cohomology class")]
    DegreeMismatch,

    #[error("the Galois action does not stabilize the subgroup")]
    NotStable,

    #[error("no equivariant real structure exists; class count is undefined")]
    StructureDoesNotExist,

    #[error("enumeration budget exceeded: group order {order} > budget {max_order}")]
    BudgetExceeded { order: u128, max_order: u128 },

    #[error("invalid factor graph: {}", crate::factor_graph::render_violations(.0))]
    InvalidFactorGraph(Vec<factor_graph::Violation>),

    #[error("unsupported label combination: {0}; supply an explicit compat flag in generic mode")]
    UnsupportedLabels(String),

    #[error("invalid family parameters: {0}")]
    InvalidFamilySpec(String),

    #[error("invalid range: {0}")]
    InvalidRange(String),
}

pub type Result<T> = std::result::Result<T, Error>;
