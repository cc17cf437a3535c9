//! Equations with abelianisation constraints in graph products of cyclic groups.
//!
//! A [`Presentation`] is a finite graph whose vertices carry cyclic groups;
//! elements are stored as canonical [`NormalWord`]s. On top of the word
//! arithmetic the crate provides centralizers and block decompositions for
//! right-angled Artin groups, the abelianisation map, an exact integer
//! linear solver, an instance language for systems of equations with
//! constraints, compilers from integer polynomial equations into that
//! language, and a bounded search over Cayley balls.

pub mod abel;
pub mod ball;
pub mod centralizer;
pub mod compile;
pub mod conjugacy;
pub mod error;
pub mod graph;
pub mod h10;
pub mod ir;
pub mod linear;
#[cfg(feature = "oracle")]
pub mod oracle;
pub mod presentation;
pub mod search;
pub mod word;

pub use abel::{abelianize, exponent_sum, in_K, relation_holds, AbelVector, Relation};
pub use ball::{enumerate_ball, DEFAULT_CAP};
pub use centralizer::{centralizer_generators, CentralizerDesc};
pub use conjugacy::{block_decomposition, cyclically_reduce, Block, BlockDecomposition};
pub use error::{Error, Result};
pub use graph::{
    direct_product_decomposition, minimal_vertices, nonadjacent_weak_module_pair, star_link,
    vertex_leq, weak_modules, WeakModule,
};
pub use presentation::{Order, Presentation, VertexSet};
pub use word::{NormalWord, Syllable};

/// Linear systems over arbitrary-precision integers.
pub type LinearSystem = linear::System<num_bigint::BigInt>;
/// Linear systems over `i64`, for small coefficients.
pub type LinearSystem64 = linear::System<i64>;
pub type SolvabilityResult = linear::SolvabilityResult<num_bigint::BigInt>;
