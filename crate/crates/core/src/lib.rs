//! Irreducible components, King stability, and moduli shapes of module
//! varieties for acyclic quiver algebras with quadratic monomial relations.
//!
//! The crate works at two scales. Over tiny prime fields (F_2, F_3, F_5)
//! and small total dimension it enumerates submodules exhaustively, giving
//! exact stability verdicts and Jordan-Hoelder filtrations. Over a large
//! prime field (F_10007 by default) it samples generic modules, decomposes
//! them Krull-Schmidt style, and pins every shortcut against the exact
//! oracle in the test suites. All arithmetic is exact modulo a prime.
//!
//! Randomness comes from a single documented SplitMix64 stream per
//! `(seed, salt)` pair, so identical inputs reproduce byte-identical
//! results across platforms, runs, and parallel schedules.

pub mod algebra;
pub mod catalog;
pub mod components;
pub mod dimvec;
pub mod doc;
pub mod error;
pub mod fp;
pub mod homalg;
pub mod matrix;
pub mod moduli;
pub mod module;
pub mod quiver;
pub mod reference;
pub mod report;
pub mod rng;
pub mod stability;
pub mod submodule;

pub use algebra::{BoundQuiverAlgebra, ClassReport, Coloring, MonomialIdeal, RelationChain};
pub use components::{
    enumerate_components, ext1_generic, generic_decomposition, generic_module, Component,
    RankSequence,
};
pub use dimvec::{DimensionVector, Weight};
pub use error::{Error, Result};
pub use fp::PrimeField;
pub use homalg::{
    decompose, end_dim, ext1_dim, ext_alternating_sum, ext_dims, geometric_splitting_degree,
    hom_dim, hom_space, is_isomorphic, pdim, syzygy,
};
pub use matrix::{Matrix, Subspace};
pub use moduli::{
    classify_stable_component, compose_moduli, moduli_shape, ComponentAnalysis, ModuliShape,
    NormalizedShape, StableClass,
};
pub use module::{
    enumerate_string_walks, projective, string_module, ExplicitModule, Letter, ModuleMap,
};
pub use quiver::{Arrow, ArrowId, Quiver, VertexId};
pub use rng::SplitMix64;
pub use stability::{
    gr_theta, is_semistable, is_stable, is_theta_semistable_dimvec, stable_decomposition,
    weight_pairing, StabilityParams, StableDecomposition, StableFactor,
};
pub use submodule::{
    coordinate_submodule_dimension_vectors, enumerate_submodules, quotient, restrict,
    submodule_dimension_vectors, Submodule,
};
