//! Finite polarities (formal contexts) and compatible relations between them.
//!
//! A polarity `(A⁻, A⁺; 𝒜)` is two finite carriers with an incidence
//! relation. Morphisms `𝒜 → ℬ` are relations `R ⊆ A⁻ × B⁺` for which the
//! incidence relations act as identities under composition
//! `R ⨟ S = ⟨R↓ ℬ↑ S↓⟩`. The crate covers the Galois machinery, the
//! categorical structure (duality, factorization, limits), the duality with
//! complete lattices, and the tensor product with its internal hom.

pub mod bitset;
pub mod caps;
pub mod category;
pub mod duality;
pub mod error;
pub mod gen;
pub mod io;
pub mod lattice;
pub mod laws;
pub mod limits;
pub mod morphism;
pub mod oracle;
pub mod polarity;
pub mod relation;
pub mod tensor;

pub use bitset::BitSet;
pub use caps::Caps;
pub use category::{
    dual_morphism, dual_object, factor, is_epi, is_mono, is_separating, is_standard, separate,
    standardize, try_invert, FactoredMorphism, IsoWitness,
};
pub use duality::{
    c_morphism, c_object, epsilon, g_minus_morphism, g_minus_object, is_clat_morphism,
    lattice_unit, lower_adjoint_relation, preserves_joins,
};
pub use error::{Error, Result};
pub use lattice::{FiniteLattice, LatticeMap};
pub use limits::{
    coequalizer, coproduct, cotuple, equalizer, is_reduced, is_rs_frame, product, restrict_lower,
    restrict_upper, row_agreement, tuple, CoproductBundle, ProductBundle,
};
pub use morphism::{
    compatibilize, hom_enumerate, hom_meet, hom_top, is_compatible, is_compatible_left,
    is_compatible_right, Morphism,
};
pub use polarity::{relation_from_singleton_table, ClosedFamily, Polarity, Side};
pub use relation::RawRelation;
pub use tensor::{
    associator, internal_hom, left_unitor, linear_curry, linear_uncurry, right_unitor,
    stable_closure, symmetry, tensor_morphism, tensor_object, StableRelation,
};
