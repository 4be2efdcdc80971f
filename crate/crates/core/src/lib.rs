//! Finite association schemes, actions of one scheme on another, the
//! semidirect product `U ⋉_ζ T` of an action, and the recovery of an action
//! from a scheme with a splitting.
//!
//! Schemes are stored as color matrices on points `0..n`; relation `0` is
//! always the diagonal. Everything is exact integer arithmetic.

#![allow(clippy::needless_range_loop)]

pub mod action;
pub mod algebra;
pub mod category;
pub mod closure;
pub mod crosscheck;
pub mod error;
pub mod fixtures;
pub mod io;
pub mod iso;
pub mod labelling;
pub mod morphism;
pub mod recovery;
pub mod scheme;
pub mod semidirect;

pub use action::{build_action, build_action_from_partial, full_action, trivial_action, Action};
pub use algebra::{RelSet, RelationAlgebra};
pub use category::CMorphism;
pub use closure::{
    closure_of, enumerate_closed_subsets, is_normal, quotient, subscheme, ClosedSubset, PointPartition,
    QuotientScheme, Subscheme,
};
pub use error::{Error, Result};
pub use iso::{algebraic_automorphisms, find_isomorphism, Isomorphism};
pub use labelling::{tau_apply, tau_table, LabellingSet, TauScheme};
pub use morphism::SchemeMorphism;
pub use recovery::{
    boundary_subsets, reconstruct, recover_action, validate_split_data, Reconstruction, RecoveredAction,
};
pub use scheme::Scheme;
pub use semidirect::{canonical_split, semidirect_product, verify_split_condition, Label, SemidirectScheme, SplitData};
