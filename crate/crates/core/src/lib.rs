//! Finite-model engine for normal subobjects and internal equivalence
//! relations.
//!
//! Three quasi-pointed Mal'tsev contexts are supported, each over finite
//! carriers given by explicit operation tables:
//!
//! * [`Context::Gp`]: finite groups (pointed, protomodular);
//! * [`Context::GpdS`]: finite groupoids over a fixed object set with
//!   identity-on-objects functors (quasi-pointed, protomodular);
//! * [`Context::GpCirc`]: the variety of groups extended by the empty algebra
//!   (quasi-pointed, Mal'tsev, not protomodular).
//!
//! The [`normality`] module holds the Bourn-normality test and the two
//! functors relating Bourn-normal monomorphisms and equivalence relations;
//! [`theorems`] replays their properties over a corpus and produces reports.

pub mod normality;
pub mod par;
pub mod relations;
pub mod structures;
pub mod theorems;

pub use par::Exec;
pub use relations::{EquivRelation, RelationError};
pub use structures::{Context, FiniteStructure, Mono, StructureError, StructureMap, Subobject};
