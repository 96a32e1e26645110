//! Internal reflexive and equivalence relations on finite structures.
//!
//! Equivalence relations are partitions ([`EquivRelation`]); the pair-set
//! view and the relation as a structure in its own right
//! ([`relation_object`]) are derived on demand. In groupoid context only
//! parallel arrows may be related.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::structures::{quotient, FiniteStructure, StructureError, StructureMap, Table};

mod closure;
mod enumerate;
mod fibration;
mod literal;
mod maltsev;
mod pairs;
mod partition;
mod union_find;

pub use closure::{compatible_closure, generated_congruence, generated_congruence_from, ReflexiveRelation};
pub use enumerate::{
    enumerate_congruences, enumerate_congruences_by_filter, enumerate_congruences_with,
    DEFAULT_MAX_CARRIER, FILTER_MAX_CARRIER,
};
pub use fibration::{LiftFailure, RelationMorphism};
pub use literal::{parse_relation_literal, parse_subset_literal};
pub use maltsev::{
    enumerate_reflexive_compatible, verify_maltsev, verify_maltsev_with, MaltsevMode, MaltsevReport,
    DEFAULT_EXHAUSTIVE_BOUND, DEFAULT_SAMPLES,
};
pub use pairs::PairSet;
pub use partition::EquivRelation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RelationError {
    #[error("element {element} is outside the carrier of size {size}")]
    OutOfRange { element: usize, size: usize },
    #[error("({0},{1}) is not a parallel pair")]
    NonParallel(usize, usize),
    #[error("relations on carriers of different sizes ({left} and {right})")]
    SizeMismatch { left: usize, right: usize },
    #[error("carrier of size {size} exceeds the enumeration bound {bound}")]
    BoundExceeded { size: usize, bound: usize },
    #[error("not an internal equivalence relation: {0}")]
    NotCongruence(RelationViolation),
    #[error("bad literal: {0}")]
    Literal(String),
    #[error("({0},{1}) is related but its image is not")]
    NotARelationMorphism(usize, usize),
    #[error(transparent)]
    Structure(#[from] StructureError),
}

/// Why a pair set fails to be an internal equivalence relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RelationViolation {
    OutOfRange(usize, usize),
    NotParallel(usize, usize),
    Reflexivity(usize),
    Symmetry(usize, usize),
    Transitivity(usize, usize, usize),
    Compatibility { op: String, pairs: Vec<(usize, usize)> },
}

impl fmt::Display for RelationViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RelationViolation::OutOfRange(a, b) => write!(f, "range ({a},{b})"),
            RelationViolation::NotParallel(a, b) => write!(f, "parallel ({a},{b})"),
            RelationViolation::Reflexivity(a) => write!(f, "reflexivity ({a},{a})"),
            RelationViolation::Symmetry(a, b) => write!(f, "symmetry ({a},{b})"),
            RelationViolation::Transitivity(a, b, c) => {
                write!(f, "transitivity ({a},{b}),({b},{c})")
            }
            RelationViolation::Compatibility { op, pairs } => {
                let ps: Vec<String> = pairs.iter().map(|(a, b)| format!("({a},{b})")).collect();
                write!(f, "compatibility with `{op}` at {}", ps.join(","))
            }
        }
    }
}

/// The discrete relation: every element alone.
pub fn diagonal(x: &FiniteStructure) -> EquivRelation {
    EquivRelation::diagonal(x.size())
}

/// The largest relation: one class per hom-set in groupoid context, a single
/// class otherwise.
pub fn codiscrete(x: &FiniteStructure) -> EquivRelation {
    let labels: Vec<usize> = (0..x.size()).map(|a| x.src(a) * x.objects() + x.tgt(a)).collect();
    EquivRelation::from_class_ids(&labels)
}

/// Checks reflexivity, symmetry, transitivity, parallelism and compatibility
/// of a raw pair set, reporting the first failure.
pub fn is_internal_equivalence(x: &FiniteStructure, pairs: &[(usize, usize)]) -> Result<(), RelationViolation> {
    let n = x.size();
    if let Some(&(a, b)) = pairs.iter().find(|&&(a, b)| a >= n || b >= n) {
        return Err(RelationViolation::OutOfRange(a, b));
    }
    if let Some(&(a, b)) = pairs.iter().find(|&&(a, b)| !x.is_parallel(a, b)) {
        return Err(RelationViolation::NotParallel(a, b));
    }
    let set = PairSet::from_pairs(n, pairs.iter().copied());
    if let Some(a) = set.reflexivity_failure() {
        return Err(RelationViolation::Reflexivity(a));
    }
    if let Some((a, b)) = set.symmetry_failure() {
        return Err(RelationViolation::Symmetry(a, b));
    }
    if let Some((a, b, c)) = set.transitivity_failure() {
        return Err(RelationViolation::Transitivity(a, b, c));
    }
    compatibility_failure(x, &set).map_or(Ok(()), Err)
}

pub(crate) fn compatibility_failure(x: &FiniteStructure, set: &PairSet) -> Option<RelationViolation> {
    let n = x.size();
    for op in x.ops() {
        match &op.table {
            Table::Unary(t) => {
                if let Some((a, b)) = set.iter().find(|&(a, b)| !set.contains(t[a], t[b])) {
                    return Some(RelationViolation::Compatibility { op: op.name.clone(), pairs: vec![(a, b)] });
                }
            }
            Table::Binary(t) => {
                for (a, b) in set.iter() {
                    for (c, d) in set.iter() {
                        let ok = match (t[a * n + c], t[b * n + d]) {
                            (Some(u), Some(v)) => set.contains(u, v),
                            (None, None) => true,
                            _ => false,
                        };
                        if !ok {
                            return Some(RelationViolation::Compatibility {
                                op: op.name.clone(),
                                pairs: vec![(a, b), (c, d)],
                            });
                        }
                    }
                }
            }
        }
    }
    None
}

/// Checks an [`EquivRelation`] against `x`: parallel classes and compatible.
pub fn check_congruence(x: &FiniteStructure, r: &EquivRelation) -> Result<(), RelationError> {
    if r.size() != x.size() {
        return Err(RelationError::SizeMismatch { left: x.size(), right: r.size() });
    }
    let pairs: Vec<(usize, usize)> = r.pairs().collect();
    is_internal_equivalence(x, &pairs).map_err(RelationError::NotCongruence)
}

/// Fibres of `f`.
pub fn kernel_pair(f: &StructureMap) -> EquivRelation {
    EquivRelation::from_class_ids(f.as_slice())
}

pub fn meet(r: &EquivRelation, s: &EquivRelation) -> Result<EquivRelation, RelationError> {
    r.meet(s)
}

/// The congruence generated by the union of `r` and `s`.
pub fn join(x: &FiniteStructure, r: &EquivRelation, s: &EquivRelation) -> Result<EquivRelation, RelationError> {
    if r.size() != s.size() {
        return Err(RelationError::SizeMismatch { left: r.size(), right: s.size() });
    }
    generated_congruence_from(x, r, &s.spanning_pairs())
}

/// Whether `r` is the kernel pair of its own quotient projection.
pub fn is_effective(x: &Arc<FiniteStructure>, r: &EquivRelation) -> Result<bool, StructureError> {
    let (_, projection) = quotient(x, r)?;
    Ok(kernel_pair(&projection) == *r)
}

/// An equivalence relation as a subobject of the product in context, with
/// its two legs.
#[derive(Debug, Clone)]
pub struct RelationObject {
    pub structure: Arc<FiniteStructure>,
    pub pairs: Vec<(usize, usize)>,
    pub r1: StructureMap,
    pub r2: StructureMap,
}

pub fn relation_object(x: &Arc<FiniteStructure>, r: &EquivRelation) -> Result<RelationObject, RelationError> {
    check_congruence(x, r)?;
    let n = x.size();
    let pairs: Vec<(usize, usize)> = r.pairs().collect();
    let mut index = vec![None; n * n];
    for (i, &(a, b)) in pairs.iter().enumerate() {
        index[a * n + b] = Some(i);
    }
    let structure = Arc::new(crate::structures::pair_structure(x, &pairs, &index));
    let r1 = StructureMap::new(structure.clone(), x.clone(), pairs.iter().map(|p| p.0).collect())?;
    let r2 = StructureMap::new(structure.clone(), x.clone(), pairs.iter().map(|p| p.1).collect())?;
    Ok(RelationObject { structure, pairs, r1, r2 })
}
