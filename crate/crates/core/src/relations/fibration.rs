use super::{EquivRelation, RelationError};
use crate::structures::StructureMap;

/// A map `f: X → Y` carrying `R` on `X` into `S` on `Y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationMorphism {
    source: EquivRelation,
    target: EquivRelation,
    base: StructureMap,
}

/// An element `a` and a partner `y` of `f(a)` with `lifts` preimages in the
/// class of `a` (a discrete fibration needs exactly one).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LiftFailure {
    pub element: usize,
    pub target: usize,
    pub lifts: usize,
}

impl RelationMorphism {
    pub fn new(source: EquivRelation, target: EquivRelation, base: StructureMap) -> Result<Self, RelationError> {
        let (n, m) = (base.domain().size(), base.codomain().size());
        if source.size() != n {
            return Err(RelationError::SizeMismatch { left: n, right: source.size() });
        }
        if target.size() != m {
            return Err(RelationError::SizeMismatch { left: m, right: target.size() });
        }
        if let Some((a, b)) = source.pairs().find(|&(a, b)| !target.related(base.apply(a), base.apply(b))) {
            return Err(RelationError::NotARelationMorphism(a, b));
        }
        Ok(RelationMorphism { source, target, base })
    }

    pub fn source(&self) -> &EquivRelation {
        &self.source
    }

    pub fn target(&self) -> &EquivRelation {
        &self.target
    }

    pub fn base(&self) -> &StructureMap {
        &self.base
    }

    /// The induced map on pairs.
    pub fn pair_map(&self) -> Vec<((usize, usize), (usize, usize))> {
        self.source.pairs().map(|(a, b)| ((a, b), (self.base.apply(a), self.base.apply(b)))).collect()
    }

    /// First failure of unique lifting along the first projection: for each
    /// `a` and each `y` related to `f(a)`, exactly one `b` related to `a`
    /// with `f(b) = y`.
    pub fn fibration_failure(&self) -> Option<LiftFailure> {
        let f = &self.base;
        for a in 0..self.source.size() {
            let class = self.source.class_of(a);
            for y in self.target.class_of(f.apply(a)) {
                let lifts = class.iter().filter(|&&b| f.apply(b) == y).count();
                if lifts != 1 {
                    return Some(LiftFailure { element: a, target: y, lifts });
                }
            }
        }
        None
    }

    /// The same along the second projection.
    pub fn opfibration_failure(&self) -> Option<LiftFailure> {
        let f = &self.base;
        for b in 0..self.source.size() {
            let class = self.source.class_of(b);
            for y in self.target.class_of(f.apply(b)) {
                let lifts = class.iter().filter(|&&a| f.apply(a) == y).count();
                if lifts != 1 {
                    return Some(LiftFailure { element: b, target: y, lifts });
                }
            }
        }
        None
    }

    pub fn is_discrete_fibration(&self) -> bool {
        self.fibration_failure().is_none()
    }

    pub fn is_discrete_opfibration(&self) -> bool {
        self.opfibration_failure().is_none()
    }

    /// A pair unrelated in the source whose image is related in the target.
    pub fn faithfulness_failure(&self) -> Option<(usize, usize)> {
        let n = self.source.size();
        let f = &self.base;
        (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .find(|&(a, b)| !self.source.related(a, b) && self.target.related(f.apply(a), f.apply(b)))
    }

    /// `R` is the preimage of `S`.
    pub fn is_fully_faithful(&self) -> bool {
        self.faithfulness_failure().is_none()
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::relations::kernel_pair;
    use crate::structures::builders::*;
    use crate::structures::Subobject;

    #[test]
    fn subgroup_inclusion_into_its_cosets() {
        // {0,2} ⊆ Z4 with the codiscrete relation over the mod-2 kernel pair
        let z4 = Arc::new(cyclic(4));
        let n = Subobject::new(&z4, vec![0, 2]).unwrap().inclusion(&z4);
        let r = EquivRelation::from_classes(4, &[vec![0, 2], vec![1, 3]]).unwrap();
        let m = RelationMorphism::new(EquivRelation::full(2), r, n.map().clone()).unwrap();
        assert!(m.is_fully_faithful());
        assert!(m.is_discrete_fibration());
        assert!(m.is_discrete_opfibration());
        assert_eq!(m.pair_map().len(), 4);
    }

    #[test]
    fn too_coarse_target_is_not_a_fibration() {
        let z4 = Arc::new(cyclic(4));
        let n = Subobject::new(&z4, vec![0, 2]).unwrap().inclusion(&z4);
        let m = RelationMorphism::new(EquivRelation::full(2), EquivRelation::full(4), n.map().clone()).unwrap();
        assert!(m.is_fully_faithful());
        let fail = m.fibration_failure().unwrap();
        assert_eq!(fail.lifts, 0);
        assert!(!m.is_discrete_opfibration());
    }

    #[test]
    fn non_morphisms_rejected() {
        let z4 = Arc::new(cyclic(4));
        let n = Subobject::new(&z4, vec![0, 2]).unwrap().inclusion(&z4);
        let err = RelationMorphism::new(EquivRelation::full(2), EquivRelation::diagonal(4), n.map().clone());
        assert_eq!(err, Err(RelationError::NotARelationMorphism(0, 1)));
    }

    #[test]
    fn projection_onto_quotient_is_not_faithful_on_diagonal() {
        let z4 = Arc::new(cyclic(4));
        let r = EquivRelation::from_classes(4, &[vec![0, 2], vec![1, 3]]).unwrap();
        let (_, q) = crate::structures::quotient(&z4, &r).unwrap();
        let kp = kernel_pair(&q);
        let m = RelationMorphism::new(EquivRelation::diagonal(4), EquivRelation::diagonal(2), q).unwrap();
        assert_eq!(m.faithfulness_failure(), Some((0, 2)));
        assert_eq!(kp, r);
    }
}
