//! Bourn-normal monomorphisms and the two functors between them and
//! equivalence relations.
//!
//! A mono `n: N → X` is Bourn-normal to a congruence `R` on `X` when the
//! codiscrete relation on `N` maps into `R` over `n` and both squares of that
//! map are pullbacks. Concretely: every parallel pair of the image is
//! related, and the class of each `n(a)` is exactly the image of the arrows
//! of `N` parallel to `a`.
//!
//! [`nor`] sends `R` to `r₂ ∘ ker(r₁)`; [`rel`] sends `n` to the congruence
//! generated by the parallel pairs of its image.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::relations::{
    codiscrete, enumerate_congruences, generated_congruence, relation_object, EquivRelation,
    RelationError, RelationMorphism,
};
use crate::structures::{final_kernel, has_null_support, kernel, FiniteStructure, Mono, StructureMap};

/// Which pullback condition fails, with a witness in the codomain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NotNormal {
    /// The relation lives on a different carrier.
    CarrierMismatch { relation: usize, codomain: usize },
    /// A parallel pair of the image is not related.
    FirstSquare { left: usize, right: usize },
    /// The class of `element` differs from the image of the arrows of `N`
    /// parallel to it.
    SecondSquare { element: usize, class_size: usize, image_size: usize },
}

impl fmt::Display for NotNormal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NotNormal::CarrierMismatch { relation, codomain } => {
                write!(f, "relation on {relation} elements, codomain has {codomain}")
            }
            NotNormal::FirstSquare { left, right } => {
                write!(f, "first square: image pair ({left},{right}) is not related")
            }
            NotNormal::SecondSquare { element, class_size, image_size } => write!(
                f,
                "second square: class of {element} has {class_size} elements, N has {image_size}"
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NormalityError {
    #[error("not Bourn-normal: {0}")]
    NotNormal(NotNormal),
    #[error(transparent)]
    Relation(#[from] RelationError),
    #[error("comparison failed: expected image {expected:?}, found {found:?}")]
    ImageMismatch { expected: Vec<usize>, found: Vec<usize> },
    #[error("({0},{1}) lies in the smaller relation but not the larger")]
    NotContained(usize, usize),
    #[error("map does not carry the image of the first mono into the second at {0}")]
    NotFactoring(usize),
}

/// Checks both pullback squares of `n` against `r`.
pub fn bourn_normal_failure(n: &Mono, r: &EquivRelation) -> Option<NotNormal> {
    let x = n.codomain();
    let dom = n.domain();
    if r.size() != x.size() {
        return Some(NotNormal::CarrierMismatch { relation: r.size(), codomain: x.size() });
    }
    let f = n.map();
    for a in 0..dom.size() {
        for b in 0..dom.size() {
            if dom.is_parallel(a, b) && !r.related(f.apply(a), f.apply(b)) {
                return Some(NotNormal::FirstSquare { left: f.apply(a), right: f.apply(b) });
            }
        }
    }
    for a in 0..dom.size() {
        let mut image: Vec<usize> =
            (0..dom.size()).filter(|&b| dom.is_parallel(a, b)).map(|b| f.apply(b)).collect();
        image.sort_unstable();
        let class = r.class_of(f.apply(a));
        if class != image {
            return Some(NotNormal::SecondSquare {
                element: f.apply(a),
                class_size: class.len(),
                image_size: image.len(),
            });
        }
    }
    None
}

pub fn is_bourn_normal_to(n: &Mono, r: &EquivRelation) -> bool {
    bourn_normal_failure(n, r).is_none()
}

/// `r₂ ∘ ker(r₁)`, built on the relation as a structure of pairs.
pub fn nor(x: &Arc<FiniteStructure>, r: &EquivRelation) -> Result<Mono, RelationError> {
    let obj = relation_object(x, r)?;
    let k = kernel(&obj.r1);
    let composite = k.map().then(&obj.r2).expect("kernel lands in the relation");
    Ok(Mono::new(composite).expect("r₂ is injective on the kernel of r₁"))
}

/// The congruence generated by the parallel pairs of the image of `n`.
pub fn rel(n: &StructureMap) -> EquivRelation {
    let dom = n.domain();
    let seeds: Vec<(usize, usize)> = (0..dom.size())
        .flat_map(|a| (0..dom.size()).map(move |b| (a, b)))
        .filter(|&(a, b)| a < b && dom.is_parallel(a, b))
        .map(|(a, b)| (n.apply(a), n.apply(b)))
        .collect();
    generated_congruence(n.codomain(), &seeds).expect("maps preserve parallel pairs")
}

/// Bourn-normality without a given relation: normal to its own `rel`.
pub fn is_bourn_normal(n: &Mono) -> bool {
    is_bourn_normal_to(n, &rel(n.map()))
}

/// The morphism `∇N → R` over `n`.
pub fn canonical_lift(n: &Mono, r: &EquivRelation) -> Result<RelationMorphism, RelationError> {
    RelationMorphism::new(codiscrete(n.domain()), r.clone(), n.map().clone())
}

/// The lift `∇N → rel(n)` is fully faithful and a discrete fibration.
pub fn is_cartesian_discrete_fibration(n: &Mono) -> bool {
    match canonical_lift(n, &rel(n.map())) {
        Ok(m) => m.is_fully_faithful() && m.is_discrete_fibration(),
        Err(_) => false,
    }
}

/// Every congruence in `candidates` that `n` is Bourn-normal to.
pub fn witnesses_among(n: &Mono, candidates: &[EquivRelation]) -> Vec<EquivRelation> {
    candidates.iter().filter(|r| is_bourn_normal_to(n, r)).cloned().collect()
}

/// Every congruence on the codomain that `n` is Bourn-normal to.
pub fn normal_to_witnesses(n: &Mono, bound: usize) -> Result<Vec<EquivRelation>, RelationError> {
    Ok(witnesses_among(n, &enumerate_congruences(n.codomain(), bound)?))
}

/// A witness relation with the lift exhibiting normality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BournWitness {
    pub mono: Mono,
    pub relation: EquivRelation,
    pub lift: RelationMorphism,
}

impl BournWitness {
    pub fn new(mono: Mono, relation: EquivRelation) -> Result<Self, NormalityError> {
        if let Some(why) = bourn_normal_failure(&mono, &relation) {
            return Err(NormalityError::NotNormal(why));
        }
        let lift = canonical_lift(&mono, &relation)?;
        Ok(BournWitness { mono, relation, lift })
    }
}

/// Domain has null support and the mono is Bourn-normal.
pub fn in_n0(n: &Mono) -> bool {
    has_null_support(n.domain()) && is_bourn_normal(n)
}

/// `ε_n: Nor(Rel(n)) ↪ n`, given by the final kernel `k` of `N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CounitEpsilon {
    pub k: Mono,
    /// `n ∘ k`, equal as a subobject to `Nor(Rel(n))`.
    pub composite: Mono,
}

pub fn counit_epsilon(n: &Mono) -> Result<CounitEpsilon, NormalityError> {
    let r = rel(n.map());
    if let Some(why) = bourn_normal_failure(n, &r) {
        return Err(NormalityError::NotNormal(why));
    }
    let k = final_kernel(n.domain());
    let composite = k.then(n).expect("final kernel lands in the domain");
    let expected = nor(n.codomain(), &r)?.image();
    if composite.image() != expected {
        return Err(NormalityError::ImageMismatch { expected, found: composite.image() });
    }
    Ok(CounitEpsilon { k, composite })
}

/// `ε′_S: Rel(Nor(S)) ↪ S`, as a containment of relations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CounitEpsilonPrime {
    pub inner: EquivRelation,
    pub outer: EquivRelation,
}

impl CounitEpsilonPrime {
    pub fn is_equality(&self) -> bool {
        self.inner == self.outer
    }
}

pub fn counit_epsilon_prime(x: &Arc<FiniteStructure>, s: &EquivRelation) -> Result<CounitEpsilonPrime, NormalityError> {
    let inner = rel(nor(x, s)?.map());
    if let Some((a, b)) = inner.pairs().find(|&(a, b)| !s.related(a, b)) {
        return Err(NormalityError::NotContained(a, b));
    }
    Ok(CounitEpsilonPrime { inner, outer: s.clone() })
}

/// `Rel` on a commuting square `f ∘ n = m ∘ h`: the map `f` carries
/// `rel(n)` into `rel(m)`.
pub fn rel_on_morphism(f: &StructureMap, n: &StructureMap, m: &StructureMap) -> Result<RelationMorphism, NormalityError> {
    let target = m.image();
    if let Some(a) = (0..n.domain().size()).find(|&a| target.binary_search(&f.apply(n.apply(a))).is_err()) {
        return Err(NormalityError::NotFactoring(a));
    }
    Ok(RelationMorphism::new(rel(n), rel(m), f.clone())?)
}

/// `Nor` on a morphism of relations `f: (X, R) → (Y, S)`: the restriction
/// of `f` to the normalizations.
pub fn nor_on_morphism(
    f: &StructureMap,
    r: &EquivRelation,
    s: &EquivRelation,
) -> Result<StructureMap, NormalityError> {
    RelationMorphism::new(r.clone(), s.clone(), f.clone())?;
    let source = nor(f.domain(), r)?;
    let target = nor(f.codomain(), s)?;
    let lookup = target.map().as_slice();
    let mut map = Vec::with_capacity(source.domain().size());
    for i in 0..source.domain().size() {
        let y = f.apply(source.map().apply(i));
        match lookup.iter().position(|&t| t == y) {
            Some(j) => map.push(j),
            None => return Err(NormalityError::NotFactoring(i)),
        }
    }
    StructureMap::new(source.domain().clone(), target.domain().clone(), map)
        .map_err(|e| NormalityError::Relation(e.into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relations::diagonal;
    use crate::structures::builders::*;
    use crate::structures::{Context, Subobject};

    fn sub(x: &Arc<FiniteStructure>, members: &[usize]) -> Mono {
        Subobject::new(x, members.to_vec()).unwrap().inclusion(x)
    }

    fn sign(s3: &Arc<FiniteStructure>) -> EquivRelation {
        // transpositions are 1, 2, 3 and 3-cycles 4, 5
        let r = EquivRelation::from_classes(6, &[vec![0, 4, 5], vec![1, 2, 3]]).unwrap();
        assert!(crate::relations::check_congruence(s3, &r).is_ok());
        r
    }

    #[test]
    fn normality_examples() {
        let z4 = Arc::new(cyclic(4));
        let n = sub(&z4, &[0, 2]);
        let kp = EquivRelation::from_classes(4, &[vec![0, 2], vec![1, 3]]).unwrap();
        assert!(is_bourn_normal_to(&n, &kp));
        assert!(is_bourn_normal_to(&sub(&z4, &[0, 1, 2, 3]), &codiscrete(&z4)));

        let s3 = Arc::new(symmetric3());
        let t = sub(&s3, &[0, 1]);
        assert_eq!(
            bourn_normal_failure(&t, &codiscrete(&s3)),
            Some(NotNormal::SecondSquare { element: 0, class_size: 6, image_size: 2 })
        );
        assert_eq!(
            bourn_normal_failure(&t, &codiscrete(&s3)).unwrap().to_string(),
            "second square: class of 0 has 6 elements, N has 2"
        );

        let z2 = Arc::new(cyclic_in(Context::GpCirc, 2));
        let empty = Mono::new(StructureMap::new(Arc::new(empty_algebra()), z2.clone(), vec![]).unwrap()).unwrap();
        assert!(is_bourn_normal_to(&empty, &diagonal(&z2)));
        assert!(is_bourn_normal_to(&empty, &codiscrete(&z2)));
    }

    #[test]
    fn nor_examples() {
        let s3 = Arc::new(symmetric3());
        assert_eq!(nor(&s3, &sign(&s3)).unwrap().image(), vec![0, 4, 5]);
        assert_eq!(nor(&s3, &diagonal(&s3)).unwrap().image(), vec![0]);
        let c = Arc::new(cyclic_in(Context::GpCirc, 2));
        assert!(nor(&c, &codiscrete(&c)).unwrap().image().is_empty());
        assert!(nor(&c, &diagonal(&c)).unwrap().image().is_empty());
        let disc = Arc::new(disjoint_union(&[group_as_groupoid(&cyclic(2)), group_as_groupoid(&cyclic(2))]));
        assert_eq!(nor(&disc, &codiscrete(&disc)).unwrap().image(), vec![0, 1, 2, 3]);
        let bad = EquivRelation::from_class_ids(&[0, 0, 1, 1, 2, 2]);
        assert!(nor(&s3, &bad).is_err());
    }

    #[test]
    fn nor_matches_concrete_recipes() {
        // groups: class of the unit; groupoids: arrows related to an identity
        let s3 = Arc::new(symmetric3());
        for r in enumerate_congruences(&s3, 12).unwrap() {
            assert_eq!(nor(&s3, &r).unwrap().image(), r.class_of(0));
        }
        let g = Arc::new(connected_groupoid(2, &cyclic(2)));
        let ids = g.groupoid().unwrap().ids.clone();
        for r in enumerate_congruences(&g, 12).unwrap() {
            let expected: Vec<usize> =
                (0..g.size()).filter(|&b| ids.iter().any(|&i| r.related(i, b))).collect();
            assert_eq!(nor(&g, &r).unwrap().image(), expected);
        }
    }

    #[test]
    fn rel_examples() {
        let z4 = Arc::new(cyclic(4));
        assert_eq!(rel(sub(&z4, &[0, 2]).map()).to_string(), "{0,2},{1,3}");
        assert_eq!(rel(sub(&z4, &[0]).map()), diagonal(&z4));
        assert_eq!(rel(&StructureMap::identity(&z4)), codiscrete(&z4));
        let s3 = Arc::new(symmetric3());
        assert_eq!(rel(sub(&s3, &[0, 1]).map()), codiscrete(&s3));
        let c = Arc::new(cyclic_in(Context::GpCirc, 3));
        let empty = StructureMap::new(Arc::new(empty_algebra()), c.clone(), vec![]).unwrap();
        assert_eq!(rel(&empty), diagonal(&c));
        // rel of a non-injective map
        let (_, q) = crate::structures::quotient(&z4, &rel(sub(&z4, &[0, 2]).map())).unwrap();
        assert_eq!(rel(&q).num_classes(), 1);
    }

    #[test]
    fn bourn_normal_without_witness() {
        let s3 = Arc::new(symmetric3());
        assert!(is_bourn_normal(&sub(&s3, &[0, 4, 5])));
        assert!(!is_bourn_normal(&sub(&s3, &[0, 1])));
        assert!(is_cartesian_discrete_fibration(&sub(&s3, &[0, 4, 5])));
        assert!(!is_cartesian_discrete_fibration(&sub(&s3, &[0, 1])));
    }

    #[test]
    fn witness_counts() {
        let s3 = Arc::new(symmetric3());
        assert_eq!(normal_to_witnesses(&sub(&s3, &[0, 4, 5]), 12).unwrap(), vec![sign(&s3)]);
        assert!(normal_to_witnesses(&sub(&s3, &[0, 1]), 12).unwrap().is_empty());
        let z2 = Arc::new(cyclic_in(Context::GpCirc, 2));
        let empty = Mono::new(StructureMap::new(Arc::new(empty_algebra()), z2.clone(), vec![]).unwrap()).unwrap();
        assert_eq!(normal_to_witnesses(&empty, 12).unwrap().len(), 2);
        assert!(BournWitness::new(empty, codiscrete(&z2)).is_ok());
    }

    #[test]
    fn epsilon_per_context() {
        let s3 = Arc::new(symmetric3());
        let a3 = sub(&s3, &[0, 4, 5]);
        let e = counit_epsilon(&a3).unwrap();
        assert_eq!(e.k.image(), vec![0, 1, 2]);
        assert_eq!(e.composite.image(), vec![0, 4, 5]);
        assert!(counit_epsilon(&sub(&s3, &[0, 1])).is_err());

        let g = Arc::new(connected_groupoid(2, &cyclic(2)));
        let whole = sub(&g, &(0..8).collect::<Vec<_>>());
        let e = counit_epsilon(&whole).unwrap();
        let endo: Vec<usize> = (0..8).filter(|&a| g.is_endo(a)).collect();
        assert_eq!(e.composite.image(), endo);

        let c = Arc::new(cyclic_in(Context::GpCirc, 3));
        let e = counit_epsilon(&sub(&c, &[0, 1, 2])).unwrap();
        assert!(e.composite.image().is_empty());
    }

    #[test]
    fn epsilon_prime_per_context() {
        let s3 = Arc::new(symmetric3());
        for r in enumerate_congruences(&s3, 12).unwrap() {
            assert!(counit_epsilon_prime(&s3, &r).unwrap().is_equality());
        }
        let c = Arc::new(cyclic_in(Context::GpCirc, 2));
        let e = counit_epsilon_prime(&c, &codiscrete(&c)).unwrap();
        assert_eq!(e.inner, diagonal(&c));
        assert!(!e.is_equality());
        assert!(counit_epsilon_prime(&c, &diagonal(&c)).unwrap().is_equality());
    }

    #[test]
    fn n0_membership() {
        let s3 = Arc::new(symmetric3());
        assert!(in_n0(&sub(&s3, &[0, 4, 5])));
        let g = Arc::new(connected_groupoid(2, &cyclic(2)));
        let whole = sub(&g, &(0..8).collect::<Vec<_>>());
        assert!(is_bourn_normal(&whole));
        assert!(!in_n0(&whole));
        let k = counit_epsilon(&whole).unwrap().composite;
        assert!(in_n0(&k));
        let c = Arc::new(cyclic_in(Context::GpCirc, 2));
        assert!(!in_n0(&sub(&c, &[0, 1])));
    }

    #[test]
    fn functor_actions() {
        let z4 = Arc::new(cyclic(4));
        let z2 = Arc::new(cyclic(2));
        let f = StructureMap::new(z4.clone(), z2.clone(), vec![0, 1, 0, 1]).unwrap();
        let n = sub(&z4, &[0, 2]);
        let m = sub(&z2, &[0]);
        let lifted = rel_on_morphism(&f, n.map(), m.map()).unwrap();
        assert_eq!(lifted.source().to_string(), "{0,2},{1,3}");
        assert!(rel_on_morphism(&f, &StructureMap::identity(&z4), m.map()).is_err());

        let r = rel(n.map());
        let s = diagonal(&z2);
        let g = nor_on_morphism(&f, &r, &s).unwrap();
        assert_eq!(g.as_slice(), &[0, 0]);
        assert!(nor_on_morphism(&f, &codiscrete(&z4), &s).is_err());
    }
}
