use std::fmt;

use super::union_find::UnionFind;
use super::RelationError;

/// An equivalence relation on `0..size`, stored as canonical class ids:
/// classes are numbered in order of their least member, so two relations
/// are equal iff their pair sets are.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EquivRelation {
    class_ids: Vec<usize>,
    classes: usize,
}

impl EquivRelation {
    /// Canonicalizes an arbitrary labelling of the elements.
    pub fn from_class_ids(labels: &[usize]) -> Self {
        let mut relabel = std::collections::HashMap::new();
        let class_ids: Vec<usize> = labels
            .iter()
            .map(|l| {
                let next = relabel.len();
                *relabel.entry(*l).or_insert(next)
            })
            .collect();
        EquivRelation { classes: relabel.len(), class_ids }
    }

    pub(crate) fn from_union_find(uf: &mut UnionFind) -> Self {
        let roots: Vec<usize> = (0..uf.len()).map(|a| uf.find(a)).collect();
        Self::from_class_ids(&roots)
    }

    /// Builds a relation from the listed classes; unlisted elements are
    /// singletons.
    pub fn from_classes(size: usize, classes: &[Vec<usize>]) -> Result<Self, RelationError> {
        let mut labels: Vec<usize> = (0..size).collect();
        let mut assigned = vec![false; size];
        for class in classes {
            for &a in class {
                if a >= size {
                    return Err(RelationError::OutOfRange { element: a, size });
                }
                if assigned[a] {
                    return Err(RelationError::Literal(format!("element {a} appears twice")));
                }
                assigned[a] = true;
                labels[a] = class[0];
            }
        }
        Ok(Self::from_class_ids(&labels))
    }

    /// Each element in its own class.
    pub fn diagonal(size: usize) -> Self {
        EquivRelation { class_ids: (0..size).collect(), classes: size }
    }

    /// A single class holding every element.
    pub fn full(size: usize) -> Self {
        EquivRelation { class_ids: vec![0; size], classes: usize::from(size > 0) }
    }

    pub fn size(&self) -> usize {
        self.class_ids.len()
    }

    pub fn num_classes(&self) -> usize {
        self.classes
    }

    pub fn class_id(&self, a: usize) -> usize {
        self.class_ids[a]
    }

    pub fn class_ids(&self) -> &[usize] {
        &self.class_ids
    }

    pub fn related(&self, a: usize, b: usize) -> bool {
        self.class_ids[a] == self.class_ids[b]
    }

    /// Classes in canonical order, members ascending.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.classes];
        for (a, &c) in self.class_ids.iter().enumerate() {
            out[c].push(a);
        }
        out
    }

    pub fn class_of(&self, a: usize) -> Vec<usize> {
        let c = self.class_ids[a];
        (0..self.size()).filter(|&b| self.class_ids[b] == c).collect()
    }

    /// Least member of each class, by class id.
    pub fn representatives(&self) -> Vec<usize> {
        let mut reps = Vec::with_capacity(self.classes);
        for (a, &c) in self.class_ids.iter().enumerate() {
            if c == reps.len() {
                reps.push(a);
            }
        }
        reps
    }

    /// The pair-set view, in lexicographic order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.size();
        (0..n).flat_map(move |a| (0..n).filter(move |&b| self.related(a, b)).map(move |b| (a, b)))
    }

    pub fn pair_count(&self) -> usize {
        self.classes().iter().map(|c| c.len() * c.len()).sum()
    }

    /// Pair-set containment `self ⊆ other`.
    pub fn is_contained_in(&self, other: &EquivRelation) -> bool {
        if self.size() != other.size() {
            return false;
        }
        let reps = self.representatives();
        (0..self.size()).all(|a| other.related(a, reps[self.class_ids[a]]))
    }

    /// Pairwise intersection.
    pub fn meet(&self, other: &EquivRelation) -> Result<EquivRelation, RelationError> {
        self.check_size(other)?;
        let n = other.size().max(1);
        let labels: Vec<usize> =
            (0..self.size()).map(|a| self.class_ids[a] * n + other.class_ids[a]).collect();
        Ok(Self::from_class_ids(&labels))
    }

    /// Equivalence join (transitive closure of the union), ignoring any
    /// algebraic structure.
    pub fn partition_join(&self, other: &EquivRelation) -> Result<EquivRelation, RelationError> {
        self.check_size(other)?;
        let mut uf = UnionFind::new(self.size());
        for rel in [self, other] {
            let reps = rel.representatives();
            for a in 0..rel.size() {
                uf.union(a, reps[rel.class_ids[a]]);
            }
        }
        Ok(Self::from_union_find(&mut uf))
    }

    /// Pairs `(a, rep(a))` that generate the relation as an equivalence.
    pub fn spanning_pairs(&self) -> Vec<(usize, usize)> {
        let reps = self.representatives();
        (0..self.size())
            .filter(|&a| reps[self.class_ids[a]] != a)
            .map(|a| (reps[self.class_ids[a]], a))
            .collect()
    }

    fn check_size(&self, other: &EquivRelation) -> Result<(), RelationError> {
        if self.size() != other.size() {
            return Err(RelationError::SizeMismatch { left: self.size(), right: other.size() });
        }
        Ok(())
    }
}

/// Relation literal: every class, e.g. `{0,2},{1,3}`.
impl fmt::Display for EquivRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let classes: Vec<String> = self
            .classes()
            .iter()
            .map(|c| format!("{{{}}}", c.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(",")))
            .collect();
        f.write_str(&classes.join(","))
    }
}
