use super::pairs::PairSet;
use super::union_find::UnionFind;
use super::{EquivRelation, RelationError};
use crate::structures::{FiniteStructure, Table};

fn check_seeds(x: &FiniteStructure, seeds: &[(usize, usize)]) -> Result<(), RelationError> {
    let n = x.size();
    for &(a, b) in seeds {
        for e in [a, b] {
            if e >= n {
                return Err(RelationError::OutOfRange { element: e, size: n });
            }
        }
        if !x.is_parallel(a, b) {
            return Err(RelationError::NonParallel(a, b));
        }
    }
    Ok(())
}

/// The least congruence containing `seeds`. Seeds must be parallel pairs.
pub fn generated_congruence(x: &FiniteStructure, seeds: &[(usize, usize)]) -> Result<EquivRelation, RelationError> {
    generated_congruence_from(x, &EquivRelation::diagonal(x.size()), seeds)
}

/// The least congruence containing `base` and `seeds`.
pub fn generated_congruence_from(
    x: &FiniteStructure,
    base: &EquivRelation,
    seeds: &[(usize, usize)],
) -> Result<EquivRelation, RelationError> {
    let n = x.size();
    if base.size() != n {
        return Err(RelationError::SizeMismatch { left: n, right: base.size() });
    }
    check_seeds(x, seeds)?;
    let mut uf = UnionFind::new(n);
    let mut work: Vec<(usize, usize)> = base.spanning_pairs();
    work.extend_from_slice(seeds);
    // each merged edge enqueues its translations; edges between already
    // related elements follow by transitivity from earlier merges
    while let Some((a, b)) = work.pop() {
        if !uf.union(a, b) {
            continue;
        }
        for op in x.ops() {
            match &op.table {
                Table::Unary(t) => work.push((t[a], t[b])),
                Table::Binary(t) => {
                    for c in 0..n {
                        if let (Some(u), Some(v)) = (t[a * n + c], t[b * n + c]) {
                            work.push((u, v));
                        }
                        if let (Some(u), Some(v)) = (t[c * n + a], t[c * n + b]) {
                            work.push((u, v));
                        }
                    }
                }
            }
        }
    }
    Ok(EquivRelation::from_union_find(&mut uf))
}

/// A reflexive relation closed under the operations, not necessarily
/// symmetric or transitive.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ReflexiveRelation {
    pairs: PairSet,
}

impl ReflexiveRelation {
    pub fn pairs(&self) -> &PairSet {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn contains(&self, a: usize, b: usize) -> bool {
        self.pairs.contains(a, b)
    }

    pub fn is_symmetric(&self) -> bool {
        self.pairs.symmetry_failure().is_none()
    }

    pub fn is_transitive(&self) -> bool {
        self.pairs.transitivity_failure().is_none()
    }

    pub fn is_equivalence(&self) -> bool {
        self.is_symmetric() && self.is_transitive()
    }

    /// The relation as a partition, when it is one.
    pub fn to_equivalence(&self) -> Option<EquivRelation> {
        if !self.is_equivalence() {
            return None;
        }
        let n = self.pairs.size();
        let labels: Vec<usize> =
            (0..n).map(|a| (0..n).find(|&b| self.pairs.contains(a, b)).unwrap_or(a)).collect();
        Some(EquivRelation::from_class_ids(&labels))
    }
}

/// The least reflexive relation containing `seeds` that is closed under the
/// componentwise operations.
pub fn compatible_closure(x: &FiniteStructure, seeds: &[(usize, usize)]) -> Result<ReflexiveRelation, RelationError> {
    check_seeds(x, seeds)?;
    let n = x.size();
    let mut pairs = PairSet::diagonal(n);
    let mut members: Vec<(usize, usize)> = (0..n).map(|a| (a, a)).collect();
    let mut work: Vec<(usize, usize)> = seeds.iter().copied().filter(|&(a, b)| pairs.insert(a, b)).collect();
    // diagonal pairs are closed among themselves, so only new pairs need
    // combining with everything seen so far
    while let Some((a, b)) = work.pop() {
        members.push((a, b));
        let mut found = Vec::new();
        for op in x.ops() {
            match &op.table {
                Table::Unary(t) => found.push((t[a], t[b])),
                Table::Binary(t) => {
                    for &(c, d) in &members {
                        if let (Some(u), Some(v)) = (t[a * n + c], t[b * n + d]) {
                            found.push((u, v));
                        }
                        if let (Some(u), Some(v)) = (t[c * n + a], t[d * n + b]) {
                            found.push((u, v));
                        }
                    }
                }
            }
        }
        for p in found {
            if pairs.insert(p.0, p.1) {
                work.push(p);
            }
        }
    }
    Ok(ReflexiveRelation { pairs })
}
