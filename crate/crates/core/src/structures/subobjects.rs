use std::collections::HashSet;
use std::sync::Arc;

use super::{FiniteStructure, Mono, StructureError, StructureMap, Table};
use crate::par::{self, Exec};

/// A closed subset of a carrier, standing for its inclusion mono.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subobject {
    members: Vec<usize>,
}

impl Subobject {
    pub(crate) fn from_sorted(members: Vec<usize>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        Subobject { members }
    }

    /// Checks that `members` is closed in `x` (including the constants).
    pub fn new(x: &FiniteStructure, mut members: Vec<usize>) -> Result<Self, StructureError> {
        members.sort_unstable();
        members.dedup();
        if let Some(&m) = members.iter().find(|&&m| m >= x.size()) {
            return Err(StructureError::ElementOutOfRange { element: m, size: x.size() });
        }
        let closure = generated(x, &members);
        match closure.members.iter().find(|m| members.binary_search(m).is_err()) {
            Some(&escaped) => Err(StructureError::NotClosed(escaped)),
            None => Ok(Subobject { members }),
        }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, a: usize) -> bool {
        self.members.binary_search(&a).is_ok()
    }

    pub fn is_subset(&self, other: &Subobject) -> bool {
        self.members.iter().all(|&m| other.contains(m))
    }

    /// The inclusion of the substructure into `x`.
    pub fn inclusion(&self, x: &Arc<FiniteStructure>) -> Mono {
        let sub = x.restrict(&self.members).expect("subobjects are closed");
        let f = StructureMap::new(Arc::new(sub), x.clone(), self.members.clone())
            .expect("inclusions are homomorphisms");
        Mono::new(f).expect("inclusions are injective")
    }

    /// Comma-separated member list, the format of `--subset`.
    pub fn to_literal(&self) -> String {
        self.members.iter().map(|m| m.to_string()).collect::<Vec<_>>().join(",")
    }
}

/// The substructure generated by `generators` together with the constants.
pub fn generated(x: &FiniteStructure, generators: &[usize]) -> Subobject {
    let n = x.size();
    let mut inside = vec![false; n];
    let mut members: Vec<usize> = Vec::new();
    let mut queue: Vec<usize> = Vec::new();
    for &g in x.constants().iter().chain(generators) {
        if !inside[g] {
            inside[g] = true;
            queue.push(g);
        }
    }
    while let Some(a) = queue.pop() {
        members.push(a);
        let mut found = Vec::new();
        for op in x.ops() {
            match &op.table {
                Table::Unary(t) => found.push(t[a]),
                Table::Binary(t) => {
                    for &b in &members {
                        found.extend(t[a * n + b]);
                        found.extend(t[b * n + a]);
                    }
                }
            }
        }
        for c in found {
            if !inside[c] {
                inside[c] = true;
                queue.push(c);
            }
        }
    }
    members.sort_unstable();
    Subobject { members }
}

/// Every subobject of `x`, sorted by size and then lexicographically.
pub fn enumerate_subobjects(x: &FiniteStructure) -> Vec<Subobject> {
    enumerate_subobjects_with(x, Exec::default())
}

pub fn enumerate_subobjects_with(x: &FiniteStructure, exec: Exec) -> Vec<Subobject> {
    // every subobject is reached by adjoining one element at a time
    let bottom = generated(x, &[]);
    let mut seen: HashSet<Subobject> = HashSet::from([bottom.clone()]);
    let mut frontier = vec![bottom];
    while !frontier.is_empty() {
        let next = par::flat_map(exec, &frontier, |s| {
            (0..x.size())
                .filter(|&a| !s.contains(a))
                .map(|a| {
                    let mut gens = s.members.clone();
                    gens.push(a);
                    generated(x, &gens)
                })
                .collect()
        });
        frontier = next.into_iter().filter(|s| seen.insert(s.clone())).collect();
    }
    let mut all: Vec<Subobject> = seen.into_iter().collect();
    all.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.members.cmp(&b.members)));
    all
}
