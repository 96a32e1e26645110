use std::sync::Arc;

use super::{FiniteStructure, GroupoidData, Operation, StructureError, StructureMap, Table};
use crate::relations::EquivRelation;

/// `X × X` in the fibre containing `X`, with its projections. In groupoid
/// context the arrows are the parallel pairs.
#[derive(Debug, Clone)]
pub struct ProductInContext {
    pub structure: Arc<FiniteStructure>,
    pub pairs: Vec<(usize, usize)>,
    pub p1: StructureMap,
    pub p2: StructureMap,
    index: Vec<Option<usize>>,
    base_size: usize,
}

impl ProductInContext {
    pub fn index_of(&self, a: usize, b: usize) -> Option<usize> {
        self.index[a * self.base_size + b]
    }
}

pub fn product_in_context(x: &Arc<FiniteStructure>) -> ProductInContext {
    let n = x.size();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .filter(|&(a, b)| x.is_parallel(a, b))
        .collect();
    let mut index = vec![None; n * n];
    for (i, &(a, b)) in pairs.iter().enumerate() {
        index[a * n + b] = Some(i);
    }
    let structure = Arc::new(pair_structure(x, &pairs, &index));
    let p1 = StructureMap::new(structure.clone(), x.clone(), pairs.iter().map(|p| p.0).collect())
        .expect("first projection is a homomorphism");
    let p2 = StructureMap::new(structure.clone(), x.clone(), pairs.iter().map(|p| p.1).collect())
        .expect("second projection is a homomorphism");
    ProductInContext { structure, pairs, p1, p2, index, base_size: n }
}

/// Componentwise structure on a closed set of parallel pairs.
pub(crate) fn pair_structure(
    x: &FiniteStructure,
    pairs: &[(usize, usize)],
    index: &[Option<usize>],
) -> FiniteStructure {
    let n = x.size();
    let m = pairs.len();
    let at = |a: usize, b: usize| index[a * n + b].expect("pair set is closed");
    let mut ops = Vec::with_capacity(x.ops().len());
    for op in x.ops() {
        let table = match &op.table {
            Table::Unary(t) => Table::Unary(pairs.iter().map(|&(a, b)| at(t[a], t[b])).collect()),
            Table::Binary(t) => {
                let mut out = Vec::with_capacity(m * m);
                for &(a, b) in pairs {
                    for &(c, d) in pairs {
                        out.push(match (t[a * n + c], t[b * n + d]) {
                            (Some(u), Some(v)) => Some(at(u, v)),
                            _ => None,
                        });
                    }
                }
                Table::Binary(out)
            }
        };
        ops.push(Operation { name: op.name.clone(), table });
    }
    let groupoid = x.groupoid().map(|g| GroupoidData {
        objects: g.objects,
        src: pairs.iter().map(|&(a, _)| g.src[a]).collect(),
        tgt: pairs.iter().map(|&(a, _)| g.tgt[a]).collect(),
        ids: g.ids.iter().map(|&i| at(i, i)).collect(),
    });
    FiniteStructure::new(x.context(), m, ops, groupoid).expect("componentwise tables are well formed")
}

/// `X / R` with its projection. Class `i` of `R` (in canonical order) becomes
/// element `i`; fails if `R` is not compatible with the operations.
pub fn quotient(
    x: &Arc<FiniteStructure>,
    r: &EquivRelation,
) -> Result<(Arc<FiniteStructure>, StructureMap), StructureError> {
    let n = x.size();
    if r.size() != n {
        return Err(StructureError::RelationSize { expected: n, found: r.size() });
    }
    if let Some((a, b)) = r.pairs().find(|&(a, b)| !x.is_parallel(a, b)) {
        return Err(StructureError::NotCompatible { op: "parallel".into(), args: vec![a, b] });
    }
    let k = r.num_classes();
    let class = |a: usize| r.class_id(a);
    let mut ops = Vec::with_capacity(x.ops().len());
    for op in x.ops() {
        let table = match &op.table {
            Table::Unary(t) => {
                let mut out = vec![usize::MAX; k];
                for a in 0..n {
                    let v = class(t[a]);
                    if out[class(a)] != usize::MAX && out[class(a)] != v {
                        return Err(StructureError::NotCompatible { op: op.name.clone(), args: vec![a] });
                    }
                    out[class(a)] = v;
                }
                Table::Unary(out)
            }
            Table::Binary(t) => {
                let mut out: Vec<Option<Option<usize>>> = vec![None; k * k];
                for a in 0..n {
                    for b in 0..n {
                        let v = t[a * n + b].map(class);
                        let slot = &mut out[class(a) * k + class(b)];
                        match slot {
                            Some(prev) if *prev != v => {
                                return Err(StructureError::NotCompatible {
                                    op: op.name.clone(),
                                    args: vec![a, b],
                                })
                            }
                            _ => *slot = Some(v),
                        }
                    }
                }
                Table::Binary(out.into_iter().map(Option::flatten).collect())
            }
        };
        ops.push(Operation { name: op.name.clone(), table });
    }
    let reps: Vec<usize> = r.representatives();
    let groupoid = x.groupoid().map(|g| GroupoidData {
        objects: g.objects,
        src: reps.iter().map(|&a| g.src[a]).collect(),
        tgt: reps.iter().map(|&a| g.tgt[a]).collect(),
        ids: g.ids.iter().map(|&i| class(i)).collect(),
    });
    let q = Arc::new(FiniteStructure::new(x.context(), k, ops, groupoid)?);
    let projection = StructureMap::new(x.clone(), q.clone(), (0..n).map(class).collect())?;
    Ok((q, projection))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structures::builders::*;
    use crate::structures::{validate_structure, Context};

    /// Isomorphism test by brute force over bijections (small sizes only).
    fn isomorphic(x: &Arc<FiniteStructure>, y: &Arc<FiniteStructure>) -> bool {
        fn extend(perm: &mut Vec<usize>, used: &mut Vec<bool>, x: &Arc<FiniteStructure>, y: &Arc<FiniteStructure>) -> bool {
            if perm.len() == x.size() {
                return StructureMap::new(x.clone(), y.clone(), perm.clone()).is_ok();
            }
            for c in 0..y.size() {
                if !used[c] {
                    used[c] = true;
                    perm.push(c);
                    if extend(perm, used, x, y) {
                        return true;
                    }
                    perm.pop();
                    used[c] = false;
                }
            }
            false
        }
        x.size() == y.size() && extend(&mut Vec::new(), &mut vec![false; y.size()], x, y)
    }

    #[test]
    fn z4_mod_subgroup_is_z2() {
        let z4 = Arc::new(cyclic(4));
        let r = EquivRelation::from_class_ids(&[0, 1, 0, 1]);
        let (q, proj) = quotient(&z4, &r).unwrap();
        assert!(validate_structure(&q).is_ok());
        assert!(isomorphic(&q, &Arc::new(cyclic(2))));
        assert!(proj.is_surjective());
    }

    #[test]
    fn diagonal_and_codiscrete_quotients() {
        let s3 = Arc::new(symmetric3());
        let (q, _) = quotient(&s3, &EquivRelation::diagonal(6)).unwrap();
        assert!(isomorphic(&q, &s3));
        let (q, _) = quotient(&s3, &EquivRelation::full(6)).unwrap();
        assert_eq!(q.size(), 1);
        assert!(validate_structure(&q).is_ok());
    }

    #[test]
    fn incompatible_relation_rejected() {
        let s3 = Arc::new(symmetric3());
        // {e,(01)} cosets on one side only: not a congruence
        let r = EquivRelation::from_class_ids(&[0, 0, 1, 2, 1, 2]);
        assert!(quotient(&s3, &r).is_err());
    }

    #[test]
    fn products() {
        let z4 = Arc::new(cyclic(4));
        let p = product_in_context(&z4);
        assert_eq!(p.structure.size(), 16);
        assert!(validate_structure(&p.structure).is_ok());

        let disc = Arc::new(disjoint_union(&[group_as_groupoid(&cyclic(2)), group_as_groupoid(&cyclic(2))]));
        let p = product_in_context(&disc);
        assert_eq!(p.structure.size(), 8);
        assert!(p.pairs.iter().all(|&(a, b)| disc.is_parallel(a, b)));
        assert!(validate_structure(&p.structure).is_ok());

        let empty = Arc::new(empty_algebra());
        assert_eq!(product_in_context(&empty).structure.size(), 0);
        let c = Arc::new(cyclic_in(Context::GpCirc, 2));
        assert_eq!(product_in_context(&c).p2.as_slice(), &[0, 1, 0, 1]);
    }
}
