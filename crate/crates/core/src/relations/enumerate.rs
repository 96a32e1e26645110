use std::collections::HashSet;

use super::closure::generated_congruence;
use super::{check_congruence, EquivRelation, RelationError};
use crate::par::{self, Exec};
use crate::structures::FiniteStructure;

/// Default carrier bound for exhaustive enumeration.
pub const DEFAULT_MAX_CARRIER: usize = 12;

/// Largest carrier the partition-filter enumeration accepts.
pub const FILTER_MAX_CARRIER: usize = 8;

fn check_bound(x: &FiniteStructure, bound: usize) -> Result<(), RelationError> {
    if x.size() > bound {
        return Err(RelationError::BoundExceeded { size: x.size(), bound });
    }
    Ok(())
}

/// Finer relations first: by number of classes descending, then by class
/// ids. The diagonal comes first and the codiscrete relation last.
fn sort_relations(all: &mut [EquivRelation]) {
    all.sort_by(|a, b| b.num_classes().cmp(&a.num_classes()).then_with(|| a.class_ids().cmp(b.class_ids())));
}

/// Every congruence of `x`, fails if the carrier exceeds `bound`.
pub fn enumerate_congruences(x: &FiniteStructure, bound: usize) -> Result<Vec<EquivRelation>, RelationError> {
    enumerate_congruences_with(x, bound, Exec::default())
}

/// Joins of principal congruences, explored breadth first from the diagonal.
pub fn enumerate_congruences_with(
    x: &FiniteStructure,
    bound: usize,
    exec: Exec,
) -> Result<Vec<EquivRelation>, RelationError> {
    check_bound(x, bound)?;
    let n = x.size();
    let seeds: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .filter(|&(a, b)| x.is_parallel(a, b))
        .collect();
    let principal: Vec<EquivRelation> = par::map(exec, &seeds, |&p| {
        generated_congruence(x, &[p]).expect("seeds are parallel and in range")
    });
    let principal: Vec<EquivRelation> =
        principal.into_iter().collect::<HashSet<_>>().into_iter().collect();

    let bottom = EquivRelation::diagonal(n);
    let mut seen: HashSet<EquivRelation> = HashSet::from([bottom.clone()]);
    let mut frontier = vec![bottom];
    while !frontier.is_empty() {
        let joins = par::flat_map(exec, &frontier, |r| {
            principal
                .iter()
                .filter(|p| !p.is_contained_in(r))
                .map(|p| r.partition_join(p).expect("same carrier"))
                .collect()
        });
        frontier = joins.into_iter().filter(|r| seen.insert(r.clone())).collect();
    }
    let mut all: Vec<EquivRelation> = seen.into_iter().collect();
    sort_relations(&mut all);
    Ok(all)
}

/// Every partition of the carrier, kept when it is a congruence. Only for
/// carriers up to [`FILTER_MAX_CARRIER`].
pub fn enumerate_congruences_by_filter(x: &FiniteStructure, bound: usize) -> Result<Vec<EquivRelation>, RelationError> {
    check_bound(x, bound.min(FILTER_MAX_CARRIER))?;
    let n = x.size();
    let mut out = Vec::new();
    // restricted growth strings: rgs[i] <= 1 + max(rgs[..i])
    let mut rgs = vec![0usize; n];
    loop {
        let r = EquivRelation::from_class_ids(&rgs);
        if check_congruence(x, &r).is_ok() {
            out.push(r);
        }
        let mut i = n;
        loop {
            if i <= 1 {
                sort_relations(&mut out);
                return Ok(out);
            }
            i -= 1;
            let max_prefix = rgs[..i].iter().copied().max().unwrap_or(0);
            if rgs[i] <= max_prefix {
                rgs[i] += 1;
                for v in rgs.iter_mut().skip(i + 1) {
                    *v = 0;
                }
                break;
            }
        }
    }
}
