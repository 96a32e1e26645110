use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::closure::{compatible_closure, ReflexiveRelation};
use crate::par::{self, Exec};
use crate::structures::FiniteStructure;

/// Carriers up to this size are checked exhaustively by default.
pub const DEFAULT_EXHAUSTIVE_BOUND: usize = 5;

/// Random seed sets drawn in sampled mode by default.
pub const DEFAULT_SAMPLES: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MaltsevMode {
    /// Every reflexive compatible relation.
    Exhaustive,
    /// Closures of `samples` random seed sets of one to three pairs.
    Sampled { samples: usize, seed: u64 },
}

impl MaltsevMode {
    /// Exhaustive for small carriers, sampled otherwise.
    pub fn auto(x: &FiniteStructure) -> Self {
        if x.size() <= DEFAULT_EXHAUSTIVE_BOUND {
            MaltsevMode::Exhaustive
        } else {
            MaltsevMode::Sampled { samples: DEFAULT_SAMPLES, seed: 0 }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaltsevReport {
    pub mode: MaltsevMode,
    pub relations_checked: usize,
    /// Seeds whose compatible closure is not an equivalence.
    pub counterexample: Option<Vec<(usize, usize)>>,
}

impl MaltsevReport {
    pub fn holds(&self) -> bool {
        self.counterexample.is_none()
    }
}

fn parallel_pairs(x: &FiniteStructure) -> Vec<(usize, usize)> {
    let n = x.size();
    (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .filter(|&(a, b)| a != b && x.is_parallel(a, b))
        .collect()
}

/// Every reflexive relation on `x` closed under the operations, each
/// paired with a seed set generating it.
pub fn enumerate_reflexive_compatible(x: &FiniteStructure, exec: Exec) -> Vec<(Vec<(usize, usize)>, ReflexiveRelation)> {
    let candidates = parallel_pairs(x);
    let bottom = compatible_closure(x, &[]).expect("no seeds");
    let mut seen: HashSet<ReflexiveRelation> = HashSet::from([bottom.clone()]);
    let mut out = vec![(Vec::new(), bottom)];
    let mut frontier = vec![0usize];
    while !frontier.is_empty() {
        let current: Vec<(Vec<(usize, usize)>, ReflexiveRelation)> =
            frontier.iter().map(|&i| out[i].clone()).collect();
        let found = par::flat_map(exec, &current, |(seeds, r)| {
            candidates
                .iter()
                .filter(|&&(a, b)| !r.contains(a, b))
                .map(|&p| {
                    let mut s = seeds.clone();
                    s.push(p);
                    let closed = compatible_closure(x, &s).expect("candidates are parallel");
                    (s, closed)
                })
                .collect()
        });
        frontier.clear();
        for (s, r) in found {
            if seen.insert(r.clone()) {
                frontier.push(out.len());
                out.push((s, r));
            }
        }
    }
    out
}

/// Checks that every reflexive compatible relation on `x` is an equivalence.
pub fn verify_maltsev(x: &FiniteStructure) -> MaltsevReport {
    verify_maltsev_with(x, MaltsevMode::auto(x), Exec::default())
}

pub fn verify_maltsev_with(x: &FiniteStructure, mode: MaltsevMode, exec: Exec) -> MaltsevReport {
    match mode {
        MaltsevMode::Exhaustive => {
            let all = enumerate_reflexive_compatible(x, exec);
            let counterexample = all.iter().find(|(_, r)| !r.is_equivalence()).map(|(s, _)| s.clone());
            MaltsevReport { mode, relations_checked: all.len(), counterexample }
        }
        MaltsevMode::Sampled { samples, seed } => {
            let candidates = parallel_pairs(x);
            if candidates.is_empty() {
                // only the diagonal is available
                let d = compatible_closure(x, &[]).expect("no seeds");
                let counterexample = (!d.is_equivalence()).then(Vec::new);
                return MaltsevReport { mode, relations_checked: 1, counterexample };
            }
            let results = par::map_range(exec, samples, |i| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(i as u64));
                let k = rng.gen_range(1..=3);
                let seeds: Vec<(usize, usize)> =
                    (0..k).map(|_| candidates[rng.gen_range(0..candidates.len())]).collect();
                let r = compatible_closure(x, &seeds).expect("candidates are parallel");
                (!r.is_equivalence()).then_some(seeds)
            });
            let counterexample = results.into_iter().flatten().next();
            MaltsevReport { mode, relations_checked: samples, counterexample }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relations::enumerate_congruences;
    use crate::structures::builders::*;
    use crate::structures::{Context, Operation};

    #[test]
    fn groups_are_maltsev() {
        for x in [cyclic(4), symmetric3(), direct_product(&cyclic(2), &cyclic(2))] {
            let report = verify_maltsev_with(&x, MaltsevMode::Exhaustive, Exec::Sequential);
            assert!(report.holds());
            // reflexive compatible relations are then exactly the congruences
            assert_eq!(report.relations_checked, enumerate_congruences(&x, 12).unwrap().len());
        }
    }

    #[test]
    fn groupoids_and_gpcirc_are_maltsev() {
        for x in [
            connected_groupoid(2, &cyclic(2)),
            codiscrete_groupoid(2),
            cyclic_in(Context::GpCirc, 3),
            empty_algebra(),
        ] {
            assert!(verify_maltsev(&x).holds());
        }
        let sampled = verify_maltsev(&dihedral4());
        assert_eq!(sampled.mode, MaltsevMode::Sampled { samples: DEFAULT_SAMPLES, seed: 0 });
        assert!(sampled.holds());
    }

    #[test]
    fn semilattice_is_not_maltsev() {
        let t: Vec<usize> = (0..2).flat_map(|a| (0..2).map(move |b: usize| a.max(b))).collect();
        let x = FiniteStructure::new(Context::Gp, 2, vec![Operation::total_binary("mul", t)], None).unwrap();
        let report = verify_maltsev_with(&x, MaltsevMode::Exhaustive, Exec::Sequential);
        assert!(!report.holds());
        let sampled = verify_maltsev_with(&x, MaltsevMode::Sampled { samples: 50, seed: 7 }, Exec::Parallel);
        assert!(!sampled.holds());
    }
}
