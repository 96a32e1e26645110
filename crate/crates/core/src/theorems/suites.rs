use std::collections::HashSet;
use std::sync::Arc;

use super::report::{Check, Witness};
use super::{Instance, SuiteOptions};
use crate::normality::{
    bourn_normal_failure, counit_epsilon, is_bourn_normal, is_bourn_normal_to, is_cartesian_discrete_fibration,
    nor, nor_on_morphism, rel,
};
use crate::par;
use crate::relations::{enumerate_congruences_with, kernel_pair, EquivRelation, RelationError};
use crate::structures::{
    enumerate_subobjects_with, final_kernel, has_null_support, kernel, quotient, Context, FiniteStructure, Mono,
    StructureMap, Subobject,
};

/// Everything the suites share about one subobject.
pub(crate) struct SubInfo {
    pub sub: Subobject,
    pub mono: Mono,
    pub rel: EquivRelation,
    pub normal: bool,
    pub n0: bool,
    /// Indices into [`Analysis::congruences`] of the relations it is normal to.
    pub witnesses: Vec<usize>,
}

/// Congruences, their normalizations and every subobject of one structure.
pub(crate) struct Analysis<'a> {
    pub instance: &'a Instance,
    pub x: Arc<FiniteStructure>,
    /// `Err` when the carrier exceeds the enumeration bound.
    pub congruences: Result<Vec<EquivRelation>, RelationError>,
    pub nors: Vec<Mono>,
    pub subs: Vec<SubInfo>,
}

impl<'a> Analysis<'a> {
    pub fn new(instance: &'a Instance, opts: &SuiteOptions) -> Self {
        let x = instance.structure.clone();
        let congruences = enumerate_congruences_with(&x, opts.max_carrier, opts.exec);
        let empty = Vec::new();
        let congs = congruences.as_ref().unwrap_or(&empty);
        let nors = par::map(opts.exec, congs, |r| nor(&x, r).expect("enumerated relations are congruences"));
        let subobjects = enumerate_subobjects_with(&x, opts.exec);
        let subs = par::map(opts.exec, &subobjects, |s| {
            let mono = s.inclusion(&x);
            let rel = rel(mono.map());
            let normal = is_bourn_normal_to(&mono, &rel);
            let n0 = normal && has_null_support(mono.domain());
            let witnesses = (0..congs.len()).filter(|&i| is_bourn_normal_to(&mono, &congs[i])).collect();
            SubInfo { sub: s.clone(), mono, rel, normal, n0, witnesses }
        });
        Analysis { instance, x, congruences, nors, subs }
    }

    fn normals(&self) -> impl Iterator<Item = &SubInfo> {
        self.subs.iter().filter(|s| s.normal)
    }

    /// The enumerated congruences, or a failing check explaining the bound.
    fn congruences(&self) -> Result<&[EquivRelation], Check> {
        match &self.congruences {
            Ok(c) => Ok(c),
            Err(e) => Err(Check::failed(
                "enumeration-bound",
                "congruence enumeration fits the carrier bound",
                Witness {
                    detail: e.to_string(),
                    replay: format!("eqrel congruences {} --max-carrier {}", self.instance.source, self.x.size()),
                },
            )),
        }
    }

    fn subset_witness(&self, verb: &str, s: &Subobject, detail: String) -> Witness {
        Witness { detail, replay: format!("eqrel {verb} {} --subset \"{}\"", self.instance.source, s.to_literal()) }
    }

    fn relation_witness(&self, verb: &str, r: &EquivRelation, detail: String) -> Witness {
        Witness { detail, replay: format!("eqrel {verb} {} --rel \"{r}\"", self.instance.source) }
    }
}

fn is_subset(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|e| b.binary_search(e).is_ok())
}

/// `n ∘ ker(N → 1)` as a subobject of the codomain.
fn final_part(n: &Mono) -> Vec<usize> {
    final_kernel(n.domain()).then(n).expect("final kernel lands in the domain").image()
}

pub(crate) fn normalization(a: &Analysis) -> Vec<Check> {
    let congs = match a.congruences() {
        Ok(c) => c,
        Err(check) => return vec![check],
    };
    let mut is_normal = Check::new("nor-is-normal", "Nor(R) is Bourn-normal to R");
    let mut null = Check::new("nor-null-support", "Nor(R) has a domain with null support");
    for (r, n) in congs.iter().zip(&a.nors) {
        is_normal.case(is_bourn_normal_to(n, r), || {
            a.relation_witness("nor", r, format!("{:?}", bourn_normal_failure(n, r)))
        });
        null.case(has_null_support(n.domain()), || {
            a.relation_witness("nor", r, format!("domain of size {} lacks null support", n.domain().size()))
        });
    }

    let mut through = Check::new("nor-through-final-kernel", "Nor(R) = n ∘ ker(N → 1) whenever n is normal to R");
    let mut below = Check::new("nor-below-normal", "Nor(R) ≤ n, with equality iff n is in N₀");
    for s in a.normals() {
        let part = final_part(&s.mono);
        for &i in &s.witnesses {
            let image = a.nors[i].image();
            through.case(image == part, || {
                a.subset_witness("witnesses", &s.sub, format!("Nor({}) = {image:?}, n ∘ k = {part:?}", congs[i]))
            });
            let ok = is_subset(&image, s.sub.members()) && ((image == s.sub.members()) == s.n0);
            below.case(ok, || {
                a.subset_witness("witnesses", &s.sub, format!("Nor({}) = {image:?}, n0 = {}", congs[i], s.n0))
            });
        }
    }

    let mut ker = Check::new("kernel-below-normal", "ker(f) ≤ n whenever n is normal to the kernel pair of f, equality iff n is in N₀");
    for (i, r) in congs.iter().enumerate() {
        let (_, f) = quotient(&a.x, r).expect("enumerated relations are congruences");
        debug_assert_eq!(&kernel_pair(&f), r);
        let k = kernel(&f).image();
        for s in a.normals().filter(|s| s.witnesses.contains(&i)) {
            let ok = is_subset(&k, s.sub.members()) && ((k == s.sub.members()) == s.n0);
            ker.case(ok, || a.subset_witness("witnesses", &s.sub, format!("ker of X/{r} is {k:?}")));
        }
    }
    vec![is_normal, null, through, below, ker]
}

/// Left cosets `aN` as a partition.
fn cosets(x: &FiniteStructure, members: &[usize]) -> EquivRelation {
    let labels: Vec<usize> = (0..x.size())
        .map(|g| members.iter().map(|&h| x.mul(g, h).expect("groups are total")).min().unwrap_or(g))
        .collect();
    EquivRelation::from_class_ids(&labels)
}

pub(crate) fn rel_suite(a: &Analysis) -> Vec<Check> {
    let congs = match a.congruences() {
        Ok(c) => c,
        Err(check) => return vec![check],
    };
    let mut witnessed = Check::new("normal-iff-witnessed", "n is Bourn-normal iff some congruence witnesses it");
    let mut cartesian = Check::new(
        "cartesian-fibration",
        "n is Bourn-normal iff ∇N → Rel(n) is a cartesian discrete fibration",
    );
    let mut initial = Check::new("rel-initial", "Rel(n) is the meet of all witnesses of n");
    let mut unique = Check::new("witness-unique", "the witness of a Bourn-normal mono is unique");
    let mut kernel_pairs = Check::new("rel-kernel-pair", "Rel(N) is the kernel pair of X → X/N");
    for s in &a.subs {
        witnessed.case(s.normal == !s.witnesses.is_empty(), || {
            a.subset_witness("witnesses", &s.sub, format!("normal = {}, {} witnesses", s.normal, s.witnesses.len()))
        });
        cartesian.case(s.normal == is_cartesian_discrete_fibration(&s.mono), || {
            a.subset_witness("check-normal", &s.sub, format!("pullback test says {}", s.normal))
        });
        if !s.normal {
            continue;
        }
        let meet = s.witnesses.iter().skip(1).fold(congs[s.witnesses[0]].clone(), |acc, &i| {
            acc.meet(&congs[i]).expect("same carrier")
        });
        initial.case(meet == s.rel, || {
            a.subset_witness("witnesses", &s.sub, format!("Rel(n) = {}, meet = {meet}", s.rel))
        });
        if a.x.context().is_protomodular() {
            unique.case(s.witnesses.len() == 1, || {
                a.subset_witness("witnesses", &s.sub, format!("{} witnesses", s.witnesses.len()))
            });
        }
        if a.x.context() == Context::Gp {
            let c = cosets(&a.x, s.sub.members());
            let ok = match quotient(&a.x, &c) {
                Ok((_, f)) => kernel_pair(&f) == s.rel,
                Err(_) => false,
            };
            kernel_pairs.case(ok, || a.subset_witness("rel", &s.sub, format!("cosets {c}, Rel(n) = {}", s.rel)));
        }
    }

    let mut monotone = Check::new("rel-monotone", "n ≤ m implies Rel(n) ⊆ Rel(m)");
    for s in &a.subs {
        for t in &a.subs {
            if s.sub != t.sub && s.sub.is_subset(&t.sub) {
                monotone.case(s.rel.is_contained_in(&t.rel), || {
                    a.subset_witness("rel", &s.sub, format!("Rel not contained in Rel({})", t.sub.to_literal()))
                });
            }
        }
    }
    let mut checks = vec![witnessed, cartesian, initial];
    if a.x.context().is_protomodular() {
        checks.push(unique);
    }
    if a.x.context() == Context::Gp {
        checks.push(kernel_pairs);
    }
    checks.push(monotone);
    checks
}

pub(crate) fn triangles(a: &Analysis) -> Vec<Check> {
    let congs = match a.congruences() {
        Ok(c) => c,
        Err(check) => return vec![check],
    };
    let mut rel_eps = Check::new("rel-epsilon", "Rel(ε_n) = ε′ at Rel(n)");
    for s in a.normals() {
        let ok = match counit_epsilon(&s.mono) {
            Ok(eps) => {
                let lhs = rel(eps.composite.map());
                let rhs = rel(nor(&a.x, &s.rel).expect("Rel(n) is a congruence").map());
                lhs == rhs && lhs.is_contained_in(&s.rel)
            }
            Err(_) => false,
        };
        rel_eps.case(ok, || a.subset_witness("rel", &s.sub, "Rel(ε_n) differs from ε′".into()));
    }

    let mut nor_eps = Check::new("nor-epsilon-prime", "Nor(ε′_S) = ε at Nor(S)");
    let mut iso = Check::new("nor-epsilon-prime-iso", "Nor(ε′_S) is an isomorphism");
    let mut contained = Check::new("epsilon-prime-contained", "Rel(Nor(S)) ⊆ S");
    let id = StructureMap::identity(&a.x);
    for (r, n) in congs.iter().zip(&a.nors) {
        let inner = rel(n.map());
        contained.case(inner.is_contained_in(r), || a.relation_witness("nor", r, format!("Rel(Nor(S)) = {inner}")));
        let lhs = nor(&a.x, &inner).expect("Rel is a congruence").image();
        let rhs = final_part(n);
        nor_eps.case(lhs == rhs, || a.relation_witness("nor", r, format!("{lhs:?} vs {rhs:?}")));
        let bijective = match nor_on_morphism(&id, &inner, r) {
            Ok(m) => m.is_surjective() && crate::structures::is_mono(&m),
            Err(_) => false,
        };
        iso.case(bijective, || a.relation_witness("nor", r, "Nor(ε′_S) is not a bijection".into()));
    }
    vec![rel_eps, nor_eps, iso, contained]
}

pub(crate) fn equivalence(a: &Analysis) -> Vec<Check> {
    let congs = match a.congruences() {
        Ok(c) => c,
        Err(check) => return vec![check],
    };
    let mut unit = Check::new("unit-on-n0", "Nor(Rel(n)) = n on N₀");
    let mut coreflect = Check::new("coreflection", "Nor(Rel(n)) ≤ n, strict iff n is not in N₀");
    for s in a.normals() {
        let back = nor(&a.x, &s.rel).expect("Rel(n) is a congruence").image();
        if s.n0 {
            unit.case(back == s.sub.members(), || {
                a.subset_witness("nor", &s.sub, format!("Nor(Rel(n)) = {back:?}"))
            });
        }
        let strict = back != s.sub.members();
        coreflect.case(is_subset(&back, s.sub.members()) && strict != s.n0, || {
            a.subset_witness("witnesses", &s.sub, format!("Nor(Rel(n)) = {back:?}, n0 = {}", s.n0))
        });
    }

    let rel_n0: Vec<&EquivRelation> = a.subs.iter().filter(|s| s.n0).map(|s| &s.rel).collect();
    let distinct: HashSet<&EquivRelation> = rel_n0.iter().copied().collect();
    let mut counit = Check::new("counit-on-rel-n0", "Rel(Nor(S)) = S on Rel(N₀)");
    for r in &distinct {
        let back = rel(nor(&a.x, r).expect("congruence").map());
        counit.case(back == **r, || a.relation_witness("nor", r, format!("Rel(Nor(S)) = {back}")));
    }
    let mut injective = Check::new("rel-injective-on-n0", "Rel is injective on N₀");
    injective.case(distinct.len() == rel_n0.len(), || Witness {
        detail: format!("{} members of N₀, {} relations", rel_n0.len(), distinct.len()),
        replay: format!("eqrel verify {}", a.instance.source),
    });
    let expected = match a.x.context() {
        Context::GpCirc => 1,
        _ => congs.len(),
    };
    let mut image = Check::new(
        "rel-n0-image",
        "Rel(N₀) is every congruence in protomodular contexts and only the diagonal otherwise",
    );
    let only_diagonal = a.x.context() != Context::GpCirc
        || distinct.iter().all(|r| **r == EquivRelation::diagonal(a.x.size()));
    image.case(distinct.len() == expected && only_diagonal, || Witness {
        detail: format!("{} relations in Rel(N₀), expected {expected}", distinct.len()),
        replay: format!("eqrel verify {}", a.instance.source),
    });
    vec![unit, counit, coreflect, injective, image]
}

/// Vertex parts closed under conjugation by every arrow. Composition is
/// diagrammatic: `comp(a, b)` is `a` then `b`.
pub fn is_conjugation_closed(x: &FiniteStructure, members: &[usize]) -> bool {
    let inside = |a: usize| members.binary_search(&a).is_ok();
    members.iter().filter(|&&alpha| x.is_endo(alpha)).all(|&alpha| {
        (0..x.size()).filter(|&f| x.tgt(f) == x.src(alpha)).all(|f| {
            let conj = x
                .mul(f, alpha)
                .and_then(|fa| x.inv(f).and_then(|fi| x.mul(fa, fi)));
            conj.is_some_and(inside)
        })
    })
}

/// Closed under `g h g⁻¹`.
fn is_normal_subgroup(x: &FiniteStructure, members: &[usize]) -> bool {
    let inside = |a: usize| members.binary_search(&a).is_ok();
    (0..x.size()).all(|g| {
        members.iter().all(|&h| {
            let gh = x.mul(g, h).expect("total");
            inside(x.mul(gh, x.inv(g).expect("total")).expect("total"))
        })
    })
}

pub(crate) fn context_specific(a: &Analysis) -> Vec<Check> {
    match a.x.context() {
        Context::Gp => {
            let mut kernels = Check::new("normal-is-kernel", "every Bourn-normal mono is a kernel");
            let mut classical = Check::new("normal-is-normal-subgroup", "Bourn-normal iff closed under conjugation");
            for s in &a.subs {
                classical.case(s.normal == is_normal_subgroup(&a.x, s.sub.members()), || {
                    a.subset_witness("check-normal", &s.sub, format!("pullback test says {}", s.normal))
                });
                if s.normal {
                    let ok = match quotient(&a.x, &s.rel) {
                        Ok((_, f)) => kernel(&f).image() == s.sub.members(),
                        Err(_) => false,
                    };
                    kernels.case(ok, || a.subset_witness("rel", &s.sub, "not the kernel of X → X/Rel(n)".into()));
                }
            }
            vec![kernels, classical]
        }
        Context::GpdS => {
            let mut agree = Check::new(
                "conjugation-agreement",
                "Bourn-normal iff the vertex parts are closed under conjugation",
            );
            for s in &a.subs {
                agree.case(s.normal == is_conjugation_closed(&a.x, s.sub.members()), || {
                    a.subset_witness("check-normal", &s.sub, format!("pullback test says {}", s.normal))
                });
            }
            vec![agree]
        }
        Context::GpCirc => {
            let congs = match a.congruences() {
                Ok(c) => c,
                Err(check) => return vec![check],
            };
            let mut two = Check::new(
                "two-normal-subobjects",
                "each congruence of a nonempty algebra has exactly two Bourn-normal subobjects",
            );
            if !a.x.is_empty() {
                for (i, r) in congs.iter().enumerate() {
                    let count = a.subs.iter().filter(|s| s.witnesses.contains(&i)).count();
                    two.case(count == 2, || a.relation_witness("nor", r, format!("{count} Bourn-normal subobjects")));
                }
            }
            vec![two]
        }
    }
}

/// Bourn-normality by the pullback test for every subobject, without
/// enumerating congruences.
pub fn normal_subobjects(x: &Arc<FiniteStructure>, exec: crate::par::Exec) -> Vec<(Subobject, bool)> {
    let subs = enumerate_subobjects_with(x, exec);
    par::map(exec, &subs, |s| (s.clone(), is_bourn_normal(&s.inclusion(x))))
}
