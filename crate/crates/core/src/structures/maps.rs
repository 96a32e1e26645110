use std::sync::Arc;

use super::builders;
use super::{Context, FiniteStructure, StructureError, Subobject, Table};

/// A homomorphism given by its carrier function. In groupoid context it is
/// also the identity on objects.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureMap {
    domain: Arc<FiniteStructure>,
    codomain: Arc<FiniteStructure>,
    map: Vec<usize>,
}

impl StructureMap {
    pub fn new(
        domain: Arc<FiniteStructure>,
        codomain: Arc<FiniteStructure>,
        map: Vec<usize>,
    ) -> Result<Self, StructureError> {
        if domain.context() != codomain.context() {
            return Err(StructureError::ContextMismatch(domain.context(), codomain.context()));
        }
        if map.len() != domain.size() {
            return Err(StructureError::MapLength { expected: domain.size(), found: map.len() });
        }
        if let Some(&e) = map.iter().find(|&&e| e >= codomain.size()) {
            return Err(StructureError::ElementOutOfRange { element: e, size: codomain.size() });
        }
        if let (Some(g), Some(h)) = (domain.groupoid(), codomain.groupoid()) {
            if g.objects != h.objects {
                return Err(StructureError::GroupoidShape(format!(
                    "object sets differ: {} vs {}",
                    g.objects, h.objects
                )));
            }
            if let Some(a) = (0..domain.size())
                .find(|&a| h.src[map[a]] != g.src[a] || h.tgt[map[a]] != g.tgt[a])
            {
                return Err(StructureError::NotConstantOnObjects(a));
            }
        }
        let n = domain.size();
        for op in domain.ops() {
            let target = codomain.op(&op.name).ok_or_else(|| StructureError::NotHomomorphism {
                op: op.name.clone(),
                args: vec![],
            })?;
            match (&op.table, &target.table) {
                (Table::Unary(t), Table::Unary(u)) => {
                    if let Some(a) = (0..n).find(|&a| map[t[a]] != u[map[a]]) {
                        return Err(StructureError::NotHomomorphism { op: op.name.clone(), args: vec![a] });
                    }
                }
                (Table::Binary(t), Table::Binary(u)) => {
                    let m = codomain.size();
                    for a in 0..n {
                        for b in 0..n {
                            if let Some(c) = t[a * n + b] {
                                if u[map[a] * m + map[b]] != Some(map[c]) {
                                    return Err(StructureError::NotHomomorphism {
                                        op: op.name.clone(),
                                        args: vec![a, b],
                                    });
                                }
                            }
                        }
                    }
                }
                _ => {
                    return Err(StructureError::NotHomomorphism { op: op.name.clone(), args: vec![] })
                }
            }
        }
        Ok(StructureMap { domain, codomain, map })
    }

    pub fn identity(x: &Arc<FiniteStructure>) -> Self {
        StructureMap { domain: x.clone(), codomain: x.clone(), map: (0..x.size()).collect() }
    }

    pub fn domain(&self) -> &Arc<FiniteStructure> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<FiniteStructure> {
        &self.codomain
    }

    pub fn apply(&self, a: usize) -> usize {
        self.map[a]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.map
    }

    /// `self` followed by `then`.
    pub fn then(&self, then: &StructureMap) -> Result<StructureMap, StructureError> {
        if self.codomain != then.domain {
            return Err(StructureError::MapLength {
                expected: then.domain.size(),
                found: self.codomain.size(),
            });
        }
        Ok(StructureMap {
            domain: self.domain.clone(),
            codomain: then.codomain.clone(),
            map: self.map.iter().map(|&a| then.map[a]).collect(),
        })
    }

    /// Sorted image.
    pub fn image(&self) -> Vec<usize> {
        let mut img = self.map.clone();
        img.sort_unstable();
        img.dedup();
        img
    }

    pub fn is_surjective(&self) -> bool {
        self.image().len() == self.codomain.size()
    }

    fn collision(&self) -> Option<(usize, usize)> {
        let mut seen = vec![usize::MAX; self.codomain.size()];
        for (a, &fa) in self.map.iter().enumerate() {
            if seen[fa] != usize::MAX {
                return Some((seen[fa], a));
            }
            seen[fa] = a;
        }
        None
    }
}

/// Monomorphisms are the injective-on-carrier maps in all three contexts.
pub fn is_mono(f: &StructureMap) -> bool {
    f.collision().is_none()
}

/// A monomorphism, viewed up to its image as a subobject of the codomain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mono(StructureMap);

impl Mono {
    pub fn new(f: StructureMap) -> Result<Self, StructureError> {
        match f.collision() {
            Some((a, b)) => Err(StructureError::NotInjective(a, b)),
            None => Ok(Mono(f)),
        }
    }

    pub fn map(&self) -> &StructureMap {
        &self.0
    }

    pub fn domain(&self) -> &Arc<FiniteStructure> {
        self.0.domain()
    }

    pub fn codomain(&self) -> &Arc<FiniteStructure> {
        self.0.codomain()
    }

    pub fn image(&self) -> Vec<usize> {
        self.0.image()
    }

    pub fn subobject(&self) -> Subobject {
        Subobject::from_sorted(self.image())
    }

    /// Subobject order: image containment.
    pub fn leq(&self, other: &Mono) -> bool {
        self.subobject().is_subset(&other.subobject())
    }

    /// `self` followed by another mono.
    pub fn then(&self, other: &Mono) -> Result<Mono, StructureError> {
        Ok(Mono(self.0.then(&other.0)?))
    }
}

/// The initial object of the fibre containing `x`.
pub fn initial_object(x: &FiniteStructure) -> FiniteStructure {
    match x.context() {
        Context::Gp => builders::trivial(Context::Gp),
        Context::GpdS => builders::discrete_groupoid(x.objects()),
        Context::GpCirc => builders::empty_algebra(),
    }
}

/// The final object of the fibre containing `x`: `1` for groups, `∇S` for
/// groupoids, the singleton algebra in `gpcirc`.
pub fn final_object(x: &FiniteStructure) -> FiniteStructure {
    match x.context() {
        Context::GpdS => builders::codiscrete_groupoid(x.objects()),
        ctx => builders::trivial(ctx),
    }
}

/// The unique map `x → 1`.
pub fn final_map(x: &Arc<FiniteStructure>) -> StructureMap {
    let one = Arc::new(final_object(x));
    let map = match x.context() {
        // arrow (s, t) of ∇S has index s * |S| + t
        Context::GpdS => (0..x.size()).map(|a| x.src(a) * x.objects() + x.tgt(a)).collect(),
        _ => vec![0; x.size()],
    };
    StructureMap::new(x.clone(), one, map).expect("the final map is a homomorphism")
}

/// Pullback of the initial arrow of the codomain along `f`: the preimage of
/// the subalgebra generated by the empty set.
pub fn kernel(f: &StructureMap) -> Mono {
    let constants = f.codomain().constants();
    let members: Vec<usize> = (0..f.domain().size())
        .filter(|&a| constants.binary_search(&f.apply(a)).is_ok())
        .collect();
    Subobject::from_sorted(members).inclusion(f.domain())
}

/// Kernel of the final map `x → 1`.
pub fn final_kernel(x: &Arc<FiniteStructure>) -> Mono {
    kernel(&final_map(x))
}

/// Whether `x` admits a map to the initial object: every group, the totally
/// disconnected groupoids, and only the empty algebra in `gpcirc`.
pub fn has_null_support(x: &FiniteStructure) -> bool {
    match x.context() {
        Context::Gp => true,
        Context::GpdS => (0..x.size()).all(|a| x.is_endo(a)),
        Context::GpCirc => x.is_empty(),
    }
}
