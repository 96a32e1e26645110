//! Constructors for the standard finite groups and groupoids used by the
//! corpus and the tests. Every group built here has its unit at index 0.

use std::collections::HashMap;

use super::{Context, FiniteStructure, GroupoidData, Operation};

/// Builds a group-like structure from a total multiplication table with
/// identity at 0; inverses are computed from the table.
pub fn from_cayley(context: Context, size: usize, mul: Vec<usize>) -> FiniteStructure {
    assert_eq!(mul.len(), size * size, "multiplication table shape");
    let inv = (0..size)
        .map(|a| (0..size).find(|&b| mul[a * size + b] == 0).expect("every element is invertible"))
        .collect();
    FiniteStructure::new(
        context,
        size,
        vec![Operation::total_binary("mul", mul), Operation::unary("inv", inv)],
        None,
    )
    .expect("well-formed tables")
}

pub fn cyclic(n: usize) -> FiniteStructure {
    cyclic_in(Context::Gp, n)
}

pub fn cyclic_in(context: Context, n: usize) -> FiniteStructure {
    let mul = (0..n * n).map(|i| (i / n + i % n) % n).collect();
    from_cayley(context, n, mul)
}

/// Direct product; `(g, h)` is element `g * |H| + h`.
pub fn direct_product(g: &FiniteStructure, h: &FiniteStructure) -> FiniteStructure {
    let (m, k) = (g.size(), h.size());
    let n = m * k;
    let mut mul = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            let x = g.mul(a / k, b / k).expect("total");
            let y = h.mul(a % k, b % k).expect("total");
            mul.push(x * k + y);
        }
    }
    from_cayley(g.context(), n, mul)
}

/// Permutation group generated by `generators`, elements in breadth-first
/// discovery order starting from the identity. Products compose right to
/// left: `(p·q)(i) = p(q(i))`.
pub fn permutation_group(context: Context, degree: usize, generators: &[Vec<usize>]) -> FiniteStructure {
    let identity: Vec<usize> = (0..degree).collect();
    let mut elements = vec![identity.clone()];
    let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(identity, 0)]);
    let mut head = 0;
    while head < elements.len() {
        let p = elements[head].clone();
        head += 1;
        for g in generators {
            let q: Vec<usize> = (0..degree).map(|i| p[g[i]]).collect();
            if !index.contains_key(&q) {
                index.insert(q.clone(), elements.len());
                elements.push(q);
            }
        }
    }
    from_permutations(context, &elements)
}

/// Group on an explicit list of permutations (closed under composition,
/// identity first).
pub fn from_permutations(context: Context, elements: &[Vec<usize>]) -> FiniteStructure {
    let index: HashMap<&Vec<usize>, usize> = elements.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let n = elements.len();
    let mut mul = Vec::with_capacity(n * n);
    for p in elements {
        for q in elements {
            let r: Vec<usize> = q.iter().map(|&i| p[i]).collect();
            mul.push(index[&r]);
        }
    }
    from_cayley(context, n, mul)
}

/// S3 as `e, (01), (02), (12), (012), (021)`.
pub fn symmetric3() -> FiniteStructure {
    symmetric3_in(Context::Gp)
}

pub fn symmetric3_in(context: Context) -> FiniteStructure {
    let perms = vec![
        vec![0, 1, 2],
        vec![1, 0, 2],
        vec![2, 1, 0],
        vec![0, 2, 1],
        vec![1, 2, 0],
        vec![2, 0, 1],
    ];
    from_permutations(context, &perms)
}

/// Symmetries of a square acting on its vertices.
pub fn dihedral4() -> FiniteStructure {
    permutation_group(Context::Gp, 4, &[vec![1, 2, 3, 0], vec![0, 3, 2, 1]])
}

/// Quaternion group ordered `1, -1, i, -i, j, -j, k, -k`.
pub fn quaternion() -> FiniteStructure {
    // unit products: (unit, sign) with units 1, i, j, k as 0..4
    const UNIT: [[(usize, bool); 4]; 4] = [
        [(0, false), (1, false), (2, false), (3, false)],
        [(1, false), (0, true), (3, false), (2, true)],
        [(2, false), (3, true), (0, true), (1, false)],
        [(3, false), (2, false), (1, true), (0, true)],
    ];
    let mut mul = Vec::with_capacity(64);
    for a in 0..8 {
        for b in 0..8 {
            let (u, neg) = UNIT[a / 2][b / 2];
            let negative = neg ^ (a % 2 == 1) ^ (b % 2 == 1);
            mul.push(u * 2 + usize::from(negative));
        }
    }
    from_cayley(Context::Gp, 8, mul)
}

/// The trivial group (or the singleton algebra in `gpcirc`).
pub fn trivial(context: Context) -> FiniteStructure {
    cyclic_in(context, 1)
}

/// The empty algebra, initial in `gpcirc`.
pub fn empty_algebra() -> FiniteStructure {
    FiniteStructure::new(
        Context::GpCirc,
        0,
        vec![Operation::total_binary("mul", vec![]), Operation::unary("inv", vec![])],
        None,
    )
    .expect("empty tables")
}

/// Copies a group's tables into another group-like context.
pub fn recontext(x: &FiniteStructure, context: Context) -> FiniteStructure {
    assert_ne!(context, Context::GpdS);
    assert_ne!(x.context(), Context::GpdS);
    FiniteStructure::new(context, x.size(), x.ops().to_vec(), None).expect("same tables")
}

/// Connected groupoid on `objects` objects with every hom-set a copy of the
/// group `vertex`. Arrow `(x, y, g)` has index `(x * objects + y) * |G| + g`
/// and composes as `(x, y, g);(y, z, h) = (x, z, g·h)`.
pub fn connected_groupoid(objects: usize, vertex: &FiniteStructure) -> FiniteStructure {
    let m = vertex.size();
    let n = objects * objects * m;
    let arrow = |x: usize, y: usize, g: usize| (x * objects + y) * m + g;
    let unpack = |a: usize| ((a / m) / objects, (a / m) % objects, a % m);
    let mut comp = vec![None; n * n];
    let mut inv = vec![0; n];
    let (mut src, mut tgt) = (vec![0; n], vec![0; n]);
    for a in 0..n {
        let (x, y, g) = unpack(a);
        src[a] = x;
        tgt[a] = y;
        inv[a] = arrow(y, x, vertex.inv(g).expect("group"));
        for b in 0..n {
            let (y2, z, h) = unpack(b);
            if y == y2 {
                comp[a * n + b] = Some(arrow(x, z, vertex.mul(g, h).expect("group")));
            }
        }
    }
    let e = vertex.unit().expect("nonempty group");
    let ids = (0..objects).map(|s| arrow(s, s, e)).collect();
    FiniteStructure::new(
        Context::GpdS,
        n,
        vec![Operation::binary("comp", comp), Operation::unary("inv", inv)],
        Some(GroupoidData { objects, src, tgt, ids }),
    )
    .expect("well-formed groupoid")
}

/// The codiscrete groupoid `∇S`: one arrow between any two objects.
pub fn codiscrete_groupoid(objects: usize) -> FiniteStructure {
    connected_groupoid(objects, &trivial(Context::Gp))
}

/// The discrete groupoid `ΔS`: identities only.
pub fn discrete_groupoid(objects: usize) -> FiniteStructure {
    let trivial = codiscrete_groupoid(1);
    disjoint_union(&vec![trivial; objects])
}

/// A group viewed as a one-object groupoid.
pub fn group_as_groupoid(g: &FiniteStructure) -> FiniteStructure {
    connected_groupoid(1, g)
}

/// Disjoint union of groupoids; objects and arrows are numbered component by
/// component.
pub fn disjoint_union(parts: &[FiniteStructure]) -> FiniteStructure {
    let n: usize = parts.iter().map(FiniteStructure::size).sum();
    let mut comp = vec![None; n * n];
    let mut inv = Vec::with_capacity(n);
    let (mut src, mut tgt, mut ids) = (Vec::new(), Vec::new(), Vec::new());
    let (mut arrow_off, mut obj_off) = (0, 0);
    for p in parts {
        let g = p.groupoid().expect("groupoid parts");
        let k = p.size();
        for a in 0..k {
            src.push(g.src[a] + obj_off);
            tgt.push(g.tgt[a] + obj_off);
            inv.push(p.inv(a).expect("inv") + arrow_off);
            for b in 0..k {
                comp[(a + arrow_off) * n + b + arrow_off] = p.mul(a, b).map(|c| c + arrow_off);
            }
        }
        ids.extend(g.ids.iter().map(|i| i + arrow_off));
        arrow_off += k;
        obj_off += g.objects;
    }
    FiniteStructure::new(
        Context::GpdS,
        n,
        vec![Operation::binary("comp", comp), Operation::unary("inv", inv)],
        Some(GroupoidData { objects: obj_off, src, tgt, ids }),
    )
    .expect("well-formed groupoid")
}

/// The bundled corpus as `(relative path, structure)` pairs: the groups at
/// the top level, then `gpds/`, `gpcirc/` and `large/`.
pub fn bundled_corpus() -> Vec<(&'static str, FiniteStructure)> {
    let z2 = cyclic(2);
    let klein = direct_product(&z2, &z2);
    let mut out: Vec<(&'static str, FiniteStructure)> = Vec::new();
    let cyclic_names = ["z1.alg", "z2.alg", "z3.alg", "z4.alg", "z5.alg", "z6.alg", "z7.alg", "z8.alg"];
    for (i, name) in cyclic_names.into_iter().enumerate() {
        out.push((name, cyclic(i + 1)));
    }
    out.extend([
        ("z2xz2.alg", klein.clone()),
        ("z2xz4.alg", direct_product(&z2, &cyclic(4))),
        ("z2x2x2.alg", direct_product(&klein, &z2)),
        ("s3.alg", symmetric3()),
        ("d4.alg", dihedral4()),
        ("q8.alg", quaternion()),
        ("gpds/discrete2.alg", discrete_groupoid(2)),
        ("gpds/z2-disconnected.alg", disjoint_union(&[group_as_groupoid(&z2), group_as_groupoid(&z2)])),
        ("gpds/codiscrete2.alg", codiscrete_groupoid(2)),
        ("gpds/z2-connected2.alg", connected_groupoid(2, &z2)),
        ("gpds/codiscrete3.alg", codiscrete_groupoid(3)),
        ("gpds/mixed3.alg", disjoint_union(&[connected_groupoid(2, &z2), group_as_groupoid(&cyclic(3))])),
        ("gpds/z3-connected2.alg", connected_groupoid(2, &cyclic(3))),
        ("gpds/s3-single.alg", group_as_groupoid(&symmetric3())),
        ("gpds/codiscrete2-z2.alg", disjoint_union(&[codiscrete_groupoid(2), group_as_groupoid(&z2)])),
        ("gpcirc/empty.alg", empty_algebra()),
        ("gpcirc/z2.alg", cyclic_in(Context::GpCirc, 2)),
        ("gpcirc/z3.alg", cyclic_in(Context::GpCirc, 3)),
        ("gpcirc/s3.alg", symmetric3_in(Context::GpCirc)),
        ("gpcirc/z4.alg", cyclic_in(Context::GpCirc, 4)),
        ("gpcirc/klein.alg", recontext(&klein, Context::GpCirc)),
        ("large/klein-connected2.alg", connected_groupoid(2, &klein)),
    ]);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structures::validate_structure;

    #[test]
    fn built_groups_validate() {
        let groups = [
            cyclic(1),
            cyclic(6),
            direct_product(&cyclic(2), &cyclic(4)),
            symmetric3(),
            dihedral4(),
            quaternion(),
        ];
        for g in &groups {
            assert!(validate_structure(g).is_ok(), "{:?}", validate_structure(g));
            assert_eq!(g.unit(), Some(0));
        }
        assert_eq!(dihedral4().size(), 8);
        assert_eq!(symmetric3().mul(1, 1), Some(0));
    }

    #[test]
    fn quaternion_relations() {
        let q = quaternion();
        let (minus_one, i, j, k) = (1, 2, 4, 6);
        assert_eq!(q.mul(i, i), Some(minus_one));
        assert_eq!(q.mul(i, j), Some(k));
        assert_eq!(q.mul(j, i), Some(k + 1));
        // non-abelian with a unique involution
        assert_eq!((0..8).filter(|&a| q.mul(a, a) == Some(0)).count(), 2);
    }

    #[test]
    fn built_groupoids_validate() {
        let parts = [
            discrete_groupoid(2),
            codiscrete_groupoid(3),
            connected_groupoid(2, &cyclic(2)),
            disjoint_union(&[connected_groupoid(2, &cyclic(2)), group_as_groupoid(&cyclic(3))]),
        ];
        for g in &parts {
            assert!(validate_structure(g).is_ok(), "{:?}", validate_structure(g));
        }
        assert_eq!(parts[3].size(), 11);
        assert_eq!(parts[3].objects(), 3);
    }
}
