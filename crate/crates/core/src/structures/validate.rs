use std::fmt;

use serde::Serialize;

use super::{Context, FiniteStructure, Table};

/// A violated axiom together with the tuple exhibiting it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub axiom: String,
    pub witness: Vec<usize>,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.axiom, self.message)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    fn push(&mut self, axiom: &str, witness: Vec<usize>, message: String) {
        self.violations.push(Violation { axiom: axiom.to_string(), witness, message });
    }
}

/// Checks the context axioms. At most one witness is reported per axiom,
/// except for missing identities which are reported per object.
pub fn validate_structure(x: &FiniteStructure) -> ValidationReport {
    let mut report = ValidationReport::default();
    let bin = x.context().binary_op();
    let has_bin = matches!(x.op(bin).map(|o| &o.table), Some(Table::Binary(_)));
    let has_inv = matches!(x.op("inv").map(|o| &o.table), Some(Table::Unary(_)));
    if !has_bin {
        report.push("signature", vec![], format!("binary operation `{bin}` is missing"));
    }
    if !has_inv {
        report.push("signature", vec![], "unary operation `inv` is missing".into());
    }
    if !report.is_ok() {
        return report;
    }
    match x.context() {
        Context::Gp => {
            if x.is_empty() {
                report.push("nonempty", vec![], "a group has at least one element".into());
            } else {
                associativity(x, &mut report);
                group_unit_and_inverse(x, &mut report);
            }
        }
        Context::GpCirc => {
            if !x.is_empty() {
                associativity(x, &mut report);
                circ_axioms(x, &mut report);
            }
        }
        Context::GpdS => groupoid_axioms(x, &mut report),
    }
    report
}

fn associativity(x: &FiniteStructure, report: &mut ValidationReport) {
    let n = x.size();
    for a in 0..n {
        for b in 0..n {
            let Some(ab) = x.mul(a, b) else { continue };
            for c in 0..n {
                let Some(bc) = x.mul(b, c) else { continue };
                let left = x.mul(ab, c);
                let right = x.mul(a, bc);
                if left != right {
                    report.push(
                        "associativity",
                        vec![a, b, c],
                        format!("({a}·{b})·{c} = {left:?} but {a}·({b}·{c}) = {right:?}"),
                    );
                    return;
                }
            }
        }
    }
}

fn group_unit_and_inverse(x: &FiniteStructure, report: &mut ValidationReport) {
    let n = x.size();
    let mul = |a, b| x.mul(a, b).expect("total table");
    let unit = (0..n).find(|&e| (0..n).all(|a| mul(e, a) == a && mul(a, e) == a));
    let Some(e) = unit else {
        let e = mul(0, x.inv(0).expect("inv present"));
        let a = (0..n).find(|&a| mul(e, a) != a || mul(a, e) != a).unwrap_or(0);
        report.push("identity", vec![e, a], format!("no two-sided identity; candidate {e} fails at {a}"));
        return;
    };
    for a in 0..n {
        let i = x.inv(a).expect("inv present");
        if mul(a, i) != e || mul(i, a) != e {
            report.push("inverse", vec![a], format!("inv({a}) = {i} is not an inverse of {a}"));
            return;
        }
    }
}

fn circ_axioms(x: &FiniteStructure, report: &mut ValidationReport) {
    let n = x.size();
    let mul = |a, b| x.mul(a, b).expect("total table");
    let inv = |a| x.inv(a).expect("inv present");
    let e = mul(0, inv(0));
    if let Some(a) = (0..n).find(|&a| mul(a, inv(a)) != e) {
        report.push("uniform-unit", vec![0, a], format!("0·0⁻¹ = {e} but {a}·{a}⁻¹ = {}", mul(a, inv(a))));
    }
    if let Some(a) = (0..n).find(|&a| mul(mul(a, a), inv(a)) != a) {
        report.push("right-absorption", vec![a], format!("{a}·{a}·{a}⁻¹ ≠ {a}"));
    }
    if let Some(a) = (0..n).find(|&a| mul(mul(a, inv(a)), a) != a) {
        report.push("left-absorption", vec![a], format!("{a}·{a}⁻¹·{a} ≠ {a}"));
    }
}

fn groupoid_axioms(x: &FiniteStructure, report: &mut ValidationReport) {
    let g = x.groupoid().expect("gpds carries groupoid data");
    let n = x.size();
    for (s, &i) in g.ids.iter().enumerate() {
        let endo = g.src[i] == s && g.tgt[i] == s;
        let neutral = endo
            && (0..n).all(|a| {
                (g.src[a] != s || x.mul(i, a) == Some(a)) && (g.tgt[a] != s || x.mul(a, i) == Some(a))
            });
        if !neutral {
            report.push("identity", vec![s, i], format!("identity missing at object {s}"));
        }
    }
    'domain: for a in 0..n {
        for b in 0..n {
            let composable = g.tgt[a] == g.src[b];
            match x.mul(a, b) {
                None if composable => {
                    report.push("composition-domain", vec![a, b], format!("{a};{b} is composable but undefined"));
                    break 'domain;
                }
                Some(c) if !composable => {
                    report.push("composition-domain", vec![a, b, c], format!("{a};{b} = {c} is defined but not composable"));
                    break 'domain;
                }
                Some(c) if g.src[c] != g.src[a] || g.tgt[c] != g.tgt[b] => {
                    report.push("composition-ends", vec![a, b, c], format!("{a};{b} = {c} has the wrong source or target"));
                    break 'domain;
                }
                _ => {}
            }
        }
    }
    associativity(x, report);
    for a in 0..n {
        let i = x.inv(a).expect("inv present");
        let ends = g.src[i] == g.tgt[a] && g.tgt[i] == g.src[a];
        if !ends || x.mul(a, i) != Some(g.ids[g.src[a]]) || x.mul(i, a) != Some(g.ids[g.tgt[a]]) {
            report.push("inverse", vec![a], format!("inv({a}) = {i} is not an inverse of {a}"));
            break;
        }
    }
}
