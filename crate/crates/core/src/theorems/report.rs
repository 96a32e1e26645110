use std::fmt::Write as _;

use serde::Serialize;

/// Enough to reproduce a failed case: a description and a CLI invocation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub detail: String,
    pub replay: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub id: String,
    /// The claim being checked, in words.
    pub anchor: String,
    pub pass: bool,
    /// Number of cases examined.
    pub cases: usize,
    /// First failing case, if any.
    pub witness: Option<Witness>,
}

impl Check {
    pub fn new(id: impl Into<String>, anchor: impl Into<String>) -> Self {
        Check { id: id.into(), anchor: anchor.into(), pass: true, cases: 0, witness: None }
    }

    /// Records one case; the first failure keeps its witness.
    pub fn case(&mut self, ok: bool, witness: impl FnOnce() -> Witness) {
        self.cases += 1;
        if !ok && self.pass {
            self.pass = false;
            self.witness = Some(witness());
        }
    }

    pub fn failed(id: impl Into<String>, anchor: impl Into<String>, witness: Witness) -> Self {
        Check { id: id.into(), anchor: anchor.into(), pass: false, cases: 1, witness: Some(witness) }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub instance: String,
    pub checks: Vec<Check>,
    pub ms: u64,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn check(&self, id: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        let _ = writeln!(out, "{verdict} {} [{}] ({} ms)", self.instance, self.suite, self.ms);
        for c in &self.checks {
            let mark = if c.pass { "ok  " } else { "FAIL" };
            let _ = writeln!(out, "  {mark} {:<40} {:>5} cases  {}", c.id, c.cases, c.anchor);
            if let Some(w) = &c.witness {
                let _ = writeln!(out, "       witness: {}", w.detail);
                let _ = writeln!(out, "       replay:  {}", w.replay);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_failure_is_kept() {
        let mut c = Check::new("demo", "a claim");
        c.case(true, || unreachable!());
        c.case(false, || Witness { detail: "first".into(), replay: "eqrel x".into() });
        c.case(false, || Witness { detail: "second".into(), replay: "eqrel y".into() });
        assert!(!c.pass);
        assert_eq!(c.cases, 3);
        assert_eq!(c.witness.as_ref().unwrap().detail, "first");
    }

    #[test]
    fn json_shape() {
        let r = VerificationReport {
            suite: "rel".into(),
            instance: "z2".into(),
            checks: vec![Check::new("a", "claim")],
            ms: 3,
        };
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["checks"][0]["pass"], true);
        assert!(v["checks"][0]["witness"].is_null());
        assert_eq!(v["ms"], 3);
        assert!(r.to_text().starts_with("PASS z2 [rel]"));
    }
}
